// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "chartdist/bisim.hpp"
#include "chartdist/derive.hpp"
#include "chartdist/diagram.hpp"
#include "chartdist/expr.hpp"
#include "chartdist/metric.hpp"
#include "chartdist/regbeh.hpp"
#include "generators.hpp"

using namespace chartdist;
using namespace chartdist::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

class Failure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Failure(what);
}

Dist bd(const Expr& e, const Expr& f) { return bd_stratified(expand(e).chart, expand(f).chart); }

bool zero_or_dyadic(const Dist& d) {
    if (d == Dist(0)) return true;
    for (Dist p(1); p > Dist(0); p = p * Dist(1, 2)) {
        if (p == d) return true;
        if (p < d) return false;
    }
    return false;
}

// 1
std::string two_loops() {
    auto t0 = Clock::now();
    Chart l = expand(parse_expr("a.(a.0 + b.mu v1.a.v1)+b.mu v1.a.v1")).chart;
    Chart r = expand(parse_expr("mu v2.(a.v2 + b.mu v1.a.a.v1)")).chart;
    Dist d = bd_stratified(l, r);
    Level lv = stratified_level(l, r);
    auto [u, off] = disjoint_union(l.prechart, r.prechart);
    Dist dk = bd_kleene(u).at(l.start, r.start + off);
    double s = seconds_since(t0);
    require(d == Dist(1, 4), "distance " + d.str());
    require(dk == d, "Kleene route gives " + dk.str());
    require(lv && *lv == 2, "level differs from 2");
    require(s < 1.0, "took " + std::to_string(s) + " s");
    return "distance 1/4, level 2, " + std::to_string(s * 1000).substr(0, 5) + " ms";
}

// 2
std::string loop_bisimilarity() {
    Chart l = expand(parse_expr("mu v1.a.v1")).chart;
    Chart r = expand(parse_expr("mu v1.a.a.v1")).chart;
    require(bd_stratified(l, r) == Dist(0), "nonzero distance");
    BisimResult b = bisimilar(l, r);
    require(b.bisimilar, "not bisimilar");
    require(is_bisimulation(l.prechart, r.prechart, b.witness), "witness is not a bisimulation");
    return "distance 0, bisimilar, witness of " + std::to_string(b.witness.size()) + " pairs";
}

// 3
std::string oracle_agreement() {
    auto t0 = Clock::now();
    Rng rng(1001);
    const int n = 500;
    for (int i = 0; i < n; ++i) {
        Chart c1 = random_chart(rng, 8, 2, 2), c2 = random_chart(rng, 8, 2, 2);
        auto [u, off] = disjoint_union(c1.prechart, c2.prechart);
        KleeneResult k = bd_kleene_detailed(u);
        Dist dk = k.table.at(c1.start, c2.start + off);
        Dist ds = bd_stratified(c1, c2);
        require(dk == ds, "pair " + std::to_string(i) + ": Kleene " + dk.str() + " vs stratified " + ds.str());
        require(zero_or_dyadic(ds), "value " + ds.str() + " is not 0 or a power of 1/2");
        require(k.iterations <= k.quotient_size * k.quotient_size + 1, "Kleene did not stabilise in time");
    }
    double s = seconds_since(t0);
    require(s < 30.0, "took " + std::to_string(s) + " s");
    return std::to_string(n) + " chart pairs in " + std::to_string(s).substr(0, 5) + " s";
}

// 4
std::string pseudometric_laws() {
    Rng rng(1002);
    const int n = 500;
    int strict = 0;
    for (int i = 0; i < n; ++i) {
        Expr e = random_expr(rng, 8), f = random_expr(rng, 8), g = random_expr(rng, 8);
        Dist ef = bd(e, f), fg = bd(f, g), eg = bd(e, g);
        require(bd(e, e) == Dist(0), "reflexivity");
        require(ef == bd(f, e), "symmetry");
        require(eg <= ef + fg, "triangle inequality");
        Dist pref = bd(Expr::prefix('a', e), Expr::prefix('a', f));
        require(pref <= Dist(1, 2) * ef, "prefix contraction");
        if (ef > Dist(0)) {
            require(pref == Dist(1, 2) * ef, "prefix contraction is not an equality");
            ++strict;
        }
        Expr h = random_expr(rng, 6);
        require(bd(substitute(e, {{1, g}}), substitute(f, {{1, h}})) <= std::max(ef, bd(g, h)),
                "substitution nonexpansivity");
    }
    return std::to_string(n) + " triples, " + std::to_string(strict) + " with positive distance";
}

// 5
std::string axiom_soundness() {
    int sound = 0;
    for (const Axiom& ax : axiom_catalog()) {
        const bool holds = check_axiom(ax.name);
        if (ax.name == "C1-copy") {
            require(!holds, "the copy variant of C1 holds");
        } else {
            require(holds, ax.name + " fails");
            ++sound;
        }
    }
    require(sound == 14, std::to_string(sound) + " axioms checked");
    return "14 axioms hold, the copy variant of C1 fails";
}

// 6
std::string conway_and_isometry() {
    Rng rng(1003);
    auto same = [](const RbMorphism& f, const RbMorphism& g) { return rb_bisimilar(f, g); };
    const int n = 200;
    for (int i = 0; i < n; ++i) {
        std::size_t p = pick(rng, 3), q = pick(rng, 3);
        RbMorphism f = random_morphism(rng, 1, p + 1);
        RbMorphism g = random_morphism(rng, p, q);
        require(same(rb_dagger(rb_compose(f, rb_oplus(g, rb_identity(1))), q), rb_compose(rb_dagger(f, p), g)),
                "parameter identity");

        RbMorphism f1 = random_morphism(rng, 1, p + 1), g1 = random_morphism(rng, 1, p + 1);
        RbMorphism inj = rb_oplus(rb_identity(p), rb_empty(1));
        require(same(rb_dagger(rb_compose(f1, rb_pair(inj, g1)), p),
                     rb_compose(f1, rb_pair(rb_identity(p), rb_dagger(rb_compose(g1, rb_pair(inj, f1)), p)))),
                "composition identity");

        RbMorphism f2 = random_morphism(rng, 1, p + 2);
        require(same(rb_dagger(rb_dagger(f2, p + 1), p),
                     rb_dagger(rb_compose(f2, rb_oplus(rb_identity(p), rb_codiagonal(1))), p)),
                "double dagger identity");

        std::size_t m = 1 + pick(rng, 2);
        RbMorphism fp = random_morphism(rng, m, p + 1 + m), gp = random_morphism(rng, 1, p + 1 + m);
        RbMorphism whole = rb_dagger(rb_compose(rb_pair(fp, gp), rb_oplus(rb_identity(p), rb_symmetry(1, m))), p);
        RbMorphism fd = rb_dagger(fp, p + 1);
        RbMorphism hd = rb_dagger(rb_compose(gp, rb_pair(rb_identity(p + 1), fd)), p);
        require(same(whole, rb_pair(rb_compose(fd, rb_pair(rb_identity(p), hd)), hd)), "pairing identity");

        std::size_t k = 1 + pick(rng, 3);
        require(same(rb_trace(rb_symmetry(k, k), k), rb_identity(k)), "yanking");
        RbMorphism t = random_morphism(rng, k + 1, q + 1);
        RbMorphism h = random_morphism(rng, q, 2);
        require(same(rb_compose(rb_trace(t, 1), h), rb_trace(rb_compose(t, rb_oplus(h, rb_identity(1))), 1)),
                "trace naturality");
    }
    for (int i = 0; i < n; ++i) {
        std::size_t k = pick(rng, 3), m = 1 + pick(rng, 2);
        RbMorphism f = random_morphism(rng, k, m), g = random_morphism(rng, k, m);
        require(int_distance(embed_N(f), embed_N(g)) == homset_distance(f, g), "N is not isometric");
    }
    return std::to_string(n) + " identity instances, " + std::to_string(n) + " isometry pairs";
}

void visit(CertNode& n, const std::function<void(CertNode&)>& f) {
    f(n);
    for (CertNode& c : n.children) visit(c, f);
    for (CertPair& p : n.pairs)
        for (CertNode& c : p.child) visit(c, f);
}

// 7
std::string certificates() {
    Rng rng(1004);
    const int n = 300;
    int positive = 0, rejected = 0;
    const Dist step(1, 1024);
    for (int i = 0; i < n; ++i) {
        auto [f, g] = random_diagram_pair(rng, 6, 2);
        Dist d = diagram_distance(f, g);
        Certificate c = synthesize(f, g, d);
        require(check(c, f, g) == d, "check does not return the distance");
        if (d > Dist(0)) {
            ++positive;
            try {
                synthesize(f, g, d - step);
                throw Failure("synthesis below the distance succeeded");
            } catch (const SynthesisError& e) {
                require(e.distance() == d, "synthesis failure reports " + e.distance().str());
            }
        }
        // lower the bound at a random node
        std::vector<CertNode*> sites;
        visit(c.root, [&](CertNode& x) {
            if (x.kind == CertNode::Kind::Top || (x.kind == CertNode::Kind::Coupling && x.eps > Dist(0))) sites.push_back(&x);
        });
        if (sites.empty() && !(d > Dist(0))) continue;
        Certificate m = c;
        sites.clear();
        visit(m.root, [&](CertNode& x) {
            if (x.kind == CertNode::Kind::Top || (x.kind == CertNode::Kind::Coupling && x.eps > Dist(0))) sites.push_back(&x);
        });
        std::size_t at = pick(rng, sites.size() + 1);
        if (at == sites.size() || sites.empty()) {
            if (!(d > Dist(0))) continue;
            m.bound = d - step;
        } else if (sites[at]->kind == CertNode::Kind::Top) {
            *sites[at] = CertNode::bisim();
        } else {
            sites[at]->eps = sites[at]->eps - step * step;
        }
        try {
            check(m, f, g);
            throw Failure("mutated certificate accepted");
        } catch (const CertificateError&) {
            ++rejected;
        }
    }
    return std::to_string(n) + " diagram pairs (" + std::to_string(positive) + " at positive distance), " +
           std::to_string(rejected) + " mutants rejected";
}

// 8
std::string corpus_agreement() {
    std::ifstream in(std::string(CHARTDIST_DATA_DIR) + "/corpus.txt");
    require(static_cast<bool>(in), "corpus not found");
    struct Entry {
        std::string name;
        Expr expr;
        DiagTerm diag;
    };
    std::vector<Entry> entries;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream s(line);
        std::string name, e, d;
        std::getline(s, name, '\t');
        std::getline(s, e, '\t');
        std::getline(s, d, '\t');
        entries.push_back({name, parse_expr(e), parse_diagram(d)});
    }
    require(entries.size() >= 10, "fewer than 10 corpus entries");
    bool has_left = false, has_right = false;
    for (const Entry& e : entries) {
        has_left = has_left || alpha_equivalent(e.expr, parse_expr("a.(a.0 + b.mu v1.a.v1)+b.mu v1.a.v1"));
        has_right = has_right || alpha_equivalent(e.expr, parse_expr("mu v2.(a.v2 + b.mu v1.a.a.v1)"));
        RbMorphism compiled = compile(e.diag);
        require(compiled.dom == 1, e.name + ": diagram does not have one input");
        require(bisimilar(expand(e.expr).chart, expand(compiled.rows[0]).chart).bisimilar, e.name + ": not bisimilar");
    }
    require(has_left && has_right, "the two-loop pair is missing");
    int compared = 0;
    for (const Entry& x : entries)
        for (const Entry& y : entries) {
            if (typecheck(x.diag) != typecheck(y.diag)) continue;
            require(bd(x.expr, y.expr) == diagram_distance(x.diag, y.diag), x.name + " vs " + y.name);
            ++compared;
        }
    return std::to_string(entries.size()) + " entries, " + std::to_string(compared) + " distance pairs";
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<std::string()>>> criteria = {
        {"two-loop example at distance 1/4", two_loops},
        {"loop unrolling is bisimilar", loop_bisimilarity},
        {"Kleene and stratified distances agree", oracle_agreement},
        {"pseudometric and contraction laws", pseudometric_laws},
        {"axiom soundness", axiom_soundness},
        {"Conway and trace laws, N isometry", conway_and_isometry},
        {"certificate synthesis and checking", certificates},
        {"expression/diagram corpus agreement", corpus_agreement},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::string detail;
        bool ok = true;
        auto t0 = Clock::now();
        try {
            detail = criteria[i].second();
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        failed += ok ? 0 : 1;
        std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << i + 1 << ": " << criteria[i].first << " (" << detail << "; "
                  << std::to_string(seconds_since(t0)).substr(0, 5) << " s)\n";
    }
    return failed == 0 ? 0 : 1;
}
