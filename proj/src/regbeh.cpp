#include "chartdist/regbeh.hpp"

#include <algorithm>
#include <string>

#include "chartdist/bisim.hpp"
#include "chartdist/errors.hpp"

namespace chartdist {

namespace {

std::string type_str(const RbMorphism& f) { return std::to_string(f.dom) + "->" + std::to_string(f.cod); }

/// mu v.e with the trivial cases folded away; both folds preserve
/// bisimilarity (v not free, and the unguarded loop mu v.v = 0).
Expr mk_mu(VarIndex v, const Expr& body) {
    if (!body.has_free(v)) return body;
    if (body.kind() == ExprKind::Var) return Expr::zero();
    return Expr::mu(v, body);
}

/// Bindings v_i -> rows[i] for i = 1..rows.size().
Bindings bind_all(const std::vector<Expr>& rows, VarIndex first = 1) {
    Bindings b;
    b.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) b.emplace_back(first + static_cast<VarIndex>(i), rows[i]);
    return b;
}

/// Renames v_j to v_{target(j)} for every free j in [from, to].
Bindings shift_range(VarIndex from, VarIndex to, long delta) {
    Bindings b;
    for (VarIndex j = from; j <= to; ++j) b.emplace_back(j, Expr::var(static_cast<VarIndex>(static_cast<long>(j) + delta)));
    return b;
}

}  // namespace

RbMorphism rb_make(std::size_t dom, std::size_t cod, std::vector<Expr> rows) {
    if (rows.size() != dom)
        throw TypeError("morphism declared with " + std::to_string(dom) + " rows but given " + std::to_string(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& fv = rows[i].free_vars();
        if (!fv.empty() && fv.back() > cod)
            throw TypeError("row " + std::to_string(i + 1) + " mentions v" + std::to_string(fv.back()) +
                            " beyond codomain " + std::to_string(cod));
    }
    return RbMorphism{dom, cod, std::move(rows)};
}

RbMorphism rb_identity(std::size_t n) {
    std::vector<Expr> rows;
    for (std::size_t i = 1; i <= n; ++i) rows.push_back(Expr::var(static_cast<VarIndex>(i)));
    return RbMorphism{n, n, std::move(rows)};
}

RbMorphism rb_empty(std::size_t n) { return RbMorphism{0, n, {}}; }

RbMorphism rb_wiring(std::size_t cod, const std::vector<VarIndex>& targets) {
    std::vector<Expr> rows;
    for (VarIndex t : targets) rows.push_back(Expr::var(t));
    return rb_make(targets.size(), cod, std::move(rows));
}

RbMorphism rb_symmetry(std::size_t m, std::size_t n) {
    std::vector<VarIndex> t;
    for (std::size_t i = 1; i <= m; ++i) t.push_back(static_cast<VarIndex>(n + i));
    for (std::size_t j = 1; j <= n; ++j) t.push_back(static_cast<VarIndex>(j));
    return rb_wiring(m + n, t);
}

RbMorphism rb_codiagonal(std::size_t n) {
    std::vector<VarIndex> t;
    for (int copy = 0; copy < 2; ++copy)
        for (std::size_t i = 1; i <= n; ++i) t.push_back(static_cast<VarIndex>(i));
    return rb_wiring(n, t);
}

RbMorphism rb_inl(std::size_t p, std::size_t n) {
    std::vector<VarIndex> t;
    for (std::size_t i = 1; i <= p; ++i) t.push_back(static_cast<VarIndex>(i));
    return rb_wiring(p + n, t);
}

RbMorphism rb_inr(std::size_t p, std::size_t n) {
    std::vector<VarIndex> t;
    for (std::size_t i = 1; i <= n; ++i) t.push_back(static_cast<VarIndex>(p + i));
    return rb_wiring(p + n, t);
}

RbMorphism rb_compose(const RbMorphism& f, const RbMorphism& g) {
    if (f.cod != g.dom) throw TypeError("cannot compose " + type_str(f) + " with " + type_str(g));
    Bindings b = bind_all(g.rows);
    std::vector<Expr> rows;
    rows.reserve(f.rows.size());
    for (const Expr& r : f.rows) rows.push_back(substitute(r, b));
    return RbMorphism{f.dom, g.cod, std::move(rows)};
}

RbMorphism rb_pair(const RbMorphism& f, const RbMorphism& g) {
    if (f.cod != g.cod) throw TypeError("cannot pair " + type_str(f) + " with " + type_str(g));
    RbMorphism r{f.dom + g.dom, f.cod, f.rows};
    r.rows.insert(r.rows.end(), g.rows.begin(), g.rows.end());
    return r;
}

RbMorphism rb_oplus(const RbMorphism& f, const RbMorphism& g) {
    RbMorphism r{f.dom + g.dom, f.cod + g.cod, f.rows};
    Bindings shift = shift_range(1, static_cast<VarIndex>(g.cod), static_cast<long>(f.cod));
    for (const Expr& row : g.rows) r.rows.push_back(f.cod == 0 ? row : substitute(row, shift));
    return r;
}

RbMorphism rb_dagger(const RbMorphism& f, std::size_t p) {
    const std::size_t n = f.dom;
    if (f.cod != p + n) throw TypeError("dagger needs n -> p+n, got " + type_str(f) + " with p=" + std::to_string(p));
    if (n == 0) return RbMorphism{0, p, {}};
    const auto x = static_cast<VarIndex>(p + n);
    Expr last = mk_mu(x, f.rows.back());
    if (n == 1) return RbMorphism{1, p, {last}};

    // Eliminate x_n from the remaining rows and solve the smaller system.
    RbMorphism rest{n - 1, p + n - 1, {}};
    Bindings elim{{x, last}};
    for (std::size_t i = 0; i + 1 < n; ++i) rest.rows.push_back(substitute(f.rows[i], elim));
    RbMorphism solved = rb_dagger(rest, p);

    Bindings back = bind_all(solved.rows, static_cast<VarIndex>(p + 1));
    solved.rows.push_back(substitute(last, back));
    solved.dom = n;
    return solved;
}

RbMorphism rb_trace(const RbMorphism& g, std::size_t n) {
    if (g.dom < n || g.cod < n) throw TypeError("cannot trace " + std::to_string(n) + " wires of " + type_str(g));
    if (n == 0) return g;
    const std::size_t p = g.dom - n;
    const std::size_t q = g.cod - n;
    // g ; <id_q, inr_{q+p,n}> moves the fed-back outputs behind the p
    // recursion variables of the inputs.
    Bindings shift = shift_range(static_cast<VarIndex>(q + 1), static_cast<VarIndex>(q + n), static_cast<long>(p));
    RbMorphism loop{g.dom, q + p + n, {}};
    for (const Expr& row : g.rows) loop.rows.push_back(substitute(row, shift));
    RbMorphism solved = rb_dagger(loop, q);
    solved.rows.erase(solved.rows.begin() + static_cast<std::ptrdiff_t>(p), solved.rows.end());
    solved.dom = p;
    return solved;
}

bool rb_bisimilar(const RbMorphism& f, const RbMorphism& g) {
    if (f.dom != g.dom || f.cod != g.cod) return false;
    for (std::size_t i = 0; i < f.rows.size(); ++i)
        if (!bisimilar(expand(f.rows[i]).chart, expand(g.rows[i]).chart).bisimilar) return false;
    return true;
}

Dist homset_distance(const RbMorphism& f, const RbMorphism& g) {
    if (f.dom != g.dom || f.cod != g.cod) throw TypeError("distance between " + type_str(f) + " and " + type_str(g));
    Dist d(0);
    for (std::size_t i = 0; i < f.rows.size(); ++i)
        d = std::max(d, bd_stratified(expand(f.rows[i]).chart, expand(g.rows[i]).chart));
    return d;
}

// ---------------------------------------------------------------------------
// Int construction

namespace {

std::string obj_str(IntObject a) { return "(" + std::to_string(a.plus) + "," + std::to_string(a.minus) + ")"; }

/// Identity on the first k wires, symmetry on the next a+b, identity on the
/// last l.
RbMorphism sandwich(std::size_t k, std::size_t a, std::size_t b, std::size_t l) {
    return rb_oplus(rb_oplus(rb_identity(k), rb_symmetry(a, b)), rb_identity(l));
}

}  // namespace

IntMorphism int_make(IntObject dom, IntObject cod, RbMorphism payload) {
    if (payload.dom != dom.plus + cod.minus || payload.cod != dom.minus + cod.plus)
        throw TypeError("payload " + type_str(payload) + " does not fit " + obj_str(dom) + " -> " + obj_str(cod));
    return IntMorphism{dom, cod, std::move(payload)};
}

IntMorphism int_identity(IntObject a) { return IntMorphism{a, a, rb_symmetry(a.plus, a.minus)}; }

IntMorphism int_symmetry(IntObject a, IntObject c) {
    // A+ C+ C- A-  ->  A- C- C+ A+
    std::vector<VarIndex> t;
    const std::size_t base = a.minus + c.minus;
    for (std::size_t i = 1; i <= a.plus; ++i) t.push_back(static_cast<VarIndex>(base + c.plus + i));
    for (std::size_t j = 1; j <= c.plus; ++j) t.push_back(static_cast<VarIndex>(base + j));
    for (std::size_t j = 1; j <= c.minus; ++j) t.push_back(static_cast<VarIndex>(a.minus + j));
    for (std::size_t i = 1; i <= a.minus; ++i) t.push_back(static_cast<VarIndex>(i));
    IntObject ac{a.plus + c.plus, a.minus + c.minus};
    IntObject ca{c.plus + a.plus, c.minus + a.minus};
    return IntMorphism{ac, ca, rb_wiring(a.minus + c.minus + c.plus + a.plus, t)};
}

IntMorphism int_unit(IntObject a) {
    IntObject both{a.plus + a.minus, a.minus + a.plus};
    return IntMorphism{IntObject{}, both, rb_symmetry(a.minus, a.plus)};
}

IntMorphism int_counit(IntObject a) {
    IntObject both{a.minus + a.plus, a.plus + a.minus};
    return IntMorphism{both, IntObject{}, rb_symmetry(a.minus, a.plus)};
}

IntMorphism int_compose(const IntMorphism& f, const IntMorphism& g) {
    if (!(f.cod == g.dom)) throw TypeError("cannot compose Int morphisms at " + obj_str(f.cod) + " and " + obj_str(g.dom));
    const std::size_t ap = f.dom.plus, am = f.dom.minus;
    const std::size_t bp = f.cod.plus, bm = f.cod.minus;
    const std::size_t cp = g.cod.plus, cm = g.cod.minus;
    const RbMorphism& pf = f.payload;  // A+ B- -> A- B+
    const RbMorphism& pg = g.payload;  // B+ C- -> B- C+
    RbMorphism result{ap + cm, am + cp, {}};

    if (bm == 0) {
        // No leftward wire through B: feed f's B+ outputs into g directly.
        Bindings b;
        for (std::size_t i = 1; i <= am; ++i) b.emplace_back(static_cast<VarIndex>(i), Expr::var(static_cast<VarIndex>(i)));
        Bindings gshift = shift_range(1, static_cast<VarIndex>(cp), static_cast<long>(am));
        std::vector<Expr> g_rows;
        for (const Expr& r : pg.rows) g_rows.push_back(substitute(r, gshift));
        for (std::size_t j = 0; j < bp; ++j) b.emplace_back(static_cast<VarIndex>(am + 1 + j), g_rows[j]);
        for (std::size_t i = 0; i < ap; ++i) result.rows.push_back(substitute(pf.rows[i], b));
        for (std::size_t j = 0; j < cm; ++j) result.rows.push_back(g_rows[bp + j]);
        return IntMorphism{f.dom, g.cod, std::move(result)};
    }
    if (bp == 0) {
        // No rightward wire through B: g's B- outputs enter f's B- inputs.
        Bindings b;
        for (std::size_t j = 0; j < bm; ++j) b.emplace_back(static_cast<VarIndex>(1 + j), pf.rows[ap + j]);
        for (std::size_t k = 1; k <= cp; ++k)
            b.emplace_back(static_cast<VarIndex>(bm + k), Expr::var(static_cast<VarIndex>(am + k)));
        for (std::size_t i = 0; i < ap; ++i) result.rows.push_back(pf.rows[i]);
        for (std::size_t j = 0; j < cm; ++j) result.rows.push_back(substitute(pg.rows[j], b));
        return IntMorphism{f.dom, g.cod, std::move(result)};
    }

    // A+ C- B- B+ -> A+ B- C- B+ -> A+ B- B+ C-
    RbMorphism alpha = rb_compose(sandwich(ap, cm, bm, bp), sandwich(ap + bm, cm, bp, 0));
    // A- B+ B- C+ -> A- B+ C+ B- -> A- C+ B+ B- -> A- C+ B- B+
    RbMorphism beta = rb_compose(rb_compose(sandwich(am + bp, bm, cp, 0), sandwich(am, bp, cp, bm)),
                                 sandwich(am + cp, bp, bm, 0));
    RbMorphism body = rb_compose(rb_compose(alpha, rb_oplus(pf, pg)), beta);
    return IntMorphism{f.dom, g.cod, rb_trace(body, bm + bp)};
}

IntMorphism int_tensor(const IntMorphism& f, const IntMorphism& g) {
    const std::size_t ap = f.dom.plus, am = f.dom.minus, bp = f.cod.plus, bm = f.cod.minus;
    const std::size_t cp = g.dom.plus, cm = g.dom.minus, dp = g.cod.plus, dm = g.cod.minus;
    // A+ C+ B- D- -> A+ B- C+ D- ; f+g ; A- B+ C- D+ -> A- C- B+ D+
    RbMorphism pre = sandwich(ap, cp, bm, dm);
    RbMorphism post = sandwich(am, bp, cm, dp);
    RbMorphism payload = rb_compose(rb_compose(pre, rb_oplus(f.payload, g.payload)), post);
    return IntMorphism{IntObject{ap + cp, am + cm}, IntObject{bp + dp, bm + dm}, std::move(payload)};
}

IntMorphism embed_N(const RbMorphism& f) { return IntMorphism{IntObject{f.dom, 0}, IntObject{f.cod, 0}, f}; }

Dist int_distance(const IntMorphism& f, const IntMorphism& g) {
    if (!(f.dom == g.dom) || !(f.cod == g.cod)) throw TypeError("distance between Int morphisms of different types");
    return homset_distance(f.payload, g.payload);
}

}  // namespace chartdist
