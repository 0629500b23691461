#include "chartdist/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <sstream>

#include "chartdist/bisim.hpp"
#include "chartdist/derive.hpp"
#include "chartdist/diagram.hpp"
#include "chartdist/errors.hpp"
#include "chartdist/expr.hpp"
#include "chartdist/metric.hpp"

namespace chartdist::cli {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string alphabet;
    std::string format = "auto";
    std::size_t max_states = kDefaultMaxStates;
    std::string dot_file;
    std::string out_file;
    std::string eps;
    bool table = false;
    bool check = false;
    std::vector<std::string> operands;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw UsageError("cannot write '" + path + "'");
}

/// An inline term, or the contents of a file when prefixed with '@'.
std::string operand_text(const std::string& arg) { return !arg.empty() && arg[0] == '@' ? read_file(arg.substr(1)) : arg; }

std::optional<Alphabet> parse_alphabet(const std::string& spec) {
    if (spec.empty()) return std::nullopt;
    Alphabet a;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.size() != 1 || item[0] < 'a' || item[0] > 'z' || item[0] == 'v')
            throw UsageError("malformed alphabet entry '" + item + "'");
        a.insert(item[0]);
    }
    if (a.empty()) throw UsageError("empty alphabet");
    return a;
}

struct Operand {
    enum class Kind { Expr, Diag, Chart };
    Kind kind = Kind::Expr;
    std::optional<Expr> expr;
    std::optional<DiagTerm> diag;
    std::optional<NamedChart> chart;
};

bool looks_like_chart(const std::string& text) {
    std::istringstream in(text);
    std::string word;
    return (in >> word) && (word == "state" || word == "alphabet" || word == "start" || word == "trans" || word == "out" ||
                            word[0] == '#');
}

Operand load(const std::string& arg, const Options& o) {
    const std::optional<Alphabet> alphabet = parse_alphabet(o.alphabet);
    Operand op;
    std::string text = operand_text(arg);
    std::string fmt = o.format;
    if (fmt == "chart" && (arg.empty() || arg[0] != '@')) text = read_file(arg);
    if (fmt == "auto" && looks_like_chart(text)) fmt = "chart";
    if (fmt == "chart") {
        op.kind = Operand::Kind::Chart;
        op.chart = parse_chart_text(text);
        if (op.chart->chart.prechart.size() > o.max_states) throw BudgetError("chart exceeds the state cap");
        if (alphabet)
            for (Letter a : op.chart->chart.prechart.letters())
                if (!alphabet->count(a)) throw ParseError(std::string("letter '") + a + "' is not in the alphabet", 1);
        return op;
    }
    if (fmt == "expr") {
        op.expr = parse_expr(text, alphabet);
        return op;
    }
    if (fmt == "diag") {
        op.kind = Operand::Kind::Diag;
        op.diag = parse_diagram(text, alphabet);
        return op;
    }
    // auto: expression first, then diagram; report the error that got further
    try {
        op.expr = parse_expr(text, alphabet);
        return op;
    } catch (const ParseError& as_expr) {
        try {
            op.kind = Operand::Kind::Diag;
            op.diag = parse_diagram(text, alphabet);
            return op;
        } catch (const ParseError& as_diag) {
            if (as_diag.position() > as_expr.position()) throw;
            throw as_expr;
        }
    }
}

/// Single-input component expressions; charts have none.
std::vector<Expr> component_exprs(const Operand& op) {
    if (op.kind == Operand::Kind::Expr) return {*op.expr};
    DiagTerm b = bend(*op.diag);
    std::vector<Expr> out;
    const std::size_t m = typecheck(b).dom.size();
    for (std::size_t i = 1; i <= m; ++i) out.push_back(compile(component(b, i)).rows.at(0));
    return out;
}

std::vector<NamedChart> components(const Operand& op, std::size_t max_states) {
    if (op.kind == Operand::Kind::Chart) return {*op.chart};
    std::vector<NamedChart> out;
    for (const Expr& e : component_exprs(op)) {
        ExpandedChart x = expand(e, max_states);
        out.push_back(NamedChart{std::move(x.chart), std::move(x.names)});
    }
    return out;
}

std::pair<std::vector<NamedChart>, std::vector<NamedChart>> component_pairs(const Operand& a, const Operand& b,
                                                                            std::size_t max_states) {
    if (a.kind == Operand::Kind::Diag && b.kind == Operand::Kind::Diag) {
        DiagType ta = typecheck(*a.diag), tb = typecheck(*b.diag);
        if (ta != tb) throw TypeError("diagrams of different types: '" + ta.dom + "' -> '" + ta.cod + "' and '" + tb.dom +
                                      "' -> '" + tb.cod + "'");
    }
    auto ca = components(a, max_states);
    auto cb = components(b, max_states);
    if (ca.size() != cb.size())
        throw TypeError("operands have " + std::to_string(ca.size()) + " and " + std::to_string(cb.size()) + " inputs");
    return {std::move(ca), std::move(cb)};
}

Level combined_level(const std::vector<NamedChart>& ca, const std::vector<NamedChart>& cb) {
    Level worst;
    for (std::size_t i = 0; i < ca.size(); ++i) {
        Level l = stratified_level(ca[i].chart, cb[i].chart);
        if (l && (!worst || *l < *worst)) worst = l;
    }
    return worst;
}

std::string dot_of(const Operand& op, std::size_t max_states) {
    if (op.kind == Operand::Kind::Diag) return diagram_to_dot(*op.diag);
    std::string out;
    for (const NamedChart& c : components(op, max_states)) out += chart_to_dot(c.chart, &c.names);
    return out;
}

std::string distance_table(const std::vector<NamedChart>& ca, const std::vector<NamedChart>& cb) {
    Prechart all;
    std::vector<std::string> labels;
    auto add = [&](const NamedChart& c, const std::string& tag) {
        all = disjoint_union(all, c.chart.prechart).first;
        for (StateId q = 0; q < c.chart.prechart.size(); ++q) labels.push_back(tag + ":" + c.names[q]);
    };
    for (std::size_t i = 0; i < ca.size(); ++i) {
        add(ca[i], "L" + std::to_string(i + 1));
        add(cb[i], "R" + std::to_string(i + 1));
    }
    DistTable d = bd_kleene(all);
    std::ostringstream out;
    out << "state";
    for (const auto& l : labels) out << '\t' << l;
    out << '\n';
    for (StateId x = 0; x < all.size(); ++x) {
        out << labels[x];
        for (StateId y = 0; y < all.size(); ++y) out << '\t' << d.at(x, y);
        out << '\n';
    }
    return out.str();
}

class Runner {
public:
    Runner(const Options& o, std::ostream& out) : o_(o), out_(out) {}

    int dist() {
        auto [a, b] = operands2();
        auto [ca, cb] = component_pairs(a, b, o_.max_states);
        Level l = combined_level(ca, cb);
        std::ostringstream s;
        s << distance_from_level(l) << (l ? " (level " + std::to_string(*l) + ")" : std::string(" (bisimilar)")) << '\n';
        if (o_.table) s << distance_table(ca, cb);
        emit(s.str());
        dot(a, b);
        return kOk;
    }

    int bisim() {
        auto [a, b] = operands2();
        auto [ca, cb] = component_pairs(a, b, o_.max_states);
        std::ostringstream s;
        bool all = true;
        for (std::size_t i = 0; i < ca.size(); ++i) {
            BisimResult r = bisimilar(ca[i].chart, cb[i].chart);
            if (ca.size() > 1) s << "# component " << i + 1 << '\n';
            if (!r.bisimilar) {
                all = false;
                s << "not bisimilar (distinguished at level " << r.distinguishing_level << ")\n";
                continue;
            }
            s << "bisimilar\n";
            for (auto [x, y] : r.witness) s << ca[i].names[x] << '\t' << cb[i].names[y] << '\n';
        }
        emit(s.str());
        dot(a, b);
        return all ? kOk : 1;
    }

    int strat() {
        auto [a, b] = operands2();
        auto [ca, cb] = component_pairs(a, b, o_.max_states);
        Level l = combined_level(ca, cb);
        emit((l ? std::to_string(*l) : std::string("inf")) + "\n");
        return kOk;
    }

    int compile_cmd() {
        Operand a = load(o_.operands.at(0), o_);
        auto cs = components(a, o_.max_states);
        std::ostringstream s;
        for (std::size_t i = 0; i < cs.size(); ++i) {
            if (cs.size() > 1) s << "# component " << i + 1 << '\n';
            for (StateId q = 0; q < cs[i].names.size(); ++q) s << "# q" << q << " = " << cs[i].names[q] << '\n';
            s << chart_to_text(cs[i].chart);
        }
        emit(s.str());
        if (!o_.dot_file.empty()) write_file(o_.dot_file, dot_of(a, o_.max_states));
        return kOk;
    }

    int render() {
        Operand a = load(o_.operands.at(0), o_);
        std::string d = dot_of(a, o_.max_states);
        if (!o_.dot_file.empty()) write_file(o_.dot_file, d);
        if (o_.dot_file.empty() || !o_.out_file.empty()) emit(d);
        return kOk;
    }

    int derive() {
        auto [a, b] = operands2();
        Certificate c = certify(a, b);
        emit(print_certificate(c));
        return kOk;
    }

    int check_cmd() {
        const std::string& spec = o_.operands.at(0);
        std::string text = !spec.empty() && spec[0] == '(' ? spec : spec[0] == '@' ? operand_text(spec) : read_file(spec);
        Certificate c = parse_certificate(text);
        Operand a = load(o_.operands.at(1), o_), b = load(o_.operands.at(2), o_);
        require_terms(a, b);
        Rational bound;
        if (a.kind == Operand::Kind::Diag && b.kind == Operand::Kind::Diag)
            bound = check(c, *a.diag, *b.diag, o_.max_states);
        else if (a.kind == Operand::Kind::Expr && b.kind == Operand::Kind::Expr)
            bound = check(c, *a.expr, *b.expr, o_.max_states);
        else
            bound = check(c, extract(component_exprs(a), component_exprs(b), o_.max_states));
        emit("accepted: distance <= " + bound.str() + "\n");
        return kOk;
    }

    int axioms() {
        std::ostringstream s;
        bool as_expected = true;
        for (const Axiom& ax : axiom_catalog()) {
            if (!o_.check) {
                s << ax.name << '\t' << print(ax.lhs) << " = " << print(ax.rhs) << '\n';
                continue;
            }
            const bool holds = check_axiom(ax.name);
            const bool expected = ax.name != "C1-copy";
            as_expected = as_expected && holds == expected;
            s << ax.name << '\t' << (holds ? "holds" : "fails") << (expected ? "" : " (expected to fail)") << '\n';
        }
        emit(s.str());
        return as_expected ? kOk : kRejected;
    }

private:
    std::pair<Operand, Operand> operands2() { return {load(o_.operands.at(0), o_), load(o_.operands.at(1), o_)}; }

    static void require_terms(const Operand& a, const Operand& b) {
        if (a.kind == Operand::Kind::Chart || b.kind == Operand::Kind::Chart)
            throw UsageError("certificates need expression or diagram operands");
    }

    Certificate certify(const Operand& a, const Operand& b) {
        require_terms(a, b);
        std::optional<Rational> eps;
        if (!o_.eps.empty()) {
            try {
                eps = Rational::parse(o_.eps);
            } catch (const std::exception&) {
                throw UsageError("malformed --eps '" + o_.eps + "'");
            }
        }
        if (a.kind == Operand::Kind::Diag && b.kind == Operand::Kind::Diag) {
            Rational e = eps ? *eps : diagram_distance(*a.diag, *b.diag);
            return synthesize(*a.diag, *b.diag, e, o_.max_states);
        }
        Extracted x = extract(component_exprs(a), component_exprs(b), o_.max_states);
        Rational bd(0);
        for (auto [p, q] : x.roots) bd = std::max(bd, distance_from_level(stratified_level(x.prechart, p, q)));
        Certificate c = synthesize(x, eps ? *eps : bd);
        c.lhs = a.kind == Operand::Kind::Expr ? print(*a.expr) : print(*a.diag);
        c.rhs = b.kind == Operand::Kind::Expr ? print(*b.expr) : print(*b.diag);
        if (a.kind != b.kind) c.lhs = c.rhs = std::nullopt;
        return c;
    }

    void emit(const std::string& text) {
        if (o_.out_file.empty())
            out_ << text;
        else
            write_file(o_.out_file, text);
    }

    void dot(const Operand& a, const Operand& b) {
        if (!o_.dot_file.empty()) write_file(o_.dot_file, dot_of(a, o_.max_states) + dot_of(b, o_.max_states));
    }

    const Options& o_;
    std::ostream& out_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact behavioural distances between chart expressions and string diagrams"};
    app.name("chartdist");
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub, std::size_t positionals, const std::string& what) {
        sub->add_option("--alphabet", o.alphabet, "Declared letters, e.g. a,b");
        sub->add_option("--format", o.format, "Operand format")->check(CLI::IsMember({"auto", "expr", "diag", "chart"}));
        sub->add_option("--max-states", o.max_states, "State cap for expansion")->check(CLI::PositiveNumber);
        sub->add_option("--dot", o.dot_file, "Write Graphviz output to FILE");
        sub->add_option("-o", o.out_file, "Write the report to FILE");
        sub->add_option("operands", o.operands, what)->required()->expected(static_cast<int>(positionals));
    };

    CLI::App* dist = app.add_subcommand("dist", "Exact distance and stratified level");
    common(dist, 2, "Two terms (inline, or @FILE)");
    dist->add_flag("--table", o.table, "Dump the full distance table as TSV");
    CLI::App* bisim = app.add_subcommand("bisim", "Bisimilarity with a witness; exit 0 iff bisimilar");
    common(bisim, 2, "Two terms");
    CLI::App* strat = app.add_subcommand("strat", "Largest n with the two terms n-bisimilar");
    common(strat, 2, "Two terms");
    CLI::App* compile_app = app.add_subcommand("compile", "Compile a term to chart text");
    common(compile_app, 1, "One term");
    CLI::App* render = app.add_subcommand("render", "Graphviz rendering of a term or chart");
    common(render, 1, "One term");
    CLI::App* derive = app.add_subcommand("derive", "Synthesize a certificate for a distance bound");
    common(derive, 2, "Two terms");
    derive->add_option("--eps", o.eps, "Bound p/q (default: the exact distance)");
    CLI::App* check_app = app.add_subcommand("check", "Check a certificate against two terms");
    common(check_app, 3, "Certificate (file, @FILE or inline) and two terms");
    CLI::App* axioms = app.add_subcommand("axioms", "List the axiom catalogue");
    axioms->add_flag("--check", o.check, "Check every axiom semantically");
    axioms->add_option("-o", o.out_file, "Write the report to FILE");

    std::vector<std::string> argv_store{"chartdist"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    Runner r(o, out);
    try {
        if (dist->parsed()) return r.dist();
        if (bisim->parsed()) return r.bisim();
        if (strat->parsed()) return r.strat();
        if (compile_app->parsed()) return r.compile_cmd();
        if (render->parsed()) return r.render();
        if (derive->parsed()) return r.derive();
        if (check_app->parsed()) return r.check_cmd();
        if (axioms->parsed()) return r.axioms();
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kParse;
    } catch (const TypeError& e) {
        err << "type error: " << e.what() << '\n';
        return kType;
    } catch (const CertificateError& e) {
        err << e.what() << '\n';
        return kRejected;
    } catch (const SynthesisError& e) {
        err << e.what() << '\n';
        return kRejected;
    } catch (const BudgetError& e) {
        err << "budget exceeded: " << e.what() << '\n';
        return kBudget;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace chartdist::cli
