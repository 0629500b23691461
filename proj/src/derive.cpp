#include "chartdist/derive.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "chartdist/bisim.hpp"
#include "chartdist/errors.hpp"

namespace chartdist {

// ---------------------------------------------------------------------------
// S-expressions

namespace {

struct SExpr {
    enum class Kind { Atom, String, List };
    Kind kind = Kind::Atom;
    std::string text;
    std::vector<SExpr> items;
    std::size_t pos = 0;

    bool is_list() const { return kind == Kind::List; }
    bool is_atom(std::string_view s) const { return kind == Kind::Atom && text == s; }
};

class SExprReader {
public:
    explicit SExprReader(std::string_view text) : text_(text) {}

    SExpr read_all() {
        SExpr e = read();
        skip();
        if (pos_ != text_.size()) throw ParseError("trailing input after certificate", pos_);
        return e;
    }

private:
    void skip() {
        while (pos_ < text_.size()) {
            if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            } else if (text_[pos_] == ';') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    SExpr read() {
        skip();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of certificate", pos_);
        SExpr e;
        e.pos = pos_;
        char ch = text_[pos_];
        if (ch == '(') {
            ++pos_;
            e.kind = SExpr::Kind::List;
            while (true) {
                skip();
                if (pos_ >= text_.size()) throw ParseError("unclosed '('", e.pos);
                if (text_[pos_] == ')') break;
                e.items.push_back(read());
            }
            ++pos_;
            return e;
        }
        if (ch == ')') throw ParseError("unexpected ')'", pos_);
        if (ch == '"') {
            ++pos_;
            e.kind = SExpr::Kind::String;
            while (pos_ < text_.size() && text_[pos_] != '"') e.text.push_back(text_[pos_++]);
            if (pos_ >= text_.size()) throw ParseError("unterminated string", e.pos);
            ++pos_;
            return e;
        }
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '(' &&
               text_[pos_] != ')' && text_[pos_] != '"')
            e.text.push_back(text_[pos_++]);
        return e;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

[[noreturn]] void bad(const SExpr& e, const std::string& msg) { throw ParseError(msg, e.pos); }

const SExpr& head_list(const SExpr& e, std::string_view head, std::size_t arity) {
    if (!e.is_list() || e.items.empty() || !e.items[0].is_atom(head) || e.items.size() != arity + 1)
        bad(e, "expected (" + std::string(head) + " ...) with " + std::to_string(arity) + " argument(s)");
    return e;
}

Rational to_rational(const SExpr& e) {
    if (e.kind != SExpr::Kind::Atom) bad(e, "expected a rational");
    try {
        return Rational::parse(e.text);
    } catch (const std::exception&) {
        bad(e, "malformed rational '" + e.text + "'");
    }
}

std::string to_string(const SExpr& e) {
    if (e.kind != SExpr::Kind::String) bad(e, "expected a quoted state");
    return e.text;
}

CertMove to_move(const SExpr& e) {
    if (!e.is_list() || e.items.empty()) bad(e, "expected a move");
    CertMove m;
    if (e.items[0].is_atom("act")) {
        head_list(e, "act", 2);
        const SExpr& l = e.items[1];
        if (l.kind != SExpr::Kind::Atom || l.text.size() != 1 || !std::islower(static_cast<unsigned char>(l.text[0])))
            bad(l, "expected a letter");
        m.act = true;
        m.letter = l.text[0];
        m.state = to_string(e.items[2]);
        return m;
    }
    if (e.items[0].is_atom("out")) {
        head_list(e, "out", 1);
        const SExpr& v = e.items[1];
        bool ok = v.kind == SExpr::Kind::Atom && v.text.size() >= 2 && v.text[0] == 'v' &&
                  std::all_of(v.text.begin() + 1, v.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
        if (!ok || v.text.size() > 8 || std::stoul(v.text.substr(1)) == 0) bad(v, "expected a variable");
        m.var = static_cast<VarIndex>(std::stoul(v.text.substr(1)));
        return m;
    }
    bad(e, "expected (act ...) or (out ...)");
}

CertNode to_node(const SExpr& e);

std::vector<CertNode> to_nodes(const SExpr& e) {
    if (!e.is_list()) bad(e, "expected a list of certificates");
    std::vector<CertNode> out;
    for (const SExpr& c : e.items) out.push_back(to_node(c));
    return out;
}

CertNode to_node(const SExpr& e) {
    if (!e.is_list() || e.items.empty() || e.items[0].kind != SExpr::Kind::Atom) bad(e, "expected a certificate node");
    const std::string& head = e.items[0].text;
    CertNode n;
    if (head == "top") {
        head_list(e, "top", 0);
        return CertNode::top();
    }
    if (head == "bisim") {
        head_list(e, "bisim", 0);
        return CertNode::bisim();
    }
    if (head == "weaken") {
        head_list(e, "weaken", 2);
        return CertNode::weaken(to_rational(e.items[1]), to_node(e.items[2]));
    }
    if (head == "decomp") {
        head_list(e, "decomp", 1);
        return CertNode::decomp(to_nodes(e.items[1]));
    }
    if (head == "triang") {
        if (e.items.size() != 2 && e.items.size() != 3) bad(e, "expected (triang (C ...) (STATE ...))");
        n.kind = CertNode::Kind::Triang;
        n.children = to_nodes(e.items[1]);
        if (e.items.size() == 3) {
            if (!e.items[2].is_list()) bad(e.items[2], "expected a list of states");
            for (const SExpr& s : e.items[2].items) n.via.push_back(to_string(s));
        }
        return n;
    }
    if (head == "coupling") {
        head_list(e, "coupling", 2);
        n.kind = CertNode::Kind::Coupling;
        n.eps = to_rational(e.items[1]);
        if (!e.items[2].is_list()) bad(e.items[2], "expected a list of move pairs");
        for (const SExpr& p : e.items[2].items) {
            if (!p.is_list() || p.items.size() < 3 || p.items.size() > 4 || !p.items[0].is_atom("move"))
                bad(p, "expected (move MOVE MOVE CERT?)");
            CertPair pair{to_move(p.items[1]), to_move(p.items[2]), {}};
            if (p.items.size() == 4) pair.child.push_back(to_node(p.items[3]));
            n.pairs.push_back(std::move(pair));
        }
        return n;
    }
    bad(e, "unknown certificate node '" + head + "'");
}

std::string quote(const std::string& s) { return "\"" + s + "\""; }

std::string move_str(const CertMove& m) {
    if (m.act) return "(act " + std::string(1, m.letter) + " " + quote(m.state) + ")";
    return "(out v" + std::to_string(m.var) + ")";
}

void print_node(const CertNode& n, std::ostream& out, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    switch (n.kind) {
        case CertNode::Kind::Top: out << pad << "(top)"; return;
        case CertNode::Kind::Bisim: out << pad << "(bisim)"; return;
        case CertNode::Kind::Weaken:
            out << pad << "(weaken " << n.eps << "\n";
            print_node(n.children.at(0), out, indent + 2);
            out << ")";
            return;
        case CertNode::Kind::Decomp:
        case CertNode::Kind::Triang: {
            out << pad << (n.kind == CertNode::Kind::Decomp ? "(decomp (" : "(triang (");
            for (std::size_t i = 0; i < n.children.size(); ++i) {
                out << "\n";
                print_node(n.children[i], out, indent + 2);
            }
            out << ")";
            if (n.kind == CertNode::Kind::Triang) {
                out << "\n" << pad << "  (";
                for (std::size_t i = 0; i < n.via.size(); ++i) out << (i ? " " : "") << quote(n.via[i]);
                out << ")";
            }
            out << ")";
            return;
        }
        case CertNode::Kind::Coupling:
            out << pad << "(coupling " << n.eps << " (";
            for (const CertPair& p : n.pairs) {
                out << "\n" << pad << "  (move " << move_str(p.left) << " " << move_str(p.right);
                if (!p.child.empty()) {
                    out << "\n";
                    print_node(p.child[0], out, indent + 4);
                }
                out << ")";
            }
            out << "))";
            return;
    }
}

}  // namespace

Certificate parse_certificate(std::string_view text) {
    SExpr e = SExprReader(text).read_all();
    Certificate c;
    if (!e.is_list() || e.items.empty() || !e.items[0].is_atom("certificate")) {
        c.root = to_node(e);
        return c;
    }
    bool have_root = false;
    for (std::size_t i = 1; i < e.items.size(); ++i) {
        const SExpr& item = e.items[i];
        if (item.is_list() && !item.items.empty() && item.items[0].is_atom("lhs")) {
            c.lhs = to_string(head_list(item, "lhs", 1).items[1]);
        } else if (item.is_list() && !item.items.empty() && item.items[0].is_atom("rhs")) {
            c.rhs = to_string(head_list(item, "rhs", 1).items[1]);
        } else if (item.is_list() && !item.items.empty() && item.items[0].is_atom("bound")) {
            c.bound = to_rational(head_list(item, "bound", 1).items[1]);
        } else {
            if (have_root) bad(item, "certificate has more than one root node");
            c.root = to_node(item);
            have_root = true;
        }
    }
    if (!have_root) bad(e, "certificate has no root node");
    return c;
}

std::string print_certificate(const Certificate& c) {
    std::ostringstream out;
    out << "(certificate\n";
    if (c.lhs) out << "  (lhs " << quote(*c.lhs) << ")\n";
    if (c.rhs) out << "  (rhs " << quote(*c.rhs) << ")\n";
    if (c.bound) out << "  (bound " << *c.bound << ")\n";
    print_node(c.root, out, 2);
    out << ")\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Extraction

std::optional<StateId> Extracted::find(const std::string& name) const {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) return std::nullopt;
    return static_cast<StateId>(it - names.begin());
}

namespace {

class Merger {
public:
    explicit Merger(Extracted& out) : out_(out) {}

    StateId add(const Expr& e, std::size_t max_states) {
        ExpandedChart c = expand(e, max_states);
        std::vector<StateId> ids(c.names.size());
        for (StateId q = 0; q < c.names.size(); ++q) {
            auto [it, fresh] = index_.emplace(c.names[q], out_.names.size());
            if (fresh) {
                out_.names.push_back(c.names[q]);
                out_.prechart.add_state();
            }
            ids[q] = it->second;
        }
        if (out_.names.size() > max_states) throw BudgetError("extracted prechart exceeds the state cap");
        for (StateId q = 0; q < c.names.size(); ++q) {
            for (auto [a, t] : c.chart.prechart.transitions(q)) out_.prechart.add_transition(ids[q], a, ids[t]);
            for (VarIndex v : c.chart.prechart.outputs(q)) out_.prechart.add_output(ids[q], v);
        }
        return ids[c.chart.start];
    }

private:
    Extracted& out_;
    std::map<std::string, StateId> index_;
};

}  // namespace

Extracted extract(const std::vector<Expr>& lhs, const std::vector<Expr>& rhs, std::size_t max_states) {
    if (lhs.size() != rhs.size()) throw TypeError("the two sides have different numbers of inputs");
    Extracted x;
    Merger merge(x);
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        StateId a = merge.add(lhs[i], max_states);
        StateId b = merge.add(rhs[i], max_states);
        x.roots.emplace_back(a, b);
    }
    return x;
}

Extracted extract(const DiagTerm& f, const DiagTerm& g, std::size_t max_states) {
    DiagType tf = typecheck(f);
    DiagType tg = typecheck(g);
    if (tf != tg) throw TypeError("the two diagrams have different types");
    DiagTerm bf = bend(f);
    DiagTerm bg = bend(g);
    const std::size_t m = typecheck(bf).dom.size();
    std::vector<Expr> lhs, rhs;
    for (std::size_t i = 1; i <= m; ++i) {
        lhs.push_back(compile(component(bf, i)).rows.at(0));
        rhs.push_back(compile(component(bg, i)).rows.at(0));
    }
    return extract(lhs, rhs, max_states);
}

// ---------------------------------------------------------------------------
// Checking

namespace {

class Checker {
public:
    explicit Checker(const Extracted& x) : x_(x), bisim_(bisimilarity(x.prechart)) {}

    Rational root(const CertNode& n, const std::string& path) {
        switch (n.kind) {
            case CertNode::Kind::Decomp: {
                if (n.children.size() != x_.roots.size())
                    fail(path, "decomp has " + std::to_string(n.children.size()) + " children for " +
                                   std::to_string(x_.roots.size()) + " inputs");
                Rational b(0);
                for (std::size_t i = 0; i < n.children.size(); ++i) {
                    auto [l, r] = x_.roots[i];
                    b = std::max(b, node(n.children[i], l, r, path + "/decomp[" + std::to_string(i + 1) + "]"));
                }
                return b;
            }
            case CertNode::Kind::Weaken: {
                check_eps(n.eps, path);
                Rational b = root(n.children.at(0), path + "/weaken");
                if (n.eps < b) fail(path, "weaken to " + n.eps.str() + " below the child bound " + b.str());
                return n.eps;
            }
            case CertNode::Kind::Top: return Rational(1);
            default:
                if (x_.roots.size() != 1) fail(path, "a diagram with several inputs needs decomp at the root");
                return node(n, x_.roots[0].first, x_.roots[0].second, path);
        }
    }

private:
    [[noreturn]] static void fail(const std::string& path, const std::string& msg) {
        throw CertificateError("rejected at " + (path.empty() ? std::string("/") : path) + ": " + msg);
    }

    static void check_eps(const Rational& e, const std::string& path) {
        if (e < Rational(0) || e > Rational(1)) fail(path, "bound " + e.str() + " outside [0,1]");
    }

    StateId state(const std::string& name, const std::string& path) const {
        auto id = x_.find(name);
        if (!id) fail(path, "unknown state \"" + name + "\"");
        return *id;
    }

    std::optional<Move> resolve(const CertMove& m, const std::string& path) const {
        if (!m.act) return Move::out(m.var);
        return Move::act(m.letter, state(m.state, path));
    }

    Rational node(const CertNode& n, StateId x, StateId y, const std::string& path) {
        switch (n.kind) {
            case CertNode::Kind::Top: return Rational(1);
            case CertNode::Kind::Bisim:
                if (!bisim_.same_block(x, y))
                    fail(path, "states \"" + x_.names[x] + "\" and \"" + x_.names[y] + "\" are not bisimilar");
                return Rational(0);
            case CertNode::Kind::Weaken: {
                check_eps(n.eps, path);
                if (n.children.size() != 1) fail(path, "weaken needs one child");
                Rational b = node(n.children[0], x, y, path + "/weaken");
                if (n.eps < b) fail(path, "weaken to " + n.eps.str() + " below the child bound " + b.str());
                return n.eps;
            }
            case CertNode::Kind::Triang: {
                if (n.children.empty() || n.via.size() + 1 != n.children.size())
                    fail(path, "triang needs k children and k-1 intermediate states");
                Rational sum(0);
                StateId from = x;
                for (std::size_t i = 0; i < n.children.size(); ++i) {
                    StateId to = i + 1 < n.children.size() ? state(n.via[i], path) : y;
                    sum += node(n.children[i], from, to, path + "/triang[" + std::to_string(i + 1) + "]");
                    from = to;
                }
                return std::min(sum, Rational(1));
            }
            case CertNode::Kind::Coupling: return coupling(n, x, y, path);
            case CertNode::Kind::Decomp: fail(path, "decomp is only allowed at the root");
        }
        fail(path, "unknown node");
    }

    Rational coupling(const CertNode& n, StateId x, StateId y, const std::string& path) {
        check_eps(n.eps, path);
        const std::vector<Move> bx = x_.prechart.moves(x);
        const std::vector<Move> by = x_.prechart.moves(y);
        std::vector<bool> seen_x(bx.size()), seen_y(by.size());
        Rational worst(0);
        for (std::size_t i = 0; i < n.pairs.size(); ++i) {
            const CertPair& p = n.pairs[i];
            const std::string here = path + "/coupling[" + std::to_string(i + 1) + "]";
            Move u = *resolve(p.left, here);
            Move w = *resolve(p.right, here);
            auto ix = std::find(bx.begin(), bx.end(), u);
            auto iy = std::find(by.begin(), by.end(), w);
            if (ix == bx.end()) fail(here, "left move is not a move of \"" + x_.names[x] + "\"");
            if (iy == by.end()) fail(here, "right move is not a move of \"" + x_.names[y] + "\"");
            seen_x[static_cast<std::size_t>(ix - bx.begin())] = true;
            seen_y[static_cast<std::size_t>(iy - by.begin())] = true;
            Rational cost;
            if (u.is_act() && w.is_act() && u.letter == w.letter) {
                Rational child = p.child.empty() ? Rational(1) : node(p.child[0], u.target, w.target, here);
                cost = Rational(1, 2) * std::min(child, Rational(1));
            } else {
                if (!p.child.empty()) fail(here, "only a pair of equally labelled transitions takes a sub-certificate");
                cost = u == w ? Rational(0) : Rational(1);
            }
            worst = std::max(worst, cost);
        }
        if (std::find(seen_x.begin(), seen_x.end(), false) != seen_x.end())
            fail(path, "coupling does not cover every move of \"" + x_.names[x] + "\"");
        if (std::find(seen_y.begin(), seen_y.end(), false) != seen_y.end())
            fail(path, "coupling does not cover every move of \"" + x_.names[y] + "\"");
        if (n.eps < worst) fail(path, "coupling claims " + n.eps.str() + " but a pair costs " + worst.str());
        return n.eps;
    }

    const Extracted& x_;
    Partition bisim_;
};

}  // namespace

Rational check(const Certificate& c, const Extracted& x) {
    Rational b = Checker(x).root(c.root, "");
    if (c.bound) {
        if (*c.bound < Rational(0) || *c.bound > Rational(1))
            throw CertificateError("rejected: claimed bound " + c.bound->str() + " outside [0,1]");
        if (*c.bound < b)
            throw CertificateError("rejected: claimed bound " + c.bound->str() + " is below the proved bound " + b.str());
    }
    return b;
}

Rational check(const Certificate& c, const DiagTerm& f, const DiagTerm& g, std::size_t max_states) {
    if (c.lhs && !(parse_diagram(*c.lhs) == f)) throw CertificateError("rejected: lhs does not match the first diagram");
    if (c.rhs && !(parse_diagram(*c.rhs) == g)) throw CertificateError("rejected: rhs does not match the second diagram");
    return check(c, extract(f, g, max_states));
}

Rational check(const Certificate& c, const Expr& e, const Expr& f, std::size_t max_states) {
    if (c.lhs && !alpha_equivalent(parse_expr(*c.lhs), e))
        throw CertificateError("rejected: lhs does not match the first expression");
    if (c.rhs && !alpha_equivalent(parse_expr(*c.rhs), f))
        throw CertificateError("rejected: rhs does not match the second expression");
    return check(c, extract({e}, {f}, max_states));
}

// ---------------------------------------------------------------------------
// Synthesis

std::vector<std::pair<std::size_t, std::size_t>> optimal_coupling(const DistTable& d, const std::vector<Move>& a,
                                                                  const std::vector<Move>& b) {
    std::vector<std::pair<std::size_t, std::size_t>> r;
    if (a.empty() || b.empty()) return r;
    auto cost = [&](std::size_t i, std::size_t j) { return lift_edge(d, a[i], b[j]); };
    for (std::size_t i = 0; i < a.size(); ++i) {
        Rational best(1);
        for (std::size_t j = 0; j < b.size(); ++j) best = std::min(best, cost(i, j));
        for (std::size_t j = 0; j < b.size(); ++j)
            if (cost(i, j) == best) r.emplace_back(i, j);
    }
    for (std::size_t j = 0; j < b.size(); ++j) {
        Rational best(1);
        for (std::size_t i = 0; i < a.size(); ++i) best = std::min(best, cost(i, j));
        for (std::size_t i = 0; i < a.size(); ++i)
            if (cost(i, j) == best) r.emplace_back(i, j);
    }
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
}

namespace {

class Synthesizer {
public:
    explicit Synthesizer(const Extracted& x) : x_(x), chain_(stratification_chain(x.prechart)) {}

    /// Level of agreement: the largest n with a ~(n) b; nullopt if bisimilar.
    Level level(StateId a, StateId b) const {
        if (chain_.back().same_block(a, b)) return std::nullopt;
        unsigned n = 0;
        while (chain_[n + 1].same_block(a, b)) ++n;
        return n;
    }

    Rational distance(StateId a, StateId b) const { return distance_from_level(level(a, b)); }

    CertNode tight(StateId a, StateId b) {
        Level n = level(a, b);
        if (!n) return CertNode::bisim();
        return at_level(a, b, *n);
    }

private:
    const DistTable& approximant(unsigned k) {
        while (tables_.size() <= k) tables_.push_back(tables_.empty() ? DistTable::top(x_.prechart.size())
                                                                      : phi(x_.prechart, tables_.back()));
        return tables_[k];
    }

    CertMove named(const Move& m) const {
        CertMove c;
        c.act = m.is_act();
        c.letter = m.letter;
        if (m.is_act()) c.state = x_.names[m.target];
        c.var = m.var;
        return c;
    }

    /// Node with bound exactly 2^-j for a pair at level >= j.
    CertNode at_level(StateId a, StateId b, unsigned j) {
        Level n = level(a, b);
        if (!n) return CertNode::bisim();
        j = std::min(j, *n);
        if (j == 0) return CertNode::top();
        const DistTable& prev = approximant(j - 1);
        const std::vector<Move> ma = x_.prechart.moves(a);
        const std::vector<Move> mb = x_.prechart.moves(b);
        CertNode node;
        node.kind = CertNode::Kind::Coupling;
        node.eps = Rational(0);
        for (auto [i, k] : optimal_coupling(prev, ma, mb)) {
            CertPair p{named(ma[i]), named(mb[k]), {}};
            Rational cost;
            if (ma[i].is_act() && mb[k].is_act() && ma[i].letter == mb[k].letter) {
                CertNode child = at_level(ma[i].target, mb[k].target, j - 1);
                cost = Rational(1, 2) * bound_of(child);
                p.child.push_back(std::move(child));
            } else {
                cost = ma[i] == mb[k] ? Rational(0) : Rational(1);
            }
            node.eps = std::max(node.eps, cost);
            node.pairs.push_back(std::move(p));
        }
        return node;
    }

    static Rational bound_of(const CertNode& n) {
        switch (n.kind) {
            case CertNode::Kind::Top: return Rational(1);
            case CertNode::Kind::Bisim: return Rational(0);
            default: return n.eps;
        }
    }

    const Extracted& x_;
    std::vector<Partition> chain_;
    std::vector<DistTable> tables_;
};

}  // namespace

CertNode synthesize_pair(const Extracted& x, StateId a, StateId b) { return Synthesizer(x).tight(a, b); }

Certificate synthesize(const Extracted& x, const Rational& eps) {
    Synthesizer s(x);
    Rational bd(0);
    std::vector<CertNode> parts;
    for (auto [a, b] : x.roots) {
        bd = std::max(bd, s.distance(a, b));
        parts.push_back(s.tight(a, b));
    }
    if (eps < bd) throw SynthesisError(bd);
    if (eps > Rational(1)) throw std::invalid_argument("bound " + eps.str() + " exceeds 1");
    Certificate c;
    c.root = parts.size() == 1 ? std::move(parts[0]) : CertNode::decomp(std::move(parts));
    if (eps > bd) c.root = CertNode::weaken(eps, std::move(c.root));
    c.bound = eps;
    return c;
}

Certificate synthesize(const DiagTerm& f, const DiagTerm& g, const Rational& eps, std::size_t max_states) {
    Certificate c = synthesize(extract(f, g, max_states), eps);
    c.lhs = print(f);
    c.rhs = print(g);
    return c;
}

Certificate synthesize(const Expr& e, const Expr& f, const Rational& eps, std::size_t max_states) {
    Certificate c = synthesize(extract({e}, {f}, max_states), eps);
    c.lhs = print(e);
    c.rhs = print(f);
    return c;
}

std::size_t coupling_depth(const CertNode& n) {
    switch (n.kind) {
        case CertNode::Kind::Top:
        case CertNode::Kind::Bisim: return 1;
        case CertNode::Kind::Coupling: {
            std::size_t d = 1;
            for (const CertPair& p : n.pairs) d = std::max(d, 1 + (p.child.empty() ? 1 : coupling_depth(p.child[0])));
            return d;
        }
        default: {
            std::size_t d = 0;
            for (const CertNode& c : n.children) d = std::max(d, coupling_depth(c));
            return d;
        }
    }
}

}  // namespace chartdist
