#include "chartdist/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "chartdist/errors.hpp"

namespace chartdist {

struct DiagTerm::Node {
    DiagKind kind = DiagKind::Copy;
    Letter letter = 0;
    WireWord w1;
    WireWord w2;
    std::optional<DiagTerm> a;
    std::optional<DiagTerm> b;
};

DiagTerm DiagTerm::leaf(DiagKind k) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    return DiagTerm(std::move(n));
}

DiagTerm DiagTerm::copy() { return leaf(DiagKind::Copy); }
DiagTerm DiagTerm::del() { return leaf(DiagKind::Del); }
DiagTerm DiagTerm::merge() { return leaf(DiagKind::Merge); }
DiagTerm DiagTerm::gen() { return leaf(DiagKind::Gen); }
DiagTerm DiagTerm::cap() { return leaf(DiagKind::Cap); }
DiagTerm DiagTerm::cup() { return leaf(DiagKind::Cup); }

DiagTerm DiagTerm::act(Letter a) {
    Node n;
    n.kind = DiagKind::Act;
    n.letter = a;
    return DiagTerm(std::make_shared<const Node>(std::move(n)));
}

DiagTerm DiagTerm::id(WireWord w) {
    Node n;
    n.kind = DiagKind::Id;
    n.w1 = std::move(w);
    return DiagTerm(std::make_shared<const Node>(std::move(n)));
}

DiagTerm DiagTerm::sym(WireWord v, WireWord w) {
    Node n;
    n.kind = DiagKind::Sym;
    n.w1 = std::move(v);
    n.w2 = std::move(w);
    return DiagTerm(std::make_shared<const Node>(std::move(n)));
}

DiagTerm DiagTerm::seq(DiagTerm f, DiagTerm g) {
    Node n;
    n.kind = DiagKind::Seq;
    n.a = std::move(f);
    n.b = std::move(g);
    return DiagTerm(std::make_shared<const Node>(std::move(n)));
}

DiagTerm DiagTerm::tensor(DiagTerm f, DiagTerm g) {
    Node n;
    n.kind = DiagKind::Tensor;
    n.a = std::move(f);
    n.b = std::move(g);
    return DiagTerm(std::make_shared<const Node>(std::move(n)));
}

DiagKind DiagTerm::kind() const { return node_->kind; }
Letter DiagTerm::letter() const { return node_->letter; }
const WireWord& DiagTerm::word() const { return node_->w1; }
const WireWord& DiagTerm::word2() const { return node_->w2; }
const DiagTerm& DiagTerm::left() const { return *node_->a; }
const DiagTerm& DiagTerm::right() const { return *node_->b; }

bool DiagTerm::operator==(const DiagTerm& other) const {
    if (node_ == other.node_) return true;
    const Node& x = *node_;
    const Node& y = *other.node_;
    if (x.kind != y.kind || x.letter != y.letter || x.w1 != y.w1 || x.w2 != y.w2) return false;
    if (x.a.has_value() != y.a.has_value()) return false;
    return !x.a || (*x.a == *y.a && *x.b == *y.b);
}

namespace {

// ---------------------------------------------------------------------------
// Parsing

class DiagParser {
public:
    DiagParser(std::string_view text, const std::optional<Alphabet>& alphabet) : text_(text), alphabet_(alphabet) {}

    DiagTerm parse() {
        DiagTerm t = parse_seq();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return t;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool at(char ch) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == ch;
    }

    void expect(char ch) {
        if (!at(ch)) {
            if (pos_ >= text_.size()) fail(std::string("expected '") + ch + "' but input ended");
            fail(std::string("expected '") + ch + "'");
        }
        ++pos_;
    }

    DiagTerm parse_seq() {
        DiagTerm t = parse_tensor();
        while (at(';')) {
            ++pos_;
            t = DiagTerm::seq(std::move(t), parse_tensor());
        }
        return t;
    }

    DiagTerm parse_tensor() {
        DiagTerm t = parse_atom();
        while (at('*')) {
            ++pos_;
            t = DiagTerm::tensor(std::move(t), parse_atom());
        }
        return t;
    }

    WireWord parse_wires() {
        WireWord w;
        while (at('>') || at('<')) w.push_back(text_[pos_++]);
        return w;
    }

    DiagTerm parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        if (text_[pos_] == '(') {
            ++pos_;
            DiagTerm t = parse_seq();
            expect(')');
            return t;
        }
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::islower(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        std::string_view word = text_.substr(start, pos_ - start);
        static const std::map<std::string_view, DiagTerm (*)()> plain{
            {"copy", &DiagTerm::copy}, {"del", &DiagTerm::del}, {"merge", &DiagTerm::merge},
            {"gen", &DiagTerm::gen},   {"cap", &DiagTerm::cap}, {"cup", &DiagTerm::cup}};
        if (auto it = plain.find(word); it != plain.end()) return it->second();
        if (word == "act") {
            expect('(');
            skip_ws();
            if (pos_ >= text_.size() || !std::islower(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == 'v')
                fail("expected an action letter");
            Letter a = text_[pos_];
            if (alphabet_ && !alphabet_->count(a)) fail("undeclared letter '" + std::string(1, a) + "'");
            ++pos_;
            expect(')');
            return DiagTerm::act(a);
        }
        if (word == "id") {
            expect('(');
            WireWord w = parse_wires();
            expect(')');
            return DiagTerm::id(std::move(w));
        }
        if (word == "sym") {
            expect('(');
            WireWord v = parse_wires();
            expect(',');
            WireWord w = parse_wires();
            expect(')');
            return DiagTerm::sym(std::move(v), std::move(w));
        }
        pos_ = start;
        if (word.empty()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        fail("unknown generator '" + std::string(word) + "'");
    }

    std::string_view text_;
    std::optional<Alphabet> alphabet_;
    std::size_t pos_ = 0;
};

void print_into(const DiagTerm& t, std::string& out, int context) {
    // context: 0 top/seq-left, 1 seq-right or tensor-left, 2 tensor-right
    switch (t.kind()) {
        case DiagKind::Copy: out += "copy"; return;
        case DiagKind::Del: out += "del"; return;
        case DiagKind::Merge: out += "merge"; return;
        case DiagKind::Gen: out += "gen"; return;
        case DiagKind::Cap: out += "cap"; return;
        case DiagKind::Cup: out += "cup"; return;
        case DiagKind::Act: out += "act(" + std::string(1, t.letter()) + ")"; return;
        case DiagKind::Id: out += "id(" + t.word() + ")"; return;
        case DiagKind::Sym: out += "sym(" + t.word() + "," + t.word2() + ")"; return;
        case DiagKind::Seq: {
            bool paren = context >= 1;
            if (paren) out += '(';
            print_into(t.left(), out, 0);
            out += ";";
            print_into(t.right(), out, 1);
            if (paren) out += ')';
            return;
        }
        case DiagKind::Tensor: {
            bool paren = context >= 2;
            if (paren) out += '(';
            print_into(t.left(), out, 1);
            out += "*";
            print_into(t.right(), out, 2);
            if (paren) out += ')';
            return;
        }
    }
}

std::string show_word(const WireWord& w) { return w.empty() ? "(empty)" : "'" + w + "'"; }

DiagType typecheck_at(const DiagTerm& t, const std::string& path) {
    switch (t.kind()) {
        case DiagKind::Copy: return {">", ">>"};
        case DiagKind::Del: return {">", ""};
        case DiagKind::Merge: return {">>", ">"};
        case DiagKind::Gen: return {"", ">"};
        case DiagKind::Cap: return {"<>", ""};
        case DiagKind::Cup: return {"", "><"};
        case DiagKind::Act: return {">", ">"};
        case DiagKind::Id: return {t.word(), t.word()};
        case DiagKind::Sym: return {t.word() + t.word2(), t.word2() + t.word()};
        case DiagKind::Seq: {
            DiagType l = typecheck_at(t.left(), path + "L");
            DiagType r = typecheck_at(t.right(), path + "R");
            if (l.cod != r.dom)
                throw TypeError("interface mismatch at " + (path.empty() ? std::string("root") : "path " + path) +
                                ": left codomain " + show_word(l.cod) + " vs right domain " + show_word(r.dom));
            return {l.dom, r.cod};
        }
        case DiagKind::Tensor: {
            DiagType l = typecheck_at(t.left(), path + "L");
            DiagType r = typecheck_at(t.right(), path + "R");
            return {l.dom + r.dom, l.cod + r.cod};
        }
    }
    throw std::logic_error("unreachable");
}

IntMorphism interpret_checked(const DiagTerm& t) {
    switch (t.kind()) {
        case DiagKind::Copy: return embed_N(rb_make(1, 2, {Expr::sum(Expr::var(1), Expr::var(2))}));
        case DiagKind::Del: return embed_N(rb_make(1, 0, {Expr::zero()}));
        case DiagKind::Merge: return embed_N(rb_codiagonal(1));
        case DiagKind::Gen: return embed_N(rb_empty(1));
        case DiagKind::Cap: return int_counit(IntObject{1, 0});
        case DiagKind::Cup: return int_unit(IntObject{1, 0});
        case DiagKind::Act: return embed_N(rb_make(1, 1, {Expr::prefix(t.letter(), Expr::var(1))}));
        case DiagKind::Id: return int_identity(int_object(t.word()));
        case DiagKind::Sym: return int_symmetry(int_object(t.word()), int_object(t.word2()));
        case DiagKind::Seq: return int_compose(interpret_checked(t.left()), interpret_checked(t.right()));
        case DiagKind::Tensor: return int_tensor(interpret_checked(t.left()), interpret_checked(t.right()));
    }
    throw std::logic_error("unreachable");
}

DiagTerm tensor_all(const std::vector<DiagTerm>& parts) {
    DiagTerm t = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) t = DiagTerm::tensor(t, parts[i]);
    return t;
}

/// id(v1) * t * id(v2), omitting empty identities.
DiagTerm whisker(const WireWord& v1, const DiagTerm& t, const WireWord& v2) {
    std::vector<DiagTerm> parts;
    if (!v1.empty()) parts.push_back(DiagTerm::id(v1));
    parts.push_back(t);
    if (!v2.empty()) parts.push_back(DiagTerm::id(v2));
    return tensor_all(parts);
}

void collect_letters(const DiagTerm& t, Alphabet& out) {
    if (t.kind() == DiagKind::Act) out.insert(t.letter());
    if (t.kind() == DiagKind::Seq || t.kind() == DiagKind::Tensor) {
        collect_letters(t.left(), out);
        collect_letters(t.right(), out);
    }
}

}  // namespace

DiagTerm parse_diagram(std::string_view text, const std::optional<Alphabet>& alphabet) {
    return DiagParser(text, alphabet).parse();
}

std::string print(const DiagTerm& t) {
    std::string out;
    print_into(t, out, 0);
    return out;
}

Alphabet letters_of(const DiagTerm& t) {
    Alphabet a;
    collect_letters(t, a);
    return a;
}

DiagType typecheck(const DiagTerm& t) { return typecheck_at(t, ""); }

IntObject int_object(const WireWord& w) {
    IntObject o;
    for (char c : w) (c == '>' ? o.plus : o.minus)++;
    return o;
}

IntMorphism interpret(const DiagTerm& t) {
    typecheck(t);
    return interpret_checked(t);
}

DiagTerm bend(const DiagTerm& t) {
    DiagTerm cur = t;
    DiagType ty = typecheck(t);
    while (true) {
        if (auto k = ty.dom.find('<'); k != WireWord::npos) {
            // t : v1 < v2 -> w   becomes   v1 v2 -> w >
            WireWord v1 = ty.dom.substr(0, k), v2 = ty.dom.substr(k + 1);
            DiagTerm open = whisker(v1, DiagTerm::cup(), v2);
            DiagTerm swap = whisker(v1, DiagTerm::sym(">", "<" + v2), "");
            cur = DiagTerm::seq(DiagTerm::seq(open, swap), DiagTerm::tensor(cur, DiagTerm::id(">")));
            ty = DiagType{v1 + v2, ty.cod + ">"};
            continue;
        }
        if (auto k = ty.cod.find('<'); k != WireWord::npos) {
            // t : v -> w1 < w2   becomes   v > -> w1 w2
            WireWord w1 = ty.cod.substr(0, k), w2 = ty.cod.substr(k + 1);
            DiagTerm swap = whisker(w1 + "<", DiagTerm::sym(w2, ">"), "");
            DiagTerm close = whisker(w1, DiagTerm::cap(), w2);
            cur = DiagTerm::seq(DiagTerm::seq(DiagTerm::tensor(cur, DiagTerm::id(">")), swap), close);
            ty = DiagType{ty.dom + ">", w1 + w2};
            continue;
        }
        return cur;
    }
}

DiagTerm component(const DiagTerm& t, std::size_t i) {
    DiagType ty = typecheck(t);
    if (ty.dom.find('<') != WireWord::npos || ty.cod.find('<') != WireWord::npos)
        throw TypeError("component needs a diagram with rightward wires only");
    const std::size_t m = ty.dom.size();
    if (i < 1 || i > m) throw std::out_of_range("component " + std::to_string(i) + " of a diagram with " + std::to_string(m) + " inputs");
    if (m == 1) return t;
    std::vector<DiagTerm> parts;
    for (std::size_t k = 1; k <= m; ++k) parts.push_back(k == i ? DiagTerm::id(">") : DiagTerm::gen());
    return DiagTerm::seq(tensor_all(parts), t);
}

RbMorphism compile(const DiagTerm& t) { return interpret(bend(t)).payload; }

Dist diagram_distance(const DiagTerm& f, const DiagTerm& g) {
    DiagType tf = typecheck(f);
    DiagType tg = typecheck(g);
    if (tf != tg)
        throw TypeError("diagrams have different types: " + show_word(tf.dom) + " -> " + show_word(tf.cod) + " vs " +
                        show_word(tg.dom) + " -> " + show_word(tg.cod));
    return homset_distance(compile(f), compile(g));
}

const std::vector<Axiom>& axiom_catalog() {
    static const std::vector<Axiom> catalog = [] {
        const std::vector<std::tuple<const char*, const char*, const char*>> text{
            {"A1", "(cup*id(>));(id(>)*cap)", "id(>)"},
            {"A2", "(id(<)*cup);(cap*id(<))", "id(<)"},
            {"B1", "copy;(copy*id(>))", "copy;(id(>)*copy)"},
            {"B2", "copy;(id(>)*del)", "id(>)"},
            {"B3", "copy;sym(>,>)", "copy"},
            {"B4", "(merge*id(>));merge", "(id(>)*merge);merge"},
            {"B5", "(id(>)*gen);merge", "id(>)"},
            {"B6", "sym(>,>);merge", "merge"},
            {"B7", "merge;copy", "(copy*copy);(id(>)*sym(>,>)*id(>));(merge*merge)"},
            {"B8", "merge;del", "del*del"},
            {"B9", "gen;copy", "gen*gen"},
            {"B10", "copy;merge", "id(>)"},
            {"B11", "(id(>)*cup);((merge;copy)*id(<));(id(>)*sym(>,<));(id(>)*cap)", "id(>)"},
            {"C1", "merge;act(a)", "(act(a)*act(a));merge"},
            {"C1-copy", "act(a);copy", "copy;(act(a)*act(a))"},
        };
        std::vector<Axiom> out;
        for (auto [name, l, r] : text) out.push_back(Axiom{name, parse_diagram(l), parse_diagram(r)});
        return out;
    }();
    return catalog;
}

bool check_axiom(const std::string& name) {
    for (const Axiom& ax : axiom_catalog()) {
        if (ax.name != name) continue;
        if (typecheck(ax.lhs) != typecheck(ax.rhs)) return false;
        return rb_bisimilar(interpret(ax.lhs).payload, interpret(ax.rhs).payload);
    }
    throw std::invalid_argument("unknown axiom '" + name + "'");
}

std::string diagram_to_dot(const DiagTerm& t) {
    std::ostringstream out;
    out << "digraph term {\n  node [shape=box, fontname=monospace];\n";
    std::size_t next = 0;
    auto walk = [&](auto&& self, const DiagTerm& u) -> std::size_t {
        std::size_t id = next++;
        std::string label;
        switch (u.kind()) {
            case DiagKind::Seq: label = ";"; break;
            case DiagKind::Tensor: label = "*"; break;
            default: label = print(u);
        }
        out << "  n" << id << " [label=\"" << label << "\"";
        if (u.kind() == DiagKind::Seq || u.kind() == DiagKind::Tensor) out << ", shape=circle";
        out << "];\n";
        if (u.kind() == DiagKind::Seq || u.kind() == DiagKind::Tensor) {
            std::size_t l = self(self, u.left());
            std::size_t r = self(self, u.right());
            out << "  n" << id << " -> n" << l << ";\n  n" << id << " -> n" << r << ";\n";
        }
        return id;
    };
    walk(walk, t);
    out << "}\n";
    return out.str();
}

}  // namespace chartdist
