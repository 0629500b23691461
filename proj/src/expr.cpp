#include "chartdist/expr.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <unordered_map>

#include "chartdist/errors.hpp"

namespace chartdist {

// ---------------------------------------------------------------------------
// Construction

namespace {

std::vector<VarIndex> merge_sorted(const std::vector<VarIndex>& a, const std::vector<VarIndex>& b) {
    std::vector<VarIndex> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace

Expr Expr::zero() {
    static const Expr z(std::make_shared<const Node>());
    return z;
}

Expr Expr::var(VarIndex index) {
    if (index == 0) throw std::invalid_argument("variable indices start at 1");
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Var;
    n->index = index;
    n->fv = {index};
    n->max_var = index;
    return Expr(std::move(n));
}

Expr Expr::prefix(Letter letter, Expr body) {
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Prefix;
    n->letter = letter;
    n->fv = body.free_vars();
    n->max_var = body.max_var();
    n->size = body.size() + 1;
    n->a = std::move(body);
    return Expr(std::move(n));
}

Expr Expr::sum(Expr left, Expr right) {
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Sum;
    n->fv = merge_sorted(left.free_vars(), right.free_vars());
    n->max_var = std::max(left.max_var(), right.max_var());
    n->size = left.size() + right.size() + 1;
    n->a = std::move(left);
    n->b = std::move(right);
    return Expr(std::move(n));
}

Expr Expr::mu(VarIndex binder, Expr body) {
    if (binder == 0) throw std::invalid_argument("variable indices start at 1");
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Mu;
    n->index = binder;
    n->fv = body.free_vars();
    n->fv.erase(std::remove(n->fv.begin(), n->fv.end(), binder), n->fv.end());
    n->max_var = std::max(binder, body.max_var());
    n->size = body.size() + 1;
    n->a = std::move(body);
    return Expr(std::move(n));
}

ExprKind Expr::kind() const { return node_->kind; }
Letter Expr::letter() const { return node_->letter; }
VarIndex Expr::index() const { return node_->index; }
const Expr& Expr::body() const { return *node_->a; }
const Expr& Expr::left() const { return *node_->a; }
const Expr& Expr::right() const { return *node_->b; }
const std::vector<VarIndex>& Expr::free_vars() const { return node_->fv; }
VarIndex Expr::max_var() const { return node_->max_var; }
std::size_t Expr::size() const { return node_->size; }

bool Expr::has_free(VarIndex v) const { return std::binary_search(node_->fv.begin(), node_->fv.end(), v); }

bool Expr::operator==(const Expr& other) const {
    if (node_ == other.node_) return true;
    const Node& x = *node_;
    const Node& y = *other.node_;
    if (x.kind != y.kind || x.size != y.size || x.letter != y.letter || x.index != y.index) return false;
    switch (x.kind) {
        case ExprKind::Zero:
        case ExprKind::Var: return true;
        case ExprKind::Prefix:
        case ExprKind::Mu: return *x.a == *y.a;
        case ExprKind::Sum: return *x.a == *y.a && *x.b == *y.b;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class ExprParser {
public:
    ExprParser(std::string_view text, const std::optional<Alphabet>& alphabet) : text_(text), alphabet_(alphabet) {}

    Expr parse() {
        Expr e = parse_sum();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return e;
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

    Expr parse_sum() {
        Expr e = parse_term();
        while (at('+')) {
            ++pos_;
            e = Expr::sum(std::move(e), parse_term());
        }
        return e;
    }

    VarIndex parse_var() {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != 'v') fail("expected a variable");
        std::size_t start = pos_++;
        std::uint64_t v = 0;
        std::size_t digits = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + static_cast<unsigned>(text_[pos_] - '0');
            if (v > 1'000'000) {
                pos_ = start;
                fail("variable index too large");
            }
            ++pos_;
            ++digits;
        }
        if (digits == 0 || v == 0) {
            pos_ = start;
            fail("malformed variable token");
        }
        return static_cast<VarIndex>(v);
    }

    Expr parse_term() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char ch = text_[pos_];
        if (ch == '0') {
            ++pos_;
            return Expr::zero();
        }
        if (ch == '(') {
            ++pos_;
            Expr e = parse_sum();
            expect(')');
            return e;
        }
        if (ch == 'v') return Expr::var(parse_var());
        if (ch == 'm' && pos_ + 1 < text_.size() && text_[pos_ + 1] == 'u') {
            pos_ += 2;
            VarIndex binder = parse_var();
            expect('.');
            return Expr::mu(binder, parse_term());
        }
        if (ch >= 'a' && ch <= 'z') {
            if (alphabet_ && !alphabet_->count(ch)) fail("undeclared letter '" + std::string(1, ch) + "'");
            ++pos_;
            expect('.');
            return Expr::prefix(ch, parse_term());
        }
        fail("unexpected '" + std::string(1, ch) + "'");
    }

    std::string_view text_;
    const std::optional<Alphabet>& alphabet_;
    std::size_t pos_ = 0;
};

void print_to(const Expr& e, std::string& out, bool sum_needs_parens) {
    switch (e.kind()) {
        case ExprKind::Zero: out += '0'; return;
        case ExprKind::Var:
            out += 'v';
            out += std::to_string(e.index());
            return;
        case ExprKind::Prefix:
            out += e.letter();
            out += '.';
            print_to(e.body(), out, true);
            return;
        case ExprKind::Mu:
            out += "mu v";
            out += std::to_string(e.index());
            out += '.';
            print_to(e.body(), out, true);
            return;
        case ExprKind::Sum:
            if (sum_needs_parens) out += '(';
            print_to(e.left(), out, false);
            out += " + ";
            print_to(e.right(), out, true);
            if (sum_needs_parens) out += ')';
            return;
    }
}

void collect_letters(const Expr& e, Alphabet& out) {
    switch (e.kind()) {
        case ExprKind::Zero:
        case ExprKind::Var: return;
        case ExprKind::Prefix:
            out.insert(e.letter());
            collect_letters(e.body(), out);
            return;
        case ExprKind::Mu: collect_letters(e.body(), out); return;
        case ExprKind::Sum:
            collect_letters(e.left(), out);
            collect_letters(e.right(), out);
            return;
    }
}

}  // namespace

Expr parse_expr(std::string_view text, const std::optional<Alphabet>& alphabet) {
    return ExprParser(text, alphabet).parse();
}

std::string print(const Expr& e) {
    std::string out;
    print_to(e, out, false);
    return out;
}

Alphabet letters_of(const Expr& e) {
    Alphabet out;
    collect_letters(e, out);
    return out;
}

// ---------------------------------------------------------------------------
// Alpha normal form

namespace {

Expr alpha_rec(const Expr& e, std::vector<std::pair<VarIndex, VarIndex>>& env, VarIndex base) {
    switch (e.kind()) {
        case ExprKind::Zero: return e;
        case ExprKind::Var:
            for (auto it = env.rbegin(); it != env.rend(); ++it)
                if (it->first == e.index()) return Expr::var(it->second);
            return e;
        case ExprKind::Prefix: return Expr::prefix(e.letter(), alpha_rec(e.body(), env, base));
        case ExprKind::Sum: return Expr::sum(alpha_rec(e.left(), env, base), alpha_rec(e.right(), env, base));
        case ExprKind::Mu: {
            VarIndex fresh = base + static_cast<VarIndex>(env.size()) + 1;
            env.emplace_back(e.index(), fresh);
            Expr body = alpha_rec(e.body(), env, base);
            env.pop_back();
            return Expr::mu(fresh, std::move(body));
        }
    }
    return e;
}

}  // namespace

Expr alpha_normalize(const Expr& e) {
    VarIndex base = e.free_vars().empty() ? 0 : e.free_vars().back();
    std::vector<std::pair<VarIndex, VarIndex>> env;
    return alpha_rec(e, env, base);
}

bool alpha_equivalent(const Expr& a, const Expr& b) {
    if (a.free_vars() != b.free_vars()) return false;
    return alpha_normalize(a) == alpha_normalize(b);
}

// ---------------------------------------------------------------------------
// Substitution

namespace {

bool touches(const Expr& e, const Bindings& bindings) {
    for (const auto& [v, f] : bindings)
        if (e.has_free(v)) return true;
    return false;
}

Expr subst_rec(const Expr& e, const Bindings& bindings) {
    if (!touches(e, bindings)) return e;
    switch (e.kind()) {
        case ExprKind::Zero: return e;
        case ExprKind::Var:
            for (const auto& [v, f] : bindings)
                if (v == e.index()) return f;
            return e;
        case ExprKind::Prefix: return Expr::prefix(e.letter(), subst_rec(e.body(), bindings));
        case ExprKind::Sum: return Expr::sum(subst_rec(e.left(), bindings), subst_rec(e.right(), bindings));
        case ExprKind::Mu: {
            const VarIndex w = e.index();
            // Only bindings for variables free in the mu term matter below it.
            Bindings relevant;
            for (const auto& b : bindings)
                if (b.first != w && e.body().has_free(b.first)) relevant.push_back(b);
            bool captures = false;
            for (const auto& [v, f] : relevant)
                if (f.has_free(w)) captures = true;
            if (!captures) return Expr::mu(w, subst_rec(e.body(), relevant));

            auto forbidden = [&](VarIndex z) {
                if (e.body().has_free(z)) return true;
                for (const auto& [v, f] : relevant)
                    if (v == z || f.has_free(z)) return true;
                return false;
            };
            VarIndex z = 1;
            while (forbidden(z)) ++z;
            relevant.emplace_back(w, Expr::var(z));
            return Expr::mu(z, subst_rec(e.body(), relevant));
        }
    }
    return e;
}

}  // namespace

Expr substitute(const Expr& e, const Bindings& bindings) {
    for (std::size_t i = 0; i < bindings.size(); ++i)
        for (std::size_t j = i + 1; j < bindings.size(); ++j)
            if (bindings[i].first == bindings[j].first)
                throw std::invalid_argument("substitute: repeated variable v" + std::to_string(bindings[i].first));
    return subst_rec(e, bindings);
}

// ---------------------------------------------------------------------------
// Operational semantics

namespace {

void add_transition(StepResult& r, Letter a, Expr target) {
    for (const auto& [b, t] : r.transitions)
        if (b == a && t == target) return;
    r.transitions.emplace_back(a, std::move(target));
}

void add_output(StepResult& r, VarIndex v) {
    auto it = std::lower_bound(r.outputs.begin(), r.outputs.end(), v);
    if (it == r.outputs.end() || *it != v) r.outputs.insert(it, v);
}

}  // namespace

StepResult step(const Expr& e) {
    StepResult r;
    switch (e.kind()) {
        case ExprKind::Zero: break;
        case ExprKind::Var: r.outputs.push_back(e.index()); break;
        case ExprKind::Prefix: r.transitions.emplace_back(e.letter(), e.body()); break;
        case ExprKind::Sum: {
            r = step(e.left());
            StepResult rr = step(e.right());
            for (auto& [a, t] : rr.transitions) add_transition(r, a, std::move(t));
            for (VarIndex v : rr.outputs) add_output(r, v);
            break;
        }
        case ExprKind::Mu: {
            StepResult inner = step(e.body());
            const Bindings unfold{{e.index(), e}};
            for (auto& [a, t] : inner.transitions) add_transition(r, a, substitute(t, unfold));
            for (VarIndex v : inner.outputs)
                if (v != e.index()) r.outputs.push_back(v);
            break;
        }
    }
    return r;
}

ExpandedChart expand(const Expr& e, std::size_t max_states) {
    ExpandedChart result;
    std::unordered_map<std::string, StateId> index;
    auto intern = [&](const Expr& x) -> std::pair<StateId, bool> {
        std::string key = print(alpha_normalize(x));
        auto [it, inserted] = index.emplace(key, result.exprs.size());
        if (inserted) {
            if (result.exprs.size() >= max_states)
                throw BudgetError("expansion exceeded " + std::to_string(max_states) + " states");
            result.exprs.push_back(x);
            result.names.push_back(std::move(key));
            result.chart.prechart.add_state();
        }
        return {it->second, inserted};
    };

    std::deque<StateId> queue;
    result.chart.start = intern(e).first;
    queue.push_back(result.chart.start);
    while (!queue.empty()) {
        StateId q = queue.front();
        queue.pop_front();
        StepResult r = step(result.exprs[q]);
        for (const auto& [a, t] : r.transitions) {
            auto [id, fresh] = intern(t);
            if (fresh) queue.push_back(id);
            result.chart.prechart.add_transition(q, a, id);
        }
        for (VarIndex v : r.outputs) result.chart.prechart.add_output(q, v);
    }
    return result;
}

}  // namespace chartdist
