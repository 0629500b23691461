#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chartdist/chart.hpp"
#include "chartdist/types.hpp"

namespace chartdist {

enum class ExprKind { Zero, Var, Prefix, Sum, Mu };

/// Immutable expression of Milner's algebra of regular behaviours:
///   e ::= 0 | v_i | a.e | e + e | mu v_i. e
/// Nodes are shared, so copying an Expr is cheap and substitution reuses
/// every subtree it does not touch.
class Expr {
public:
    static Expr zero();
    static Expr var(VarIndex index);
    static Expr prefix(Letter letter, Expr body);
    static Expr sum(Expr left, Expr right);
    static Expr mu(VarIndex binder, Expr body);

    ExprKind kind() const;
    Letter letter() const;           // Prefix only
    VarIndex index() const;          // Var index or Mu binder
    const Expr& body() const;        // Prefix / Mu
    const Expr& left() const;        // Sum
    const Expr& right() const;       // Sum

    /// Sorted, duplicate-free.
    const std::vector<VarIndex>& free_vars() const;
    bool has_free(VarIndex v) const;
    /// Largest variable index occurring anywhere (free or bound); 0 if none.
    VarIndex max_var() const;
    std::size_t size() const;

    /// Structural (not alpha) equality.
    bool operator==(const Expr& other) const;

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

struct Expr::Node {
    ExprKind kind = ExprKind::Zero;
    Letter letter = 0;
    VarIndex index = 0;
    std::optional<Expr> a;
    std::optional<Expr> b;
    std::vector<VarIndex> fv;
    VarIndex max_var = 0;
    std::size_t size = 1;
};

/// Parses the ASCII grammar
///   e ::= '0' | VAR | LETTER '.' e | e '+' e | 'mu' VAR '.' e | '(' e ')'
/// Prefix and mu bind tighter than '+'. When `alphabet` is given, letters
/// outside it are rejected.
Expr parse_expr(std::string_view text, const std::optional<Alphabet>& alphabet = std::nullopt);

std::string print(const Expr& e);

/// Letters occurring in e.
Alphabet letters_of(const Expr& e);

/// Canonical representative of the alpha-equivalence class: the binder at
/// nesting depth d is renamed to v_{F+d}, where F is the largest free
/// variable index of e.
Expr alpha_normalize(const Expr& e);
bool alpha_equivalent(const Expr& a, const Expr& b);

using Bindings = std::vector<std::pair<VarIndex, Expr>>;

/// Capture-avoiding simultaneous substitution e[f1/v1, ..., fk/vk]. Binders
/// that would capture are renamed to the smallest index that is not a
/// substituted variable and not free in the body or in any substituted
/// expression.
Expr substitute(const Expr& e, const Bindings& bindings);

struct StepResult {
    std::vector<std::pair<Letter, Expr>> transitions;  // duplicate-free
    std::vector<VarIndex> outputs;                     // sorted
};

/// One-step derivatives and immediate outputs.
StepResult step(const Expr& e);

struct ExpandedChart {
    Chart chart;
    /// exprs[q] is the expression reached at state q; exprs[chart.start] == e.
    std::vector<Expr> exprs;
    /// print(alpha_normalize(exprs[q])); unique per state.
    std::vector<std::string> names;
};

inline constexpr std::size_t kDefaultMaxStates = 10000;

/// Breadth-first closure of `step` from e, identifying alpha-equivalent
/// derivatives. Throws BudgetError past `max_states` states.
ExpandedChart expand(const Expr& e, std::size_t max_states = kDefaultMaxStates);

}  // namespace chartdist
