#pragma once

#include <functional>
#include <span>
#include <vector>

#include "chartdist/bisim.hpp"
#include "chartdist/chart.hpp"
#include "chartdist/rational.hpp"

namespace chartdist {

/// Exact distance in [0,1].
using Dist = Rational;

/// Symmetric state-by-state distance table over a finite prechart.
class DistTable {
public:
    DistTable() = default;
    explicit DistTable(std::size_t states, Dist fill = Dist(0));

    /// Discrete pseudometric: 0 on the diagonal, 1 elsewhere.
    static DistTable top(std::size_t states);

    std::size_t size() const { return n_; }
    const Dist& at(StateId x, StateId y) const { return cells_[x * n_ + y]; }
    void set(StateId x, StateId y, const Dist& d);

    /// Pointwise order d <= other.
    bool below(const DistTable& other) const;

    bool operator==(const DistTable&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<Dist> cells_;
};

/// Reflexivity, symmetry and the triangle inequality, checked exhaustively.
bool is_pseudometric(const DistTable& d);

/// Edge lifting: 1/2 d(x,y) for same-letter transitions, 0 for equal moves,
/// 1 otherwise.
Dist lift_edge(const DistTable& d, const Move& u, const Move& w);

using MoveDistance = std::function<Dist(const Move&, const Move&)>;

/// Hausdorff distance between finite move sets; sup over the empty set is
/// 0 and inf over the empty set is 1.
Dist hausdorff(const MoveDistance& d, std::span<const Move> a, std::span<const Move> b);

/// One application of the behavioural operator:
/// phi(d)(x,y) = H(lift(d))(beta(x), beta(y)).
DistTable phi(const Prechart& p, const DistTable& d);

/// phi^(0) = top, ..., phi^(k), on p as given (no quotient).
std::vector<DistTable> kleene_approximants(const Prechart& p, std::size_t k);

struct KleeneResult {
    DistTable table;           // on the original states
    std::size_t iterations;    // phi applications on the quotient until stable
    std::size_t quotient_size; // states of the bisimilarity quotient
};

/// Least fixpoint of phi: quotient by bisimilarity, iterate from top until
/// stable, pull back along the quotient map. Throws BudgetError if the
/// iteration does not stabilise within |Q|^2 + 1 steps on the quotient.
KleeneResult bd_kleene_detailed(const Prechart& p);
DistTable bd_kleene(const Prechart& p);

/// 0 for infinity, 2^-n otherwise.
Dist distance_from_level(const Level& level);

/// Closed form: 0 if the starts are bisimilar, else 2^-n for the largest
/// n with s1 ~(n) s2.
Dist bd_stratified(const Chart& c1, const Chart& c2);

}  // namespace chartdist
