#include "chartdist/metric.hpp"

#include <algorithm>

#include "chartdist/errors.hpp"

namespace chartdist {

DistTable::DistTable(std::size_t states, Dist fill) : n_(states), cells_(states * states, fill) {
    for (StateId q = 0; q < n_; ++q) cells_[q * n_ + q] = Dist(0);
}

DistTable DistTable::top(std::size_t states) { return DistTable(states, Dist(1)); }

void DistTable::set(StateId x, StateId y, const Dist& d) {
    cells_[x * n_ + y] = d;
    cells_[y * n_ + x] = d;
}

bool DistTable::below(const DistTable& other) const {
    if (n_ != other.n_) return false;
    for (std::size_t i = 0; i < cells_.size(); ++i)
        if (cells_[i] > other.cells_[i]) return false;
    return true;
}

bool is_pseudometric(const DistTable& d) {
    const std::size_t n = d.size();
    for (StateId x = 0; x < n; ++x) {
        if (!d.at(x, x).is_zero()) return false;
        for (StateId y = 0; y < n; ++y) {
            if (d.at(x, y) != d.at(y, x)) return false;
            if (d.at(x, y) < Dist(0) || d.at(x, y) > Dist(1)) return false;
            for (StateId z = 0; z < n; ++z)
                if (d.at(x, z) > d.at(x, y) + d.at(y, z)) return false;
        }
    }
    return true;
}

Dist lift_edge(const DistTable& d, const Move& u, const Move& w) {
    if (u.is_act() && w.is_act() && u.letter == w.letter) return Dist(1, 2) * d.at(u.target, w.target);
    if (u == w) return Dist(0);
    return Dist(1);
}

Dist hausdorff(const MoveDistance& d, std::span<const Move> a, std::span<const Move> b) {
    auto directed = [&](std::span<const Move> from, std::span<const Move> to, bool flip) {
        Dist sup(0);
        for (const Move& x : from) {
            Dist inf(1);
            for (const Move& y : to) inf = std::min(inf, flip ? d(y, x) : d(x, y));
            sup = std::max(sup, inf);
        }
        return sup;
    };
    return std::max(directed(a, b, false), directed(b, a, true));
}

DistTable phi(const Prechart& p, const DistTable& d) {
    const std::size_t n = p.size();
    std::vector<std::vector<Move>> beta(n);
    for (StateId q = 0; q < n; ++q) beta[q] = p.moves(q);
    MoveDistance lifted = [&d](const Move& u, const Move& w) { return lift_edge(d, u, w); };
    DistTable result(n);
    for (StateId x = 0; x < n; ++x)
        for (StateId y = x + 1; y < n; ++y) result.set(x, y, hausdorff(lifted, beta[x], beta[y]));
    return result;
}

std::vector<DistTable> kleene_approximants(const Prechart& p, std::size_t k) {
    std::vector<DistTable> chain{DistTable::top(p.size())};
    for (std::size_t i = 0; i < k; ++i) chain.push_back(phi(p, chain.back()));
    return chain;
}

KleeneResult bd_kleene_detailed(const Prechart& p) {
    Quotient q = quotient(p);
    const std::size_t m = q.prechart.size();
    const std::size_t cap = m * m + 1;
    DistTable current = DistTable::top(m);
    std::size_t iterations = 0;
    while (true) {
        DistTable next = phi(q.prechart, current);
        ++iterations;
        if (next == current) break;
        if (iterations > cap) throw BudgetError("Kleene iteration did not stabilise within |Q|^2+1 steps");
        current = std::move(next);
    }
    DistTable table(p.size());
    for (StateId x = 0; x < p.size(); ++x)
        for (StateId y = x + 1; y < p.size(); ++y) table.set(x, y, current.at(q.map[x], q.map[y]));
    return KleeneResult{std::move(table), iterations, m};
}

DistTable bd_kleene(const Prechart& p) { return bd_kleene_detailed(p).table; }

Dist distance_from_level(const Level& level) {
    if (!level) return Dist(0);
    return Dist::pow2_neg(*level);
}

Dist bd_stratified(const Chart& c1, const Chart& c2) { return distance_from_level(stratified_level(c1, c2)); }

}  // namespace chartdist
