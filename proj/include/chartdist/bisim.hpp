#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "chartdist/chart.hpp"

namespace chartdist {

/// Disjoint cover of the states 0..n-1; block ids are dense and numbered in
/// order of their smallest member.
struct Partition {
    std::vector<std::size_t> block_of;
    std::size_t block_count = 0;

    bool same_block(StateId x, StateId y) const { return block_of[x] == block_of[y]; }
    std::vector<std::vector<StateId>> blocks() const;
    bool operator==(const Partition&) const = default;
};

/// The total relation ~(0).
Partition total_partition(std::size_t states);

/// ~(n+1) computed from ~(n): equal outputs, and every a-move matched by an
/// a-move into the same ~(n) block, both ways.
Partition next_stratum(const Prechart& p, const Partition& level_n);

/// ~(0), ~(1), ... up to and including the first repeated partition, which
/// equals bisimilarity.
std::vector<Partition> stratification_chain(const Prechart& p);

/// Greatest bisimulation, by partition refinement starting from the
/// partition by output sets.
Partition bisimilarity(const Prechart& p);

using Relation = std::vector<std::pair<StateId, StateId>>;

/// Checks both clauses of strong bisimulation for every pair in `r`.
bool is_bisimulation(const Prechart& p1, const Prechart& p2, const Relation& r);

/// Largest n with s1 ~(n) s2; nullopt stands for infinity (bisimilar).
using Level = std::optional<unsigned>;

struct BisimResult {
    bool bisimilar = false;
    /// When bisimilar: a bisimulation between c1 and c2 relating the starts.
    Relation witness;
    /// When not bisimilar: the least n with not (s1 ~(n) s2).
    unsigned distinguishing_level = 0;
};

BisimResult bisimilar(const Chart& c1, const Chart& c2);

Level stratified_level(const Chart& c1, const Chart& c2);
/// Same, for two states of one prechart.
Level stratified_level(const Prechart& p, StateId x, StateId y);

struct Quotient {
    Prechart prechart;
    /// map[q] is the class of q; its graph is a bisimulation.
    std::vector<StateId> map;
};

Quotient quotient(const Prechart& p);

}  // namespace chartdist
