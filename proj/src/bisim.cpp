#include "chartdist/bisim.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace chartdist {

namespace {

using Signature = std::pair<std::vector<VarIndex>, std::vector<std::pair<Letter, std::size_t>>>;

// Moves of q with targets replaced by their blocks.
std::vector<std::pair<Letter, std::size_t>> abstract_moves(const Prechart& p, StateId q, const Partition& part) {
    std::vector<std::pair<Letter, std::size_t>> out;
    for (auto [a, t] : p.transitions(q)) out.emplace_back(a, part.block_of[t]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

template <typename Key>
Partition number_blocks(const std::vector<Key>& keys) {
    Partition result;
    result.block_of.resize(keys.size());
    std::map<Key, std::size_t> ids;
    for (std::size_t q = 0; q < keys.size(); ++q) {
        auto [it, inserted] = ids.emplace(keys[q], ids.size());
        result.block_of[q] = it->second;
    }
    result.block_count = ids.size();
    return result;
}

}  // namespace

std::vector<std::vector<StateId>> Partition::blocks() const {
    std::vector<std::vector<StateId>> out(block_count);
    for (StateId q = 0; q < block_of.size(); ++q) out[block_of[q]].push_back(q);
    return out;
}

Partition total_partition(std::size_t states) {
    Partition p;
    p.block_of.assign(states, 0);
    p.block_count = states == 0 ? 0 : 1;
    return p;
}

Partition next_stratum(const Prechart& p, const Partition& level_n) {
    std::vector<Signature> keys(p.size());
    for (StateId q = 0; q < p.size(); ++q) keys[q] = {p.outputs(q), abstract_moves(p, q, level_n)};
    return number_blocks(keys);
}

std::vector<Partition> stratification_chain(const Prechart& p) {
    std::vector<Partition> chain{total_partition(p.size())};
    while (true) {
        Partition next = next_stratum(p, chain.back());
        bool stable = next == chain.back();
        chain.push_back(std::move(next));
        if (stable) return chain;
    }
}

Partition bisimilarity(const Prechart& p) {
    std::vector<std::vector<VarIndex>> by_outputs(p.size());
    for (StateId q = 0; q < p.size(); ++q) by_outputs[q] = p.outputs(q);
    Partition current = number_blocks(by_outputs);
    while (true) {
        std::vector<std::pair<std::size_t, std::vector<std::pair<Letter, std::size_t>>>> keys(p.size());
        for (StateId q = 0; q < p.size(); ++q) keys[q] = {current.block_of[q], abstract_moves(p, q, current)};
        Partition next = number_blocks(keys);
        if (next.block_count == current.block_count) return next;
        current = std::move(next);
    }
}

bool is_bisimulation(const Prechart& p1, const Prechart& p2, const Relation& r) {
    std::set<std::pair<StateId, StateId>> rel(r.begin(), r.end());
    auto matched = [&](const Prechart& from, StateId x, const Prechart& to, StateId y, bool flipped) {
        for (auto [a, x2] : from.transitions(x)) {
            bool found = false;
            for (auto [b, y2] : to.transitions(y)) {
                if (a != b) continue;
                auto pair = flipped ? std::pair{y2, x2} : std::pair{x2, y2};
                if (rel.count(pair)) {
                    found = true;
                    break;
                }
            }
            if (!found) return false;
        }
        return true;
    };
    for (auto [x, y] : rel) {
        if (x >= p1.size() || y >= p2.size()) return false;
        if (p1.outputs(x) != p2.outputs(y)) return false;
        if (!matched(p1, x, p2, y, false) || !matched(p2, y, p1, x, true)) return false;
    }
    return true;
}

Level stratified_level(const Prechart& p, StateId x, StateId y) {
    Partition current = total_partition(p.size());
    for (unsigned n = 0;; ++n) {
        Partition next = next_stratum(p, current);
        if (!next.same_block(x, y)) return n;
        if (next == current) return std::nullopt;
        current = std::move(next);
    }
}

Level stratified_level(const Chart& c1, const Chart& c2) {
    auto [u, offset] = disjoint_union(c1.prechart, c2.prechart);
    return stratified_level(u, c1.start, c2.start + offset);
}

BisimResult bisimilar(const Chart& c1, const Chart& c2) {
    auto [u, offset] = disjoint_union(c1.prechart, c2.prechart);
    BisimResult result;
    Partition part = bisimilarity(u);
    if (part.same_block(c1.start, c2.start + offset)) {
        result.bisimilar = true;
        for (StateId x = 0; x < c1.prechart.size(); ++x)
            for (StateId y = 0; y < c2.prechart.size(); ++y)
                if (part.same_block(x, y + offset)) result.witness.emplace_back(x, y);
        return result;
    }
    Level level = stratified_level(u, c1.start, c2.start + offset);
    result.distinguishing_level = *level + 1;
    return result;
}

Quotient quotient(const Prechart& p) {
    Partition part = bisimilarity(p);
    Quotient q;
    q.prechart = Prechart(part.block_count);
    q.map = part.block_of;
    for (StateId x = 0; x < p.size(); ++x) {
        for (auto [a, t] : p.transitions(x)) q.prechart.add_transition(q.map[x], a, q.map[t]);
        for (VarIndex v : p.outputs(x)) q.prechart.add_output(q.map[x], v);
    }
    return q;
}

}  // namespace chartdist
