#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chartdist/types.hpp"

namespace chartdist {

/// An element of beta(q): either a labelled transition (a, q') or an
/// output of variable v.
struct Move {
    enum class Kind { Act, Out };
    Kind kind = Kind::Out;
    Letter letter = 0;
    StateId target = 0;
    VarIndex var = 0;

    static Move act(Letter a, StateId q) { return {Kind::Act, a, q, 0}; }
    static Move out(VarIndex v) { return {Kind::Out, 0, 0, v}; }

    bool is_act() const { return kind == Kind::Act; }
    auto operator<=>(const Move&) const = default;
};

/// Finite prechart (Q, D, E) over states 0..size()-1. Transition and output
/// lists are kept sorted and duplicate-free.
class Prechart {
public:
    Prechart() = default;
    explicit Prechart(std::size_t states);

    std::size_t size() const { return trans_.size(); }
    StateId add_state();

    void add_transition(StateId from, Letter a, StateId to);
    void add_output(StateId q, VarIndex v);

    const std::vector<std::pair<Letter, StateId>>& transitions(StateId q) const { return trans_.at(q); }
    const std::vector<VarIndex>& outputs(StateId q) const { return outs_.at(q); }
    bool has_output(StateId q, VarIndex v) const;

    /// beta(q) = D(q) + E(q), transitions first.
    std::vector<Move> moves(StateId q) const;

    Alphabet letters() const;
    std::size_t transition_count() const;

    bool operator==(const Prechart&) const = default;

private:
    std::vector<std::vector<std::pair<Letter, StateId>>> trans_;
    std::vector<std::vector<VarIndex>> outs_;
};

struct Chart {
    Prechart prechart;
    StateId start = 0;

    bool operator==(const Chart&) const = default;
};

/// States of `b` are shifted by a.size(); returns the union and that offset.
std::pair<Prechart, StateId> disjoint_union(const Prechart& a, const Prechart& b);

// Milner's chart operations. Operands are made disjoint by offsetting.
Chart empty_chart();
Chart variable_chart(VarIndex v);
Chart prefix_chart(Letter a, const Chart& c);
Chart sum_chart(const Chart& c1, const Chart& c2);
/// c[cs[0]/vars[0], ...]; vars must be pairwise distinct.
Chart subst_chart(const Chart& c, const std::vector<Chart>& cs, const std::vector<VarIndex>& vars);
Chart rec_chart(VarIndex v, const Chart& c);

/// Restriction to the states reachable from the start, renumbered in
/// breadth-first order (start becomes 0). `old_ids`, if given, receives the
/// original id of every kept state.
Chart reachable(const Chart& c, std::vector<StateId>* old_ids = nullptr);

/// Sorted variables output at some state reachable from the start.
std::vector<VarIndex> live_vars(const Chart& c);

/// Line-based text format:
///   alphabet a b ...
///   state q0
///   start q0
///   trans q0 a q1
///   out q1 v1
/// '#' starts a comment. Errors carry the 1-based line number.
struct NamedChart {
    Chart chart;
    std::vector<std::string> names;
};
NamedChart parse_chart_text(std::string_view text);
std::string chart_to_text(const Chart& c, const std::vector<std::string>* names = nullptr);

/// Graphviz rendering; outputs become dangling edges into point nodes.
std::string chart_to_dot(const Chart& c, const std::vector<std::string>* labels = nullptr);

}  // namespace chartdist
