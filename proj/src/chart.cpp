#include "chartdist/chart.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <map>
#include <sstream>

#include "chartdist/errors.hpp"

namespace chartdist {

namespace {

template <typename T>
void insert_sorted(std::vector<T>& v, const T& x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it == v.end() || *it != x) v.insert(it, x);
}

// Copies `src` into `dst` with every state id shifted by `offset`.
void append_shifted(Prechart& dst, const Prechart& src, StateId offset) {
    for (StateId q = 0; q < src.size(); ++q) {
        for (auto [a, t] : src.transitions(q)) dst.add_transition(q + offset, a, t + offset);
        for (VarIndex v : src.outputs(q)) dst.add_output(q + offset, v);
    }
}

}  // namespace

Prechart::Prechart(std::size_t states) : trans_(states), outs_(states) {}

StateId Prechart::add_state() {
    trans_.emplace_back();
    outs_.emplace_back();
    return trans_.size() - 1;
}

void Prechart::add_transition(StateId from, Letter a, StateId to) {
    if (from >= size() || to >= size()) throw std::out_of_range("transition references an undeclared state");
    insert_sorted(trans_[from], std::pair{a, to});
}

void Prechart::add_output(StateId q, VarIndex v) {
    if (q >= size()) throw std::out_of_range("output references an undeclared state");
    if (v == 0) throw std::invalid_argument("variable indices start at 1");
    insert_sorted(outs_[q], v);
}

bool Prechart::has_output(StateId q, VarIndex v) const {
    return std::binary_search(outs_.at(q).begin(), outs_.at(q).end(), v);
}

std::vector<Move> Prechart::moves(StateId q) const {
    std::vector<Move> result;
    result.reserve(trans_.at(q).size() + outs_.at(q).size());
    for (auto [a, t] : trans_[q]) result.push_back(Move::act(a, t));
    for (VarIndex v : outs_[q]) result.push_back(Move::out(v));
    return result;
}

Alphabet Prechart::letters() const {
    Alphabet result;
    for (const auto& ts : trans_)
        for (auto [a, t] : ts) result.insert(a);
    return result;
}

std::size_t Prechart::transition_count() const {
    std::size_t n = 0;
    for (const auto& ts : trans_) n += ts.size();
    return n;
}

std::pair<Prechart, StateId> disjoint_union(const Prechart& a, const Prechart& b) {
    Prechart result(a.size() + b.size());
    append_shifted(result, a, 0);
    append_shifted(result, b, a.size());
    return {std::move(result), a.size()};
}

Chart empty_chart() { return Chart{Prechart(1), 0}; }

Chart variable_chart(VarIndex v) {
    Chart c{Prechart(1), 0};
    c.prechart.add_output(0, v);
    return c;
}

Chart prefix_chart(Letter a, const Chart& c) {
    Chart result{c.prechart, 0};
    result.start = result.prechart.add_state();
    result.prechart.add_transition(result.start, a, c.start);
    return result;
}

Chart sum_chart(const Chart& c1, const Chart& c2) {
    auto [p, offset] = disjoint_union(c1.prechart, c2.prechart);
    StateId s = p.add_state();
    const StateId s1 = c1.start;
    const StateId s2 = c2.start + offset;
    for (StateId from : {s1, s2}) {
        for (auto [a, t] : p.transitions(from)) p.add_transition(s, a, t);
        for (VarIndex v : p.outputs(from)) p.add_output(s, v);
    }
    return Chart{std::move(p), s};
}

Chart subst_chart(const Chart& c, const std::vector<Chart>& cs, const std::vector<VarIndex>& vars) {
    if (cs.size() != vars.size()) throw std::invalid_argument("subst_chart: arity mismatch");
    for (std::size_t i = 0; i < vars.size(); ++i)
        for (std::size_t j = i + 1; j < vars.size(); ++j)
            if (vars[i] == vars[j]) throw std::invalid_argument("subst_chart: repeated variable");

    Prechart p(c.prechart.size());
    std::vector<StateId> starts;
    for (const Chart& ci : cs) {
        StateId offset = p.size();
        for (std::size_t k = 0; k < ci.prechart.size(); ++k) p.add_state();
        append_shifted(p, ci.prechart, offset);
        starts.push_back(ci.start + offset);
    }
    for (StateId q = 0; q < c.prechart.size(); ++q) {
        for (auto [a, t] : c.prechart.transitions(q)) p.add_transition(q, a, t);
        for (VarIndex v : c.prechart.outputs(q)) {
            auto it = std::find(vars.begin(), vars.end(), v);
            if (it == vars.end()) {
                p.add_output(q, v);
                continue;
            }
            StateId si = starts[static_cast<std::size_t>(it - vars.begin())];
            for (auto [a, t] : p.transitions(si)) p.add_transition(q, a, t);
            for (VarIndex w : p.outputs(si)) p.add_output(q, w);
        }
    }
    return Chart{std::move(p), c.start};
}

Chart rec_chart(VarIndex v, const Chart& c) {
    const Prechart& old = c.prechart;
    Prechart p(old.size());
    for (StateId q = 0; q < old.size(); ++q) {
        for (auto [a, t] : old.transitions(q)) p.add_transition(q, a, t);
        if (old.has_output(q, v)) {
            for (auto [a, t] : old.transitions(c.start)) p.add_transition(q, a, t);
            for (VarIndex w : old.outputs(q))
                if (w != v) p.add_output(q, w);
            for (VarIndex w : old.outputs(c.start))
                if (w != v) p.add_output(q, w);
        } else {
            for (VarIndex w : old.outputs(q)) p.add_output(q, w);
        }
    }
    return Chart{std::move(p), c.start};
}

Chart reachable(const Chart& c, std::vector<StateId>* old_ids) {
    const Prechart& p = c.prechart;
    std::vector<StateId> order;
    std::vector<StateId> renumber(p.size(), SIZE_MAX);
    std::deque<StateId> queue{c.start};
    renumber[c.start] = 0;
    order.push_back(c.start);
    while (!queue.empty()) {
        StateId q = queue.front();
        queue.pop_front();
        for (auto [a, t] : p.transitions(q)) {
            if (renumber[t] != SIZE_MAX) continue;
            renumber[t] = order.size();
            order.push_back(t);
            queue.push_back(t);
        }
    }
    Prechart result(order.size());
    for (StateId i = 0; i < order.size(); ++i) {
        for (auto [a, t] : p.transitions(order[i])) result.add_transition(i, a, renumber[t]);
        for (VarIndex v : p.outputs(order[i])) result.add_output(i, v);
    }
    if (old_ids) *old_ids = order;
    return Chart{std::move(result), 0};
}

std::vector<VarIndex> live_vars(const Chart& c) {
    Chart r = reachable(c);
    std::vector<VarIndex> vars;
    for (StateId q = 0; q < r.prechart.size(); ++q)
        for (VarIndex v : r.prechart.outputs(q)) insert_sorted(vars, v);
    return vars;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

std::vector<std::string_view> split_words(std::string_view line) {
    std::vector<std::string_view> words;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) words.push_back(line.substr(i, j - i));
        i = j;
    }
    return words;
}

VarIndex parse_var_token(std::string_view tok, std::size_t line) {
    VarIndex v = 0;
    if (tok.size() < 2 || tok[0] != 'v') throw ParseError("malformed variable '" + std::string(tok) + "'", line);
    auto [ptr, ec] = std::from_chars(tok.data() + 1, tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || v == 0)
        throw ParseError("malformed variable '" + std::string(tok) + "'", line);
    return v;
}

}  // namespace

NamedChart parse_chart_text(std::string_view text) {
    NamedChart result;
    std::map<std::string, StateId, std::less<>> ids;
    std::optional<Alphabet> alphabet;
    std::optional<StateId> start;
    std::size_t line_no = 0;

    auto state_of = [&](std::string_view name) {
        auto it = ids.find(name);
        if (it == ids.end()) throw ParseError("undeclared state '" + std::string(name) + "'", line_no);
        return it->second;
    };

    while (!text.empty()) {
        ++line_no;
        auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        auto words = split_words(line);
        if (words.empty()) continue;
        const auto& cmd = words[0];
        if (cmd == "alphabet") {
            alphabet.emplace();
            for (std::size_t i = 1; i < words.size(); ++i) {
                if (words[i].size() != 1 || words[i][0] < 'a' || words[i][0] > 'z' || words[i][0] == 'v')
                    throw ParseError("malformed letter '" + std::string(words[i]) + "'", line_no);
                alphabet->insert(words[i][0]);
            }
        } else if (cmd == "state" && words.size() == 2) {
            if (ids.count(words[1])) throw ParseError("duplicate state '" + std::string(words[1]) + "'", line_no);
            ids.emplace(std::string(words[1]), result.chart.prechart.add_state());
            result.names.emplace_back(words[1]);
        } else if (cmd == "start" && words.size() == 2) {
            start = state_of(words[1]);
        } else if (cmd == "trans" && words.size() == 4) {
            if (words[2].size() != 1 || words[2][0] < 'a' || words[2][0] > 'z' || words[2][0] == 'v')
                throw ParseError("malformed letter '" + std::string(words[2]) + "'", line_no);
            if (alphabet && !alphabet->count(words[2][0]))
                throw ParseError("undeclared letter '" + std::string(words[2]) + "'", line_no);
            result.chart.prechart.add_transition(state_of(words[1]), words[2][0], state_of(words[3]));
        } else if (cmd == "out" && words.size() == 3) {
            result.chart.prechart.add_output(state_of(words[1]), parse_var_token(words[2], line_no));
        } else {
            throw ParseError("unrecognised line '" + std::string(line) + "'", line_no);
        }
    }
    if (result.chart.prechart.size() == 0) throw ParseError("chart has no states", line_no);
    if (!start) throw ParseError("chart has no start state", line_no);
    result.chart.start = *start;
    return result;
}

std::string chart_to_text(const Chart& c, const std::vector<std::string>* names) {
    const Prechart& p = c.prechart;
    auto name = [&](StateId q) { return names ? (*names)[q] : "q" + std::to_string(q); };
    std::ostringstream out;
    out << "alphabet";
    for (Letter a : p.letters()) out << ' ' << a;
    out << '\n';
    for (StateId q = 0; q < p.size(); ++q) out << "state " << name(q) << '\n';
    out << "start " << name(c.start) << '\n';
    for (StateId q = 0; q < p.size(); ++q)
        for (auto [a, t] : p.transitions(q)) out << "trans " << name(q) << ' ' << a << ' ' << name(t) << '\n';
    for (StateId q = 0; q < p.size(); ++q)
        for (VarIndex v : p.outputs(q)) out << "out " << name(q) << " v" << v << '\n';
    return out.str();
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string r;
    for (char ch : s) {
        if (ch == '"' || ch == '\\') r.push_back('\\');
        r.push_back(ch);
    }
    return r;
}

}  // namespace

std::string chart_to_dot(const Chart& c, const std::vector<std::string>* labels) {
    const Prechart& p = c.prechart;
    std::ostringstream out;
    out << "digraph chart {\n  rankdir=LR;\n  __start [shape=point];\n";
    for (StateId q = 0; q < p.size(); ++q) {
        out << "  q" << q << " [label=\"" << dot_escape(labels ? (*labels)[q] : "q" + std::to_string(q)) << "\"];\n";
    }
    out << "  __start -> q" << c.start << ";\n";
    for (StateId q = 0; q < p.size(); ++q) {
        for (auto [a, t] : p.transitions(q)) out << "  q" << q << " -> q" << t << " [label=\"" << a << "\"];\n";
        for (VarIndex v : p.outputs(q)) {
            out << "  out_" << q << "_" << v << " [shape=point];\n";
            out << "  q" << q << " -> out_" << q << "_" << v << " [label=\"v" << v << "\", style=dashed];\n";
        }
    }
    out << "}\n";
    return out.str();
}

}  // namespace chartdist
