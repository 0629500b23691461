#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chartdist/metric.hpp"
#include "chartdist/regbeh.hpp"

namespace chartdist {

/// A word over the two wire directions: '>' (rightward) and '<' (leftward).
using WireWord = std::string;

enum class DiagKind { Copy, Del, Merge, Gen, Cap, Cup, Act, Id, Sym, Seq, Tensor };

/// Immutable string-diagram term.
class DiagTerm {
public:
    static DiagTerm copy();
    static DiagTerm del();
    static DiagTerm merge();
    static DiagTerm gen();
    static DiagTerm cap();
    static DiagTerm cup();
    static DiagTerm act(Letter a);
    static DiagTerm id(WireWord w);
    static DiagTerm sym(WireWord v, WireWord w);
    static DiagTerm seq(DiagTerm f, DiagTerm g);
    static DiagTerm tensor(DiagTerm f, DiagTerm g);

    DiagKind kind() const;
    Letter letter() const;            // Act
    const WireWord& word() const;     // Id, and first word of Sym
    const WireWord& word2() const;    // second word of Sym
    const DiagTerm& left() const;     // Seq, Tensor
    const DiagTerm& right() const;    // Seq, Tensor

    bool operator==(const DiagTerm& other) const;

private:
    struct Node;
    static DiagTerm leaf(DiagKind k);
    explicit DiagTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

/// Grammar:
///   t ::= 'copy' | 'del' | 'merge' | 'gen' | 'cap' | 'cup' | 'act(' LETTER ')'
///       | 'id(' WIRES ')' | 'sym(' WIRES ',' WIRES ')' | t ';' t | t '*' t | '(' t ')'
/// with ';' binding looser than '*', both left-associative.
DiagTerm parse_diagram(std::string_view text, const std::optional<Alphabet>& alphabet = std::nullopt);
std::string print(const DiagTerm& t);
Alphabet letters_of(const DiagTerm& t);

struct DiagType {
    WireWord dom;
    WireWord cod;
    bool operator==(const DiagType&) const = default;
};

/// Throws TypeError naming the offending node by its path from the root
/// ('L'/'R' steps into the children of ';' and '*').
DiagType typecheck(const DiagTerm& t);

IntObject int_object(const WireWord& w);

IntMorphism interpret(const DiagTerm& t);

/// Removes every '<' from the interface by bending wires with cup and cap:
/// leftmost '<' of the domain first, then leftmost '<' of the codomain.
/// A '<' in the domain becomes a trailing '>' of the codomain and vice versa.
DiagTerm bend(const DiagTerm& t);

/// For t : >^m -> >^n and 1 <= i <= m, the single-input diagram obtained by
/// feeding gen into every other input.
DiagTerm component(const DiagTerm& t, std::size_t i);

/// Bent interpretation, as a RegBeh morphism m -> n.
RbMorphism compile(const DiagTerm& t);

/// Homset distance of the bent interpretations; f and g must share a type.
Dist diagram_distance(const DiagTerm& f, const DiagTerm& g);

struct Axiom {
    std::string name;
    DiagTerm lhs;
    DiagTerm rhs;
};

/// A1, A2, B1-B11, C1, plus the invalid copy variant of C1 under the name
/// "C1-copy".
const std::vector<Axiom>& axiom_catalog();
/// Semantic check: the two sides have row-wise bisimilar interpretations.
/// Throws std::invalid_argument for unknown names.
bool check_axiom(const std::string& name);

/// Graphviz rendering of the term tree.
std::string diagram_to_dot(const DiagTerm& t);

}  // namespace chartdist
