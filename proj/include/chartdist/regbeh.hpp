#pragma once

#include <cstddef>
#include <vector>

#include "chartdist/expr.hpp"
#include "chartdist/metric.hpp"

namespace chartdist {

/// A morphism m -> n of RegBeh: m expressions whose free variables lie in
/// v1..vn. Row i describes the behaviour started from input wire i; output
/// wire j is the variable v_j.
struct RbMorphism {
    std::size_t dom = 0;
    std::size_t cod = 0;
    std::vector<Expr> rows;
};

/// Validates the row count and the free-variable bound; throws TypeError.
RbMorphism rb_make(std::size_t dom, std::size_t cod, std::vector<Expr> rows);

RbMorphism rb_identity(std::size_t n);
/// The unique morphism 0 -> n.
RbMorphism rb_empty(std::size_t n);
/// Row i is v_{targets[i]} (1-based targets).
RbMorphism rb_wiring(std::size_t cod, const std::vector<VarIndex>& targets);
/// sigma_{m,n} : m+n -> n+m.
RbMorphism rb_symmetry(std::size_t m, std::size_t n);
/// Codiagonal n+n -> n.
RbMorphism rb_codiagonal(std::size_t n);
/// Injections p -> p+n and n -> p+n.
RbMorphism rb_inl(std::size_t p, std::size_t n);
RbMorphism rb_inr(std::size_t p, std::size_t n);

/// f ; g, row-wise simultaneous substitution of g into f.
RbMorphism rb_compose(const RbMorphism& f, const RbMorphism& g);
/// <f, g> : k+l -> m for f : k -> m, g : l -> m.
RbMorphism rb_pair(const RbMorphism& f, const RbMorphism& g);
/// f + g : k+m -> l+n; the variables of g are shifted by l.
RbMorphism rb_oplus(const RbMorphism& f, const RbMorphism& g);

/// Conway dagger of f : n -> p+n, a morphism n -> p solving
/// x = f[v1..vp, x]. Solved by Bekic elimination, last row first, with the
/// recursion variable of row i being v_{p+i}.
RbMorphism rb_dagger(const RbMorphism& f, std::size_t p);

/// Trace of g : p+n -> q+n over the last n wires:
/// inl_{p,n} ; (g ; <id_q, inr_{q+p,n}>)^dagger.
RbMorphism rb_trace(const RbMorphism& g, std::size_t n);

/// Row-wise bisimilarity of the expanded rows.
bool rb_bisimilar(const RbMorphism& f, const RbMorphism& g);

/// max_i bd(f_i, g_i); 0 for empty tuples.
Dist homset_distance(const RbMorphism& f, const RbMorphism& g);

/// Object (A+, A-) of the Int construction: counts of rightward and
/// leftward wires.
struct IntObject {
    std::size_t plus = 0;
    std::size_t minus = 0;
    bool operator==(const IntObject&) const = default;
};

/// A : (A+,A-) -> (B+,B-) carried by a payload A+ + B- -> A- + B+.
struct IntMorphism {
    IntObject dom;
    IntObject cod;
    RbMorphism payload;
};

IntMorphism int_make(IntObject dom, IntObject cod, RbMorphism payload);
IntMorphism int_identity(IntObject a);
IntMorphism int_symmetry(IntObject a, IntObject b);
/// Unit (0,0) -> A (x) A* and counit A* (x) A -> (0,0), where A* swaps the
/// two components.
IntMorphism int_unit(IntObject a);
IntMorphism int_counit(IntObject a);
IntMorphism int_compose(const IntMorphism& f, const IntMorphism& g);
IntMorphism int_tensor(const IntMorphism& f, const IntMorphism& g);
/// f : n -> m viewed as (n,0) -> (m,0).
IntMorphism embed_N(const RbMorphism& f);

Dist int_distance(const IntMorphism& f, const IntMorphism& g);

}  // namespace chartdist
