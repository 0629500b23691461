#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "chartdist/diagram.hpp"
#include "chartdist/expr.hpp"
#include "chartdist/metric.hpp"

namespace chartdist {

/// A move of a named state: (act a STATE) or (out vN).
struct CertMove {
    bool act = false;
    Letter letter = 0;
    std::string state;
    VarIndex var = 0;
    bool operator==(const CertMove&) const = default;
};

struct CertNode;

struct CertPair {
    CertMove left;
    CertMove right;
    /// Empty, or exactly one node relating the two targets.
    std::vector<CertNode> child;
};

/// Proof tree for a judgement x =_eps y between two states.
struct CertNode {
    enum class Kind { Top, Bisim, Weaken, Triang, Coupling, Decomp };
    Kind kind = Kind::Top;
    Rational eps;                      // Weaken, Coupling
    std::vector<CertNode> children;    // Weaken: 1, Triang: k, Decomp: one per input
    std::vector<std::string> via;      // Triang: the k-1 intermediate states
    std::vector<CertPair> pairs;       // Coupling

    static CertNode top() { return CertNode{}; }
    static CertNode bisim() { return CertNode{Kind::Bisim, {}, {}, {}, {}}; }
    static CertNode weaken(Rational eps, CertNode child) { return CertNode{Kind::Weaken, eps, {std::move(child)}, {}, {}}; }
    static CertNode decomp(std::vector<CertNode> cs) { return CertNode{Kind::Decomp, {}, std::move(cs), {}, {}}; }
};

struct Certificate {
    std::optional<std::string> lhs;
    std::optional<std::string> rhs;
    std::optional<Rational> bound;
    CertNode root;
};

/// S-expression syntax:
///   (certificate (lhs "TERM") (rhs "TERM") (bound p/q) NODE)
///   NODE ::= (top) | (bisim) | (weaken E NODE) | (triang (NODE ...) (STATE ...))
///          | (coupling E ((move MOVE MOVE NODE?) ...)) | (decomp (NODE ...))
///   MOVE ::= (act LETTER STATE) | (out vN)
/// States are quoted alpha-normal expression texts. A bare NODE is also
/// accepted as a certificate without metadata.
Certificate parse_certificate(std::string_view text);
std::string print_certificate(const Certificate& c);

/// A certificate failed to check; the message names the failing node.
class CertificateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Requested bound below the true distance; carries the distance.
class SynthesisError : public std::runtime_error {
public:
    explicit SynthesisError(const Rational& distance)
        : std::runtime_error("no certificate: the distance is " + distance.str()), distance_(distance) {}
    const Rational& distance() const { return distance_; }

private:
    Rational distance_;
};

/// The union of the charts of every input component of two diagrams, with
/// states named by alpha-normal expression text.
struct Extracted {
    Prechart prechart;
    std::vector<std::string> names;
    /// Start states of the i-th components of the two sides.
    std::vector<std::pair<StateId, StateId>> roots;

    std::optional<StateId> find(const std::string& name) const;
};

/// Bend, split into single-input components, compile and expand.
Extracted extract(const DiagTerm& f, const DiagTerm& g, std::size_t max_states = kDefaultMaxStates);
/// Same for given component expressions (one per input on each side).
Extracted extract(const std::vector<Expr>& lhs, const std::vector<Expr>& rhs, std::size_t max_states = kDefaultMaxStates);

/// Validates the tree against the extracted prechart and returns the bound
/// it proves. Throws CertificateError on any violation.
Rational check(const Certificate& c, const Extracted& x);
/// Also checks that lhs/rhs metadata, when present, name f and g.
Rational check(const Certificate& c, const DiagTerm& f, const DiagTerm& g, std::size_t max_states = kDefaultMaxStates);
Rational check(const Certificate& c, const Expr& e, const Expr& f, std::size_t max_states = kDefaultMaxStates);

/// Tight proof tree for two states: its bound is exactly their distance.
CertNode synthesize_pair(const Extracted& x, StateId a, StateId b);

/// Certificate proving the bound eps, which must be at least the distance.
/// Throws SynthesisError otherwise.
Certificate synthesize(const Extracted& x, const Rational& eps);
Certificate synthesize(const DiagTerm& f, const DiagTerm& g, const Rational& eps,
                       std::size_t max_states = kDefaultMaxStates);
Certificate synthesize(const Expr& e, const Expr& f, const Rational& eps, std::size_t max_states = kDefaultMaxStates);

/// Optimal coupling of two move sets under a lifted distance table: the
/// union of the argmin pairs in both directions. Its maximal cost equals
/// the Hausdorff distance. Both sets must be empty or both nonempty.
std::vector<std::pair<std::size_t, std::size_t>> optimal_coupling(const DistTable& d, const std::vector<Move>& a,
                                                                  const std::vector<Move>& b);

/// Depth of nested Coupling nodes along the longest path, counting the
/// Top or Bisim leaf below them.
std::size_t coupling_depth(const CertNode& n);

}  // namespace chartdist
