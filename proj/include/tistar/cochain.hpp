#pragma once

#include "tistar/common.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tistar {

// ----------------------------------------------------------------------------
// Cochains of the translation-invariant complex:
//   C^1 = smooth f with f(0) = 0
//   C^2 = smooth f(p,q) with f(p,0) = f(p,p) = 0
// with coboundary maps (alternating signs, unit normalization)
//   (d beta)(p,q)       = beta(q) - beta(p) + beta(p-q)
//   (d alpha)(p0,p1,p2) = alpha(p1,p2) - alpha(p0,p2) + alpha(p0,p1)
//                           - alpha(p0-p2, p1-p2)
// d alpha = 0 is exactly the cyclic associativity condition of the generator.
// ----------------------------------------------------------------------------

class OneCochain {
public:
    using Eval = std::function<Complex(const Momentum&)>;

    enum class Kind { Polynomial, QuadraticForm, Tabulated, Composite };

    // Checks beta(0) = 0 to 1e-12 at construction.
    OneCochain(Eval eval, int dim, Kind kind = Kind::Composite, std::string label = "beta");

    Complex operator()(const Momentum& p) const { return eval_(p); }
    int dim() const { return dim_; }
    Kind kind() const { return kind_; }
    const std::string& label() const { return label_; }

private:
    Eval eval_;
    int dim_;
    Kind kind_;
    std::string label_;
};

class Generator {
public:
    using Eval = std::function<Complex(const Momentum&, const Momentum&)>;

    enum class Kind { Quadratic, Coboundary, Sum, Opaque };

    // Opaque generator from an arbitrary callable. Unitality alpha(p,p) =
    // alpha(p,0) = 0 is spot-checked on a fixed deterministic sample at
    // construction; the cocycle condition is never assumed, only reported.
    Generator(Eval eval, int dim, std::string label = "alpha");

    Complex operator()(const Momentum& p, const Momentum& q) const;
    int dim() const;
    Kind kind() const;
    const std::string& label() const;

    // Structured payloads (empty unless the kind matches).
    // Quadratic: alpha(p,q) = i q^T A p + q^T S (p - q).
    const Eigen::MatrixXd* quadratic_A() const;
    const Eigen::MatrixXd* quadratic_S() const;
    const OneCochain* coboundary_witness() const;
    const std::vector<Generator>* sum_terms() const;

    struct Node;
    explicit Generator(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    const Node& node() const { return *node_; }

private:
    std::shared_ptr<const Node> node_;
};

// ----------------------------------------------------------------------------
// Sampling and predicate reports. Predicates are sample-based: residuals are
// scaled by 1 + (largest |term| entering the identity at that point) and the
// worst point is tracked in deterministic index order.
// ----------------------------------------------------------------------------

struct SampleSet {
    int arity = 2;  // momenta per tuple (2 or 3)
    int dim = 1;
    std::uint64_t seed = 0;
    double box_radius = 1.0;
    std::vector<Momentum> points;  // arity * count entries, tuple-major

    static SampleSet pairs(int dim, int count, double box_radius, std::uint64_t seed);
    static SampleSet triples(int dim, int count, double box_radius, std::uint64_t seed);

    std::size_t size() const { return arity ? points.size() / std::size_t(arity) : 0; }
    const Momentum& at(std::size_t tuple, int slot) const {
        return points[tuple * std::size_t(arity) + std::size_t(slot)];
    }
};

struct PredicateReport {
    std::string name;
    double max_residual = 0.0;             // scaled residual
    std::vector<Momentum> worst_point;     // tuple realizing max_residual
    bool pass = true;
    double tolerance = 0.0;
};

inline constexpr double kDefaultTolerance = 1e-9;

// ----------------------------------------------------------------------------
// Coboundary operators.
// ----------------------------------------------------------------------------

// d beta as a Generator (kind Coboundary; satisfies unitality identically).
Generator coboundary1(const OneCochain& beta);

// d alpha as a 3-point evaluator; vanishes identically iff alpha is a cocycle.
std::function<Complex(const Momentum&, const Momentum&, const Momentum&)>
coboundary2(const Generator& alpha);

// ----------------------------------------------------------------------------
// Structural predicates. All throw std::invalid_argument on an empty sample
// set and require matching dimensions.
// ----------------------------------------------------------------------------

// max |d alpha| over sample triples.
PredicateReport is_cocycle(const Generator& alpha, const SampleSet& s,
                           double tol = kDefaultTolerance);

// max over sample points of |alpha(p,p)|, |alpha(p,0)|.
PredicateReport is_unital(const Generator& alpha, const SampleSet& s,
                          double tol = kDefaultTolerance);

// max |alpha(p,q) - alpha(p,p-q)| over sample pairs.
PredicateReport is_commutative(const Generator& alpha, const SampleSet& s,
                               double tol = kDefaultTolerance);

// max |conj(alpha(p,q)) - alpha(-p,q-p)| over sample pairs.
PredicateReport is_involutive(const Generator& alpha, const SampleSet& s,
                              double tol = kDefaultTolerance);

// Membership of an evaluable in C^n (and C*^n when starred). n must be 1 for
// the one-argument overload and 2 for the two-argument one.
PredicateReport cochain_membership(const OneCochain::Eval& f, int dim, int n,
                                   const SampleSet& s, double tol, bool starred);
PredicateReport cochain_membership(const Generator::Eval& f, int dim, int n,
                                   const SampleSet& s, double tol, bool starred);

// Pointwise conjugate generator (p,q) -> conj(alpha(p,q)); structure-preserving
// (Quadratic{A,S} -> Quadratic{-A,S}, coboundary -> coboundary of conj beta).
Generator conjugate_generator(const Generator& alpha);

namespace detail {
// Structured constructors; generator_lib wraps these with validation.
Generator make_quadratic_node(Eigen::MatrixXd A, Eigen::MatrixXd S, std::string label);
Generator make_coboundary_node(OneCochain beta);
Generator make_sum_node(std::vector<Generator> terms);
}  // namespace detail

}  // namespace tistar
