#pragma once

#include "tistar/cochain.hpp"
#include "tistar/grid.hpp"
#include "tistar/hodge.hpp"

#include <nlohmann/json_fwd.hpp>

#include <span>

namespace tistar {

// ----------------------------------------------------------------------------
// Non-commutative Feynman machinery, Euclideanized: propagator denominators
// are |p|^2 + m^2 so the lattice-regulated loop sums are pole-free. The
// cross-generator ratio identities under test are denominator-independent.
// All star-product factors are accumulated as complex exponents in log space.
// ----------------------------------------------------------------------------

struct KineticSymbol {
    std::function<Complex(const Momentum&)> eval;
    static KineticSymbol euclidean(double mass2);  // |p|^2 + mass2
};

struct LoopConfig {
    GridSpec grid;          // lattice for loop-momentum sums
    double mass2 = 1.0;     // > 0
    std::int64_t max_loop_points = 20'000'000;

    LoopConfig(GridSpec g, double m2) : grid(g), mass2(m2) {
        if (!(mass2 > 0.0)) throw ParseError("LoopConfig: mass2 must be > 0");
    }
};

// A complex number carried as (log-magnitude, phase).
struct LogComplex {
    double log_abs = 0.0;
    double arg = 0.0;

    static LogComplex from_exponent(Complex e) { return {e.real(), e.imag()}; }
    Complex value() const;  // guarded exponentiation
};

// Vertex factor V^k(p1..pk) = exp( sum_{i=2..k} alpha(P_i, P_{i-1}) ) with
// P_i the partial sums. k >= 2.
Complex vertex_exponent(const Generator& alpha, std::span<const Momentum> momenta);
LogComplex vertex_factor(const Generator& alpha, std::span<const Momentum> momenta);

// Star-product factor of the propagator: e^{-alpha(0,p)}.
Complex propagator_exponent(const Generator& alpha, const Momentum& p);
Complex propagator_factor(const Generator& alpha, const Momentum& p);

// Telescoping identity of coboundary vertex factors:
//   sum_{i=2..k} d beta(P_i, P_{i-1}) = sum_i beta(p^i) - beta(sum_i p^i)
// on unconstrained random momenta, plus its momentum-conserving corollary.
PredicateReport coboundary_factorization_check(const OneCochain& beta, int k, int trials,
                                               double box_radius = 2.0,
                                               std::uint64_t seed = 0xFAC70Full,
                                               double tol = 1e-12);

// One-loop non-planar self-energy at external momentum p:
//   sum_q e^{-alpha(0,p) + omega(p,q)} / ((|p|^2+m^2)^2 (|q|^2+m^2)) (dp/2pi)^m
Complex nonplanar_selfenergy(const Generator& alpha, const Momentum& p, const LoopConfig& cfg);

// ----------------------------------------------------------------------------
// Graphs. Lines are external (one endpoint, fixed incoming momentum) or
// internal (exactly two endpoint slots, possibly on the same vertex). Each
// vertex lists its incident line ids in cyclic order; an internal line
// contributes +k at its first slot in scan order and -k at its second, so a
// self-loop shows up as (+k, -k) within one vertex.
// ----------------------------------------------------------------------------

struct FeynmanGraph {
    struct Line {
        bool internal = false;
        Momentum external_momentum;  // incoming, external lines only
    };
    struct Vertex {
        std::vector<int> legs;  // ordered incident line ids
    };

    int dim = 0;
    std::vector<Line> lines;
    std::vector<Vertex> vertices;
};

FeynmanGraph parse_graph(const nlohmann::json& j);
FeynmanGraph parse_graph_file(const std::string& path);

// Momentum routing: every internal momentum is an affine function of the free
// loop momenta, fixed by conservation at each vertex. Throws ParseError when
// external momenta are unconserved or the graph is malformed.
struct MomentumRouting {
    int loop_count = 0;
    std::vector<int> internal_lines;        // graph line id per internal index
    Eigen::MatrixXd loop_coeffs;            // internal x loop
    std::vector<Momentum> fixed_part;       // per internal index

    struct LegRef {
        bool external = false;
        Momentum momentum;   // external legs
        int internal_index = -1;
        double sign = 0.0;   // +1 first slot, -1 second slot
    };
    std::vector<std::vector<LegRef>> vertex_legs;  // per vertex, in leg order
};

MomentumRouting route_momenta(const FeynmanGraph& graph);

struct Amplitude {
    Complex value;       // guarded; 0 with log_abs = -inf for an empty sum
    double log_abs = 0.0;
    double arg = 0.0;
};

// Connected amplitude with external legs included: product over internal and
// external propagators (1/Xi(p)) e^{-alpha(0,p)} and the ordered vertex
// factors, summed over the loop lattice with measure (dp/2pi)^m per loop.
Amplitude graph_amplitude(const FeynmanGraph& graph, const Generator& alpha,
                          const LoopConfig& cfg);

}  // namespace tistar
