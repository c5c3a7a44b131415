#pragma once

#include "tistar/cochain.hpp"
#include "tistar/grid.hpp"

namespace tistar {

// ----------------------------------------------------------------------------
// Hodge machinery for 2-cocycles.
//
// harmonic part:   alpha_H(p,q) = 1/2 (alpha(p+q,q) - alpha(p+q,p))
// Laplace-Beltrami: Delta alpha(p,q) = alpha(0,q) - alpha(0,p) + alpha(0,p-q)
//                                      + alpha(p,q) + alpha(p,p-q)
// omega:           omega(p,q) = alpha(p+q,p) - alpha(p+q,q) = -2 alpha_H(p,q)
//
// The harmonic-part formula annihilates coboundaries identically and is exact
// on the quadratic family, so structured generators take a symbolic path.
// ----------------------------------------------------------------------------

// alpha'(p,q) = 1/2 (alpha(p,q) + alpha(-p,-q)).
Generator symmetrize(const Generator& alpha);

// alpha_-(p,q) = 1/2 (alpha(p,q) - alpha(-p,q-p)) and its complement.
Generator minus_part(const Generator& alpha);
Generator plus_part(const Generator& alpha);

// Harmonic representative of [alpha]. Structured generators (quadratic /
// coboundary / sums thereof) resolve symbolically to a quadratic with the
// symmetric part dropped; opaque generators are sample-checked for the
// cocycle condition first (throws NotACocycleError) and then wrapped
// pointwise.
Generator harmonic_part(const Generator& alpha);
Generator harmonic_part(const Generator& alpha, const SampleSet& cocycle_samples,
                        double cocycle_tol);

std::function<Complex(const Momentum&, const Momentum&)> laplace_beltrami(
    const Generator& alpha);

// max |Delta alpha| over sample pairs; the authoritative harmonicity test.
PredicateReport is_harmonic(const Generator& alpha, const SampleSet& s,
                            double tol = kDefaultTolerance);

class Omega {
public:
    explicit Omega(Generator alpha) : alpha_(std::move(alpha)) {}
    Complex operator()(const Momentum& p, const Momentum& q) const {
        return alpha_(p + q, p) - alpha_(p + q, q);
    }
    int dim() const { return alpha_.dim(); }
    const Generator& source() const { return alpha_; }

private:
    Generator alpha_;
};

inline Omega omega(const Generator& alpha) { return Omega(alpha); }

// Space-time commutator matrix Theta^{mu nu} = [x^mu, x^nu]_star, i.e.
// d^2 alpha / dz1_mu dz2_nu (0,0) antisymmetrized, normalized so that the
// standard Moyal bracket convention [x^mu,x^nu] = i theta^{mu nu} holds
// (Theta(moyal(theta_A)) = -2i theta_A). Quadratic/coboundary structure is
// differentiated exactly; opaque generators use central differences with one
// Richardson extrapolation level.
Eigen::MatrixXcd commutator_matrix(const Generator& alpha, double fd_step = 1e-4);

// ----------------------------------------------------------------------------
// Coboundary witness recovery on a lattice.
//
// Gauge: d kills linear functions, so beta is unique only up to a linear
// term; we pin beta(0) = 0 and beta(dp e_mu) = 0 on positive unit steps.
// Fill is an axis-first recursion beta(p) = beta(p - e_mu) - delta(p, e_mu);
// afterwards the full coboundary relation and random alternative paths are
// replayed against the table.
// ----------------------------------------------------------------------------

class LatticeCochain {
public:
    LatticeCochain(GridSpec grid, Eigen::VectorXcd values, double consistency_residual,
                   double path_residual);

    const GridSpec& grid() const { return grid_; }
    Complex value_at(const Eigen::VectorXi& k) const;
    // Evaluation at a momentum; must be a lattice point.
    Complex operator()(const Momentum& p) const;

    double consistency_residual() const { return consistency_residual_; }
    double path_residual() const { return path_residual_; }

    OneCochain as_one_cochain() const;  // Kind::Tabulated

private:
    GridSpec grid_;
    Eigen::VectorXcd values_;
    double consistency_residual_;
    double path_residual_;
};

struct RecoverOptions {
    double harmonic_tol = 1e-8;     // coboundary precondition threshold
    double consistency_tol = 1e-8;  // post-fill coboundary replay threshold
    int harmonic_samples = 256;
    int consistency_pairs = 400;
    int alternative_paths = 100;
    std::uint64_t seed = 0xC0B0DA7Aull;
};

// Requires alpha cohomologous to zero: throws NotACoboundaryError if the
// sampled harmonic part is above harmonic_tol, InconsistentCoboundaryError if
// the recovered table fails the coboundary replay.
LatticeCochain recover_witness(const Generator& alpha, const GridSpec& lattice,
                               const RecoverOptions& options = {});

struct HodgeDecomposition {
    Generator harmonic;
    LatticeCochain witness;     // alpha ~ harmonic + d(witness) on the lattice
    Eigen::VectorXcd gauge;     // witness values pinned at unit steps (zeros)
    double residual;            // max |alpha - alpha_H - d(witness)| on lattice pairs
};

HodgeDecomposition decompose(const Generator& alpha, const GridSpec& lattice,
                             const RecoverOptions& options = {});

}  // namespace tistar
