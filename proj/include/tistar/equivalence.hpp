#pragma once

#include "tistar/hodge.hpp"
#include "tistar/star.hpp"

#include <optional>

namespace tistar {

// ----------------------------------------------------------------------------
// Deciding whether two translation-invariant products are isomorphic.
//
// Authoritative route: the Hodge representatives of the two classes coincide
// iff the generators are cohomologous; the witness is recovered on a lattice
// from the difference. The Fourier-mode commutator criterion is an
// independent second route kept for cross-validation.
// ----------------------------------------------------------------------------

struct EquivalenceVerdict {
    bool equivalent = false;
    std::optional<LatticeCochain> witness;  // d(witness) = alpha1 - alpha2 when equivalent
    double harmonic_gap = 0.0;              // max |alpha_H1 - alpha_H2| on samples
    std::vector<std::pair<std::string, double>> evidence;
};

// s supplies the pair samples for the harmonic gap; a triple set derived from
// s.seed runs the cocycle prechecks. Throws NotACocycleError on non-cocycles.
EquivalenceVerdict decide_equivalence(const Generator& alpha1, const Generator& alpha2,
                                      const SampleSet& s, const GridSpec& lattice,
                                      double tol = 1e-8);

// T acts in Fourier space as multiplication by e^{beta(p)}; intertwines the
// products generated by alpha2 + d(beta) and alpha2.
BandlimitedField apply_T(const OneCochain& beta, const BandlimitedField& f);
BandlimitedField apply_T(const LatticeCochain& beta, const BandlimitedField& f);

// Equality of the harmonic commutator factors e^{alpha_H(p,q)} - e^{-alpha_H(p,q)}
// of the two generators on sample pairs; agrees with decide_equivalence.
PredicateReport mode_commutator_criterion(const Generator& alpha1, const Generator& alpha2,
                                          const SampleSet& s, double tol = 1e-8);

// The n=1,2,3 integrated-equality identities certifying alpha2 = alpha1 + d(beta):
//   (n=1)  beta(0) = 0
//   (n=2)  alpha1(0,p) + beta(p) + beta(-p) = alpha2(0,p)
//   (n=3)  alpha1(0,-p-q) + alpha1(p+q,p) + beta(p) + beta(q) + beta(-p-q)
//            = alpha2(0,-p-q) + alpha2(p+q,p)
struct QuantumIdentityReport {
    PredicateReport n1;
    PredicateReport n2;
    PredicateReport n3;
    bool pass = false;
};

QuantumIdentityReport quantum_identities(const Generator& alpha1, const Generator& alpha2,
                                         const OneCochain& beta, const SampleSet& s,
                                         double tol = 1e-8);

}  // namespace tistar
