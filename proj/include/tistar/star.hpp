#pragma once

#include "tistar/cochain.hpp"
#include "tistar/grid.hpp"

#include <span>

namespace tistar {

// ----------------------------------------------------------------------------
// Twisted convolution on band-limited fields:
//
//   (f*g)_P = sum_q f_q g_{P-q} e^{alpha(P, q)}
//
// weight convention: alpha(total momentum, left-factor momentum). The kernel
// depends jointly on (P,q), so this is a direct double sum restricted to the
// supports (no FFT). Products whose combined support would leave the box are
// an error, never aliased.
// ----------------------------------------------------------------------------

BandlimitedField star(const BandlimitedField& f, const BandlimitedField& g,
                      const Generator& alpha);

// integral over the dual periodic box: zero mode x (2 pi / dp)^m.
Complex integrate(const BandlimitedField& f);

// integral of the left-associated k-fold star product.
Complex integrated_star(std::span<const BandlimitedField> fields, const Generator& alpha);

// T_a in Fourier space: coefficient at k picks up e^{i (dp k).a}.
BandlimitedField translate(const BandlimitedField& f, const Momentum& a);

// coefficientwise check of (f*g)^* = g^* * f^* where (f^*)_k = conj(f_{-k}).
PredicateReport involution_check(const BandlimitedField& f, const BandlimitedField& g,
                                 const Generator& alpha, double tol = kDefaultTolerance);

// coefficient of [e^{ipx}, e^{iqx}]_star at mode p+q:
// e^{alpha(p+q,p)} - e^{alpha(p+q,q)}. p, q and p+q must be lattice points.
Complex mode_commutator(const Momentum& p, const Momentum& q, const Generator& alpha,
                        const GridSpec& grid);

}  // namespace tistar
