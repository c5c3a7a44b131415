#pragma once

#include "tistar/grid.hpp"
#include "tistar/cochain.hpp"

namespace tistar::acceptance {

// Reference star product: a direct double sum over the full lattice with raw
// index arithmetic. Kept deliberately independent of the engine's support-box
// implementation; used only to validate it.
BandlimitedField star_direct_sum_oracle(const BandlimitedField& f, const BandlimitedField& g,
                                        const Generator& alpha);

}  // namespace tistar::acceptance
