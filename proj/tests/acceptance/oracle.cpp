#include "oracle.hpp"

#include <cmath>

namespace tistar::acceptance {

BandlimitedField star_direct_sum_oracle(const BandlimitedField& f, const BandlimitedField& g,
                                        const Generator& alpha) {
    const GridSpec& grid = f.grid();
    const std::int64_t n = grid.num_points();
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
    for (std::int64_t i_out = 0; i_out < n; ++i_out) {
        Eigen::VectorXi k_out = grid.k_of_index(i_out);
        Momentum P = grid.momentum_of(k_out);
        Complex acc(0.0, 0.0);
        for (std::int64_t i_f = 0; i_f < n; ++i_f) {
            Eigen::VectorXi k_f = grid.k_of_index(i_f);
            Eigen::VectorXi k_g = k_out - k_f;
            if (k_g.cwiseAbs().maxCoeff() > grid.half()) continue;
            Complex cf = f.coeffs()[i_f];
            Complex cg = g.coeffs()[grid.index_of(k_g)];
            if (cf == Complex(0.0, 0.0) || cg == Complex(0.0, 0.0)) continue;
            acc += cf * cg * std::exp(alpha(P, grid.momentum_of(k_f)));
        }
        out[i_out] = acc;
    }
    return BandlimitedField(grid, std::move(out));
}

}  // namespace tistar::acceptance
