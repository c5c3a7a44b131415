#pragma once

#include "tistar/common.hpp"

#include <iosfwd>
#include <string>

namespace tistar {

// ----------------------------------------------------------------------------
// Finite momentum lattice: k in {-(N-1)/2 .. (N-1)/2}^m scaled by dp.
// Row-major indexing, axis 0 slowest.
// ----------------------------------------------------------------------------

struct GridSpec {
    int dim = 1;
    int points_per_axis = 3;  // odd, >= 3
    double momentum_step = 1.0;

    GridSpec() = default;
    GridSpec(int m, int n, double dp);

    int half() const { return (points_per_axis - 1) / 2; }
    std::int64_t num_points() const;

    Momentum momentum_of(const Eigen::VectorXi& k) const;
    std::int64_t index_of(const Eigen::VectorXi& k) const;
    Eigen::VectorXi k_of_index(std::int64_t idx) const;
    bool contains(const Eigen::VectorXi& k) const;

    // Maps p to the nearest lattice vector; false if any component is off the
    // lattice by more than tol (in momentum units) or outside the box.
    bool on_lattice(const Momentum& p, Eigen::VectorXi& k_out, double tol = 1e-9) const;

    // Box volume of the dual periodic cell, (2 pi / dp)^m.
    double volume() const;

    bool operator==(const GridSpec& other) const;
    bool operator!=(const GridSpec& other) const { return !(*this == other); }
};

// ----------------------------------------------------------------------------
// Band-limited field: complex Fourier coefficients on the lattice,
// f(x) = sum_k c_k e^{i k.dp x}. Immutable after construction; the unit field
// is the single zero-mode coefficient c_0 = 1.
// ----------------------------------------------------------------------------

class BandlimitedField {
public:
    // Support radius is computed as max |k|_inf over nonzero coefficients.
    BandlimitedField(GridSpec grid, Eigen::VectorXcd coeffs);

    static BandlimitedField zero(const GridSpec& grid);
    static BandlimitedField unit(const GridSpec& grid);
    static BandlimitedField single_mode(const GridSpec& grid, const Eigen::VectorXi& k,
                                        Complex amplitude = Complex(1.0, 0.0));
    // Random coefficients (re, im uniform in [-1,1]) on |k|_inf <= support_radius.
    static BandlimitedField random(const GridSpec& grid, int support_radius,
                                   std::uint64_t seed);

    const GridSpec& grid() const { return grid_; }
    const Eigen::VectorXcd& coeffs() const { return coeffs_; }
    int support_radius() const { return support_radius_; }

    Complex coeff(const Eigen::VectorXi& k) const;
    double max_abs() const;

private:
    GridSpec grid_;
    Eigen::VectorXcd coeffs_;
    int support_radius_;
};

// Anti-aliasing budget for k-fold products: the summed support radii must fit
// inside the box, else coefficients would leave the lattice.
struct ProductBudget {
    int max_factors = 2;
    static void check(const GridSpec& grid, int total_support_radius, const char* where);
};

// ----------------------------------------------------------------------------
// Field file I/O.
// Binary layout: magic "TISP1", m (u32 LE), N (u32 LE), dp (f64 LE), then
// N^m coefficients as (f64 re, f64 im) pairs in row-major lattice order.
// JSON layout: {"m":..,"N":..,"dp":..,"coeffs":[[re,im],...]} same order.
// ----------------------------------------------------------------------------

void write_field_binary(const BandlimitedField& f, const std::string& path);
BandlimitedField read_field_binary(const std::string& path);
void write_field_json(const BandlimitedField& f, const std::string& path);
BandlimitedField read_field_json(const std::string& path);

}  // namespace tistar
