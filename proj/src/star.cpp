#include "tistar/star.hpp"

#include <cmath>
#include <vector>

namespace tistar {

BandlimitedField star(const BandlimitedField& f, const BandlimitedField& g,
                      const Generator& alpha) {
    const GridSpec& grid = f.grid();
    if (grid != g.grid()) throw ParseError("star: fields live on different grids");
    if (alpha.dim() != grid.dim) throw ParseError("star: generator dimension != grid dimension");

    const int rf = f.support_radius();
    const int rg = g.support_radius();
    const int rout = rf + rg;
    ProductBudget::check(grid, rout, "star");

    // Enumerate output modes once; each is filled independently (parallel
    // safe), with the inner sum in deterministic index order.
    std::vector<Eigen::VectorXi> out_modes;
    out_modes.reserve(std::size_t(std::pow(double(2 * rout + 1), double(grid.dim))));
    for_each_in_box(grid.dim, rout, [&](const Eigen::VectorXi& k) { out_modes.push_back(k); });

    std::vector<Eigen::VectorXi> f_modes;
    for_each_in_box(grid.dim, rf, [&](const Eigen::VectorXi& k) { f_modes.push_back(k); });

    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(grid.num_points());
    parallel_for(std::int64_t(out_modes.size()), [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t i = begin; i < end; ++i) {
            const Eigen::VectorXi& k_out = out_modes[std::size_t(i)];
            Momentum P = grid.momentum_of(k_out);
            Complex acc = 0.0;
            for (const auto& k_f : f_modes) {
                Complex cf = f.coeff(k_f);
                if (cf == Complex(0.0, 0.0)) continue;
                Eigen::VectorXi k_g = k_out - k_f;
                if (k_g.cwiseAbs().maxCoeff() > rg) continue;
                Complex cg = g.coeff(k_g);
                if (cg == Complex(0.0, 0.0)) continue;
                acc += cf * cg * checked_exp(alpha(P, grid.momentum_of(k_f)), "star");
            }
            out[grid.index_of(k_out)] = acc;
        }
    });
    return BandlimitedField(grid, std::move(out));
}

Complex integrate(const BandlimitedField& f) {
    return f.coeff(Eigen::VectorXi::Zero(f.grid().dim)) * f.grid().volume();
}

Complex integrated_star(std::span<const BandlimitedField> fields, const Generator& alpha) {
    if (fields.empty()) throw std::invalid_argument("integrated_star: no fields");
    const GridSpec& grid = fields.front().grid();
    int total_support = 0;
    for (const auto& f : fields) {
        if (f.grid() != grid) throw ParseError("integrated_star: grid mismatch");
        total_support += f.support_radius();
    }
    ProductBudget::check(grid, total_support, "integrated_star");
    BandlimitedField acc = fields.front();
    for (std::size_t i = 1; i < fields.size(); ++i) acc = star(acc, fields[i], alpha);
    return integrate(acc);
}

BandlimitedField translate(const BandlimitedField& f, const Momentum& a) {
    const GridSpec& grid = f.grid();
    if (a.size() != grid.dim) throw ParseError("translate: shift dimension != grid dimension");
    Eigen::VectorXcd out(f.coeffs().size());
    for (std::int64_t i = 0; i < out.size(); ++i) {
        double phase = grid.momentum_of(grid.k_of_index(i)).dot(a);
        out[i] = f.coeffs()[i] * Complex(std::cos(phase), std::sin(phase));
    }
    return BandlimitedField(grid, std::move(out));
}

namespace {
BandlimitedField conjugate_field(const BandlimitedField& f) {
    const GridSpec& grid = f.grid();
    Eigen::VectorXcd out(f.coeffs().size());
    for (std::int64_t i = 0; i < out.size(); ++i) {
        Eigen::VectorXi k = grid.k_of_index(i);
        out[i] = std::conj(f.coeff((-k).eval()));
    }
    return BandlimitedField(grid, std::move(out));
}
}  // namespace

PredicateReport involution_check(const BandlimitedField& f, const BandlimitedField& g,
                                 const Generator& alpha, double tol) {
    BandlimitedField lhs = conjugate_field(star(f, g, alpha));
    BandlimitedField rhs = star(conjugate_field(g), conjugate_field(f), alpha);
    double scale = 1.0 + std::max(lhs.max_abs(), rhs.max_abs());
    PredicateReport r;
    r.name = "involution_check";
    r.tolerance = tol;
    double worst = 0.0;
    std::int64_t worst_idx = 0;
    for (std::int64_t i = 0; i < lhs.coeffs().size(); ++i) {
        double d = std::abs(lhs.coeffs()[i] - rhs.coeffs()[i]);
        if (d > worst) {
            worst = d;
            worst_idx = i;
        }
    }
    r.max_residual = worst / scale;
    r.pass = r.max_residual <= tol;
    r.worst_point = {f.grid().momentum_of(f.grid().k_of_index(worst_idx))};
    return r;
}

Complex mode_commutator(const Momentum& p, const Momentum& q, const Generator& alpha,
                        const GridSpec& grid) {
    Eigen::VectorXi kp, kq, ks;
    if (!grid.on_lattice(p, kp))
        throw ParseError("mode_commutator: p is not a lattice point");
    if (!grid.on_lattice(q, kq))
        throw ParseError("mode_commutator: q is not a lattice point");
    if (!grid.on_lattice((p + q).eval(), ks))
        throw BudgetError("mode_commutator: p+q leaves the grid box");
    return checked_exp(alpha(p + q, p), "mode_commutator") -
           checked_exp(alpha(p + q, q), "mode_commutator");
}

}  // namespace tistar
