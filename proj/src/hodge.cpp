#include "tistar/hodge.hpp"

#include <cmath>
#include <optional>

namespace tistar {

Generator symmetrize(const Generator& alpha) {
    return Generator(
        [alpha](const Momentum& p, const Momentum& q) {
            return 0.5 * (alpha(p, q) + alpha(-p, -q));
        },
        alpha.dim(), "sym(" + alpha.label() + ")");
}

Generator minus_part(const Generator& alpha) {
    return Generator(
        [alpha](const Momentum& p, const Momentum& q) {
            return 0.5 * (alpha(p, q) - alpha(-p, q - p));
        },
        alpha.dim(), "minus(" + alpha.label() + ")");
}

Generator plus_part(const Generator& alpha) {
    return Generator(
        [alpha](const Momentum& p, const Momentum& q) {
            return 0.5 * (alpha(p, q) + alpha(-p, q - p));
        },
        alpha.dim(), "plus(" + alpha.label() + ")");
}

namespace {

// Symbolic harmonic matrix for structured generators: Quadratic{A,S} -> A,
// coboundaries -> 0, sums add. nullopt when any branch is opaque.
std::optional<Eigen::MatrixXd> harmonic_matrix(const Generator& g) {
    switch (g.kind()) {
        case Generator::Kind::Quadratic:
            return *g.quadratic_A();
        case Generator::Kind::Coboundary:
            return Eigen::MatrixXd::Zero(g.dim(), g.dim());
        case Generator::Kind::Sum: {
            Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(g.dim(), g.dim());
            for (const auto& t : *g.sum_terms()) {
                auto part = harmonic_matrix(t);
                if (!part) return std::nullopt;
                acc += *part;
            }
            return acc;
        }
        case Generator::Kind::Opaque:
        default:
            return std::nullopt;
    }
}

Generator harmonic_closure(const Generator& alpha) {
    return Generator(
        [alpha](const Momentum& p, const Momentum& q) {
            return 0.5 * (alpha(p + q, q) - alpha(p + q, p));
        },
        alpha.dim(), "harmonic(" + alpha.label() + ")");
}

}  // namespace

Generator harmonic_part(const Generator& alpha, const SampleSet& cocycle_samples,
                        double cocycle_tol) {
    if (auto A = harmonic_matrix(alpha))
        return detail::make_quadratic_node(*A, Eigen::MatrixXd::Zero(alpha.dim(), alpha.dim()),
                                           "harmonic(" + alpha.label() + ")");
    PredicateReport cocycle = is_cocycle(alpha, cocycle_samples, cocycle_tol);
    if (!cocycle.pass)
        throw NotACocycleError("harmonic_part: '" + alpha.label() +
                               "' has cocycle residual " + std::to_string(cocycle.max_residual) +
                               " (harmonic formula is valid only for cocycles)");
    return harmonic_closure(alpha);
}

Generator harmonic_part(const Generator& alpha) {
    if (auto A = harmonic_matrix(alpha))
        return detail::make_quadratic_node(*A, Eigen::MatrixXd::Zero(alpha.dim(), alpha.dim()),
                                           "harmonic(" + alpha.label() + ")");
    return harmonic_part(alpha, SampleSet::triples(alpha.dim(), 64, 3.0, 0xC0C1C1Eull), 1e-8);
}

std::function<Complex(const Momentum&, const Momentum&)> laplace_beltrami(
    const Generator& alpha) {
    Momentum zero = Momentum::Zero(alpha.dim());
    return [alpha, zero](const Momentum& p, const Momentum& q) {
        return alpha(zero, q) - alpha(zero, p) + alpha(zero, p - q) + alpha(p, q) +
               alpha(p, p - q);
    };
}

PredicateReport is_harmonic(const Generator& alpha, const SampleSet& s, double tol) {
    if (s.size() == 0) throw std::invalid_argument("is_harmonic: empty sample set");
    auto lb = laplace_beltrami(alpha);
    PredicateReport r;
    r.name = "is_harmonic";
    r.tolerance = tol;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const Momentum& p = s.at(i, 0);
        const Momentum& q = s.at(i, 1);
        double scale = 1.0 + std::abs(alpha(p, q));
        double res = std::abs(lb(p, q)) / scale;
        if (res > r.max_residual) {
            r.max_residual = res;
            worst = i;
        }
    }
    r.pass = r.max_residual <= tol;
    r.worst_point = {s.at(worst, 0), s.at(worst, 1)};
    return r;
}

// ----------------------------------------------------------------------------
// Commutator matrix
// ----------------------------------------------------------------------------

namespace {

// Mixed second derivatives d^2 alpha / dz1_mu dz2_nu (0,0) by central
// differences at step h.
Eigen::MatrixXcd mixed_derivatives(const Generator& alpha, double h) {
    int m = alpha.dim();
    Eigen::MatrixXcd D(m, m);
    for (int mu = 0; mu < m; ++mu) {
        for (int nu = 0; nu < m; ++nu) {
            Momentum e1 = Momentum::Zero(m);
            Momentum e2 = Momentum::Zero(m);
            e1[mu] = h;
            e2[nu] = h;
            Complex v = alpha(e1, e2) - alpha(-e1, e2) - alpha(e1, -e2) + alpha(-e1, -e2);
            D(mu, nu) = v / (4.0 * h * h);
        }
    }
    return D;
}

}  // namespace

Eigen::MatrixXcd commutator_matrix(const Generator& alpha, double fd_step) {
    if (auto A = harmonic_matrix(alpha)) {
        // Exact: Theta = -2i A; symmetric and coboundary pieces drop out.
        return Complex(0.0, -2.0) * A->cast<Complex>();
    }
    Eigen::MatrixXcd coarse = mixed_derivatives(alpha, fd_step);
    Eigen::MatrixXcd fine = mixed_derivatives(alpha, 0.5 * fd_step);
    Eigen::MatrixXcd D = (4.0 * fine - coarse) / 3.0;  // one Richardson level
    if (!D.allFinite())
        throw NumericError("commutator_matrix: non-finite derivative estimate");
    return D - D.transpose().eval();
}

// ----------------------------------------------------------------------------
// Witness recovery
// ----------------------------------------------------------------------------

LatticeCochain::LatticeCochain(GridSpec grid, Eigen::VectorXcd values,
                               double consistency_residual, double path_residual)
    : grid_(grid),
      values_(std::move(values)),
      consistency_residual_(consistency_residual),
      path_residual_(path_residual) {
    if (values_.size() != grid_.num_points())
        throw ParseError("LatticeCochain: value count != N^m");
}

Complex LatticeCochain::value_at(const Eigen::VectorXi& k) const {
    if (!grid_.contains(k)) throw std::out_of_range("LatticeCochain: k outside grid box");
    return values_[grid_.index_of(k)];
}

Complex LatticeCochain::operator()(const Momentum& p) const {
    Eigen::VectorXi k;
    if (!grid_.on_lattice(p, k))
        throw std::out_of_range("LatticeCochain: momentum " + format_momentum(p) +
                                " is not a lattice point of the recovery grid");
    return values_[grid_.index_of(k)];
}

OneCochain LatticeCochain::as_one_cochain() const {
    LatticeCochain copy = *this;
    return OneCochain([copy](const Momentum& p) { return copy(p); }, grid_.dim,
                      OneCochain::Kind::Tabulated, "witness");
}

LatticeCochain recover_witness(const Generator& alpha, const GridSpec& lattice,
                               const RecoverOptions& options) {
    if (alpha.dim() != lattice.dim)
        throw ParseError("recover_witness: generator/lattice dimension mismatch");
    const int m = lattice.dim;
    const int K = lattice.half();
    const double dp = lattice.momentum_step;

    // Precondition: [alpha] = 0, i.e. sampled harmonic part vanishes.
    {
        Rng rng(options.seed);
        double box = K * dp;
        double worst = 0.0;
        for (int i = 0; i < options.harmonic_samples; ++i) {
            Momentum p = rng.momentum(m, box);
            Momentum q = rng.momentum(m, box);
            Complex h = 0.5 * (alpha(p + q, q) - alpha(p + q, p));
            double scale = 1.0 + std::abs(alpha(p, q));
            worst = std::max(worst, std::abs(h) / scale);
        }
        if (worst > options.harmonic_tol)
            throw NotACoboundaryError(
                "recover_witness: '" + alpha.label() + "' has harmonic part with residual " +
                std::to_string(worst) + " > " + std::to_string(options.harmonic_tol) +
                "; it is not a coboundary");
    }

    Eigen::VectorXcd beta = Eigen::VectorXcd::Zero(lattice.num_points());

    // delta evaluated on lattice integer vectors.
    auto delta = [&](const Eigen::VectorXi& kp, const Eigen::VectorXi& kq) {
        return alpha(lattice.momentum_of(kp), lattice.momentum_of(kq));
    };

    // Axis-first fill. After axis mu, all points supported on axes 0..mu are set.
    for (int axis = 0; axis < m; ++axis) {
        // Base points: coordinates free on axes < axis, zero on axes >= axis.
        std::vector<Eigen::VectorXi> bases;
        if (axis == 0) {
            bases.push_back(Eigen::VectorXi::Zero(m));
        } else {
            for_each_in_box(axis, K, [&](const Eigen::VectorXi& sub) {
                Eigen::VectorXi b = Eigen::VectorXi::Zero(m);
                b.head(axis) = sub;
                bases.push_back(b);
            });
        }
        Eigen::VectorXi e_axis = Eigen::VectorXi::Zero(m);
        e_axis[axis] = 1;
        for (const auto& base : bases) {
            Eigen::VectorXi k = base;
            for (int step = 1; step <= K; ++step) {
                k[axis] = base[axis] + step;
                Eigen::VectorXi prev = k;
                prev[axis] -= 1;
                beta[lattice.index_of(k)] = beta[lattice.index_of(prev)] - delta(k, e_axis);
            }
            for (int step = 1; step <= K; ++step) {
                k[axis] = base[axis] - step;
                Eigen::VectorXi next = k;
                next[axis] += 1;
                beta[lattice.index_of(k)] = beta[lattice.index_of(next)] + delta(next, e_axis);
            }
        }
    }

    // Replay the coboundary relation on random lattice pairs.
    Rng rng(options.seed ^ 0x51D0F00Dull);
    double consistency = 0.0;
    for (int trial = 0; trial < options.consistency_pairs; ++trial) {
        Eigen::VectorXi kp(m), kq(m);
        for (int i = 0; i < m; ++i) {
            kp[i] = int(rng.uniform_int(-K, K));
            // constrain kp - kq into the box as well
            int lo = std::max(-K, kp[i] - K);
            int hi = std::min(K, kp[i] + K);
            kq[i] = int(rng.uniform_int(lo, hi));
        }
        Complex lhs = beta[lattice.index_of(kq)] - beta[lattice.index_of(kp)] +
                      beta[lattice.index_of((kp - kq).eval())];
        Complex rhs = delta(kp, kq);
        double scale = 1.0 + std::abs(rhs);
        consistency = std::max(consistency, std::abs(lhs - rhs) / scale);
    }

    // Alternative-path replay: rebuild beta(target) along a random staircase
    // from the origin and compare with the table.
    double path_residual = 0.0;
    for (int trial = 0; trial < options.alternative_paths; ++trial) {
        Eigen::VectorXi target(m);
        for (int i = 0; i < m; ++i) target[i] = int(rng.uniform_int(-K, K));
        Eigen::VectorXi pos = Eigen::VectorXi::Zero(m);
        Complex acc = 0.0;
        // Visit axes in a random order; within an axis walk monotonically.
        std::vector<int> order(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) order[std::size_t(i)] = i;
        for (int i = m - 1; i > 0; --i)
            std::swap(order[std::size_t(i)], order[std::size_t(rng.uniform_int(0, i))]);
        for (int axis : order) {
            Eigen::VectorXi e_axis = Eigen::VectorXi::Zero(m);
            e_axis[axis] = 1;
            while (pos[axis] < target[axis]) {
                pos[axis] += 1;
                acc -= delta(pos, e_axis);
            }
            while (pos[axis] > target[axis]) {
                Eigen::VectorXi from = pos;
                pos[axis] -= 1;
                acc += delta(from, e_axis);
            }
        }
        double scale = 1.0 + std::abs(beta[lattice.index_of(target)]);
        path_residual =
            std::max(path_residual, std::abs(acc - beta[lattice.index_of(target)]) / scale);
    }

    if (std::max(consistency, path_residual) > options.consistency_tol)
        throw InconsistentCoboundaryError(
            "recover_witness: coboundary replay residual " +
            std::to_string(std::max(consistency, path_residual)) + " > " +
            std::to_string(options.consistency_tol));

    return LatticeCochain(lattice, std::move(beta), consistency, path_residual);
}

HodgeDecomposition decompose(const Generator& alpha, const GridSpec& lattice,
                             const RecoverOptions& options) {
    Generator harmonic = harmonic_part(alpha);
    Generator coboundary_piece(
        [alpha, harmonic](const Momentum& p, const Momentum& q) {
            return alpha(p, q) - harmonic(p, q);
        },
        alpha.dim(), alpha.label() + " - harmonic");
    LatticeCochain witness = recover_witness(coboundary_piece, lattice, options);
    double residual = witness.consistency_residual();
    return HodgeDecomposition{std::move(harmonic), std::move(witness),
                              Eigen::VectorXcd::Zero(alpha.dim()), residual};
}

}  // namespace tistar
