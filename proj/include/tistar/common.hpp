#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace tistar {

using Complex = std::complex<double>;
using Momentum = Eigen::VectorXd;

// ----------------------------------------------------------------------------
// Errors. exit_code mirrors the CLI contract: 1 check failure, 2 parse/usage,
// 3 budget, 4 numeric.
// ----------------------------------------------------------------------------

class Error : public std::runtime_error {
public:
    Error(std::string msg, int exit_code)
        : std::runtime_error(std::move(msg)), exit_code_(exit_code) {}
    int exit_code() const { return exit_code_; }

private:
    int exit_code_;
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error(msg, 2) {}
};

class BudgetError : public Error {
public:
    explicit BudgetError(const std::string& msg) : Error(msg, 3) {}
};

class NumericError : public Error {
public:
    explicit NumericError(const std::string& msg) : Error(msg, 4) {}
};

// Domain-level failures (a generator that is not what the operation needs).
class NotACocycleError : public Error {
public:
    explicit NotACocycleError(const std::string& msg) : Error(msg, 1) {}
};

class NotACoboundaryError : public Error {
public:
    explicit NotACoboundaryError(const std::string& msg) : Error(msg, 1) {}
};

class InconsistentCoboundaryError : public Error {
public:
    explicit InconsistentCoboundaryError(const std::string& msg) : Error(msg, 1) {}
};

// Largest |Re exponent| fed to exp(); beyond this a product has left
// double range and the run must abort rather than return garbage.
inline constexpr double kMaxExponent = 700.0;

inline Complex checked_exp(Complex exponent, const char* where) {
    if (!std::isfinite(exponent.real()) || !std::isfinite(exponent.imag()))
        throw NumericError(std::string(where) + ": non-finite exponent");
    if (std::abs(exponent.real()) > kMaxExponent)
        throw NumericError(std::string(where) + ": |Re exponent| = " +
                           std::to_string(std::abs(exponent.real())) + " exceeds 700");
    return std::exp(exponent);
}

// ----------------------------------------------------------------------------
// Deterministic RNG. std::mt19937_64 for the stream, but the uint64->double
// mapping is done by hand so sequences do not depend on the stdlib's
// distribution implementations.
// ----------------------------------------------------------------------------

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9E3779B97F4A7C15ull) {}

    std::uint64_t next_u64() {
        // splitmix64
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    double uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [-radius, radius].
    double uniform_sym(double radius) { return (2.0 * uniform01() - 1.0) * radius; }

    // Uniform integer in [lo, hi].
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        return lo + std::int64_t(next_u64() % std::uint64_t(hi - lo + 1));
    }

    Momentum momentum(int dim, double radius) {
        Momentum p(dim);
        for (int i = 0; i < dim; ++i) p[i] = uniform_sym(radius);
        return p;
    }

private:
    std::uint64_t state_;
};

// ----------------------------------------------------------------------------
// Thread pool knob + deterministic block-parallel loop. Workers own disjoint
// index ranges; any reduction over results must walk blocks in index order.
// ----------------------------------------------------------------------------

int max_threads();
void set_max_threads(int n);

// Runs fn(begin, end) over a partition of [0, n); fn must only write to
// per-index slots (or otherwise stay disjoint across blocks).
void parallel_for(std::int64_t n, const std::function<void(std::int64_t, std::int64_t)>& fn);

// Fixed-count block partition of [0, n): fn(block, begin, end) runs once per
// block, possibly concurrently. Block boundaries depend only on n and
// n_blocks, never on the thread cap, so block-ordered reductions give
// identical results at any --threads setting.
void parallel_for_blocks(std::int64_t n, int n_blocks,
                         const std::function<void(int, std::int64_t, std::int64_t)>& fn);

// ----------------------------------------------------------------------------
// Odometer over the integer box [-radius, radius]^dim in row-major order
// (axis 0 slowest). Visits every point exactly once.
// ----------------------------------------------------------------------------

template <typename Fn>
void for_each_in_box(int dim, int radius, Fn&& fn) {
    Eigen::VectorXi k = Eigen::VectorXi::Constant(dim, -radius);
    while (true) {
        fn(static_cast<const Eigen::VectorXi&>(k));
        int axis = dim - 1;
        while (axis >= 0) {
            if (++k[axis] <= radius) break;
            k[axis] = -radius;
            --axis;
        }
        if (axis < 0) return;
    }
}

inline std::string format_momentum(const Momentum& p) {
    std::string s = "(";
    for (int i = 0; i < p.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(p[i]);
    }
    return s + ")";
}

}  // namespace tistar
