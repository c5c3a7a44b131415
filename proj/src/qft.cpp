#include "tistar/qft.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <limits>
#include <vector>

namespace tistar {

KineticSymbol KineticSymbol::euclidean(double mass2) {
    if (!(mass2 > 0.0)) throw ParseError("KineticSymbol::euclidean: mass2 must be > 0");
    return KineticSymbol{[mass2](const Momentum& p) -> Complex {
        return Complex(p.squaredNorm() + mass2, 0.0);
    }};
}

Complex LogComplex::value() const {
    if (log_abs == -std::numeric_limits<double>::infinity()) return Complex(0.0, 0.0);
    return checked_exp(Complex(log_abs, arg), "LogComplex::value");
}

Complex vertex_exponent(const Generator& alpha, std::span<const Momentum> momenta) {
    if (momenta.size() < 2)
        throw std::invalid_argument("vertex_exponent: a vertex needs at least 2 legs");
    Momentum partial = momenta[0];
    Complex acc = 0.0;
    for (std::size_t i = 1; i < momenta.size(); ++i) {
        Momentum prev = partial;
        partial += momenta[i];
        acc += alpha(partial, prev);
    }
    return acc;
}

LogComplex vertex_factor(const Generator& alpha, std::span<const Momentum> momenta) {
    return LogComplex::from_exponent(vertex_exponent(alpha, momenta));
}

Complex propagator_exponent(const Generator& alpha, const Momentum& p) {
    return -alpha(Momentum::Zero(alpha.dim()), p);
}

Complex propagator_factor(const Generator& alpha, const Momentum& p) {
    return checked_exp(propagator_exponent(alpha, p), "propagator_factor");
}

PredicateReport coboundary_factorization_check(const OneCochain& beta, int k, int trials,
                                               double box_radius, std::uint64_t seed,
                                               double tol) {
    if (k < 2) throw std::invalid_argument("coboundary_factorization_check: k >= 2");
    if (trials < 1) throw std::invalid_argument("coboundary_factorization_check: trials >= 1");
    const int m = beta.dim();
    Generator dbeta = coboundary1(beta);
    Rng rng(seed);
    PredicateReport r;
    r.name = "coboundary_factorization";
    r.tolerance = tol;
    std::vector<Momentum> worst;
    for (int trial = 0; trial < trials; ++trial) {
        // Unconstrained momenta: telescope against sum beta(p^i) - beta(sum p^i).
        std::vector<Momentum> ps;
        Momentum total = Momentum::Zero(m);
        for (int i = 0; i < k; ++i) {
            ps.push_back(rng.momentum(m, box_radius));
            total += ps.back();
        }
        Complex lhs = vertex_exponent(dbeta, ps);
        Complex rhs = 0.0;
        for (const auto& p : ps) rhs += beta(p);
        rhs -= beta(total);
        double scale = 1.0 + std::max(std::abs(lhs), std::abs(rhs));
        double res = std::abs(lhs - rhs) / scale;

        // Conserved momenta: vertex exponent reduces to sum beta(p^i).
        ps.back() -= total;
        Complex lhs_c = vertex_exponent(dbeta, ps);
        Complex rhs_c = 0.0;
        for (const auto& p : ps) rhs_c += beta(p);
        double scale_c = 1.0 + std::max(std::abs(lhs_c), std::abs(rhs_c));
        res = std::max(res, std::abs(lhs_c - rhs_c) / scale_c);

        if (res > r.max_residual) {
            r.max_residual = res;
            worst = ps;
        }
    }
    r.pass = r.max_residual <= tol;
    r.worst_point = std::move(worst);
    return r;
}

Complex nonplanar_selfenergy(const Generator& alpha, const Momentum& p, const LoopConfig& cfg) {
    if (alpha.dim() != cfg.grid.dim)
        throw ParseError("nonplanar_selfenergy: generator/grid dimension mismatch");
    if (p.size() != cfg.grid.dim)
        throw ParseError("nonplanar_selfenergy: momentum dimension mismatch");
    const GridSpec& grid = cfg.grid;
    Omega w = omega(alpha);
    Complex ext_exponent = -alpha(Momentum::Zero(alpha.dim()), p);
    double ext_denominator = std::pow(p.squaredNorm() + cfg.mass2, 2.0);
    double measure = std::pow(grid.momentum_step / (2.0 * M_PI), double(grid.dim));

    const std::int64_t n = grid.num_points();
    constexpr int kBlocks = 16;
    std::vector<Complex> block_sums(kBlocks, Complex(0.0, 0.0));
    parallel_for_blocks(n, kBlocks, [&](int block, std::int64_t begin, std::int64_t end) {
        Complex acc = 0.0;
        for (std::int64_t i = begin; i < end; ++i) {
            Momentum q = grid.momentum_of(grid.k_of_index(i));
            Complex weight = checked_exp(ext_exponent + w(p, q), "nonplanar_selfenergy");
            acc += weight / (q.squaredNorm() + cfg.mass2);
        }
        block_sums[std::size_t(block)] = acc;
    });
    Complex total = 0.0;
    for (const auto& s : block_sums) total += s;  // fixed block order
    return total * measure / ext_denominator;
}

// ----------------------------------------------------------------------------
// Graph parsing and routing
// ----------------------------------------------------------------------------

FeynmanGraph parse_graph(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("graph: expected a JSON object");
    FeynmanGraph g;
    g.dim = j.at("dim").get<int>();
    if (g.dim < 1) throw ParseError("graph: dim must be >= 1");
    for (const auto& lj : j.at("lines")) {
        FeynmanGraph::Line line;
        std::string type = lj.at("type").get<std::string>();
        if (type == "internal") {
            line.internal = true;
        } else if (type == "external") {
            line.internal = false;
            const auto& mom = lj.at("momentum");
            if (int(mom.size()) != g.dim)
                throw ParseError("graph: external momentum length != dim");
            line.external_momentum = Momentum(g.dim);
            for (int i = 0; i < g.dim; ++i) line.external_momentum[i] = mom[i].get<double>();
        } else {
            throw ParseError("graph: line type must be 'internal' or 'external'");
        }
        g.lines.push_back(std::move(line));
    }
    for (const auto& vj : j.at("vertices")) {
        FeynmanGraph::Vertex v;
        for (const auto& leg : vj.at("legs")) {
            int id = leg.get<int>();
            if (id < 0 || id >= int(g.lines.size()))
                throw ParseError("graph: vertex references unknown line id");
            v.legs.push_back(id);
        }
        if (v.legs.size() < 2) throw ParseError("graph: a vertex needs at least 2 legs");
        g.vertices.push_back(std::move(v));
    }
    if (g.vertices.empty()) throw ParseError("graph: no vertices");
    return g;
}

FeynmanGraph parse_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open graph file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("graph file '" + path + "': " + e.what());
    }
    return parse_graph(j);
}

MomentumRouting route_momenta(const FeynmanGraph& graph) {
    const int m = graph.dim;
    const int V = int(graph.vertices.size());

    // Index internal lines; count slot occurrences.
    std::vector<int> internal_index(graph.lines.size(), -1);
    std::vector<int> internal_lines;
    for (int id = 0; id < int(graph.lines.size()); ++id) {
        if (graph.lines[id].internal) {
            internal_index[std::size_t(id)] = int(internal_lines.size());
            internal_lines.push_back(id);
        }
    }
    const int I = int(internal_lines.size());

    std::vector<int> occurrences(graph.lines.size(), 0);
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(V, std::max(I, 1));
    Eigen::MatrixXd R = Eigen::MatrixXd::Zero(V, m);
    MomentumRouting routing;
    routing.internal_lines = internal_lines;
    routing.vertex_legs.resize(std::size_t(V));

    Momentum external_total = Momentum::Zero(m);
    for (int v = 0; v < V; ++v) {
        for (int id : graph.vertices[std::size_t(v)].legs) {
            const auto& line = graph.lines[std::size_t(id)];
            MomentumRouting::LegRef ref;
            if (line.internal) {
                int occ = occurrences[std::size_t(id)]++;
                if (occ >= 2)
                    throw ParseError("graph: internal line " + std::to_string(id) +
                                     " has more than two endpoints");
                ref.external = false;
                ref.internal_index = internal_index[std::size_t(id)];
                ref.sign = occ == 0 ? 1.0 : -1.0;
                M(v, ref.internal_index) += ref.sign;
            } else {
                int occ = occurrences[std::size_t(id)]++;
                if (occ >= 1)
                    throw ParseError("graph: external line " + std::to_string(id) +
                                     " attached to more than one slot");
                ref.external = true;
                ref.momentum = line.external_momentum;
                R.row(v) -= line.external_momentum.transpose();
                external_total += line.external_momentum;
            }
            routing.vertex_legs[std::size_t(v)].push_back(std::move(ref));
        }
    }
    for (int id = 0; id < int(graph.lines.size()); ++id) {
        int expected = graph.lines[std::size_t(id)].internal ? 2 : 1;
        if (occurrences[std::size_t(id)] != expected)
            throw ParseError("graph: line " + std::to_string(id) + " has " +
                             std::to_string(occurrences[std::size_t(id)]) +
                             " endpoint slots, expected " + std::to_string(expected));
    }
    if (external_total.cwiseAbs().maxCoeff() > 1e-10)
        throw ParseError("graph: external momenta do not sum to zero");

    if (I == 0) {
        for (int v = 0; v < V; ++v)
            if (R.row(v).cwiseAbs().maxCoeff() > 1e-10)
                throw ParseError("graph: momentum unconserved at vertex " + std::to_string(v));
        routing.loop_count = 0;
        routing.loop_coeffs = Eigen::MatrixXd::Zero(0, 0);
        return routing;
    }

    Eigen::FullPivLU<Eigen::MatrixXd> lu(M.leftCols(I));
    lu.setThreshold(1e-10);
    Eigen::MatrixXd particular = lu.solve(R);  // I x m
    if (((M.leftCols(I) * particular) - R).cwiseAbs().maxCoeff() >
        1e-9 * (1.0 + R.cwiseAbs().maxCoeff()))
        throw ParseError("graph: momentum conservation system is inconsistent");
    int L = int(lu.dimensionOfKernel());
    Eigen::MatrixXd kernel =
        L > 0 ? Eigen::MatrixXd(lu.kernel()) : Eigen::MatrixXd::Zero(I, 0);

    // Normalize kernel columns to a largest entry of +1 and snap near-integers
    // so the loop variables line up with lattice momenta.
    for (int c = 0; c < L; ++c) {
        Eigen::Index pivot = 0;
        kernel.col(c).cwiseAbs().maxCoeff(&pivot);
        kernel.col(c) /= kernel(pivot, c);
        for (int r = 0; r < I; ++r) {
            double rounded = std::round(kernel(r, c));
            if (std::abs(kernel(r, c) - rounded) < 1e-9) kernel(r, c) = rounded;
        }
    }

    routing.loop_count = L;
    routing.loop_coeffs = kernel;
    routing.fixed_part.reserve(std::size_t(I));
    for (int l = 0; l < I; ++l) routing.fixed_part.push_back(particular.row(l).transpose());
    return routing;
}

// ----------------------------------------------------------------------------
// Amplitude assembly
// ----------------------------------------------------------------------------

namespace {

struct LoopTermEvaluator {
    const MomentumRouting& routing;
    const Generator& alpha;
    const GridSpec& grid;
    double mass2;
    Momentum zero;

    // Complex exponent of the loop term (vertex factors, internal propagator
    // star factors, internal kinetic denominators) at a flattened loop index.
    Complex exponent_at(std::int64_t flat) const {
        const int L = routing.loop_count;
        const int I = int(routing.internal_lines.size());
        std::vector<Momentum> loops(static_cast<std::size_t>(L));
        for (int j = L - 1; j >= 0; --j) {
            std::int64_t n = grid.num_points();
            loops[std::size_t(j)] = grid.momentum_of(grid.k_of_index(flat % n));
            flat /= n;
        }
        std::vector<Momentum> internal(static_cast<std::size_t>(I));
        for (int l = 0; l < I; ++l) {
            Momentum k = routing.fixed_part[std::size_t(l)];
            for (int j = 0; j < L; ++j) k += routing.loop_coeffs(l, j) * loops[std::size_t(j)];
            internal[std::size_t(l)] = std::move(k);
        }
        Complex exponent = 0.0;
        for (const auto& legs : routing.vertex_legs) {
            std::vector<Momentum> ps;
            ps.reserve(legs.size());
            for (const auto& ref : legs) {
                if (ref.external)
                    ps.push_back(ref.momentum);
                else
                    ps.push_back(ref.sign * internal[std::size_t(ref.internal_index)]);
            }
            exponent += vertex_exponent(alpha, ps);
        }
        for (const auto& k : internal) {
            exponent -= alpha(zero, k);
            exponent -= std::log(k.squaredNorm() + mass2);
        }
        return exponent;
    }
};

}  // namespace

Amplitude graph_amplitude(const FeynmanGraph& graph, const Generator& alpha,
                          const LoopConfig& cfg) {
    if (graph.dim != alpha.dim() || graph.dim != cfg.grid.dim)
        throw ParseError("graph_amplitude: dimension mismatch between graph/generator/grid");
    MomentumRouting routing = route_momenta(graph);

    const int L = routing.loop_count;
    std::int64_t total_points = 1;
    for (int j = 0; j < L; ++j) {
        if (total_points > cfg.max_loop_points / cfg.grid.num_points() + 1)
            throw BudgetError("graph_amplitude: loop lattice exceeds budget");
        total_points *= cfg.grid.num_points();
    }
    if (total_points > cfg.max_loop_points)
        throw BudgetError("graph_amplitude: loop lattice exceeds budget (" +
                          std::to_string(total_points) + " points)");

    Momentum zero = Momentum::Zero(graph.dim);
    Complex external_exponent = 0.0;
    for (const auto& line : graph.lines) {
        if (line.internal) continue;
        external_exponent -= alpha(zero, line.external_momentum);
        external_exponent -= std::log(line.external_momentum.squaredNorm() + cfg.mass2);
    }
    // Loop measure (dp / 2 pi)^m per loop variable.
    double measure_log = double(L) * double(graph.dim) *
                         std::log(cfg.grid.momentum_step / (2.0 * M_PI));

    LoopTermEvaluator eval{routing, alpha, cfg.grid, cfg.mass2, zero};
    constexpr int kBlocks = 16;

    // Pass 1: the largest real exponent, for stable rescaling.
    std::vector<double> block_max(kBlocks, -std::numeric_limits<double>::infinity());
    parallel_for_blocks(total_points, kBlocks,
                        [&](int block, std::int64_t begin, std::int64_t end) {
                            double local = -std::numeric_limits<double>::infinity();
                            for (std::int64_t i = begin; i < end; ++i)
                                local = std::max(local, eval.exponent_at(i).real());
                            block_max[std::size_t(block)] = local;
                        });
    double mstar = -std::numeric_limits<double>::infinity();
    for (double b : block_max) mstar = std::max(mstar, b);
    if (!std::isfinite(mstar))
        throw NumericError("graph_amplitude: non-finite loop exponents");

    // Pass 2: rescaled sum, blocks reduced in index order.
    std::vector<Complex> block_sums(kBlocks, Complex(0.0, 0.0));
    parallel_for_blocks(total_points, kBlocks,
                        [&](int block, std::int64_t begin, std::int64_t end) {
                            Complex acc = 0.0;
                            for (std::int64_t i = begin; i < end; ++i)
                                acc += std::exp(eval.exponent_at(i) - mstar);
                            block_sums[std::size_t(block)] = acc;
                        });
    Complex rescaled_sum = 0.0;
    for (const auto& s : block_sums) rescaled_sum += s;

    Amplitude amp;
    if (rescaled_sum == Complex(0.0, 0.0)) {
        amp.log_abs = -std::numeric_limits<double>::infinity();
        amp.arg = 0.0;
        amp.value = Complex(0.0, 0.0);
        return amp;
    }
    amp.log_abs = mstar + std::log(std::abs(rescaled_sum)) + external_exponent.real() +
                  measure_log;
    amp.arg = std::arg(rescaled_sum) + external_exponent.imag();
    amp.value = LogComplex{amp.log_abs, amp.arg}.value();
    return amp;
}

}  // namespace tistar
