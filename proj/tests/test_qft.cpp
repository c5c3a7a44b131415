#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"
#include "tistar/generators.hpp"
#include "tistar/qft.hpp"

#include <nlohmann/json.hpp>

using namespace tistar;
using tistar::testutil::mom;
using tistar::testutil::theta2;
using tistar::testutil::sym2;

namespace {

OneCochain small_poly(std::uint64_t seed, int dim = 2) {
    OneCochain raw = random_polynomial_cochain(dim, 3, seed);
    return OneCochain([raw](const Momentum& p) { return 0.05 * raw(p); }, dim,
                      OneCochain::Kind::Composite, "small_poly");
}

std::vector<Momentum> conserved_set(int dim, int count, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Momentum> ps;
    Momentum total = Momentum::Zero(dim);
    for (int i = 0; i + 1 < count; ++i) {
        ps.push_back(rng.momentum(dim, 0.5));
        total += ps.back();
    }
    ps.push_back(-total);
    return ps;
}

FeynmanGraph tree_graph(const std::vector<Momentum>& external) {
    FeynmanGraph g;
    g.dim = int(external.front().size());
    FeynmanGraph::Vertex v;
    for (std::size_t i = 0; i < external.size(); ++i) {
        g.lines.push_back({false, external[i]});
        v.legs.push_back(int(i));
    }
    g.vertices.push_back(v);
    return g;
}

FeynmanGraph tadpole_graph(const Momentum& p) {
    FeynmanGraph g;
    g.dim = int(p.size());
    g.lines.push_back({false, p});
    g.lines.push_back({true, Momentum()});
    g.lines.push_back({false, Momentum(-p)});
    g.vertices.push_back({{0, 1, 2, 1}});  // non-planar leg ordering
    return g;
}

}  // namespace

TEST_CASE("vertex_factor basics") {
    std::vector<Momentum> ps = conserved_set(2, 4, 3);
    CHECK(std::abs(vertex_exponent(zero_generator(2), ps)) == 0.0);
    CHECK(std::abs(vertex_factor(zero_generator(2), ps).value() - Complex(1.0, 0.0)) == 0.0);

    // For a coboundary with conserved momenta the exponent is sum beta(p^i).
    OneCochain beta = small_poly(5);
    Generator db = coboundary1(beta);
    Complex expected = 0.0;
    for (const auto& p : ps) expected += beta(p);
    CHECK(std::abs(vertex_exponent(db, ps) - expected) < 1e-12);

    std::vector<Momentum> one = {mom({0.5, 0.5})};
    CHECK_THROWS_AS(vertex_exponent(db, one), std::invalid_argument);
}

TEST_CASE("harmonic vertex equals the omega form") {
    Generator gm = make_moyal(theta2());
    Omega w = omega(gm);
    std::vector<Momentum> ps = conserved_set(2, 4, 7);
    Complex direct = vertex_exponent(gm, ps);
    Complex via_omega = 0.0;
    Momentum partial = Momentum::Zero(2);
    for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
        partial += ps[i];
        via_omega += 0.5 * w(partial, ps[i + 1]);
    }
    CHECK(std::abs(direct - via_omega) < 1e-12);
}

TEST_CASE("vertex cyclic consistency under momentum conservation") {
    std::vector<Momentum> ps = conserved_set(2, 4, 9);
    for (const Generator& alpha :
         {make_moyal(theta2()), make_wick_voros(theta2(), sym2()),
          coboundary1(small_poly(11))}) {
        Complex base = vertex_exponent(alpha, ps);
        std::vector<Momentum> rotated(ps.begin() + 1, ps.end());
        rotated.push_back(ps.front());
        Complex shifted = vertex_exponent(alpha, rotated);
        CHECK(std::abs(std::exp(base) - std::exp(shifted)) <
              1e-10 * (1.0 + std::abs(std::exp(base))));
    }
}

TEST_CASE("propagator_factor values") {
    Generator gm = make_moyal(theta2());
    CHECK(propagator_factor(gm, mom({0.7, -0.4})) == Complex(1.0, 0.0));
    CHECK(propagator_factor(zero_generator(2), mom({1.0, 2.0})) == Complex(1.0, 0.0));

    // beta(p) = p^2 in one dimension: e^{-d beta(0, 2)} = e^{-8}.
    std::vector<PolyTerm> terms = {{(Eigen::VectorXi(1) << 2).finished(), Complex(1.0, 0.0)}};
    Generator db = coboundary1(make_polynomial_cochain(terms, 1));
    CHECK(std::abs(propagator_factor(db, mom({2.0})) - Complex(std::exp(-8.0), 0.0)) < 1e-18);
}

TEST_CASE("coboundary factorization check") {
    // Base case k = 2 and the stated cubic case.
    std::vector<PolyTerm> cubic = {{(Eigen::VectorXi(1) << 3).finished(), Complex(1.0, 0.0)}};
    OneCochain beta3 = make_polynomial_cochain(cubic, 1);
    CHECK(coboundary_factorization_check(beta3, 2, 50).pass);
    CHECK(coboundary_factorization_check(beta3, 4, 100).pass);

    std::vector<PolyTerm> linear = {{(Eigen::VectorXi(1) << 1).finished(), Complex(0.7, 0.0)}};
    CHECK(coboundary_factorization_check(make_polynomial_cochain(linear, 1), 3, 50).pass);

    CHECK(coboundary_factorization_check(small_poly(13), 5, 100).pass);
    CHECK_THROWS_AS(coboundary_factorization_check(beta3, 1, 10), std::invalid_argument);
}

TEST_CASE("nonplanar self-energy reductions") {
    LoopConfig cfg(GridSpec(2, 9, 0.5), 1.0);
    Momentum p = mom({1.0, -0.5});

    // alpha = 0 reduces to the plain Euclidean sum.
    Complex plain = nonplanar_selfenergy(zero_generator(2), p, cfg);
    Complex expected = 0.0;
    for_each_in_box(2, 4, [&](const Eigen::VectorXi& kq) {
        Momentum q = 0.5 * kq.cast<double>();
        expected += 1.0 / (q.squaredNorm() + 1.0);
    });
    expected *= std::pow(0.5 / (2.0 * M_PI), 2.0) / std::pow(p.squaredNorm() + 1.0, 2.0);
    CHECK(std::abs(plain - expected) < 1e-14 * std::abs(expected) + 1e-18);

    // Cohomologous shift rescales by e^{-beta(p)-beta(-p)} exactly.
    OneCochain beta = small_poly(17);
    Generator base = make_moyal(theta2());
    Generator shifted = make_sum(base, coboundary1(beta));
    Complex ratio = nonplanar_selfenergy(shifted, p, cfg) / nonplanar_selfenergy(base, p, cfg);
    Complex closed = std::exp(-beta(p) - beta(-p));
    CHECK(std::abs(ratio - closed) < 1e-12 * std::abs(closed));

    // Oscillatory omega damps the sum relative to the commutative product.
    for (int k = 1; k <= 4; ++k) {
        Momentum scan = mom({0.5 * k, 0.25});
        CHECK(std::abs(nonplanar_selfenergy(base, scan, cfg)) <=
              std::abs(nonplanar_selfenergy(zero_generator(2), scan, cfg)) + 1e-15);
    }
}

TEST_CASE("graph parsing and routing") {
    nlohmann::json j = nlohmann::json::parse(R"({
        "dim": 2,
        "lines": [
            {"type": "external", "momentum": [0.5, 0.0]},
            {"type": "internal"},
            {"type": "external", "momentum": [-0.5, 0.0]}
        ],
        "vertices": [{"legs": [0, 1, 2, 1]}]
    })");
    FeynmanGraph tadpole = parse_graph(j);
    MomentumRouting routing = route_momenta(tadpole);
    CHECK(routing.loop_count == 1);

    FeynmanGraph tree = tree_graph(conserved_set(2, 3, 19));
    CHECK(route_momenta(tree).loop_count == 0);

    // Unconserved external momenta are rejected.
    FeynmanGraph bad = tree;
    bad.lines[0].external_momentum[0] += 0.25;
    CHECK_THROWS_AS(route_momenta(bad), ParseError);

    // A line with three endpoint slots is rejected.
    FeynmanGraph three_slots = tadpole;
    three_slots.vertices[0].legs.push_back(1);
    CHECK_THROWS_AS(route_momenta(three_slots), ParseError);
}

TEST_CASE("tree amplitude with alpha = 0 is the pure kinetic product") {
    std::vector<Momentum> ext = conserved_set(2, 4, 23);
    FeynmanGraph g = tree_graph(ext);
    LoopConfig cfg(GridSpec(2, 9, 0.5), 1.0);
    Amplitude amp = graph_amplitude(g, zero_generator(2), cfg);
    Complex expected = 1.0;
    for (const auto& p : ext) expected /= Complex(p.squaredNorm() + 1.0, 0.0);
    CHECK(std::abs(amp.value - expected) < 1e-13 * std::abs(expected));
}

TEST_CASE("tree amplitude ratio matches the external-leg exponent") {
    std::vector<Momentum> ext = conserved_set(2, 4, 29);
    FeynmanGraph g = tree_graph(ext);
    LoopConfig cfg(GridSpec(2, 9, 0.5), 1.0);
    OneCochain beta = small_poly(31);
    Generator db = coboundary1(beta);
    Amplitude a1 = graph_amplitude(g, db, cfg);
    Amplitude a0 = graph_amplitude(g, zero_generator(2), cfg);
    Complex ratio = std::exp(Complex(a1.log_abs - a0.log_abs, a1.arg - a0.arg));
    Complex closed = 1.0;
    for (const auto& p : ext) closed *= std::exp(-beta(-p));
    CHECK(std::abs(ratio - closed) < 1e-10 * std::abs(closed));
}

TEST_CASE("tadpole graph reproduces nonplanar_selfenergy") {
    Momentum p = mom({0.5, -0.25});
    FeynmanGraph g = tadpole_graph(p);
    LoopConfig cfg(GridSpec(2, 9, 0.5), 1.0);
    for (const Generator& alpha : {make_moyal(theta2()), make_wick_voros(theta2(), sym2())}) {
        Amplitude amp = graph_amplitude(g, alpha, cfg);
        Complex direct = nonplanar_selfenergy(alpha, p, cfg);
        CHECK(std::abs(amp.value - direct) < 1e-12 * std::abs(direct));
    }
}

TEST_CASE("loop budget violations raise BudgetError") {
    FeynmanGraph g = tadpole_graph(mom({0.5, -0.25}));
    LoopConfig cfg(GridSpec(2, 31, 0.5), 1.0);
    cfg.max_loop_points = 100;  // 31^2 = 961 > 100
    CHECK_THROWS_AS(graph_amplitude(g, make_moyal(theta2()), cfg), BudgetError);
}
