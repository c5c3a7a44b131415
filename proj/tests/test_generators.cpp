#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"
#include "tistar/generators.hpp"

#include <nlohmann/json.hpp>

using namespace tistar;
using tistar::testutil::mom;
using tistar::testutil::theta2;
using tistar::testutil::sym2;

TEST_CASE("make_moyal frozen evaluation") {
    Generator gm = make_moyal(theta2());
    // i (q1 p2 - q2 p1) at p=(1,0), q=(0,1) is -i.
    CHECK(std::abs(gm(mom({1, 0}), mom({0, 1})) - Complex(0.0, -1.0)) < 1e-15);
    CHECK(gm(mom({0.4, 0.7}), mom({0, 0})) == Complex(0.0, 0.0));
    Generator flat = make_moyal(Eigen::MatrixXd::Zero(2, 2));
    CHECK(flat(mom({1, 2}), mom({3, 4})) == Complex(0.0, 0.0));
}

TEST_CASE("make_wick_voros frozen evaluation") {
    Generator wv = make_wick_voros(theta2(), Eigen::MatrixXd::Identity(2, 2));
    // alpha = -i + (0,1).(1,-1) = -1 - i.
    CHECK(std::abs(wv(mom({1, 0}), mom({0, 1})) - Complex(-1.0, -1.0)) < 1e-15);

    Generator wv0 = make_wick_voros(theta2(), Eigen::MatrixXd::Zero(2, 2));
    Generator gm = make_moyal(theta2());
    Rng rng(5);
    for (int i = 0; i < 20; ++i) {
        Momentum p = rng.momentum(2, 2.0);
        Momentum q = rng.momentum(2, 2.0);
        CHECK(wv0(p, q) == gm(p, q));
        CHECK(std::abs(wv(p, p)) == 0.0);  // unitality on the diagonal
    }
}

TEST_CASE("matrix symmetry validation") {
    Eigen::MatrixXd not_antisym(2, 2);
    not_antisym << 0, 1, 1, 0;
    CHECK_THROWS_AS(make_moyal(not_antisym), ParseError);
    Eigen::MatrixXd not_sym(2, 2);
    not_sym << 0, 1, -1, 0;
    CHECK_THROWS_AS(make_wick_voros(theta2(), not_sym), ParseError);
}

TEST_CASE("make_sum evaluates pointwise") {
    OneCochain beta = random_polynomial_cochain(2, 3, 17);
    Generator gm = make_moyal(theta2());
    Generator db = coboundary1(beta);
    Generator s = make_sum(gm, db);
    Rng rng(19);
    for (int i = 0; i < 20; ++i) {
        Momentum p = rng.momentum(2, 2.0);
        Momentum q = rng.momentum(2, 2.0);
        CHECK(std::abs(s(p, q) - gm(p, q) - db(p, q)) < 1e-14);
    }
    CHECK_THROWS_AS(make_sum(gm, make_moyal(Eigen::MatrixXd::Zero(3, 3))), ParseError);
}

TEST_CASE("every constructed family passes is_cocycle and is_unital") {
    SampleSet triples = SampleSet::triples(2, 500, 2.0, 23);
    SampleSet pairs = SampleSet::pairs(2, 500, 2.0, 29);
    OneCochain beta = random_polynomial_cochain(2, 3, 31);
    for (const Generator& alpha :
         {make_moyal(theta2()), make_wick_voros(theta2(), sym2()), coboundary1(beta),
          make_sum(make_wick_voros(theta2(), sym2()), coboundary1(beta))}) {
        CHECK(is_cocycle(alpha, triples, 1e-9).pass);
        CHECK(is_unital(alpha, pairs, 1e-9).pass);
    }
}

TEST_CASE("Moyal and Wick-Voros differ by a commutative generator") {
    Generator gm = make_moyal(theta2());
    Generator wv = make_wick_voros(theta2(), sym2());
    Generator diff(
        [gm, wv](const Momentum& p, const Momentum& q) { return wv(p, q) - gm(p, q); }, 2,
        "wv-gm");
    CHECK(is_commutative(diff, SampleSet::pairs(2, 300, 2.0, 37)).pass);
}

TEST_CASE("generator spec round trip for a moyal form") {
    Generator gm = make_moyal(theta2());
    nlohmann::json j = generator_to_json(gm);
    Generator back = parse_generator(j);
    Rng rng(41);
    for (int i = 0; i < 30; ++i) {
        Momentum p = rng.momentum(2, 2.0);
        Momentum q = rng.momentum(2, 2.0);
        CHECK(std::abs(back(p, q) - gm(p, q)) < 1e-15);
    }
}

TEST_CASE("generator spec parsing errors") {
    CHECK_THROWS_AS(parse_generator(nlohmann::json::parse(R"({"kind":"moyal","dim":2})")),
                    nlohmann::json::exception);
    CHECK_THROWS_AS(parse_generator(nlohmann::json::parse(
                        R"({"kind":"moyal","dim":2,"theta_A":[[0,1],[1,0]]})")),
                    ParseError);
    CHECK_THROWS_AS(parse_generator(nlohmann::json::parse(
                        R"({"kind":"moyal","dim":2,"theta_A":[[0,1,0],[-1,0,0]]})")),
                    ParseError);
    CHECK_THROWS_AS(parse_generator(nlohmann::json::parse(R"({"kind":"mystery","dim":2})")),
                    ParseError);
    // Constant term in beta violates beta(0) = 0.
    CHECK_THROWS_AS(parse_generator(nlohmann::json::parse(
                        R"({"kind":"coboundary","dim":1,"beta":[[[0],1.0,0.0]]})")),
                    ParseError);
}

TEST_CASE("parsing the full spec grammar") {
    nlohmann::json j = nlohmann::json::parse(R"({
        "kind": "sum", "dim": 2,
        "terms": [
            {"kind": "moyal", "dim": 2, "theta_A": [[0,1],[-1,0]]},
            {"kind": "coboundary", "dim": 2, "beta": [[[2,0], 0.5, 0.0], [[1,1], 0.0, 0.25]]}
        ]})");
    Generator g = parse_generator(j);
    CHECK(g.dim() == 2);
    CHECK(is_cocycle(g, SampleSet::triples(2, 200, 2.0, 43)).pass);
}

TEST_CASE("random polynomial cochains are reproducible and vanish at zero") {
    OneCochain a = random_polynomial_cochain(3, 4, 101);
    OneCochain b = random_polynomial_cochain(3, 4, 101);
    CHECK(std::abs(a(Momentum::Zero(3))) == 0.0);
    Rng rng(47);
    for (int i = 0; i < 20; ++i) {
        Momentum p = rng.momentum(3, 2.0);
        CHECK(a(p) == b(p));
    }
}
