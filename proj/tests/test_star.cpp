#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"
#include "tistar/equivalence.hpp"
#include "tistar/generators.hpp"
#include "tistar/star.hpp"

#include <cstdio>

using namespace tistar;
using tistar::testutil::mom;
using tistar::testutil::theta2;
using tistar::testutil::sym2;

namespace {
GridSpec grid9() { return GridSpec(2, 9, 0.5); }
}  // namespace

TEST_CASE("star with alpha = 0 is the plain convolution") {
    GridSpec grid = grid9();
    BandlimitedField f = BandlimitedField::random(grid, 1, 1);
    BandlimitedField g = BandlimitedField::random(grid, 1, 2);
    BandlimitedField product = star(f, g, zero_generator(2));
    for_each_in_box(2, 2, [&](const Eigen::VectorXi& k_out) {
        Complex expected = 0.0;
        for_each_in_box(2, 1, [&](const Eigen::VectorXi& k_f) {
            expected += f.coeff(k_f) * g.coeff((k_out - k_f).eval());
        });
        CHECK(std::abs(product.coeff(k_out) - expected) < 1e-14);
    });
}

TEST_CASE("unit field is the identity on both sides") {
    GridSpec grid = grid9();
    BandlimitedField one = BandlimitedField::unit(grid);
    BandlimitedField g = BandlimitedField::random(grid, 2, 3);
    Generator wv = make_wick_voros(theta2(), sym2());
    BandlimitedField left = star(one, g, wv);
    BandlimitedField right = star(g, one, wv);
    for (std::int64_t i = 0; i < g.coeffs().size(); ++i) {
        CHECK(std::abs(left.coeffs()[i] - g.coeffs()[i]) < 1e-14);
        CHECK(std::abs(right.coeffs()[i] - g.coeffs()[i]) < 1e-14);
    }
}

TEST_CASE("single modes multiply to one output mode with the alpha weight") {
    GridSpec grid = grid9();
    Eigen::VectorXi kp(2), kq(2);
    kp << 2, -1;
    kq << -1, 2;
    BandlimitedField fp = BandlimitedField::single_mode(grid, kp);
    BandlimitedField fq = BandlimitedField::single_mode(grid, kq);
    Generator wv = make_wick_voros(theta2(), sym2());
    BandlimitedField product = star(fp, fq, wv);
    Momentum p = grid.momentum_of(kp);
    Momentum q = grid.momentum_of(kq);
    Complex expected = std::exp(wv(p + q, p));
    CHECK(std::abs(product.coeff((kp + kq).eval()) - expected) < 1e-14);
    CHECK(product.support_radius() <= (kp + kq).cwiseAbs().maxCoeff());
    // Every other coefficient vanishes.
    double off_mode = 0.0;
    for (std::int64_t i = 0; i < product.coeffs().size(); ++i)
        if (i != grid.index_of((kp + kq).eval()))
            off_mode = std::max(off_mode, std::abs(product.coeffs()[i]));
    CHECK(off_mode == 0.0);
}

TEST_CASE("integrate: unit field gives the box volume; harmonic products integrate freely") {
    GridSpec grid = grid9();
    CHECK(integrate(BandlimitedField::unit(grid)) ==
          Complex(std::pow(2.0 * M_PI / 0.5, 2.0), 0.0));

    BandlimitedField f = BandlimitedField::random(grid, 2, 5);
    BandlimitedField g = BandlimitedField::random(grid, 2, 6);
    Generator gm = make_moyal(theta2());
    Complex starred = integrate(star(f, g, gm));
    Complex plain = integrate(star(f, g, zero_generator(2)));
    CHECK(std::abs(starred - plain) < 1e-12 * (1.0 + std::abs(plain)));
}

TEST_CASE("integral mismatch for a non-harmonic coboundary matches the zero-mode formula") {
    GridSpec grid = grid9();
    OneCochain beta = wick_voros_witness(sym2());
    Generator db = coboundary1(beta);
    BandlimitedField f = BandlimitedField::random(grid, 2, 7);
    BandlimitedField g = BandlimitedField::random(grid, 2, 8);
    Complex gap = integrate(star(f, g, db)) - integrate(star(f, g, zero_generator(2)));
    Complex expected = 0.0;
    Momentum zero = Momentum::Zero(2);
    for_each_in_box(2, 2, [&](const Eigen::VectorXi& kq) {
        Momentum q = grid.momentum_of(kq);
        expected += f.coeff(kq) * g.coeff((-kq).eval()) * (std::exp(db(zero, q)) - 1.0);
    });
    expected *= grid.volume();
    CHECK(std::abs(gap - expected) < 1e-10 * (1.0 + std::abs(expected)));
}

TEST_CASE("integrated_star: k = 1 integrates, cyclic shifts are invariant") {
    GridSpec grid = grid9();
    Generator wv = make_wick_voros(theta2(), sym2());
    BandlimitedField f = BandlimitedField::random(grid, 1, 9);
    std::vector<BandlimitedField> single = {f};
    CHECK(integrated_star(single, wv) == integrate(f));

    std::vector<BandlimitedField> fields = {BandlimitedField::random(grid, 1, 10),
                                            BandlimitedField::random(grid, 1, 11),
                                            BandlimitedField::random(grid, 1, 12)};
    Complex base = integrated_star(fields, wv);
    std::rotate(fields.begin(), fields.begin() + 1, fields.end());
    Complex rotated = integrated_star(fields, wv);
    CHECK(std::abs(base - rotated) < 1e-11 * (1.0 + std::abs(base)));
}

TEST_CASE("transformed fields reproduce the equivalent product under integration") {
    GridSpec grid = grid9();
    Generator gm = make_moyal(theta2());
    Generator wv = make_wick_voros(theta2(), sym2());
    OneCochain beta = wick_voros_witness(sym2());  // d beta = wv - gm
    std::vector<BandlimitedField> fields = {BandlimitedField::random(grid, 1, 13),
                                            BandlimitedField::random(grid, 1, 14),
                                            BandlimitedField::random(grid, 1, 15)};
    std::vector<BandlimitedField> transformed;
    for (const auto& f : fields) transformed.push_back(apply_T(beta, f));
    Complex lhs = integrated_star(transformed, gm);
    Complex rhs = integrated_star(fields, wv);
    CHECK(std::abs(lhs - rhs) < 1e-9 * (1.0 + std::abs(rhs)));
}

TEST_CASE("translate: zero shift, phase action, covariance") {
    GridSpec grid = grid9();
    BandlimitedField f = BandlimitedField::random(grid, 2, 16);
    BandlimitedField same = translate(f, Momentum::Zero(2));
    for (std::int64_t i = 0; i < f.coeffs().size(); ++i)
        CHECK(same.coeffs()[i] == f.coeffs()[i]);

    Eigen::VectorXi k(2);
    k << 1, -2;
    Momentum a = mom({0.4, 1.3});
    BandlimitedField delta = BandlimitedField::single_mode(grid, k);
    BandlimitedField shifted = translate(delta, a);
    Complex expected = std::exp(Complex(0.0, grid.momentum_of(k).dot(a)));
    CHECK(std::abs(shifted.coeff(k) - expected) < 1e-15);

    Generator wv = make_wick_voros(theta2(), sym2());
    BandlimitedField g = BandlimitedField::random(grid, 2, 17);
    BandlimitedField lhs = star(translate(f, a), translate(g, a), wv);
    BandlimitedField rhs = translate(star(f, g, wv), a);
    double scale = std::max(1.0, rhs.max_abs());
    for (std::int64_t i = 0; i < lhs.coeffs().size(); ++i)
        CHECK(std::abs(lhs.coeffs()[i] - rhs.coeffs()[i]) / scale < 1e-12);
}

TEST_CASE("involution_check passes for complex products and fails for a real bilinear") {
    GridSpec grid = grid9();
    BandlimitedField f = BandlimitedField::random(grid, 2, 18);
    BandlimitedField g = BandlimitedField::random(grid, 2, 19);
    CHECK(involution_check(f, g, make_moyal(theta2()), 1e-10).pass);
    CHECK(involution_check(f, g, zero_generator(2), 1e-10).pass);
    Generator real_bilinear(
        [](const Momentum& p, const Momentum& q) {
            return Complex(q[0] * p[1] - q[1] * p[0], 0.0);
        },
        2, "real_bilinear");
    CHECK(!involution_check(f, g, real_bilinear, 1e-10).pass);
}

TEST_CASE("mode_commutator frozen value and engine consistency") {
    GridSpec grid(2, 9, 1.0);
    Generator gm = make_moyal(theta2());
    Momentum p = mom({1, 0});
    Momentum q = mom({0, 1});
    Complex commutator = mode_commutator(p, q, gm, grid);
    // e^{alpha(p+q,p)} - e^{alpha(p+q,q)} = e^{i} - e^{-i} = 2 i sin(1).
    CHECK(std::abs(commutator - Complex(0.0, 2.0 * std::sin(1.0))) < 1e-14);

    // Same number out of the star engine on delta modes.
    Eigen::VectorXi kp(2), kq(2);
    kp << 1, 0;
    kq << 0, 1;
    BandlimitedField dp = BandlimitedField::single_mode(grid, kp);
    BandlimitedField dq = BandlimitedField::single_mode(grid, kq);
    BandlimitedField bracket = BandlimitedField(
        grid, star(dp, dq, gm).coeffs() - star(dq, dp, gm).coeffs());
    CHECK(std::abs(bracket.coeff((kp + kq).eval()) - commutator) < 1e-14);

    // Commutative generators commute.
    Generator db = coboundary1(wick_voros_witness(sym2()));
    CHECK(std::abs(mode_commutator(p, q, db, grid)) < 1e-14);

    CHECK_THROWS_AS(mode_commutator(mom({0.25, 0.0}), q, gm, grid), ParseError);
}

TEST_CASE("mode_commutator factorizes through the Hodge split") {
    // For alpha = alpha_H + d beta the bracket coefficient factorizes as
    // (e^{alpha_H(p+q,p)} - e^{-alpha_H(p+q,p)}) e^{d beta(p+q,p)}.
    GridSpec grid(2, 9, 0.5);
    OneCochain beta = wick_voros_witness(sym2());
    Generator db = coboundary1(beta);
    Generator alpha = make_sum(make_moyal(theta2()), db);
    Generator h = harmonic_part(alpha);
    Rng rng(97);
    for (int trial = 0; trial < 50; ++trial) {
        Eigen::VectorXi kp(2), kq(2);
        for (int d = 0; d < 2; ++d) {
            kp[d] = int(rng.uniform_int(-2, 2));
            kq[d] = int(rng.uniform_int(-2, 2));
        }
        Momentum p = grid.momentum_of(kp);
        Momentum q = grid.momentum_of(kq);
        Complex direct = mode_commutator(p, q, alpha, grid);
        Complex hexp = h(p + q, p);
        Complex factored = (std::exp(hexp) - std::exp(-hexp)) * std::exp(db(p + q, p));
        CHECK(std::abs(direct - factored) < 1e-12 * (1.0 + std::abs(factored)));
    }
}

TEST_CASE("grid and budget errors") {
    GridSpec grid = grid9();
    GridSpec other(2, 11, 0.5);
    Generator gm = make_moyal(theta2());
    CHECK_THROWS_AS(star(BandlimitedField::random(grid, 1, 20),
                         BandlimitedField::random(other, 1, 21), gm),
                    ParseError);
    // 3 + 2 > half-width 4: would alias.
    CHECK_THROWS_AS(star(BandlimitedField::random(grid, 3, 22),
                         BandlimitedField::random(grid, 2, 23), gm),
                    BudgetError);
    std::vector<BandlimitedField> fields = {BandlimitedField::random(grid, 2, 24),
                                            BandlimitedField::random(grid, 2, 25),
                                            BandlimitedField::random(grid, 2, 26)};
    CHECK_THROWS_AS(integrated_star(fields, gm), BudgetError);
}

TEST_CASE("exponent overflow is a numeric error, not silent garbage") {
    GridSpec grid(1, 5, 30.0);
    Eigen::MatrixXd s1(1, 1);
    s1 << 1.0;
    Generator big = make_quadratic(Eigen::MatrixXd::Zero(1, 1), s1);
    Eigen::VectorXi k1(1), k2(1);
    k1 << 1;
    k2 << -1;
    BandlimitedField f = BandlimitedField::single_mode(grid, k1);
    BandlimitedField g = BandlimitedField::single_mode(grid, k2);
    // alpha(P=0, q=30) = 30 * (0 - 30) = -900; |Re| > 700.
    CHECK_THROWS_AS(star(f, g, big), NumericError);
}

TEST_CASE("field file round trips") {
    GridSpec grid = grid9();
    BandlimitedField f = BandlimitedField::random(grid, 2, 27);
    std::string binary_path = "tistar_test_field.tisp";
    std::string json_path = "tistar_test_field.json";
    write_field_binary(f, binary_path);
    write_field_json(f, json_path);
    BandlimitedField fb = read_field_binary(binary_path);
    BandlimitedField fj = read_field_json(json_path);
    CHECK(fb.grid() == grid);
    CHECK(fj.grid() == grid);
    for (std::int64_t i = 0; i < f.coeffs().size(); ++i) {
        CHECK(fb.coeffs()[i] == f.coeffs()[i]);
        CHECK(fj.coeffs()[i] == f.coeffs()[i]);
    }
    std::remove(binary_path.c_str());
    std::remove(json_path.c_str());
}

TEST_CASE("associativity across generator families (property)") {
    GridSpec grid(2, 15, 0.5);
    OneCochain beta = wick_voros_witness(sym2());
    for (const Generator& alpha :
         {make_moyal(theta2()), make_wick_voros(theta2(), sym2()), coboundary1(beta)}) {
        for (int trial = 0; trial < 10; ++trial) {
            BandlimitedField f = BandlimitedField::random(grid, 2, 100 + std::uint64_t(trial));
            BandlimitedField g = BandlimitedField::random(grid, 2, 200 + std::uint64_t(trial));
            BandlimitedField h = BandlimitedField::random(grid, 2, 300 + std::uint64_t(trial));
            BandlimitedField lhs = star(star(f, g, alpha), h, alpha);
            BandlimitedField rhs = star(f, star(g, h, alpha), alpha);
            double scale = std::max(1.0, std::max(lhs.max_abs(), rhs.max_abs()));
            for (std::int64_t i = 0; i < lhs.coeffs().size(); ++i)
                CHECK(std::abs(lhs.coeffs()[i] - rhs.coeffs()[i]) / scale < 1e-9);
        }
    }
}
