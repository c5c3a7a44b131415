#include "tistar/equivalence.hpp"

#include <cmath>

namespace tistar {

EquivalenceVerdict decide_equivalence(const Generator& alpha1, const Generator& alpha2,
                                      const SampleSet& s, const GridSpec& lattice,
                                      double tol) {
    if (alpha1.dim() != alpha2.dim())
        throw ParseError("decide_equivalence: generator dimensions differ");
    if (s.size() == 0) throw std::invalid_argument("decide_equivalence: empty sample set");

    SampleSet triples = SampleSet::triples(alpha1.dim(), int(std::min<std::size_t>(s.size(), 200)),
                                           s.box_radius, s.seed ^ 0x3C0CULL);
    PredicateReport c1 = is_cocycle(alpha1, triples, tol);
    PredicateReport c2 = is_cocycle(alpha2, triples, tol);
    if (!c1.pass)
        throw NotACocycleError("decide_equivalence: first generator fails the cocycle test ("
                               + std::to_string(c1.max_residual) + ")");
    if (!c2.pass)
        throw NotACocycleError("decide_equivalence: second generator fails the cocycle test ("
                               + std::to_string(c2.max_residual) + ")");

    Generator h1 = harmonic_part(alpha1);
    Generator h2 = harmonic_part(alpha2);
    double gap = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const Momentum& p = s.at(i, 0);
        const Momentum& q = s.at(i, 1);
        gap = std::max(gap, std::abs(h1(p, q) - h2(p, q)));
    }

    EquivalenceVerdict verdict;
    verdict.harmonic_gap = gap;
    verdict.equivalent = gap <= tol;
    verdict.evidence.emplace_back("cocycle_residual_1", c1.max_residual);
    verdict.evidence.emplace_back("cocycle_residual_2", c2.max_residual);
    verdict.evidence.emplace_back("harmonic_gap", gap);

    if (verdict.equivalent) {
        Generator difference(
            [alpha1, alpha2](const Momentum& p, const Momentum& q) {
                return alpha1(p, q) - alpha2(p, q);
            },
            alpha1.dim(), alpha1.label() + " - " + alpha2.label());
        LatticeCochain witness = recover_witness(difference, lattice);
        verdict.evidence.emplace_back("witness_consistency", witness.consistency_residual());
        verdict.evidence.emplace_back("witness_path", witness.path_residual());
        // Involution residual of the recovered witness (reported, not enforced).
        double invol = 0.0;
        Rng rng(s.seed ^ 0x1BEEFULL);
        for (int trial = 0; trial < 128; ++trial) {
            Eigen::VectorXi k(lattice.dim);
            for (int i = 0; i < lattice.dim; ++i)
                k[i] = int(rng.uniform_int(-lattice.half(), lattice.half()));
            Complex a = std::conj(witness.value_at(k));
            Complex b = witness.value_at((-k).eval());
            invol = std::max(invol, std::abs(a - b) / (1.0 + std::abs(a)));
        }
        verdict.evidence.emplace_back("witness_involution_residual", invol);
        verdict.witness = std::move(witness);
    }
    return verdict;
}

namespace {
BandlimitedField scale_coeffs(const BandlimitedField& f,
                              const std::function<Complex(const Momentum&)>& weight) {
    const GridSpec& grid = f.grid();
    Eigen::VectorXcd out(f.coeffs().size());
    for (std::int64_t i = 0; i < out.size(); ++i) {
        if (f.coeffs()[i] == Complex(0.0, 0.0)) {
            out[i] = 0.0;
            continue;
        }
        out[i] = f.coeffs()[i] * weight(grid.momentum_of(grid.k_of_index(i)));
    }
    return BandlimitedField(grid, std::move(out));
}
}  // namespace

BandlimitedField apply_T(const OneCochain& beta, const BandlimitedField& f) {
    if (beta.dim() != f.grid().dim) throw ParseError("apply_T: dimension mismatch");
    return scale_coeffs(f, [&beta](const Momentum& p) {
        return checked_exp(beta(p), "apply_T");
    });
}

BandlimitedField apply_T(const LatticeCochain& beta, const BandlimitedField& f) {
    if (beta.grid().dim != f.grid().dim) throw ParseError("apply_T: dimension mismatch");
    return scale_coeffs(f, [&beta](const Momentum& p) {
        return checked_exp(beta(p), "apply_T");
    });
}

PredicateReport mode_commutator_criterion(const Generator& alpha1, const Generator& alpha2,
                                          const SampleSet& s, double tol) {
    if (s.size() == 0)
        throw std::invalid_argument("mode_commutator_criterion: empty sample set");
    Generator h1 = harmonic_part(alpha1);
    Generator h2 = harmonic_part(alpha2);
    PredicateReport r;
    r.name = "mode_commutator_criterion";
    r.tolerance = tol;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const Momentum& p = s.at(i, 0);
        const Momentum& q = s.at(i, 1);
        Complex e1 = h1(p, q);
        Complex e2 = h2(p, q);
        Complex lhs = checked_exp(e1, "criterion") - checked_exp(-e1, "criterion");
        Complex rhs = checked_exp(e2, "criterion") - checked_exp(-e2, "criterion");
        double scale = 1.0 + std::max(std::abs(lhs), std::abs(rhs));
        double res = std::abs(lhs - rhs) / scale;
        if (res > r.max_residual) {
            r.max_residual = res;
            worst = i;
        }
    }
    r.pass = r.max_residual <= tol;
    r.worst_point = {s.at(worst, 0), s.at(worst, 1)};
    return r;
}

QuantumIdentityReport quantum_identities(const Generator& alpha1, const Generator& alpha2,
                                         const OneCochain& beta, const SampleSet& s,
                                         double tol) {
    if (s.size() == 0) throw std::invalid_argument("quantum_identities: empty sample set");
    const int m = alpha1.dim();
    Momentum zero = Momentum::Zero(m);

    QuantumIdentityReport rep;
    rep.n1.name = "identity_n1 (beta(0)=0)";
    rep.n1.tolerance = tol;
    rep.n1.max_residual = std::abs(beta(zero));
    rep.n1.pass = rep.n1.max_residual <= tol;
    rep.n1.worst_point = {zero};

    rep.n2.name = "identity_n2 (propagator identity)";
    rep.n2.tolerance = tol;
    rep.n3.name = "identity_n3 (three-field identity)";
    rep.n3.tolerance = tol;
    std::size_t worst2 = 0, worst3 = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const Momentum& p = s.at(i, 0);
        const Momentum& q = s.at(i, 1);

        Complex lhs2 = alpha1(zero, p) + beta(p) + beta(-p);
        Complex rhs2 = alpha2(zero, p);
        double res2 = std::abs(lhs2 - rhs2) / (1.0 + std::max(std::abs(lhs2), std::abs(rhs2)));
        if (res2 > rep.n2.max_residual) {
            rep.n2.max_residual = res2;
            worst2 = i;
        }

        Momentum mpq = -(p + q);
        Complex lhs3 = alpha1(zero, mpq) + alpha1(p + q, p) + beta(p) + beta(q) + beta(mpq);
        Complex rhs3 = alpha2(zero, mpq) + alpha2(p + q, p);
        double res3 = std::abs(lhs3 - rhs3) / (1.0 + std::max(std::abs(lhs3), std::abs(rhs3)));
        if (res3 > rep.n3.max_residual) {
            rep.n3.max_residual = res3;
            worst3 = i;
        }
    }
    rep.n2.pass = rep.n2.max_residual <= tol;
    rep.n2.worst_point = {s.at(worst2, 0)};
    rep.n3.pass = rep.n3.max_residual <= tol;
    rep.n3.worst_point = {s.at(worst3, 0), s.at(worst3, 1)};
    rep.pass = rep.n1.pass && rep.n2.pass && rep.n3.pass;
    return rep;
}

}  // namespace tistar
