#pragma once

#include "tistar/cochain.hpp"

#include <nlohmann/json_fwd.hpp>

#include <map>
#include <vector>

namespace tistar {

// ----------------------------------------------------------------------------
// Concrete generator families. The quadratic family
//   alpha(p,q) = i q^T theta_A p + q^T theta_S (p - q)
// is the canonical exact family (cocycle and involutive by construction);
// everything else enters as coboundaries of 1-cochains or sums.
// ----------------------------------------------------------------------------

// Groenewold-Moyal: alpha(p,q) = i q^T theta_A p. theta_A antisymmetric to 1e-12.
Generator make_moyal(const Eigen::MatrixXd& theta_A);

// Wick-Voros: alpha_GM + q^T theta_S (p - q). theta_S symmetric to 1e-12.
Generator make_wick_voros(const Eigen::MatrixXd& theta_A, const Eigen::MatrixXd& theta_S);

// General quadratic family member.
Generator make_quadratic(const Eigen::MatrixXd& theta_A, const Eigen::MatrixXd& theta_S);

Generator make_sum(const Generator& g1, const Generator& g2);

Generator zero_generator(int dim);

// ----------------------------------------------------------------------------
// Polynomial 1-cochains: beta(p) = sum_terms c * p^powers, zero constant term.
// ----------------------------------------------------------------------------

struct PolyTerm {
    Eigen::VectorXi powers;  // length dim, entries >= 0, not all zero
    Complex coeff;
};

OneCochain make_polynomial_cochain(std::vector<PolyTerm> terms, int dim,
                                   std::string label = "poly");

// beta(p) = p^T Q p with Q symmetric (stored as QuadraticForm kind).
OneCochain make_quadratic_form_cochain(const Eigen::MatrixXd& Q, std::string label = "quadform");

// The witness relating Wick-Voros to Moyal: beta(p) = -1/2 p^T theta_S p,
// so that d beta (p,q) = q^T theta_S (p - q).
OneCochain wick_voros_witness(const Eigen::MatrixXd& theta_S);

// Random dense polynomial 1-cochain of total degree <= max_degree (zero
// constant term, complex coefficients in the unit square), for property tests.
OneCochain random_polynomial_cochain(int dim, int max_degree, std::uint64_t seed);

// ----------------------------------------------------------------------------
// GeneratorSpec: the structured config form used by the CLI.
//
//   {"kind": "moyal",       "dim": 2, "theta_A": [[0,1],[-1,0]]}
//   {"kind": "wick_voros",  "dim": 2, "theta_A": ..., "theta_S": ...}
//   {"kind": "quadratic",   "dim": 2, "theta_A": ..., "theta_S": ...}
//   {"kind": "coboundary",  "dim": 2, "beta": [[[2,0], 1.0, 0.0], ...]}
//   {"kind": "sum",         "dim": 2, "terms": [<spec>, <spec>]}
//
// beta entries are [multi-index, re, im].
// ----------------------------------------------------------------------------

Generator parse_generator(const nlohmann::json& spec);
Generator parse_generator_file(const std::string& path);
nlohmann::json generator_to_json(const Generator& g);

}  // namespace tistar
