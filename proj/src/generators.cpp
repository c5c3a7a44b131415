#include "tistar/generators.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace tistar {

namespace {

void require_square(const Eigen::MatrixXd& m, const char* name) {
    if (m.rows() != m.cols() || m.rows() < 1)
        throw ParseError(std::string(name) + ": matrix must be square and non-empty");
}

void require_antisymmetric(const Eigen::MatrixXd& m, const char* name) {
    require_square(m, name);
    if ((m + m.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw ParseError(std::string(name) + ": matrix is not antisymmetric (tol 1e-12)");
}

void require_symmetric(const Eigen::MatrixXd& m, const char* name) {
    require_square(m, name);
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw ParseError(std::string(name) + ": matrix is not symmetric (tol 1e-12)");
}

}  // namespace

Generator make_moyal(const Eigen::MatrixXd& theta_A) {
    require_antisymmetric(theta_A, "make_moyal(theta_A)");
    return detail::make_quadratic_node(theta_A, Eigen::MatrixXd::Zero(theta_A.rows(), theta_A.cols()),
                                       "moyal");
}

Generator make_wick_voros(const Eigen::MatrixXd& theta_A, const Eigen::MatrixXd& theta_S) {
    require_antisymmetric(theta_A, "make_wick_voros(theta_A)");
    require_symmetric(theta_S, "make_wick_voros(theta_S)");
    if (theta_A.rows() != theta_S.rows())
        throw ParseError("make_wick_voros: theta_A and theta_S dimensions differ");
    return detail::make_quadratic_node(theta_A, theta_S, "wick_voros");
}

Generator make_quadratic(const Eigen::MatrixXd& theta_A, const Eigen::MatrixXd& theta_S) {
    require_antisymmetric(theta_A, "make_quadratic(theta_A)");
    require_symmetric(theta_S, "make_quadratic(theta_S)");
    if (theta_A.rows() != theta_S.rows())
        throw ParseError("make_quadratic: theta_A and theta_S dimensions differ");
    return detail::make_quadratic_node(theta_A, theta_S, "quadratic");
}

Generator make_sum(const Generator& g1, const Generator& g2) {
    if (g1.dim() != g2.dim()) throw ParseError("make_sum: dimension mismatch");
    return detail::make_sum_node({g1, g2});
}

Generator zero_generator(int dim) {
    return detail::make_quadratic_node(Eigen::MatrixXd::Zero(dim, dim),
                                       Eigen::MatrixXd::Zero(dim, dim), "zero");
}

// ----------------------------------------------------------------------------
// Polynomial 1-cochains
// ----------------------------------------------------------------------------

OneCochain make_polynomial_cochain(std::vector<PolyTerm> terms, int dim, std::string label) {
    for (const auto& t : terms) {
        if (t.powers.size() != dim)
            throw ParseError("polynomial cochain: multi-index length != dim");
        if (t.powers.minCoeff() < 0)
            throw ParseError("polynomial cochain: negative exponent");
        if (t.powers.maxCoeff() == 0 && std::abs(t.coeff) > 0.0)
            throw ParseError("polynomial cochain: nonzero constant term violates beta(0)=0");
    }
    auto eval = [terms](const Momentum& p) -> Complex {
        Complex acc = 0.0;
        for (const auto& t : terms) {
            double mono = 1.0;
            for (int i = 0; i < p.size(); ++i)
                for (int e = 0; e < t.powers[i]; ++e) mono *= p[i];
            acc += t.coeff * mono;
        }
        return acc;
    };
    return OneCochain(std::move(eval), dim, OneCochain::Kind::Polynomial, std::move(label));
}

OneCochain make_quadratic_form_cochain(const Eigen::MatrixXd& Q, std::string label) {
    require_symmetric(Q, "quadratic form cochain");
    auto eval = [Q](const Momentum& p) -> Complex { return Complex(p.dot(Q * p), 0.0); };
    return OneCochain(std::move(eval), int(Q.rows()), OneCochain::Kind::QuadraticForm,
                      std::move(label));
}

OneCochain wick_voros_witness(const Eigen::MatrixXd& theta_S) {
    return make_quadratic_form_cochain(-0.5 * theta_S, "wv_witness");
}

OneCochain random_polynomial_cochain(int dim, int max_degree, std::uint64_t seed) {
    if (max_degree < 1) throw std::invalid_argument("random_polynomial_cochain: degree >= 1");
    Rng rng(seed);
    std::vector<PolyTerm> terms;
    // Enumerate all multi-indices with 1 <= total degree <= max_degree.
    std::function<void(Eigen::VectorXi&, int, int)> walk = [&](Eigen::VectorXi& idx, int axis,
                                                               int remaining) {
        if (axis == dim) {
            if (idx.sum() >= 1) {
                PolyTerm t;
                t.powers = idx;
                t.coeff = Complex(rng.uniform_sym(1.0), rng.uniform_sym(1.0));
                terms.push_back(std::move(t));
            }
            return;
        }
        for (int e = 0; e <= remaining; ++e) {
            idx[axis] = e;
            walk(idx, axis + 1, remaining - e);
        }
        idx[axis] = 0;
    };
    Eigen::VectorXi idx = Eigen::VectorXi::Zero(dim);
    walk(idx, 0, max_degree);
    return make_polynomial_cochain(std::move(terms), dim,
                                   "rand_poly_" + std::to_string(seed));
}

// ----------------------------------------------------------------------------
// GeneratorSpec parsing
// ----------------------------------------------------------------------------

namespace {

Eigen::MatrixXd parse_matrix(const nlohmann::json& j, int dim, const char* name) {
    if (!j.is_array() || int(j.size()) != dim)
        throw ParseError(std::string(name) + ": expected " + std::to_string(dim) + " rows");
    Eigen::MatrixXd m(dim, dim);
    for (int r = 0; r < dim; ++r) {
        const auto& row = j[r];
        if (!row.is_array() || int(row.size()) != dim)
            throw ParseError(std::string(name) + ": row " + std::to_string(r) +
                             " must have " + std::to_string(dim) + " entries");
        for (int c = 0; c < dim; ++c) m(r, c) = row[c].get<double>();
    }
    return m;
}

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(row);
    }
    return rows;
}

std::vector<PolyTerm> parse_beta_terms(const nlohmann::json& j, int dim) {
    if (!j.is_array()) throw ParseError("beta: expected a list of [multi-index, re, im]");
    std::vector<PolyTerm> terms;
    for (const auto& entry : j) {
        if (!entry.is_array() || entry.size() != 3)
            throw ParseError("beta: each term must be [multi-index, re, im]");
        const auto& mi = entry[0];
        if (!mi.is_array() || int(mi.size()) != dim)
            throw ParseError("beta: multi-index length must equal dim");
        PolyTerm t;
        t.powers = Eigen::VectorXi(dim);
        for (int i = 0; i < dim; ++i) t.powers[i] = mi[i].get<int>();
        t.coeff = Complex(entry[1].get<double>(), entry[2].get<double>());
        terms.push_back(std::move(t));
    }
    return terms;
}

}  // namespace

Generator parse_generator(const nlohmann::json& spec) {
    if (!spec.is_object()) throw ParseError("generator spec: expected a JSON object");
    if (!spec.contains("kind")) throw ParseError("generator spec: missing 'kind'");
    if (!spec.contains("dim")) throw ParseError("generator spec: missing 'dim'");
    std::string kind = spec.at("kind").get<std::string>();
    int dim = spec.at("dim").get<int>();
    if (dim < 1) throw ParseError("generator spec: dim must be >= 1");

    if (kind == "moyal") {
        return make_moyal(parse_matrix(spec.at("theta_A"), dim, "theta_A"));
    }
    if (kind == "wick_voros") {
        return make_wick_voros(parse_matrix(spec.at("theta_A"), dim, "theta_A"),
                               parse_matrix(spec.at("theta_S"), dim, "theta_S"));
    }
    if (kind == "quadratic") {
        Eigen::MatrixXd A = spec.contains("theta_A")
                                ? parse_matrix(spec.at("theta_A"), dim, "theta_A")
                                : Eigen::MatrixXd::Zero(dim, dim);
        Eigen::MatrixXd S = spec.contains("theta_S")
                                ? parse_matrix(spec.at("theta_S"), dim, "theta_S")
                                : Eigen::MatrixXd::Zero(dim, dim);
        return make_quadratic(A, S);
    }
    if (kind == "coboundary") {
        if (!spec.contains("beta")) throw ParseError("coboundary spec: missing 'beta'");
        return coboundary1(make_polynomial_cochain(parse_beta_terms(spec.at("beta"), dim), dim));
    }
    if (kind == "sum") {
        if (!spec.contains("terms") || !spec.at("terms").is_array() || spec.at("terms").empty())
            throw ParseError("sum spec: missing or empty 'terms'");
        std::vector<Generator> terms;
        for (const auto& t : spec.at("terms")) {
            Generator g = parse_generator(t);
            if (g.dim() != dim) throw ParseError("sum spec: term dimension mismatch");
            terms.push_back(std::move(g));
        }
        return detail::make_sum_node(std::move(terms));
    }
    throw ParseError("generator spec: unknown kind '" + kind + "'");
}

Generator parse_generator_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open generator spec file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("generator spec '" + path + "': " + e.what());
    }
    return parse_generator(j);
}

nlohmann::json generator_to_json(const Generator& g) {
    nlohmann::json j;
    j["dim"] = g.dim();
    switch (g.kind()) {
        case Generator::Kind::Quadratic: {
            const Eigen::MatrixXd& A = *g.quadratic_A();
            const Eigen::MatrixXd& S = *g.quadratic_S();
            if (S.cwiseAbs().maxCoeff() == 0.0) {
                j["kind"] = "moyal";
                j["theta_A"] = matrix_to_json(A);
            } else {
                j["kind"] = "wick_voros";
                j["theta_A"] = matrix_to_json(A);
                j["theta_S"] = matrix_to_json(S);
            }
            return j;
        }
        case Generator::Kind::Sum: {
            j["kind"] = "sum";
            nlohmann::json terms = nlohmann::json::array();
            for (const auto& t : *g.sum_terms()) terms.push_back(generator_to_json(t));
            j["terms"] = terms;
            return j;
        }
        case Generator::Kind::Coboundary:
            j["kind"] = "coboundary";
            j["label"] = g.label();  // evaluator is not serializable in general
            return j;
        case Generator::Kind::Opaque:
        default:
            j["kind"] = "opaque";
            j["label"] = g.label();
            return j;
    }
}

}  // namespace tistar
