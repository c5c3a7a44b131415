#include "tistar/cochain.hpp"

#include <cmath>
#include <utility>

namespace tistar {

// ----------------------------------------------------------------------------
// OneCochain
// ----------------------------------------------------------------------------

OneCochain::OneCochain(Eval eval, int dim, Kind kind, std::string label)
    : eval_(std::move(eval)), dim_(dim), kind_(kind), label_(std::move(label)) {
    if (dim_ < 1) throw ParseError("OneCochain: dimension must be >= 1");
    Complex at_origin = eval_(Momentum::Zero(dim_));
    if (std::abs(at_origin) > 1e-12)
        throw ParseError("OneCochain '" + label_ + "': beta(0) = " +
                         std::to_string(std::abs(at_origin)) + " != 0");
}

// ----------------------------------------------------------------------------
// Generator node
// ----------------------------------------------------------------------------

struct Generator::Node {
    Kind kind = Kind::Opaque;
    int dim = 1;
    std::string label;
    Eval eval;
    // Quadratic payload: alpha(p,q) = i q^T A p + q^T S (p-q)
    Eigen::MatrixXd A;
    Eigen::MatrixXd S;
    std::optional<OneCochain> beta;  // Coboundary payload
    std::vector<Generator> terms;    // Sum payload
};

namespace {

void check_unitality_spot(const Generator::Eval& eval, int dim, const std::string& label) {
    Rng rng(0x7157A6u);
    for (int i = 0; i < 8; ++i) {
        Momentum p = rng.momentum(dim, 2.0);
        double scale = 1.0 + std::abs(eval(p, p)) + std::abs(eval(p, Momentum::Zero(dim)));
        double diag = std::abs(eval(p, p)) / scale;
        double edge = std::abs(eval(p, Momentum::Zero(dim))) / scale;
        if (diag > 1e-9 || edge > 1e-9)
            throw ParseError("Generator '" + label +
                             "': unitality alpha(p,p)=alpha(p,0)=0 violated at p=" +
                             format_momentum(p));
    }
}

}  // namespace

Generator::Generator(Eval eval, int dim, std::string label) {
    if (dim < 1) throw ParseError("Generator: dimension must be >= 1");
    check_unitality_spot(eval, dim, label);
    auto node = std::make_shared<Node>();
    node->kind = Kind::Opaque;
    node->dim = dim;
    node->label = std::move(label);
    node->eval = std::move(eval);
    node_ = std::move(node);
}

Complex Generator::operator()(const Momentum& p, const Momentum& q) const {
    return node_->eval(p, q);
}

int Generator::dim() const { return node_->dim; }
Generator::Kind Generator::kind() const { return node_->kind; }
const std::string& Generator::label() const { return node_->label; }

const Eigen::MatrixXd* Generator::quadratic_A() const {
    return node_->kind == Kind::Quadratic ? &node_->A : nullptr;
}
const Eigen::MatrixXd* Generator::quadratic_S() const {
    return node_->kind == Kind::Quadratic ? &node_->S : nullptr;
}
const OneCochain* Generator::coboundary_witness() const {
    return node_->beta ? &*node_->beta : nullptr;
}
const std::vector<Generator>* Generator::sum_terms() const {
    return node_->kind == Kind::Sum ? &node_->terms : nullptr;
}

namespace detail {

// Internal constructors used by generator_lib; bypass the sampled unitality
// check where the form guarantees it.
Generator make_quadratic_node(Eigen::MatrixXd A, Eigen::MatrixXd S, std::string label) {
    auto node = std::make_shared<Generator::Node>();
    node->kind = Generator::Kind::Quadratic;
    node->dim = int(A.rows());
    node->label = std::move(label);
    node->A = std::move(A);
    node->S = std::move(S);
    const Eigen::MatrixXd& Aref = node->A;
    const Eigen::MatrixXd& Sref = node->S;
    node->eval = [&Aref, &Sref](const Momentum& p, const Momentum& q) -> Complex {
        double anti = q.dot(Aref * p);
        double sym = q.dot(Sref * (p - q));
        return Complex(sym, anti);
    };
    // eval captures by reference into the node itself; keep them alive together.
    return Generator(std::shared_ptr<const Generator::Node>(node));
}

Generator make_coboundary_node(OneCochain beta) {
    auto node = std::make_shared<Generator::Node>();
    node->kind = Generator::Kind::Coboundary;
    node->dim = beta.dim();
    node->label = "d(" + beta.label() + ")";
    node->beta = std::move(beta);
    const OneCochain& b = *node->beta;
    node->eval = [&b](const Momentum& p, const Momentum& q) -> Complex {
        return b(q) - b(p) + b(p - q);
    };
    return Generator(std::shared_ptr<const Generator::Node>(node));
}

Generator make_sum_node(std::vector<Generator> terms) {
    if (terms.empty()) throw ParseError("sum generator: no terms");
    int dim = terms.front().dim();
    for (const auto& t : terms)
        if (t.dim() != dim) throw ParseError("sum generator: dimension mismatch");
    auto node = std::make_shared<Generator::Node>();
    node->kind = Generator::Kind::Sum;
    node->dim = dim;
    node->label = "sum";
    node->terms = std::move(terms);
    const std::vector<Generator>& ts = node->terms;
    node->eval = [&ts](const Momentum& p, const Momentum& q) -> Complex {
        Complex acc = 0.0;
        for (const auto& t : ts) acc += t(p, q);
        return acc;
    };
    return Generator(std::shared_ptr<const Generator::Node>(node));
}

}  // namespace detail

// ----------------------------------------------------------------------------
// SampleSet
// ----------------------------------------------------------------------------

namespace {
SampleSet make_samples(int dim, int count, int arity, double box_radius, std::uint64_t seed) {
    if (dim < 1) throw std::invalid_argument("SampleSet: dim must be >= 1");
    if (count < 1) throw std::invalid_argument("SampleSet: count must be >= 1");
    SampleSet s;
    s.arity = arity;
    s.dim = dim;
    s.seed = seed;
    s.box_radius = box_radius;
    s.points.reserve(std::size_t(count) * std::size_t(arity));
    Rng rng(seed);
    for (int i = 0; i < count * arity; ++i) s.points.push_back(rng.momentum(dim, box_radius));
    return s;
}
}  // namespace

SampleSet SampleSet::pairs(int dim, int count, double box_radius, std::uint64_t seed) {
    return make_samples(dim, count, 2, box_radius, seed);
}

SampleSet SampleSet::triples(int dim, int count, double box_radius, std::uint64_t seed) {
    return make_samples(dim, count, 3, box_radius, seed);
}

// ----------------------------------------------------------------------------
// Coboundary operators
// ----------------------------------------------------------------------------

Generator coboundary1(const OneCochain& beta) { return detail::make_coboundary_node(beta); }

std::function<Complex(const Momentum&, const Momentum&, const Momentum&)>
coboundary2(const Generator& alpha) {
    return [alpha](const Momentum& p0, const Momentum& p1, const Momentum& p2) -> Complex {
        return alpha(p1, p2) - alpha(p0, p2) + alpha(p0, p1) - alpha(p0 - p2, p1 - p2);
    };
}

// ----------------------------------------------------------------------------
// Predicates
// ----------------------------------------------------------------------------

namespace {

struct ResidualScan {
    double max_scaled = 0.0;
    std::size_t worst = 0;
    bool any = false;

    void update(std::size_t index, double raw, double scale) {
        double scaled = raw / scale;
        if (!any || scaled > max_scaled) {
            max_scaled = scaled;
            worst = index;
            any = true;
        }
    }
};

PredicateReport finish(std::string name, const ResidualScan& scan, const SampleSet& s,
                       double tol) {
    PredicateReport r;
    r.name = std::move(name);
    r.max_residual = scan.max_scaled;
    r.tolerance = tol;
    r.pass = scan.max_scaled <= tol;
    if (scan.any)
        for (int a = 0; a < s.arity; ++a) r.worst_point.push_back(s.at(scan.worst, a));
    return r;
}

void require_samples(const SampleSet& s, int dim, int arity, const char* who) {
    if (s.size() == 0) throw std::invalid_argument(std::string(who) + ": empty sample set");
    if (s.dim != dim) throw std::invalid_argument(std::string(who) + ": sample dim mismatch");
    if (s.arity < arity)
        throw std::invalid_argument(std::string(who) + ": sample arity too small");
}

}  // namespace

PredicateReport is_cocycle(const Generator& alpha, const SampleSet& s, double tol) {
    require_samples(s, alpha.dim(), 3, "is_cocycle");
    auto d = coboundary2(alpha);
    ResidualScan scan;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const Momentum& p0 = s.at(i, 0);
        const Momentum& p1 = s.at(i, 1);
        const Momentum& p2 = s.at(i, 2);
        double scale = 1.0 + std::max({std::abs(alpha(p1, p2)), std::abs(alpha(p0, p2)),
                                       std::abs(alpha(p0, p1)),
                                       std::abs(alpha(p0 - p2, p1 - p2))});
        scan.update(i, std::abs(d(p0, p1, p2)), scale);
    }
    return finish("is_cocycle", scan, s, tol);
}

PredicateReport is_unital(const Generator& alpha, const SampleSet& s, double tol) {
    require_samples(s, alpha.dim(), 1, "is_unital");
    Momentum zero = Momentum::Zero(alpha.dim());
    ResidualScan scan;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const Momentum& p = s.at(i, 0);
        double raw = std::max(std::abs(alpha(p, p)), std::abs(alpha(p, zero)));
        scan.update(i, raw, 1.0);
    }
    return finish("is_unital", scan, s, tol);
}

PredicateReport is_commutative(const Generator& alpha, const SampleSet& s, double tol) {
    require_samples(s, alpha.dim(), 2, "is_commutative");
    ResidualScan scan;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const Momentum& p = s.at(i, 0);
        const Momentum& q = s.at(i, 1);
        Complex a = alpha(p, q);
        Complex b = alpha(p, p - q);
        scan.update(i, std::abs(a - b), 1.0 + std::max(std::abs(a), std::abs(b)));
    }
    return finish("is_commutative", scan, s, tol);
}

PredicateReport is_involutive(const Generator& alpha, const SampleSet& s, double tol) {
    require_samples(s, alpha.dim(), 2, "is_involutive");
    ResidualScan scan;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const Momentum& p = s.at(i, 0);
        const Momentum& q = s.at(i, 1);
        Complex a = std::conj(alpha(p, q));
        Complex b = alpha(-p, q - p);
        scan.update(i, std::abs(a - b), 1.0 + std::max(std::abs(a), std::abs(b)));
    }
    return finish("is_involutive", scan, s, tol);
}

PredicateReport cochain_membership(const OneCochain::Eval& f, int dim, int n,
                                   const SampleSet& s, double tol, bool starred) {
    if (n != 1)
        throw std::invalid_argument("cochain_membership: one-argument evaluable requires n=1");
    require_samples(s, dim, 1, "cochain_membership");
    ResidualScan scan;
    double raw0 = std::abs(f(Momentum::Zero(dim)));
    scan.update(0, raw0, 1.0);
    if (starred) {
        for (std::size_t i = 0; i < s.size(); ++i) {
            const Momentum& p = s.at(i, 0);
            Complex a = std::conj(f(p));
            Complex b = f(-p);
            scan.update(i, std::abs(a - b), 1.0 + std::max(std::abs(a), std::abs(b)));
        }
    }
    return finish(starred ? "cochain_membership(C*1)" : "cochain_membership(C1)", scan, s, tol);
}

PredicateReport cochain_membership(const Generator::Eval& f, int dim, int n,
                                   const SampleSet& s, double tol, bool starred) {
    if (n != 2)
        throw std::invalid_argument("cochain_membership: two-argument evaluable requires n=2");
    require_samples(s, dim, 2, "cochain_membership");
    Momentum zero = Momentum::Zero(dim);
    ResidualScan scan;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const Momentum& p = s.at(i, 0);
        const Momentum& q = s.at(i, 1);
        double raw = std::max(std::abs(f(p, zero)), std::abs(f(p, p)));
        double scale = 1.0;
        if (starred) {
            Complex a = std::conj(f(p, q));
            Complex b = f(-p, q - p);
            raw = std::max(raw, std::abs(a - b));
            scale = 1.0 + std::max(std::abs(a), std::abs(b));
        }
        scan.update(i, raw, scale);
    }
    return finish(starred ? "cochain_membership(C*2)" : "cochain_membership(C2)", scan, s, tol);
}

Generator conjugate_generator(const Generator& alpha) {
    switch (alpha.kind()) {
        case Generator::Kind::Quadratic:
            return detail::make_quadratic_node(-*alpha.quadratic_A(), *alpha.quadratic_S(),
                                               "conj(" + alpha.label() + ")");
        case Generator::Kind::Coboundary: {
            const OneCochain& b = *alpha.coboundary_witness();
            OneCochain conj_beta(
                [b](const Momentum& p) { return std::conj(b(p)); }, b.dim(), b.kind(),
                "conj(" + b.label() + ")");
            return detail::make_coboundary_node(std::move(conj_beta));
        }
        case Generator::Kind::Sum: {
            std::vector<Generator> terms;
            for (const auto& t : *alpha.sum_terms()) terms.push_back(conjugate_generator(t));
            return detail::make_sum_node(std::move(terms));
        }
        case Generator::Kind::Opaque:
        default:
            return Generator(
                [alpha](const Momentum& p, const Momentum& q) { return std::conj(alpha(p, q)); },
                alpha.dim(), "conj(" + alpha.label() + ")");
    }
}

}  // namespace tistar
