#include "tistar/grid.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstring>
#include <fstream>

namespace tistar {

GridSpec::GridSpec(int m, int n, double dp) : dim(m), points_per_axis(n), momentum_step(dp) {
    if (m < 1) throw ParseError("GridSpec: dim must be >= 1");
    if (n < 3 || n % 2 == 0) throw ParseError("GridSpec: points_per_axis must be odd and >= 3");
    if (!(dp > 0.0)) throw ParseError("GridSpec: momentum_step must be > 0");
}

std::int64_t GridSpec::num_points() const {
    std::int64_t n = 1;
    for (int i = 0; i < dim; ++i) n *= points_per_axis;
    return n;
}

Momentum GridSpec::momentum_of(const Eigen::VectorXi& k) const {
    return momentum_step * k.cast<double>();
}

std::int64_t GridSpec::index_of(const Eigen::VectorXi& k) const {
    std::int64_t idx = 0;
    for (int i = 0; i < dim; ++i) idx = idx * points_per_axis + (k[i] + half());
    return idx;
}

Eigen::VectorXi GridSpec::k_of_index(std::int64_t idx) const {
    Eigen::VectorXi k(dim);
    for (int i = dim - 1; i >= 0; --i) {
        k[i] = int(idx % points_per_axis) - half();
        idx /= points_per_axis;
    }
    return k;
}

bool GridSpec::contains(const Eigen::VectorXi& k) const {
    return k.cwiseAbs().maxCoeff() <= half();
}

bool GridSpec::on_lattice(const Momentum& p, Eigen::VectorXi& k_out, double tol) const {
    if (p.size() != dim) return false;
    k_out.resize(dim);
    for (int i = 0; i < dim; ++i) {
        double scaled = p[i] / momentum_step;
        double rounded = std::round(scaled);
        if (std::abs(scaled - rounded) * momentum_step > tol) return false;
        k_out[i] = int(rounded);
        if (std::abs(k_out[i]) > half()) return false;
    }
    return true;
}

double GridSpec::volume() const {
    return std::pow(2.0 * M_PI / momentum_step, double(dim));
}

bool GridSpec::operator==(const GridSpec& other) const {
    return dim == other.dim && points_per_axis == other.points_per_axis &&
           momentum_step == other.momentum_step;
}

// ----------------------------------------------------------------------------
// BandlimitedField
// ----------------------------------------------------------------------------

BandlimitedField::BandlimitedField(GridSpec grid, Eigen::VectorXcd coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)), support_radius_(0) {
    if (coeffs_.size() != grid_.num_points())
        throw ParseError("BandlimitedField: coefficient count != N^m");
    for (std::int64_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] != Complex(0.0, 0.0)) {
            int r = grid_.k_of_index(i).cwiseAbs().maxCoeff();
            if (r > support_radius_) support_radius_ = r;
        }
    }
}

BandlimitedField BandlimitedField::zero(const GridSpec& grid) {
    return BandlimitedField(grid, Eigen::VectorXcd::Zero(grid.num_points()));
}

BandlimitedField BandlimitedField::unit(const GridSpec& grid) {
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(grid.num_points());
    c[grid.index_of(Eigen::VectorXi::Zero(grid.dim))] = Complex(1.0, 0.0);
    return BandlimitedField(grid, std::move(c));
}

BandlimitedField BandlimitedField::single_mode(const GridSpec& grid, const Eigen::VectorXi& k,
                                               Complex amplitude) {
    if (!grid.contains(k)) throw BudgetError("single_mode: k outside grid box");
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(grid.num_points());
    c[grid.index_of(k)] = amplitude;
    return BandlimitedField(grid, std::move(c));
}

BandlimitedField BandlimitedField::random(const GridSpec& grid, int support_radius,
                                          std::uint64_t seed) {
    if (support_radius > grid.half())
        throw BudgetError("random field: support_radius exceeds grid half-width");
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(grid.num_points());
    Rng rng(seed);
    for_each_in_box(grid.dim, support_radius, [&](const Eigen::VectorXi& k) {
        c[grid.index_of(k)] = Complex(rng.uniform_sym(1.0), rng.uniform_sym(1.0));
    });
    return BandlimitedField(grid, std::move(c));
}

Complex BandlimitedField::coeff(const Eigen::VectorXi& k) const {
    if (!grid_.contains(k)) return Complex(0.0, 0.0);
    return coeffs_[grid_.index_of(k)];
}

double BandlimitedField::max_abs() const {
    double m = 0.0;
    for (std::int64_t i = 0; i < coeffs_.size(); ++i) m = std::max(m, std::abs(coeffs_[i]));
    return m;
}

void ProductBudget::check(const GridSpec& grid, int total_support_radius, const char* where) {
    if (total_support_radius > grid.half())
        throw BudgetError(std::string(where) + ": combined support radius " +
                          std::to_string(total_support_radius) + " exceeds grid half-width " +
                          std::to_string(grid.half()) + " (product would alias)");
}

// ----------------------------------------------------------------------------
// I/O
// ----------------------------------------------------------------------------

namespace {
constexpr char kMagic[5] = {'T', 'I', 'S', 'P', '1'};

template <typename T>
void write_le(std::ostream& out, T v) {
    // Little-endian host assumed (x86/ARM); layout is plain byte copy.
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_le(std::istream& in) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    return v;
}
}  // namespace

void write_field_binary(const BandlimitedField& f, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open field file for writing: " + path);
    out.write(kMagic, 5);
    write_le<std::uint32_t>(out, std::uint32_t(f.grid().dim));
    write_le<std::uint32_t>(out, std::uint32_t(f.grid().points_per_axis));
    write_le<double>(out, f.grid().momentum_step);
    for (std::int64_t i = 0; i < f.coeffs().size(); ++i) {
        write_le<double>(out, f.coeffs()[i].real());
        write_le<double>(out, f.coeffs()[i].imag());
    }
    if (!out) throw ParseError("failed writing field file: " + path);
}

BandlimitedField read_field_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open field file: " + path);
    char magic[5];
    in.read(magic, 5);
    if (!in || std::memcmp(magic, kMagic, 5) != 0)
        throw ParseError("field file '" + path + "': bad magic (expected TISP1)");
    auto m = read_le<std::uint32_t>(in);
    auto n = read_le<std::uint32_t>(in);
    double dp = read_le<double>(in);
    GridSpec grid(int(m), int(n), dp);
    Eigen::VectorXcd c(grid.num_points());
    for (std::int64_t i = 0; i < c.size(); ++i) {
        double re = read_le<double>(in);
        double im = read_le<double>(in);
        c[i] = Complex(re, im);
    }
    if (!in) throw ParseError("field file '" + path + "': truncated payload");
    return BandlimitedField(grid, std::move(c));
}

void write_field_json(const BandlimitedField& f, const std::string& path) {
    nlohmann::json j;
    j["m"] = f.grid().dim;
    j["N"] = f.grid().points_per_axis;
    j["dp"] = f.grid().momentum_step;
    nlohmann::json coeffs = nlohmann::json::array();
    for (std::int64_t i = 0; i < f.coeffs().size(); ++i)
        coeffs.push_back({f.coeffs()[i].real(), f.coeffs()[i].imag()});
    j["coeffs"] = coeffs;
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open field file for writing: " + path);
    out << j.dump() << "\n";
}

BandlimitedField read_field_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open field file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("field file '" + path + "': " + e.what());
    }
    GridSpec grid(j.at("m").get<int>(), j.at("N").get<int>(), j.at("dp").get<double>());
    const auto& coeffs = j.at("coeffs");
    if (std::int64_t(coeffs.size()) != grid.num_points())
        throw ParseError("field file '" + path + "': coefficient count != N^m");
    Eigen::VectorXcd c(grid.num_points());
    for (std::int64_t i = 0; i < c.size(); ++i)
        c[i] = Complex(coeffs[i][0].get<double>(), coeffs[i][1].get<double>());
    return BandlimitedField(grid, std::move(c));
}

}  // namespace tistar
