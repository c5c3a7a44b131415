// tistar: translation-invariant star products, cohomology checks, and
// non-commutative loop computations on momentum lattices.
//
// Exit codes: 0 pass, 1 check failure, 2 parse/usage error, 3 budget
// violation, 4 numeric overflow.

#include "tistar/equivalence.hpp"
#include "tistar/generators.hpp"
#include "tistar/qft.hpp"
#include "tistar/report.hpp"

#include "acceptance/acceptance.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace tistar;

struct GridArg {
    int m = 2;
    int n = 9;
    double dp = 0.5;
    bool set = false;
};

GridSpec make_grid(const GridArg& g, int dim_fallback) {
    if (g.set) return GridSpec(g.m, g.n, g.dp);
    return GridSpec(dim_fallback, g.n, g.dp);
}

void parse_grid_arg(const std::string& text, GridArg& out) {
    GridArg g;
    char comma1 = 0, comma2 = 0;
    std::istringstream in(text);
    if (!(in >> g.m >> comma1 >> g.n >> comma2 >> g.dp) || comma1 != ',' || comma2 != ',')
        throw ParseError("--grid expects m,N,dp (e.g. 2,9,0.5)");
    g.set = true;
    out = g;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

nlohmann::json parse_json_file(const std::string& path) {
    try {
        return nlohmann::json::parse(slurp(path));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("'" + path + "': " + e.what());
    }
}

void emit_report(const Report& report, const std::string& out_path) {
    std::string text = report.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw ParseError("cannot open report file for writing: " + out_path);
        out << text;
    }
}

Report grid_to_json(const GridSpec& g) {
    Report j;
    j["m"] = g.dim;
    j["N"] = g.points_per_axis;
    j["dp"] = g.momentum_step;
    return j;
}

Report complex_to_json(Complex z) {
    return Report::array({z.real(), z.imag()});
}

// Lattice-constrained pair samples (p, q and p+q all inside the box), used
// where a tabulated witness has to be evaluated.
SampleSet lattice_pairs(const GridSpec& grid, int count, std::uint64_t seed) {
    SampleSet s;
    s.arity = 2;
    s.dim = grid.dim;
    s.seed = seed;
    int reach = std::max(1, grid.half() / 2);
    s.box_radius = reach * grid.momentum_step;
    Rng rng(seed);
    for (int i = 0; i < count; ++i) {
        Eigen::VectorXi kp(grid.dim), kq(grid.dim);
        for (int d = 0; d < grid.dim; ++d) {
            kp[d] = int(rng.uniform_int(-reach, reach));
            kq[d] = int(rng.uniform_int(-reach, reach));
        }
        s.points.push_back(grid.momentum_of(kp));
        s.points.push_back(grid.momentum_of(kq));
    }
    return s;
}

BandlimitedField load_field(const std::string& path) {
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
        return read_field_json(path);
    return read_field_binary(path);
}

// ----------------------------------------------------------------------------
// check: structural predicates of a generator spec
// ----------------------------------------------------------------------------

int cmd_check(const std::string& spec_path, std::uint64_t seed, double tol, int count,
              double box, const std::string& out_path) {
    nlohmann::json spec = parse_json_file(spec_path);
    Generator alpha = parse_generator(spec);

    Report report = make_report_skeleton("check", seed);
    report["inputs"]["spec"] = spec;
    report["inputs"]["digest"] = fnv1a_hex(spec.dump());
    report["inputs"]["tol"] = tol;
    report["inputs"]["count"] = count;
    report["inputs"]["box_radius"] = box;

    SampleSet pairs = SampleSet::pairs(alpha.dim(), count, box, seed);
    SampleSet triples = SampleSet::triples(alpha.dim(), count, box, seed ^ 0x7121ull);

    PredicateReport cocycle = is_cocycle(alpha, triples, tol);
    PredicateReport unital = is_unital(alpha, pairs, tol);
    PredicateReport commutative = is_commutative(alpha, pairs, tol);
    PredicateReport involutive = is_involutive(alpha, pairs, tol);

    report["results"]["is_cocycle"] = predicate_to_json(cocycle);
    report["results"]["is_unital"] = predicate_to_json(unital);
    report["results"]["is_commutative"] = predicate_to_json(commutative);
    if (cocycle.pass && !commutative.pass)
        report["results"]["is_commutative"]["note"] = "expected-noncommutative";
    report["results"]["is_involutive"] = predicate_to_json(involutive);
    if (!involutive.pass) report["results"]["is_involutive"]["note"] = "informational";

    // Validity of the generator = cocycle + unital; commutativity and
    // involutivity classify rather than validate.
    bool pass = cocycle.pass && unital.pass;
    report["pass"] = pass;
    emit_report(report, out_path);
    return pass ? 0 : 1;
}

// ----------------------------------------------------------------------------
// hodge: decomposition, omega table, commutator matrix
// ----------------------------------------------------------------------------

int cmd_hodge(const std::string& spec_path, const GridArg& grid_arg, std::uint64_t seed,
              double tol, const std::string& out_path, const std::string& csv_prefix) {
    nlohmann::json spec = parse_json_file(spec_path);
    Generator alpha = parse_generator(spec);
    GridSpec grid = make_grid(grid_arg, alpha.dim());
    if (grid.dim != alpha.dim()) throw ParseError("hodge: --grid dimension != spec dim");

    Report report = make_report_skeleton("hodge", seed);
    report["inputs"]["spec"] = spec;
    report["inputs"]["digest"] = fnv1a_hex(spec.dump());
    report["inputs"]["grid"] = grid_to_json(grid);
    report["inputs"]["tol"] = tol;

    SampleSet pairs = SampleSet::pairs(alpha.dim(), 500, grid.half() * grid.momentum_step, seed);
    PredicateReport cocycle =
        is_cocycle(alpha, SampleSet::triples(alpha.dim(), 300, 2.0, seed ^ 0x9ull), tol);
    if (!cocycle.pass) {
        report["results"]["is_cocycle"] = predicate_to_json(cocycle);
        report["pass"] = false;
        emit_report(report, out_path);
        return 1;
    }

    HodgeDecomposition dec = decompose(alpha, grid);
    PredicateReport harm = is_harmonic(dec.harmonic, pairs, tol);
    report["results"]["is_cocycle"] = predicate_to_json(cocycle);
    report["results"]["harmonic_is_harmonic"] = predicate_to_json(harm);
    report["results"]["witness_consistency"] = dec.witness.consistency_residual();
    report["results"]["witness_path_residual"] = dec.witness.path_residual();
    report["results"]["decomposition_residual"] = dec.residual;

    // Harmonic-part samples and the witness along each axis.
    {
        Report harmonic_rows = Report::array();
        Rng hrng(seed ^ 0x4A07ULL);
        for (int i = 0; i < 50; ++i) {
            Momentum p = hrng.momentum(alpha.dim(), grid.half() * grid.momentum_step);
            Momentum q = hrng.momentum(alpha.dim(), grid.half() * grid.momentum_step);
            Complex value = dec.harmonic(p, q);
            Report row = Report::array();
            for (int d = 0; d < p.size(); ++d) row.push_back(p[d]);
            for (int d = 0; d < q.size(); ++d) row.push_back(q[d]);
            row.push_back(value.real());
            row.push_back(value.imag());
            harmonic_rows.push_back(row);
        }
        report["results"]["harmonic_samples"] = harmonic_rows;

        Report witness_rows = Report::array();
        for (int axis = 0; axis < grid.dim; ++axis) {
            for (int k = -grid.half(); k <= grid.half(); ++k) {
                Eigen::VectorXi kv = Eigen::VectorXi::Zero(grid.dim);
                kv[axis] = k;
                Complex value = dec.witness.value_at(kv);
                witness_rows.push_back(Report::array({axis, k, value.real(), value.imag()}));
            }
        }
        report["results"]["witness_axis_table"] = witness_rows;
    }

    Eigen::MatrixXcd theta = commutator_matrix(alpha);
    Report theta_json = Report::array();
    for (int r = 0; r < theta.rows(); ++r) {
        Report row = Report::array();
        for (int c = 0; c < theta.cols(); ++c) row.push_back(complex_to_json(theta(r, c)));
        theta_json.push_back(row);
    }
    report["results"]["commutator_matrix"] = theta_json;

    // omega samples (plot-ready); also embedded in the report for small runs.
    Omega w = omega(alpha);
    Report omega_rows = Report::array();
    Rng rng(seed ^ 0x03E6Aull);
    for (int i = 0; i < 100; ++i) {
        Momentum p = rng.momentum(alpha.dim(), grid.half() * grid.momentum_step);
        Momentum q = rng.momentum(alpha.dim(), grid.half() * grid.momentum_step);
        Complex value = w(p, q);
        Report row = Report::array();
        for (int d = 0; d < p.size(); ++d) row.push_back(p[d]);
        for (int d = 0; d < q.size(); ++d) row.push_back(q[d]);
        row.push_back(value.real());
        row.push_back(value.imag());
        omega_rows.push_back(row);
    }
    report["results"]["omega_samples"] = omega_rows;
    if (!csv_prefix.empty()) {
        std::ofstream csv(csv_prefix + "_omega.csv");
        if (!csv) throw ParseError("cannot open CSV for writing");
        for (int d = 0; d < alpha.dim(); ++d) csv << "p" << d << ",";
        for (int d = 0; d < alpha.dim(); ++d) csv << "q" << d << ",";
        csv << "re_omega,im_omega\n";
        for (const auto& row : omega_rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                csv << (i ? "," : "") << row[i].get<double>();
            csv << "\n";
        }
    }

    bool pass = harm.pass && dec.residual <= tol * 10;
    report["pass"] = pass;
    emit_report(report, out_path);
    return pass ? 0 : 1;
}

// ----------------------------------------------------------------------------
// star: product of two fields plus engine identity checks
// ----------------------------------------------------------------------------

int cmd_star(const std::string& spec_path, const GridArg& grid_arg, std::uint64_t seed,
             const std::string& field1_path, const std::string& field2_path,
             const std::string& out_field, const std::string& out_path) {
    nlohmann::json spec = parse_json_file(spec_path);
    Generator alpha = parse_generator(spec);
    GridSpec grid = make_grid(grid_arg, alpha.dim());
    if (grid.dim != alpha.dim()) throw ParseError("star: --grid dimension != spec dim");

    int r = std::max(1, grid.half() / 3);
    BandlimitedField f = field1_path.empty() ? BandlimitedField::random(grid, r, seed + 1)
                                             : load_field(field1_path);
    BandlimitedField g = field2_path.empty() ? BandlimitedField::random(grid, r, seed + 2)
                                             : load_field(field2_path);
    if (f.grid() != grid || g.grid() != grid)
        throw ParseError("star: field grid does not match --grid");

    Report report = make_report_skeleton("star", seed);
    report["inputs"]["spec"] = spec;
    report["inputs"]["digest"] = fnv1a_hex(spec.dump());
    report["inputs"]["grid"] = grid_to_json(grid);
    report["inputs"]["field1"] = field1_path.empty() ? "random" : field1_path;
    report["inputs"]["field2"] = field2_path.empty() ? "random" : field2_path;

    BandlimitedField product = star(f, g, alpha);
    report["results"]["product_support_radius"] = product.support_radius();
    report["results"]["integral_of_product"] = complex_to_json(integrate(product));

    // Engine identities on these fields.
    double unit_residual = 0.0;
    {
        BandlimitedField one = BandlimitedField::unit(grid);
        BandlimitedField lhs = star(one, f, alpha);
        BandlimitedField rhs = star(f, one, alpha);
        for (std::int64_t i = 0; i < lhs.coeffs().size(); ++i) {
            unit_residual = std::max(unit_residual,
                                     std::abs(lhs.coeffs()[i] - f.coeffs()[i]));
            unit_residual = std::max(unit_residual,
                                     std::abs(rhs.coeffs()[i] - f.coeffs()[i]));
        }
    }
    report["results"]["unit_identity_residual"] = unit_residual;

    double assoc_residual = 0.0;
    bool assoc_checked = false;
    if (f.support_radius() + g.support_radius() + r <= grid.half()) {
        BandlimitedField h = BandlimitedField::random(grid, r, seed + 3);
        BandlimitedField lhs = star(product, h, alpha);
        BandlimitedField rhs = star(f, star(g, h, alpha), alpha);
        double scale = std::max(1.0, std::max(lhs.max_abs(), rhs.max_abs()));
        for (std::int64_t i = 0; i < lhs.coeffs().size(); ++i)
            assoc_residual =
                std::max(assoc_residual, std::abs(lhs.coeffs()[i] - rhs.coeffs()[i]) / scale);
        assoc_checked = true;
        report["results"]["associativity_residual"] = assoc_residual;
    }

    PredicateReport invol = involution_check(f, g, alpha, 1e-10);
    report["results"]["involution_check"] = predicate_to_json(invol);

    double trace_residual = 0.0;
    {
        Complex fg = integrate(product);
        Complex gf = integrate(star(g, f, alpha));
        trace_residual = std::abs(fg - gf) / (1.0 + std::abs(fg));
    }
    report["results"]["trace_cyclicity_residual"] = trace_residual;

    if (!out_field.empty()) write_field_binary(product, out_field);

    bool pass = unit_residual <= 1e-12 && (!assoc_checked || assoc_residual <= 1e-9) &&
                trace_residual <= 1e-10;
    report["pass"] = pass;
    emit_report(report, out_path);
    return pass ? 0 : 1;
}

// ----------------------------------------------------------------------------
// equiv: equivalence verdict for two generator specs
// ----------------------------------------------------------------------------

int cmd_equiv(const std::string& spec_path, const std::string& spec2_path,
              const GridArg& grid_arg, std::uint64_t seed, double tol,
              const std::string& out_path) {
    nlohmann::json spec1 = parse_json_file(spec_path);
    nlohmann::json spec2 = parse_json_file(spec2_path);
    Generator a1 = parse_generator(spec1);
    Generator a2 = parse_generator(spec2);
    if (a1.dim() != a2.dim()) throw ParseError("equiv: spec dimensions differ");
    GridSpec grid = make_grid(grid_arg, a1.dim());
    if (grid.dim != a1.dim()) throw ParseError("equiv: --grid dimension != spec dim");

    Report report = make_report_skeleton("equiv", seed);
    report["inputs"]["spec"] = spec1;
    report["inputs"]["spec2"] = spec2;
    report["inputs"]["digest"] = fnv1a_hex(spec1.dump() + "|" + spec2.dump());
    report["inputs"]["grid"] = grid_to_json(grid);
    report["inputs"]["tol"] = tol;

    SampleSet pairs =
        SampleSet::pairs(a1.dim(), 1000, 3.0 * grid.momentum_step, seed);
    EquivalenceVerdict verdict = decide_equivalence(a1, a2, pairs, grid, tol);
    report["results"]["equivalent"] = verdict.equivalent;
    report["results"]["harmonic_gap"] = verdict.harmonic_gap;
    Report evidence = Report::object();
    for (const auto& [name, value] : verdict.evidence) evidence[name] = value;
    report["results"]["evidence"] = evidence;

    PredicateReport criterion = mode_commutator_criterion(a1, a2, pairs, tol);
    report["results"]["mode_commutator_criterion"] = predicate_to_json(criterion);

    bool consistent = verdict.equivalent == criterion.pass;
    bool identities_ok = true;
    if (verdict.equivalent) {
        // d(witness) = alpha1 - alpha2, so the identities certify
        // alpha1 = alpha2 + d(witness).
        OneCochain w = verdict.witness->as_one_cochain();
        SampleSet lat = lattice_pairs(grid, 400, seed ^ 0x1A77ull);
        QuantumIdentityReport qi = quantum_identities(a2, a1, w, lat, std::max(tol, 1e-8));
        report["results"]["quantum_identities"] = Report::object();
        report["results"]["quantum_identities"]["n1"] = predicate_to_json(qi.n1);
        report["results"]["quantum_identities"]["n2"] = predicate_to_json(qi.n2);
        report["results"]["quantum_identities"]["n3"] = predicate_to_json(qi.n3);
        identities_ok = qi.pass;

        // Witness table at lattice points along the axes (plot-ready).
        Report witness_rows = Report::array();
        for (int axis = 0; axis < grid.dim; ++axis) {
            for (int k = -grid.half(); k <= grid.half(); ++k) {
                Eigen::VectorXi kv = Eigen::VectorXi::Zero(grid.dim);
                kv[axis] = k;
                Complex value = verdict.witness->value_at(kv);
                witness_rows.push_back(Report::array(
                    {axis, k, value.real(), value.imag()}));
            }
        }
        report["results"]["witness_axis_table"] = witness_rows;
    }
    report["results"]["criterion_consistent"] = consistent;

    bool pass = consistent && identities_ok;
    report["pass"] = pass;
    emit_report(report, out_path);
    return pass ? 0 : 1;
}

// ----------------------------------------------------------------------------
// loop: non-planar self-energy scans and graph amplitudes
// ----------------------------------------------------------------------------

int cmd_loop(const std::string& spec_path, const std::string& spec2_path,
             const std::string& graph_path, const GridArg& grid_arg, double mass2,
             std::uint64_t seed, const std::string& out_path, const std::string& csv_prefix) {
    nlohmann::json spec1 = parse_json_file(spec_path);
    Generator a1 = parse_generator(spec1);
    GridSpec grid = make_grid(grid_arg, a1.dim());
    if (grid.dim != a1.dim()) throw ParseError("loop: --grid dimension != spec dim");
    LoopConfig cfg(grid, mass2);

    Report report = make_report_skeleton("loop", seed);
    report["inputs"]["spec"] = spec1;
    report["inputs"]["grid"] = grid_to_json(grid);
    report["inputs"]["mass2"] = mass2;

    std::optional<Generator> a2;
    if (!spec2_path.empty()) {
        nlohmann::json spec2 = parse_json_file(spec2_path);
        a2 = parse_generator(spec2);
        if (a2->dim() != a1.dim()) throw ParseError("loop: spec dimensions differ");
        report["inputs"]["spec2"] = spec2;
        report["inputs"]["digest"] = fnv1a_hex(spec1.dump() + "|" + spec2.dump());
    } else {
        report["inputs"]["digest"] = fnv1a_hex(spec1.dump());
    }

    if (!graph_path.empty()) {
        nlohmann::json gj = parse_json_file(graph_path);
        FeynmanGraph graph = parse_graph(gj);
        if (graph.dim != a1.dim()) throw ParseError("loop: graph dimension != spec dim");
        report["inputs"]["graph"] = gj;
        Amplitude amp1 = graph_amplitude(graph, a1, cfg);
        Report r1;
        r1["log_abs"] = amp1.log_abs;
        r1["arg"] = amp1.arg;
        r1["value"] = complex_to_json(amp1.value);
        report["results"]["amplitude"] = r1;
        if (a2) {
            Amplitude amp2 = graph_amplitude(graph, *a2, cfg);
            Report r2;
            r2["log_abs"] = amp2.log_abs;
            r2["arg"] = amp2.arg;
            r2["value"] = complex_to_json(amp2.value);
            report["results"]["amplitude2"] = r2;
            Complex ratio = std::exp(Complex(amp1.log_abs - amp2.log_abs, amp1.arg - amp2.arg));
            report["results"]["amplitude_ratio"] = complex_to_json(ratio);
        }
    } else {
        // Self-energy scan over axis-0 lattice momenta.
        Report rows = Report::array();
        std::ofstream csv;
        if (!csv_prefix.empty()) {
            csv.open(csv_prefix + "_selfenergy.csv");
            if (!csv) throw ParseError("cannot open CSV for writing");
            csv << "p,abs1,re1,im1";
            if (a2) csv << ",abs2,re2,im2";
            csv << "\n";
        }
        for (int k = 1; k <= grid.half(); ++k) {
            Momentum p = Momentum::Zero(grid.dim);
            p[0] = k * grid.momentum_step;
            Complex np1 = nonplanar_selfenergy(a1, p, cfg);
            Report row;
            row["p"] = p[0];
            row["np1"] = complex_to_json(np1);
            if (csv.is_open())
                csv << p[0] << "," << std::abs(np1) << "," << np1.real() << "," << np1.imag();
            if (a2) {
                Complex np2 = nonplanar_selfenergy(*a2, p, cfg);
                row["np2"] = complex_to_json(np2);
                if (csv.is_open())
                    csv << "," << std::abs(np2) << "," << np2.real() << "," << np2.imag();
            }
            if (csv.is_open()) csv << "\n";
            rows.push_back(row);
        }
        report["results"]["selfenergy_scan"] = rows;
    }

    report["pass"] = true;
    emit_report(report, out_path);
    return 0;
}

// ----------------------------------------------------------------------------
// demo: the acceptance suite
// ----------------------------------------------------------------------------

int cmd_demo(const std::string& out_path) {
    auto results = tistar::acceptance::run_all(&std::cout);
    Report report = make_report_skeleton("demo", 0);
    report["inputs"]["digest"] = fnv1a_hex("demo");
    bool all = true;
    Report rows = Report::array();
    for (const auto& r : results) {
        Report row;
        row["criterion"] = r.index;
        row["name"] = r.name;
        row["pass"] = r.pass;
        row["detail"] = r.detail;
        rows.push_back(row);
        all = all && r.pass;
    }
    report["results"]["criteria"] = rows;
    report["pass"] = all;
    if (!out_path.empty()) emit_report(report, out_path);
    std::cout << (all ? "ALL CRITERIA PASS" : "CRITERIA FAILED") << "\n";
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"translation-invariant star products and their cohomology"};
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads, "cap worker threads (0 = hardware)");

    std::string spec_path, spec2_path, out_path, csv_prefix, field1, field2, out_field,
        graph_path;
    std::string grid_text;
    std::uint64_t seed = 12345;
    double tol = 1e-9;
    double mass2 = 1.0;
    int count = 500;
    double box = 2.0;
    GridArg grid_arg;

    auto add_common = [&](CLI::App* cmd, bool needs_spec) {
        if (needs_spec)
            cmd->add_option("--spec", spec_path, "generator spec (JSON)")->required();
        cmd->add_option("--seed", seed, "RNG seed");
        cmd->add_option("--out", out_path, "write the JSON report here (default: stdout)");
    };

    CLI::App* check = app.add_subcommand("check", "structural predicates of a generator");
    add_common(check, true);
    check->add_option("--tol", tol, "residual tolerance");
    check->add_option("--count", count, "sample count");
    check->add_option("--box", box, "sampling box radius");

    CLI::App* hodge = app.add_subcommand("hodge", "Hodge decomposition, omega, commutators");
    add_common(hodge, true);
    hodge->add_option("--tol", tol, "residual tolerance");
    hodge->add_option("--grid", grid_text, "witness lattice m,N,dp");
    hodge->add_option("--csv", csv_prefix, "CSV output prefix");

    CLI::App* star_cmd = app.add_subcommand("star", "star product of two fields + checks");
    add_common(star_cmd, true);
    star_cmd->add_option("--grid", grid_text, "field lattice m,N,dp");
    star_cmd->add_option("--field1", field1, "first field file (.json or binary)");
    star_cmd->add_option("--field2", field2, "second field file");
    star_cmd->add_option("--out-field", out_field, "write the product field (binary)");

    CLI::App* equiv = app.add_subcommand("equiv", "decide equivalence of two generators");
    add_common(equiv, true);
    equiv->add_option("--spec2", spec2_path, "second generator spec")->required();
    equiv->add_option("--tol", tol, "equivalence tolerance");
    equiv->add_option("--grid", grid_text, "witness lattice m,N,dp");

    CLI::App* loop = app.add_subcommand("loop", "self-energy scans / graph amplitudes");
    add_common(loop, true);
    loop->add_option("--spec2", spec2_path, "second generator spec (for ratios)");
    loop->add_option("--graph", graph_path, "graph description (JSON)");
    loop->add_option("--grid", grid_text, "loop lattice m,N,dp");
    loop->add_option("--mass2", mass2, "Euclidean mass^2 (> 0)");
    loop->add_option("--csv", csv_prefix, "CSV output prefix");

    CLI::App* demo = app.add_subcommand("demo", "run the full acceptance suite");
    demo->add_option("--out", out_path, "write the JSON summary here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (threads > 0) tistar::set_max_threads(threads);

    auto started = std::chrono::steady_clock::now();
    int rc = 0;
    try {
        if (!grid_text.empty()) parse_grid_arg(grid_text, grid_arg);
        if (check->parsed()) rc = cmd_check(spec_path, seed, tol, count, box, out_path);
        else if (hodge->parsed())
            rc = cmd_hodge(spec_path, grid_arg, seed, tol, out_path, csv_prefix);
        else if (star_cmd->parsed())
            rc = cmd_star(spec_path, grid_arg, seed, field1, field2, out_field, out_path);
        else if (equiv->parsed())
            rc = cmd_equiv(spec_path, spec2_path, grid_arg, seed, tol, out_path);
        else if (loop->parsed())
            rc = cmd_loop(spec_path, spec2_path, graph_path, grid_arg, mass2, seed, out_path,
                          csv_prefix);
        else if (demo->parsed())
            rc = cmd_demo(out_path);
    } catch (const tistar::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started);
    std::cerr << "[tistar] completed in " << elapsed.count() << " s\n";
    return rc;
}
