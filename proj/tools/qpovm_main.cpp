// qpovm: qubit channel / POVM toolkit command line.
//
// Subcommands:
//   channel show          Kraus operators, Mueller matrix, CPTP diagnosis
//   povm evolve           bias and sharpness of the evolved projector pair
//   markov scan           sharpness/trace-distance time scan with verdict
//   energy point|sweep|ad-trajectory   measurement energy cost
//   selftest              seeded property checks
//
// Exit codes: 0 success, 2 usage or spec errors, 3 physics validation
// failures. All numbers are formatted with 9 significant digits so
// repeated runs are byte-identical.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qpovm/channel_spec.hpp"
#include "qpovm/channels.hpp"
#include "qpovm/energy.hpp"
#include "qpovm/errors.hpp"
#include "qpovm/markov.hpp"
#include "qpovm/povm.hpp"
#include "qpovm/selftest.hpp"
#include "qpovm/states.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitPhysics = 3;

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string fmt_complex(const std::complex<double>& z) {
    std::string out = fmt9(z.real());
    out += (z.imag() < 0.0 ? "-" : "+");
    out += fmt9(std::abs(z.imag()));
    out += "i";
    return out;
}

struct OutputTarget {
    std::ofstream file;
    std::ostream* stream = &std::cout;

    explicit OutputTarget(const std::string& path) {
        if (path.empty()) return;
        file.open(path, std::ios::binary);
        if (!file) throw qpovm::SpecParseError("cannot open output file '" + path + "'");
        stream = &file;
    }
};

nlohmann::json kraus_to_json(const qpovm::KrausChannel& ch) {
    nlohmann::json ops = nlohmann::json::array();
    for (const auto& k : ch.kraus_ops()) {
        nlohmann::json rows = nlohmann::json::array();
        for (int i = 0; i < 2; ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (int j = 0; j < 2; ++j)
                row.push_back({k(i, j).real(), k(i, j).imag()});
            rows.push_back(row);
        }
        ops.push_back(rows);
    }
    return ops;
}

nlohmann::json mueller_to_json(const qpovm::MuellerMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < 4; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < 4; ++j) row.push_back(m.matrix()(i, j));
        rows.push_back(row);
    }
    return rows;
}

nlohmann::json diagnosis_to_json(const qpovm::CptpDiagnosis& d) {
    return {{"complete", d.complete},
            {"unital", d.unital},
            {"trace_preserving", d.trace_preserving},
            {"choi_min_eig", d.choi_min_eig},
            {"completeness_residual", d.completeness_residual},
            {"unitality_residual", d.unitality_residual}};
}

struct ChannelShowArgs {
    std::string spec_path;
    double t = 0.0;
    std::string format = "text";
    std::string output;
    bool raw_kraus = false;
};

int cmd_channel_show(const ChannelShowArgs& args) {
    const qpovm::ChannelFamily family = qpovm::parse_channel_spec_file(args.spec_path);
    const qpovm::KrausChannel ch =
        args.raw_kraus
            ? qpovm::raw_catalog_channel(family.kind(), family.params(), args.t)
            : family.channel_at(args.t);
    const qpovm::CptpDiagnosis diag = qpovm::validate_cptp(ch);
    const qpovm::MuellerMatrix mueller = qpovm::mueller_matrix(ch);

    OutputTarget out(args.output);
    if (args.format == "json") {
        nlohmann::json doc;
        doc["kind"] = qpovm::to_string(family.kind());
        doc["t"] = args.t;
        doc["kraus"] = kraus_to_json(ch);
        doc["mueller"] = mueller_to_json(mueller);
        doc["diagnosis"] = diagnosis_to_json(diag);
        *out.stream << doc.dump(2) << "\n";
    } else {
        *out.stream << "channel " << qpovm::to_string(family.kind()) << " at t="
                    << fmt9(args.t) << "\n";
        const auto& ops = ch.kraus_ops();
        for (std::size_t i = 0; i < ops.size(); ++i) {
            *out.stream << "kraus[" << i << "] = [[" << fmt_complex(ops[i](0, 0))
                        << ", " << fmt_complex(ops[i](0, 1)) << "], ["
                        << fmt_complex(ops[i](1, 0)) << ", "
                        << fmt_complex(ops[i](1, 1)) << "]]\n";
        }
        *out.stream << "mueller =\n";
        for (int i = 0; i < 4; ++i) {
            *out.stream << " ";
            for (int j = 0; j < 4; ++j)
                *out.stream << " " << fmt9(mueller.matrix()(i, j));
            *out.stream << "\n";
        }
        *out.stream << "complete=" << (diag.complete ? "true" : "false")
                    << " unital=" << (diag.unital ? "true" : "false")
                    << " trace_preserving="
                    << (diag.trace_preserving ? "true" : "false")
                    << " choi_min_eig=" << fmt9(diag.choi_min_eig)
                    << " completeness_residual="
                    << fmt9(diag.completeness_residual)
                    << " unitality_residual=" << fmt9(diag.unitality_residual)
                    << "\n";
    }
    return diag.complete ? kExitOk : kExitPhysics;
}

struct PovmArgs {
    std::string spec_path;
    double theta = 0.0;
    double phi = 0.0;
    double t = 0.0;
    bool table_check = false;
    std::string format = "csv";
    std::string output;
};

int cmd_povm_evolve(const PovmArgs& args) {
    const qpovm::ChannelFamily family = qpovm::parse_channel_spec_file(args.spec_path);
    const auto [e_plus, e_minus] =
        qpovm::heisenberg_effects(family.channel_at(args.t), args.theta, args.phi);
    const qpovm::BiasSharpness bs = qpovm::extract_bias_sharpness(e_plus);

    std::optional<qpovm::BiasSharpness> closed;
    std::string status;
    if (args.table_check) {
        closed = qpovm::catalog_closed_form(family.kind(), family.params(),
                                            args.theta, args.t);
        const qpovm::ClosedFormStatus ts = qpovm::closed_form_status(family.kind());
        status = (ts.bias_asserted && ts.sharpness_asserted) ? "ok"
                                                             : "informational";
    }

    OutputTarget out(args.output);
    if (args.format == "json") {
        nlohmann::json doc;
        doc["kind"] = qpovm::to_string(family.kind());
        doc["theta"] = args.theta;
        doc["phi"] = args.phi;
        doc["t"] = args.t;
        doc["bias"] = bs.x;
        doc["m"] = {bs.m[0], bs.m[1], bs.m[2]};
        doc["sharpness"] = bs.sharpness;
        if (closed) {
            doc["closed_form_check"] = {
                {"bias", closed->x},
                {"sharpness", closed->sharpness},
                {"bias_deviation", std::abs(bs.x - closed->x)},
                {"sharpness_deviation", std::abs(bs.sharpness - closed->sharpness)},
                {"status", status}};
        }
        *out.stream << doc.dump(2) << "\n";
    } else {
        *out.stream << "theta,phi,t,bias,m_x,m_y,m_z,sharpness";
        if (closed)
            *out.stream
                << ",closed_bias,closed_sharpness,bias_dev,sharpness_dev,status";
        *out.stream << "\n";
        *out.stream << fmt9(args.theta) << "," << fmt9(args.phi) << ","
                    << fmt9(args.t) << "," << fmt9(bs.x) << "," << fmt9(bs.m[0])
                    << "," << fmt9(bs.m[1]) << "," << fmt9(bs.m[2]) << ","
                    << fmt9(bs.sharpness);
        if (closed) {
            *out.stream << "," << fmt9(closed->x) << ","
                        << fmt9(closed->sharpness) << ","
                        << fmt9(std::abs(bs.x - closed->x)) << ","
                        << fmt9(std::abs(bs.sharpness - closed->sharpness))
                        << "," << status;
        }
        *out.stream << "\n";
    }
    return kExitOk;
}

struct MarkovArgs {
    std::string spec_path;
    double theta = std::numbers::pi / 2;
    double phi = 0.0;
    double t_max = 10.0;
    int steps = 200;
    std::string output;
};

int cmd_markov_scan(const MarkovArgs& args) {
    if (args.steps < 2) throw qpovm::SpecParseError("markov scan needs --steps >= 2");
    const qpovm::ChannelFamily family = qpovm::parse_channel_spec_file(args.spec_path);
    const std::vector<double> grid = qpovm::linear_grid(0.0, args.t_max, args.steps);

    // Reference pair for the distance column: the pure state along the
    // measurement axis against the maximally mixed state.
    const qpovm::Observable q = qpovm::observable_from_angles(args.theta, args.phi);
    const qpovm::Vector3d axis = qpovm::pauli_components(q.matrix).second;
    const qpovm::DensityMatrix rho_axis = qpovm::bloch_to_density({axis});
    const qpovm::DensityMatrix rho_mixed =
        qpovm::DensityMatrix::from_matrix(0.5 * qpovm::Matrix2cd::Identity());

    qpovm::Trajectory sharp;
    sharp.times = grid;
    OutputTarget out(args.output);
    *out.stream << "t,sharpness,bias,trace_distance\n";
    for (double t : grid) {
        const qpovm::KrausChannel ch = family.channel_at(t);
        const auto [e_plus, e_minus] =
            qpovm::heisenberg_effects(ch, args.theta, args.phi);
        const qpovm::BiasSharpness bs = qpovm::extract_bias_sharpness(e_plus);
        const double td = qpovm::trace_distance(qpovm::apply(ch, rho_axis),
                                                qpovm::apply(ch, rho_mixed));
        sharp.values.push_back(bs.sharpness);
        *out.stream << fmt9(t) << "," << fmt9(bs.sharpness) << "," << fmt9(bs.x)
                    << "," << fmt9(td) << "\n";
    }
    const qpovm::WitnessVerdict verdict = qpovm::detect_revivals(sharp);
    if (verdict.monotone) {
        *out.stream << "verdict=monotone\n";
    } else {
        *out.stream << "verdict=revivals:" << verdict.revivals.size()
                    << ",max_rise=" << fmt9(verdict.max_rise) << "\n";
    }
    return kExitOk;
}

struct EnergyPointArgs {
    double x = 0.0;
    double lambda = 1.0;
    double theta = 0.0;
    double phi = 0.0;
    double beta = 1.0;
    double omega = 1.0;
    bool nats = false;
    std::string format = "csv";
    std::string output;
};

qpovm::MeasurementModel to_model(const EnergyPointArgs& args) {
    qpovm::MeasurementModel model;
    model.x = args.x;
    model.lambda = args.lambda;
    model.theta = args.theta;
    model.phi = args.phi;
    model.beta = args.beta;
    model.omega_s = args.omega;
    return model;
}

void require_triangle(double x, double lambda, double beta) {
    if (x < 0.0 || x > 1.0 || lambda < 0.0 || lambda > 1.0 ||
        x + lambda > 1.0 + 1e-12) {
        std::ostringstream msg;
        msg << "bias and sharpness must satisfy x, lambda in [0,1] and x + lambda <= 1"
            << " (got x=" << fmt9(x) << ", lambda=" << fmt9(lambda) << ")";
        throw qpovm::SpecParseError(msg.str());
    }
    if (beta <= 0.0) throw qpovm::SpecParseError("--beta must be positive");
}

int cmd_energy_point(const EnergyPointArgs& args) {
    require_triangle(args.x, args.lambda, args.beta);
    const qpovm::EnergyReport report = qpovm::energy_cost(to_model(args));
    const double ln2 = std::numbers::ln2;
    const double entropy = args.nats ? report.delta_s_m * ln2 : report.delta_s_m;
    const double cost = report.delta_e_s + entropy / args.beta;

    OutputTarget out(args.output);
    if (args.format == "json") {
        nlohmann::json doc;
        doc["x"] = args.x;
        doc["lambda"] = args.lambda;
        doc["theta"] = args.theta;
        doc["phi"] = args.phi;
        doc["omega_s"] = args.omega;
        doc["beta"] = args.beta;
        doc["entropy_units"] = args.nats ? "nats" : "bits";
        doc["delta_s_m"] = entropy;
        doc["delta_e_s"] = report.delta_e_s;
        doc["e_cost"] = cost;
        doc["p_plus"] = report.p_plus;
        doc["p_minus"] = report.p_minus;
        doc["memory_eigenvalues"] = report.memory_eigenvalues;
        *out.stream << doc.dump(2) << "\n";
    } else {
        *out.stream
            << "x,lambda,theta,phi,omega_s,beta,p_plus,p_minus,delta_e_s,delta_s_m,e_cost\n";
        *out.stream << fmt9(args.x) << "," << fmt9(args.lambda) << ","
                    << fmt9(args.theta) << "," << fmt9(args.phi) << ","
                    << fmt9(args.omega) << "," << fmt9(args.beta) << ","
                    << fmt9(report.p_plus) << "," << fmt9(report.p_minus) << ","
                    << fmt9(report.delta_e_s) << "," << fmt9(entropy) << ","
                    << fmt9(cost) << "\n";
    }
    return kExitOk;
}

struct EnergySweepArgs {
    int grid = 101;
    double theta = 0.0;
    double beta = 1.0;
    double omega = 1.0;
    std::string output;
};

int cmd_energy_sweep(const EnergySweepArgs& args) {
    if (args.grid < 2) throw qpovm::SpecParseError("--grid must be >= 2");
    if (args.beta <= 0.0) throw qpovm::SpecParseError("--beta must be positive");
    OutputTarget out(args.output);
    *out.stream << "x,lambda,delta_e_s,delta_s_m,e_cost\n";
    const int n = args.grid;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double x = static_cast<double>(i) / (n - 1);
            const double lambda = static_cast<double>(j) / (n - 1);
            if (x + lambda > 1.0 + 1e-12) continue;
            qpovm::MeasurementModel model;
            model.x = x;
            model.lambda = lambda;
            model.theta = args.theta;
            model.beta = args.beta;
            model.omega_s = args.omega;
            const qpovm::EnergyReport report = qpovm::energy_cost(model);
            *out.stream << fmt9(x) << "," << fmt9(lambda) << ","
                        << fmt9(report.delta_e_s) << "," << fmt9(report.delta_s_m)
                        << "," << fmt9(report.e_cost) << "\n";
        }
    }
    return kExitOk;
}

struct EnergyTrajectoryArgs {
    double coupling_r = 5.0;
    double t_max = 10.0;
    int steps = 200;
    double beta = 1.0;
    double omega = 1.0;
    std::string output;
};

int cmd_energy_trajectory(const EnergyTrajectoryArgs& args) {
    if (args.steps < 2) throw qpovm::SpecParseError("--steps must be >= 2");
    if (args.coupling_r < 0.0)
        throw qpovm::SpecParseError("coupling R must be >= 0");
    if (args.beta <= 0.0) throw qpovm::SpecParseError("--beta must be positive");
    const auto rows = qpovm::ad_energy_trajectory(
        args.coupling_r, args.beta, args.omega,
        qpovm::linear_grid(0.0, args.t_max, args.steps));
    OutputTarget out(args.output);
    *out.stream << "tau,G,x,lambda,e_cost\n";
    for (const auto& row : rows) {
        *out.stream << fmt9(row.tau) << "," << fmt9(row.g) << "," << fmt9(row.x)
                    << "," << fmt9(row.lambda) << "," << fmt9(row.e_cost) << "\n";
    }
    return kExitOk;
}

int cmd_selftest(std::uint64_t seed) {
    const auto results = qpovm::run_selftests(seed);
    bool all_pass = true;
    for (const auto& r : results) {
        std::cout << (r.pass ? "PASS" : "FAIL") << " " << r.name << " (max dev "
                  << fmt9(r.max_deviation) << ", tol " << fmt9(r.tolerance)
                  << ")\n";
        all_pass = all_pass && r.pass;
    }
    std::cout << (all_pass ? "selftest: all properties hold"
                           : "selftest: FAILURES detected")
              << " (seed " << seed << ")\n";
    return all_pass ? kExitOk : kExitPhysics;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qubit channel / POVM / measurement-cost toolkit"};
    app.require_subcommand(1);

    // channel show
    auto* channel = app.add_subcommand("channel", "channel inspection");
    channel->require_subcommand(1);
    ChannelShowArgs show_args;
    auto* show = channel->add_subcommand("show", "print Kraus, Mueller, diagnosis");
    show->add_option("--spec", show_args.spec_path, "channel spec JSON file")
        ->required();
    show->add_option("--time", show_args.t, "evaluation time");
    show->add_option("--format", show_args.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    show->add_option("--output", show_args.output, "write to file instead of stdout");
    show->add_flag("--raw-kraus", show_args.raw_kraus,
                   "use the uncorrected catalog operators");

    // povm evolve
    auto* povm = app.add_subcommand("povm", "evolved measurement properties");
    povm->require_subcommand(1);
    PovmArgs povm_args;
    auto* evolve = povm->add_subcommand("evolve", "bias and sharpness of E+");
    evolve->add_option("--spec", povm_args.spec_path, "channel spec JSON file")
        ->required();
    evolve->add_option("--theta", povm_args.theta, "polar measurement angle");
    evolve->add_option("--phi", povm_args.phi, "azimuthal measurement angle");
    evolve->add_option("--time", povm_args.t, "evaluation time");
    evolve->add_flag("--table-check", povm_args.table_check,
                     "compare against the published closed forms");
    evolve->add_option("--format", povm_args.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    evolve->add_option("--output", povm_args.output, "write to file");

    // markov scan
    auto* markov = app.add_subcommand("markov", "non-Markovianity witness");
    markov->require_subcommand(1);
    MarkovArgs markov_args;
    auto* scan = markov->add_subcommand("scan", "sharpness monotonicity scan");
    scan->add_option("--spec", markov_args.spec_path, "channel spec JSON file")
        ->required();
    scan->add_option("--theta", markov_args.theta, "polar measurement angle");
    scan->add_option("--phi", markov_args.phi, "azimuthal measurement angle");
    scan->add_option("--t-max", markov_args.t_max, "scan end time");
    scan->add_option("--steps", markov_args.steps, "number of grid points");
    scan->add_option("--output", markov_args.output, "write CSV to file");

    // energy point|sweep|ad-trajectory
    auto* energy = app.add_subcommand("energy", "measurement energy cost");
    energy->require_subcommand(1);

    EnergyPointArgs point_args;
    auto* point = energy->add_subcommand("point", "single (x, lambda) report");
    point->add_option("x", point_args.x, "bias")->required();
    point->add_option("lambda", point_args.lambda, "sharpness")->required();
    point->add_option("--theta", point_args.theta, "polar measurement angle");
    point->add_option("--phi", point_args.phi, "azimuthal measurement angle");
    point->add_option("--beta", point_args.beta, "inverse temperature");
    point->add_option("--omega", point_args.omega, "system Hamiltonian scale");
    point->add_flag("--nats", point_args.nats, "report entropy in nats");
    point->add_option("--format", point_args.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    point->add_option("--output", point_args.output, "write to file");

    EnergySweepArgs sweep_args;
    auto* sweep = energy->add_subcommand("sweep", "triangular (x, lambda) grid");
    sweep->add_option("--grid", sweep_args.grid, "points per axis");
    sweep->add_option("--theta", sweep_args.theta, "polar measurement angle");
    sweep->add_option("--beta", sweep_args.beta, "inverse temperature");
    sweep->add_option("--omega", sweep_args.omega, "system Hamiltonian scale");
    sweep->add_option("--output", sweep_args.output, "write CSV to file");

    EnergyTrajectoryArgs traj_args;
    auto* traj = energy->add_subcommand(
        "ad-trajectory", "cost along the damped-AD kernel, x + lambda = 1");
    traj->add_option("R", traj_args.coupling_r, "kernel coupling strength")
        ->required();
    traj->add_option("--t-max", traj_args.t_max, "scan end time");
    traj->add_option("--steps", traj_args.steps, "number of grid points");
    traj->add_option("--beta", traj_args.beta, "inverse temperature");
    traj->add_option("--omega", traj_args.omega, "system Hamiltonian scale");
    traj->add_option("--output", traj_args.output, "write CSV to file");

    // selftest
    std::uint64_t seed = 12345;
    auto* selftest = app.add_subcommand("selftest", "seeded property checks");
    selftest->add_option("--seed", seed, "RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (show->parsed()) return cmd_channel_show(show_args);
        if (evolve->parsed()) return cmd_povm_evolve(povm_args);
        if (scan->parsed()) return cmd_markov_scan(markov_args);
        if (point->parsed()) return cmd_energy_point(point_args);
        if (sweep->parsed()) return cmd_energy_sweep(sweep_args);
        if (traj->parsed()) return cmd_energy_trajectory(traj_args);
        if (selftest->parsed()) return cmd_selftest(seed);
    } catch (const qpovm::SpecParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const qpovm::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPhysics;
    }
    return kExitUsage;
}
