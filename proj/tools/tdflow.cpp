// Command-line driver: kernel report, consistency checks and the convergence studies.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tdflow/benchmark.hpp"
#include "tdflow/consistency.hpp"
#include "tdflow/error.hpp"
#include "tdflow/evolve.hpp"
#include "tdflow/harness.hpp"
#include "tdflow/kernel.hpp"

using namespace tdflow;
using nlohmann::ordered_json;

namespace {

constexpr int kUsageExit = 2;

struct Common {
    std::string kernel;
    std::string config;
    std::string out;
    std::string format;
    std::optional<std::uint64_t> seed;
    bool raw_time = false;
};

void add_common(CLI::App* cmd, Common& c, bool experiment) {
    cmd->add_option("--kernel", c.kernel, "gaussian, paper, or a kernel record file");
    cmd->add_option("--out", c.out, "output path (default: stdout)");
    cmd->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--seed", c.seed, "random seed");
    if (experiment) {
        cmd->add_option("--config", c.config, "experiment config file")->check(CLI::ExistingFile);
        cmd->add_flag("--raw-time", c.raw_time, "use kernel time t = T/n instead of the effective-time mapping");
    }
}

ExperimentConfig load(const Common& c, ExperimentKind kind) {
    ExperimentConfig cfg = c.config.empty() ? ExperimentConfig{} : load_config(c.config);
    cfg.kind = kind;
    if (!c.kernel.empty()) cfg.kernel = c.kernel;
    if (!c.out.empty()) cfg.output = c.out;
    if (!c.format.empty()) cfg.format = c.format;
    if (c.seed) cfg.seed = *c.seed;
    if (c.raw_time) cfg.effective_time = false;
    return cfg;
}

std::string num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

// Writes text to path, or stdout when empty or "-".
void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::Io, "cannot open '" + path + "' for writing");
    out << text;
    if (!out) fail(ErrorKind::Io, "write failed for '" + path + "'");
}

// Emits an ordered key/value record as "key = value" lines or a JSON object.
std::string render(const std::vector<std::pair<std::string, std::string>>& kv, const ordered_json& j,
                   TableFormat format) {
    if (format == TableFormat::Json) return j.dump(2) + "\n";
    std::string s;
    for (const auto& [k, v] : kv) s += k + " = " + v + "\n";
    return s;
}

int cmd_solve_kernel(const Common& c, double tolerance, const std::string& save) {
    const KernelSpec spec = solve_special_kernel(tolerance);
    const PositivityCertificate cert = positivity_certificate(spec);
    const FourierProbe probe = find_negative_multiplier(spec);
    const auto b = [](bool v) { return std::string(v ? "true" : "false"); };

    const std::vector<std::pair<std::string, std::string>> kv = {
        {"scales", "1 4 0.25"},
        {"c1", num(spec.coeffs()[1])},
        {"c2", num(spec.coeffs()[2])},
        {"threshold", num(spec.threshold())},
        {"step_ratio", num(spec.step_ratio())},
        {"cubic_at_1/5", num(special_cubic_rational(1, 5))},
        {"cubic_at_1/4", num(special_cubic_rational(1, 4))},
        {"positivity.min_q", num(cert.min_value)},
        {"positivity.argmin_xi", num(cert.argmin_xi)},
        {"positivity.is_positive", b(cert.is_positive)},
        {"positivity.lower_bound_holds", b(cert.lower_bound_holds)},
        {"fourier.negative_found", b(probe.found)},
        {"fourier.k", num(probe.k_norm)},
        {"fourier.t", num(probe.t)},
        {"fourier.multiplier", num(probe.value)},
    };
    ordered_json j;
    j["scales"] = {1.0, 4.0, 0.25};
    j["coeffs"] = {spec.coeffs()[0], spec.coeffs()[1], spec.coeffs()[2]};
    j["threshold"] = spec.threshold();
    j["step_ratio"] = spec.step_ratio();
    j["cubic_at_1/5"] = special_cubic_rational(1, 5);
    j["cubic_at_1/4"] = special_cubic_rational(1, 4);
    j["positivity"] = {{"min_q", cert.min_value},
                       {"argmin_xi", cert.argmin_xi},
                       {"is_positive", cert.is_positive},
                       {"lower_bound_holds", cert.lower_bound_holds}};
    j["fourier"] = {{"negative_found", probe.found}, {"k", probe.k_norm}, {"t", probe.t}, {"multiplier", probe.value}};

    write_text(c.out, render(kv, j, parse_format(c.format.empty() ? "csv" : c.format)));
    if (!save.empty()) save_kernel(save, spec);
    return 0;
}

int cmd_verify(const Common& c, std::size_t samples) {
    const KernelSpec spec = resolve_kernel(c.kernel.empty() ? "paper" : c.kernel);
    const std::uint64_t seed = c.seed.value_or(0);
    const ExpansionReport r2 = scheme_expansion_2d(spec, {1.0, 0.0});
    const ExpansionReport r3 = scheme_expansion_3d(spec);
    const ObstructionResult ob = obstruction_check_3d(samples, seed);
    const double ratio = spec.step_ratio();
    const double identity_gap = std::abs(6.0 * r3.B2 - r3.B4 - ratio * ratio) / std::max(1.0, ratio * ratio);

    const TableFormat fmt = parse_format(c.format.empty() ? "csv" : c.format);
    std::string text;
    if (fmt == TableFormat::Csv) {
        text += "# 2D expansion at g'' = 1, g'''' = 0\n" + format_report_2d(r2);
        text += "# 3D expansion\n" + format_report_3d(r3);
        text += "identity_6B2_minus_B4_rel_gap = " + num(identity_gap) + "\n";
        text += "# 3D obstruction over random kernels\n";
        text += "obstruction.passed = " + std::string(ob.passed ? "true" : "false") + "\n";
        text += "obstruction.checked = " + std::to_string(ob.checked) + "\n";
        text += "obstruction.rejected = " + std::to_string(ob.rejected) + "\n";
        text += "obstruction.theta1_zero_checked = " + std::to_string(ob.theta1_zero_checked) + "\n";
        text += "obstruction.max_relative_deviation = " + num(ob.max_relative_deviation) + "\n";
        text += "obstruction.seed = " + std::to_string(seed) + "\n";
        if (ob.first_failure) text += "obstruction.first_failure =\n" + kernel_to_string(*ob.first_failure);
    } else {
        ordered_json j;
        j["expansion_2d"] = {{"a1", r2.a1},
                             {"a2", r2.a2},
                             {"residual_theta1", r2.residual_theta1},
                             {"residual_theta2", r2.residual_theta2}};
        j["expansion_3d"] = {{"B1", r3.B1}, {"B2", r3.B2}, {"B3", r3.B3}, {"B4", r3.B4}};
        j["identity_6B2_minus_B4_rel_gap"] = identity_gap;
        j["obstruction"] = {{"passed", ob.passed},
                            {"checked", ob.checked},
                            {"rejected", ob.rejected},
                            {"theta1_zero_checked", ob.theta1_zero_checked},
                            {"max_relative_deviation", ob.max_relative_deviation},
                            {"seed", seed}};
        if (ob.first_failure) j["obstruction"]["first_failure"] = kernel_to_string(*ob.first_failure);
        text = j.dump(2) + "\n";
    }
    write_text(c.out, text);
    if (!ob.passed) {
        std::cerr << "error: 3D obstruction identity failed\n";
        return static_cast<int>(ErrorKind::Numerical);
    }
    return 0;
}

int cmd_circle_lte(const Common& c) {
    const ExperimentConfig cfg = load(c, ExperimentKind::CircleLte);
    const auto tables = run_circle_lte(cfg);
    emit(std::span<const ErrorTable>(tables), parse_format(cfg.format), cfg.output);
    for (const ErrorTable& t : tables) {
        std::cerr << t.series << ": fitted order " << num(t.fitted_order().value_or(0.0)) << '\n';
    }
    return 0;
}

int cmd_graph_converge(const Common& c, const std::string& initial, const std::string& save_reference) {
    ExperimentConfig cfg = load(c, ExperimentKind::GraphConverge);
    if (!initial.empty()) cfg.initial = initial;
    const GraphInterface reference = graph_benchmark(cfg);
    if (!save_reference.empty()) save_graph(save_reference, reference);
    const ErrorTable table = run_graph_convergence(cfg, reference);
    const std::vector<ErrorTable> one{table};
    emit(std::span<const ErrorTable>(one), parse_format(cfg.format), cfg.output);
    return 0;
}

int cmd_grid_run(const Common& c, const std::string& shape, const std::string& save_grid_path) {
    ExperimentConfig cfg = load(c, ExperimentKind::GridRun);
    if (!shape.empty()) cfg.grid_shape = shape;
    const GridRunResult r = run_grid(cfg);
    const std::vector<ErrorTable> one{r.areas};
    emit(std::span<const ErrorTable>(one), parse_format(cfg.format), cfg.output);
    if (!save_grid_path.empty()) save_grid(save_grid_path, r.final_field);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Second-order monotone threshold dynamics for curve shortening"};
    app.require_subcommand(1);

    Common common;

    double tolerance = 1e-14;
    std::string save_kernel_path;
    auto* solve = app.add_subcommand("solve-kernel", "solve for the special kernel and certify its positivity");
    add_common(solve, common, false);
    solve->add_option("--tolerance", tolerance, "bisection bracket width")->check(CLI::PositiveNumber);
    solve->add_option("--save", save_kernel_path, "also write the kernel record here");

    std::size_t samples = 100;
    auto* verify = app.add_subcommand("verify", "consistency residuals and the 3D obstruction");
    add_common(verify, common, false);
    verify->add_option("--samples", samples, "random kernels for the obstruction check")->check(CLI::PositiveNumber);

    auto* lte = app.add_subcommand("circle-lte", "one-step error on shrinking circles");
    add_common(lte, common, true);

    std::string initial;
    std::string save_reference;
    auto* converge = app.add_subcommand("graph-converge", "global error of the graph scheme against the benchmark");
    add_common(converge, common, true);
    converge->add_option("--initial", initial, "half-sine, exp-cos, or a graph file");
    converge->add_option("--save-reference", save_reference, "write the benchmark solution as a graph file");

    std::string shape;
    std::string save_grid_path;
    auto* grid = app.add_subcommand("grid-run", "evolve a set on a periodic grid");
    add_common(grid, common, true);
    grid->add_option("--shape", shape, "disk, two-disks, or a PGM raster");
    grid->add_option("--save-grid", save_grid_path, "write the final field as PGM plus header");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsageExit;
    }

    try {
        if (*solve) return cmd_solve_kernel(common, tolerance, save_kernel_path);
        if (*verify) return cmd_verify(common, samples);
        if (*lte) return cmd_circle_lte(common);
        if (*converge) return cmd_graph_converge(common, initial, save_reference);
        if (*grid) return cmd_grid_run(common, shape, save_grid_path);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
