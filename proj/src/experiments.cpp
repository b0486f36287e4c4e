#include <cmath>
#include <sstream>

#include "tdflow/benchmark.hpp"
#include "tdflow/error.hpp"
#include "tdflow/harness.hpp"

namespace tdflow {

namespace {

std::string number(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

std::vector<ErrorTable> run_circle_lte(const ExperimentConfig& config) {
    const KernelSpec spec = resolve_kernel(config.kernel);
    std::vector<ErrorTable> tables;
    for (double r0 : config.radii) {
        require(r0 > 0.0, "run_circle_lte: radii must be positive");
        ErrorTable table;
        table.experiment = "circle-lte";
        table.kernel = config.kernel;
        table.norm = "abs-radius";
        table.resolution_label = "inv_t";
        table.series = "r0=" + number(r0);
        table.metadata["r0"] = number(r0);
        table.metadata["step_ratio"] = number(spec.step_ratio());
        table.metadata["config"] = config.fingerprint(false);
        for (int k = config.lte_min_exponent; k <= config.lte_max_exponent; ++k) {
            const double t = std::ldexp(r0 * r0, -k);
            const StepParams params(spec, t);
            const double r1 = radial_step(r0, params);
            const double exact = circle_exact(r0, params.effective_step());
            table.add(1.0 / t, std::abs(r1 - exact));
        }
        tables.push_back(std::move(table));
    }
    return tables;
}

double benchmark_horizon(const ExperimentConfig& config) {
    return config.effective_time ? config.T : config.T * resolve_kernel(config.kernel).step_ratio();
}

GraphInterface graph_benchmark(const ExperimentConfig& config) {
    const GraphInterface f0 = resolve_initial(config.initial, config.benchmark_nodes);
    FDConfig fd;
    fd.n_space = config.benchmark_nodes;
    fd.T = benchmark_horizon(config);
    const double dx = f0.period() / static_cast<double>(fd.n_space);
    fd.dt = config.benchmark_safety * dx * dx;
    return config.benchmark_extrapolate ? fd_solve_extrapolated(f0, fd) : fd_solve(f0, fd);
}

ErrorTable run_graph_convergence(const ExperimentConfig& config, const GraphInterface& reference) {
    const KernelSpec spec = resolve_kernel(config.kernel);
    const GraphInterface f0 = resolve_initial(config.initial, config.nodes);
    const GraphInterface ref = resample(reference, config.nodes);
    GraphQuadrature quad;
    quad.window_tolerance = config.window_tolerance;
    quad.spacing_factor = config.spacing_factor;

    ErrorTable table;
    table.experiment = "graph-converge";
    table.kernel = config.kernel;
    table.norm = "L2";
    table.resolution_label = "n_steps";
    table.series = config.initial;
    table.metadata["initial"] = config.initial;
    table.metadata["T"] = number(config.T);
    table.metadata["benchmark_T"] = number(benchmark_horizon(config));
    table.metadata["nodes"] = std::to_string(config.nodes);
    table.metadata["benchmark_nodes"] = std::to_string(config.benchmark_nodes);
    table.metadata["benchmark_extrapolate"] = config.benchmark_extrapolate ? "true" : "false";
    table.metadata["time_mapping"] = config.effective_time ? "effective" : "raw";
    table.metadata["config"] = config.fingerprint(false);
    for (std::size_t n : config.steps) {
        const GraphInterface f = graph_evolve(f0, config.T, n, spec, config.effective_time, quad);
        table.add(static_cast<double>(n), l2_error(f, ref));
    }
    return table;
}

ErrorTable run_graph_convergence(const ExperimentConfig& config) {
    return run_graph_convergence(config, graph_benchmark(config));
}

GridField resolve_grid_shape(const ExperimentConfig& config) {
    const std::string& shape = config.grid_shape;
    const double L = config.grid_length;
    const std::size_t n = config.grid_n;
    if (shape == "disk") {
        GridField f(n, n, L, L);
        f.add_disk(0.5 * L, 0.5 * L, config.grid_radius);
        return f;
    }
    if (shape == "two-disks") {
        GridField f(n, n, L, L);
        const double r = config.grid_radius;
        const double gap = 0.1 * r;
        f.add_disk(0.5 * L - r - 0.5 * gap, 0.5 * L, r);
        f.add_disk(0.5 * L + r + 0.5 * gap, 0.5 * L, r);
        return f;
    }
    return load_grid(shape);
}

GridRunResult run_grid(const ExperimentConfig& config, const WarningHandler& warn) {
    require(!config.steps.empty(), "run_grid: need a step count");
    const KernelSpec spec = resolve_kernel(config.kernel);
    GridField field = resolve_grid_shape(config);
    const std::size_t n_steps = config.steps.back();
    const StepParams params(spec, kernel_time(spec, config.T, n_steps, config.effective_time));
    GridStepper stepper(field.nx(), field.ny(), field.lx(), field.ly(), params, warn);

    ErrorTable areas;
    areas.experiment = "grid-run";
    areas.kernel = config.kernel;
    areas.norm = "area";
    areas.resolution_label = "step";
    areas.series = config.grid_shape;
    areas.metadata["t"] = number(params.t);
    areas.metadata["tau"] = number(params.effective_step());
    areas.metadata["config"] = config.fingerprint(false);
    areas.rows.push_back({0.0, field.area(), std::nullopt});
    for (std::size_t k = 1; k <= n_steps; ++k) {
        field = stepper.step(field);
        areas.rows.push_back({static_cast<double>(k), field.area(), std::nullopt});
    }
    return {std::move(field), std::move(areas)};
}

}  // namespace tdflow
