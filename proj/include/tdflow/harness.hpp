#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tdflow/evolve.hpp"
#include "tdflow/graph.hpp"
#include "tdflow/grid.hpp"
#include "tdflow/kernel.hpp"

namespace tdflow {

/// Discrete L2 norm of a - b over one period: sqrt((L/n) sum (a_i - b_i)^2).
/// Inputs on different node counts are compared on the finer of the two grids.
[[nodiscard]] double l2_error(const GraphInterface& a, const GraphInterface& b);

struct ErrorRow {
    double resolution = 0.0;  ///< n_steps, or 1/t for single-step sweeps
    double error = 0.0;
    std::optional<double> order;

    friend bool operator==(const ErrorRow&, const ErrorRow&) = default;
};

/// Errors against a refinement measure. The order of row k is
/// log(e_{k-1}/e_k) / log(n_k/n_{k-1}); the first row has none.
struct ErrorTable {
    std::string experiment;
    std::string kernel;
    std::string norm;
    std::string resolution_label = "n_steps";
    std::string series;
    std::map<std::string, std::string> metadata;
    std::vector<ErrorRow> rows;

    /// Appends a row and fills in its observed order.
    void add(double resolution, double error);

    /// Least-squares slope of -log(error) against log(resolution).
    [[nodiscard]] std::optional<double> fitted_order() const;

    friend bool operator==(const ErrorTable&, const ErrorTable&) = default;
};

enum class TableFormat { Csv, Json };

[[nodiscard]] TableFormat parse_format(const std::string& name);

/// CSV "<resolution_label>,error,order" (order blank when absent), or a JSON
/// object mirroring ErrorTable. Numbers use 17 significant digits in CSV and
/// shortest round-trip form in JSON, so output is byte-stable.
void emit(const ErrorTable& table, TableFormat format, std::ostream& out);

/// Several tables: CSV gains a leading "series" column; JSON is an array.
void emit(std::span<const ErrorTable> tables, TableFormat format, std::ostream& out);

/// Writes to `path`, or to stdout when path is empty or "-".
void emit(std::span<const ErrorTable> tables, TableFormat format, const std::string& path);

[[nodiscard]] std::string to_json(const ErrorTable& table);
[[nodiscard]] ErrorTable table_from_json(const std::string& text);

enum class ExperimentKind { KernelReport, Verify, CircleLte, GraphConverge, GridRun };

[[nodiscard]] std::string to_string(ExperimentKind kind);

/// Flat key/value experiment definition ("key = value", '#' comments). The file
/// must declare "schema = 1"; unknown keys are rejected.
struct ExperimentConfig {
    static constexpr int kSchemaVersion = 1;

    ExperimentKind kind = ExperimentKind::GraphConverge;
    std::string kernel = "paper";          ///< gaussian | paper | path to a kernel record
    std::string initial = "half-sine";     ///< half-sine | exp-cos | path to a graph file
    double T = 0.025;
    std::vector<std::size_t> steps{32, 64, 128, 256, 512};
    bool effective_time = true;  ///< false: kernel time T/n per step, compared at step_ratio * T

    // graph scheme and benchmark
    std::size_t nodes = 256;
    std::size_t benchmark_nodes = 4096;
    double benchmark_safety = 0.25;
    bool benchmark_extrapolate = true;  ///< Richardson-combine benchmark_nodes and twice that
    double window_tolerance = 1e-14;
    double spacing_factor = 0.5;

    // circle LTE: t = 2^-k r0^2 for k = lte_min_exponent .. lte_max_exponent
    std::vector<double> radii{1.0, 2.0, 3.0};
    int lte_min_exponent = 6;
    int lte_max_exponent = 13;

    // grid run
    std::string grid_shape = "disk";  ///< disk | two-disks | path to a PGM raster
    std::size_t grid_n = 256;
    double grid_length = 4.0;
    double grid_radius = 1.0;

    std::string output;
    std::string format = "csv";
    std::uint64_t seed = 0;

    /// Stable 64-bit FNV-1a digest of every field, optionally leaving out the kernel.
    [[nodiscard]] std::string fingerprint(bool include_kernel = true) const;
};

[[nodiscard]] ExperimentConfig parse_config(std::istream& in);
[[nodiscard]] ExperimentConfig parse_config_string(const std::string& text);
[[nodiscard]] ExperimentConfig load_config(const std::string& path);

/// Resolves "gaussian", "paper", or a kernel record path.
[[nodiscard]] KernelSpec resolve_kernel(const std::string& choice);

/// Resolves "half-sine" (1/2 sin(2 pi x), period 1), "exp-cos" (exp(cos(pi x)),
/// period 2), or a graph file, sampled or resampled onto n nodes.
[[nodiscard]] GraphInterface resolve_initial(const std::string& choice, std::size_t n);

/// One single-step sweep per radius; error |r1 - sqrt(r0^2 - 2 tau)|.
[[nodiscard]] std::vector<ErrorTable> run_circle_lte(const ExperimentConfig& config);

/// Physical time the scheme reaches: T with the effective-time mapping, and
/// step_ratio * T when each step uses raw kernel time T/n.
[[nodiscard]] double benchmark_horizon(const ExperimentConfig& config);

/// Benchmark once at config.benchmark_nodes, then the threshold scheme at each step count.
[[nodiscard]] ErrorTable run_graph_convergence(const ExperimentConfig& config);

/// Same, reusing a precomputed benchmark solution (already at benchmark_horizon).
[[nodiscard]] ErrorTable run_graph_convergence(const ExperimentConfig& config, const GraphInterface& reference);

/// Finite-difference solution at benchmark_horizon(config).
[[nodiscard]] GraphInterface graph_benchmark(const ExperimentConfig& config);

struct GridRunResult {
    GridField final_field;
    ErrorTable areas;  ///< resolution = step index, error = area
};

/// Evolves the configured shape with steps.back() steps up to time T.
[[nodiscard]] GridRunResult run_grid(const ExperimentConfig& config, const WarningHandler& warn = stderr_warning);

[[nodiscard]] GridField resolve_grid_shape(const ExperimentConfig& config);

}  // namespace tdflow
