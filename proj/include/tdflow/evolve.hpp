#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "tdflow/graph.hpp"
#include "tdflow/grid.hpp"
#include "tdflow/kernel.hpp"

namespace tdflow {

/// Kernel plus kernel time t; the scheme advances the front by the effective
/// time tau = step_ratio * t per step.
struct StepParams {
    StepParams(KernelSpec kernel, double t);

    KernelSpec spec;
    double t;

    [[nodiscard]] double effective_step() const noexcept { return spec.step_ratio() * t; }
};

/// Kernel time per step for n steps up to final time T: (T/n)/step_ratio when
/// `effective_time`, else T/n.
[[nodiscard]] double kernel_time(const KernelSpec& spec, double T, std::size_t n_steps, bool effective_time);

using WarningHandler = std::function<void(const std::string&)>;

/// Prints "warning: <msg>" on stderr.
void stderr_warning(const std::string& message);

// ---------------------------------------------------------------- radial

/// psi(r) = (K_t * 1_{disk(r0)}) at distance r from the disk centre.
[[nodiscard]] double radial_convolution(const KernelSpec& spec, double t, double r0, double r);

/// Radius of the thresholded disk after one step from a disk of radius r0.
[[nodiscard]] double radial_step(double r0, const StepParams& params);

// ---------------------------------------------------------------- graph

/// Quadrature controls for the graph convolution.
struct GraphQuadrature {
    /// How node values are carried onto the quadrature grid. Spectral is
    /// accurate to rounding on smooth fronts and adapts the spacing to the slope.
    /// Linear uses one slope-independent grid for every component with
    /// nonnegative interpolation weights, so ordered inputs stay ordered exactly,
    /// at second-order accuracy in the node spacing.
    enum class Refinement { Spectral, Linear };

    Refinement refinement = Refinement::Spectral;
    /// Integrand window: keep x-offsets where the Gaussian exceeds this fraction of its peak.
    double window_tolerance = 1e-14;
    /// Trapezoid spacing per component, in units of sqrt(alpha_j t) / max(1, max|f'|).
    /// Linear refinement drops the slope factor and uses the narrowest component's spacing throughout.
    double spacing_factor = 0.5;
    /// The window may cover at most this many periods.
    double max_periods = 64.0;
    /// Upper bound on the refined sample count.
    std::size_t max_fine_samples = std::size_t{1} << 24;
};

/// Evaluates psi = K_t * 1_Sigma for Sigma below a periodic graph.
///
/// Each Gaussian component is integrated exactly in y (erf) and by the
/// trapezoidal rule in x over a spectrally refined copy of the samples. The
/// integrand is smooth with Gaussian decay, so the trapezoidal rule on the
/// whole line converges spectrally; periodic images come from wrapping indices.
class GraphConvolver {
public:
    GraphConvolver(const GraphInterface& f, const StepParams& params, const GraphQuadrature& quad = {});

    /// psi(x, y) - lambda.
    [[nodiscard]] double excess(double x, double y) const;

    /// psi(x, y).
    [[nodiscard]] double operator()(double x, double y) const { return params_.spec.threshold() + excess(x, y); }

    /// psi - lambda and d psi / dy at coarse node i.
    void excess_at_node(std::size_t i, double y, double& value, double& slope) const;

    [[nodiscard]] std::size_t fine_size() const noexcept { return fine_.size(); }

private:
    struct Component {
        double coeff;
        double inv_width;               // 1 / (2 sqrt(s))
        std::size_t stride;             // in fine samples
        std::ptrdiff_t reach;           // points per side
        std::vector<double> node_weights;  // h*stride*g_s(m*h*stride), m = -reach..reach
        double sqrt_s;
    };

    StepParams params_;
    double period_;
    std::size_t coarse_n_;
    std::vector<double> fine_;
    double h_;
    std::vector<Component> comps_;
};

/// psi(x, y) for one evaluation; builds a GraphConvolver internally.
[[nodiscard]] double graph_convolution(const GraphInterface& f, double x, double y, const StepParams& params,
                                       const GraphQuadrature& quad = {});

/// One threshold step: at every node, the unique y with psi(x_i, y) = lambda.
[[nodiscard]] GraphInterface graph_step(const GraphInterface& f, const StepParams& params,
                                        const GraphQuadrature& quad = {});

[[nodiscard]] GraphInterface graph_evolve(const GraphInterface& f0, double T, std::size_t n_steps,
                                          const KernelSpec& spec, bool use_effective_time = true,
                                          const GraphQuadrature& quad = {});

// ---------------------------------------------------------------- grid

/// Spectral convolve-and-threshold on a periodic grid. Holds the FFT plans and
/// the multiplier table so repeated steps on one geometry reuse them.
class GridStepper {
public:
    GridStepper(std::size_t nx, std::size_t ny, double lx, double ly, const StepParams& params,
                WarningHandler warn = stderr_warning);
    ~GridStepper();
    GridStepper(GridStepper&&) noexcept;
    GridStepper& operator=(GridStepper&&) noexcept;

    [[nodiscard]] GridField step(const GridField& field);

    /// psi at every cell centre for the given field (row-major, j*nx + i).
    [[nodiscard]] std::vector<double> convolve(const GridField& field);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// True when the narrowest Gaussian, sqrt(min alpha * t), spans at least two cells.
[[nodiscard]] bool grid_resolves_kernel(const GridField& field, const StepParams& params);

[[nodiscard]] GridField grid_step(const GridField& field, const StepParams& params,
                                  const WarningHandler& warn = stderr_warning);

[[nodiscard]] GridField grid_evolve(const GridField& field, double T, std::size_t n_steps, const KernelSpec& spec,
                                    bool use_effective_time = true, const WarningHandler& warn = stderr_warning);

}  // namespace tdflow
