#include <cmath>
#include <numbers>
#include <sstream>

#include "fft.hpp"
#include "tdflow/error.hpp"
#include "tdflow/evolve.hpp"

namespace tdflow {

struct GridStepper::Impl {
    std::size_t nx;
    std::size_t ny;
    double lx;
    double ly;
    double lambda;
    detail::RealFft fft;
    std::vector<double> multiplier;  // ny x (nx/2 + 1), includes 1/(nx ny)

    Impl(std::size_t nx_, std::size_t ny_, double lx_, double ly_, const StepParams& params)
        : nx(nx_), ny(ny_), lx(lx_), ly(ly_), lambda(params.spec.threshold()), fft(ny_, nx_) {
        const std::size_t half = nx / 2 + 1;
        multiplier.resize(ny * half);
        const double norm = 1.0 / static_cast<double>(nx * ny);
        for (std::size_t j = 0; j < ny; ++j) {
            const double kj = j <= ny / 2 ? static_cast<double>(j) : static_cast<double>(j) - static_cast<double>(ny);
            const double ky = 2.0 * std::numbers::pi * kj / ly;
            for (std::size_t i = 0; i < half; ++i) {
                const double kx = 2.0 * std::numbers::pi * static_cast<double>(i) / lx;
                multiplier[j * half + i] = norm * fourier_multiplier(params.spec, std::hypot(kx, ky), params.t);
            }
        }
    }
};

GridStepper::GridStepper(std::size_t nx, std::size_t ny, double lx, double ly, const StepParams& params,
                         WarningHandler warn)
    : impl_(std::make_unique<Impl>(nx, ny, lx, ly, params)) {
    const double narrowest = std::sqrt(params.spec.min_scale() * params.t);
    const double cell = std::max(lx / static_cast<double>(nx), ly / static_cast<double>(ny));
    if (narrowest < 2.0 * cell && warn) {
        std::ostringstream os;
        os << "grid under-resolves the kernel: sqrt(min alpha * t) = " << narrowest << " < 2 cells (" << 2.0 * cell
           << "); monotonicity may degrade";
        warn(os.str());
    }
}

GridStepper::~GridStepper() = default;
GridStepper::GridStepper(GridStepper&&) noexcept = default;
GridStepper& GridStepper::operator=(GridStepper&&) noexcept = default;

std::vector<double> GridStepper::convolve(const GridField& field) {
    Impl& s = *impl_;
    require(field.nx() == s.nx && field.ny() == s.ny, "GridStepper: field geometry mismatch");
    auto real = s.fft.real();
    const auto& cells = field.cells();
    for (std::size_t k = 0; k < cells.size(); ++k) real[k] = cells[k];
    s.fft.forward();
    auto spec = s.fft.spectrum();
    for (std::size_t k = 0; k < spec.size(); ++k) spec[k] *= s.multiplier[k];
    s.fft.backward();
    return {real.begin(), real.end()};
}

GridField GridStepper::step(const GridField& field) {
    const std::vector<double> psi = convolve(field);
    std::vector<std::uint8_t> cells(psi.size());
    for (std::size_t k = 0; k < psi.size(); ++k) cells[k] = psi[k] >= impl_->lambda ? 1 : 0;
    return GridField(field.nx(), field.ny(), field.lx(), field.ly(), std::move(cells));
}

bool grid_resolves_kernel(const GridField& field, const StepParams& params) {
    const double narrowest = std::sqrt(params.spec.min_scale() * params.t);
    return narrowest >= 2.0 * std::max(field.dx(), field.dy());
}

GridField grid_step(const GridField& field, const StepParams& params, const WarningHandler& warn) {
    GridStepper stepper(field.nx(), field.ny(), field.lx(), field.ly(), params, warn);
    return stepper.step(field);
}

GridField grid_evolve(const GridField& field, double T, std::size_t n_steps, const KernelSpec& spec,
                      bool use_effective_time, const WarningHandler& warn) {
    require(n_steps >= 1, "grid_evolve: n_steps must be >= 1");
    const StepParams params(spec, kernel_time(spec, T, n_steps, use_effective_time));
    GridStepper stepper(field.nx(), field.ny(), field.lx(), field.ly(), params, warn);
    GridField f = field;
    for (std::size_t k = 0; k < n_steps; ++k) f = stepper.step(f);
    return f;
}

}  // namespace tdflow
