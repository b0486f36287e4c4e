#include "tdflow/benchmark.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "tdflow/error.hpp"

namespace tdflow {

double circle_exact(double r0, double t) {
    require(r0 > 0.0, "circle_exact: r0 must be positive");
    const double r2 = r0 * r0 - 2.0 * t;
    if (!(r2 > 0.0)) {
        std::ostringstream os;
        os << "circle_exact: circle of radius " << r0 << " is extinct at t = " << 0.5 * r0 * r0;
        throw BracketError(os.str());
    }
    return std::sqrt(r2);
}

double fd_time_step(const FDConfig& config, double period) {
    const double dx = period / static_cast<double>(config.n_space);
    return config.dt > 0.0 ? config.dt : 0.25 * dx * dx;
}

GraphInterface fd_solve(const GraphInterface& f0, const FDConfig& config) {
    require(config.n_space >= 16, "fd_solve: n_space must be >= 16");
    require(config.T >= 0.0, "fd_solve: T must be non-negative");
    const double period = f0.period();
    const double dx = period / static_cast<double>(config.n_space);
    const double dt = fd_time_step(config, period);
    require(dt > 0.0 && dt <= FDConfig::kMaxSafety * dx * dx, "fd_solve: dt violates the stability bound 0.5 dx^2");

    const GraphInterface start = resample(f0, config.n_space);
    std::vector<double> cur(start.samples().begin(), start.samples().end());
    std::vector<double> next(cur.size());
    const std::size_t n = cur.size();
    const double inv_4dx2 = 1.0 / (4.0 * dx * dx);

    const auto full_steps = static_cast<std::size_t>(std::ceil(config.T / dt - 1e-12));
    double elapsed = 0.0;
    for (std::size_t step = 0; step < full_steps; ++step) {
        const double h = std::min(dt, config.T - elapsed);
        const double mu = h / (dx * dx);
        auto update = [&](std::size_t i, double left, double mid, double right) {
            const double a = right - left;
            next[i] = mid + mu * (right - 2.0 * mid + left) / (1.0 + a * a * inv_4dx2);
        };
        update(0, cur[n - 1], cur[0], cur[1]);
        const double* c = cur.data();
        for (std::size_t i = 1; i + 1 < n; ++i) update(i, c[i - 1], c[i], c[i + 1]);
        update(n - 1, cur[n - 2], cur[n - 1], cur[0]);
        if (step % 64 == 63 || step + 1 == full_steps) {
            for (double v : next) {
                if (!std::isfinite(v)) {
                    throw Error(ErrorKind::Numerical,
                                "fd_solve: non-finite value detected at step " + std::to_string(step + 1));
                }
            }
        }
        cur.swap(next);
        elapsed = (step + 1 == full_steps) ? config.T : elapsed + h;
    }
    return GraphInterface(period, std::move(cur));
}

GraphInterface fd_solve_extrapolated(const GraphInterface& f0, const FDConfig& config) {
    const GraphInterface coarse = fd_solve(f0, config);
    FDConfig fine_config = config;
    fine_config.n_space = 2 * config.n_space;
    fine_config.dt = 0.25 * fd_time_step(config, f0.period());
    const GraphInterface fine = fd_solve(f0, fine_config);
    std::vector<double> out(coarse.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (4.0 * fine[2 * i] - coarse[i]) / 3.0;
    return GraphInterface(f0.period(), std::move(out));
}

}  // namespace tdflow
