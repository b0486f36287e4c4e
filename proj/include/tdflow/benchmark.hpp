#pragma once

#include <cstddef>

#include "tdflow/graph.hpp"

namespace tdflow {

/// Radius of a circle moving by curvature from radius r0: sqrt(r0^2 - 2t).
/// Throws BracketError at or past the extinction time r0^2 / 2.
[[nodiscard]] double circle_exact(double r0, double t);

/// Explicit finite-difference discretisation of phi_t = phi_xx / (1 + phi_x^2).
struct FDConfig {
    std::size_t n_space = 4096;
    double dt = 0.0;  ///< 0 selects 0.25 dx^2
    double T = 0.025;

    /// dt <= 0.5 dx^2 keeps forward Euler monotone since 1/(1 + phi_x^2) <= 1.
    static constexpr double kMaxSafety = 0.5;
};

/// Time step the solver will use for a given period (the configured dt, or 0.25 dx^2).
[[nodiscard]] double fd_time_step(const FDConfig& config, double period);

/// Forward Euler in time, centred differences in space, on a periodic grid of
/// config.n_space nodes. Runs ceil(T/dt) steps, the last one shortened to end
/// exactly at T. The initial data is resampled onto the solver grid first.
[[nodiscard]] GraphInterface fd_solve(const GraphInterface& f0, const FDConfig& config);

/// Richardson combination (4 u_2n - u_n) / 3 of fd_solve at n_space and 2 n_space,
/// with dt quartered on the finer grid so both error terms scale as dx^2.
/// Returned on the n_space grid.
[[nodiscard]] GraphInterface fd_solve_extrapolated(const GraphInterface& f0, const FDConfig& config);

}  // namespace tdflow
