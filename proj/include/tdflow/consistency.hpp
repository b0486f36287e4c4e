#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "tdflow/kernel.hpp"

namespace tdflow {

/// Local data of a planar graph y = g(x) at a point with g(0) = g'(0) = 0.
struct GraphJet2D {
    double g2 = 0.0;  ///< g''(0)
    double g4 = 0.0;  ///< g''''(0)
};

/// Local data of a surface z = g(x, y) at a point with g = 0, grad g = 0.
struct SurfaceJet3D {
    double H = 0.0;           ///< g_xx + g_yy
    double Kg = 0.0;          ///< g_xx g_yy - g_xy^2
    double biharmonic = 0.0;  ///< Laplacian squared of g
};

/// Expansion coefficients of the interface after one thresholding step.
/// The 2D fields and the 3D fields are filled by their respective operations.
struct ExpansionReport {
    double a1 = 0.0;
    double a2 = 0.0;
    double B1 = 0.0;
    double B2 = 0.0;
    double B3 = 0.0;
    double B4 = 0.0;
    double residual_theta1 = 0.0;
    double residual_theta2 = 0.0;
};

/// |theta(-1)| below this raises DegenerateSpecError.
inline constexpr double kDegeneracyTolerance = 1e-6;

/// Two-term Taylor expansion of the exact curvature flow: t g2 + t^2 (g4/2 - g2^3).
[[nodiscard]] double exact_expansion_2d(const GraphJet2D& jet, double t);

/// One scheme step: y = a1 t + a2 t^2 + O(t^3), plus both matching residuals.
[[nodiscard]] ExpansionReport scheme_expansion_2d(const KernelSpec& spec, const GraphJet2D& jet);

/// B1..B4 of the 3D scheme expansion z = t B1 H + t^2 (B2 lap^2 g + B3 H^3 + B4 H K).
[[nodiscard]] ExpansionReport scheme_expansion_3d(const KernelSpec& spec);

/// Evaluates the 3D scheme expansion for given coefficients and jet.
[[nodiscard]] double scheme_interface_3d(const ExpansionReport& report, const SurfaceJet3D& jet, double t);

/// Exact 3D flow expansion, first form: t H + t^2/2 (lap^2 g - 2H^3 + 6HK).
[[nodiscard]] double exact_expansion_3d(const SurfaceJet3D& jet, double t);

/// Exact 3D flow expansion written through the surface Laplacian of H:
/// t H + t^2/2 (lap_S H + H^3 - 2HK).
[[nodiscard]] double exact_expansion_3d_surface_form(const SurfaceJet3D& jet, double t);

/// lap_S H = lap^2 g - 3 H^3 + 8 H K at the origin.
[[nodiscard]] double surface_laplacian_of_H(const SurfaceJet3D& jet);

struct ObstructionResult {
    bool passed = true;
    std::size_t checked = 0;
    std::size_t rejected = 0;          ///< near-degenerate draws skipped
    double max_relative_deviation = 0.0;
    std::size_t theta1_zero_checked = 0;
    std::optional<KernelSpec> first_failure;

    explicit operator bool() const noexcept { return passed; }
};

/// Checks 6 B2 - B4 == (theta(1)/theta(-1))^2 over `n_random` seeded random
/// specs (N <= 5, scales in [0.1, 10], coefficients in [-2, 2], |theta(-1)| >= 0.1),
/// so that 6 B2 = B4 forces B1 = 0. Each accepted draw is also projected onto
/// theta(1) = 0 and B1 = 0, 6 B2 = B4 is confirmed there.
[[nodiscard]] ObstructionResult obstruction_check_3d(std::size_t n_random, std::uint64_t seed);

/// Flat "key = value" text record.
[[nodiscard]] std::string format_report_2d(const ExpansionReport& report);
[[nodiscard]] std::string format_report_3d(const ExpansionReport& report);

}  // namespace tdflow
