#include "tdflow/consistency.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "tdflow/error.hpp"

namespace tdflow {

namespace {

struct Moments {
    double p1, m1, p3, m3;
};

Moments moments_checked(const KernelSpec& spec) {
    Moments m{theta(spec, 1), theta(spec, -1), theta(spec, 3), theta(spec, -3)};
    if (std::abs(m.m1) < kDegeneracyTolerance) {
        std::ostringstream os;
        os << "degenerate kernel: |theta(-1)| = " << std::abs(m.m1) << " < " << kDegeneracyTolerance;
        throw DegenerateSpecError(os.str());
    }
    return m;
}

// Coefficient of g2^3 (2D) or H^3 (3D) in the second-order term.
double cubic_coefficient(const Moments& m) {
    const double m1_2 = m.m1 * m.m1;
    return (m.p1 * m.p1 * m.p1 * m.m3 + 6.0 * m.p1 * m.p1 * m1_2 - 15.0 * m1_2 * m.m1 * m.p3) /
           (12.0 * m1_2 * m1_2);
}

}  // namespace

double exact_expansion_2d(const GraphJet2D& jet, double t) {
    require(t >= 0.0, "exact_expansion_2d: t must be non-negative");
    return t * jet.g2 + t * t * (0.5 * jet.g4 - jet.g2 * jet.g2 * jet.g2);
}

ExpansionReport scheme_expansion_2d(const KernelSpec& spec, const GraphJet2D& jet) {
    const Moments m = moments_checked(spec);
    const double ratio = m.p1 / m.m1;
    const double cubic = cubic_coefficient(m);
    ExpansionReport r;
    r.a1 = ratio * jet.g2;
    r.a2 = m.p3 / (2.0 * m.m1) * jet.g4 + cubic * jet.g2 * jet.g2 * jet.g2;
    r.residual_theta1 = std::abs(ratio * ratio - m.p3 / m.m1);
    r.residual_theta2 = std::abs(m.p3 / m.m1 + cubic);
    return r;
}

ExpansionReport scheme_expansion_3d(const KernelSpec& spec) {
    const Moments m = moments_checked(spec);
    ExpansionReport r;
    r.B1 = m.p1 / m.m1;
    r.B2 = m.p3 / (2.0 * m.m1);
    r.B3 = cubic_coefficient(m);
    r.B4 = -(m.p1 * m.p1 - 3.0 * m.p3 * m.m1) / (m.m1 * m.m1);
    const double ratio = r.B1;
    r.residual_theta1 = std::abs(ratio * ratio - m.p3 / m.m1);
    r.residual_theta2 = std::abs(m.p3 / m.m1 + r.B3);
    return r;
}

double scheme_interface_3d(const ExpansionReport& r, const SurfaceJet3D& jet, double t) {
    const double H = jet.H;
    return t * r.B1 * H + t * t * (r.B2 * jet.biharmonic + r.B3 * H * H * H + r.B4 * H * jet.Kg);
}

double exact_expansion_3d(const SurfaceJet3D& jet, double t) {
    const double H = jet.H;
    return t * H + 0.5 * t * t * (jet.biharmonic - 2.0 * H * H * H + 6.0 * H * jet.Kg);
}

double surface_laplacian_of_H(const SurfaceJet3D& jet) {
    const double H = jet.H;
    return jet.biharmonic - 3.0 * H * H * H + 8.0 * H * jet.Kg;
}

double exact_expansion_3d_surface_form(const SurfaceJet3D& jet, double t) {
    const double H = jet.H;
    return t * H + 0.5 * t * t * (surface_laplacian_of_H(jet) + H * H * H - 2.0 * H * jet.Kg);
}

ObstructionResult obstruction_check_3d(std::size_t n_random, std::uint64_t seed) {
    require(n_random >= 1, "obstruction_check_3d: n_random must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> count_dist(1, 5);
    std::uniform_real_distribution<double> scale_dist(0.1, 10.0);
    std::uniform_real_distribution<double> coeff_dist(-2.0, 2.0);

    ObstructionResult result;
    auto record_failure = [&](const KernelSpec& spec) {
        if (result.passed) result.first_failure = spec;
        result.passed = false;
    };

    while (result.checked < n_random) {
        const int n = count_dist(rng);
        std::vector<double> scales;
        std::vector<double> coeffs;
        for (int j = 0; j < n; ++j) {
            scales.push_back(scale_dist(rng));
            coeffs.push_back(coeff_dist(rng));
        }
        bool distinct = true;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j) distinct = distinct && scales[i] != scales[j];
        double m1 = 0.0;
        for (int j = 0; j < n; ++j) m1 += coeffs[j] / std::sqrt(scales[j]);
        if (!distinct || std::abs(m1) < 0.1) {
            ++result.rejected;
            continue;
        }
        const KernelSpec spec(scales, coeffs);
        const ExpansionReport r = scheme_expansion_3d(spec);
        const double lhs = 6.0 * r.B2 - r.B4;
        const double rhs = r.B1 * r.B1;
        const double dev = std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
        result.max_relative_deviation = std::max(result.max_relative_deviation, dev);
        ++result.checked;
        if (!(dev < 1e-8)) record_failure(spec);

        // Project onto theta(1) = 0 by adjusting the last coefficient.
        std::vector<double> flat = coeffs;
        double p1 = 0.0;
        for (int j = 0; j < n; ++j) p1 += std::sqrt(scales[j]) * coeffs[j];
        flat.back() -= p1 / std::sqrt(scales.back());
        double flat_m1 = 0.0;
        for (int j = 0; j < n; ++j) flat_m1 += flat[j] / std::sqrt(scales[j]);
        if (n < 2 || std::abs(flat_m1) < 0.1) continue;
        const KernelSpec flat_spec(scales, flat);
        const ExpansionReport fr = scheme_expansion_3d(flat_spec);
        ++result.theta1_zero_checked;
        const double b_scale = std::max({1.0, std::abs(fr.B2), std::abs(fr.B4)});
        if (!(std::abs(fr.B1) < 1e-10 && std::abs(6.0 * fr.B2 - fr.B4) < 1e-8 * b_scale)) {
            record_failure(flat_spec);
        }
    }
    return result;
}

std::string format_report_2d(const ExpansionReport& r) {
    std::ostringstream os;
    os.precision(17);
    os << "a1 = " << r.a1 << '\n'
       << "a2 = " << r.a2 << '\n'
       << "residual_theta1 = " << r.residual_theta1 << '\n'
       << "residual_theta2 = " << r.residual_theta2 << '\n';
    return os.str();
}

std::string format_report_3d(const ExpansionReport& r) {
    std::ostringstream os;
    os.precision(17);
    os << "B1 = " << r.B1 << '\n'
       << "B2 = " << r.B2 << '\n'
       << "B3 = " << r.B3 << '\n'
       << "B4 = " << r.B4 << '\n'
       << "six_B2_minus_B4 = " << 6.0 * r.B2 - r.B4 << '\n';
    return os.str();
}

}  // namespace tdflow
