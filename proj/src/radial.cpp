#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

#include "tdflow/error.hpp"
#include "tdflow/evolve.hpp"

namespace tdflow {

namespace {

// exp(-x) I_0(x) for x >= 0.
double bessel_i0_scaled(double x) {
    if (x < 30.0) return std::exp(-x) * std::cyl_bessel_i(0.0, x);
    // Asymptotic series; terms shrink at least until k ~ 2x, far past double precision.
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= odd * odd / (8.0 * k * x);
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

// Mass of the 2D heat kernel G_s (variance 2s per axis) inside a disk of radius r0,
// centred at distance r from the evaluation point. Angular integral done exactly.
double disk_mass(double s, double r0, double r) {
    const double var = 2.0 * s;
    const double sigma = std::sqrt(var);
    if (r == 0.0) return -std::expm1(-r0 * r0 / (2.0 * var));
    const double lo = std::max(0.0, r - 12.0 * sigma);
    const double hi = std::min(r0, r + 12.0 * sigma);
    if (hi <= lo) return r0 > r ? 1.0 : 0.0;
    auto integrand = [&](double rho) {
        const double d = r - rho;
        return rho / var * std::exp(-d * d / (2.0 * var)) * bessel_i0_scaled(r * rho / var);
    };
    // Panels about one standard deviation wide; 30-point Gauss-Legendre per panel
    // integrates the Gaussian-times-smooth integrand to rounding level.
    const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / sigma)));
    const double width = (hi - lo) / panels;
    double mass = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double a = lo + p * width;
        const double b = (p + 1 == panels) ? hi : a + width;
        mass += boost::math::quadrature::gauss<double, 30>::integrate(integrand, a, b);
    }
    return mass;
}

}  // namespace

double radial_convolution(const KernelSpec& spec, double t, double r0, double r) {
    require(t > 0.0 && r0 > 0.0 && r >= 0.0, "radial_convolution: need t > 0, r0 > 0, r >= 0");
    double sum = 0.0;
    for (std::size_t j = 0; j < spec.size(); ++j) {
        sum += spec.coeffs()[j] * disk_mass(spec.scales()[j] * t, r0, r);
    }
    return sum;
}

double radial_step(double r0, const StepParams& params) {
    require(r0 > 0.0, "radial_step: r0 must be positive");
    const double tau = params.effective_step();
    const double r_exact2 = r0 * r0 - 2.0 * tau;
    if (!(r_exact2 > 0.1 * r0 * r0)) {
        std::ostringstream os;
        os << "radial_step: disk of radius " << r0 << " too small for effective step " << tau;
        throw BracketError(os.str());
    }
    const KernelSpec& spec = params.spec;
    const double lambda = spec.threshold();
    auto excess = [&](double r) { return radial_convolution(spec, params.t, r0, r) - lambda; };

    const double guess = std::sqrt(r_exact2);
    const double width = 8.0 * std::sqrt(spec.max_scale() * params.t);
    const double lo = std::max(0.5 * guess, guess - width);
    const double hi = std::min(r0 + (r0 - guess), guess + width) + 0.25 * width;
    const double flo = excess(lo);
    const double fhi = excess(hi);
    if (!(flo > 0.0 && fhi < 0.0)) {
        std::ostringstream os;
        os << "radial_step: no crossing of lambda in [" << lo << ", " << hi << "] for r0 = " << r0;
        throw BracketError(os.str());
    }
    boost::uintmax_t max_iter = 200;
    auto tol = [](double a, double b) { return std::abs(b - a) <= 4e-16 * std::max(1.0, std::abs(a)); };
    const auto bracket = boost::math::tools::toms748_solve(excess, lo, hi, flo, fhi, tol, max_iter);
    return 0.5 * (bracket.first + bracket.second);
}

}  // namespace tdflow
