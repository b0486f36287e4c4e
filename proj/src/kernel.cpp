#include "tdflow/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include "tdflow/error.hpp"
#include "tdflow/roots.hpp"

namespace tdflow {

namespace {

double theta_raw(std::span<const double> scales, std::span<const double> coeffs, int p) {
    double sum = 0.0;
    for (std::size_t j = 0; j < scales.size(); ++j) {
        sum += std::pow(scales[j], 0.5 * p) * coeffs[j];
    }
    return sum;
}

bool same_relative(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

KernelSpec::KernelSpec(std::vector<double> scales, std::vector<double> coeffs)
    : scales_(std::move(scales)), coeffs_(std::move(coeffs)) {
    require(!scales_.empty(), "KernelSpec: at least one component required");
    require(scales_.size() == coeffs_.size(), "KernelSpec: scales and coeffs differ in length");
    for (std::size_t j = 0; j < scales_.size(); ++j) {
        require(std::isfinite(scales_[j]) && scales_[j] > 0.0, "KernelSpec: scales must be positive");
        require(std::isfinite(coeffs_[j]), "KernelSpec: coefficients must be finite");
        for (std::size_t i = 0; i < j; ++i) {
            require(scales_[i] != scales_[j], "KernelSpec: scales must be pairwise distinct");
        }
    }
    double mass = 0.0;
    for (double c : coeffs_) mass += c;
    threshold_ = 0.5 * mass;

    const double denom = theta_raw(scales_, coeffs_, -1);
    if (denom == 0.0) throw DegenerateSpecError("KernelSpec: theta(-1) == 0");
    step_ratio_ = theta_raw(scales_, coeffs_, 1) / denom;
}

KernelSpec KernelSpec::gaussian() { return KernelSpec({1.0}, {1.0}); }

double KernelSpec::min_scale() const noexcept { return *std::min_element(scales_.begin(), scales_.end()); }

double KernelSpec::max_scale() const noexcept { return *std::max_element(scales_.begin(), scales_.end()); }

double theta(const KernelSpec& spec, int p) { return theta_raw(spec.scales(), spec.coeffs(), p); }

double special_cubic(double c) { return ((1000.0 * c - 2175.0) * c + 210.0) * c + 64.0; }

double special_cubic_rational(std::int64_t num, std::int64_t den) {
    require(den != 0, "special_cubic_rational: zero denominator");
    // |operands| < 1e5 keeps every term below 2.2e18, inside int64.
    require(std::abs(num) < 100000 && std::abs(den) < 100000, "special_cubic_rational: operands too large");
    const std::int64_t a = num;
    const std::int64_t b = den;
    const std::int64_t top = 1000 * a * a * a - 2175 * a * a * b + 210 * a * b * b + 64 * b * b * b;
    const std::int64_t bottom = b * b * b;
    return static_cast<double>(static_cast<long double>(top) / static_cast<long double>(bottom));
}

double special_c2(double c1) { return -8.0 * c1 / (25.0 * c1 + 2.0); }

KernelSpec solve_special_kernel(double tolerance) {
    require(tolerance > 0.0, "solve_special_kernel: tolerance must be positive");
    auto dcubic = [](double c) { return (3000.0 * c - 4350.0) * c + 210.0; };
    const double c1 = bisect_newton(special_cubic, dcubic, 0.2, 0.25, tolerance);
    return KernelSpec({1.0, 4.0, 0.25}, {1.0, c1, special_c2(c1)});
}

double eval_radial(const KernelSpec& spec, double r, int d) {
    require(r >= 0.0, "eval_radial: r must be non-negative");
    require(d == 1 || d == 2, "eval_radial: dimension must be 1 or 2");
    double sum = 0.0;
    for (std::size_t j = 0; j < spec.size(); ++j) {
        const double a = spec.scales()[j];
        const double norm = std::pow(4.0 * std::numbers::pi * a, -0.5 * d);
        sum += spec.coeffs()[j] * norm * std::exp(-r * r / (4.0 * a));
    }
    return sum;
}

double fourier_multiplier(const KernelSpec& spec, double k_norm, double t) {
    require(t > 0.0, "fourier_multiplier: t must be positive");
    require(k_norm >= 0.0, "fourier_multiplier: k_norm must be non-negative");
    const double k2 = k_norm * k_norm;
    double sum = 0.0;
    for (std::size_t j = 0; j < spec.size(); ++j) {
        sum += spec.coeffs()[j] * std::exp(-spec.scales()[j] * t * k2);
    }
    return sum;
}

namespace {

struct ReducedCoeffs {
    double c_quarter;  // xi^15
    double c_one;      // xi^3, divided by 4
    double c_four;     // constant, divided by 16
};

ReducedCoeffs reduced_coeffs(const KernelSpec& spec) {
    if (spec.size() != 3) fail(ErrorKind::InvalidArgument, "positivity reduction needs scales (1, 4, 1/4)");
    ReducedCoeffs rc{};
    bool seen[3] = {false, false, false};
    for (std::size_t j = 0; j < 3; ++j) {
        const double a = spec.scales()[j];
        const double c = spec.coeffs()[j];
        if (a == 0.25) {
            rc.c_quarter = c;
            seen[0] = true;
        } else if (a == 1.0) {
            rc.c_one = c;
            seen[1] = true;
        } else if (a == 4.0) {
            rc.c_four = c;
            seen[2] = true;
        }
    }
    if (!(seen[0] && seen[1] && seen[2])) {
        fail(ErrorKind::InvalidArgument, "positivity reduction needs scales (1, 4, 1/4)");
    }
    return rc;
}

double eval_q(const ReducedCoeffs& rc, double xi) {
    const double x3 = xi * xi * xi;
    const double x15 = std::pow(xi, 15);
    return rc.c_quarter * x15 + 0.25 * rc.c_one * x3 + rc.c_four / 16.0;
}

}  // namespace

double reduced_polynomial(const KernelSpec& spec, double xi) { return eval_q(reduced_coeffs(spec), xi); }

PositivityCertificate positivity_certificate(const KernelSpec& spec) {
    const ReducedCoeffs rc = reduced_coeffs(spec);
    constexpr std::size_t samples = 100000;
    std::size_t best = 0;
    double best_val = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i <= samples; ++i) {
        const double xi = static_cast<double>(i) / samples;
        const double v = eval_q(rc, xi);
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }
    // golden-section refinement on the neighbouring cells
    double a = static_cast<double>(best == 0 ? 0 : best - 1) / samples;
    double b = static_cast<double>(std::min(best + 1, samples)) / samples;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = eval_q(rc, x1);
    double f2 = eval_q(rc, x2);
    for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = eval_q(rc, x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = eval_q(rc, x2);
        }
    }
    PositivityCertificate cert;
    cert.min_value = best_val;
    cert.argmin_xi = static_cast<double>(best) / samples;
    for (double x : {x1, x2}) {
        const double v = eval_q(rc, x);
        if (v < cert.min_value) {
            cert.min_value = v;
            cert.argmin_xi = x;
        }
    }
    constexpr double tol = 1e-12;
    cert.is_positive = cert.min_value >= -tol;
    // q >= xi^3 (1/4 c_one + c_quarter) + c_four/16 needs c_quarter <= 0; the bound is
    // monotone in xi^3 so its minimum sits at an endpoint.
    const double slope = 0.25 * rc.c_one + rc.c_quarter;
    const double base = rc.c_four / 16.0;
    cert.lower_bound_holds = rc.c_quarter <= 0.0 && std::min(base, base + slope) >= -tol;
    return cert;
}

FourierProbe find_negative_multiplier(const KernelSpec& spec, double k_max, std::size_t samples) {
    require(k_max > 0.0 && samples >= 2, "find_negative_multiplier: bad scan range");
    FourierProbe probe;
    probe.t = 1.0;
    probe.value = fourier_multiplier(spec, 0.0, 1.0);
    for (std::size_t i = 1; i <= samples; ++i) {
        const double k = k_max * static_cast<double>(i) / static_cast<double>(samples);
        const double v = fourier_multiplier(spec, k, 1.0);
        if (v < probe.value) {
            probe.value = v;
            probe.k_norm = k;
        }
    }
    probe.found = probe.value < 0.0;
    return probe;
}

void write_kernel(std::ostream& out, const KernelSpec& spec) {
    const auto old_prec = out.precision(17);
    out << "# tdflow kernel v1\n";
    for (std::size_t j = 0; j < spec.size(); ++j) {
        out << "component " << spec.scales()[j] << ' ' << spec.coeffs()[j] << '\n';
    }
    out << "threshold " << spec.threshold() << '\n';
    out << "step_ratio " << spec.step_ratio() << '\n';
    out.precision(old_prec);
}

std::string kernel_to_string(const KernelSpec& spec) {
    std::ostringstream os;
    write_kernel(os, spec);
    return os.str();
}

KernelSpec read_kernel(std::istream& in) {
    std::vector<double> scales;
    std::vector<double> coeffs;
    double threshold = std::numeric_limits<double>::quiet_NaN();
    double ratio = std::numeric_limits<double>::quiet_NaN();
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        const std::string where = "kernel record line " + std::to_string(lineno);
        if (key == "component") {
            double a = 0.0;
            double c = 0.0;
            if (!(ls >> a >> c)) fail(ErrorKind::Config, where + ": expected 'component <alpha> <c>'");
            scales.push_back(a);
            coeffs.push_back(c);
        } else if (key == "threshold") {
            if (!(ls >> threshold)) fail(ErrorKind::Config, where + ": bad threshold");
        } else if (key == "step_ratio") {
            if (!(ls >> ratio)) fail(ErrorKind::Config, where + ": bad step_ratio");
        } else {
            fail(ErrorKind::Config, where + ": unknown key '" + key + "'");
        }
        std::string extra;
        if (ls >> extra) fail(ErrorKind::Config, where + ": trailing text '" + extra + "'");
    }
    if (scales.empty()) fail(ErrorKind::Config, "kernel record has no components");
    KernelSpec spec(std::move(scales), std::move(coeffs));
    if (!std::isnan(threshold) && !same_relative(threshold, spec.threshold(), 1e-12)) {
        fail(ErrorKind::Config, "kernel record: threshold does not match components");
    }
    if (!std::isnan(ratio) && !same_relative(ratio, spec.step_ratio(), 1e-12)) {
        fail(ErrorKind::Config, "kernel record: step_ratio does not match components");
    }
    return spec;
}

KernelSpec kernel_from_string(const std::string& text) {
    std::istringstream is(text);
    return read_kernel(is);
}

KernelSpec load_kernel(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::Io, "cannot open kernel file '" + path + "'");
    return read_kernel(in);
}

void save_kernel(const std::string& path, const KernelSpec& spec) {
    std::ofstream out(path);
    if (!out) fail(ErrorKind::Io, "cannot write kernel file '" + path + "'");
    write_kernel(out, spec);
    if (!out) fail(ErrorKind::Io, "write failed for '" + path + "'");
}

}  // namespace tdflow
