#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <sstream>

#include "tdflow/error.hpp"
#include "tdflow/evolve.hpp"

namespace tdflow {

namespace {

std::ptrdiff_t wrap(std::ptrdiff_t i, std::ptrdiff_t m) {
    const std::ptrdiff_t r = i % m;
    return r < 0 ? r + m : r;
}

std::size_t largest_pow2_divisor(std::size_t m) { return m & (~m + 1); }

std::vector<double> linear_upsample(std::span<const double> v, std::size_t m) {
    const std::size_t n = v.size();
    const std::size_t ratio = m / n;
    std::vector<double> out(m);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = v[i];
        const double b = v[(i + 1) % n];
        for (std::size_t k = 0; k < ratio; ++k) {
            const double w = static_cast<double>(k) / static_cast<double>(ratio);
            out[i * ratio + k] = (1.0 - w) * a + w * b;
        }
    }
    return out;
}

}  // namespace

GraphConvolver::GraphConvolver(const GraphInterface& f, const StepParams& params, const GraphQuadrature& quad)
    : params_(params), period_(f.period()), coarse_n_(f.size()) {
    require(quad.window_tolerance > 0.0 && quad.window_tolerance < 1.0, "GraphQuadrature: bad window tolerance");
    require(quad.spacing_factor > 0.0, "GraphQuadrature: spacing factor must be positive");
    const bool spectral = quad.refinement == GraphQuadrature::Refinement::Spectral;
    const TrigInterpolant interp(f);
    // Linear mode keeps one f-independent grid shared by all components. Then
    // d psi / d f_k = H K_t(x - x_k, f_k - y) >= 0 and ordered inputs stay ordered.
    double slope_max = 0.0;
    if (spectral) {
        for (double d : interp.derivative_at_nodes(1)) slope_max = std::max(slope_max, std::abs(d));
    }
    const double slope_scale = std::max(1.0, 1.25 * slope_max);

    const KernelSpec& spec = params_.spec;
    double h_target_min = std::numeric_limits<double>::infinity();
    for (double a : spec.scales()) {
        h_target_min = std::min(h_target_min, quad.spacing_factor * std::sqrt(a * params_.t) / slope_scale);
    }
    std::size_t m = coarse_n_;
    while (period_ / static_cast<double>(m) > h_target_min) {
        m *= 2;
        if (m > quad.max_fine_samples) {
            throw Error(ErrorKind::Numerical,
                        "graph quadrature: refinement exceeds max_fine_samples (t too small for the period)");
        }
    }
    if (m == coarse_n_) fine_.assign(f.samples().begin(), f.samples().end());
    else fine_ = spectral ? interp.upsample(m) : linear_upsample(f.samples(), m);
    h_ = period_ / static_cast<double>(m);

    const double log_tol = -std::log(quad.window_tolerance);
    const std::size_t max_stride = largest_pow2_divisor(m);
    for (std::size_t j = 0; j < spec.size(); ++j) {
        Component c{};
        const double s = spec.scales()[j] * params_.t;
        c.coeff = spec.coeffs()[j];
        c.sqrt_s = std::sqrt(s);
        c.inv_width = 1.0 / (2.0 * c.sqrt_s);
        const double h_target = quad.spacing_factor * c.sqrt_s / slope_scale;
        c.stride = 1;
        while (spectral && c.stride * 2 <= max_stride && h_ * static_cast<double>(c.stride * 2) <= h_target) {
            c.stride *= 2;
        }
        const double window = std::sqrt(4.0 * s * log_tol);
        if (2.0 * window > quad.max_periods * period_) {
            throw Error(ErrorKind::Numerical, "graph quadrature: truncation window exceeds the periodic image budget");
        }
        const double H = h_ * static_cast<double>(c.stride);
        c.reach = static_cast<std::ptrdiff_t>(std::ceil(window / H));
        const double norm = H / std::sqrt(4.0 * std::numbers::pi * s);
        c.node_weights.resize(static_cast<std::size_t>(2 * c.reach + 1));
        for (std::ptrdiff_t k = -c.reach; k <= c.reach; ++k) {
            const double u = static_cast<double>(k) * H;
            c.node_weights[static_cast<std::size_t>(k + c.reach)] = norm * std::exp(-u * u / (4.0 * s));
        }
        comps_.push_back(std::move(c));
    }
}

double GraphConvolver::excess(double x, double y) const {
    const auto m = static_cast<std::ptrdiff_t>(fine_.size());
    double total = 0.0;
    for (const Component& c : comps_) {
        const double H = h_ * static_cast<double>(c.stride);
        const double s = c.sqrt_s * c.sqrt_s;
        const double window = static_cast<double>(c.reach) * H;
        const auto k_lo = static_cast<std::ptrdiff_t>(std::ceil((x - window) / H));
        const auto k_hi = static_cast<std::ptrdiff_t>(std::floor((x + window) / H));
        const double norm = H / std::sqrt(4.0 * std::numbers::pi * s);
        const auto stride = static_cast<std::ptrdiff_t>(c.stride);
        double acc = 0.0;
        for (std::ptrdiff_t k = k_lo; k <= k_hi; ++k) {
            const double u = x - static_cast<double>(k) * H;
            const double w = norm * std::exp(-u * u / (4.0 * s));
            acc += w * std::erf((fine_[static_cast<std::size_t>(wrap(k * stride, m))] - y) * c.inv_width);
        }
        total += 0.5 * c.coeff * acc;
    }
    return total;
}

void GraphConvolver::excess_at_node(std::size_t i, double y, double& value, double& slope) const {
    const auto m = static_cast<std::ptrdiff_t>(fine_.size());
    const auto base = static_cast<std::ptrdiff_t>(i * (fine_.size() / coarse_n_));
    constexpr double two_over_sqrt_pi = 1.1283791670955126;
    value = 0.0;
    slope = 0.0;
    for (const Component& c : comps_) {
        const auto stride = static_cast<std::ptrdiff_t>(c.stride);
        std::ptrdiff_t idx = wrap(base - c.reach * stride, m);
        double acc = 0.0;
        double dacc = 0.0;
        for (double w : c.node_weights) {
            const double arg = (fine_[static_cast<std::size_t>(idx)] - y) * c.inv_width;
            if (arg > 6.0) {
                acc += w;
            } else if (arg < -6.0) {
                acc -= w;
            } else {
                acc += w * std::erf(arg);
                dacc += w * std::exp(-arg * arg);
            }
            idx += stride;
            if (idx >= m) idx -= m;
        }
        value += 0.5 * c.coeff * acc;
        slope -= 0.5 * c.coeff * dacc * two_over_sqrt_pi * c.inv_width;
    }
}

double graph_convolution(const GraphInterface& f, double x, double y, const StepParams& params,
                         const GraphQuadrature& quad) {
    return GraphConvolver(f, params, quad)(x, y);
}

GraphInterface graph_step(const GraphInterface& f, const StepParams& params, const GraphQuadrature& quad) {
    const GraphConvolver conv(f, params, quad);
    const TrigInterpolant interp(f);
    const std::vector<double> d1 = interp.derivative_at_nodes(1);
    const std::vector<double> d2 = interp.derivative_at_nodes(2);
    const double tau = params.effective_step();
    const double max_move = 4.0 * std::sqrt(params.spec.max_scale() * params.t);
    const double give_up = 256.0 * max_move;
    constexpr double tol = 1e-13;

    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double y0 = f[i] + tau * d2[i] / (1.0 + d1[i] * d1[i]);
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        double y = y0;
        bool done = false;
        for (int it = 0; it < 200; ++it) {
            double g = 0.0;
            double dg = 0.0;
            conv.excess_at_node(i, y, g, dg);
            if (g == 0.0) {
                done = true;
                break;
            }
            // psi decreases in y: positive excess means the crossing lies above.
            if (g > 0.0) lo = y;
            else hi = y;
            double step = (dg < 0.0) ? -g / dg : (g > 0.0 ? max_move : -max_move);
            step = std::clamp(step, -max_move, max_move);
            double next = y + step;
            if (std::isfinite(lo) && std::isfinite(hi) && !(next > lo && next < hi)) next = 0.5 * (lo + hi);
            if (std::abs(next - y) <= tol * std::max(1.0, std::abs(y))) {
                y = next;
                done = true;
                break;
            }
            y = next;
            if (std::abs(y - y0) > give_up) break;
        }
        if (!done) {
            std::ostringstream os;
            os << "graph_step: no level crossing found at node " << i << " (x = " << f.node(i) << ")";
            throw BracketError(os.str());
        }
        out[i] = y;
    }
    return GraphInterface(f.period(), std::move(out));
}

GraphInterface graph_evolve(const GraphInterface& f0, double T, std::size_t n_steps, const KernelSpec& spec,
                            bool use_effective_time, const GraphQuadrature& quad) {
    require(n_steps >= 1, "graph_evolve: n_steps must be >= 1");
    const StepParams params(spec, kernel_time(spec, T, n_steps, use_effective_time));
    GraphInterface f = f0;
    for (std::size_t k = 0; k < n_steps; ++k) {
        try {
            f = graph_step(f, params, quad);
        } catch (const BracketError& e) {
            throw BracketError("step " + std::to_string(k + 1) + ": " + e.what());
        } catch (const Error& e) {
            throw Error(e.kind(), "step " + std::to_string(k + 1) + ": " + e.what());
        }
    }
    return f;
}

}  // namespace tdflow
