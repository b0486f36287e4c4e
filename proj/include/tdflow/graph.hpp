#pragma once

#include <complex>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace tdflow {

/// Periodic front y = f(x) sampled at n uniform nodes x_i = i L / n.
/// The represented set is the region below the graph, {(x, y) : y <= f(x)}.
class GraphInterface {
public:
    GraphInterface(double period, std::vector<double> samples);

    /// Samples `fn` at n uniform nodes over one period.
    template <class Fn>
    static GraphInterface sample(double period, std::size_t n, Fn&& fn) {
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = fn(period * static_cast<double>(i) / static_cast<double>(n));
        return GraphInterface(period, std::move(v));
    }

    [[nodiscard]] double period() const noexcept { return period_; }
    [[nodiscard]] std::size_t size() const noexcept { return samples_.size(); }
    [[nodiscard]] double spacing() const noexcept { return period_ / static_cast<double>(samples_.size()); }
    [[nodiscard]] double node(std::size_t i) const noexcept { return spacing() * static_cast<double>(i); }
    [[nodiscard]] std::span<const double> samples() const noexcept { return samples_; }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return samples_[i]; }

    friend bool operator==(const GraphInterface&, const GraphInterface&) = default;

private:
    double period_;
    std::vector<double> samples_;
};

/// Band-limited (trigonometric) interpolant of periodic samples. For even n the
/// Nyquist mode is split symmetrically so the interpolant is real.
class TrigInterpolant {
public:
    explicit TrigInterpolant(const GraphInterface& f);

    /// Value (order 0) or derivative of the given order at x.
    [[nodiscard]] double eval(double x, int order = 0) const;

    /// Derivative of the given order at every node (spectral differentiation).
    [[nodiscard]] std::vector<double> derivative_at_nodes(int order) const;

    /// Interpolant on m >= n uniform nodes via spectral zero padding.
    [[nodiscard]] std::vector<double> upsample(std::size_t m) const;

private:
    double period_;
    std::size_t n_;
    std::vector<std::complex<double>> coeffs_;  // r2c output, length n/2 + 1, unnormalised
};

/// Periodic trigonometric resampling onto n_target uniform nodes.
/// Exact on band-limited data; decimation when n_target divides n.
[[nodiscard]] GraphInterface resample(const GraphInterface& f, std::size_t n_target);

/// Two-column text: optional "# period <L>" header, then "x f(x)" per line with
/// 17 significant digits. Without the header the period is n (x_1 - x_0).
void write_graph(std::ostream& out, const GraphInterface& f);
[[nodiscard]] GraphInterface read_graph(std::istream& in);
void save_graph(const std::string& path, const GraphInterface& f);
[[nodiscard]] GraphInterface load_graph(const std::string& path);

}  // namespace tdflow
