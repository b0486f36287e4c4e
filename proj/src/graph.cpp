#include "tdflow/graph.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "fft.hpp"
#include "tdflow/error.hpp"

namespace tdflow {

GraphInterface::GraphInterface(double period, std::vector<double> samples)
    : period_(period), samples_(std::move(samples)) {
    require(std::isfinite(period_) && period_ > 0.0, "GraphInterface: period must be positive");
    require(samples_.size() >= 4, "GraphInterface: at least 4 samples required");
    for (double v : samples_) require(std::isfinite(v), "GraphInterface: samples must be finite");
}

TrigInterpolant::TrigInterpolant(const GraphInterface& f) : period_(f.period()), n_(f.size()) {
    detail::RealFft fft(n_);
    std::copy(f.samples().begin(), f.samples().end(), fft.real().begin());
    fft.forward();
    coeffs_.assign(fft.spectrum().begin(), fft.spectrum().end());
}

double TrigInterpolant::eval(double x, int order) const {
    require(order >= 0, "TrigInterpolant::eval: negative derivative order");
    using namespace std::complex_literals;
    const double base = 2.0 * std::numbers::pi / period_;
    const bool even = n_ % 2 == 0;
    const std::size_t kmax = even ? n_ / 2 - 1 : (n_ - 1) / 2;
    double sum = order == 0 ? coeffs_[0].real() : 0.0;
    for (std::size_t k = 1; k <= kmax; ++k) {
        const double kappa = base * static_cast<double>(k);
        std::complex<double> factor = std::pow(1i * kappa, order);
        sum += 2.0 * std::real(coeffs_[k] * factor * std::exp(1i * kappa * x));
    }
    if (even) {
        const double kappa = base * static_cast<double>(n_ / 2);
        // d^order/dx^order of cos(kappa x)
        const double phase = kappa * x + 0.5 * std::numbers::pi * order;
        sum += coeffs_[n_ / 2].real() * std::pow(kappa, order) * std::cos(phase);
    }
    return sum / static_cast<double>(n_);
}

std::vector<double> TrigInterpolant::derivative_at_nodes(int order) const {
    require(order >= 0, "TrigInterpolant: negative derivative order");
    using namespace std::complex_literals;
    detail::RealFft fft(n_);
    auto spec = fft.spectrum();
    const double base = 2.0 * std::numbers::pi / period_;
    for (std::size_t k = 0; k < spec.size(); ++k) {
        spec[k] = coeffs_[k] * std::pow(1i * base * static_cast<double>(k), order);
    }
    if (n_ % 2 == 0 && order % 2 == 1) spec[n_ / 2] = 0.0;
    fft.backward();
    std::vector<double> out(fft.real().begin(), fft.real().end());
    for (double& v : out) v /= static_cast<double>(n_);
    return out;
}

std::vector<double> TrigInterpolant::upsample(std::size_t m) const {
    require(m >= n_, "TrigInterpolant::upsample: target must not be coarser");
    detail::RealFft fft(m);
    auto spec = fft.spectrum();
    std::fill(spec.begin(), spec.end(), std::complex<double>(0.0));
    const std::size_t half = n_ / 2;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) spec[k] = coeffs_[k];
    if (n_ % 2 == 0 && m > n_) spec[half] *= 0.5;
    fft.backward();
    std::vector<double> out(fft.real().begin(), fft.real().end());
    for (double& v : out) v /= static_cast<double>(n_);
    return out;
}

GraphInterface resample(const GraphInterface& f, std::size_t n_target) {
    require(n_target >= 4, "resample: n_target must be >= 4");
    const std::size_t n = f.size();
    if (n_target == n) return f;
    if (n_target < n && n % n_target == 0) {
        const std::size_t stride = n / n_target;
        std::vector<double> v(n_target);
        for (std::size_t i = 0; i < n_target; ++i) v[i] = f[i * stride];
        return GraphInterface(f.period(), std::move(v));
    }
    const TrigInterpolant interp(f);
    if (n_target > n) return GraphInterface(f.period(), interp.upsample(n_target));
    return GraphInterface::sample(f.period(), n_target, [&](double x) { return interp.eval(x); });
}

void write_graph(std::ostream& out, const GraphInterface& f) {
    const auto old = out.precision(17);
    out << "# period " << f.period() << '\n';
    for (std::size_t i = 0; i < f.size(); ++i) out << f.node(i) << ' ' << f[i] << '\n';
    out.precision(old);
}

GraphInterface read_graph(std::istream& in) {
    double period = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> xs;
    std::vector<double> ys;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        std::istringstream ls(line.substr(first));
        if (line[first] == '#') {
            std::string hash;
            std::string key;
            ls >> hash >> key;
            if (key == "period" && !(ls >> period)) {
                fail(ErrorKind::Config, "graph file line " + std::to_string(lineno) + ": bad period");
            }
            continue;
        }
        double x = 0.0;
        double y = 0.0;
        if (!(ls >> x >> y)) fail(ErrorKind::Config, "graph file line " + std::to_string(lineno) + ": expected 'x f(x)'");
        xs.push_back(x);
        ys.push_back(y);
    }
    if (ys.size() < 4) fail(ErrorKind::Config, "graph file: at least 4 samples required");
    if (std::isnan(period)) period = static_cast<double>(xs.size()) * (xs[1] - xs[0]);
    const double h = period / static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (std::abs(xs[i] - h * static_cast<double>(i)) > 1e-9 * std::max(1.0, period)) {
            fail(ErrorKind::Config, "graph file: nodes are not uniform x_i = i L / n");
        }
    }
    return GraphInterface(period, std::move(ys));
}

void save_graph(const std::string& path, const GraphInterface& f) {
    std::ofstream out(path);
    if (!out) fail(ErrorKind::Io, "cannot write graph file '" + path + "'");
    write_graph(out, f);
    if (!out) fail(ErrorKind::Io, "write failed for '" + path + "'");
}

GraphInterface load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::Io, "cannot open graph file '" + path + "'");
    return read_graph(in);
}

}  // namespace tdflow
