#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace tdflow {

/// One Gaussian component c * G_alpha of a kernel.
struct GaussianComponent {
    double scale;  ///< alpha > 0, the Gaussian time-scale
    double coeff;  ///< c
};

/// Radially symmetric kernel K = sum_j c_j G_{alpha_j}, where
/// G_alpha(x) = (4 pi alpha)^{-d/2} exp(-|x|^2 / (4 alpha)).
///
/// Immutable after construction. The threshold lambda = (sum c_j)/2 and the
/// effective step ratio tau/t = theta(1)/theta(-1) are computed once.
class KernelSpec {
public:
    /// Throws tdflow::Error if scales are not positive and pairwise distinct,
    /// the lists differ in length or are empty, or theta(-1) == 0.
    KernelSpec(std::vector<double> scales, std::vector<double> coeffs);

    /// The classical MBO kernel: a single unit Gaussian.
    static KernelSpec gaussian();

    [[nodiscard]] std::span<const double> scales() const noexcept { return scales_; }
    [[nodiscard]] std::span<const double> coeffs() const noexcept { return coeffs_; }
    [[nodiscard]] std::size_t size() const noexcept { return scales_.size(); }
    [[nodiscard]] double threshold() const noexcept { return threshold_; }
    [[nodiscard]] double step_ratio() const noexcept { return step_ratio_; }
    [[nodiscard]] double total_mass() const noexcept { return 2.0 * threshold_; }
    [[nodiscard]] double min_scale() const noexcept;
    [[nodiscard]] double max_scale() const noexcept;

    friend bool operator==(const KernelSpec&, const KernelSpec&) = default;

private:
    std::vector<double> scales_;
    std::vector<double> coeffs_;
    double threshold_ = 0.0;
    double step_ratio_ = 0.0;
};

/// theta(p) = sum_j alpha_j^{p/2} c_j.
[[nodiscard]] double theta(const KernelSpec& spec, int p);

/// The cubic 1000 c^3 - 2175 c^2 + 210 c + 64 whose root in (1/5, 1/4)
/// gives the second-order coefficient c_1.
[[nodiscard]] double special_cubic(double c);

/// The same cubic evaluated exactly at num/den (integer arithmetic, one final rounding).
[[nodiscard]] double special_cubic_rational(std::int64_t num, std::int64_t den);

/// c_2 as a function of c_1 from the first matching condition.
[[nodiscard]] double special_c2(double c1);

/// Solves for the monotone second-order kernel: scales (1, 4, 1/4),
/// coefficients (1, c1, c2). Bisection on (1/5, 1/4) down to `tolerance`
/// bracket width, then one Newton polish.
[[nodiscard]] KernelSpec solve_special_kernel(double tolerance = 1e-14);

/// K(x) at |x| = r in dimension d (1 or 2).
[[nodiscard]] double eval_radial(const KernelSpec& spec, double r, int d = 2);

/// Sum_j c_j exp(-alpha_j t |k|^2): the Fourier multiplier of K_t for the
/// convention in which a unit Gaussian G_s has transform exp(-s |k|^2).
[[nodiscard]] double fourier_multiplier(const KernelSpec& spec, double k_norm, double t);

struct PositivityCertificate {
    double min_value = 0.0;   ///< min over xi in [0,1] of q(xi)
    double argmin_xi = 0.0;
    bool is_positive = false;
    bool lower_bound_holds = false;  ///< xi^3 (1/4 + c2) + c1/16 >= 0 on [0,1]
};

/// For scales exactly (1, 4, 1/4), K = (1/pi) xi q(xi) with xi = exp(-r^2/16) and
/// q(xi) = c2 xi^15 + xi^3/4 + c1/16. Evaluates q.
[[nodiscard]] double reduced_polynomial(const KernelSpec& spec, double xi);

/// Dense scan plus golden-section refinement of q over [0, 1].
/// Throws if the spec's scales are not (1, 4, 1/4).
[[nodiscard]] PositivityCertificate positivity_certificate(const KernelSpec& spec);

/// A (k, t) pair at which the kernel's Fourier multiplier is negative.
struct FourierProbe {
    bool found = false;
    double k_norm = 0.0;
    double t = 1.0;
    double value = 0.0;
};

/// Scans |k| at t = 1 for the most negative multiplier value.
[[nodiscard]] FourierProbe find_negative_multiplier(const KernelSpec& spec, double k_max = 20.0,
                                                    std::size_t samples = 20000);

/// Plain-text record: one "component <alpha> <c>" line per Gaussian plus the
/// derived "threshold" and "step_ratio", all printed with 17 significant digits.
void write_kernel(std::ostream& out, const KernelSpec& spec);
[[nodiscard]] std::string kernel_to_string(const KernelSpec& spec);

/// Parses the record above. Derived values, when present, must agree with the
/// recomputed ones to 1e-12 relative.
[[nodiscard]] KernelSpec read_kernel(std::istream& in);
[[nodiscard]] KernelSpec kernel_from_string(const std::string& text);
[[nodiscard]] KernelSpec load_kernel(const std::string& path);
void save_kernel(const std::string& path, const KernelSpec& spec);

}  // namespace tdflow
