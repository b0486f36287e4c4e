#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <random>
#include <sstream>

#include "tdflow/error.hpp"
#include "tdflow/kernel.hpp"
#include "tdflow/roots.hpp"

using namespace tdflow;

namespace {

// Values printed to 7 decimals alongside the coefficient derivation.
constexpr double kC1 = 0.2444098;
constexpr double kC2 = -0.2410874;
constexpr double kRatio = 2.137831;

}  // namespace

TEST_CASE("theta of a single Gaussian is c * alpha^{p/2}") {
    const KernelSpec unit = KernelSpec::gaussian();
    for (int p = -5; p <= 5; ++p) CHECK(theta(unit, p) == 1.0);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> a_dist(0.05, 20.0);
    std::uniform_real_distribution<double> c_dist(-3.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double a = a_dist(rng);
        double c = c_dist(rng);
        if (std::abs(c) < 1e-3) c = 1.0;
        const KernelSpec spec({a}, {c});
        for (int p = -3; p <= 3; ++p) {
            CHECK(theta(spec, p) == doctest::Approx(c * std::pow(a, 0.5 * p)).epsilon(1e-15));
        }
    }
}

TEST_CASE("cubic anchors at 1/5 and 1/4") {
    CHECK(special_cubic_rational(1, 5) == 27.0);
    CHECK(special_cubic_rational(1, 4) == -61.0 / 16.0);
    CHECK(special_cubic(0.2) == doctest::Approx(27.0).epsilon(1e-14));
    CHECK(special_cubic(0.25) == -61.0 / 16.0);
}

TEST_CASE("special kernel coefficients") {
    const KernelSpec spec = solve_special_kernel(1e-14);
    REQUIRE(spec.size() == 3);
    CHECK(spec.scales()[0] == 1.0);
    CHECK(spec.scales()[1] == 4.0);
    CHECK(spec.scales()[2] == 0.25);
    CHECK(spec.coeffs()[0] == 1.0);
    const double c1 = spec.coeffs()[1];
    const double c2 = spec.coeffs()[2];
    CHECK(std::abs(c1 - kC1) < 1e-6);
    CHECK(std::abs(c2 - kC2) < 1e-6);
    CHECK(c1 > 0.2);
    CHECK(c1 < 0.25);
    CHECK(std::abs(special_cubic(c1)) < 1e-12);
    CHECK(c2 == special_c2(c1));
    CHECK(spec.threshold() == doctest::Approx(0.5 * (1.0 + c1 + c2)).epsilon(1e-15));
    CHECK(std::abs(spec.step_ratio() - kRatio) < 1e-5);
    CHECK(std::abs(theta(spec, 1) / theta(spec, -1) - kRatio) < 1e-5);

    // theta(-1) with the plus sign, matching the denominator of the step ratio
    const double direct = 1.0 + 0.5 * c1 + 2.0 * c2;
    CHECK(theta(spec, -1) == doctest::Approx(direct).epsilon(1e-15));
    CHECK(std::abs(theta(spec, -1) - 0.64003) < 1e-5);
    CHECK(theta(spec, 1) == doctest::Approx(1.0 + 2.0 * c1 + 0.5 * c2).epsilon(1e-15));
}

TEST_CASE("solve_special_kernel is deterministic") {
    const KernelSpec a = solve_special_kernel(1e-14);
    const KernelSpec b = solve_special_kernel(1e-14);
    CHECK(a == b);
    CHECK(std::memcmp(a.coeffs().data(), b.coeffs().data(), 3 * sizeof(double)) == 0);
    CHECK_THROWS_AS((void)solve_special_kernel(0.0), Error);
}

TEST_CASE("bracketing guard rejects a bracket without a sign change") {
    // A sign typo in the linear coefficient leaves no root in (1/5, 1/4).
    auto typo = [](double c) { return ((1000.0 * c - 2175.0) * c - 210.0) * c + 640.0; };
    auto dtypo = [](double c) { return (3000.0 * c - 4350.0) * c - 210.0; };
    CHECK(typo(0.2) * typo(0.25) > 0.0);
    CHECK_THROWS_AS((void)bisect_newton(typo, dtypo, 0.2, 0.25, 1e-14), BracketError);
}

TEST_CASE("KernelSpec construction invariants") {
    CHECK_THROWS_AS(KernelSpec({}, {}), Error);
    CHECK_THROWS_AS(KernelSpec({1.0, 2.0}, {1.0}), Error);
    CHECK_THROWS_AS(KernelSpec({1.0, -2.0}, {1.0, 1.0}), Error);
    CHECK_THROWS_AS(KernelSpec({1.0, 1.0}, {1.0, 1.0}), Error);
    CHECK_THROWS_AS(KernelSpec({0.0}, {1.0}), Error);
    // theta(-1) = 1 + (-2)/2 = 0
    CHECK_THROWS_AS(KernelSpec({1.0, 4.0}, {1.0, -2.0}), DegenerateSpecError);
    const KernelSpec ok({1.0, 4.0}, {1.0, -0.5});
    CHECK(ok.threshold() == 0.25);
    CHECK(ok.step_ratio() == 0.0);
}

TEST_CASE("eval_radial") {
    CHECK(eval_radial(KernelSpec::gaussian(), 0.0, 2) == doctest::Approx(1.0 / (4.0 * std::numbers::pi)));
    CHECK(eval_radial(KernelSpec::gaussian(), 0.0, 1) == doctest::Approx(1.0 / std::sqrt(4.0 * std::numbers::pi)));

    const KernelSpec spec = solve_special_kernel();
    const double c1 = spec.coeffs()[1];
    const double c2 = spec.coeffs()[2];
    const double at_zero = (0.25 + c1 / 16.0 + c2) / std::numbers::pi;
    CHECK(eval_radial(spec, 0.0, 2) == doctest::Approx(at_zero).epsilon(1e-14));
    CHECK(std::abs(eval_radial(spec, 0.0, 2) - 0.0076996) < 1e-6);
    CHECK(eval_radial(spec, 0.0, 2) == doctest::Approx(reduced_polynomial(spec, 1.0) / std::numbers::pi));

    // Far field is dominated by the widest component: c1 exp(-r^2/16) / (16 pi).
    const double far = eval_radial(spec, 10.0, 2);
    const double xi = std::exp(-100.0 / 16.0);
    CHECK(far > 0.0);
    CHECK(far == doctest::Approx(xi * reduced_polynomial(spec, xi) / std::numbers::pi).epsilon(1e-12));
    CHECK(far < 1e-5);

    CHECK_THROWS_AS((void)eval_radial(spec, -1.0, 2), Error);
    CHECK_THROWS_AS((void)eval_radial(spec, 1.0, 3), Error);
}

TEST_CASE("reduced polynomial matches the kernel profile") {
    const KernelSpec spec = solve_special_kernel();
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> r_dist(0.0, 12.0);
    for (int i = 0; i < 500; ++i) {
        const double r = r_dist(rng);
        const double xi = std::exp(-r * r / 16.0);
        CHECK(eval_radial(spec, r, 2) ==
              doctest::Approx(xi * reduced_polynomial(spec, xi) / std::numbers::pi).epsilon(1e-12));
    }
}

TEST_CASE("positivity certificate") {
    const KernelSpec spec = solve_special_kernel();
    const double c1 = spec.coeffs()[1];
    const double c2 = spec.coeffs()[2];
    CHECK(reduced_polynomial(spec, 0.0) == doctest::Approx(c1 / 16.0));
    CHECK(std::abs(reduced_polynomial(spec, 0.0) - 0.0152756) < 1e-7);
    CHECK(reduced_polynomial(spec, 1.0) == doctest::Approx(c1 / 16.0 + 0.25 + c2));
    CHECK(std::abs(reduced_polynomial(spec, 1.0) - 0.0241882) < 1e-7);

    const PositivityCertificate cert = positivity_certificate(spec);
    CHECK(cert.is_positive);
    CHECK(cert.lower_bound_holds);
    CHECK(cert.min_value > 0.01);
    CHECK(cert.min_value < 0.03);
    CHECK(cert.min_value <= reduced_polynomial(spec, cert.argmin_xi) + 1e-15);
    // brute force oracle on an independent grid
    double brute = 1.0;
    for (int i = 0; i <= 7919; ++i) brute = std::min(brute, reduced_polynomial(spec, i / 7919.0));
    CHECK(cert.min_value <= brute + 1e-15);
    CHECK(cert.min_value >= brute - 1e-6);

    // order of the components does not matter
    const KernelSpec shuffled({0.25, 1.0, 4.0}, {c2, 1.0, c1});
    CHECK(positivity_certificate(shuffled).min_value == doctest::Approx(cert.min_value));

    CHECK_THROWS_AS((void)positivity_certificate(KernelSpec::gaussian()), Error);
    CHECK_THROWS_AS((void)positivity_certificate(KernelSpec({1.0, 4.0, 0.5}, {1.0, 0.1, 0.1})), Error);

    // a spec with too negative a narrow component fails the certificate
    const KernelSpec bad({1.0, 4.0, 0.25}, {1.0, 0.05, -0.4});
    const PositivityCertificate bad_cert = positivity_certificate(bad);
    CHECK_FALSE(bad_cert.is_positive);
    CHECK_FALSE(bad_cert.lower_bound_holds);
}

TEST_CASE("kernel is non-negative at random radii") {
    const KernelSpec spec = solve_special_kernel();
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> r_dist(0.0, 50.0);
    int negatives = 0;
    for (int i = 0; i < 10000; ++i) negatives += eval_radial(spec, r_dist(rng), 2) < 0.0;
    CHECK(negatives == 0);
}

TEST_CASE("fourier multiplier") {
    const KernelSpec spec = solve_special_kernel();
    CHECK(fourier_multiplier(spec, 0.0, 0.3) == doctest::Approx(spec.total_mass()).epsilon(1e-15));
    CHECK(fourier_multiplier(KernelSpec::gaussian(), 1.0, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));

    const double c1 = spec.coeffs()[1];
    const double c2 = spec.coeffs()[2];
    const double k = std::sqrt(20.0);
    const double direct = std::exp(-20.0) + c1 * std::exp(-80.0) + c2 * std::exp(-5.0);
    CHECK(fourier_multiplier(spec, k, 1.0) == doctest::Approx(direct).epsilon(1e-14));
    CHECK(fourier_multiplier(spec, k, 1.0) < 0.0);
    CHECK(std::abs(fourier_multiplier(spec, k, 1.0) + 1.62e-3) < 5e-6);

    // scaling: multiplier(k, t) depends on t k^2 only
    CHECK(fourier_multiplier(spec, k, 1.0) == doctest::Approx(fourier_multiplier(spec, 2.0 * k, 0.25)));

    const FourierProbe probe = find_negative_multiplier(spec);
    CHECK(probe.found);
    CHECK(probe.value < 0.0);
    CHECK(fourier_multiplier(spec, probe.k_norm, probe.t) == probe.value);
    CHECK_FALSE(find_negative_multiplier(KernelSpec::gaussian()).found);

    CHECK_THROWS_AS((void)fourier_multiplier(spec, 1.0, 0.0), Error);
}

TEST_CASE("kernel record round-trips bitwise") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> a_dist(0.01, 100.0);
    std::uniform_real_distribution<double> c_dist(-5.0, 5.0);
    std::uniform_int_distribution<int> n_dist(1, 3);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = n_dist(rng);
        std::vector<double> a;
        std::vector<double> c;
        for (int j = 0; j < n; ++j) {
            a.push_back(a_dist(rng));
            c.push_back(c_dist(rng));
        }
        const KernelSpec spec(a, c);
        const KernelSpec back = kernel_from_string(kernel_to_string(spec));
        CHECK(back == spec);
    }
    const KernelSpec special = solve_special_kernel();
    CHECK(kernel_from_string(kernel_to_string(special)) == special);
}

TEST_CASE("kernel record rejects malformed input") {
    CHECK_THROWS_AS((void)kernel_from_string(""), Error);
    CHECK_THROWS_AS((void)kernel_from_string("component 1\n"), Error);
    CHECK_THROWS_AS((void)kernel_from_string("component 1 1\nbogus 3\n"), Error);
    CHECK_THROWS_AS((void)kernel_from_string("component 1 1\nthreshold 0.7\n"), Error);
    CHECK_THROWS_AS((void)kernel_from_string("component 1 1\nstep_ratio 2\n"), Error);
    const KernelSpec minimal = kernel_from_string("# comment\n\ncomponent 1 1\n");
    CHECK(minimal == KernelSpec::gaussian());
    CHECK_THROWS_AS((void)load_kernel("/nonexistent/kernel.txt"), Error);
}
