#include "doctest.h"

#include <cmath>

#include "fkwave/profiles.hpp"

using namespace fkwave;
namespace nbr = std::numbers;

namespace {
// centered finite differences as an independent oracle for seam smoothness
double fd1(double (*f)(double), double x, double h = 1e-6) {
    return (f(x + h) - f(x - h)) / (2 * h);
}
double fd2(double (*f)(double), double x, double h = 1e-5) {
    return (f(x + h) - 2 * f(x) + f(x - h)) / (h * h);
}
} // namespace

TEST_CASE("profile amplitudes: A + B = 1 and the two B routes agree") {
    for (double c2 : {0.83, 0.88, 0.9, 0.95, 1.0}) {
        Params p(c2);
        const auto s = ProfileSpec::from(p);
        CHECK(s.amp_exp + s.amp_cos == doctest::Approx(1.0).epsilon(1e-14));
        const double k0 = p.k0();
        const double b_alt = (c2 * k0 * k0 - 2.0) / (c2 * k0 * k0 - k0);
        CHECK(s.amp_cos == doctest::Approx(b_alt).epsilon(1e-12));
    }
    const auto s1 = ProfileSpec::from(Params(1.0));
    CHECK(s1.amp_cos == doctest::Approx(0.5213).epsilon(1e-4));
    CHECK(s1.decay_rate == doctest::Approx(1.3079).epsilon(1e-4));
}

TEST_CASE("front profile vanishes at the origin and is odd") {
    Params p(0.9);
    CHECK(front_profile(0.0, p) == 0.0);
    for (double x : {0.3, 1.7, 5.0, 20.0})
        CHECK(front_profile(-x, p) == doctest::Approx(-front_profile(x, p)).epsilon(1e-15));
    CHECK(front_profile_deriv(0.0, p) > 0.0);
}

TEST_CASE("odd carrier seam is C^2 and matches the far field") {
    CHECK(odd_carrier(1.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(odd_carrier(2.0) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(fd1(odd_carrier, 1.0) == doctest::Approx(-nbr::pi / 2.0).epsilon(1e-7));
    CHECK(std::abs(fd2(odd_carrier, 1.0)) < 1e-4);
    for (double x : {0.2, 0.9, 1.5, 3.0})
        CHECK(odd_carrier(-x) == doctest::Approx(-odd_carrier(x)).epsilon(1e-15));
    // exact trigonometric far field: (1+x^2) d^l (u_odd - sgn cos) == 0 beyond the seam
    for (double x : {1.01, 2.5, 7.0, 30.0}) {
        CHECK(odd_carrier(x) == sgn(x) * std::cos(kWavenumber * x));
        CHECK(odd_carrier_deriv(x) == -kWavenumber * std::sin(kWavenumber * std::abs(x)));
        CHECK(odd_carrier_second(x) ==
              -kWavenumber * kWavenumber * sgn(x) * std::cos(kWavenumber * x));
    }
}

TEST_CASE("even carrier seam is C^2") {
    CHECK(even_carrier(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(even_carrier(0.0) == doctest::Approx(1.0 - nbr::pi * nbr::pi / 32.0).epsilon(1e-14));
    CHECK(even_carrier(0.0) == doctest::Approx(0.69158).epsilon(1e-5));
    CHECK(even_carrier(3.0) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(std::abs(fd1(even_carrier, 1.0)) < 1e-7);
    CHECK(fd2(even_carrier, 1.0) ==
          doctest::Approx(-nbr::pi * nbr::pi / 4.0).epsilon(1e-4));
    for (double x : {0.2, 0.9, 1.5, 3.0})
        CHECK(even_carrier(-x) == doctest::Approx(even_carrier(x)).epsilon(1e-15));
}

TEST_CASE("blend step: odd, monotone, flat C^2 ends") {
    CHECK(blend_step(0.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(blend_step(1.0) == 0.5);
    CHECK(blend_step(-1.0) == -0.5);
    CHECK(std::abs(fd1(blend_step, 1.0)) < 1e-7);
    CHECK(std::abs(fd2(blend_step, 1.0)) < 1e-4);
    double prev = -0.5;
    for (int i = 0; i <= 10000; ++i) {
        const double v = blend_step(-1.2 + 2.4 * i / 10000.0);
        CHECK(v >= prev - 1e-15);
        prev = v;
    }
}

TEST_CASE("mollified sign force") {
    const double eps = 0.02;
    CHECK(mollified_sign(eps, eps) == 1.0);
    CHECK(mollified_sign(eps / 2, eps) == doctest::Approx(std::sin(nbr::pi / 4)).epsilon(1e-15));
    CHECK(mollified_sign(0.0, eps) == 0.0);
    CHECK(std::abs(mollified_sign_deriv(eps * 0.999999, eps)) < 2e-4); // C^1 edge matching
    // sup |psi''| = pi/(2 eps) <= 2/eps
    double sup = 0.0;
    for (int i = -200; i <= 200; ++i)
        sup = std::max(sup, std::abs(mollified_sign_deriv(i * eps / 200.0, eps)));
    CHECK(sup == doctest::Approx(nbr::pi / (2 * eps)).epsilon(1e-3));
    CHECK(sup <= 2.0 / eps);
    // odd and non-decreasing
    double prev = -1.0;
    for (int i = -300; i <= 300; ++i) {
        const double s = i * 2.0 * eps / 300.0;
        CHECK(mollified_sign(-s, eps) == doctest::Approx(-mollified_sign(s, eps)).epsilon(1e-15));
        CHECK(mollified_sign(s, eps) >= prev - 1e-15);
        prev = mollified_sign(s, eps);
    }
    CHECK_THROWS_AS(mollified_sign(0.1, 0.0), NonPositiveEpsilon);
}

TEST_CASE("localized force and its envelope bound") {
    const double eps = 0.01;
    CHECK(localized_force(0.5, 5.0, eps) == 1.0);
    CHECK(localized_force(-0.5, 5.0, eps) == 1.0);
    CHECK(localized_force(2 * eps, 0.0, eps) == 1.0);
    CHECK(localized_force(0.0, 0.0, eps) == 0.0);
    const double mu = std::pow(2.0, 2.5) / eps;
    for (int iu = -50; iu <= 50; ++iu)
        for (int ix = -60; ix <= 60; ++ix) {
            const double u = iu * eps / 25.0, x = ix * 0.1;
            const double v = std::pow(1 + x * x, 1.5) *
                             std::abs(localized_force_deriv(u, x, eps));
            CHECK(v <= mu * (1.0 + 1e-12));
        }
}

TEST_CASE("saturation: identity core, bounded C^1 clamp, odd") {
    const double bm = 0.1;
    auto s = saturate(bm / 2, bm);
    CHECK(s.value == bm / 2);
    CHECK(s.derivative == 1.0);
    CHECK(!s.clamped);
    auto c = saturate(3 * bm, bm);
    CHECK(c.clamped);
    CHECK(std::abs(c.value) <= (4.0 / 3.0) * bm + 1e-15);
    CHECK(c.derivative == 0.0);
    for (double b : {0.01, 0.12, 0.25, 0.7}) {
        CHECK(saturate(-b, bm).value == doctest::Approx(-saturate(b, bm).value).epsilon(1e-15));
        CHECK(saturate(b, bm).derivative >= 0.0);
        CHECK(saturate(b, bm).derivative <= 1.0);
    }
}
