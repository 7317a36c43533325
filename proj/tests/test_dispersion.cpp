#include "doctest.h"

#include <cmath>
#include <random>

#include "fkwave/params.hpp"

using namespace fkwave;
namespace nbr = std::numbers;

TEST_CASE("alpha is derived from c and pins the kernel roots") {
    Params p(1.0);
    CHECK(p.alpha() == doctest::Approx(nbr::pi * nbr::pi / 4.0 - 2.0).epsilon(1e-15));
    for (double c2 : {0.83, 0.87, 0.9, 0.95, 1.0}) {
        Params q(c2);
        CHECK(std::abs(dispersion_eval(q.k0(), q).value) < 1e-13);
        CHECK(std::abs(dispersion_eval(-q.k0(), q).value) < 1e-13);
    }
}

TEST_CASE("admissibility window") {
    CHECK_THROWS_AS(Params(0.5), InvalidParams);
    CHECK_THROWS_AS(Params(1.01), InvalidParams);
    CHECK_THROWS_AS(Params(0.0), InvalidParams);
    CHECK_THROWS_AS(Params(0.9, -0.01), NonPositiveEpsilon);
    CHECK_THROWS_AS(Params(0.9, 0.01, 0.2), InvalidParams); // gamma cap
}

TEST_CASE("dispersion values at c = 1") {
    Params p(1.0);
    CHECK(dispersion_eval(0.0, p).value == doctest::Approx(p.alpha()).epsilon(1e-15));
    CHECK(dispersion_eval(0.0, p).value == doctest::Approx(0.46740110027233965).epsilon(1e-12));
    // D(pi) = -pi^2 + 4 + alpha
    CHECK(dispersion_eval(nbr::pi, p).value ==
          doctest::Approx(-nbr::pi * nbr::pi + 4.0 + p.alpha()).epsilon(1e-14));
    CHECK(dispersion_eval(nbr::pi, p).value == doctest::Approx(-5.402203).epsilon(1e-6));
}

TEST_CASE("D is even, D' is odd") {
    Params p(0.9);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> uni(-6.0, 6.0);
    for (int i = 0; i < 200; ++i) {
        const double z = uni(rng);
        CHECK(dispersion_eval(z, p).value ==
              doctest::Approx(dispersion_eval(-z, p).value).epsilon(1e-14));
        CHECK(dispersion_eval(z, p).derivative ==
              doctest::Approx(-dispersion_eval(-z, p).derivative).epsilon(1e-14));
    }
}

TEST_CASE("root certification across the admissible range") {
    for (double c2 : {0.83, 0.9, 1.0}) {
        const auto roots = kernel_roots(Params(c2));
        CHECK(roots.certified);
        CHECK(roots.positive == doctest::Approx(nbr::pi / 2.0));
        CHECK(roots.negative == doctest::Approx(-nbr::pi / 2.0));
    }
}

TEST_CASE("inversion constants at c = 1 against independently evaluated dispersion values") {
    Params p(1.0);
    // frozen independent evaluations of D(k0/2), D(3 k0/2), D'(k0/2)
    const double d_half = 0.43633726283115971;
    const double d_three_half = -1.6700378129673297;
    const double dp_half = -0.15658276442180151;
    CHECK(dispersion_eval(p.k0() / 2, p).value == doctest::Approx(d_half).epsilon(1e-14));
    CHECK(dispersion_eval(3 * p.k0() / 2, p).value ==
          doctest::Approx(d_three_half).epsilon(1e-14));
    CHECK(dispersion_eval(p.k0() / 2, p).derivative == doctest::Approx(dp_half).epsilon(1e-13));

    const double c1_expected = std::sqrt(
        std::max(1.0 / (d_half * d_half), 1.0 / (d_three_half * d_three_half)) +
        (p.k0() / 2.0) / (dp_half * dp_half));
    const auto ic = inversion_constants(p);
    CHECK(ic.c1 == doctest::Approx(c1_expected).epsilon(1e-12));
    CHECK(ic.c1 == doctest::Approx(6.11).epsilon(2e-3));
    CHECK(ic.bound_factor ==
          doctest::Approx(ic.c1 + ((4.0 + p.alpha()) * ic.c1 + 1.0)).epsilon(1e-12));
    CHECK(ic.bound_factor == doctest::Approx(34.4).epsilon(2e-3));
}

TEST_CASE("c1 positive on the admissible range; bound_factor monotonicity is report-only") {
    double prev = -1.0;
    bool monotone = true;
    for (int i = 0; i <= 50; ++i) {
        const double c2 = 0.83 + (1.0 - 0.83) * i / 50.0;
        const auto ic = inversion_constants(Params(c2));
        CHECK(ic.c1 > 0.0);
        if (prev > 0.0 && ic.bound_factor > prev + 1e-9) monotone = false;
        prev = ic.bound_factor;
    }
    if (!monotone)
        MESSAGE("bound_factor is not monotone in c (D'(k0/2) crosses zero near c^2 ~ 0.9003)");
}
