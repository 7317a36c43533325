#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <random>

#include "fkwave/field.hpp"
#include "fkwave/profiles.hpp"

using namespace fkwave;
namespace nbr = std::numbers;

namespace {
const Grid g16(64, 16);

std::vector<double> gridded_gaussian(const Grid& g, double width, bool odd) {
    std::vector<double> v(g.n());
    for (int i = 0; i < g.n(); ++i) {
        const double x = g.x(i);
        v[i] = (odd ? x : 1.0) * std::exp(-x * x / (2 * width * width));
    }
    return v;
}
} // namespace

TEST_CASE("kernel modes are annihilated exactly") {
    Params p(0.9);
    for (auto mode : {analytic_kernel_sin(1.0), analytic_kernel_cos(1.0)}) {
        auto f = CompositeField::analytic_only(g16, mode);
        auto img = apply_L(f, p);
        double sup = 0.0;
        for (int i = 0; i < g16.n(); ++i) sup = std::max(sup, std::abs(img.total(i)));
        CHECK(sup <= 1e-10);
    }
}

TEST_CASE("carrier image is compactly supported in [-2, 2]") {
    Params p(0.93);
    auto img = apply_L(CompositeField::analytic_only(g16, analytic_odd_carrier()), p);
    for (double x : {2.001, 2.5, 5.0, 40.0, -3.0, -17.5}) {
        CHECK(std::abs(img.analytic(x)) < 1e-13);
    }
    CHECK(std::abs(img.analytic(1.5)) > 0.1); // genuinely nonzero inside
}

TEST_CASE("orthogonality constants via kernel_moment") {
    for (double c2 : {0.83, 0.9, 1.0}) {
        Params p(c2);
        auto lodd = apply_L(CompositeField::analytic_only(g16, analytic_odd_carrier()), p);
        auto leven = apply_L(CompositeField::analytic_only(g16, analytic_even_carrier()), p);
        CHECK(kernel_moment(lodd, Mode::sin) ==
              doctest::Approx(2.0 - 2.0 * c2 * p.k0()).epsilon(1e-10));
        CHECK(kernel_moment(leven, Mode::cos) ==
              doctest::Approx(2.0 * c2 * p.k0() - 2.0).epsilon(1e-10));
        CHECK(std::abs(kernel_moment(lodd, Mode::cos)) < 1e-12);
        CHECK(std::abs(kernel_moment(leven, Mode::sin)) < 1e-12);
    }
    Params p1(1.0);
    auto lodd = apply_L(CompositeField::analytic_only(g16, analytic_odd_carrier()), p1);
    CHECK(kernel_moment(lodd, Mode::sin) == doctest::Approx(-1.14159265).epsilon(1e-7));
}

TEST_CASE("trapezoid moment of a smooth gridded field is spectrally accurate") {
    // sin(k0 x) * gaussian window: closed-form sin moment
    std::vector<double> v(g16.n());
    for (int i = 0; i < g16.n(); ++i) {
        const double x = g16.x(i);
        v[i] = std::sin(kWavenumber * x) * std::exp(-x * x / 2);
    }
    const double exact =
        0.5 * std::sqrt(2 * nbr::pi) * (1.0 - std::exp(-2.0 * kWavenumber * kWavenumber));
    CHECK(grid_moment(v, g16, Mode::sin) == doctest::Approx(exact).epsilon(1e-12));
    // same integrand through the analytic path (piecewise Gauss-Legendre)
    AnalyticFn f([](double x) { return std::sin(kWavenumber * x) * std::exp(-x * x / 2); },
                 nullptr, nullptr);
    auto comp = CompositeField::analytic_only(g16, f);
    CHECK(kernel_moment(comp, Mode::sin) == doctest::Approx(exact).epsilon(1e-12));
}

TEST_CASE("h2 norm against the Gaussian transform oracle") {
    auto f = CompositeField::gridded(g16, gridded_gaussian(g16, 1.0 / std::sqrt(2.0), false),
                                     Parity::even);
    // || (1+k^2) fhat || for f = exp(-x^2); frozen from the analytic transform
    CHECK(h2_norm(f) == doctest::Approx(2.742240839878).epsilon(1e-9));
    CHECK(h2_norm(CompositeField::gridded(g16, std::vector<double>(g16.n(), 0.0))) == 0.0);
    // parity flip invariance
    auto v = gridded_gaussian(g16, 1.3, true);
    auto w = v;
    const int n = g16.n();
    for (int i = 1; i < n; ++i) w[i] = v[n - i];
    w[0] = v[0];
    CHECK(h2_norm(v, g16) == doctest::Approx(h2_norm(w, g16)).epsilon(1e-12));
}

TEST_CASE("weighted norms") {
    std::vector<double> v(g16.n());
    for (int i = 0; i < g16.n(); ++i) {
        const double x = g16.x(i);
        v[i] = 1.0 / ((1 + x * x) * (1 + x * x));
    }
    auto f = CompositeField::gridded(g16, std::move(v));
    CHECK(weighted_norm(f, 1.0) == doctest::Approx(std::sqrt(nbr::pi / 2.0)).epsilon(1e-5));
    CHECK(weighted_norm(f, 1.0) == doctest::Approx(1.2533).epsilon(1e-4));
    std::vector<double> z(g16.n(), 0.0);
    CHECK(weighted_norm(CompositeField::gridded(g16, z), 1.0) == 0.0);
    // narrow bump at the origin: weight ~ 1 there
    std::vector<double> b(g16.n());
    for (int i = 0; i < g16.n(); ++i) b[i] = std::exp(-g16.x(i) * g16.x(i) * 200.0);
    const double plain = l2_norm(b, g16);
    CHECK(weighted_norm(CompositeField::gridded(g16, b), 1.0) ==
          doctest::Approx(plain).epsilon(1e-2));
}

TEST_CASE("sup norms and the Sobolev-style bounds") {
    std::vector<double> v(g16.n());
    for (int i = 0; i < g16.n(); ++i) v[i] = 1.0 / std::cosh(g16.x(i));
    auto f = CompositeField::gridded(g16, std::move(v));
    auto s = sup_norms(f);
    CHECK(s.sup == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(sup_norms(CompositeField::gridded(g16, std::vector<double>(g16.n(), 0.0))).sup == 0.0);

    std::mt19937 rng(11);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> w(g16.n(), 0.0);
        const int nb = 1 + static_cast<int>(uni(rng) * 4);
        for (int b = 0; b < nb; ++b) {
            const double x0 = -10 + 20 * uni(rng), s0 = 0.4 + 2.0 * uni(rng);
            const double amp = -1 + 2 * uni(rng), om = 3.0 * uni(rng);
            for (int i = 0; i < g16.n(); ++i) {
                const double t = (g16.x(i) - x0) / s0;
                if (std::abs(t) < 26) w[i] += amp * std::exp(-0.5 * t * t) * std::cos(om * t);
            }
        }
        auto cf = CompositeField::gridded(g16, w);
        const auto sn = sup_norms(cf);
        const double h2 = h2_norm(cf);
        CHECK(sn.sup <= 0.5 * h2 + 1e-6);
        CHECK(sn.sup_deriv <= 0.5 * h2 + 1e-6);
    }
}

TEST_CASE("operator preserves parity on symmetrized random fields") {
    Params p(0.95);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (auto par : {Parity::odd, Parity::even}) {
        std::vector<double> v(g16.n(), 0.0);
        for (int i = 0; i < g16.n(); ++i) {
            const double x = g16.x(i);
            v[i] = uni(rng) * std::exp(-0.1 * x * x);
        }
        symmetrize(v, g16, par);
        auto img = apply_L(CompositeField(g16, AnalyticFn(), v, par), p);
        CHECK(parity_defect(img.values, g16, par) < 1e-12);
    }
}

TEST_CASE("tail guard") {
    std::vector<double> v(g16.n(), 1.0); // non-decaying grid part
    CHECK_THROWS_AS(apply_L(CompositeField::gridded(g16, v), Params(0.9)), TailTooLarge);
    auto ok = CompositeField::gridded(g16, gridded_gaussian(g16, 1.0, false));
    CHECK_NOTHROW(apply_L(ok, Params(0.9)));
}

TEST_CASE("norms refuse non-decaying analytic input") {
    auto f = CompositeField::analytic_only(g16, analytic_kernel_sin(1.0));
    CHECK_THROWS_AS(h2_norm(f), NonDecayingInput);
    CHECK_THROWS_AS(sup_norms(f), NonDecayingInput);
}

TEST_CASE("spectral symmetry of parity fields") {
    auto odd = CompositeField::gridded(g16, gridded_gaussian(g16, 1.5, true), Parity::odd);
    symmetrize(odd.values, g16, Parity::odd);
    auto spec = analyze(odd);
    double worst_re = 0.0;
    for (const auto& c : spec.coefficients) worst_re = std::max(worst_re, std::abs(c.real()));
    CHECK(worst_re < 1e-12);
    auto even = CompositeField::gridded(g16, gridded_gaussian(g16, 1.5, false), Parity::even);
    auto spec2 = analyze(even);
    double worst_im = 0.0;
    for (const auto& c : spec2.coefficients) worst_im = std::max(worst_im, std::abs(c.imag()));
    CHECK(worst_im < 1e-12);
}

TEST_CASE("field serialization round trip") {
    namespace fs = std::filesystem;
    auto dir = fs::temp_directory_path() / "fkwave_test_csv";
    fs::create_directories(dir);
    auto f = CompositeField(Grid(8, 4), analytic_kernel_sin(0.5),
                            std::vector<double>(64, 0.25), Parity::none);
    save_field_csv(f, (dir / "f.csv").string(), (dir / "f.json").string());
    std::ifstream in(dir / "f.csv");
    std::string line;
    int rows = 0;
    double first_total = 0.0;
    while (std::getline(in, line)) {
        if (rows == 1) {
            const auto last = line.rfind(',');
            first_total = std::stod(line.substr(last + 1));
        }
        ++rows;
    }
    CHECK(rows == 65); // header + n
    CHECK(first_total == doctest::Approx(f.total(0)).epsilon(1e-15));
}
