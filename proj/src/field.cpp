#include "fkwave/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "fkwave/quadrature.hpp"
#include "json.hpp"

namespace fkwave {

// ---------------------------------------------------------------- quadrature

namespace {

std::pair<std::vector<double>, std::vector<double>> make_gl(int order) {
    std::vector<double> nodes(order), weights(order);
    for (int i = 0; i < order; ++i) {
        // Newton iteration from the Chebyshev estimate
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    return {nodes, weights};
}

const auto& gl24() {
    static const auto data = make_gl(24);
    return data;
}

} // namespace

const std::vector<double>& gl24_nodes() { return gl24().first; }
const std::vector<double>& gl24_weights() { return gl24().second; }

double integrate_piecewise(const std::function<double(double)>& f, double a, double b) {
    const auto& xs = gl24_nodes();
    const auto& ws = gl24_weights();
    double total = 0.0;
    double lo = a;
    while (lo < b - 1e-12) {
        const double hi = std::min(b, std::floor(lo + 1.0 + 1e-12));
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        double acc = 0.0;
        for (size_t q = 0; q < xs.size(); ++q) acc += ws[q] * f(mid + half * xs[q]);
        total += half * acc;
        lo = hi;
    }
    return total;
}

// ------------------------------------------------------------------- fields

std::vector<double> CompositeField::sample_total() const {
    std::vector<double> out(grid.n());
    for (int i = 0; i < grid.n(); ++i) out[i] = total(i);
    return out;
}

namespace {

// 8-point Lagrange interpolation of periodic samples; callers guarantee the
// tail is negligible when |x| approaches the boundary.
double interpolate(const std::vector<double>& v, const Grid& g, double x) {
    if (v.empty()) return 0.0;
    const int X = g.half_length;
    if (x < -X || x >= X) return 0.0;
    constexpr int order = 8;
    const int n = g.n();
    const double t = (x + X) * g.points_per_unit;
    const int i0 = static_cast<int>(std::floor(t));
    const int base = i0 - order / 2 + 1;
    const double s = t - base;
    double acc = 0.0;
    for (int j = 0; j < order; ++j) {
        double lj = 1.0;
        for (int m = 0; m < order; ++m)
            if (m != j) lj *= (s - m) / (j - m);
        acc += v[((base + j) % n + n) % n] * lj;
    }
    return acc;
}

} // namespace

double CompositeField::operator()(double x) const {
    return analytic(x) + interpolate(values, grid, x);
}

double CompositeField::eval_deriv(double x, const std::vector<double>& grid_deriv) const {
    return (analytic.is_zero() ? 0.0 : analytic.deriv(x)) + interpolate(grid_deriv, grid, x);
}

SpectralField analyze(const CompositeField& f) {
    if (!f.analytic.is_zero()) throw NonDecayingInput("analyze: field has an analytic part");
    const auto& fft = fft_for(f.grid);
    auto bins = f.values.empty() ? std::vector<std::complex<double>>(f.grid.n() / 2 + 1)
                                 : fft.forward(f.values);
    // integral convention with the -X origin phase
    const double scale = f.grid.h() / std::sqrt(2.0 * std::numbers::pi);
    for (int j = 0; j < static_cast<int>(bins.size()); ++j) {
        const double phase = f.grid.wavenumber(j) * f.grid.half_length;
        bins[j] *= scale * std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return {f.grid, std::move(bins), {0.0, 0.0}, false};
}

double tail_magnitude(const CompositeField& f) {
    if (f.values.empty()) return 0.0;
    const Grid& g = f.grid;
    double m = 0.0;
    for (int i = 0; i < g.n(); ++i)
        if (std::abs(g.x(i)) > g.half_length - 4) m = std::max(m, std::abs(f.values[i]));
    return m;
}

void require_tail(const CompositeField& f, double tol) {
    const double m = tail_magnitude(f);
    if (m > tol)
        throw TailTooLarge("grid-part tail " + std::to_string(m) + " exceeds " + std::to_string(tol));
}

namespace {

std::vector<double> apply_L_grid(const std::vector<double>& v, const Grid& g, const Params& p) {
    auto second = spectral_derivative(v, g, 2);
    const int n = g.n(), m = g.points_per_unit;
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        const double lap = v[(i + m) % n] - 2.0 * v[i] + v[(i - m + n) % n];
        out[i] = p.c2() * second[i] - lap + p.alpha() * v[i];
    }
    return out;
}

AnalyticFn L_image(const AnalyticFn& f, const Params& p) {
    if (f.is_zero()) return AnalyticFn();
    return AnalyticFn::value_only([f, p](double x) {
        return p.c2() * f.second(x) - (f(x + 1.0) - 2.0 * f(x) + f(x - 1.0)) + p.alpha() * f(x);
    });
}

} // namespace

CompositeField apply_L(const CompositeField& f, const Params& p, double tail_tol) {
    require_tail(f, tail_tol);
    std::vector<double> gv;
    if (f.has_grid_part()) gv = apply_L_grid(f.values, f.grid, p);
    return CompositeField(f.grid, L_image(f.analytic, p), std::move(gv), f.parity);
}

double grid_moment(const std::vector<double>& v, const Grid& g, Mode mode) {
    if (v.empty()) return 0.0;
    double acc = 0.0;
    for (int i = 0; i < g.n(); ++i) {
        const double ph = kWavenumber * g.x(i);
        acc += v[i] * (mode == Mode::sin ? std::sin(ph) : std::cos(ph));
    }
    return acc * g.h();
}

namespace {

void require_analytic_tail(const CompositeField& f, double tol) {
    if (f.analytic.is_zero()) return;
    const Grid& g = f.grid;
    double m = 0.0;
    for (int i = 0; i <= 64; ++i) {
        const double d = g.half_length - 2.0 + 2.0 * i / 64.0;
        m = std::max({m, std::abs(f.analytic(d)), std::abs(f.analytic(-d))});
    }
    if (m > tol)
        throw TailTooLarge("analytic part is not negligible near the boundary: " + std::to_string(m));
}

} // namespace

double kernel_moment(const CompositeField& f, Mode mode, double tail_tol) {
    require_tail(f, tail_tol);
    require_analytic_tail(f, tail_tol);
    double acc = grid_moment(f.values, f.grid, mode);
    if (!f.analytic.is_zero()) {
        const double X = f.grid.half_length;
        acc += integrate_piecewise(
            [&](double x) {
                const double ph = kWavenumber * x;
                return f.analytic(x) * (mode == Mode::sin ? std::sin(ph) : std::cos(ph));
            },
            -X, X);
    }
    return acc;
}

double h2_norm(const std::vector<double>& v, const Grid& g) {
    if (v.empty()) return 0.0;
    const auto bins = fft_for(g).forward(v);
    const double scale = g.h() / std::sqrt(2.0 * std::numbers::pi);
    const double dk = std::numbers::pi / g.half_length;
    double acc = 0.0;
    const int nb = static_cast<int>(bins.size());
    for (int j = 0; j < nb; ++j) {
        const double k = g.wavenumber(j);
        const double w = (1.0 + k * k) * std::abs(bins[j]) * scale;
        const double mult = (j == 0 || j == nb - 1) ? 1.0 : 2.0;
        acc += mult * w * w;
    }
    return std::sqrt(dk * acc);
}

double h2_norm(const CompositeField& f) {
    if (!f.analytic.is_zero()) throw NonDecayingInput("h2_norm: field has an analytic part");
    return h2_norm(f.values, f.grid);
}

double weighted_norm(const CompositeField& f, double power, double tail_tol) {
    // the gridded part enters the weighted sum explicitly; only a non-decaying
    // analytic part would invalidate the truncation
    require_analytic_tail(f, tail_tol);
    const Grid& g = f.grid;
    if (power == 1.0) {
        double acc = 0.0;
        for (int i = 0; i < g.n(); ++i) {
            const double x = g.x(i);
            const double w = (1.0 + x * x) * f.total(i);
            acc += w * w;
        }
        return std::sqrt(g.h() * acc);
    }
    if (power == 1.5) {
        double m = 0.0;
        for (int i = 0; i < g.n(); ++i) {
            const double x = g.x(i);
            m = std::max(m, std::pow(1.0 + x * x, 1.5) * std::abs(f.total(i)));
        }
        return m;
    }
    throw InvalidParams("weighted_norm: power must be 1 or 3/2");
}

SupNorms sup_norms(const CompositeField& f) {
    if (!f.analytic.is_zero()) throw NonDecayingInput("sup_norms: field has an analytic part");
    if (f.values.empty()) return {0.0, 0.0};
    auto d = spectral_derivative(f.values, f.grid, 1);
    double s0 = 0.0, s1 = 0.0;
    for (int i = 0; i < f.grid.n(); ++i) {
        s0 = std::max(s0, std::abs(f.values[i]));
        s1 = std::max(s1, std::abs(d[i]));
    }
    return {s0, s1};
}

double l2_norm(const std::vector<double>& v, const Grid& g) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return std::sqrt(g.h() * acc);
}

double parity_defect(const std::vector<double>& v, const Grid& g, Parity par) {
    if (par == Parity::none || v.empty()) return 0.0;
    const int n = g.n();
    const double s = (par == Parity::odd) ? -1.0 : 1.0;
    double m = 0.0;
    for (int i = 1; i < n; ++i) m = std::max(m, std::abs(v[i] - s * v[n - i]));
    if (par == Parity::odd) m = std::max({m, std::abs(v[0]), std::abs(v[n / 2])});
    return m;
}

void symmetrize(std::vector<double>& v, const Grid& g, Parity par) {
    if (par == Parity::none || v.empty()) return;
    const int n = g.n();
    const double s = (par == Parity::odd) ? -1.0 : 1.0;
    for (int i = 1; i < n / 2; ++i) {
        const double a = 0.5 * (v[i] + s * v[n - i]);
        v[i] = a;
        v[n - i] = s * a;
    }
    if (par == Parity::odd) v[0] = v[n / 2] = 0.0;
}

void save_field_csv(const CompositeField& f, const std::string& csv_path,
                    const std::string& sidecar_path) {
    std::ofstream out(csv_path);
    out << "x,analytic,grid,total\n";
    char buf[128];
    for (int i = 0; i < f.grid.n(); ++i) {
        const double x = f.grid.x(i);
        const double a = f.analytic(x);
        const double gv = f.grid_value(i);
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", x, a, gv, a + gv);
        out << buf;
    }
    nlohmann::ordered_json side;
    side["half_length"] = f.grid.half_length;
    side["points_per_unit"] = f.grid.points_per_unit;
    side["n_points"] = f.grid.n();
    side["spacing"] = f.grid.h();
    side["parity"] = (f.parity == Parity::odd ? "odd" : f.parity == Parity::even ? "even" : "none");
    std::ofstream(sidecar_path) << side.dump(2) << "\n";
}

} // namespace fkwave
