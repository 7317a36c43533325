#include "fkwave/linsolve.hpp"

#include <cmath>

namespace fkwave {

CompositeField fold_to_grid(const CompositeField& f, double tail_tol) {
    if (f.analytic.is_zero()) {
        auto out = f;
        if (out.values.empty()) out.values.assign(out.grid.n(), 0.0);
        return out;
    }
    CompositeField out(f.grid, AnalyticFn(), f.sample_total(), f.parity);
    require_tail(out, tail_tol);
    return out;
}

ProjectedField project_moment(const CompositeField& q, Mode mode, double tail_tol) {
    CompositeField g = fold_to_grid(q, tail_tol);
    const Grid& gr = g.grid;
    const double defect = grid_moment(g.values, gr, mode);
    std::vector<double> window(gr.n());
    double wm = 0.0;
    for (int i = 0; i < gr.n(); ++i) {
        const double x = gr.x(i);
        const double ph = kWavenumber * x;
        const double md = (mode == Mode::sin) ? std::sin(ph) : std::cos(ph);
        window[i] = md / std::cosh(x / 8.0);
        wm += window[i] * md;
    }
    wm *= gr.h();
    const double mu = defect / wm;
    for (int i = 0; i < gr.n(); ++i) g.values[i] -= mu * window[i];
    return {std::move(g), defect};
}

RawInvert invert_raw(const std::vector<double>& q, const Grid& g, const Params& p,
                     bool fit_sin, bool fit_cos) {
    const auto& fft = fft_for(g);
    auto bins = fft.forward(q);
    const int nb = static_cast<int>(bins.size());
    const int kbin = g.mode_bin();
    const std::complex<double> removed = bins[kbin];
    for (int j = 0; j < nb; ++j) {
        if (j == kbin) {
            bins[j] = 0.0;
            continue;
        }
        const double d = dispersion_eval(g.wavenumber(j), p).value;
        if (std::abs(d) < 1e-8)
            throw NearSingularMode("dispersion nearly vanishes at a non-deflated grid mode");
        bins[j] /= d;
    }
    auto r = fft.inverse(bins);

    // Zero-filling the deflated bins leaves the smooth-continuation kernel
    // content as an O(1/X) global oscillation; measure it where the decaying
    // part is below roundoff and remove the exactly-representable mode.
    double asin = 0.0, acos = 0.0;
    double ss = 0.0, cc = 0.0;
    double rs = 0.0, rc = 0.0;
    for (int i = 0; i < g.n(); ++i) {
        const double x = g.x(i);
        const double ax = std::abs(x);
        if (ax < g.half_length - 12 || ax > g.half_length - 2) continue;
        const double ph = kWavenumber * x;
        const double s = std::sin(ph), c = std::cos(ph);
        rs += r[i] * s;
        ss += s * s;
        rc += r[i] * c;
        cc += c * c;
    }
    if (fit_sin && ss > 0.0) asin = rs / ss;
    if (fit_cos && cc > 0.0) acos = rc / cc;
    if (asin != 0.0 || acos != 0.0)
        for (int i = 0; i < g.n(); ++i) {
            const double ph = kWavenumber * g.x(i);
            r[i] -= asin * std::sin(ph) + acos * std::cos(ph);
        }
    return {std::move(r), asin, acos, removed};
}

namespace {

InvertResult finish(std::vector<double> r, const CompositeField& q, Parity parity,
                    double a_sin, double a_cos, double residue) {
    symmetrize(r, q.grid, parity);
    CompositeField rc(q.grid, AnalyticFn(), std::move(r), parity);
    const double h2 = h2_norm(rc);
    const double wq = weighted_norm(q, 1.0);
    return {std::move(rc), a_sin, a_cos, residue, wq > 0.0 ? h2 / wq : 0.0};
}

} // namespace

InvertResult invert_L(const CompositeField& q, const Params& p, Parity parity,
                      double tail_tol) {
    if (parity == Parity::none)
        throw InvalidParams("invert_L: declare odd or even parity (or use invert_L_general)");
    CompositeField qq = fold_to_grid(q, tail_tol);
    const double pd = parity_defect(qq.values, qq.grid, parity);
    double scale = 0.0;
    for (double v : qq.values) scale = std::max(scale, std::abs(v));
    if (pd > 1e-10 * std::max(1.0, scale))
        throw InvalidParams("invert_L: declared parity does not hold");
    symmetrize(qq.values, qq.grid, parity);
    const Mode mode = (parity == Parity::odd) ? Mode::sin : Mode::cos;
    const double mom = grid_moment(qq.values, qq.grid, mode);
    if (std::abs(mom) > moment_tol)
        throw MomentViolated("invert_L: kernel moment " + std::to_string(mom) +
                             " above tolerance; project first");
    auto raw = invert_raw(qq.values, qq.grid, p, parity == Parity::odd, parity == Parity::even);
    const double amp = (parity == Parity::odd) ? raw.kernel_amplitude_sin : raw.kernel_amplitude_cos;
    auto out = finish(std::move(raw.values), qq, parity, raw.kernel_amplitude_sin,
                      raw.kernel_amplitude_cos, std::abs(mom));
    out.kernel_amplitude = amp;
    return out;
}

InvertResult invert_L_general(const CompositeField& q, const Params& p, double tail_tol) {
    CompositeField qq = fold_to_grid(q, tail_tol);
    const Grid& g = qq.grid;
    const double ms = grid_moment(qq.values, g, Mode::sin);
    const double mc = grid_moment(qq.values, g, Mode::cos);
    if (std::abs(ms) > moment_tol || std::abs(mc) > moment_tol)
        throw MomentViolated("invert_L_general: both kernel moments must vanish");
    const int n = g.n();
    std::vector<double> qo(n), qe(n);
    for (int i = 0; i < n; ++i) {
        const int j = (n - i) % n;
        qo[i] = 0.5 * (qq.values[i] - qq.values[j]);
        qe[i] = 0.5 * (qq.values[i] + qq.values[j]);
    }
    auto ro = invert_raw(qo, g, p, true, false);
    auto re = invert_raw(qe, g, p, false, true);
    std::vector<double> r(n);
    for (int i = 0; i < n; ++i) r[i] = ro.values[i] + re.values[i];
    auto out = finish(std::move(r), qq, Parity::none, ro.kernel_amplitude_sin,
                      re.kernel_amplitude_cos, std::max(std::abs(ms), std::abs(mc)));
    out.kernel_amplitude = ro.kernel_amplitude_sin;
    return out;
}

} // namespace fkwave
