#include "fkwave/twotrans.hpp"

#include <cmath>

namespace fkwave {

namespace {

void validate_x0(int x0, const Grid& g) {
    if (x0 % 2 != 0 || x0 < 6) throw InvalidParams("x0 must be an even integer >= 6");
    if (x0 > g.half_length - 8)
        throw DomainTooSmall("x0 too close to the domain boundary (need x0 <= X - 8)");
}

std::vector<double> sample_L_image(const AnalyticFn& f, const Grid& g, const Params& p) {
    std::vector<double> out(g.n());
    for (int i = 0; i < g.n(); ++i) {
        const double x = g.x(i);
        out[i] = p.c2() * f.second(x) - (f(x + 1.0) - 2.0 * f(x) + f(x - 1.0)) + p.alpha() * f(x);
    }
    return out;
}

std::vector<double> apply_L_samples(const std::vector<double>& v, const Grid& g, const Params& p) {
    auto second = spectral_derivative(v, g, 2);
    const int n = g.n(), m = g.points_per_unit;
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        const double lap = v[(i + m) % n] - 2.0 * v[i] + v[(i - m + n) % n];
        out[i] = p.c2() * second[i] - lap + p.alpha() * v[i];
    }
    return out;
}

} // namespace

CompositeField build_two_front_profile(int x0, const Stage1Solution& s1, const Grid& g) {
    validate_x0(x0, g);
    if (g.n() != s1.grid.n()) throw InvalidParams("two-front profile: grid mismatch");
    const int n = g.n();
    const int shift = x0 * g.points_per_unit;
    const auto& r = s1.corrector.values;
    std::vector<double> gridpart(n);
    for (int i = 0; i < n; ++i) {
        const double w = blend_step(g.x(i));
        const double r_minus = r[((i - shift) % n + n) % n]; // r(x - x0)
        const double r_plus = r[(i + shift) % n];            // r(x + x0)
        gridpart[i] = (0.5 + w) * (-r_minus) + (w - 0.5) * (-r_plus);
    }
    return CompositeField(g, analytic_two_front(s1.params, x0), std::move(gridpart),
                          Parity::even);
}

double even_carrier_coefficient(const std::vector<double>& defect, const Grid& g,
                                const Params& p) {
    const auto Lue = sample_L_image(analytic_even_carrier(), g, p);
    return -grid_moment(defect, g, Mode::cos) / grid_moment(Lue, g, Mode::cos);
}

TwoTransSolution solve_two_transition(int x0, const Params& p, const Grid& g,
                                      const Stage1Solution& s1, const SolverConfig& cfg) {
    cfg.validate();
    validate_x0(x0, g);
    const int n = g.n();
    auto vp = build_two_front_profile(x0, s1, g);

    // profile defect L v_p - a sgn(v_p), gridded
    auto Lvp = sample_L_image(vp.analytic, g, p);
    {
        auto Lz = apply_L_samples(vp.values, g, p);
        for (int i = 0; i < n; ++i) Lvp[i] += Lz[i];
    }
    std::vector<double> vp_tot(n), sgn_vp(n), defect(n);
    for (int i = 0; i < n; ++i) {
        vp_tot[i] = vp.total(i);
        sgn_vp[i] = (std::abs(vp_tot[i]) < 1e-13) ? 0.0 : sgn(vp_tot[i]);
        defect[i] = Lvp[i] - p.alpha() * sgn_vp[i];
    }
    // v_p vanishes exactly at +-x0 on the grid
    const int ip = g.index_of(static_cast<double>(x0));
    const int im = g.index_of(static_cast<double>(-x0));
    if (std::abs(vp_tot[ip]) > 1e-12 || std::abs(vp_tot[im]) > 1e-12)
        throw SignConditionFailed("two-front profile does not vanish at +-x0");

    const double wnorm = weighted_norm(
        CompositeField::gridded(g, defect, Parity::even), 1.0, cfg.tail_tol);

    const double be = even_carrier_coefficient(defect, g, p);
    const auto Lue = sample_L_image(analytic_even_carrier(), g, p);
    std::vector<double> q(n);
    for (int i = 0; i < n; ++i) q[i] = be * Lue[i] + defect[i];
    const double mom_cos = grid_moment(q, g, Mode::cos);
    const double mom_sin = grid_moment(q, g, Mode::sin);
    if (std::abs(mom_cos) > moment_tol || std::abs(mom_sin) > moment_tol)
        throw MomentViolated("two-transition right-hand side has nonzero kernel moments");

    auto inv = invert_L(CompositeField::gridded(g, std::move(q), Parity::even), p,
                        Parity::even, cfg.tail_tol);
    const auto& rt = inv.corrector.values;

    const double ck = std::cos(p.k0() * x0); // +-1 for even x0
    const double gt = (rt[ip] - be * even_carrier(x0)) / ck;

    std::vector<double> u(n), sgn_u(n);
    for (int i = 0; i < n; ++i) {
        const double x = g.x(i);
        u[i] = vp_tot[i] + be * even_carrier(x) + gt * std::cos(p.k0() * x) - rt[i];
        sgn_u[i] = (std::abs(u[i]) < 1e-12) ? 0.0 : sgn(u[i]);
    }
    if (std::abs(u[ip]) > 1e-12 || std::abs(u[im]) > 1e-12)
        throw SignConditionFailed("two-transition wave does not vanish at +-x0");
    if (sgn_u != sgn_vp)
        throw SignConditionFailed("two-transition sign condition failed (x0 too small?)");

    // fresh residual with the sgn force
    auto Lrt = apply_L_samples(rt, g, p);
    std::vector<double> res(n);
    for (int i = 0; i < n; ++i)
        res[i] = Lvp[i] + be * Lue[i] - Lrt[i] - p.alpha() * sgn_u[i];
    const double residual = l2_norm(res, g);

    int changes = 0;
    double prev = 0.0;
    for (int i = 0; i < n; ++i) {
        if (sgn_u[i] == 0.0) continue;
        if (prev != 0.0 && sgn_u[i] != prev) ++changes;
        prev = sgn_u[i];
    }

    TwoTransSolution out;
    out.params = p;
    out.grid = g;
    out.x0 = x0;
    out.beta_e = be;
    out.gamma_tilde = gt;
    out.corrector = inv.corrector;
    out.r_h2 = h2_norm(rt, g);
    out.residual = residual;
    out.weighted_defect_norm = wnorm;
    out.sign_changes = changes;

    AnalyticFn analytic = vp.analytic + analytic_even_carrier().scaled(be) +
                          analytic_kernel_cos(gt);
    std::vector<double> gridpart(n);
    for (int i = 0; i < n; ++i) gridpart[i] = vp.grid_value(i) - rt[i];
    out.u = CompositeField(g, std::move(analytic), std::move(gridpart), Parity::even);

    const double even_defect = parity_defect(u, g, Parity::even);
    out.diagnostics["x0"] = x0;
    out.diagnostics["beta_e"] = be;
    out.diagnostics["gamma_tilde"] = gt;
    out.diagnostics["residual"] = residual;
    out.diagnostics["weighted_defect_norm"] = wnorm;
    out.diagnostics["r_h2"] = out.r_h2;
    out.diagnostics["kernel_amplitude"] = inv.kernel_amplitude;
    out.diagnostics["evenness_defect"] = even_defect;
    out.diagnostics["sign_changes"] = changes;
    out.diagnostics["profile_slope_at_x0"] = vp.analytic.deriv(x0);
    out.diagnostics["bound_ratio"] = inv.bound_ratio;
    return out;
}

} // namespace fkwave
