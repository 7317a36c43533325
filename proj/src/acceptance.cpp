#include "fkwave/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <random>

#include "fkwave/lattice.hpp"
#include "fkwave/linsolve.hpp"
#include "fkwave/twotrans.hpp"
#include "fkwave/waves.hpp"

namespace fkwave::accept {

namespace {

unsigned long g_seed = 20240819;

constexpr int solver_m = 256; // resolves the mollification window and the residual floor

Grid solver_grid() { return Grid(64, solver_m); }

// --- criterion 1: dispersion identities -----------------------------------
CriterionResult crit_dispersion() {
    CriterionResult res{"dispersion-identities", true, 0, {}};
    Json rows = Json::array();
    for (double c2 : {0.83, 0.9, 1.0}) {
        Params p(c2);
        const double dp = std::abs(dispersion_eval(p.k0(), p).value);
        const double dm = std::abs(dispersion_eval(-p.k0(), p).value);
        bool certified = false;
        try {
            certified = kernel_roots(p).certified;
        } catch (const CertificationFailed&) {
        }
        const bool ok = dp <= 1e-12 && dm <= 1e-12 && certified;
        rows.push_back({{"c2", c2}, {"D_plus", dp}, {"D_minus", dm}, {"certified", certified}});
        res.passed = res.passed && ok;
    }
    const double alpha1 = Params(1.0).alpha();
    const double alpha_exact = std::numbers::pi * std::numbers::pi / 4.0 - 2.0;
    res.passed = res.passed && std::abs(alpha1 - alpha_exact) <= 1e-12;
    res.details["cases"] = rows;
    res.details["alpha_at_c1"] = alpha1;
    res.details["runtime_limit_s"] = 1.0;
    return res;
}

// --- criterion 2: orthogonality constants ----------------------------------
CriterionResult crit_orthogonality() {
    CriterionResult res{"orthogonality-constants", true, 0, {}};
    const Grid g(64, 16);
    Json rows = Json::array();
    for (double c2 : {0.83, 0.9, 1.0}) {
        Params p(c2);
        auto odd = CompositeField::analytic_only(g, analytic_odd_carrier(), Parity::odd);
        auto even = CompositeField::analytic_only(g, analytic_even_carrier(), Parity::even);
        auto Lodd = apply_L(odd, p);
        auto Leven = apply_L(even, p);
        const double m_ss = kernel_moment(Lodd, Mode::sin);
        const double m_ec = kernel_moment(Leven, Mode::cos);
        const double m_sc = kernel_moment(Lodd, Mode::cos);
        const double m_es = kernel_moment(Leven, Mode::sin);
        const double t_odd = 2.0 - 2.0 * p.c2() * p.k0();
        const double t_even = 2.0 * p.c2() * p.k0() - 2.0;
        const bool ok = std::abs(m_ss - t_odd) <= 1e-6 && std::abs(m_ec - t_even) <= 1e-6 &&
                        std::abs(m_sc) <= 1e-10 && std::abs(m_es) <= 1e-10;
        rows.push_back({{"c2", c2},
                        {"odd_sin", m_ss},
                        {"odd_sin_expected", t_odd},
                        {"even_cos", m_ec},
                        {"even_cos_expected", t_even},
                        {"odd_cos", m_sc},
                        {"even_sin", m_es}});
        res.passed = res.passed && ok;
    }
    res.details["cases"] = rows;
    res.details["runtime_limit_s"] = 5.0;
    return res;
}

// --- criterion 3: degenerate-force corrector bounds -------------------------
CriterionResult crit_stage1_bounds() {
    CriterionResult res{"stage1-corrector-bounds", true, 0, {}};
    const Grid g = solver_grid();
    SolverConfig cfg;
    const double scale = std::sqrt(std::numbers::pi / 2.0);
    Json rows = Json::array();
    const struct {
        double c2, bound_r, bound_rd;
    } cases[] = {{0.95, 0.257, 0.43}, {0.85, 0.339, 0.34}};
    for (const auto& cs : cases) {
        auto s1 = solve_stage1(Params(cs.c2), g, cfg);
        const double vr = scale * s1.sup_r, vd = scale * s1.sup_r_deriv;
        const bool ok = vr < cs.bound_r && vd < cs.bound_rd;
        rows.push_back({{"c2", cs.c2},
                        {"sup_r_scaled", vr},
                        {"bound_r", cs.bound_r},
                        {"sup_r_deriv_scaled", vd},
                        {"bound_r_deriv", cs.bound_rd},
                        {"residual", s1.residual}});
        res.passed = res.passed && ok;
    }
    res.details["cases"] = rows;
    res.details["runtime_limit_s"] = 60.0;
    return res;
}

std::vector<double> random_decaying_field(std::mt19937& rng, const Grid& g) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const int nbump = 2 + static_cast<int>(uni(rng) * 4);
    std::vector<double> f(g.n(), 0.0);
    for (int b = 0; b < nbump; ++b) {
        const double x0 = -8.0 + 16.0 * uni(rng);
        const double s0 = 0.5 + 2.5 * uni(rng);
        const double amp = -2.0 + 4.0 * uni(rng);
        const double om = 2.5 * uni(rng);
        const double ph = 2.0 * std::numbers::pi * uni(rng);
        for (int i = 0; i < g.n(); ++i) {
            const double t = (g.x(i) - x0) / s0;
            if (std::abs(t) > 26.0) continue;
            f[i] += amp * std::exp(-0.5 * t * t) * std::cos(om * (g.x(i) - x0) + ph);
        }
    }
    return f;
}

// --- criterion 4: inversion bound on random fields --------------------------
CriterionResult crit_inversion_bound() {
    CriterionResult res{"inversion-bound", true, 0, {}};
    const Grid g(64, 16);
    Params p(1.0);
    const auto ic = inversion_constants(p);
    res.details["bound_factor"] = ic.bound_factor;
    res.passed = std::abs(ic.bound_factor - 34.4) < 0.1;
    std::mt19937 rng(g_seed);
    double worst_ratio = 0.0, worst_roundtrip = 0.0;
    for (int pass = 0; pass < 2; ++pass) {
        const Parity par = pass == 0 ? Parity::odd : Parity::even;
        const Mode mode = pass == 0 ? Mode::sin : Mode::cos;
        for (int trial = 0; trial < 100; ++trial) {
            auto f = random_decaying_field(rng, g);
            symmetrize(f, g, par);
            auto proj = project_moment(CompositeField::gridded(g, std::move(f), par), mode);
            auto inv = invert_L(proj.field, p, par);
            worst_ratio = std::max(worst_ratio, inv.bound_ratio);
            // the round trip is periodic-exact; the wrap guard does not apply
            auto back = apply_L(inv.corrector, p, 1e30);
            std::vector<double> diff(g.n());
            for (int i = 0; i < g.n(); ++i) diff[i] = back.values[i] - proj.field.values[i];
            const double rel =
                l2_norm(diff, g) / std::max(1e-300, l2_norm(proj.field.values, g));
            worst_roundtrip = std::max(worst_roundtrip, rel);
        }
    }
    res.details["worst_ratio"] = worst_ratio;
    res.details["worst_roundtrip_rel"] = worst_roundtrip;
    res.details["runtime_limit_s"] = 60.0;
    res.passed = res.passed && worst_ratio <= ic.bound_factor && worst_roundtrip <= 1e-10;
    return res;
}

// --- criterion 5: mollified-force solve matrix ------------------------------
CriterionResult crit_stage2_matrix() {
    CriterionResult res{"stage2-existence", true, 0, {}};
    const Grid g = solver_grid();
    SolverConfig cfg;
    Json rows = Json::array();
    for (double c2 : {0.85, 0.9, 0.95}) {
        auto s1 = solve_stage1(Params(c2), g, cfg);
        for (double eps : {0.05, 0.02, 0.01}) {
            Json row{{"c2", c2}, {"eps", eps}};
            try {
                auto sol = solve_stage2(Params(c2, eps), g, cfg, s1);
                const bool ok = sol.residual <= 1e-8 && sol.r_h2 < sol.params.rho() &&
                                !sol.clamped && sol.sign_margin >= -1e-12;
                row["residual"] = sol.residual;
                row["r_h2"] = sol.r_h2;
                row["rho"] = sol.params.rho();
                row["clamped"] = sol.clamped;
                row["sign_margin"] = sol.sign_margin;
                row["beta"] = sol.beta;
                row["ok"] = ok;
                res.passed = res.passed && ok;
            } catch (const Error& e) {
                row["error"] = e.name();
                res.passed = false;
            }
            rows.push_back(row);
        }
    }
    res.details["cases"] = rows;
    res.details["runtime_limit_s"] = 300.0;
    return res;
}

// --- criterion 6: carrier-coefficient scaling -------------------------------
CriterionResult crit_beta_scaling() {
    CriterionResult res{"beta-scaling", true, 0, {}};
    const Grid g = solver_grid();
    SolverConfig cfg;
    auto s1 = solve_stage1(Params(0.9), g, cfg);
    Json rows = Json::array();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (double eps : {0.04, 0.02, 0.01, 0.005}) {
        auto sol = solve_stage2(Params(0.9, eps), g, cfg, s1);
        rows.push_back({{"eps", eps}, {"beta", sol.beta}});
        const double lx = std::log(eps), ly = std::log(std::abs(sol.beta));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    res.details["cases"] = rows;
    res.details["slope"] = slope;
    res.passed = slope >= 1.6 && slope <= 2.4;
    return res;
}

// --- criterion 7: fixed-point condition checks ------------------------------
CriterionResult crit_conditions() {
    CriterionResult res{"condition-checks", true, 0, {}};
    const Grid g = solver_grid();
    SolverConfig cfg;
    Json rows = Json::array();
    for (double c2 : {0.85, 0.9, 0.95}) {
        auto s1 = solve_stage1(Params(c2), g, cfg);
        for (double eps : {0.05, 0.02, 0.01}) {
            auto sol = solve_stage2(Params(c2, eps), g, cfg, s1);
            const auto& c = sol.conditions;
            rows.push_back({{"c2", c2},
                            {"eps", eps},
                            {"c1_value", c.c1_value},
                            {"c1_threshold", c.c1_threshold},
                            {"c1_ok", c.c1_ok},
                            {"c2p_lhs", c.c2p_sgn_term + c.c2p_perturb_term},
                            {"c2p_rhs", c.c2p_rhs},
                            {"c2p_ok", c.c2p_ok}});
            res.passed = res.passed && c.c1_ok && c.c2p_ok;
        }
    }
    res.details["cases"] = rows;
    res.details["note"] = "the sufficient-condition check (second half) compares a fixed-size "
                          "mollification term against an asymptotic threshold and is not "
                          "expected to hold at numerically accessible epsilon";
    return res;
}

// --- criterion 8: two-transition family -------------------------------------
CriterionResult crit_two_transition() {
    CriterionResult res{"two-transition", true, 0, {}};
    const Grid g = solver_grid();
    SolverConfig cfg;
    auto s1 = solve_stage1(Params(0.9), g, cfg);
    Json rows = Json::array();
    std::map<int, TwoTransSolution> sols;
    for (int x0 : {8, 12, 16, 20}) {
        auto sol = solve_two_transition(x0, Params(0.9), g, s1, cfg);
        const int ip = g.index_of(x0), im = g.index_of(-x0);
        const double ux0 = std::max(std::abs(sol.u.total(ip)), std::abs(sol.u.total(im)));
        const bool ok = ux0 <= 1e-12 && sol.sign_changes == 2 && sol.residual <= 1e-8;
        rows.push_back({{"x0", x0},
                        {"u_at_x0", ux0},
                        {"sign_changes", sol.sign_changes},
                        {"residual", sol.residual},
                        {"beta_e", sol.beta_e},
                        {"gamma_tilde", sol.gamma_tilde},
                        {"weighted_defect_norm", sol.weighted_defect_norm},
                        {"profile_slope_at_x0", sol.diagnostics["profile_slope_at_x0"]}});
        res.passed = res.passed && ok;
        sols.emplace(x0, std::move(sol));
    }
    const auto& a = sols.at(8);
    const auto& b = sols.at(20);
    const bool trend = std::abs(b.beta_e) < std::abs(a.beta_e) &&
                       std::abs(b.gamma_tilde) < std::abs(a.gamma_tilde) &&
                       b.weighted_defect_norm < a.weighted_defect_norm;
    res.details["cases"] = rows;
    res.details["trend_ok"] = trend;
    res.details["runtime_limit_s"] = 120.0;
    res.passed = res.passed && trend;
    return res;
}

// --- criterion 9: time-domain validation ------------------------------------
CriterionResult crit_lattice() {
    CriterionResult res{"time-domain-validation", true, 0, {}};
    const Grid g = solver_grid();
    SolverConfig cfg;
    Params p(0.9, 0.01);
    auto s1 = solve_stage1(p, g, cfg);
    auto sol = solve_stage2(p, g, cfg, s1);
    auto sim = simulate(sol.u, sol.params, 64, 20.0, 0.01, ChainForce::psi_eps);
    res.details["max_error"] = sim.max_error;
    res.passed = sim.max_error <= 1e-3;

    // linear kernel-mode convergence: halving dt reduces the error ~4x
    auto mode = CompositeField::analytic_only(g, analytic_kernel_sin(1e-3), Parity::odd);
    auto lin1 = simulate(mode, p, 64, 20.0, 0.01, ChainForce::linear);
    auto lin2 = simulate(mode, p, 64, 20.0, 0.005, ChainForce::linear);
    const double ratio = lin1.max_error / lin2.max_error;
    res.details["linear_error_dt1"] = lin1.max_error;
    res.details["linear_error_dt2"] = lin2.max_error;
    res.details["ratio"] = ratio;
    res.details["runtime_limit_s"] = 120.0;
    res.passed = res.passed && ratio >= 3.0 && ratio <= 5.0;
    return res;
}

const std::vector<std::pair<std::string, std::function<CriterionResult()>>>& registry() {
    static const std::vector<std::pair<std::string, std::function<CriterionResult()>>> reg = {
        {"dispersion-identities", crit_dispersion},
        {"orthogonality-constants", crit_orthogonality},
        {"stage1-corrector-bounds", crit_stage1_bounds},
        {"inversion-bound", crit_inversion_bound},
        {"stage2-existence", crit_stage2_matrix},
        {"beta-scaling", crit_beta_scaling},
        {"condition-checks", crit_conditions},
        {"two-transition", crit_two_transition},
        {"time-domain-validation", crit_lattice},
    };
    return reg;
}

} // namespace

void set_seed(unsigned long seed) { g_seed = seed; }

std::vector<std::string> criterion_names() {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
}

CriterionResult run_criterion(const std::string& name) {
    for (const auto& [nm, fn] : registry()) {
        if (nm != name) continue;
        const auto t0 = std::chrono::steady_clock::now();
        CriterionResult res;
        try {
            res = fn();
        } catch (const Error& e) {
            res.name = nm;
            res.passed = false;
            res.details["error"] = e.name();
            res.details["what"] = e.what();
        }
        res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (res.details.contains("runtime_limit_s"))
            res.passed = res.passed && res.seconds < res.details["runtime_limit_s"].get<double>();
        return res;
    }
    throw InvalidParams("unknown acceptance criterion: " + name);
}

std::vector<CriterionResult> run_all() {
    std::vector<CriterionResult> out;
    for (const auto& nm : criterion_names()) out.push_back(run_criterion(nm));
    return out;
}

} // namespace fkwave::accept
