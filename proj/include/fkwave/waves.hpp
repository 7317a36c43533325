#pragma once

#include "json.hpp"

#include "fkwave/field.hpp"
#include "fkwave/linsolve.hpp"
#include "fkwave/params.hpp"
#include "fkwave/profiles.hpp"

namespace fkwave {

struct SolverConfig {
    double outer_tol = 1e-10;     // H^2 increment stopping threshold
    double residual_tol = 1e-8;   // full-equation L^2 threshold
    int max_outer = 200;
    double omega = 1.0;           // Picard damping, (0, 1]
    double beta_inner_tol = 1e-12;
    int beta_inner_max = 100;
    double beta_max = 0.1;        // saturation threshold for the carrier coefficient
    double tail_tol = default_tail_tol;
    double rho_override = 0.0;    // ball radius; 0 means the default 0.9 * rho0

    void validate() const {
        if (!(outer_tol > 0 && residual_tol > 0 && beta_inner_tol > 0 && beta_max > 0 &&
              tail_tol > 0 && max_outer > 0 && beta_inner_max > 0))
            throw InvalidParams("solver config: all tolerances and caps must be positive");
        if (!(omega > 0.0 && omega <= 1.0)) throw InvalidParams("solver config: omega in (0,1]");
    }
};

// Degenerate-force (sgn) solution: u_p = front profile minus gridded corrector.
struct Stage1Solution {
    Params params = Params(1.0);
    Grid grid;
    CompositeField u_p;       // analytic front, grid part = -corrector
    CompositeField corrector; // r, odd gridded
    double rho0 = 0.0;        // sign-margin constant
    double x_margin = 0.0;    // split point of the margin condition
    double residual = 0.0;
    double defect = 0.0;            // projected kernel moment of the front defect
    double kernel_amplitude = 0.0;  // removed +-k0 content of the corrector
    double sup_r = 0.0, sup_r_deriv = 0.0;
    std::vector<double> sign_pattern;
    std::vector<double> Lu_p; // gridded samples of L u_p (cache for stage 2)
    nlohmann::ordered_json diagnostics;
};

struct ConditionReport {
    double c1_value = 0.0;     // max |C1 integral| over the beta sample
    double c1_threshold = 0.0; // 2 (c^2 k0 - 1)
    bool c1_ok = false;
    double c2p_sgn_term = 0.0;     // ||(1+x^2) a (sgn(u_p) - psi'(u_p))||
    double c2p_perturb_term = 0.0; // ||(1+x^2) a (dPsi(u_p) - dPsi(u))||
    double c2p_rhs = 0.0;
    bool c2p_ok = false;
    double c2_lhs = 0.0; // ||(1+x^2) Q|| at the converged state (informational)
    double c2_rhs = 0.0; // bound_factor^{-1} rho
    bool c2_ok = false;
};

struct WaveSolution {
    Params params = Params(1.0);
    Grid grid;
    CompositeField corrector; // odd gridded r
    double beta = 0.0;
    double gamma = 0.0;
    CompositeField u; // full assembly
    double residual = 0.0;
    double r_h2 = 0.0;
    double sign_margin = 0.0; // min(|u| - |u_p|/3)
    bool clamped = false;
    int outer_iterations = 0;
    ConditionReport conditions;
    nlohmann::ordered_json diagnostics;
};

// Stage 1: solve the degenerate equation with a sign-stable iteration around
// the projected front defect.
Stage1Solution solve_stage1(const Params& p, const Grid& g, const SolverConfig& cfg);

struct BetaResult {
    double beta;
    int iterations;
    double lipschitz; // worst successive-increment ratio (empirical contraction)
};

// Inner fixed point for the carrier coefficient at frozen corrector r.
// Discrete kernel moments throughout so the assembled right-hand side is
// exactly moment-free.
BetaResult solve_carrier_coefficient(const std::vector<double>& r, const Stage1Solution& s1,
                                     const Params& p, const SolverConfig& cfg,
                                     double beta_start = 0.0);

// Right-hand side Q = beta L u_odd + L u_p - a dPsi(u_p + xi(beta) u_odd + gamma sin - r).
// Asserts the discrete sin moment vanishes (construction of beta).
std::vector<double> assemble_rhs(const std::vector<double>& r, double beta,
                                 const Stage1Solution& s1, const Params& p,
                                 const SolverConfig& cfg);

// Stage 2: damped Picard on r = L^{-1} Q(r) with the mollified force.
WaveSolution solve_stage2(const Params& p, const Grid& g, const SolverConfig& cfg,
                          const Stage1Solution& s1);

ConditionReport check_conditions(const WaveSolution& sol, const Stage1Solution& s1,
                                 const Params& p);

// ||(1+x^2) L u_odd||_{L^2}, exact (piecewise Gauss-Legendre on [-2, 2]).
double weighted_carrier_image_norm(const Params& p);

// Exact coefficient denominator 2 (c^2 k0 - 1).
double carrier_denominator_exact(const Params& p);

} // namespace fkwave
