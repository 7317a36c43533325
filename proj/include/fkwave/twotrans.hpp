#pragma once

#include "fkwave/waves.hpp"

namespace fkwave {

struct TwoTransSolution {
    Params params = Params(1.0);
    Grid grid;
    int x0 = 0;
    double beta_e = 0.0;
    double gamma_tilde = 0.0;
    CompositeField corrector; // even gridded r~
    CompositeField u;
    double residual = 0.0;
    double r_h2 = 0.0;
    double weighted_defect_norm = 0.0; // ||(1+x^2)(L v_p - a sgn v_p)||
    int sign_changes = 0;
    nlohmann::ordered_json diagnostics;
};

// Even two-front profile: blend of shifted single-front solutions, vanishing
// exactly at +-x0.
CompositeField build_two_front_profile(int x0, const Stage1Solution& s1, const Grid& g);

// Coefficient of the even carrier from the cos kernel moment of the profile
// defect (discrete moments, so the assembled right-hand side is moment-free).
double even_carrier_coefficient(const std::vector<double>& defect, const Grid& g,
                                const Params& p);

TwoTransSolution solve_two_transition(int x0, const Params& p, const Grid& g,
                                      const Stage1Solution& s1, const SolverConfig& cfg);

} // namespace fkwave
