#pragma once

#include "fkwave/analytic.hpp"
#include "fkwave/params.hpp"

namespace fkwave {

// Amplitudes and decay rate of the explicit front profile. A + B = 1 is an
// algebraic identity of the coupling.
struct ProfileSpec {
    double amp_exp;    // A, weight of the exponential piece
    double amp_cos;    // B, weight of the cosine piece
    double decay_rate; // exponential rate (distinct from the ansatz coefficient beta)

    static ProfileSpec from(const Params& p);
};

// Explicit approximate front: sgn(x) [A(1 - e^{-decay|x|}) + B(1 - cos(k0 x))].
double front_profile(double x, const Params& p);
double front_profile_deriv(double x, const Params& p);  // even
double front_profile_second(double x, const Params& p); // odd; 0 at x = 0 (jump midpoint)

// Odd carrier: sgn(x) cos(k0 x) outside [-1,1], C^2-matched odd quintic inside.
double odd_carrier(double x);
double odd_carrier_deriv(double x);
double odd_carrier_second(double x);

// Even carrier: sgn(x) sin(k0 x) outside [-1,1], C^2-matched even quartic inside.
double even_carrier(double x);
double even_carrier_deriv(double x);
double even_carrier_second(double x);

// Odd non-decreasing step: -1/2 for x <= -1, +1/2 for x >= 1, quintic smoothstep between.
double blend_step(double x);
double blend_step_deriv(double x);
double blend_step_second(double x);

// Mollified sign force: sin(pi s / 2 eps) inside |s| < eps, sgn(s) outside.
double mollified_sign(double s, double eps);
double mollified_sign_deriv(double s, double eps); // (pi/2eps) cos(.) inside, 0 outside

// Localized force derivative in u: mollified inside |x| <= 1, sgn(x) outside.
double localized_force(double u, double x, double eps);
double localized_force_deriv(double u, double x, double eps); // second u-derivative

struct Saturation {
    double value;
    double derivative;
    bool clamped;
};

// C^1 odd saturation: identity on |b| <= b_max, cubic blend to the
// asymptote +-(4/3) b_max on [b_max, 2 b_max], constant after. |xi'| <= 1.
Saturation saturate(double b, double b_max);

// Analytic-field factories.
AnalyticFn analytic_front(const Params& p);
AnalyticFn analytic_odd_carrier();
AnalyticFn analytic_even_carrier();
AnalyticFn analytic_kernel_sin(double amplitude);
AnalyticFn analytic_kernel_cos(double amplitude);
// Two-front blend: (1/2 + blend)(front - corr)(x - x0) - (1/2 - blend)(front - corr)(x + x0),
// analytic translates only (gridded correctors are blended separately).
AnalyticFn analytic_two_front(const Params& p, int x0);

} // namespace fkwave
