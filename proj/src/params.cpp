#include "fkwave/params.hpp"

#include <cmath>

namespace fkwave {

DispersionValue dispersion_eval(double zeta, const Params& p) {
    const double s = std::sin(zeta / 2.0);
    return {-p.c2() * zeta * zeta + 4.0 * s * s + p.alpha(),
            -2.0 * p.c2() * zeta + 2.0 * std::sin(zeta)};
}

KernelRoots kernel_roots(const Params& p) {
    const double k0 = p.k0();
    const double lo = k0 / 4.0, hi = 3.0 * std::numbers::pi / 2.0;
    const int samples = 10000;
    int changes = 0;
    double prev = dispersion_eval(lo, p).value;
    for (int i = 1; i <= samples; ++i) {
        const double z = lo + (hi - lo) * i / samples;
        const double cur = dispersion_eval(z, p).value;
        if (prev * cur < 0.0) ++changes;
        if (cur != 0.0) prev = cur; // a sample landing on the root joins the crossing
    }
    if (changes != 1)
        throw CertificationFailed("dispersion has extra sign changes on the scan band");
    return {k0, -k0, true};
}

InversionConstants inversion_constants(const Params& p) {
    const double k0 = p.k0();
    const double d_half = dispersion_eval(k0 / 2.0, p).value;
    const double d_three_half = dispersion_eval(3.0 * k0 / 2.0, p).value;
    const double dp_half = dispersion_eval(k0 / 2.0, p).derivative;
    if (std::abs(d_half) < 1e-12 || std::abs(d_three_half) < 1e-12 ||
        std::abs(dp_half) < 1e-12)
        throw DegenerateConstant("inversion constants degenerate at this c");
    const double c1_sq = std::max(1.0 / (d_half * d_half), 1.0 / (d_three_half * d_three_half)) +
                         (k0 / 2.0) / (dp_half * dp_half);
    const double c1 = std::sqrt(c1_sq);
    return {c1, c1 + ((4.0 + p.alpha()) * c1 + 1.0) / p.c2()};
}

} // namespace fkwave
