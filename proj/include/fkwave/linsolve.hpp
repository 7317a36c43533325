#pragma once

#include "fkwave/field.hpp"
#include "fkwave/params.hpp"

namespace fkwave {

constexpr double moment_tol = 1e-10;

// Samples analytic + grid into a purely gridded field (analytic part must be
// negligible at the boundary).
CompositeField fold_to_grid(const CompositeField& f, double tail_tol = default_tail_tol);

struct ProjectedField {
    CompositeField field;
    double defect; // removed kernel moment
};

// Subtracts mu * mode(k0 x) * sech(x/8) so the discrete kernel moment vanishes.
ProjectedField project_moment(const CompositeField& q, Mode mode,
                              double tail_tol = default_tail_tol);

struct InvertResult {
    CompositeField corrector;  // decaying representative, declared parity
    double kernel_amplitude;   // removed exactly-representable +-k0 mode content
    double kernel_amplitude_cos; // only for the general (mixed-parity) path
    double deflation_residue;  // discrete kernel moment of the input (should be ~0)
    double bound_ratio;        // ||r||_H2 / ||(1+x^2) Q||
};

// Solve L r = Q by spectral division with exact deflation of the +-k0 bins.
// Q must be gridded and decaying with the matching kernel moment below
// moment_tol (sin for odd, cos for even). The returned corrector is the
// decaying (H^2) representative: the kernel-mode content left by zero-filling
// the deflated bins is measured on the far tail and removed; its amplitude is
// recorded.
InvertResult invert_L(const CompositeField& q, const Params& p, Parity parity,
                      double tail_tol = default_tail_tol);

// Mixed-parity inversion: split odd/even, invert each, sum. Both kernel
// moments must vanish.
InvertResult invert_L_general(const CompositeField& q, const Params& p,
                              double tail_tol = default_tail_tol);

// Internal building block shared by the solvers: raw-sample inversion with
// deflation + tail fit. No moment or parity checks.
struct RawInvert {
    std::vector<double> values;
    double kernel_amplitude_sin;
    double kernel_amplitude_cos;
    std::complex<double> removed_bin;
};
RawInvert invert_raw(const std::vector<double>& q, const Grid& g, const Params& p,
                     bool fit_sin, bool fit_cos);

} // namespace fkwave
