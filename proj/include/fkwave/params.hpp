#pragma once

#include <utility>

#include "fkwave/errors.hpp"
#include "fkwave/grid.hpp"

namespace fkwave {

// Model constants. alpha is always derived from c so that +-k0 are exact
// roots of the dispersion function; it is never accepted independently.
class Params {
public:
    static constexpr double c2_min = 0.83;
    static constexpr double c2_max = 1.0;
    static constexpr double gamma_cap = 0.05;

    explicit Params(double c_squared, double epsilon = 0.01, double gamma = 0.0,
                    double rho = 0.5)
        : c2_(c_squared), eps_(epsilon), gamma_(gamma), rho_(rho) {
        if (!(c2_ >= c2_min && c2_ <= c2_max))
            throw InvalidParams("c^2 must lie in [0.83, 1]");
        if (!(eps_ > 0.0)) throw NonPositiveEpsilon("epsilon must be positive");
        if (!(rho_ > 0.0)) throw InvalidParams("rho must be positive");
        if (!(std::abs(gamma_) <= gamma_cap))
            throw InvalidParams("|gamma| exceeds the configured cap");
        alpha_ = c2_ * kWavenumber * kWavenumber - 2.0;
    }

    double c2() const noexcept { return c2_; }
    double c() const noexcept { return std::sqrt(c2_); }
    double alpha() const noexcept { return alpha_; }
    double k0() const noexcept { return kWavenumber; }
    double epsilon() const noexcept { return eps_; }
    double gamma() const noexcept { return gamma_; }
    double rho() const noexcept { return rho_; }

    Params with_epsilon(double eps) const { return Params(c2_, eps, gamma_, rho_); }
    Params with_gamma(double gm) const { return Params(c2_, eps_, gm, rho_); }
    Params with_rho(double rho) const { return Params(c2_, eps_, gamma_, rho); }

private:
    double c2_;
    double eps_;
    double gamma_;
    double rho_;
    double alpha_;
};

struct DispersionValue {
    double value;      // D(zeta)
    double derivative; // D'(zeta)
};

// D(zeta) = -c^2 zeta^2 + 4 sin^2(zeta/2) + alpha and its derivative.
DispersionValue dispersion_eval(double zeta, const Params& p);

struct KernelRoots {
    double positive; // +k0
    double negative; // -k0
    bool certified;  // dense sign-change scan found no other positive root
};

// Returns +-k0 and certifies by a 10^4-point sign-change scan that no other
// positive root exists on the scanned band. Throws CertificationFailed if an
// extra sign change shows up.
KernelRoots kernel_roots(const Params& p);

struct InversionConstants {
    double c1;           // from the inverse-bound proof
    double bound_factor; // C1 + ((4+alpha) C1 + 1)/c^2
};

// Constants of the H^2 inversion bound, computed at the given c.
// D(k0/2), D(3k0/2), D'(k0/2) must be nonzero; note D'(k0/2) passes through
// zero near c^2 ~ 0.9003, where c1 becomes very large (reported, not fatal).
InversionConstants inversion_constants(const Params& p);

} // namespace fkwave
