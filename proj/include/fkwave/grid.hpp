#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>

#include "fkwave/errors.hpp"

namespace fkwave {

inline constexpr double kWavenumber = std::numbers::pi / 2.0; // k0 of the kernel modes

// Uniform periodic sampling of [-X, X). h = 1/m divides the unit lattice
// shifts exactly, and X even puts +-k0 on exact grid wavenumbers.
struct Grid {
    int half_length = 64;    // X, lattice units
    int points_per_unit = 16; // m

    Grid() = default;
    Grid(int X, int m) : half_length(X), points_per_unit(m) {
        if (X <= 0 || m <= 0) throw InvalidParams("grid: X and m must be positive");
        if (X % 2 != 0) throw InvalidParams("grid: X must be even so +-k0 are grid wavenumbers");
        if (2 * static_cast<long>(X) * m % 2 != 0) throw InvalidParams("grid: n must be even");
    }

    int n() const noexcept { return 2 * half_length * points_per_unit; }
    double h() const noexcept { return 1.0 / points_per_unit; }
    double x(int i) const noexcept { return -half_length + h() * i; }
    // wavenumber of FFT bin j in [0, n): k_j = pi j / X (negative branch for j > n/2)
    double wavenumber(int j) const noexcept {
        const int nn = n();
        const int jj = (j <= nn / 2) ? j : j - nn;
        return std::numbers::pi * jj / half_length;
    }
    // bin index of the +k0 mode
    int mode_bin() const noexcept { return half_length / 2; }
    // index of x = 0
    int origin_index() const noexcept { return half_length * points_per_unit; }
    // grid index of integer-aligned coordinate x0 (throws if off-grid)
    int index_of(double x0) const {
        const double t = (x0 + half_length) * points_per_unit;
        const long i = std::lround(t);
        if (std::abs(t - i) > 1e-9 || i < 0 || i >= n())
            throw InvalidParams("grid: coordinate not on grid");
        return static_cast<int>(i);
    }

    bool operator==(const Grid&) const = default;
};

} // namespace fkwave
