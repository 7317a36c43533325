#pragma once

#include <complex>
#include <string>
#include <vector>

#include "fkwave/analytic.hpp"
#include "fkwave/fft.hpp"
#include "fkwave/grid.hpp"
#include "fkwave/params.hpp"

namespace fkwave {

enum class Parity { odd, even, none };
enum class Mode { sin, cos };

constexpr double default_tail_tol = 1e-9;

// Function on the truncated line, split into a closed-form analytic part
// (may be non-decaying; never touches the periodic wrap) and a decaying
// gridded part.
struct CompositeField {
    Grid grid;
    AnalyticFn analytic;
    std::vector<double> values; // size n, or empty when purely analytic
    Parity parity = Parity::none;

    CompositeField() = default;
    CompositeField(Grid g, AnalyticFn a, std::vector<double> v, Parity par = Parity::none)
        : grid(g), analytic(std::move(a)), values(std::move(v)), parity(par) {
        if (!values.empty() && static_cast<int>(values.size()) != grid.n())
            throw InvalidParams("composite field: grid part has wrong length");
    }
    static CompositeField analytic_only(Grid g, AnalyticFn a, Parity par = Parity::none) {
        return CompositeField(g, std::move(a), {}, par);
    }
    static CompositeField gridded(Grid g, std::vector<double> v, Parity par = Parity::none) {
        return CompositeField(g, AnalyticFn(), std::move(v), par);
    }

    bool has_grid_part() const noexcept { return !values.empty(); }
    double grid_value(int i) const noexcept { return values.empty() ? 0.0 : values[i]; }
    double total(int i) const { return analytic(grid.x(i)) + grid_value(i); }
    std::vector<double> sample_total() const;

    // Evaluation anywhere on the line: analytic part exact, grid part by
    // local polynomial interpolation, zero beyond the tail-checked domain.
    double operator()(double x) const;
    double eval_deriv(double x, const std::vector<double>& grid_deriv) const;
};

// Fourier data of the gridded part (integral convention: h/sqrt(2pi) scaling),
// with the removed +-k0 coefficient recorded when deflation was applied.
struct SpectralField {
    Grid grid;
    std::vector<std::complex<double>> coefficients; // bins 0..n/2
    std::complex<double> removed_mode{0.0, 0.0};
    bool deflated = false;
};

SpectralField analyze(const CompositeField& f);

// max |grid part| over |x| > X - 4
double tail_magnitude(const CompositeField& f);
void require_tail(const CompositeField& f, double tol = default_tail_tol);

// L f = c^2 f'' - Delta_D f + alpha f. Analytic part in closed form
// (value-only image), grid part spectrally with exact unit index shifts.
CompositeField apply_L(const CompositeField& f, const Params& p,
                       double tail_tol = default_tail_tol);

// Integral of f(x) mode(k0 x): piecewise Gauss-Legendre (split at integer
// seams) for the analytic part, trapezoid on the periodic grid for the
// gridded part.
double kernel_moment(const CompositeField& f, Mode mode,
                     double tail_tol = default_tail_tol);

// Trapezoid moment of raw grid samples against a kernel mode.
double grid_moment(const std::vector<double>& v, const Grid& g, Mode mode);

// ||(1 + k^2) f_hat||_{L^2}; grid-only fields.
double h2_norm(const CompositeField& f);
double h2_norm(const std::vector<double>& v, const Grid& g);

// power 1: discrete L^2 of (1+x^2) f; power 3/2: sup of (1+x^2)^{3/2} |f|.
double weighted_norm(const CompositeField& f, double power,
                     double tail_tol = default_tail_tol);

struct SupNorms {
    double sup;
    double sup_deriv;
};
SupNorms sup_norms(const CompositeField& f);

double l2_norm(const std::vector<double>& v, const Grid& g);

// parity bookkeeping on raw samples
double parity_defect(const std::vector<double>& v, const Grid& g, Parity par);
void symmetrize(std::vector<double>& v, const Grid& g, Parity par);

// CSV (x, analytic, grid, total; 17 significant digits) + JSON sidecar with
// grid metadata and parity.
void save_field_csv(const CompositeField& f, const std::string& csv_path,
                    const std::string& sidecar_path);

} // namespace fkwave
