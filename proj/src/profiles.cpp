#include "fkwave/profiles.hpp"

#include <cmath>

namespace fkwave {

ProfileSpec ProfileSpec::from(const Params& p) {
    const double k0 = p.k0();
    const double b2 = (p.alpha() / p.c2()) * k0 / (2.0 - k0);
    const double denom = p.c2() * (b2 + k0 * k0);
    return {(p.c2() * k0 * k0 - p.alpha()) / denom, (p.alpha() + b2 * p.c2()) / denom,
            std::sqrt(b2)};
}

double front_profile(double x, const Params& p) {
    const auto s = ProfileSpec::from(p);
    const double ax = std::abs(x);
    return sgn(x) * (s.amp_exp * (1.0 - std::exp(-s.decay_rate * ax)) +
                     s.amp_cos * (1.0 - std::cos(p.k0() * ax)));
}

double front_profile_deriv(double x, const Params& p) {
    const auto s = ProfileSpec::from(p);
    const double ax = std::abs(x);
    return s.amp_exp * s.decay_rate * std::exp(-s.decay_rate * ax) +
           s.amp_cos * p.k0() * std::sin(p.k0() * ax);
}

double front_profile_second(double x, const Params& p) {
    const auto s = ProfileSpec::from(p);
    const double ax = std::abs(x);
    return sgn(x) * (-s.amp_exp * s.decay_rate * s.decay_rate * std::exp(-s.decay_rate * ax) +
                     s.amp_cos * p.k0() * p.k0() * std::cos(p.k0() * ax));
}

namespace {
constexpr double k0 = kWavenumber;
}

double odd_carrier(double x) {
    if (std::abs(x) < 1.0) return (k0 / 8.0) * (7.0 * x - 10.0 * x * x * x + 3.0 * std::pow(x, 5));
    return sgn(x) * std::cos(k0 * x);
}
double odd_carrier_deriv(double x) {
    if (std::abs(x) < 1.0) return (k0 / 8.0) * (7.0 - 30.0 * x * x + 15.0 * std::pow(x, 4));
    return -k0 * std::sin(k0 * std::abs(x));
}
double odd_carrier_second(double x) {
    if (std::abs(x) < 1.0) return (k0 / 8.0) * (-60.0 * x + 60.0 * x * x * x);
    return -k0 * k0 * sgn(x) * std::cos(k0 * x);
}

double even_carrier(double x) {
    if (std::abs(x) < 1.0)
        return 1.0 - k0 * k0 / 8.0 + (k0 * k0 / 4.0) * x * x - (k0 * k0 / 8.0) * std::pow(x, 4);
    return sgn(x) * std::sin(k0 * x);
}
double even_carrier_deriv(double x) {
    if (std::abs(x) < 1.0) return (k0 * k0 / 2.0) * x - (k0 * k0 / 2.0) * x * x * x;
    return sgn(x) * k0 * std::cos(k0 * x);
}
double even_carrier_second(double x) {
    if (std::abs(x) < 1.0) return k0 * k0 / 2.0 - (3.0 * k0 * k0 / 2.0) * x * x;
    return -k0 * k0 * sgn(x) * std::sin(k0 * x);
}

namespace {
double smoothstep5(double t) { return ((6.0 * t - 15.0) * t + 10.0) * t * t * t; }
double smoothstep5_d(double t) { return ((30.0 * t - 60.0) * t + 30.0) * t * t; }
double smoothstep5_dd(double t) { return ((120.0 * t - 180.0) * t + 60.0) * t; }
}

double blend_step(double x) {
    if (x <= -1.0) return -0.5;
    if (x >= 1.0) return 0.5;
    return smoothstep5((x + 1.0) / 2.0) - 0.5;
}
double blend_step_deriv(double x) {
    if (x <= -1.0 || x >= 1.0) return 0.0;
    return 0.5 * smoothstep5_d((x + 1.0) / 2.0);
}
double blend_step_second(double x) {
    if (x <= -1.0 || x >= 1.0) return 0.0;
    return 0.25 * smoothstep5_dd((x + 1.0) / 2.0);
}

double mollified_sign(double s, double eps) {
    if (!(eps > 0.0)) throw NonPositiveEpsilon("mollified_sign: eps must be positive");
    if (std::abs(s) < eps) return std::sin(std::numbers::pi * s / (2.0 * eps));
    return sgn(s);
}
double mollified_sign_deriv(double s, double eps) {
    if (!(eps > 0.0)) throw NonPositiveEpsilon("mollified_sign_deriv: eps must be positive");
    if (std::abs(s) < eps)
        return (std::numbers::pi / (2.0 * eps)) * std::cos(std::numbers::pi * s / (2.0 * eps));
    return 0.0;
}

double localized_force(double u, double x, double eps) {
    if (std::abs(x) <= 1.0) return mollified_sign(u, eps);
    return sgn(x);
}
double localized_force_deriv(double u, double x, double eps) {
    if (std::abs(x) <= 1.0) return mollified_sign_deriv(u, eps);
    return 0.0;
}

Saturation saturate(double b, double b_max) {
    const double ab = std::abs(b);
    if (ab <= b_max) return {b, 1.0, false};
    const double s = sgn(b);
    const double t = (ab - b_max) / b_max;
    if (t >= 1.0) return {s * (4.0 / 3.0) * b_max, 0.0, true};
    const double v = b_max * (1.0 + t - t * t + t * t * t / 3.0);
    const double d = (1.0 - t) * (1.0 - t);
    return {s * v, d, true};
}

AnalyticFn analytic_front(const Params& p) {
    return AnalyticFn([p](double x) { return front_profile(x, p); },
                      [p](double x) { return front_profile_deriv(x, p); },
                      [p](double x) { return front_profile_second(x, p); });
}
AnalyticFn analytic_odd_carrier() {
    return AnalyticFn([](double x) { return odd_carrier(x); },
                      [](double x) { return odd_carrier_deriv(x); },
                      [](double x) { return odd_carrier_second(x); });
}
AnalyticFn analytic_even_carrier() {
    return AnalyticFn([](double x) { return even_carrier(x); },
                      [](double x) { return even_carrier_deriv(x); },
                      [](double x) { return even_carrier_second(x); });
}
AnalyticFn analytic_kernel_sin(double a) {
    if (a == 0.0) return AnalyticFn();
    return AnalyticFn([a](double x) { return a * std::sin(k0 * x); },
                      [a](double x) { return a * k0 * std::cos(k0 * x); },
                      [a](double x) { return -a * k0 * k0 * std::sin(k0 * x); });
}
AnalyticFn analytic_kernel_cos(double a) {
    if (a == 0.0) return AnalyticFn();
    return AnalyticFn([a](double x) { return a * std::cos(k0 * x); },
                      [a](double x) { return -a * k0 * std::sin(k0 * x); },
                      [a](double x) { return -a * k0 * k0 * std::cos(k0 * x); });
}

AnalyticFn analytic_two_front(const Params& p, int x0) {
    const double s0 = static_cast<double>(x0);
    auto v = [p, s0](double x) {
        const double w = blend_step(x);
        return (0.5 + w) * front_profile(x - s0, p) + (w - 0.5) * front_profile(x + s0, p);
    };
    auto d = [p, s0](double x) {
        const double w = blend_step(x), wd = blend_step_deriv(x);
        return wd * (front_profile(x - s0, p) + front_profile(x + s0, p)) +
               (0.5 + w) * front_profile_deriv(x - s0, p) +
               (w - 0.5) * front_profile_deriv(x + s0, p);
    };
    auto dd = [p, s0](double x) {
        const double w = blend_step(x), wd = blend_step_deriv(x), wdd = blend_step_second(x);
        return wdd * (front_profile(x - s0, p) + front_profile(x + s0, p)) +
               2.0 * wd * (front_profile_deriv(x - s0, p) + front_profile_deriv(x + s0, p)) +
               (0.5 + w) * front_profile_second(x - s0, p) +
               (w - 0.5) * front_profile_second(x + s0, p);
    };
    return AnalyticFn(v, d, dd);
}

} // namespace fkwave
