#pragma once

#include <functional>
#include <utility>

#include "fkwave/errors.hpp"

namespace fkwave {

inline double sgn(double x) noexcept { return (x > 0.0) - (x < 0.0); }

// Closed-form part of a composite field: exact values at any real x,
// including the unit-shifted arguments used by the discrete Laplacian.
// First/second derivatives are present when the construction provides them
// (operator images are value-only).
class AnalyticFn {
public:
    using Fn = std::function<double(double)>;

    AnalyticFn() = default;
    AnalyticFn(Fn value, Fn deriv, Fn second)
        : value_(std::move(value)), deriv_(std::move(deriv)), second_(std::move(second)) {}
    static AnalyticFn value_only(Fn value) { return AnalyticFn(std::move(value), nullptr, nullptr); }

    bool is_zero() const noexcept { return !value_; }
    bool has_derivatives() const noexcept { return static_cast<bool>(second_); }

    double operator()(double x) const { return value_ ? value_(x) : 0.0; }
    double deriv(double x) const {
        if (is_zero()) return 0.0;
        if (!deriv_) throw NonDecayingInput("analytic part has no derivative data");
        return deriv_(x);
    }
    double second(double x) const {
        if (is_zero()) return 0.0;
        if (!second_) throw NonDecayingInput("analytic part has no second-derivative data");
        return second_(x);
    }

    AnalyticFn operator+(const AnalyticFn& o) const {
        if (is_zero()) return o;
        if (o.is_zero()) return *this;
        Fn v = [a = *this, b = o](double x) { return a(x) + b(x); };
        Fn d, s;
        if (deriv_ && o.deriv_) d = [a = *this, b = o](double x) { return a.deriv(x) + b.deriv(x); };
        if (second_ && o.second_) s = [a = *this, b = o](double x) { return a.second(x) + b.second(x); };
        return AnalyticFn(std::move(v), std::move(d), std::move(s));
    }
    AnalyticFn scaled(double c) const {
        if (is_zero() || c == 0.0) return AnalyticFn();
        Fn v = [a = *this, c](double x) { return c * a(x); };
        Fn d, s;
        if (deriv_) d = [a = *this, c](double x) { return c * a.deriv(x); };
        if (second_) s = [a = *this, c](double x) { return c * a.second(x); };
        return AnalyticFn(std::move(v), std::move(d), std::move(s));
    }
    AnalyticFn translated(double x0) const {
        if (is_zero()) return AnalyticFn();
        Fn v = [a = *this, x0](double x) { return a(x - x0); };
        Fn d, s;
        if (deriv_) d = [a = *this, x0](double x) { return a.deriv(x - x0); };
        if (second_) s = [a = *this, x0](double x) { return a.second(x - x0); };
        return AnalyticFn(std::move(v), std::move(d), std::move(s));
    }

private:
    Fn value_;
    Fn deriv_;
    Fn second_;
};

} // namespace fkwave
