// SPDX-License-Identifier: Apache-2.0
//
// Exponential integral Ei(x) (principal value for x > 0) and the scaled
// pair (e^{-x} Ei(x), e^{x} Ei(-x)) that never forms e^{+-x} explicitly for
// large x.
//
// Regimes, x > 0:
//   Ei(x):   Taylor expansion about the positive zero x0 for |x - x0| < 0.06;
//            gamma + ln x + sum x^k/(k k!) up to x = 40;
//            e^x * (asymptotic sum k!/x^{k+1}) beyond.
//   E1(x):   -gamma - ln x - sum (-x)^k/(k k!) for x <= 1;
//            continued fraction (modified Lentz) for x > 1.
#pragma once

#include <cmath>
#include <limits>
#include <numbers>

#include "astkit/compensated.hpp"
#include "astkit/detail/wide.hpp"
#include "astkit/errors.hpp"

namespace astkit::specfun {

/// (e^{-x} Ei(x), e^{x} Ei(-x)) for x > 0.
struct ScaledEiPair {
    double eneg = 0.0;  // e^{-x} Ei(x)
    double epos = 0.0;  // e^{x} Ei(-x), strictly negative
    double x = 0.0;
};

namespace detail {

inline constexpr double kEulerGamma = 0.57721566490153286;
inline constexpr double kEiSeriesLimit = 40.0;

// positive zero of Ei as an unevaluated sum hi + lo
inline constexpr double kEiRootHi = 0.3725074107813666;
inline constexpr double kEiRootLo = 1.3140183414386028e-17;

/// Ei(x) near its zero: Ei(x) = e^{x0} int_0^d e^s/(x0+s) ds with d = x - x0.
inline double ei_near_root(double x)
{
    const double d = (x - kEiRootHi) - kEiRootLo;
    // e^s/(x0+s) = sum c_j s^j with x0 c_j + c_{j-1} = 1/j!
    double c = 1.0 / kEiRootHi;
    double inv_fact = 1.0;
    double dpow = d;
    CompensatedSum sum;
    sum.add(c * dpow);
    for (int j = 1; j < 60; ++j) {
        inv_fact /= j;
        c = (inv_fact - c) / kEiRootHi;
        dpow *= d;
        const double term = c * dpow / (j + 1);
        sum.add(term);
        if (std::fabs(term) < 1e-18 * std::fabs(sum.value()))
            break;
    }
    return std::exp(kEiRootHi) * (1.0 + kEiRootLo) * sum.value();
}

/// gamma + ln x + sum_{k>=1} x^k/(k k!) for 0 < x <= 40.
inline double ei_series(double x)
{
    CompensatedSum sum;
    double term = 1.0;  // x^k / k!
    for (int k = 1; k < 500; ++k) {
        term *= x / k;
        const double t = term / k;
        sum.add(t);
        if (t < 1e-18 * sum.value())
            break;
    }
    sum.add(std::log(x));
    sum.add(kEulerGamma);
    return sum.value();
}

/// e^{-x} Ei(x) ~ sum k!/x^{k+1}, for x > 40, truncated at the smallest term.
inline double ei_asymptotic_scaled(double x)
{
    CompensatedSum sum;
    double term = 1.0 / x;
    sum.add(term);
    for (int k = 1; k < 1000; ++k) {
        const double next = term * k / x;
        if (next > term || next < 1e-18 * sum.value())
            break;
        term = next;
        sum.add(term);
    }
    return sum.value();
}

/// E1(x) for 0 < x <= 1.
inline double e1_series(double x)
{
    CompensatedSum sum;
    double term = 1.0;  // (-x)^k / k!
    for (int k = 1; k < 200; ++k) {
        term *= -x / k;
        const double t = term / k;
        sum.add(-t);
        if (std::fabs(t) < 1e-18 * std::fabs(sum.value()))
            break;
    }
    sum.add(-std::log(x));
    sum.add(-kEulerGamma);
    return sum.value();
}

/// e^{x} E1(x) for x > 1 by the continued fraction
/// 1/(x+1- 1/(x+3- 4/(x+5- ...))).
inline double e1_cf_scaled(double x)
{
    constexpr double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10'000; ++i) {
        const double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double del = c * d;
        h *= del;
        if (std::fabs(del - 1.0) <= 2.0 * std::numeric_limits<double>::epsilon())
            return h;
    }
    throw ConvergenceError("ei: continued fraction for E1 did not converge");
}

inline double ei_positive_scaled(double x)
{
    if (x > kEiSeriesLimit)
        return ei_asymptotic_scaled(x);
    if (std::fabs(x - kEiRootHi) < 0.06)
        return std::exp(-x) * ei_near_root(x);
    return std::exp(-x) * ei_series(x);
}

/// e^{x} E1(x), x > 0.
inline double e1_scaled(double x)
{
    return x > 1.0 ? e1_cf_scaled(x) : std::exp(x) * e1_series(x);
}


// binary128 variant of the scaled pair, for closed forms that subtract
// polynomial terms from it and need the extra digits.

struct WideEiPair {
    astkit::detail::wide eneg = 0;
    astkit::detail::wide epos = 0;
};

inline WideEiPair ei_scaled_wide(double x_d)
{
    using astkit::detail::wide;
    const wide x = x_d;
    const wide euler = wide(0.5772156649015329) + wide(-4.942915152430645e-18);
    const wide tol = wide(1e-36);
    WideEiPair r;

    // e^{-x} Ei(x): series below 90, asymptotic beyond (smallest term < 1e-37)
    if (x_d <= 90.0) {
        wide term = 1, sum = 0;
        for (int k = 1; k < 2000; ++k) {
            term *= x / k;
            const wide t = term / k;
            sum += t;
            if (t < tol * sum)
                break;
        }
        r.eneg = expq(-x) * (sum + logq(x) + euler);
    } else {
        wide term = 1 / x, sum = term;
        for (int k = 1; k < 2000; ++k) {
            const wide next = term * k / x;
            if (next > term || next < tol * sum)
                break;
            term = next;
            sum += term;
        }
        r.eneg = sum;
    }

    // -e^{x} E1(x): series up to 1, continued fraction beyond
    if (x_d <= 1.0) {
        wide term = 1, sum = 0;
        for (int k = 1; k < 200; ++k) {
            term *= -x / k;
            const wide t = term / k;
            sum -= t;
            if (fabsq(t) < tol * fabsq(sum))
                break;
        }
        r.epos = -expq(x) * (sum - logq(x) - euler);
    } else {
        const wide tiny = wide(1e-300);
        wide b = x + 1, c = 1 / tiny, d = 1 / b, h = d;
        for (int i = 1; i < 100'000; ++i) {
            const wide an = -wide(i) * i;
            b += 2;
            d = 1 / (an * d + b);
            c = b + an / c;
            const wide del = c * d;
            h *= del;
            if (fabsq(del - 1) <= 4 * astkit::detail::wide_eps)
                break;
        }
        r.epos = -h;
    }
    return r;
}

}  // namespace detail

/// Exponential integral.  For x > 0 the Cauchy principal value of
/// int_{-inf}^x e^t/t dt; for x < 0, Ei(x) = -E1(-x) < 0.
inline double ei(double x)
{
    if (!std::isfinite(x))
        astkit::detail::domain_fail("ei", "argument must be finite");
    if (x == 0.0)
        astkit::detail::domain_fail("ei", "logarithmic singularity at 0");
    if (x < 0.0) {
        const double ax = -x;
        if (ax <= 1.0)
            return -detail::e1_series(ax);
        return -std::exp(-ax) * detail::e1_cf_scaled(ax);
    }
    if (x > detail::kEiSeriesLimit) {
        const double v = std::exp(x) * detail::ei_asymptotic_scaled(x);
        if (!std::isfinite(v))
            throw OverflowError("ei: result overflows binary64 (use ei_scaled)");
        return v;
    }
    if (std::fabs(x - detail::kEiRootHi) < 0.06)
        return detail::ei_near_root(x);
    return detail::ei_series(x);
}

/// The pair (e^{-x} Ei(x), e^{x} Ei(-x)); finite for every finite x > 0.
inline ScaledEiPair ei_scaled(double x)
{
    if (!std::isfinite(x) || x <= 0.0)
        astkit::detail::domain_fail("ei_scaled", "argument must be positive and finite");
    return {detail::ei_positive_scaled(x), -detail::e1_scaled(x), x};
}

}  // namespace astkit::specfun
