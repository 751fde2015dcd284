// SPDX-License-Identifier: Apache-2.0
//
// Modified Bessel functions of real order and positive real argument.
//
//   I_nu : ascending series (with running rescale so no partial sum
//          overflows), or the large-x Hankel expansion when it converges to
//          full precision.
//   K_nu : trapezoidal rule applied to  int_0^inf exp(-x cosh t) cosh(nu t) dt.
//          The integrand already decays double exponentially, so the plain
//          trapezoidal rule converges geometrically in the step size.  The
//          sum is carried in log space, which gives ln K directly.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "astkit/compensated.hpp"
#include "astkit/errors.hpp"
#include "astkit/specfun/gamma.hpp"

namespace astkit::specfun {

namespace detail {

inline void check_order_arg(const char* op, double nu, double x)
{
    if (!std::isfinite(nu))
        astkit::detail::domain_fail(op, "order must be finite");
    if (!std::isfinite(x) || x <= 0.0)
        astkit::detail::domain_fail(op, "argument must be positive and finite");
}

/// Sign and natural log of |value|; value == sign * exp(log_abs).
struct SignedLog {
    double sign = 0.0;
    double log_abs = -std::numeric_limits<double>::infinity();
};

/// ln(e^{-x} I_nu(x)) with sign, by the ascending series.
inline SignedLog bessel_i_series_scaled(double nu, double x)
{
    constexpr double kRescale = 1e200;
    const double log_rescale = std::log(kRescale);
    const double half = 0.5 * x;
    const double q = half * half;

    // leading term (x/2)^nu / Gamma(nu+1)
    double scale = nu * std::log(half) - std::lgamma(nu + 1.0) - x;
    double term = gamma_sign(nu + 1.0);
    CompensatedSum sum;
    sum.add(term);

    const long max_terms = 2'000'000;
    for (long k = 1; k < max_terms; ++k) {
        term *= q / (static_cast<double>(k) * (nu + static_cast<double>(k)));
        sum.add(term);
        if (std::fabs(sum.value()) > kRescale) {
            // restart the accumulator in units of kRescale
            const double s = sum.value() / kRescale;
            term /= kRescale;
            sum = CompensatedSum{};
            sum.add(s);
            scale += log_rescale;
        }
        const double kk = static_cast<double>(k);
        const bool past_peak = kk * (kk + nu) > q;
        if (past_peak && std::fabs(term) <= 1e-17 * std::fabs(sum.value()))
            return {sum.value() < 0.0 ? -1.0 : 1.0, std::log(std::fabs(sum.value())) + scale};
    }
    throw ConvergenceError("bessel_i: ascending series did not converge");
}

/// e^{-x} I_nu(x) from the Hankel expansion; false if it does not reach
/// full precision before the terms start to grow.
inline bool bessel_i_asymptotic_scaled(double nu, double x, double& out)
{
    const double mu = 4.0 * nu * nu;
    double term = 1.0;
    CompensatedSum sum;
    sum.add(term);
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double next = -term * (mu - odd * odd) / (8.0 * k * x);
        if (std::fabs(next) > std::fabs(term) && k > 1)
            return false;
        term = next;
        sum.add(term);
        if (std::fabs(term) <= 1e-17 * std::fabs(sum.value()) || term == 0.0) {
            out = sum.value() / std::sqrt(2.0 * std::numbers::pi * x);
            return true;
        }
    }
    return false;
}

inline SignedLog bessel_i_scaled_log(double nu, double x)
{
    // I_{-n} = I_n; the series cannot start at a pole of Gamma(nu+1).
    if (nu < 0.0 && std::floor(nu) == nu)
        nu = -nu;
    if (x > 25.0) {
        double v = 0.0;
        if (bessel_i_asymptotic_scaled(nu, x, v))
            return {v < 0.0 ? -1.0 : 1.0, std::log(std::fabs(v))};
    }
    return bessel_i_series_scaled(nu, x);
}

/// ln(e^x K_nu(x)) for nu >= 0 (K is even in nu).
inline double log_bessel_k_scaled_impl(double nu, double x)
{
    nu = std::fabs(nu);
    // log of exp(-x (cosh t - 1)) cosh(nu t); cosh t - 1 = 2 sinh^2(t/2)
    auto log_integrand = [nu, x](double t) {
        const double sh = std::sinh(0.5 * t);
        const double nt = nu * t;
        return -2.0 * x * sh * sh + nt + std::log1p(std::exp(-2.0 * nt)) - std::numbers::ln2;
    };

    // approximate location and curvature of the peak
    const double t_peak = nu > 0.0 ? std::asinh(nu / x) : 0.0;
    const double curvature = x * std::cosh(t_peak);
    const double h = std::min(0.24, 0.6 / std::sqrt(curvature));

    const double log_peak = log_integrand(t_peak);
    CompensatedSum sum;
    sum.add(0.5 * std::exp(log_integrand(0.0) - log_peak));
    for (long k = 1;; ++k) {
        const double t = static_cast<double>(k) * h;
        const double rel = log_integrand(t) - log_peak;
        sum.add(std::exp(rel));
        if (t > t_peak && rel < -42.0)
            break;
        if (k > 10'000'000)
            throw ConvergenceError("bessel_k: quadrature did not terminate");
    }
    return log_peak + std::log(h * sum.value());
}

}  // namespace detail

/// e^{-x} I_nu(x).  Finite for every finite x > 0.
inline double bessel_i_scaled(double nu, double x)
{
    detail::check_order_arg("bessel_i_scaled", nu, x);
    const auto r = detail::bessel_i_scaled_log(nu, x);
    return r.sign * std::exp(r.log_abs);
}

/// Modified Bessel function of the first kind I_nu(x), x > 0.  Negative
/// non-integer orders are supported.
inline double bessel_i(double nu, double x)
{
    detail::check_order_arg("bessel_i", nu, x);
    const auto r = detail::bessel_i_scaled_log(nu, x);
    const double v = r.sign * std::exp(r.log_abs + x);
    if (!std::isfinite(v))
        throw OverflowError("bessel_i: result overflows binary64");
    return v;
}

/// ln K_nu(x); finite wherever the quadrature can run, so it is the safe
/// building block for products like z^nu K_nu(z).
inline double log_bessel_k(double nu, double x)
{
    detail::check_order_arg("log_bessel_k", nu, x);
    if (nu < 0.0)
        astkit::detail::domain_fail("log_bessel_k", "order must be >= 0");
    return detail::log_bessel_k_scaled_impl(nu, x) - x;
}

/// e^x K_nu(x).
inline double bessel_k_scaled(double nu, double x)
{
    detail::check_order_arg("bessel_k_scaled", nu, x);
    if (nu < 0.0)
        astkit::detail::domain_fail("bessel_k_scaled", "order must be >= 0");
    const double v = std::exp(detail::log_bessel_k_scaled_impl(nu, x));
    if (!std::isfinite(v))
        throw OverflowError("bessel_k_scaled: result overflows binary64");
    return v;
}

/// Modified Bessel function of the second kind K_nu(x), nu >= 0, x > 0.
/// Underflows to zero for large x.
inline double bessel_k(double nu, double x)
{
    detail::check_order_arg("bessel_k", nu, x);
    if (nu < 0.0)
        astkit::detail::domain_fail("bessel_k", "order must be >= 0 (use K_{-nu} = K_nu)");
    const double v = std::exp(detail::log_bessel_k_scaled_impl(nu, x) - x);
    if (!std::isfinite(v))
        throw OverflowError("bessel_k: result overflows binary64");
    return v;
}

}  // namespace astkit::specfun
