// SPDX-License-Identifier: Apache-2.0
//
// Sine transforms of (b^2 + x^2)^{-rho}:
//
//   S(rho, a, b) = int_0^inf sin(a x) / (b^2 + x^2)^rho dx,   a >= 0, b > 0.
//
// Integer orders use the finite closed form in the scaled exponential
// integrals, fractional orders the Bessel-Struve representation.  Both are
// evaluated in binary128 and carry a relative error estimate.
#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "astkit/detail/wide.hpp"
#include "astkit/errors.hpp"
#include "astkit/specfun/expint.hpp"
#include "astkit/specfun/struve.hpp"

namespace astkit::sinetransform {

/// Estimates above this are reported as lossy by the integer-order routines.
inline constexpr double kCancellationThreshold = 1e-8;
/// Estimates above this are reported as lossy by the fractional-order routine.
inline constexpr double kFracLossThreshold = 1e-6;
/// Orders closer than this to a positive integer take the integer path.
inline constexpr double kIntegerSnap = 1e-6;
/// Largest integer order accepted (the closed form costs O(n^2)).
inline constexpr long kMaxOrder = 100'000;

namespace detail {

using astkit::detail::wide;
using astkit::detail::wide_eps;

struct WideSum {
    wide value = 0;
    double rel_err = 0.0;
};

__extension__ using u128 = unsigned __int128;

/// C(m, r) exactly for m <= 64.
inline u128 binomial_exact(unsigned m, unsigned r)
{
    u128 c = 1;
    for (unsigned i = 1; i <= r; ++i)
        c = c * (m - r + i) / i;  // exact: c * (m-r+i) is divisible by i
    return c;
}

/// The finite sum
///
///   T(n, x) = sum_{k=1}^n C(2n-k-1, n-1) 2^{k-2n}/(k-1)!
///             * { x^{k-1} [E- + (-1)^k E+]
///                 - sum_{j=1}^{k-1} (j-1)! [1 + (-1)^{k+j}] x^{k-j-1} }
///
/// with E- = e^{-x} Ei(x), E+ = e^{x} Ei(-x).  S(n, a, b) = T(n, ab)/b^{2n-1}.
/// The polynomial part cancels the leading behavior of the bracket, so the
/// estimate is driven by sum|terms| / |T|.
inline WideSum theorem2_closed(long n, double x_d)
{
    const wide x = x_d;
    const auto e = specfun::detail::ei_scaled_wide(x_d);

    // coef_k = C(2n-k-1, n-1) 2^{k-2n} / (k-1)!
    wide coef;
    if (n <= 33)
        coef = ldexpq(static_cast<wide>(binomial_exact(static_cast<unsigned>(2 * n - 2),
                                                       static_cast<unsigned>(n - 1))),
                      static_cast<int>(1 - 2 * n));
    else
        coef = expq(lgammaq(wide(2 * n - 1)) - 2 * lgammaq(wide(n)) + (1 - 2 * n) * logq(wide(2)));

    wide sum = 0, abs_sum = 0;
    wide xpow = 1;  // x^{k-1}
    for (long k = 1; k <= n; ++k) {
        if (k > 1) {
            if (n <= 33) {
                wide rf = 1;  // 1/(k-1)!
                for (long i = 2; i < k; ++i)
                    rf /= i;
                coef = ldexpq(static_cast<wide>(binomial_exact(static_cast<unsigned>(2 * n - k - 1),
                                                               static_cast<unsigned>(n - 1))),
                              static_cast<int>(k - 2 * n)) * rf;
            } else {
                // ratio coef_k / coef_{k-1} = 2 (n-k+1) / ((2n-k) (k-1))
                coef *= wide(2 * (n - k + 1)) / (wide(2 * n - k) * (k - 1));
            }
            xpow *= x;
        }
        const wide bracket = (k % 2 == 0) ? e.eneg + e.epos : e.eneg - e.epos;
        const wide lead = xpow * bracket;

        // sum_{j<k, j = k mod 2} 2 (j-1)! x^{k-j-1}, taken from j = k-2 down
        wide inner = 0, inner_abs = 0;
        if (k >= 3) {
            // j = k-2: 2 (k-3)! x
            wide t = 2 * x;
            for (long i = 2; i <= k - 3; ++i)
                t *= i;
            for (long j = k - 2; j >= 1; j -= 2) {
                inner += t;
                inner_abs += fabsq(t);
                if (j - 2 >= 1)
                    t *= x * x / (wide(j - 1) * (j - 2));
            }
        }
        const wide term = coef * (lead - inner);
        sum += term;
        abs_sum += fabsq(coef) * (fabsq(xpow) * (fabsq(e.eneg) + fabsq(e.epos)) + inner_abs);
    }
    WideSum r;
    r.value = sum;
    r.rel_err = sum == 0 ? std::numeric_limits<double>::infinity()
                         : static_cast<double>(16 * wide_eps * abs_sum / fabsq(sum));
    return r;
}

/// Large-x expansion T(n, x) ~ sum_m (2m)! C(n+m-1, m) / x^{2m+1}: the
/// Fourier-sine asymptotics of the even function (1 + t^2)^{-n}, with an
/// exponentially small remainder.  Truncated at the smallest term.
inline WideSum theorem2_asymptotic(long n, double x_d)
{
    const wide x = x_d;
    const wide q = x * x;
    wide term = 1 / x;
    wide sum = term;
    for (long m = 0; m < 100'000; ++m) {
        // ratio of successive terms: (2m+1)(2m+2)(n+m) / ((m+1) x^2)
        const wide next = term * wide(2 * m + 1) * wide(2 * m + 2) * wide(n + m) / (wide(m + 1) * q);
        if (next >= term)
            break;
        term = next;
        sum += term;
        if (term <= wide_eps * sum)
            break;
    }
    return {sum, static_cast<double>(term / sum) + static_cast<double>(4 * wide_eps)};
}

/// T(n, x) from whichever representation carries the smaller estimate.
inline WideSum theorem2_sum(long n, double x)
{
    const WideSum c = theorem2_closed(n, x);
    if (c.rel_err <= 1e-20 || x < 20.0)
        return c;
    const WideSum a = theorem2_asymptotic(n, x);
    return a.rel_err < c.rel_err ? a : c;
}

inline void check_int_args(const char* op, long n, double a, double b)
{
    if (n < 1)
        astkit::detail::domain_fail(op, "n must be a positive integer");
    if (n > kMaxOrder)
        astkit::detail::domain_fail(op, "n exceeds the supported maximum");
    if (!std::isfinite(a) || a < 0.0)
        astkit::detail::domain_fail(op, "a must be finite and >= 0");
    if (!std::isfinite(b) || b <= 0.0)
        astkit::detail::domain_fail(op, "b must be finite and > 0");
}

inline Estimate to_estimate(const char* op, wide v, double rel_err, double threshold)
{
    Estimate e;
    e.value = static_cast<double>(v);
    if (!std::isfinite(e.value))
        throw OverflowError(std::string(op) + ": result overflows binary64");
    e.rel_err = rel_err;
    e.lossy = rel_err > threshold;
    return e;
}

}  // namespace detail

/// int_0^inf sin(a x)/(b^2 + x^2)^n dx for integer n >= 1.  `lossy` when the
/// estimated relative error exceeds kCancellationThreshold.
inline Estimate sine_integral_int_checked(long n, double a, double b)
{
    detail::check_int_args("sine_integral_int", n, a, b);
    if (a == 0.0)
        return {};
    const double x = a * b;
    if (!(x > 0.0))
        astkit::detail::domain_fail("sine_integral_int", "a*b underflows to zero");
    const auto t = detail::theorem2_sum(n, x);
    const detail::wide scale = powq(detail::wide(b), detail::wide(1 - 2 * n));
    return detail::to_estimate("sine_integral_int", t.value * scale, t.rel_err, kCancellationThreshold);
}

inline double sine_integral_int(long n, double a, double b) { return sine_integral_int_checked(n, a, b).value; }

/// int_0^inf sin(a x)/(b^2 + x^2)^rho dx for rho > 0 at least kIntegerSnap
/// away from every positive integer:
///
///   (sqrt(pi)/2) Gamma(1-rho) (a/(2b))^{rho-1/2} [I_{rho-1/2}(ab) - L_{1/2-rho}(ab)].
///
/// `lossy` when the Bessel-Struve difference is known to fewer than 6 digits.
inline Estimate sine_integral_frac_checked(double rho, double a, double b)
{
    constexpr const char* op = "sine_integral_frac";
    if (!std::isfinite(rho) || rho <= 0.0)
        astkit::detail::domain_fail(op, "rho must be finite and > 0");
    if (std::fabs(rho - std::round(rho)) <= kIntegerSnap && std::round(rho) >= 1.0)
        astkit::detail::domain_fail(op, "rho is within 1e-6 of a positive integer; use sine_integral_int");
    if (!std::isfinite(a) || a < 0.0)
        astkit::detail::domain_fail(op, "a must be finite and >= 0");
    if (!std::isfinite(b) || b <= 0.0)
        astkit::detail::domain_fail(op, "b must be finite and > 0");
    if (a == 0.0)
        return {};
    const double z = a * b;
    if (!(z > 0.0))
        astkit::detail::domain_fail(op, "a*b underflows to zero");

    using detail::wide;
    const wide r = rho;
    const wide mu = r - wide(0.5);
    const auto d = specfun::detail::bessel_struve_gap_wide(static_cast<double>(mu), z);
    if (d.value == 0)
        return {};

    // Gamma(1 - rho), by reflection pi / (sin(pi rho) Gamma(rho)) for rho > 1
    wide log_g, sign_g;
    if (rho < 1.0) {
        log_g = lgammaq(1 - r);
        sign_g = 1;
    } else {
        const wide s = astkit::detail::sin_pi(r);
        log_g = logq(astkit::detail::wide_pi) - logq(fabsq(s)) - lgammaq(r);
        sign_g = s > 0 ? 1 : -1;
    }
    const wide log_mag = logq(sqrtq(astkit::detail::wide_pi) / 2) + log_g +
                         mu * logq(wide(a) / (2 * wide(b))) + logq(fabsq(d.value));
    const wide sign = sign_g * (d.value > 0 ? 1 : -1);
    return detail::to_estimate(op, sign * expq(log_mag), d.rel_err + 1e-30, kFracLossThreshold);
}

inline double sine_integral_frac(double rho, double a, double b) { return sine_integral_frac_checked(rho, a, b).value; }

/// Dispatches on rho: orders within kIntegerSnap of a positive integer n use
/// the integer closed form at n, all others the fractional form.
inline Estimate sine_integral_checked(double rho, double a, double b)
{
    if (!std::isfinite(rho) || rho <= 0.0)
        astkit::detail::domain_fail("sine_integral", "rho must be finite and > 0");
    const double n = std::round(rho);
    if (n >= 1.0 && std::fabs(rho - n) <= kIntegerSnap) {
        if (n > static_cast<double>(kMaxOrder))
            astkit::detail::domain_fail("sine_integral", "rho exceeds the supported maximum");
        return sine_integral_int_checked(static_cast<long>(n), a, b);
    }
    return sine_integral_frac_checked(rho, a, b);
}

inline double sine_integral(double rho, double a, double b) { return sine_integral_checked(rho, a, b).value; }

/// lim_{nu -> n} [I_{nu-1/2}(x) - L_{1/2-nu}(x)] / sin(pi nu)
///   = (2/pi^{3/2}) (n-1)! (2/x)^{n-1/2} T(n, x).
inline Estimate bessel_struve_limit_checked(long n, double x)
{
    constexpr const char* op = "bessel_struve_limit";
    if (n < 1)
        astkit::detail::domain_fail(op, "n must be a positive integer");
    if (n > kMaxOrder)
        astkit::detail::domain_fail(op, "n exceeds the supported maximum");
    if (!std::isfinite(x) || x <= 0.0)
        astkit::detail::domain_fail(op, "x must be finite and > 0");
    using detail::wide;
    const auto t = detail::theorem2_sum(n, x);
    const wide log_pref = logq(wide(2)) - wide(1.5) * logq(astkit::detail::wide_pi) + lgammaq(wide(n)) +
                          (wide(n) - wide(0.5)) * logq(2 / wide(x));
    return detail::to_estimate(op, expq(log_pref) * t.value, t.rel_err, kCancellationThreshold);
}

inline double bessel_struve_limit(long n, double x) { return bessel_struve_limit_checked(n, x).value; }

}  // namespace astkit::sinetransform
