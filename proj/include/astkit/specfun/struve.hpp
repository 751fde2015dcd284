// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <limits>

#include "astkit/compensated.hpp"
#include "astkit/detail/wide.hpp"
#include "astkit/errors.hpp"
#include "astkit/specfun/bessel.hpp"
#include "astkit/specfun/gamma.hpp"

namespace astkit::specfun {

/// Modified Struve function L_nu(x) by its ascending series
///
///   L_nu(x) = sum_k (x/2)^{nu+1+2k} / (Gamma(k+3/2) Gamma(k+nu+3/2)),
///
/// truncated once a term drops below 1e-17 of the partial sum.  For very
/// negative orders the leading terms alternate in sign; the returned
/// estimate is eps * sum|terms| / |sum| and `lossy` is raised when it
/// exceeds 1e-6.
inline Estimate struve_l_checked(double nu, double x)
{
    detail::check_order_arg("struve_l", nu, x);

    constexpr double kRescale = 1e200;
    const double log_rescale = std::log(kRescale);
    const double half = 0.5 * x;
    const double q = half * half;
    const double log_half = std::log(half);

    double scale = 0.0;
    bool have_scale = false;
    bool chained = false;  // previous term nonzero, so the ratio recurrence applies
    double term = 0.0;
    double abs_total = 0.0;
    CompensatedSum sum;

    for (long k = 0; k < 2'000'000; ++k) {
        const double kk = static_cast<double>(k);
        const double y = kk + nu + 1.5;
        if (is_nonpositive_integer(y)) {
            chained = false;  // 1/Gamma(y) = 0
            continue;
        }
        if (!chained) {
            const double log_t = (nu + 1.0 + 2.0 * kk) * log_half - std::lgamma(kk + 1.5) - std::lgamma(y);
            if (!have_scale) {
                scale = log_t;
                have_scale = true;
            }
            term = gamma_sign(y) * std::exp(log_t - scale);
            chained = true;
        } else {
            term *= q / ((kk + 0.5) * (y - 1.0));
        }
        sum.add(term);
        abs_total += std::fabs(term);
        if (abs_total > kRescale) {
            const double s = sum.value() / kRescale;
            term /= kRescale;
            abs_total /= kRescale;
            sum = CompensatedSum{};
            sum.add(s);
            scale += log_rescale;
        }
        const bool decreasing = y > 0.0 && (kk + 1.5) * y > q;
        if (decreasing && std::fabs(term) <= 1e-17 * std::fabs(sum.value())) {
            const double s = sum.value();
            const double v = s * std::exp(scale);
            if (!std::isfinite(v))
                throw OverflowError("struve_l: result overflows binary64");
            Estimate e;
            e.value = v;
            e.rel_err = s == 0.0 ? std::numeric_limits<double>::infinity()
                                 : 2.0 * std::numeric_limits<double>::epsilon() * abs_total / std::fabs(s);
            e.lossy = e.rel_err > 1e-6;
            return e;
        }
    }
    throw ConvergenceError("struve_l: series did not converge");
}

inline double struve_l(double nu, double x) { return struve_l_checked(nu, x).value; }

namespace detail {

using astkit::detail::wide;

struct WideEstimate {
    wide value = 0;
    double rel_err = 0.0;
};

/// I_mu(z) - L_{-mu}(z) by the two ascending series summed term by term in
/// binary128.  Each series grows like e^z while the difference decays
/// algebraically, so binary64 would lose ~z/ln(10) digits.
inline WideEstimate gap_series(double mu_d, double z_d)
{
    using astkit::detail::rgamma;
    const wide mu = mu_d;
    const wide half = wide(z_d) / 2;
    const wide q = half * half;

    // I-series terms (z/2)^{mu+2k}/(k! Gamma(mu+k+1)); L-series terms
    // (z/2)^{1-mu+2k}/(Gamma(k+3/2) Gamma(k-mu+3/2)).
    wide t = 0, s = 0;
    bool t_chained = false, s_chained = false;
    wide sum = 0, abs_sum = 0;
    for (long k = 0; k < 1'000'000; ++k) {
        const wide kk = k;
        const wide yi = mu + kk + 1;
        if (t_chained) {
            t *= q / (kk * (yi - 1));
        } else {
            const wide r = rgamma(yi);
            t = r == 0 ? wide(0) : powq(half, mu + 2 * kk) * r / tgammaq(kk + 1);
            t_chained = t != 0;
        }
        const wide ys = kk - mu + wide(1.5);
        if (s_chained) {
            s *= q / ((kk + wide(0.5)) * (ys - 1));
        } else {
            const wide r = rgamma(ys);
            s = r == 0 ? wide(0) : powq(half, 1 - mu + 2 * kk) * r * rgamma(kk + wide(1.5));
            s_chained = s != 0;
        }
        const wide d = t - s;
        sum += d;
        abs_sum += fabsq(t) + fabsq(s);
        const bool decreasing = kk * yi > q && (kk + wide(1.5)) * ys > q && yi > 0 && ys > 0;
        if (decreasing && fabsq(t) + fabsq(s) <= wide(1e-36) * fabsq(sum)) {
            WideEstimate e;
            e.value = sum;
            e.rel_err = sum == 0 ? std::numeric_limits<double>::infinity()
                                 : static_cast<double>(4 * astkit::detail::wide_eps * abs_sum / fabsq(sum));
            return e;
        }
        if (decreasing && sum == 0 && abs_sum == 0 && kk > half)
            return {0, 0.0};
    }
    throw ConvergenceError("bessel_struve_gap: series did not converge");
}

/// Large-z expansion
///   I_mu(z) - L_{-mu}(z) ~ (1/pi) sum_k Gamma(k+1/2) (z/2)^{-mu-2k-1} / Gamma(1/2-mu-k)
/// whose ratio of successive terms, (k+1/2)(k+1/2+mu)/(z/2)^2, is positive
/// for mu > -1/2.  Truncated at the smallest term.
inline WideEstimate gap_asymptotic(double mu_d, double z_d)
{
    using astkit::detail::rgamma;
    using astkit::detail::wide_pi;
    const wide mu = mu_d;
    const wide half = wide(z_d) / 2;
    const wide q = half * half;
    const wide lead = rgamma(wide(0.5) - mu);
    if (lead == 0)
        return {0, 0.0};  // half-integer mu >= 1/2: I_{n-1/2} = L_{1/2-n} exactly
    wide u = powq(half, -mu - 1) * lead / sqrtq(wide_pi);
    wide sum = u;
    for (int k = 0; k < 10'000; ++k) {
        const wide kk = k;
        const wide next = u * (kk + wide(0.5)) * (kk + wide(0.5) + mu) / q;
        if (fabsq(next) >= fabsq(u) && k > 0)
            return {sum, static_cast<double>(fabsq(u) / fabsq(sum))};
        u = next;
        sum += u;
        if (fabsq(u) <= wide(1e-34) * fabsq(sum))
            return {sum, static_cast<double>(fabsq(u) / fabsq(sum))};
    }
    return {sum, static_cast<double>(fabsq(u) / fabsq(sum))};
}

/// Best available value of I_mu(z) - L_{-mu}(z) in binary128.
inline WideEstimate bessel_struve_gap_wide(double mu, double z)
{
    if (mu >= 0.5 && std::floor(mu - 0.5) == mu - 0.5)
        return {0, 0.0};  // I_{n-1/2} = L_{1/2-n}
    if (z > 20.0 && mu > -0.5) {
        const auto a = gap_asymptotic(mu, z);
        if (a.rel_err < 1e-17)
            return a;
        const auto s = gap_series(mu, z);
        return s.rel_err <= a.rel_err ? s : a;
    }
    return gap_series(mu, z);
}

}  // namespace detail

/// I_mu(z) - L_{-mu}(z), the combination appearing in the sine transform of
/// (1 + x^2)^{-rho} with mu = rho - 1/2.  Evaluated without the catastrophic
/// cancellation of the naive difference.  `lossy` above 1e-6.
inline Estimate bessel_struve_gap(double mu, double z)
{
    detail::check_order_arg("bessel_struve_gap", mu, z);
    const auto w = detail::bessel_struve_gap_wide(mu, z);
    Estimate e;
    e.value = static_cast<double>(w.value);
    if (!std::isfinite(e.value))
        throw OverflowError("bessel_struve_gap: result overflows binary64");
    e.rel_err = w.rel_err;
    e.lossy = w.rel_err > 1e-6;
    return e;
}

}  // namespace astkit::specfun
