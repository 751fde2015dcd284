// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <iterator>
#include <numbers>

#include "astkit/errors.hpp"

namespace astkit::specfun {

namespace detail {

// zeta(k) - 1 for k = 2, 3, ...
inline constexpr double kZetaMinusOne[] = {
    0.644934066848226436472,
    0.2020569031595942854,
    0.082323233711138191516,
    0.0369277551433699263314,
    0.0173430619844491397145,
    0.0083492773819228268398,
    0.00407735619794433937869,
    0.00200839282608221441785,
    0.000994575127818085337146,
    0.000494188604119464558702,
    0.000246086553308048298638,
    0.000122713347578489146752,
    0.0000612481350587048292585,
    0.0000305882363070204935517,
    0.0000152822594086518717326,
    0.0000076371976378997622736,
    0.00000381729326499983985646,
    0.00000190821271655393892566,
    9.53962033872796113152e-7,
    4.76932986787806463117e-7,
    2.38450502727732990004e-7,
    1.19219925965311073068e-7,
    5.96081890512594796124e-8,
    2.98035035146522801861e-8,
    1.49015548283650412347e-8,
    7.45071178983542949198e-9,
    3.72533402478845705482e-9,
    1.8626597235130490064e-9,
    9.31327432419668182872e-10,
    4.65662906503378407299e-10,
    2.328311833676505492e-10,
    1.16415501727005197759e-10,
    5.82077208790270088924e-11,
    2.91038504449709968693e-11,
    1.45519218910419842359e-11,
    7.27595983505748101452e-12,
    3.63797954737865119024e-12,
    1.81898965030706594758e-12,
    9.09494784026388928253e-13,
    4.5474737830421540268e-13,
};

/// ln Gamma(2 + e) = (1 - gamma) e + sum_{k>=2} (-1)^k (zeta(k) - 1) e^k / k,
/// for |e| <= 1/2.  Keeps full relative accuracy through the zeros at 1 and 2.
inline double ln_gamma_two_plus(double e)
{
    double sum = 0.0;
    double p = -e;
    for (std::size_t i = 0; i < std::size(kZetaMinusOne); ++i) {
        p *= -e;
        const int k = static_cast<int>(i) + 2;
        // (-1)^k e^k == (-e)^k
        sum += kZetaMinusOne[i] * p / k;
        if (std::fabs(p) < 1e-18)
            break;
    }
    return 0.422784335098467139393 * e + sum;
}

}  // namespace detail

/// ln Gamma(x) for x > 0.
inline double ln_gamma(double x)
{
    if (!std::isfinite(x) || x <= 0.0)
        astkit::detail::domain_fail("ln_gamma", "argument must be positive and finite");
    if (x >= 1.5 && x <= 2.5)
        return detail::ln_gamma_two_plus(x - 2.0);
    if (x >= 0.75 && x < 1.5) {
        const double e = x - 1.0;  // exact
        return detail::ln_gamma_two_plus(e) - std::log1p(e);
    }
    return std::lgamma(x);
}

/// sin(pi*x) with exact reduction of the argument modulo 2.
inline double sin_pi(double x)
{
    double r = std::remainder(x, 2.0);  // [-1, 1], exact
    if (r > 0.5)
        r = 1.0 - r;
    else if (r < -0.5)
        r = -1.0 - r;
    return std::sin(std::numbers::pi * r);
}

/// cos(pi*x); accurate near the half-integer zeros.
inline double cos_pi(double x)
{
    const double a = std::fabs(std::remainder(x, 2.0));  // [0, 1]
    return std::sin(std::numbers::pi * (0.5 - a));
}

inline bool is_nonpositive_integer(double y) { return y <= 0.0 && std::floor(y) == y; }

/// Sign of Gamma(y) for y not a pole.
inline double gamma_sign(double y)
{
    if (y > 0.0)
        return 1.0;
    return static_cast<long long>(std::floor(y)) % 2 == 0 ? 1.0 : -1.0;
}

/// 1/Gamma(y), zero at the poles.
inline double rgamma(double y)
{
    if (is_nonpositive_integer(y))
        return 0.0;
    if (y > 0.0)
        return y < 170.0 ? 1.0 / std::tgamma(y) : std::exp(-std::lgamma(y));
    // reflection: 1/Gamma(y) = sin(pi y) Gamma(1-y) / pi
    const double s = sin_pi(y);
    const double lg = std::lgamma(1.0 - y);
    return s * std::exp(lg - std::log(std::numbers::pi));
}

}  // namespace astkit::specfun
