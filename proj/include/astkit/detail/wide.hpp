// SPDX-License-Identifier: Apache-2.0
//
// binary128 arithmetic (GCC/Clang __float128 backed by libquadmath).  Used
// where a closed form subtracts two exponentially large series.
#pragma once

#if !defined(__SIZEOF_FLOAT128__)
#error "astkit requires __float128 support (GCC or Clang on x86-64/aarch64)"
#endif

#include <quadmath.h>

#include <cmath>

namespace astkit::detail {

using wide = __float128;

inline const wide wide_pi = acosq(wide(-1));
inline constexpr wide wide_eps = wide(0x1p-112);

inline wide wabs(wide x) { return fabsq(x); }

inline bool is_nonpositive_integer(wide y) { return y <= 0 && floorq(y) == y; }

/// sin(pi*y) with exact argument reduction.
inline wide sin_pi(wide y)
{
    const wide n = roundq(y);
    const wide r = y - n;
    const wide s = sinq(wide_pi * r);
    return fmodq(n, 2) == 0 ? s : -s;
}

/// 1/Gamma(y); zero at the poles.
inline wide rgamma(wide y)
{
    if (is_nonpositive_integer(y))
        return 0;
    if (y < wide(0.5))
        return sin_pi(y) * tgammaq(1 - y) / wide_pi;
    if (y > 1700)
        return expq(-lgammaq(y));
    return 1 / tgammaq(y);
}

}  // namespace astkit::detail
