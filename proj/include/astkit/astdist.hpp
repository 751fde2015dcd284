// SPDX-License-Identifier: Apache-2.0
//
// The asymmetric Student's-t (AST) distribution with skewness alpha and tail
// parameters nu1 (left) and nu2 (right): density, location-scale density and
// closed-form characteristic function.
#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "astkit/detail/wide.hpp"
#include "astkit/errors.hpp"
#include "astkit/sinetransform.hpp"
#include "astkit/specfun.hpp"

namespace astkit::astdist {

using ComplexValue = std::complex<double>;

/// Distance to the nearest odd integer below which the odd-order closed form
/// of the imaginary part is used.
inline constexpr double kOddSnap = 1e-6;
/// Estimates above this are reported as lossy by cf_b_checked / cf_checked.
inline constexpr double kCfLossThreshold = 1e-6;

/// K(nu) = Gamma((nu+1)/2) / (sqrt(pi nu) Gamma(nu/2)), the Student-t
/// normalizing constant.
inline double student_t_constant(double nu)
{
    if (!std::isfinite(nu) || nu <= 0.0)
        astkit::detail::domain_fail("student_t_constant", "nu must be finite and > 0");
    using astkit::detail::wide;
    // the log-gamma difference is evaluated in binary128 so that it stays
    // accurate when both terms are large
    const wide v = nu;
    const wide lk = lgammaq((v + 1) / 2) - lgammaq(v / 2) - logq(astkit::detail::wide_pi * v) / 2;
    return static_cast<double>(expq(lk));
}

/// Validated AST parameters and the constants derived from them.  Immutable.
class AstParams {
public:
    double alpha() const noexcept { return alpha_; }
    double nu1() const noexcept { return nu1_; }
    double nu2() const noexcept { return nu2_; }
    /// alpha K(nu1) / B
    double alpha_star() const noexcept { return alpha_star_; }
    /// (1 - alpha) K(nu2) / B, stored separately to keep full relative
    /// accuracy when alpha_star is close to 1.
    double one_minus_alpha_star() const noexcept { return one_minus_alpha_star_; }
    double k_nu1() const noexcept { return k_nu1_; }
    double k_nu2() const noexcept { return k_nu2_; }
    /// B = alpha K(nu1) + (1 - alpha) K(nu2), the density at 0.
    double b_const() const noexcept { return b_const_; }

private:
    friend AstParams make_params(double alpha, double nu1, double nu2);
    AstParams() = default;

    double alpha_ = 0.5;
    double nu1_ = 1.0;
    double nu2_ = 1.0;
    double alpha_star_ = 0.5;
    double one_minus_alpha_star_ = 0.5;
    double k_nu1_ = 0.0;
    double k_nu2_ = 0.0;
    double b_const_ = 0.0;
};

inline AstParams make_params(double alpha, double nu1, double nu2)
{
    if (!std::isfinite(alpha) || !(alpha > 0.0 && alpha < 1.0))
        astkit::detail::domain_fail("make_params", "alpha must be in (0,1)");
    if (!std::isfinite(nu1) || nu1 <= 0.0)
        astkit::detail::domain_fail("make_params", "nu1 must be finite and > 0");
    if (!std::isfinite(nu2) || nu2 <= 0.0)
        astkit::detail::domain_fail("make_params", "nu2 must be finite and > 0");
    AstParams p;
    p.alpha_ = alpha;
    p.nu1_ = nu1;
    p.nu2_ = nu2;
    p.k_nu1_ = student_t_constant(nu1);
    p.k_nu2_ = student_t_constant(nu2);
    const double left = alpha * p.k_nu1_;
    const double right = (1.0 - alpha) * p.k_nu2_;
    p.b_const_ = left + right;
    p.alpha_star_ = left / p.b_const_;
    p.one_minus_alpha_star_ = right / p.b_const_;
    return p;
}

/// AST parameters plus location mu and scale sigma.
struct LocScaleParams {
    AstParams base;
    double mu = 0.0;
    double sigma = 1.0;
};

inline LocScaleParams make_loc_scale(const AstParams& base, double mu, double sigma)
{
    if (!std::isfinite(mu))
        astkit::detail::domain_fail("make_loc_scale", "mu must be finite");
    if (!std::isfinite(sigma) || sigma <= 0.0)
        astkit::detail::domain_fail("make_loc_scale", "sigma must be finite and > 0");
    return {base, mu, sigma};
}

namespace detail {

/// ln(1 + u^2/nu) for u = x / scale, safe for |x| near the binary64 limit.
inline double log1p_square_over(double x, double scale, double nu)
{
    const double r = std::fabs(x) / scale;
    if (r < 1e150)
        return std::log1p(r * r / nu);
    const double lu = 2.0 * std::log(r) - std::log(nu);
    return lu + std::exp(-lu);
}

/// One branch of the density: height * [1 + (x/(2 s))^2 / nu]^{-(nu+1)/2}.
inline double pdf_branch(double height, double s, double nu, double x)
{
    return height * std::exp(-0.5 * (nu + 1.0) * log1p_square_over(x, 2.0 * s, nu));
}

inline void check_cf_args(const char* op, double alpha_eff, double alpha_star_eff, double nu, double t)
{
    if (!std::isfinite(alpha_eff) || !(alpha_eff > 0.0 && alpha_eff < 1.0))
        astkit::detail::domain_fail(op, "alpha must be in (0,1)");
    if (!std::isfinite(alpha_star_eff) || !(alpha_star_eff > 0.0 && alpha_star_eff < 1.0))
        astkit::detail::domain_fail(op, "alpha_star must be in (0,1)");
    if (!std::isfinite(nu) || nu <= 0.0)
        astkit::detail::domain_fail(op, "nu must be finite and > 0");
    if (!std::isfinite(t))
        astkit::detail::domain_fail(op, "t must be finite");
}

/// 2 (z/2)^{nu/2} K_{nu/2}(z) / Gamma(nu/2); tends to 1 as z -> 0.
inline double bessel_k_kernel(double nu, double z)
{
    const double mu = 0.5 * nu;
    const double lg = specfun::log_bessel_k(mu, z) + mu * std::log(0.5 * z) + std::numbers::ln2 - specfun::ln_gamma(mu);
    return std::exp(lg);
}

/// Distance from nu to the nearest odd integer and that integer.
inline double odd_distance(double nu, double& nearest)
{
    nearest = 2.0 * std::round(0.5 * (nu - 1.0)) + 1.0;
    if (nearest < 1.0)
        nearest = 1.0;
    return std::fabs(nu - nearest);
}

}  // namespace detail

/// Density of the standard AST distribution.  x <= 0 uses the left branch.
inline double pdf(const AstParams& p, double x)
{
    if (!std::isfinite(x))
        astkit::detail::domain_fail("pdf", "x must be finite");
    if (x <= 0.0)
        return detail::pdf_branch(p.alpha() / p.alpha_star() * p.k_nu1(), p.alpha_star(), p.nu1(), x);
    return detail::pdf_branch((1.0 - p.alpha()) / p.one_minus_alpha_star() * p.k_nu2(), p.one_minus_alpha_star(),
                              p.nu2(), x);
}

/// Density of mu + sigma B X with X standard AST:
/// (1/sigma) [1 + ((y-mu)/(2 alpha sigma K(nu1)))^2 / nu1]^{-(nu1+1)/2} for y <= mu,
/// and the analogous right branch.
inline double pdf_loc_scale(const LocScaleParams& p, double y)
{
    if (!std::isfinite(y))
        astkit::detail::domain_fail("pdf_loc_scale", "y must be finite");
    const AstParams& b = p.base;
    const double d = y - p.mu;
    const double inv_sigma = 1.0 / p.sigma;
    if (y <= p.mu)
        return detail::pdf_branch(inv_sigma, b.alpha() * p.sigma * b.k_nu1(), b.nu1(), d);
    return detail::pdf_branch(inv_sigma, (1.0 - b.alpha()) * p.sigma * b.k_nu2(), b.nu2(), d);
}

/// Real-part building block 2 alpha (a* sqrt(nu) |t|)^{nu/2} K_{nu/2}(2 a* sqrt(nu) |t|) / Gamma(nu/2).
/// Equals alpha_eff at t = 0 and underflows cleanly to 0 for large |t|.
inline double cf_a(double alpha_eff, double alpha_star_eff, double nu, double t)
{
    detail::check_cf_args("cf_a", alpha_eff, alpha_star_eff, nu, t);
    if (t == 0.0)
        return alpha_eff;
    const double z = 2.0 * alpha_star_eff * std::sqrt(nu) * std::fabs(t);
    if (!(z > 0.0))
        return alpha_eff;  // |t| below the smallest representable scale
    return alpha_eff * detail::bessel_k_kernel(nu, z);
}

/// Imaginary-part building block.  Away from odd nu:
///   pi alpha (z/2)^{nu/2} sgn(t) [I_{nu/2}(z) - L_{-nu/2}(z)] / (cos(pi nu/2) Gamma(nu/2)),
/// z = 2 a* sqrt(nu) |t|.  Within kOddSnap of an odd integer, nu is snapped to it and
///   (2 alpha / sqrt(pi)) Gamma((nu+1)/2) / Gamma(nu/2) sgn(t) T((nu+1)/2, z)
/// is used, T being the finite Ei sum of the integer sine transform.
inline Estimate cf_b_checked(double alpha_eff, double alpha_star_eff, double nu, double t)
{
    constexpr const char* op = "cf_b";
    detail::check_cf_args(op, alpha_eff, alpha_star_eff, nu, t);
    if (t == 0.0)
        return {};
    const double sgn = t > 0.0 ? 1.0 : -1.0;
    using astkit::detail::wide;

    double odd = 1.0;
    if (detail::odd_distance(nu, odd) <= kOddSnap) {
        const double z = 2.0 * alpha_star_eff * std::sqrt(odd) * std::fabs(t);
        if (!(z > 0.0))
            return {};
        const long n = static_cast<long>((odd + 1.0) / 2.0);
        const auto s = sinetransform::detail::theorem2_sum(n, z);
        const wide v = odd;
        const wide pref = 2 * wide(alpha_eff) / sqrtq(astkit::detail::wide_pi) *
                          expq(lgammaq((v + 1) / 2) - lgammaq(v / 2));
        Estimate e;
        e.value = sgn * static_cast<double>(pref * s.value);
        e.rel_err = s.rel_err;
        e.lossy = e.rel_err > kCfLossThreshold;
        return e;
    }

    const double z = 2.0 * alpha_star_eff * std::sqrt(nu) * std::fabs(t);
    if (!(z > 0.0))
        return {};
    const double mu = 0.5 * nu;
    const auto d = specfun::detail::bessel_struve_gap_wide(mu, z);
    const double c = specfun::cos_pi(mu);
    if (d.value == 0)
        return {};
    // pi alpha (z/2)^mu D / (cos(pi mu) Gamma(mu)), assembled in binary128 log space
    const wide log_mag = logq(astkit::detail::wide_pi * wide(alpha_eff)) + wide(mu) * logq(wide(z) / 2) +
                         logq(fabsq(d.value)) - logq(wide(std::fabs(c))) - lgammaq(wide(mu));
    const double sign = (d.value > 0) == (c > 0) ? 1.0 : -1.0;
    const wide mag = sign * expq(log_mag);
    Estimate e;
    e.value = sgn * static_cast<double>(mag);
    if (!std::isfinite(e.value))
        throw OverflowError("cf_b: result overflows binary64");
    // cos(pi nu/2) carries a relative error of order eps / |cos|
    e.rel_err = d.rel_err + 4.0 * std::numeric_limits<double>::epsilon() / std::fabs(c);
    e.lossy = e.rel_err > kCfLossThreshold;
    return e;
}

inline double cf_b(double alpha_eff, double alpha_star_eff, double nu, double t)
{
    return cf_b_checked(alpha_eff, alpha_star_eff, nu, t).value;
}

/// Characteristic function value with the worst component estimate.
struct CfEstimate {
    ComplexValue value;
    double rel_err = 0.0;
    bool lossy = false;
};

/// E[e^{itX}] for X standard AST.
inline CfEstimate cf_checked(const AstParams& p, double t)
{
    if (!std::isfinite(t))
        astkit::detail::domain_fail("cf", "t must be finite");
    const double a1 = p.alpha(), a2 = 1.0 - p.alpha();
    const double s1 = p.alpha_star(), s2 = p.one_minus_alpha_star();
    const double re = cf_a(a1, s1, p.nu1(), t) + cf_a(a2, s2, p.nu2(), t);
    const Estimate b2 = cf_b_checked(a2, s2, p.nu2(), t);
    const Estimate b1 = cf_b_checked(a1, s1, p.nu1(), t);
    CfEstimate r;
    r.value = {re, b2.value - b1.value};
    r.rel_err = std::max(b1.rel_err, b2.rel_err);
    r.lossy = b1.lossy || b2.lossy;
    return r;
}

inline ComplexValue cf(const AstParams& p, double t) { return cf_checked(p, t).value; }

/// E[e^{itY}] for Y = mu + sigma B X: e^{i mu t} cf(sigma B t).
inline ComplexValue cf_loc_scale(const LocScaleParams& p, double t)
{
    if (!std::isfinite(t))
        astkit::detail::domain_fail("cf_loc_scale", "t must be finite");
    const ComplexValue base = cf(p.base, p.sigma * p.base.b_const() * t);
    const double ph = p.mu * t;
    return base * ComplexValue(std::cos(ph), std::sin(ph));
}

/// Characteristic function of Student's t with nu degrees of freedom:
/// (sqrt(nu)|t|)^{nu/2} K_{nu/2}(sqrt(nu)|t|) / (2^{nu/2-1} Gamma(nu/2)).
inline double student_t_cf(double nu, double t)
{
    if (!std::isfinite(nu) || nu <= 0.0)
        astkit::detail::domain_fail("student_t_cf", "nu must be finite and > 0");
    if (!std::isfinite(t))
        astkit::detail::domain_fail("student_t_cf", "t must be finite");
    if (t == 0.0)
        return 1.0;
    const double z = std::sqrt(nu) * std::fabs(t);
    if (!(z > 0.0))
        return 1.0;
    return detail::bessel_k_kernel(nu, z);
}

}  // namespace astkit::astdist
