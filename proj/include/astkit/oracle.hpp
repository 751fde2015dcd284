// SPDX-License-Identifier: Apache-2.0
//
// Brute-force quadrature used as an independent check on the closed forms.
//
// Oscillatory integrals over (0, inf) are split at the zeros of the
// oscillating factor.  Each cell is integrated with adaptive Gauss-Kronrod
// (Boost.Math); because the envelope is positive and decreasing the cell
// values alternate in sign, and the partial sums are accelerated by
// repeated averaging (the Euler transformation).  Evaluation order is fixed,
// so results are bit-reproducible.
//
// All tolerances are relative to the magnitude of the result.
#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "astkit/astdist.hpp"
#include "astkit/errors.hpp"

namespace astkit::oracle {

struct QuadResult {
    double value = 0.0;
    double abs_err_estimate = 0.0;
    long n_evals = 0;
};

inline constexpr long kMaxEvals = 1'000'000;

namespace detail {

using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;

inline void check_tol(const char* op, double tol, double lo, double hi)
{
    if (!(tol >= lo && tol <= hi))
        astkit::detail::domain_fail(op, "tol must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

/// Adaptive Gauss-Kronrod on [lo, hi] with evaluation counting.
template <class F>
double cell(F&& f, double lo, double hi, double& err_acc, long& evals, double cell_tol = 2e-14)
{
    long local = 0;
    auto counted = [&](double x) {
        ++local;
        return f(x);
    };
    double err = 0.0;
    const double v = Rule::integrate(counted, lo, hi, 10, cell_tol, &err);
    err_acc += err;
    evals += local;
    if (evals > kMaxEvals)
        throw ConvergenceError("oracle: evaluation budget of 1e6 exhausted");
    return v;
}

/// m-fold repeated average of the partial sums s[0..m]:
/// sum_j C(m, j) s[j] / 2^m.
inline double euler_estimate(const std::vector<double>& s)
{
    std::vector<double> row = s;
    for (std::size_t n = row.size(); n > 1; --n)
        for (std::size_t i = 0; i + 1 < n; ++i)
            row[i] = 0.5 * (row[i] + row[i + 1]);
    return row.front();
}

/// Sum of the alternating series of cell integrals produced by `next_cell`
/// (called with k = 0, 1, ...), to relative tolerance `tol`.
template <class NextCell>
QuadResult alternating_sum(NextCell&& next_cell, double tol)
{
    constexpr std::size_t kMinCells = 12;
    constexpr std::size_t kMaxCells = 4000;
    QuadResult r;
    double cell_err = 0.0;
    std::vector<double> partial;
    double running = 0.0;
    double prev = 0.0, prev_diff = INFINITY;
    for (std::size_t k = 0; k < kMaxCells; ++k) {
        running += next_cell(k, cell_err, r.n_evals);
        partial.push_back(running);
        if (partial.size() < kMinCells)
            continue;
        // average only the most recent window; the leading cells carry
        // geometrically vanishing weight and would only cost time
        const std::size_t window = std::min<std::size_t>(partial.size(), 80);
        const std::vector<double> tail(partial.end() - static_cast<long>(window), partial.end());
        const double est = euler_estimate(tail);
        const double diff = std::fabs(est - prev);
        const double scale = std::fabs(est);
        // successive estimates can underestimate the true residual by a small
        // factor, so the stopping rule and the reported error carry a margin
        if (cell_err > 0.5 * tol * scale && partial.size() > kMinCells + 20)
            throw ConvergenceError("oracle: per-cell quadrature error exceeds the tolerance");
        if (8.0 * (diff + prev_diff) <= 0.5 * tol * scale && cell_err <= 0.5 * tol * scale) {
            r.value = est;
            r.abs_err_estimate = cell_err + 8.0 * (diff + prev_diff);
            return r;
        }
        prev_diff = diff;
        prev = est;
    }
    throw ConvergenceError("oracle: alternating tail did not converge");
}

/// Adaptive quadrature on [lo, hi], split at the geometric points
/// scale * 4^j below the cell length, so that an envelope varying on
/// `scale` is resolved inside a much longer cell.  Beyond x = hi - lo the
/// envelope varies on a scale longer than the cell and needs no splitting.
template <class F>
double split_cell(F&& f, double lo, double hi, double scale, double& err, long& evals, double cell_tol = 2e-14)
{
    const double width = hi - lo;
    double sum = 0.0;
    double a = lo;
    for (double brk = scale; brk < width && brk < hi; brk *= 4.0) {
        if (brk <= a * 1.25 || hi - brk < 0.05 * width)
            continue;
        sum += cell(f, a, brk, err, evals, cell_tol);
        a = brk;
    }
    return sum + cell(f, a, hi, err, evals, cell_tol);
}

/// int_0^inf w(t x) g(x) dx, w = sin or cos, g positive and decreasing on the
/// length scale `scale`.
template <class G>
QuadResult oscillatory(G&& g, double t, bool cosine, double scale, double tol)
{
    const double period = std::numbers::pi / t;
    const double shift = cosine ? 0.5 : 0.0;  // cos vanishes at (k + 1/2) pi / t
    auto next_cell = [&](std::size_t k, double& err, long& evals) {
        const double lo = k == 0 ? 0.0 : (static_cast<double>(k) - shift) * period;
        const double hi = (static_cast<double>(k) + 1.0 - shift) * period;
        auto f = [&](double x) { return (cosine ? std::cos(t * x) : std::sin(t * x)) * g(x); };
        return split_cell(f, lo, hi, scale, err, evals);
    };
    return alternating_sum(next_cell, tol);
}

/// int_L^inf H [1 + (x/c)^2/nu]^{-(nu+1)/2} dx for (L/c)^2 >= 4 nu, from the
/// binomial expansion of (1 + nu c^2/x^2)^{-p}, p = (nu+1)/2, integrated
/// term by term.
inline double power_tail(double height, double c, double nu, double L)
{
    const double p = 0.5 * (nu + 1.0);
    const double u = L / c;
    const double r = nu / (u * u);  // <= 1/4
    // H (nu c^2)^p sum_m C(-p, m) (nu c^2)^m L^{1-2p-2m} / (2p+2m-1)
    const double lead = height * std::pow(nu, p) * std::pow(u, -2.0 * p) * L;
    double coef = 1.0;  // C(-p, m) r^m
    double sum = 0.0;
    for (int m = 0; m < 400; ++m) {
        const double term = coef / (2.0 * p + 2.0 * m - 1.0);
        sum += term;
        if (std::fabs(term) <= 1e-17 * std::fabs(sum))
            break;
        coef *= -(p + m) / (m + 1.0) * r;
    }
    return lead * sum;
}

/// int_0^inf H [1 + (x/c)^2/nu]^{-(nu+1)/2} dx.
inline double half_line_mass(double height, double c, double nu, double& err, long& evals)
{
    const double L = 2.0 * c * std::sqrt(nu) * 1.0000001 + c;
    auto f = [&](double x) { return height * std::pow(1.0 + (x / c) * (x / c) / nu, -0.5 * (nu + 1.0)); };
    double body = 0.0;
    // split at a few multiples of the scale so each piece is smooth
    double lo = 0.0;
    for (double hi : {0.5 * c, c, 2.0 * c, L}) {
        if (hi <= lo)
            continue;
        body += cell(f, lo, hi, err, evals);
        lo = hi;
    }
    if (L > lo)
        body += cell(f, lo, L, err, evals);
    return body + power_tail(height, c, nu, std::max(L, lo));
}

}  // namespace detail

/// int_0^inf sin(a x)/(b^2 + x^2)^rho dx by brute force.
inline QuadResult quad_sine_kernel(double rho, double a, double b, double tol)
{
    constexpr const char* op = "quad_sine_kernel";
    detail::check_tol(op, tol, 1e-13, 1e-3);
    if (!std::isfinite(rho) || rho <= 0.0)
        astkit::detail::domain_fail(op, "rho must be finite and > 0");
    if (!std::isfinite(a) || a <= 0.0)
        astkit::detail::domain_fail(op, "a must be finite and > 0");
    if (!std::isfinite(b) || b <= 0.0)
        astkit::detail::domain_fail(op, "b must be finite and > 0");
    const double b2 = b * b;
    auto g = [&](double x) { return std::pow(b2 + x * x, -rho); };
    return detail::oscillatory(g, a, false, b, tol);
}

/// int_0^inf cos(a x)/(b^2 + x^2)^rho dx by brute force (Basset's integral
/// for K_{rho-1/2}).
inline QuadResult quad_cos_kernel(double rho, double a, double b, double tol)
{
    constexpr const char* op = "quad_cos_kernel";
    detail::check_tol(op, tol, 1e-13, 1e-3);
    if (!std::isfinite(rho) || rho <= 0.0)
        astkit::detail::domain_fail(op, "rho must be finite and > 0");
    if (!std::isfinite(a) || a <= 0.0)
        astkit::detail::domain_fail(op, "a must be finite and > 0");
    if (!std::isfinite(b) || b <= 0.0)
        astkit::detail::domain_fail(op, "b must be finite and > 0");
    const double b2 = b * b;
    auto g = [&](double x) { return std::pow(b2 + x * x, -rho); };
    return detail::oscillatory(g, a, true, b, tol);
}

/// Value and error estimates of the brute-force characteristic function.
struct CfQuad {
    astdist::ComplexValue value;
    double abs_err_re = 0.0;
    double abs_err_im = 0.0;
    long n_evals = 0;
};

/// E[e^{itX}] by direct integration against the density:
///   re = int_0^inf cos(tx) [f(-x) + f(x)] dx,
///   im = int_0^inf sin(tx) f(x) dx - int_0^inf sin(tx) f(-x) dx.
inline CfQuad quad_cf_checked(const astdist::AstParams& p, double t, double tol)
{
    constexpr const char* op = "quad_cf";
    detail::check_tol(op, tol, 1e-13, 1e-3);
    if (!std::isfinite(t))
        astkit::detail::domain_fail(op, "t must be finite");
    const double hl = p.alpha() / p.alpha_star() * p.k_nu1();
    const double hr = (1.0 - p.alpha()) / p.one_minus_alpha_star() * p.k_nu2();
    const double cl = 2.0 * p.alpha_star();
    const double cr = 2.0 * p.one_minus_alpha_star();
    auto left = [&](double x) { return hl * std::pow(1.0 + (x / cl) * (x / cl) / p.nu1(), -0.5 * (p.nu1() + 1.0)); };
    auto right = [&](double x) { return hr * std::pow(1.0 + (x / cr) * (x / cr) / p.nu2(), -0.5 * (p.nu2() + 1.0)); };

    CfQuad r;
    if (t == 0.0) {
        double err = 0.0;
        long evals = 0;
        const double m = detail::half_line_mass(hl, cl, p.nu1(), err, evals) +
                         detail::half_line_mass(hr, cr, p.nu2(), err, evals);
        r.value = {m, 0.0};
        r.abs_err_re = err;
        r.n_evals = evals;
        return r;
    }
    const double at = std::fabs(t);
    auto both = [&](double x) { return left(x) + right(x); };
    const QuadResult re = detail::oscillatory(both, at, true, std::min(cl, cr), tol);
    const QuadResult jr = detail::oscillatory(right, at, false, cr, tol);
    const QuadResult jl = detail::oscillatory(left, at, false, cl, tol);
    const double im = (jr.value - jl.value) * (t > 0.0 ? 1.0 : -1.0);
    r.value = {re.value, im};
    r.abs_err_re = re.abs_err_estimate;
    r.abs_err_im = jr.abs_err_estimate + jl.abs_err_estimate;
    r.n_evals = re.n_evals + jr.n_evals + jl.n_evals;
    return r;
}

inline astdist::ComplexValue quad_cf(const astdist::AstParams& p, double t, double tol)
{
    return quad_cf_checked(p, t, tol).value;
}

/// int pdf over the real line: adaptive quadrature on [-L, L] and the exact
/// power-law tails beyond.
inline QuadResult quad_pdf_norm(const astdist::AstParams& p, double tol)
{
    detail::check_tol("quad_pdf_norm", tol, 1e-13, 1e-3);
    const double hl = p.alpha() / p.alpha_star() * p.k_nu1();
    const double hr = (1.0 - p.alpha()) / p.one_minus_alpha_star() * p.k_nu2();
    QuadResult r;
    r.value = detail::half_line_mass(hl, 2.0 * p.alpha_star(), p.nu1(), r.abs_err_estimate, r.n_evals) +
              detail::half_line_mass(hr, 2.0 * p.one_minus_alpha_star(), p.nu2(), r.abs_err_estimate, r.n_evals);
    if (r.abs_err_estimate > tol * std::fabs(r.value))
        throw ConvergenceError("quad_pdf_norm: tolerance not reached");
    return r;
}


/// pdf(x) recovered from the closed-form characteristic function,
///   (1/pi) int_0^inf [Re phi(t) cos(tx) + Im phi(t) sin(tx)] dt,
/// summed over half-periods of the oscillation in x.
inline QuadResult quad_pdf_inversion(const astdist::AstParams& p, double x, double tol)
{
    constexpr const char* op = "quad_pdf_inversion";
    detail::check_tol(op, tol, 1e-12, 1e-2);
    if (!std::isfinite(x))
        astkit::detail::domain_fail(op, "x must be finite");
    auto h = [&](double t) {
        const auto c = astdist::cf(p, t);
        return (c.real() * std::cos(t * x) + c.imag() * std::sin(t * x)) / std::numbers::pi;
    };
    // the closed form carries rounding noise near 1e-15, so the per-cell
    // rule is not asked for more than the overall target needs
    const double cell_tol = std::max(1e-13, 0.01 * tol);
    // the real part decays on the scale 1/(2 min(a*, 1-a*))
    const double scale = 1.0 / (2.0 * std::min(p.alpha_star(), p.one_minus_alpha_star()));
    if (x == 0.0) {
        QuadResult r;
        double lo = 0.0;
        for (double hi = scale;; hi *= 2.0) {
            const double piece = detail::cell(h, lo, hi, r.abs_err_estimate, r.n_evals, cell_tol);
            r.value += piece;
            lo = hi;
            if (std::fabs(piece) <= 0.1 * tol * std::fabs(r.value) && hi > 40.0 * scale)
                return r;
        }
    }
    const double period = std::numbers::pi / std::fabs(x);
    auto next_cell = [&](std::size_t k, double& err, long& evals) {
        const double lo = static_cast<double>(k) * period;
        return detail::split_cell(h, lo, lo + period, scale, err, evals, cell_tol);
    };
    return detail::alternating_sum(next_cell, tol);
}

}  // namespace astkit::oracle
