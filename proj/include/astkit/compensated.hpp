// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

namespace astkit {

/// Error-free transformations (Knuth TwoSum, FMA-based TwoProd).
struct TwoTerm {
    double hi;
    double lo;
};

constexpr TwoTerm two_sum(double a, double b) noexcept
{
    const double s = a + b;
    const double bb = s - a;
    const double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline TwoTerm two_prod(double a, double b) noexcept
{
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

/// Neumaier's variant of Kahan summation.  Also tracks the sum of absolute
/// values so callers can estimate cancellation.
class CompensatedSum {
public:
    void add(double x) noexcept
    {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
        abs_ += std::fabs(x);
    }

    CompensatedSum& operator+=(double x) noexcept
    {
        add(x);
        return *this;
    }

    double value() const noexcept { return sum_ + comp_; }
    double abs_sum() const noexcept { return abs_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
    double abs_ = 0.0;
};

/// Minimal double-double number: enough arithmetic for accumulating
/// products of binary64 values without rounding loss.
class DoubleDouble {
public:
    constexpr DoubleDouble(double x = 0.0) noexcept : hi_(x), lo_(0.0) {}
    constexpr DoubleDouble(double hi, double lo) noexcept : hi_(hi), lo_(lo) {}

    constexpr double hi() const noexcept { return hi_; }
    constexpr double lo() const noexcept { return lo_; }
    explicit constexpr operator double() const noexcept { return hi_ + lo_; }

    friend DoubleDouble operator+(DoubleDouble a, DoubleDouble b) noexcept
    {
        auto s = two_sum(a.hi_, b.hi_);
        auto t = two_sum(a.lo_, b.lo_);
        s.lo += t.hi;
        s = quick(s.hi, s.lo);
        s.lo += t.lo;
        s = quick(s.hi, s.lo);
        return {s.hi, s.lo};
    }

    friend DoubleDouble operator-(DoubleDouble a) noexcept { return {-a.hi_, -a.lo_}; }
    friend DoubleDouble operator-(DoubleDouble a, DoubleDouble b) noexcept { return a + (-b); }

    friend DoubleDouble operator*(DoubleDouble a, DoubleDouble b) noexcept
    {
        auto p = two_prod(a.hi_, b.hi_);
        p.lo += a.hi_ * b.lo_ + a.lo_ * b.hi_;
        p = quick(p.hi, p.lo);
        return {p.hi, p.lo};
    }

    DoubleDouble& operator+=(DoubleDouble b) noexcept { return *this = *this + b; }
    DoubleDouble& operator*=(DoubleDouble b) noexcept { return *this = *this * b; }

private:
    static constexpr TwoTerm quick(double a, double b) noexcept
    {
        const double s = a + b;
        return {s, b - (s - a)};
    }

    double hi_;
    double lo_;
};

}  // namespace astkit
