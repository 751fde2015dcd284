#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
"""Regenerates reference_values.hpp from mpmath at 80 significant digits.

Usage: python3 gen_reference.py > reference_values.hpp
"""
from mpmath import (mp, mpf, besseli, besselk, struvel, ei, loggamma, exp,
                    sqrt, pi, gamma, quadosc, sin, cos, inf, binomial,
                    factorial, nstr)

mp.dps = 80


def b(s):
    """Decimal literal rounded to the binary64 value the C++ side sees."""
    return mpf(float(s))


def lit(v):
    return nstr(v, 20, min_fixed=-1, max_fixed=-1)


def table(name, fields, rows):
    print(f"inline constexpr {name}Row k{name}[] = {{")
    for r in rows:
        print("    {" + ", ".join(lit(x) if not isinstance(x, str) else x for x in r) + "},")
    print("};")
    print()


def struct(name, fields):
    print(f"struct {name}Row {{ " + " ".join(f"double {f};" for f in fields) + " };")


print("// Generated by gen_reference.py (mpmath, 80 digits). Do not edit by hand.")
print("#pragma once")
print()
print("namespace astkit::reference {")
print()

struct("LnGamma", ["x", "value"])
table("LnGamma", None, [(b(x), loggamma(b(x))) for x in
                        ["1e-6", "0.5", "1.5", "1.999", "2.001", "10.3", "123.25", "1e3", "1e6"]])

struct("BesselI", ["nu", "x", "value"])
rows = []
for nu in ["-7.3", "-2.5", "-0.7", "0", "0.3", "1", "2.5", "10", "25.5", "50"]:
    for x in ["1e-3", "0.5", "2", "10", "29", "31", "50", "100"]:
        rows.append((b(nu), b(x), besseli(b(nu), b(x))))
table("BesselI", None, rows)

struct("BesselIScaled", ["nu", "x", "value"])
rows = []
for nu in ["0", "2.1", "-0.7", "10", "50"]:
    for x in ["200", "800", "5000", "1e6", "1e300"]:
        xx = b(x)
        rows.append((b(nu), xx, exp(-xx) * besseli(b(nu), xx)))
table("BesselIScaled", None, rows)

struct("BesselK", ["nu", "x", "value"])
rows = []
for nu in ["0", "0.3", "1", "1.7", "2.5", "10", "25", "50"]:
    for x in ["1e-6", "1e-3", "0.5", "3.4", "10", "50", "200", "700"]:
        v = besselk(b(nu), b(x))
        if mpf("1e-300") < v < mpf("1e300"):
            rows.append((b(nu), b(x), v))
table("BesselK", None, rows)

struct("StruveL", ["nu", "x", "value"])
rows = []
for nu in ["-29.7", "-10.25", "-3.3", "-1.3", "-0.5", "0", "0.5", "1", "4.2", "30"]:
    for x in ["0.1", "1", "2.5", "10", "30", "60"]:
        rows.append((b(nu), b(x), struvel(b(nu), b(x))))
table("StruveL", None, rows)

struct("Ei", ["x", "value"])
rows = []
for x in ["1e-8", "1e-3", "0.1", "0.3", "0.37", "0.3725", "0.38", "0.45", "1", "5", "20",
          "39.9", "40.1", "100", "500", "700"]:
    for s in (1, -1):
        xx = s * b(x)
        rows.append((xx, ei(xx)))
table("Ei", None, rows)

struct("EiScaled", ["x", "eneg", "epos"])
rows = []
for x in ["1e-3", "1", "10", "39.5", "40.5", "100", "1000", "1e5", "1e300"]:
    xx = b(x)
    rows.append((xx, exp(-xx) * ei(xx), exp(xx) * ei(-xx)))
table("EiScaled", None, rows)

# I_mu(z) - L_{-mu}(z), the cancellation-prone combination.
struct("Gap", ["mu", "z", "value"])
rows = []
for mu in ["-0.45", "0", "0.35", "0.500001", "1.25", "2.1", "5.3"]:
    for z in ["1e-6", "0.5", "3", "15", "30", "39", "41", "80"]:
        m, zz = b(mu), b(z)
        rows.append((m, zz, besseli(m, zz) - struvel(-m, zz)))
table("Gap", None, rows)


def theorem2(n, x):
    s = 0
    for k in range(1, n + 1):
        inner = sum(factorial(j - 1) * (1 + (-1) ** (k + j)) * x ** (k - j - 1) for j in range(1, k))
        s += binomial(2 * n - k - 1, n - 1) * mpf(2) ** (k - 2 * n) / factorial(k - 1) * (
            x ** (k - 1) * (exp(-x) * ei(x) + (-1) ** k * exp(x) * ei(-x)) - inner)
    return s


def sine_frac(rho, a, b):
    return sqrt(pi) / 2 * gamma(1 - rho) * (a / (2 * b)) ** (rho - mpf(1) / 2) * (
        besseli(rho - mpf(1) / 2, a * b) - struvel(mpf(1) / 2 - rho, a * b))


struct("SineInt", ["n", "a", "b", "value"])
rows = []
for n in range(1, 7):
    for a in ["0.1", "1", "5"]:
        for bv in ["0.5", "1", "2"]:
            aa, bb = b(a), b(bv)
            rows.append((mpf(n), aa, bb, theorem2(n, aa * bb) / bb ** (2 * n - 1)))
table("SineInt", None, rows)

struct("SineFrac", ["rho", "a", "b", "value"])
rows = []
for rho in ["0.05", "0.3", "0.5", "1.5", "2.5", "3.7", "6.2"]:
    for a, bv in [("0.1", "0.5"), ("1", "1"), ("5", "2"), ("12", "2.5")]:
        rr, aa, bb = b(rho), b(a), b(bv)
        rows.append((rr, aa, bb, sine_frac(rr, aa, bb)))
table("SineFrac", None, rows)

struct("Limit", ["n", "x", "value"])
rows = []
for n in range(1, 5):
    for x in ["0.5", "1", "5", "20"]:
        xx = b(x)
        rows.append((mpf(n), xx, 2 / pi ** mpf(1.5) * factorial(n - 1) * (2 / xx) ** (n - mpf(1) / 2) * theorem2(n, xx)))
table("Limit", None, rows)

print("}  // namespace astkit::reference")
