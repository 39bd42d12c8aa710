"""Exact integer arithmetic for partition sizes and round charges.

Round counts come from expressions like ceil(c * n**(a/b)).  Float powers
drift near integer boundaries (math.pow(32768, 0.2) is not exactly 8.0),
which would corrupt determinism and cost monotonicity, so everything here
is evaluated with integer comparisons only.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]


def ceil_div(a: int, b: int) -> int:
    if b <= 0:
        raise ValueError("ceil_div needs a positive divisor")
    return -(-a // b)


def floor_root(x: int, k: int) -> int:
    """Largest r >= 0 with r**k <= x."""
    if x < 0 or k < 1:
        raise ValueError("floor_root needs x >= 0, k >= 1")
    if x in (0, 1) or k == 1:
        return x
    r = int(round(x ** (1.0 / k)))
    r = max(r, 1)
    while r**k > x:
        r -= 1
    while (r + 1) ** k <= x:
        r += 1
    return r


def ceil_root(x: int, k: int) -> int:
    """Smallest r >= 0 with r**k >= x."""
    r = floor_root(x, k)
    return r if r**k == x else r + 1


def ceil_scaled_pow(base: Rational, exp: Rational, scale: Rational = 1) -> int:
    """Exact ceil(scale * base**exp) for rational base/scale, exp = p/q >= 0.

    Used for every analytic load and partition size; base may be a fraction
    (e.g. the average degree m/n) and scale carries density or multiplicity
    factors.
    """
    base = Fraction(base)
    exp = Fraction(exp)
    scale = Fraction(scale)
    if base < 0 or scale < 0 or exp < 0:
        raise ValueError("ceil_scaled_pow expects non-negative arguments")
    if scale == 0 or base == 0:
        return 0
    if exp == 0:
        return ceil_div(scale.numerator, scale.denominator)
    p, q = exp.numerator, exp.denominator
    bn, bd = base.numerator, base.denominator
    sn, sd = scale.numerator, scale.denominator
    # k >= scale * base**(p/q)  <=>  (k*sd)**q * bd**p >= sn**q * bn**p
    rhs = sn**q * bn**p
    lhs_unit = bd**p

    def ok(k: int) -> bool:
        return k >= 0 and (k * sd) ** q * lhs_unit >= rhs

    k = int(float(scale) * float(base) ** float(exp))
    k = max(k, 0)
    while not ok(k):
        k += 1
    while k > 0 and ok(k - 1):
        k -= 1
    return k


def ceil_pow(n: Rational, exp: Rational) -> int:
    """Exact ceil(n**exp)."""
    return ceil_scaled_pow(n, exp)


def ceil_scaled_sqrt(x: int, scale: Rational = 1) -> int:
    """Exact ceil(scale * sqrt(x)) for x >= 0."""
    return ceil_scaled_pow(x, Fraction(1, 2), scale)
