"""Double-double primitive checks against exact Fraction arithmetic."""

import math
import random
from fractions import Fraction

from voronoisum.accum import DD, ComplexDD, neumaier_sum, two_prod, two_sum


def frac(dd):
    return Fraction(dd.hi) + Fraction(dd.lo)


def test_two_sum_exact():
    rng = random.Random(7)
    for _ in range(500):
        a = rng.uniform(-1e10, 1e10)
        b = rng.uniform(-1e-10, 1e-10)
        s, e = two_sum(a, b)
        assert Fraction(s) + Fraction(e) == Fraction(a) + Fraction(b)


def test_two_prod_exact():
    rng = random.Random(8)
    for _ in range(500):
        a = rng.uniform(-1e8, 1e8)
        b = rng.uniform(-1e8, 1e8)
        p, e = two_prod(a, b)
        assert Fraction(p) + Fraction(e) == Fraction(a) * Fraction(b)


def test_dd_arithmetic_vs_fractions():
    rng = random.Random(9)
    for _ in range(200):
        a = DD(rng.uniform(-10, 10), rng.uniform(-1e-18, 1e-18))
        b = DD(rng.uniform(-10, 10), rng.uniform(-1e-18, 1e-18))
        fa, fb = frac(a), frac(b)
        assert abs(frac(a + b) - (fa + fb)) <= abs(fa + fb) * Fraction(1, 10 ** 30)
        assert abs(frac(a * b) - (fa * fb)) <= abs(fa * fb) * Fraction(1, 10 ** 29) + Fraction(1, 10 ** 40)
        if fb != 0:
            q = frac(a / b)
            assert abs(q - fa / fb) <= abs(fa / fb) * Fraction(1, 10 ** 28) + Fraction(1, 10 ** 40)


def test_dd_catches_cancellation():
    # sum exp(20) Taylor terms at x=-20: double loses ~9 digits, dd does not
    x = -20.0
    acc = DD(0.0)
    term = DD(1.0)
    for m in range(1, 200):
        acc = acc + term
        term = term * x / m
    acc = acc + term
    assert abs(float(acc) - math.exp(-20.0)) < 1e-24


def test_complex_dd_mul_div_roundtrip():
    rng = random.Random(10)
    for _ in range(100):
        a = complex(rng.uniform(-5, 5), rng.uniform(-5, 5))
        b = complex(rng.uniform(-5, 5), rng.uniform(-5, 5))
        if abs(b) < 1e-3:
            continue
        x = ComplexDD.from_complex(a) * ComplexDD.from_complex(b)
        y = x / ComplexDD.from_complex(b)
        assert abs(y.to_complex() - a) < 1e-28 * max(1.0, abs(a))


def test_neumaier_sum():
    vals = [1e16, 1.0, -1e16, 1.0]
    assert neumaier_sum(vals) == 2.0
