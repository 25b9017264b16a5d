"""Error-free transforms and double-double accumulation.

Cancellation-prone series (Bessel power series at moderate argument, the
``1F2`` sum for large ``|x|``, oscillatory-tail partial sums) lose digits
when partial sums are much larger than the result.  The double-double
representation keeps ~32 significant digits through such sums at a small
constant-factor cost, which is enough for every fixed-precision consumer
in this package; evaluations needing more switch to mpmath instead.
"""

from __future__ import annotations

import math

_SPLITTER = 134217729.0  # 2**27 + 1, Dekker splitting constant


def two_sum(a: float, b: float) -> tuple[float, float]:
    """Return (s, e) with s = fl(a+b) and a+b = s+e exactly."""
    s = a + b
    v = s - a
    e = (a - (s - v)) + (b - v)
    return s, e


def quick_two_sum(a: float, b: float) -> tuple[float, float]:
    """two_sum under the assumption |a| >= |b|."""
    s = a + b
    e = b - (s - a)
    return s, e


def _split(a: float) -> tuple[float, float]:
    t = _SPLITTER * a
    hi = t - (t - a)
    return hi, a - hi


def two_prod(a: float, b: float) -> tuple[float, float]:
    """Return (p, e) with p = fl(a*b) and a*b = p+e exactly."""
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    e = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, e


class DD:
    """Unevaluated sum hi + lo of two floats; ~32 significant digits."""

    __slots__ = ("hi", "lo")

    def __init__(self, hi: float = 0.0, lo: float = 0.0):
        self.hi = hi
        self.lo = lo

    def __repr__(self):
        return f"DD({self.hi!r}, {self.lo!r})"

    def __float__(self):
        return self.hi + self.lo

    def __neg__(self):
        return DD(-self.hi, -self.lo)

    def __abs__(self):
        return abs(self.hi + self.lo)

    def __add__(self, other):
        if isinstance(other, DD):
            s, e = two_sum(self.hi, other.hi)
            e += self.lo + other.lo
            s, e = quick_two_sum(s, e)
            return DD(s, e)
        s, e = two_sum(self.hi, float(other))
        e += self.lo
        s, e = quick_two_sum(s, e)
        return DD(s, e)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other if isinstance(other, DD) else -float(other))

    def __rsub__(self, other):
        return (-self) + float(other)

    def __mul__(self, other):
        if isinstance(other, DD):
            p, e = two_prod(self.hi, other.hi)
            e += self.hi * other.lo + self.lo * other.hi
            p, e = quick_two_sum(p, e)
            return DD(p, e)
        f = float(other)
        p, e = two_prod(self.hi, f)
        e += self.lo * f
        p, e = quick_two_sum(p, e)
        return DD(p, e)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, DD):
            other = DD(float(other))
        q1 = self.hi / other.hi
        r = self - other * q1
        q2 = r.hi / other.hi
        r = r - other * q2
        q3 = r.hi / other.hi
        s, e = quick_two_sum(q1, q2)
        return DD(s, e) + q3

    def __rtruediv__(self, other):
        return DD(float(other)) / self


class ComplexDD:
    """Complex number with double-double real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0.0, im=0.0):
        self.re = re if isinstance(re, DD) else DD(float(re))
        self.im = im if isinstance(im, DD) else DD(float(im))

    @classmethod
    def from_complex(cls, v: complex) -> "ComplexDD":
        v = complex(v)
        return cls(DD(v.real), DD(v.imag))

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"ComplexDD({self.to_complex()!r})"

    def __neg__(self):
        return ComplexDD(-self.re, -self.im)

    def __add__(self, other):
        o = other if isinstance(other, ComplexDD) else ComplexDD.from_complex(other)
        return ComplexDD(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = other if isinstance(other, ComplexDD) else ComplexDD.from_complex(other)
        return ComplexDD(self.re - o.re, self.im - o.im)

    def __mul__(self, other):
        o = other if isinstance(other, ComplexDD) else ComplexDD.from_complex(other)
        return ComplexDD(self.re * o.re - self.im * o.im,
                         self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = other if isinstance(other, ComplexDD) else ComplexDD.from_complex(other)
        den = o.re * o.re + o.im * o.im
        num_re = self.re * o.re + self.im * o.im
        num_im = self.im * o.re - self.re * o.im
        return ComplexDD(num_re / den, num_im / den)

    def abs_estimate(self) -> float:
        return math.hypot(float(self.re), float(self.im))


def neumaier_sum(values) -> float:
    """Compensated (Neumaier) sum of an iterable of floats."""
    s = 0.0
    c = 0.0
    for v in values:
        t = s + v
        if abs(s) >= abs(v):
            c += (s - t) + v
        else:
            c += (v - t) + s
        s = t
    return s + c
