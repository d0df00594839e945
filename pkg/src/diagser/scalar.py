"""Exact Gaussian-rational scalars: re + im*i with Fraction parts.

All arithmetic is exact; there is no float path anywhere in the package.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

ScalarLike = Union["Scalar", int, Fraction]


class Scalar:
    """A Gaussian rational, immutable. Denominators stay positive and reduced
    because Fraction guarantees it."""

    __slots__ = ("re", "im", "_hash")

    def __init__(self, re: ScalarLike = 0, im=0):
        if isinstance(re, Scalar):
            assert im == 0
            object.__setattr__(self, "re", re.re)
            object.__setattr__(self, "im", re.im)
        else:
            object.__setattr__(self, "re", Fraction(re))
            object.__setattr__(self, "im", Fraction(im))
        object.__setattr__(self, "_hash", hash((self.re, self.im)))

    def __setattr__(self, *a):
        raise AttributeError("Scalar is immutable")

    # -- arithmetic ------------------------------------------------------

    @staticmethod
    def _coerce(x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return Scalar(x)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar(self.re * o.re - self.im * o.im,
                      self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("inverse of zero Scalar")
        return Scalar(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- predicates ------------------------------------------------------

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return self._hash

    @property
    def is_real(self) -> bool:
        return self.im == 0

    # -- misc ------------------------------------------------------------

    def __repr__(self):
        return f"Scalar({self.re!r}, {self.im!r})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)

_I_POWERS = (ONE, I, Scalar(-1), Scalar(0, -1))


def i_power(n: int) -> Scalar:
    """i**n for any integer n."""
    return _I_POWERS[n % 4]


def sqrt_rational(x: Fraction) -> tuple[Scalar, Fraction]:
    """Exact square root of a nonzero rational as (coefficient, radicand).

    Returns (c, r) with sqrt(x) = c * sqrt(r), r a squarefree-ish positive
    rational (largest square factors pulled out of numerator and denominator),
    and c picking up i for negative x. Principal branch: sqrt(-1) = i.
    """
    if x == 0:
        raise ZeroDivisionError("sqrt of zero has no unit representation")
    coeff = ONE
    if x < 0:
        coeff = I
        x = -x
    num_sq, num_rad = _split_square(x.numerator)
    den_sq, den_rad = _split_square(x.denominator)
    # sqrt(n/d) = (ns/ds) * sqrt(nr/dr) = (ns/(ds*dr)) * sqrt(nr*dr)
    coeff = coeff * Scalar(Fraction(num_sq, den_sq * den_rad))
    return coeff, Fraction(num_rad * den_rad)


def _split_square(n: int) -> tuple[int, int]:
    """n = s*s*r with r squarefree; returns (s, r). Trial division — the
    radicands in this package come from small unit coefficients."""
    s, r = 1, 1
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        s *= d ** (e // 2)
        if e % 2:
            r *= d
        d += 1 if d == 2 else 2
    return s, r * n
