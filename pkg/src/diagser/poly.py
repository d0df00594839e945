"""Sparse polynomials over the coupling monomials with Gaussian-rational
coefficients: the concrete coefficient ring for every series in the package.

Beyond ring arithmetic this module carries the graded machinery the
transforms need: inversion of graded units (a unit term plus a
filter-nilpotent tail, e.g. 1 - u*l2), and exponentials/logarithms of
filter-nilpotent arguments.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

from .context import Caps
from .errors import FilterTooLoose, NonUnitConstantTerm
from .monomial import Monomial, ONE_M, is_lambda, msym
from .scalar import ONE as S_ONE, Scalar

PolyLike = Union["Poly", Scalar, Monomial, int, Fraction]


class Poly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Scalar] | Iterable[tuple[Monomial, Scalar]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        d: dict[Monomial, Scalar] = {}
        for m, s in items:
            if not isinstance(s, Scalar):
                s = Scalar(s)
            if s:
                prev = d.get(m)
                s = prev + s if prev is not None else s
                if s:
                    d[m] = s
                elif m in d:
                    del d[m]
        object.__setattr__(self, "terms", d)

    def __setattr__(self, *a):
        raise AttributeError("Poly is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def coerce(x: PolyLike) -> "Poly":
        if isinstance(x, Poly):
            return x
        if isinstance(x, Monomial):
            return Poly({x: S_ONE})
        if isinstance(x, (Scalar, int, Fraction)):
            return Poly({ONE_M: Scalar(x)})
        raise TypeError(f"cannot coerce {type(x).__name__} to Poly")

    @staticmethod
    def scalar(s) -> "Poly":
        return Poly({ONE_M: Scalar(s)})

    @staticmethod
    def sym(name: str, e: int = 1) -> "Poly":
        return Poly({msym(name, e): S_ONE})

    # -- ring ops ----------------------------------------------------------

    def __add__(self, other):
        try:
            o = Poly.coerce(other)
        except TypeError:
            return NotImplemented
        d = dict(self.terms)
        for m, s in o.terms.items():
            prev = d.get(m)
            v = prev + s if prev is not None else s
            if v:
                d[m] = v
            elif m in d:
                del d[m]
        out = Poly.__new__(Poly)
        object.__setattr__(out, "terms", d)
        return out

    __radd__ = __add__

    def __neg__(self):
        out = Poly.__new__(Poly)
        object.__setattr__(out, "terms", {m: -s for m, s in self.terms.items()})
        return out

    def __sub__(self, other):
        try:
            o = Poly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = Poly.coerce(other)
        except TypeError:
            return NotImplemented
        if not self.terms or not o.terms:
            return ZERO_P
        d: dict[Monomial, Scalar] = {}
        for m1, s1 in self.terms.items():
            for m2, s2 in o.terms.items():
                m = m1 * m2
                s = s1 * s2
                prev = d.get(m)
                v = prev + s if prev is not None else s
                if v:
                    d[m] = v
                elif m in d:
                    del d[m]
        out = Poly.__new__(Poly)
        object.__setattr__(out, "terms", d)
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.unit_inverse() ** (-n)
        out, base = ONE_P, self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    # -- predicates / accessors ---------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (Scalar, Monomial, int, Fraction)):
            other = Poly.coerce(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def coeff(self, m: Monomial) -> Scalar:
        return self.terms.get(m, Scalar(0))

    @property
    def constant(self) -> Scalar:
        """Coefficient of the empty monomial."""
        return self.terms.get(ONE_M, Scalar(0))

    def single_term(self):
        if len(self.terms) == 1:
            return next(iter(self.terms.items()))
        return None

    def is_unit(self) -> bool:
        """A single invertible term (nonzero scalar times a Laurent-only monomial)."""
        t = self.single_term()
        return t is not None and t[0].is_invertible()

    def unit_inverse(self) -> "Poly":
        t = self.single_term()
        if t is None or not t[0].is_invertible():
            raise NonUnitConstantTerm(f"not a unit: {self}")
        m, s = t
        return Poly({m.inverse(): s.inverse()})

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: t[0].sort_key())

    def __iter__(self):
        return iter(self.sorted_terms())

    def __repr__(self):
        if not self.terms:
            return "Poly(0)"
        return "Poly(" + " + ".join(f"{s}*{m}" for m, s in self.sorted_terms()) + ")"

    # -- support scans -------------------------------------------------------

    def min_support(self) -> dict[str, int]:
        """Per-symbol minimum exponent over all terms (0 when a term omits it)."""
        syms: set[str] = set()
        for m in self.terms:
            syms.update(s for s, _ in m.exps)
        out = {}
        for s in syms:
            e = min(m.exp(s) for m in self.terms)
            if e != 0:
                out[s] = e
        return out

    def min_lambda_count(self) -> int:
        return min((m.lambda_count() for m in self.terms), default=0)

    def has_symbol(self, sym: str) -> bool:
        return any(m.exp(sym) != 0 for m in self.terms)

    # -- filtering / grading ---------------------------------------------------

    def filtered(self, caps: Caps) -> "Poly":
        if all(caps.allows(m) for m in self.terms):
            return self
        return Poly({m: s for m, s in self.terms.items() if caps.allows(m)})

    def _nilpotency_budget(self, caps: Caps) -> int:
        """Budget certifying that powers of self die under caps; raises when
        the filter cannot certify it."""
        for m in self.terms:
            if any(e < 0 for _s, e in m.exps):
                raise FilterTooLoose(f"mixed-sign tail term {m} cannot be bounded")
            if not caps.raises_bounded_coordinate(m):
                raise FilterTooLoose(f"tail term {m} is not bounded by the filter")
        budget = caps.iteration_budget()
        if budget is None:
            raise FilterTooLoose("filter has no bounded coordinate")
        return budget

    def graded_inverse(self, caps: Caps) -> "Poly":
        """Inverse of a graded unit: one invertible pivot term whose cofactor
        tail is filter-nilpotent, e.g. (-u^-1 + l2)^-1 = -u(1 - u*l2)^-1."""
        if not self.terms:
            raise NonUnitConstantTerm("zero has no inverse")
        if self.is_unit():
            return self.unit_inverse()
        last_err: Exception | None = None
        for pivot_m, pivot_s in self.sorted_terms():
            if not pivot_m.is_invertible():
                continue
            pivot_inv = Poly({pivot_m.inverse(): pivot_s.inverse()})
            r = (ONE_P - (self * pivot_inv)).filtered(caps)
            try:
                budget = r._nilpotency_budget(caps) if r else 0
            except FilterTooLoose as e:
                last_err = e
                continue
            acc, power = ONE_P, ONE_P
            for _ in range(budget):
                power = (power * r).filtered(caps)
                if not power:
                    break
                acc = acc + power
            else:
                if power:
                    last_err = FilterTooLoose("tail power did not vanish within budget")
                    continue
            return pivot_inv * acc
        raise NonUnitConstantTerm(
            f"no pivot makes {self} a graded unit under the filter"
        ) from last_err

    def exp_graded(self, caps: Caps) -> "Poly":
        """exp of a filter-nilpotent polynomial (no constant scalar term)."""
        if self.constant:
            raise NonUnitConstantTerm("exp argument has a constant scalar part")
        if not self.terms:
            return ONE_P
        budget = self._nilpotency_budget(caps)
        acc, power = ONE_P, ONE_P
        for v in range(1, budget + 1):
            power = (power * self).filtered(caps)
            if not power:
                break
            acc = acc + power * Scalar(Fraction(1, _factorial(v)))
        return acc

    def log_graded(self, caps: Caps) -> "Poly":
        """log of 1 + tail with a filter-nilpotent tail."""
        if self.constant != S_ONE:
            raise NonUnitConstantTerm("log argument must have constant scalar 1")
        eps = self - ONE_P
        if not eps.terms:
            return ZERO_P
        eps = eps.filtered(caps)
        budget = eps._nilpotency_budget(caps)
        acc, power = ZERO_P, ONE_P
        for j in range(1, budget + 1):
            power = (power * eps).filtered(caps)
            if not power:
                break
            acc = acc + power * Scalar(Fraction(-1 if j % 2 == 0 else 1, j))
        return acc

    # -- substitution ------------------------------------------------------

    def substitute(self, assign: Mapping[str, Scalar]) -> "Poly":
        """Replace symbols by exact scalars (negative exponents use inverses)."""
        out = ZERO_P
        for m, s in self.terms.items():
            rest = []
            val = s
            for sym, e in m.exps:
                if sym in assign:
                    val = val * (Scalar(assign[sym]) ** e)
                else:
                    rest.append((sym, e))
            out = out + Poly({Monomial(rest): val})
        return out

    def lambda_values(self, values: Mapping[int, Scalar]) -> "Poly":
        return self.substitute({f"l{k}": v for k, v in values.items()})


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


ZERO_P = Poly()
ONE_P = Poly({ONE_M: S_ONE})
