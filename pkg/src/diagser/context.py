"""Truncation contexts: exact-window bookkeeping for series and filters.

A window (lo, hi) for a symbol means: the true object has support with
exponent >= lo, and stored data is exact for exponents <= hi (hi = None
means unbounded, i.e. the object is exact in that symbol). Absent symbols
carry the implicit window (0, None). The same convention applies to the
principal degree of a series, which makes one set of combination rules
serve both:

  sum:      lo = min(lo1, lo2),  hi = min(hi1, hi2)
  product:  lo = lo1 + lo2,      hi = min(hi1 + lo2, hi2 + lo1)

The product rule is what makes Laurent windows sound: a cell e of a product
is fully determined iff e <= hi_i + lo_j for both orderings.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

from .monomial import Monomial, is_lambda

Window = tuple[int, Optional[int]]

_DEFAULT: Window = (0, None)


def _hi_min(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _hi_add(h: Optional[int], d: int) -> Optional[int]:
    return None if h is None else h + d


def window_meet(w1: Window, w2: Window) -> Window:
    return (min(w1[0], w2[0]), _hi_min(w1[1], w2[1]))


def window_mul(w1: Window, w2: Window) -> Window:
    return (w1[0] + w2[0], _hi_min(_hi_add(w1[1], w2[0]), _hi_add(w2[1], w1[0])))


@dataclass(frozen=True)
class Caps:
    """Per-symbol exponent windows plus an optional total-vertex-weight cap."""

    windows: Mapping[str, Window] = field(default_factory=dict)
    lam_total: Optional[int] = None

    def window(self, sym: str) -> Window:
        return self.windows.get(sym, _DEFAULT)

    def allows(self, m: Monomial) -> bool:
        """Upper-bound filter: drop monomials beyond any hi or the vertex cap.

        Lower bounds are support declarations, not filters; series
        normalization asserts them separately.
        """
        if self.lam_total is not None and m.lambda_count() > self.lam_total:
            return False
        for sym, e in m.exps:
            hi = self.window(sym)[1]
            if hi is not None and e > hi:
                return False
        return True

    def violates_support(self, m: Monomial) -> bool:
        return any(e < self.window(sym)[0] for sym, e in m.exps)

    def _merged(self, other: "Caps", combine) -> "Caps":
        syms = set(self.windows) | set(other.windows)
        wins = {s: combine(self.window(s), other.window(s)) for s in syms}
        wins = {s: w for s, w in wins.items() if w != _DEFAULT}
        return Caps(wins, _hi_min(self.lam_total, other.lam_total))

    def meet(self, other: "Caps") -> "Caps":
        return self._merged(other, window_meet)

    def mul(self, other: "Caps") -> "Caps":
        caps = self._merged(other, window_mul)
        # lam windows always have lo = 0, so the plain min is already right.
        return caps

    def shift_exact(self, support: Mapping[str, int], lam_shift: int = 0) -> "Caps":
        """Window shift for multiplication by an exact factor whose minimal
        support per symbol is `support` (and minimal vertex count lam_shift)."""
        wins = dict(self.windows)
        for sym, d in support.items():
            lo, hi = self.window(sym)
            wins[sym] = (lo + d, _hi_add(hi, d))
        lam = self.lam_total
        if lam is not None:
            lam = lam + lam_shift
        return Caps(wins, lam)

    def with_window(self, sym: str, lo: int, hi: Optional[int]) -> "Caps":
        wins = dict(self.windows)
        wins[sym] = (lo, hi)
        return Caps(wins, self.lam_total)

    def drop(self, sym: str) -> "Caps":
        wins = {s: w for s, w in self.windows.items() if s != sym}
        return Caps(wins, self.lam_total)

    def iteration_budget(self) -> Optional[int]:
        """Upper bound on the length of a monotone chain before some upper
        bound is exceeded; None when nothing is bounded."""
        total = 0
        bounded = False
        for lo, hi in self.windows.values():
            if hi is not None:
                total += hi - min(lo, 0)
                bounded = True
        if self.lam_total is not None:
            total += self.lam_total
            bounded = True
        return total + 1 if bounded else None

    def raises_bounded_coordinate(self, m: Monomial) -> bool:
        """True if m strictly increases a coordinate that has an upper bound
        (so powers of m eventually leave the filter)."""
        if self.lam_total is not None and m.lambda_count() > 0:
            return True
        for sym, e in m.exps:
            if e > 0 and self.window(sym)[1] is not None:
                return True
        return False


@dataclass(frozen=True)
class Ctx:
    """Truncation context of a series: principal variable, principal-degree
    window [min_deg, max_deg], and symbol caps. min_deg < 0 marks a Laurent
    series; power series keep min_deg = 0."""

    var: str
    max_deg: int
    min_deg: int = 0
    caps: Caps = field(default_factory=Caps)

    def __post_init__(self):
        if self.max_deg < self.min_deg:
            raise ValueError("empty truncation window")

    @property
    def is_laurent(self) -> bool:
        return self.min_deg < 0

    def allows(self, m: Monomial) -> bool:
        return self.caps.allows(m)

    def meet(self, other: "Ctx") -> "Ctx":
        lo, hi = window_meet((self.min_deg, self.max_deg), (other.min_deg, other.max_deg))
        assert hi is not None
        return Ctx(self.var, hi, lo, self.caps.meet(other.caps))

    def mul(self, other: "Ctx") -> "Ctx":
        lo, hi = window_mul((self.min_deg, self.max_deg), (other.min_deg, other.max_deg))
        assert hi is not None
        return Ctx(self.var, hi, lo, self.caps.mul(other.caps))

    def with_degree_window(self, min_deg: int, max_deg: int) -> "Ctx":
        return Ctx(self.var, max_deg, min_deg, self.caps)

    def with_var(self, var: str) -> "Ctx":
        return Ctx(var, self.max_deg, self.min_deg, self.caps)

    def with_caps(self, caps: Caps) -> "Ctx":
        return Ctx(self.var, self.max_deg, self.min_deg, caps)


def ctx(var: str, max_deg: int, min_deg: int = 0, *, lam_total: Optional[int] = None,
        **sym_windows) -> Ctx:
    """Shorthand: ctx("y", 6, u=(0, 4)) or ctx("y", 6, u=4) (hi only)."""
    wins = {}
    for sym, w in sym_windows.items():
        if isinstance(w, tuple):
            wins[sym] = w
        else:
            wins[sym] = (0, w)
    return Ctx(var, max_deg, min_deg, Caps(wins, lam_total))
