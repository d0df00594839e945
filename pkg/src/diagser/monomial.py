"""Sparse exponent vectors over the coupling symbols.

Symbols: "u" (edge weight), "h" (loop grader), the auxiliaries "a", "p",
"q", "c", and vertex weights "l1", "l2", ... . The first six are Laurent
(negative exponents allowed); vertex weights must stay nonnegative.
"""

from __future__ import annotations

from typing import Iterable, Mapping

U, H, A, P, Q, C = "u", "h", "a", "p", "q", "c"

LAURENT_SYMBOLS = (U, H, A, P, Q, C)

_RANK = {U: (0, 0), H: (1, 0), A: (3, 0), P: (3, 1), Q: (3, 2), C: (3, 3)}


def lam(k: int) -> str:
    """Vertex-weight symbol for degree k."""
    if k < 1:
        raise ValueError(f"vertex degree must be >= 1, got {k}")
    return f"l{k}"


def is_lambda(sym: str) -> bool:
    return sym.startswith("l") and sym[1:].isdigit()


def lambda_degree(sym: str) -> int:
    return int(sym[1:])


def _rank(sym: str):
    if sym in _RANK:
        return _RANK[sym]
    if is_lambda(sym):
        return (2, lambda_degree(sym))
    raise ValueError(f"unknown symbol {sym!r}")


class Monomial:
    """Immutable sparse monomial; zero exponents are never stored."""

    __slots__ = ("exps", "_hash")

    def __init__(self, exps: Mapping[str, int] | Iterable[tuple[str, int]] = ()):
        items = exps.items() if isinstance(exps, Mapping) else exps
        cleaned = []
        for sym, e in items:
            if e == 0:
                continue
            _rank(sym)
            if e < 0 and is_lambda(sym):
                raise ValueError(f"negative exponent on vertex weight {sym}")
            cleaned.append((sym, e))
        cleaned.sort(key=lambda t: _rank(t[0]))
        object.__setattr__(self, "exps", tuple(cleaned))
        object.__setattr__(self, "_hash", hash(self.exps))

    def __setattr__(self, *a):
        raise AttributeError("Monomial is immutable")

    def exp(self, sym: str) -> int:
        for s, e in self.exps:
            if s == sym:
                return e
        return 0

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not other.exps:
            return self
        if not self.exps:
            return other
        d = dict(self.exps)
        for s, e in other.exps:
            d[s] = d.get(s, 0) + e
        return Monomial(d)

    def __pow__(self, n: int) -> "Monomial":
        if n == 0:
            return ONE_M
        return Monomial({s: e * n for s, e in self.exps})

    def inverse(self) -> "Monomial":
        """Multiplicative inverse; only defined when no vertex weight appears."""
        for s, _e in self.exps:
            if is_lambda(s):
                raise ValueError(f"monomial with vertex weight {s} is not invertible")
        return Monomial({s: -e for s, e in self.exps})

    @property
    def is_one(self) -> bool:
        return not self.exps

    def is_invertible(self) -> bool:
        return all(not is_lambda(s) for s, _ in self.exps)

    def lambda_count(self) -> int:
        """Total number of internal vertices this monomial weights (sum of l_k exponents)."""
        return sum(e for s, e in self.exps if is_lambda(s))

    def lambda_slot_weight(self) -> int:
        """Sum of k * exp(l_k): total attachment slots of the weighted vertices."""
        return sum(lambda_degree(s) * e for s, e in self.exps if is_lambda(s))

    def without(self, sym: str) -> "Monomial":
        return Monomial({s: e for s, e in self.exps if s != sym})

    def sort_key(self):
        """Canonical order: u, h, vertex weights by index, then a, p, q, c."""
        return (self.exp(U), self.exp(H),
                tuple((lambda_degree(s), e) for s, e in self.exps if is_lambda(s)),
                self.exp(A), self.exp(P), self.exp(Q), self.exp(C))

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.exps == other.exps

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Monomial({dict(self.exps)!r})"

    def __str__(self):
        if not self.exps:
            return "1"
        return " ".join(s if e == 1 else f"{s}^{e}" for s, e in self.exps)


ONE_M = Monomial()


def mono(**kwargs: int) -> Monomial:
    """Convenience constructor: mono(u=2, l3=1) -> u^2 l3."""
    return Monomial(kwargs)


def msym(sym: str, e: int = 1) -> Monomial:
    return Monomial({sym: e})
