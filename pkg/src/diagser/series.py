"""Exact truncated power/Laurent series in one principal variable.

Coefficients are sparse Poly values; every series carries a Ctx describing
the window on which its stored data is exact. Operations are pure and
propagate windows by the sound rules in context.py, so callers can check
whether the cells they care about are covered instead of trusting a global
truncation order.

A power series is a Series whose ctx.min_deg is 0; Laurent series use a
negative min_deg (declared valuation bound, auto-tightened on construction).
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Callable, Mapping, Union

from .context import Caps, Ctx
from .errors import (BadConstantTerm, FilterTooLoose, NonUnitConstantTerm,
                     NonUnitPhiConstant, NonpositiveValuation, NonzeroConstantInner,
                     NotInvertible, OutOfTruncation, VariableMismatch, ZeroSeries)
from .monomial import Monomial, ONE_M, msym
from .poly import ONE_P, Poly, PolyLike, ZERO_P
from .scalar import Scalar

CoeffLike = Union[Poly, Scalar, Monomial, int, Fraction]


class Series:
    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: Ctx, coeffs: Mapping[int, CoeffLike] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        d: dict[int, Poly] = {}
        for k, c in items:
            if k < ctx.min_deg or k > ctx.max_deg:
                if k < ctx.min_deg and Poly.coerce(c):
                    raise ValueError(f"degree {k} below declared support {ctx.min_deg}")
                continue
            p = Poly.coerce(c).filtered(ctx.caps)
            if p:
                d[k] = p
        if d:
            lo = min(d)
            if lo > ctx.min_deg:
                # stored-absent cells inside the window are known zeros, so the
                # support bound can always be tightened to the lowest stored degree
                ctx = ctx.with_degree_window(lo, ctx.max_deg)
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "coeffs", d)

    def __setattr__(self, *a):
        raise AttributeError("Series is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(ctx: Ctx) -> "Series":
        return Series(ctx, {})

    @staticmethod
    def one(ctx: Ctx) -> "Series":
        return Series.xpow(ctx, 0)

    @staticmethod
    def xpow(ctx: Ctx, n: int, coeff: CoeffLike = 1) -> "Series":
        if ctx.min_deg > n:
            ctx = ctx.with_degree_window(n, ctx.max_deg)
        return Series(ctx, {n: coeff})

    @staticmethod
    def constant(ctx: Ctx, c: CoeffLike) -> "Series":
        return Series.xpow(ctx, 0, c)

    # -- accessors ---------------------------------------------------------

    @property
    def var(self) -> str:
        return self.ctx.var

    def coeff(self, k: int) -> Poly:
        """Stored coefficient (zero Poly when absent); no window check."""
        return self.coeffs.get(k, ZERO_P)

    def extract(self, k: int, m: Monomial = ONE_M) -> Scalar:
        """Exact coefficient of var^k * m; OutOfTruncation distinguishes the
        unknown region from a true zero."""
        if k > self.ctx.max_deg or k < self.ctx.min_deg:
            raise OutOfTruncation(f"degree {k} outside window "
                                  f"[{self.ctx.min_deg}, {self.ctx.max_deg}]")
        if not self.ctx.allows(m):
            raise OutOfTruncation(f"monomial {m} outside the truncation filter")
        return self.coeff(k).coeff(m)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def degrees(self):
        return sorted(self.coeffs)

    def sorted_cells(self):
        """Canonical iteration: (degree, monomial, scalar), degree-lex order."""
        for k in self.degrees():
            for m, s in self.coeffs[k].sorted_terms():
                yield k, m, s

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self.var == other.var and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.var, frozenset((k, hash(p)) for k, p in self.coeffs.items())))

    def __repr__(self):
        if not self.coeffs:
            return f"Series<{self.var}>(0)"
        bits = []
        for k, m, s in self.sorted_cells():
            mono = "" if m.is_one else f" {m}"
            bits.append(f"({s}){mono} {self.var}^{k}")
        return f"Series<{self.var}>(" + " + ".join(bits) + ")"

    # -- structural helpers --------------------------------------------------

    def rename(self, var: str) -> "Series":
        return Series(self.ctx.with_var(var), self.coeffs)

    def truncated(self, ctx: Ctx) -> "Series":
        """Restrict to a (sub)window; never widens exactness claims."""
        if ctx.var != self.var:
            raise VariableMismatch(f"{self.var} vs {ctx.var}")
        return Series(self.ctx.meet(ctx), self.coeffs)

    def with_support_min(self, v: int) -> "Series":
        """Tighten the declared valuation bound (cells below v must be absent)."""
        if any(k < v for k in self.coeffs):
            raise ValueError("stored data contradicts the claimed support bound")
        return Series(self.ctx.with_degree_window(v, self.ctx.max_deg), self.coeffs)

    def map_coeffs(self, f: Callable[[int, Poly], Poly], ctx: Ctx | None = None) -> "Series":
        ctx = ctx or self.ctx
        return Series(ctx, {k: f(k, p) for k, p in self.coeffs.items()})

    # -- ring ops ------------------------------------------------------------

    def _check_var(self, other: "Series"):
        if self.var != other.var:
            raise VariableMismatch(f"{self.var} vs {other.var}")

    def __add__(self, other: "Series") -> "Series":
        self._check_var(other)
        ctx = self.ctx.meet(other.ctx)
        d: dict[int, Poly] = dict(self.coeffs)
        for k, p in other.coeffs.items():
            d[k] = d.get(k, ZERO_P) + p
        return Series(ctx, d)

    def __neg__(self) -> "Series":
        return Series(self.ctx, {k: -p for k, p in self.coeffs.items()})

    def __sub__(self, other: "Series") -> "Series":
        return self + (-other)

    def __mul__(self, other: "Series") -> "Series":
        self._check_var(other)
        ctx = self.ctx.mul(other.ctx)
        d: dict[int, Poly] = {}
        for k1, p1 in self.coeffs.items():
            for k2, p2 in other.coeffs.items():
                k = k1 + k2
                if ctx.min_deg <= k <= ctx.max_deg:
                    d[k] = d.get(k, ZERO_P) + p1 * p2
        return Series(ctx, d)

    def scale(self, c: CoeffLike) -> "Series":
        """Multiply by an exact coefficient (window shifts by its support)."""
        p = Poly.coerce(c)
        if p.is_zero:
            return Series.zero(self.ctx)
        caps = self.ctx.caps.shift_exact(p.min_support(), p.min_lambda_count())
        ctx = self.ctx.with_caps(caps)
        return Series(ctx, {k: q * p for k, q in self.coeffs.items()})

    def pow(self, n: int) -> "Series":
        if n < 0:
            return self.invert_mult().pow(-n)
        out = Series.one(self.ctx)
        base = self
        while n:
            if n & 1:
                out = out * base
            if n > 1:
                base = base * base
            n >>= 1
        return out

    # -- calculus --------------------------------------------------------------

    def derive(self) -> "Series":
        lo = self.ctx.min_deg - 1 if self.ctx.is_laurent else 0
        ctx = self.ctx.with_degree_window(lo, self.ctx.max_deg - 1)
        return Series(ctx, {k - 1: p * Scalar(k) for k, p in self.coeffs.items() if k != 0})

    def integrate(self) -> "Series":
        """Antiderivative with constant of integration 0."""
        if self.ctx.is_laurent and self.coeff(-1):
            raise ValueError("cannot integrate a nonzero 1/x term")
        ctx = self.ctx.with_degree_window(self.ctx.min_deg + 1 if self.ctx.is_laurent else 0,
                                          self.ctx.max_deg + 1)
        return Series(ctx, {k + 1: p * Scalar(Fraction(1, k + 1))
                            for k, p in self.coeffs.items()})

    def valuation(self) -> int:
        if not self.coeffs:
            raise ZeroSeries("series vanishes within truncation")
        return min(self.coeffs)

    # -- shifts ------------------------------------------------------------------

    def taylor_shift(self, t) -> "Series":
        """h(x) -> h(x + t).

        For a symbol shift (t a symbol name, typically "c") the result is kept
        on the exact cells deg + c-exp <= max_deg: [x^k c^j] h(x+c) =
        C(k+j, k) h_{k+j}, which needs h exactly up to max_deg. A scalar shift
        uses all stored coefficients and is exact when h is a polynomial of
        true degree <= max_deg.
        """
        if self.ctx.is_laurent:
            raise ValueError("taylor_shift is defined on power series")
        K = self.ctx.max_deg
        out_ctx = self.ctx.with_degree_window(0, K)
        if isinstance(t, str):
            csym = msym(t)
            d: dict[int, Poly] = {}
            for n, p in self.coeffs.items():
                for k in range(0, n + 1):
                    shift = Poly({csym ** (n - k): Scalar(comb(n, k))})
                    d[k] = d.get(k, ZERO_P) + p * shift
            return Series(out_ctx.with_caps(self.ctx.caps.with_window(t, 0, K)), d)
        tv = Scalar(t)
        d = {}
        for n, p in self.coeffs.items():
            for k in range(0, n + 1):
                d[k] = d.get(k, ZERO_P) + p * (Scalar(comb(n, k)) * tv ** (n - k))
        return Series(out_ctx, d)

    # -- exp / log ---------------------------------------------------------------

    def _require_power_series(self, what: str):
        if self.ctx.is_laurent:
            raise ValueError(f"{what} is defined on power series")

    def _require_nonneg_windows(self, what: str):
        for _s, (lo, _hi) in self.ctx.caps.windows.items():
            if lo < 0:
                raise FilterTooLoose(
                    f"{what} requires nonnegative grading windows; "
                    "normalize out the Laurent unit first")

    def exp(self) -> "Series":
        """exp via the binomial recurrence b_{n+1} = a_{n+1} + sum C(n,k) b_k a_{n+1-k}
        on factorial-normalized coefficients; a graded constant term is split
        off as a coefficient-level exponential."""
        self._require_power_series("exp")
        self._require_nonneg_windows("exp")
        c0 = self.coeff(0)
        body = self
        prefac = None
        if c0:
            if c0.constant:
                raise BadConstantTerm("exp needs [x^0] = 0 (or a graded constant)")
            prefac = c0.exp_graded(self.ctx.caps)
            body = self - Series.constant(self.ctx, c0)
        K = self.ctx.max_deg
        a = [body.coeff(n) * Scalar(factorial(n)) for n in range(K + 1)]
        b: list[Poly] = [ONE_P]
        caps = self.ctx.caps
        for n in range(K):
            acc = a[n + 1]
            for k in range(1, n + 1):
                acc = acc + b[k] * a[n + 1 - k] * Scalar(comb(n, k))
            b.append(acc.filtered(caps))
        out = Series(self.ctx.with_degree_window(0, K),
                     {n: b[n] * Scalar(Fraction(1, factorial(n)))
                      for n in range(K + 1)})
        return out.scale(prefac) if prefac is not None else out

    def log(self) -> "Series":
        """Inverse of exp by the same recurrence; needs [x^0] = 1 up to a
        graded tail (whose log is taken at the coefficient level)."""
        self._require_power_series("log")
        self._require_nonneg_windows("log")
        c0 = self.coeff(0)
        if c0.constant != Scalar(1):
            raise BadConstantTerm(f"log needs constant scalar term 1, got {c0.constant}")
        extra = None
        body = self
        if c0 != ONE_P:
            extra = c0.log_graded(self.ctx.caps)
            body = self.scale(c0.graded_inverse(self.ctx.caps))
        K = self.ctx.max_deg
        bs = [body.coeff(n) * Scalar(factorial(n)) for n in range(K + 1)]
        a: list[Poly] = [ZERO_P]
        caps = self.ctx.caps
        for n in range(K):
            acc = bs[n + 1]
            for k in range(1, n + 1):
                acc = acc - bs[k] * a[n + 1 - k] * Scalar(comb(n, k))
            a.append(acc.filtered(caps))
        out = Series(self.ctx.with_degree_window(0, K),
                     {n: a[n] * Scalar(Fraction(1, factorial(n)))
                      for n in range(1, K + 1)})
        if extra is not None:
            out = out + Series.constant(out.ctx, extra)
        return out

    # -- multiplicative inverse -----------------------------------------------------

    def invert_mult(self) -> "Series":
        """s^{-1} with s = x^v * (unit + tail): the canonical presentation is
        inverted termwise; Laurent output when v > 0."""
        if self.is_zero:
            raise NonUnitConstantTerm("zero series has no inverse")
        v = self.valuation()
        shifted = Series(self.ctx.with_degree_window(0, self.ctx.max_deg - v),
                         {k - v: p for k, p in self.coeffs.items()})
        inv = shifted._invert_unit_leading()
        ctx = inv.ctx.with_degree_window(inv.ctx.min_deg - v, inv.ctx.max_deg - v)
        return Series(ctx, {k - v: p for k, p in inv.coeffs.items()})

    def _invert_unit_leading(self) -> "Series":
        c0 = self.coeff(0)
        pivot = c0.single_term()
        if pivot is not None and pivot[0].is_invertible():
            mu = Poly({pivot[0]: pivot[1]})
        else:
            # pick the graded pivot: first invertible term in canonical order
            mu = None
            for m, s in c0.sorted_terms():
                if m.is_invertible():
                    mu = Poly({m: s})
                    break
            if mu is None:
                raise NonUnitConstantTerm(f"constant term {c0} has no invertible term")
        mu_inv = mu.unit_inverse()
        tilde = self.scale(mu_inv)
        for _k, p in tilde.coeffs.items():
            if any(e < 0 for e in p.min_support().values()):
                raise NonUnitConstantTerm(
                    "pivot does not dominate the series under the filter")
        caps = tilde.ctx.caps
        t0 = tilde.coeff(0).graded_inverse(caps)
        out: dict[int, Poly] = {0: t0}
        for k in range(1, tilde.ctx.max_deg + 1):
            acc = ZERO_P
            for j in range(1, k + 1):
                sj = tilde.coeff(j)
                if sj:
                    acc = acc + sj * out[k - j]
            out[k] = (-(t0 * acc)).filtered(caps)
        return Series(tilde.ctx, out).scale(mu_inv)

    # -- composition -------------------------------------------------------------

    def compose(self, g: "Series") -> "Series":
        """f(g(.)) for power-series f and g with [x^0] g = 0 (Horner)."""
        self._require_power_series("compose")
        if g.coeff(0):
            raise NonzeroConstantInner("inner series must have zero constant term")
        g = g.with_support_min(max(g.ctx.min_deg, 1)) if not g.is_zero else g
        degs = self.degrees()
        if not degs:
            return Series.zero(g.ctx)
        res = _const_like(g.ctx, self.coeff(degs[-1]))
        for k in range(degs[-1] - 1, -1, -1):
            res = res * g
            ck = self.coeff(k)
            if ck:
                res = res + _const_like(res.ctx, ck)
        return res

    def substitute_symbols(self, assign: Mapping[str, Scalar]) -> "Series":
        """Exact numeric substitution for coupling symbols; windows for the
        substituted symbols are dropped."""
        caps = self.ctx.caps
        for sym in assign:
            caps = caps.drop(sym)
        ctx = self.ctx.with_caps(caps)
        return Series(ctx, {k: p.substitute(assign) for k, p in self.coeffs.items()})


def _const_like(ctx: Ctx, p: Poly) -> Series:
    """Wrap an exact coefficient as a degree-0 series with exact windows."""
    sup = p.min_support()
    caps = Caps({s: (e, None) for s, e in sup.items()}, None)
    c = Ctx(ctx.var, ctx.max_deg, min(ctx.min_deg, 0), caps)
    return Series(c, {0: p})


def exact_series(var: str, coeffs: Mapping[int, CoeffLike], max_deg: int | None = None,
                 min_deg: int | None = None) -> Series:
    """Build a series from exact polynomial data; windows are derived from
    the supports so nothing is claimed truncated."""
    polys = {k: Poly.coerce(c) for k, c in coeffs.items()}
    polys = {k: p for k, p in polys.items() if p}
    lo = min(polys, default=0)
    hi = max(polys, default=0)
    if max_deg is None:
        max_deg = hi
    if min_deg is None:
        min_deg = min(lo, 0)
    sup: dict[str, int] = {}
    for p in polys.values():
        for s, e in p.min_support().items():
            sup[s] = min(sup.get(s, 0), e)
    caps = Caps({s: (e, None) for s, e in sup.items()}, None)
    return Series(Ctx(var, max_deg, min_deg, caps), polys)


# -- Lagrange inversion and friends ------------------------------------------------


def lagrange_solve(phi: Series, f: Series, K: int, out_var: str = "t") -> Series:
    """Coefficients of f(w) where w = t * phi(w):
    [t^k] f(w) = (1/k) [x^{k-1}] f'(x) phi(x)^k, and [t^0] f(w) = f(0)."""
    if phi.is_zero or phi.coeff(0).is_zero:
        raise NonUnitPhiConstant("phi(0) must be a unit")
    c0 = phi.coeff(0)
    if c0.single_term() is None or not c0.is_unit():
        # graded units are fine; plain non-units are not
        try:
            c0.graded_inverse(phi.ctx.caps)
        except NonUnitConstantTerm as e:
            raise NonUnitPhiConstant(str(e)) from e
    fp = f.derive()
    out: dict[int, Poly] = {0: f.coeff(0)}
    caps = None
    power = Series.one(phi.ctx)
    for k in range(1, K + 1):
        power = power * phi
        prod = fp * power
        if k - 1 > prod.ctx.max_deg:
            raise OutOfTruncation(f"phi window too shallow for degree {k}")
        out[k] = prod.coeff(k - 1) * Scalar(Fraction(1, k))
        caps = prod.ctx.caps if caps is None else caps.meet(prod.ctx.caps)
    ctx = Ctx(out_var, K, 0, caps or phi.ctx.caps)
    return Series(ctx, out)


def comp_inverse(a: Series) -> Series:
    """Compositional inverse: a(b(x)) = b(a(x)) = x within truncation."""
    if a.ctx.is_laurent:
        raise NotInvertible("input must be a power series")
    if a.coeff(0):
        raise NotInvertible("constant term must vanish")
    lin = a.coeff(1)
    if not lin:
        raise NotInvertible("linear coefficient must be a unit, got 0")
    K = a.ctx.max_deg
    phi = Series(a.ctx.with_degree_window(0, K - 1),
                 {k - 1: p for k, p in a.coeffs.items()})
    try:
        phi_inv = phi.invert_mult()
    except NonUnitConstantTerm as e:
        raise NotInvertible(f"linear coefficient is not a unit: {e}") from e
    ident = Series.xpow(Ctx(phi_inv.ctx.var, K + 1, 0, phi_inv.ctx.caps), 1)
    out = lagrange_solve(phi_inv, ident, K, out_var=a.var)
    return out.with_support_min(1)


def laurent_compose(f: Series, r: Series) -> Series:
    """f(r(z)) for Laurent f and r with val(r) >= 1; used by residue checks."""
    v = r.valuation()
    if v <= 0:
        raise NonpositiveValuation(f"val(r) = {v} must be positive")
    neg_degs = [k for k in f.coeffs if k < 0]
    pos = Series(Ctx(f.var, f.ctx.max_deg, 0, f.ctx.caps),
                 {k: p for k, p in f.coeffs.items() if k >= 0})
    out = pos.compose(r)
    if neg_degs:
        r_inv = r.invert_mult()
        depth = -min(neg_degs)
        power = Series.one(r_inv.ctx)
        inv_pows = {}
        for n in range(1, depth + 1):
            power = power * r_inv
            inv_pows[n] = power
        for k in neg_degs:
            out = out + inv_pows[-k].scale(f.coeff(k))
    return out


def residue_compose_check(f: Series, r: Series) -> tuple[Poly, Poly]:
    """Return (alpha * [x^-1] f,  [z^-1] f(r(z)) r'(z)); the residue
    composition identity asserts the two entries are equal."""
    alpha = r.valuation()
    if alpha <= 0:
        raise NonpositiveValuation(f"val(r) = {alpha} must be positive")
    lhs = f.coeff(-1) * Scalar(alpha)
    rhs_series = laurent_compose(f, r) * r.derive()
    if rhs_series.ctx.max_deg < -1:
        raise OutOfTruncation("truncation too shallow to determine the residue")
    return lhs, rhs_series.coeff(-1)
