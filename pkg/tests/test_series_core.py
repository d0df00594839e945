"""Ring operations, valuation, coefficient extraction, calculus, shifts."""

from fractions import Fraction

import pytest

from diagser import (Ctx, OutOfTruncation, Poly, Scalar, Series, VariableMismatch,
                     ZeroSeries, ctx, mono, msym)


def c(var="y", K=6, **kw):
    return ctx(var, K, **kw)


def S(coeffs, var="y", K=6, **kw):
    return Series(c(var, K, **kw), coeffs)


def test_mul_telescoping():
    one_plus = S({0: 1, 1: 1}, K=3)
    one_minus = S({0: 1, 1: -1}, K=3)
    prod = one_plus * one_minus
    assert prod == S({0: 1, 2: -1}, K=3)


def test_add_collects_coupling_coefficients():
    uy = S({1: msym("u")})
    assert uy + uy == S({1: Poly({msym("u"): Scalar(2)})})


def test_mul_matches_schoolbook_oracle():
    # (y - y^2)(y + y^2) at K=4, against explicit convolution
    a = S({1: 1, 2: -1}, K=4)
    b = S({1: 1, 2: 1}, K=4)
    got = a * b
    expect = {}
    for i, ci in {1: 1, 2: -1}.items():
        for j, cj in {1: 1, 2: 1}.items():
            if i + j <= 4:
                expect[i + j] = expect.get(i + j, 0) + ci * cj
    assert got == S({k: v for k, v in expect.items() if v}, K=4)
    assert got == S({2: 1, 4: -1}, K=4)


def test_variable_mismatch():
    with pytest.raises(VariableMismatch):
        S({1: 1}, var="y") * S({1: 1}, var="x")


def test_valuation_and_additivity():
    a = S({3: 1, 5: 1}, var="x", K=8)
    assert a.valuation() == 3
    b = Series(Ctx("x", 4, -2), {-2: 1, -1: 1})
    assert b.valuation() == -2
    assert (a * b).valuation() == a.valuation() + b.valuation()
    with pytest.raises(ZeroSeries):
        S({}, var="x").valuation()


def test_extract_distinguishes_unknown_from_zero():
    s = S({0: 1, 2: -1}, K=3)
    assert s.extract(2) == Scalar(-1)
    assert s.extract(1) == Scalar(0)
    with pytest.raises(OutOfTruncation):
        s.extract(4)
    t = S({0: 1}, K=3, u=2)
    assert t.extract(0, mono(u=1)) == Scalar(0)
    with pytest.raises(OutOfTruncation):
        t.extract(0, mono(u=3))


def test_derive_integrate():
    u = msym("u")
    s = S({2: Poly({u: Scalar(Fraction(1, 2))})})
    assert s.derive() == S({1: u})
    cube = S({3: Fraction(1, 6)})
    assert cube.derive() == S({2: Fraction(1, 2)})
    sq = S({2: 1})
    assert sq.integrate() == S({3: Fraction(1, 3)}, K=7)
    # round trip on the truncated window
    assert sq.integrate().derive() == sq


def test_taylor_shift_scalar_and_symbol():
    sq = S({2: 1})
    assert sq.taylor_shift(1) == S({0: 1, 1: 2, 2: 1})
    cube = S({3: 1})
    shifted = cube.taylor_shift("c")
    cm = msym("c")
    assert shifted.extract(3) == Scalar(1)
    assert shifted.extract(2, cm) == Scalar(3)
    assert shifted.extract(1, cm ** 2) == Scalar(3)
    assert shifted.extract(0, cm ** 3) == Scalar(1)


def test_taylor_shift_symbol_against_substitution_oracle():
    # truncated exp(y): shift by c, compare with expanding (y + c)^n / n! directly
    K = 3
    e = S({n: Fraction(1, [1, 1, 2, 6][n]) for n in range(K + 1)}, K=K)
    shifted = e.taylor_shift("c")
    oracle = Series.zero(shifted.ctx)
    ybin = S({0: Poly({msym("c"): Scalar(1)}), 1: 1}, K=K)  # y + c
    for n in range(K + 1):
        term = ybin.pow(n).scale(Fraction(1, [1, 1, 2, 6][n]))
        # keep only total degree <= K in (y, c), the exact window of the shift
        keep = {
            k: Poly({m: s for m, s in p.terms.items() if k + m.exp("c") <= K})
            for k, p in term.coeffs.items()
        }
        oracle = oracle + Series(term.ctx, keep)
    for k, m, s in shifted.sorted_cells():
        assert oracle.coeff(k).coeff(m) == s
    for k, m, s in oracle.sorted_cells():
        assert shifted.coeff(k).coeff(m) == s


def test_scale_by_laurent_monomial_shifts_windows():
    s = S({1: msym("u")}, u=(0, 4))
    t = s.scale(mono(u=-1))
    assert t.ctx.caps.window("u") == (-1, 3)
    assert t.coeff(1) == Poly({mono(): Scalar(1)})
