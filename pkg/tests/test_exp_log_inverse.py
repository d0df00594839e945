"""exp/log recurrences, multiplicative and compositional inversion,
Lagrange inversion, residue composition."""

from fractions import Fraction

import pytest

from diagser import (BadConstantTerm, NonUnitConstantTerm, NonzeroConstantInner,
                     NonpositiveValuation, Poly, Scalar, Series, comp_inverse,
                     ctx, exact_series, lagrange_solve, laurent_compose, mono,
                     msym, residue_compose_check)
from diagser.context import Ctx


def S(coeffs, var="y", K=6, **kw):
    return Series(ctx(var, K, **kw), coeffs)


def exp_series(var, K, coeff=1):
    from math import factorial
    return Series(ctx(var, K), {n: Fraction(1, factorial(n)) for n in range(K + 1)})


def test_exp_of_edge_term():
    u = msym("u")
    s = Series(ctx("y", 4, u=4), {2: Poly({u: Scalar(Fraction(1, 2))})})
    e = s.exp()
    assert e.extract(0) == Scalar(1)
    assert e.extract(2, u) == Scalar(Fraction(1, 2))
    assert e.extract(4, u ** 2) == Scalar(Fraction(1, 8))
    assert e.coeff(1).is_zero and e.coeff(3).is_zero


def test_log_of_one_plus_y():
    s = S({0: 1, 1: 1}, K=3)
    assert s.log() == S({1: 1, 2: Fraction(-1, 2), 3: Fraction(1, 3)}, K=3)


def test_exp_log_round_trip():
    l3 = msym("l3")
    s = Series(ctx("y", 6, lam_total=6), {1: 1, 3: l3})
    assert s.exp().log() == s
    t = Series(ctx("y", 6, lam_total=6), {0: 1, 2: l3, 5: Fraction(7, 3)})
    assert t.log().exp() == t


def test_exp_rejects_bad_constant():
    with pytest.raises(BadConstantTerm):
        S({0: 1, 1: 1}).exp()
    with pytest.raises(BadConstantTerm):
        S({0: 2, 1: 1}).log()


def test_log_with_graded_constant_term():
    # constant term 1 + u*l2 is a graded unit; log factors it off exactly
    u_l2 = mono(u=1, l2=1)
    s = Series(ctx("y", 3, u=3, lam_total=3), {0: Poly({mono(): Scalar(1), u_l2: Scalar(1)}), 1: 1})
    w = s.log()
    assert w.exp() == s
    # the constant stratum is log(1 + u*l2) = u*l2 - (u*l2)^2/2 + (u*l2)^3/3
    assert w.extract(0, u_l2) == Scalar(1)
    assert w.extract(0, u_l2 ** 2) == Scalar(Fraction(-1, 2))
    assert w.extract(0, u_l2 ** 3) == Scalar(Fraction(1, 3))


def test_invert_geometric():
    s = S({0: 1, 1: -1})
    inv = s.invert_mult()
    assert inv == S({k: 1 for k in range(7)})
    assert s * inv == Series.one(s.ctx)


def test_invert_unit_monomial_constant():
    u = msym("u")
    s = Series(ctx("y", 3, u=(0, 3)), {0: u})
    assert s.invert_mult().extract(0, mono(u=-1)) == Scalar(1)


def test_invert_graded_unit_guard():
    # (1 - u*l2)^-1 expands as the geometric series while the filter allows
    s = Series(ctx("y", 2, u=3, lam_total=3), {0: Poly({mono(): Scalar(1), mono(u=1, l2=1): Scalar(-1)})})
    inv = s.invert_mult()
    for j in range(4):
        assert inv.extract(0, mono(u=1, l2=1) ** j) == Scalar(1)
    assert (s * inv) == Series.one(s.ctx)


def test_invert_multiply_back_random():
    import random
    rng = random.Random(7)
    for _ in range(10):
        coeffs = {0: Fraction(rng.randint(1, 5), rng.randint(1, 4))}
        for k in range(1, 6):
            coeffs[k] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        s = S(coeffs, K=5)
        assert s * s.invert_mult() == Series.one(s.ctx)


def test_invert_laurent_valuation_shift():
    # x^-2 (1 + x): inverse has valuation 2
    s = Series(Ctx("x", 3, -2), {-2: 1, -1: 1})
    inv = s.invert_mult()
    assert inv.valuation() == 2
    prod = s * inv
    assert prod.coeff(0) == Poly.scalar(1)
    assert all(not prod.coeff(k) for k in prod.degrees() if k != 0)


def test_nonunit_constant_rejected():
    with pytest.raises(NonUnitConstantTerm):
        Series(ctx("y", 3), {0: msym("l2"), 1: 1}).invert_mult()


def test_compose_basic():
    f = S({2: 1}, K=4)
    g = S({1: 1, 3: 1}, K=4)
    assert f.compose(g) == S({2: 1, 4: 2}, K=4)


def test_compose_exp_with_uy():
    e = exp_series("x", 4)
    g = Series(ctx("y", 4, u=4), {1: msym("u")})
    got = e.compose(g)
    from math import factorial
    for j in range(5):
        assert got.extract(j, mono(u=j)) == Scalar(Fraction(1, factorial(j)))


def test_compose_rejects_nonzero_constant():
    with pytest.raises(NonzeroConstantInner):
        S({1: 1}).compose(S({0: 1, 1: 1}))


def test_comp_inverse_identity_and_unit_scaling():
    a = S({1: 1})
    assert comp_inverse(a) == a
    b = Series(ctx("y", 4, u=(0, 4)), {1: msym("u")})
    assert comp_inverse(b).extract(1, mono(u=-1)) == Scalar(1)


def test_comp_inverse_y_minus_y2():
    a = S({1: 1, 2: -1}, K=4)
    inv = comp_inverse(a)
    # oracle: iterate b <- x + b^2 (rearranged a(b) = x), degreewise stable
    b = Series.zero(a.ctx)
    x = Series.xpow(a.ctx, 1)
    for _ in range(5):
        b = x + b * b
    assert inv == b
    assert inv == S({1: 1, 2: 1, 3: 2, 4: 5}, K=4)


def test_comp_inverse_round_trips():
    a = S({1: 1, 2: Fraction(1, 2), 4: -3}, K=6)
    inv = comp_inverse(a)
    assert a.compose(inv) == Series.xpow(a.ctx, 1)
    assert inv.compose(a) == Series.xpow(a.ctx, 1)


def test_lagrange_identity_phi():
    phi = Series.one(ctx("x", 5))
    f = Series.xpow(ctx("x", 5), 1)
    w = lagrange_solve(phi, f, 5)
    assert w == Series.xpow(ctx("t", 5), 1)


def test_lagrange_rooted_tree_counts():
    from math import factorial
    K = 8
    phi = exp_series("x", K)
    f = Series.xpow(ctx("x", K), 1)
    w = lagrange_solve(phi, f, K)
    for n in range(1, K + 1):
        assert w.extract(n) == Scalar(Fraction(n ** (n - 1), factorial(n)))
    assert w.extract(4) == Scalar(Fraction(2, 3))


def test_lagrange_fixed_point_oracle():
    # phi = 1 + x: w solves w = t(1 + w); compare against direct iteration
    K = 7
    phi = S({0: 1, 1: 1}, var="x", K=K)
    f = Series.xpow(ctx("x", K), 1)
    got = lagrange_solve(phi, f, K)
    tctx = ctx("t", K)
    w = Series.zero(tctx)
    t = Series.xpow(tctx, 1)
    for _ in range(K + 1):
        w = t * (Series.one(tctx) + w)
    assert got == w


def test_residue_simple():
    f = Series(Ctx("x", 2, -1), {-1: 1})
    r = Series(Ctx("z", 6, 0), {2: 1})
    lhs, rhs = residue_compose_check(f, r)
    assert lhs == Poly.scalar(2) and rhs == Poly.scalar(2)


def test_residue_zero_residue():
    f = Series(Ctx("x", 3, -3), {-3: 2, -2: Fraction(1, 2), 0: 1, 2: -4})
    r = Series(Ctx("z", 9, 0), {1: 1, 2: 3, 3: Fraction(-1, 5)})
    lhs, rhs = residue_compose_check(f, r)
    assert lhs == rhs == Poly()


def test_residue_requires_positive_valuation():
    f = Series(Ctx("x", 2, -1), {-1: 1})
    r = Series(Ctx("z", 4, 0), {0: 1, 1: 1})
    with pytest.raises(NonpositiveValuation):
        residue_compose_check(f, r)


def test_residue_random_pairs_agree():
    import random
    rng = random.Random(11)
    for trial in range(50):
        alpha = rng.choice([1, 2, 3])
        depth = 12
        fdeg = rng.randint(1, 3)
        f = Series(Ctx("x", 3, -fdeg),
                   {k: Fraction(rng.randint(-3, 3), rng.randint(1, 3))
                    for k in range(-fdeg, 4)})
        r_coeffs = {alpha: Fraction(rng.choice([1, -1, 2]))}
        for k in range(alpha + 1, alpha + 5):
            r_coeffs[k] = Fraction(rng.randint(-2, 2), rng.randint(1, 2))
        r = Series(Ctx("z", depth, 0), r_coeffs)
        lhs, rhs = residue_compose_check(f, r)
        assert lhs == rhs, f"trial {trial}"
