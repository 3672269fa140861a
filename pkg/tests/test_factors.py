import random
from fractions import Fraction

import pytest

from oracles import gauss_sum
from padic_lf import (AddChar, CycNum, FieldCtx, MultChar, RatFun, epsilon,
                      epsilon_identities, lfactor, meta_gamma, meta_gamma_rhs, sweet_integral, tate_gamma,
                      theta, theta_tilde, verify_functional_equation)
from padic_lf.exact import q_power, rf_substitute
from padic_lf.factors import lfactor_at, ramified_psi_reduction, sweet_bound, tilde_prefactor
from padic_lf.local import completing_square_lhs, completing_square_rhs, weil_gamma_F
from padic_lf.suites import completing_square_points, sample_characters, tilde_characters
from padic_lf.zeta import mellin, mellin_tilde, random_schwartz


def chars(p, n=1, bound=2):
    return sample_characters(FieldCtx(p, n), bound)


# -- L and gamma ----------------------------------------------------------------------

def test_lfactor_cases():
    p = 7
    ctx = FieldCtx(p, 3)
    X = RatFun.X(p)
    assert lfactor(MultChar.trivial(p), ctx) == 1 / (1 - X)
    assert lfactor(MultChar(p, Fraction(1, 6)), ctx) == RatFun.const(p, 1)
    chi = MultChar.unramified(ctx, CycNum.zeta(6))
    want = 1 / (1 - (chi ** 3).pi_value(ctx) * X ** 3)
    assert lfactor_at(chi ** 3, ctx, 3) == want
    assert rf_substitute(lfactor(chi ** 3, ctx), "s->2s") == lfactor_at(chi ** 3, ctx, 2)


def test_gamma_of_trivial_character():
    p = 5
    ctx = FieldCtx(p, 1)
    X = RatFun.X(p)
    got = tate_gamma(MultChar.trivial(p), AddChar.standard(p), ctx)
    assert got == (1 - X) / (1 - Fraction(1, p) / X)


@pytest.mark.parametrize("p", [5, 7])
def test_gamma_reflection_and_test_level_independence(p):
    ctx = FieldCtx(p, 1)
    for e_psi in (0, 1):
        psi = AddChar(p, Fraction(1, p ** e_psi))
        for chi in chars(p):
            g = tate_gamma(chi, psi, ctx)
            assert g * tate_gamma(chi.inverse(), psi, ctx).reflect() == RatFun.const(p, chi.sign())
            r = max(1, chi.conductor)
            assert tate_gamma(chi, psi, ctx, r) == tate_gamma(chi, psi, ctx, r + 2)


@pytest.mark.parametrize("p", [5, 7, 13])
def test_epsilon_against_gauss_sum(p):
    ctx = FieldCtx(p, 1)
    psi = AddChar.standard(p)
    for chi in chars(p):
        e = chi.conductor
        if e == 0:
            assert epsilon(chi, psi, ctx) == RatFun.const(p, 1)
            continue
        want = chi.p_value ** e * gauss_sum(chi.inverse(), p, e)
        assert epsilon(chi, psi, ctx) == RatFun.monomial(p, want, e)


def test_epsilon_constant_has_absolute_value_sqrt_q():
    p = 5
    ctx = FieldCtx(p, 1)
    for chi in chars(p, bound=1):
        if chi.conductor == 1 and (chi.p_value ** 4).is_one():
            c, k = epsilon(chi, AddChar.standard(p), ctx).as_monomial()
            assert k == 1
            assert c * c.conjugate() == CycNum.rational(p)


@pytest.mark.parametrize("p", [5, 7])
def test_epsilon_identities(p):
    ctx = FieldCtx(p, 1)
    twists = [ctx.unit(ctx.G), ctx.unit(-1), ctx.pi, ctx.unit(2) * ctx.pi_power(2)]
    for e_psi in (0, 1):
        psi = AddChar(p, Fraction(1, p ** e_psi))
        for chi in chars(p):
            recs = epsilon_identities(chi, psi, ctx, twists)
            assert {r.name for r in recs} == {"epsilon-reflection", "epsilon-monomial", "epsilon-change-psi",
                                              "epsilon-product"}
            for r in recs:
                assert r.ok, (r.name, chi, e_psi)


def test_epsilon_identity_detects_a_wrong_value():
    p = 5
    ctx = FieldCtx(p, 1)
    chi = MultChar(p, Fraction(1, 4))
    psi = AddChar.standard(p)
    wrong = epsilon(chi, psi, ctx) * 2
    assert wrong * epsilon(chi.inverse(), psi, ctx).negate_s() != RatFun.const(p, chi.sign() * p)


# -- valuation-restricted equations -------------------------------------------------------

def test_theta_for_ramified_characters():
    p, n = 7, 3
    ctx = FieldCtx(p, n)
    psi = AddChar.standard(p)
    chi = MultChar.from_pi_value(ctx, Fraction(1, 6), CycNum.zeta(6))
    assert theta(0, chi, psi, n, ctx) == epsilon(chi, psi, ctx).inverse() * chi.sign()
    for m in (1, 2):
        assert theta(m, chi, psi, n, ctx).is_zero()


@pytest.mark.parametrize("p", [5, 7])
def test_theta_at_n_one_is_the_tate_gamma(p):
    ctx = FieldCtx(p, 1)
    psi = AddChar.standard(p)
    for chi in chars(p):
        assert theta(0, chi, psi, 1, ctx) == tate_gamma(chi.inverse(), psi, ctx).reflect()


def test_theta_index_range():
    ctx = FieldCtx(7, 3)
    with pytest.raises(ValueError):
        theta(3, MultChar.trivial(7), AddChar.standard(7), 3, ctx)
    with pytest.raises(ValueError):
        theta_tilde(0, MultChar.trivial(7), AddChar.standard(7), 3, ctx)


def test_theta_tilde_cases():
    p, n = 13, 4
    ctx = FieldCtx(p, n)
    psi = AddChar.standard(p)
    unram, square_unram, square_ram = tilde_characters(ctx)
    pref = tilde_prefactor(square_ram, psi, ctx)
    e2 = epsilon(square_ram ** 2, psi.twisted(2), ctx).double_s()
    e1 = epsilon(square_ram, psi, ctx).shift_s(Fraction(1, 2))
    assert pref == e1 / e2 / weil_gamma_F(psi.twisted(-1))
    assert theta_tilde(0, square_ram, psi, n, ctx) == pref * square_ram.sign()
    assert all(theta_tilde(m, square_ram, psi, n, ctx).is_zero() for m in (1, 2, 3))
    assert theta_tilde(1, unram, psi, n, ctx).is_zero()
    top = theta_tilde(n - 1, unram, psi, n, ctx)
    assert top == tilde_prefactor(unram, psi, ctx) * RatFun.monomial(p, q_power(p, -1) / unram.pi_value(ctx), -1)
    assert theta_tilde(0, square_unram, psi, n, ctx).is_zero()


def test_valuation_equation_cube_cover_trivial_character():
    p, n = 7, 3
    ctx = FieldCtx(p, n)
    rng = random.Random(11)
    for _ in range(3):
        phi = random_schwartz(p, rng, n_terms=3)
        report = verify_functional_equation(n, MultChar.trivial(p), AddChar.standard(p), phi, ctx)
        assert [c.k for c in report.checks] == [0, 1, 2]
        assert report.ok


def test_metaplectic_equation_quadratic_unit_character():
    p, n = 5, 2
    ctx = FieldCtx(p, n)
    rng = random.Random(5)
    chi = MultChar.from_pi_value(ctx, Fraction(1, 2), 1)
    for _ in range(3):
        phi = random_schwartz(p, rng, ball_ok=False)
        assert verify_functional_equation(n, chi, AddChar.standard(p), phi, ctx, "metaplectic-family").ok


def test_metaplectic_equation_square_ramified_single_term():
    p, n = 13, 4
    ctx = FieldCtx(p, n)
    chi = tilde_characters(ctx)[2]
    psi = AddChar.standard(p)
    thetas = [theta_tilde(m, chi, psi, n, ctx) for m in range(n)]
    assert sum(not t.is_zero() for t in thetas) == 1
    phi = random_schwartz(p, random.Random(1), ball_ok=False)
    assert verify_functional_equation(n, chi, psi, phi, ctx, "metaplectic-family").ok


def test_wrong_coefficients_are_caught():
    p, n = 7, 3
    ctx = FieldCtx(p, n)
    psi = AddChar.standard(p)
    chi = MultChar.trivial(p)
    thetas = [theta(m, chi, psi, n, ctx) for m in range(n)]
    thetas[1] = thetas[1] + 1
    phi = random_schwartz(p, random.Random(3))
    assert not verify_functional_equation(n, chi, psi, phi, ctx, thetas=thetas).ok


# -- the metaplectic gamma factor -----------------------------------------------------------

@pytest.mark.parametrize("p", [5, 13])
def test_weighted_integral_equals_gamma_expression(p):
    ctx = FieldCtx(p, 2)
    for e_psi in (0, 1):
        psi = AddChar(p, Fraction(1, p ** e_psi))
        for chi in chars(p, bound=1):
            rhs = meta_gamma_rhs(chi, psi, ctx)
            b = sweet_bound(chi, psi)
            assert sweet_integral(chi, psi, ctx, b) == rhs
            assert sweet_integral(chi, psi, ctx, b + 1) == rhs


def test_weighted_integral_trivial_character_p5():
    p = 5
    ctx = FieldCtx(p, 2)
    psi = AddChar.standard(p)
    chi = MultChar.trivial(p)
    assert meta_gamma_rhs(chi, psi, ctx) == sweet_integral(chi, psi, ctx)
    with pytest.raises(ValueError):
        sweet_integral(chi, psi, ctx, 0)


def test_weighted_integral_ramified_psi_reduction():
    p = 13
    ctx = FieldCtx(p, 4)
    psi = AddChar(p, Fraction(1, p))
    for chi in chars(p, bound=1):
        lhs, rhs = ramified_psi_reduction(chi, psi, ctx)
        assert lhs == rhs


def test_metaplectic_gamma_functional_equation():
    p = 5
    ctx = FieldCtx(p, 2)
    psi = AddChar.standard(p)
    rng = random.Random(8)
    for chi in tilde_characters(ctx):
        g = meta_gamma(chi, psi, ctx)
        for _ in range(2):
            phi = random_schwartz(p, rng, ball_ok=False)
            lhs = mellin_tilde(phi, chi.inverse(), psi, ctx, self_dual=True).reflect()
            rhs = mellin(phi, chi, ctx, psi, self_dual=True) * g
            assert lhs == rhs


def test_metaplectic_gamma_of_small_conductor_is_monomial():
    p = 5
    ctx = FieldCtx(p, 2)
    for angle, e in ((Fraction(1, 4), 1), (Fraction(1, 20), 2)):
        chi = MultChar.from_pi_value(ctx, angle, 1)
        c, k = meta_gamma(chi, AddChar.standard(p), ctx).as_monomial()
        assert k == e
        assert c * c.conjugate() == CycNum.rational(p ** e)


def test_completing_square_identity_p5():
    p, M = 5, 1
    psi = AddChar.standard(p)
    points = completing_square_points(p, M)
    assert len(points) >= 20
    assert any(z.v <= M for z in points) and any(z.v > M for z in points)
    for z in points:
        assert completing_square_lhs(z, psi, M) == completing_square_rhs(z, psi, M)
