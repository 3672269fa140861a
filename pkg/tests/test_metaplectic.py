import random
from fractions import Fraction

import pytest

from padic_lf import (AddChar, CycNum, FieldCtx, JobConfig, MultChar, RatFun, dmatrix, kubota_cocycle, plancherel,
                      reducible_at_zero, run_suite, tate_gamma, whittaker_dimension)
from padic_lf.local import eta_pi, hilbert_angle, hilbert_symbol
from padic_lf.metaplectic import (GenuineChar, bruhat_root, canonical_case, cocycle_sign, equivalent_inducing_data,
                                  h_elt, kubota_angle, mat_mul, matrix_product_check, n_elt,
                                  normalized_route_available, plancherel_formula, tau_entry_closed,
                                  tau_entry_integral, tau_entry_printed, tau_entry_theta, unitary_characters)
from padic_lf.suites import canonical_characters, random_sl2


@pytest.mark.parametrize("n,d", [(1, 1), (2, 1), (3, 3), (4, 2), (6, 3), (12, 6)])
def test_whittaker_dimension(n, d):
    assert whittaker_dimension(n) == d
    assert FieldCtx(13, n).d == d


# -- the cocycle ------------------------------------------------------------------------

def test_kubota_on_torus_and_unipotents():
    ctx = FieldCtx(7, 3)
    for a in (2, 7, Fraction(3, 49), 21):
        for b in (3, Fraction(1, 7), 14):
            assert kubota_angle(h_elt(a), h_elt(b), ctx) == hilbert_angle(b, a, ctx)
    for x in (1, Fraction(1, 7), 5):
        for y in (2, 49):
            assert kubota_cocycle(n_elt(x), n_elt(y), ctx).is_one()


@pytest.mark.parametrize("p,n", [(7, 3), (13, 4)])
def test_kubota_two_cocycle(p, n):
    ctx = FieldCtx(p, n)
    rng = random.Random(p)
    for _ in range(100):
        g1, g2, g3 = (random_sl2(rng, p) for _ in range(3))
        lhs = kubota_angle(g1, g2, ctx) + kubota_angle(mat_mul(g1, g2), g3, ctx)
        rhs = kubota_angle(g1, mat_mul(g2, g3), ctx) + kubota_angle(g2, g3, ctx)
        assert (lhs - rhs) % 1 == 0


@pytest.mark.parametrize("p,n", [(13, 4), (5, 4), (13, 12), (7, 6), (7, 3)])
def test_bruhat_root_is_eta_power_times_cocycle_sign(p, n):
    ctx = FieldCtx(p, n)
    rng = random.Random(n)
    pi = ctx.pi.to_rational()
    checked = 0
    while checked < 25:
        i, j = rng.randrange(ctx.d), rng.randrange(ctx.d)
        k = rng.randint(-2, 2)
        # y chosen so that v(-varpi^i / y) = j mod d
        y = Fraction(rng.choice([1, 2, 3, p - 1]), rng.choice([1, 2])) * pi ** (i - j - k * ctx.d)
        x = Fraction(rng.randint(-20, 20), rng.choice([1, p]))
        angle, z, _ = bruhat_root(i, j, y, x, ctx)
        expected = (i - j) * hilbert_angle(ctx.pi, z, ctx) + j * (i + j) * hilbert_angle(-1, ctx.pi, ctx)
        assert (angle - expected) % 1 == 0
        checked += 1


@pytest.mark.parametrize("p,n", [(13, 4), (13, 6), (7, 3), (5, 4), (13, 12), (7, 6)])
def test_cocycle_sign_trivial_iff_minus_one_is_nth_power(p, n):
    ctx = FieldCtx(p, n)
    trivial = ((p - 1) // n) % 2 == 0
    signs = [cocycle_sign(i, j, ctx) for i in range(ctx.d) for j in range(ctx.d)]
    assert all(s.is_one() for s in signs) == trivial
    assert all((s * s).is_one() for s in signs)


# -- genuine characters and inducing data ---------------------------------------------------

def test_genuine_character():
    ctx = FieldCtx(13, 4)
    psi = AddChar.standard(13)
    chi = MultChar.from_pi_value(ctx, Fraction(1, 12), CycNum.zeta(8))
    gc = GenuineChar(chi, ctx, psi)
    assert gc(2, Fraction(1, 4)) == CycNum.zeta(4) * gc(2)
    rng = random.Random(4)
    for _ in range(20):
        a = ctx.pi_power(2 * rng.randint(-2, 2)) * ctx.unit(rng.randint(1, 12))
        b = ctx.pi_power(2 * rng.randint(-2, 2)) * ctx.unit(rng.randint(1, 12))
        assert gc(a) * gc(b) == gc(a * b) * hilbert_symbol(b, a, ctx)
    with pytest.raises(ValueError):
        gc(ctx.pi)


def test_genuine_character_odd_n_is_chi():
    ctx = FieldCtx(7, 3)
    chi = MultChar.from_pi_value(ctx, Fraction(1, 6), CycNum.zeta(6))
    gc = GenuineChar(chi, ctx, AddChar.standard(7))
    for a in (ctx.unit(3), ctx.pi_power(3), ctx.pi_power(-3) * ctx.unit(2)):
        assert gc(a) == chi(a)


def test_equivalent_inducing_data():
    ctx = FieldCtx(7, 3)
    chi = MultChar.from_pi_value(ctx, Fraction(1, 6), 1)
    assert equivalent_inducing_data(chi, chi, ctx) == (True, 0)
    assert equivalent_inducing_data(chi, chi * eta_pi(ctx) ** 2, ctx) == (True, 1)
    ram = MultChar.from_pi_value(ctx, Fraction(1, 2), 1)
    assert (ram ** 3).conductor
    assert equivalent_inducing_data(MultChar.trivial(7), ram, ctx)[0] is False


# -- local coefficient matrices --------------------------------------------------------------

@pytest.mark.parametrize("p", [5, 7])
def test_rank_one_is_inverse_local_coefficient(p):
    ctx = FieldCtx(p, 1)
    psi = AddChar.standard(p)
    for chi in [MultChar.trivial(p), MultChar(p, Fraction(1, p - 1)), MultChar.unramified(ctx, CycNum.zeta(3))]:
        (t,), = dmatrix(chi, psi, ctx).entries
        assert t * tate_gamma(chi, psi, ctx) == RatFun.const(p, chi.sign())


def test_cube_cover_patterns():
    ctx = FieldCtx(7, 3)
    psi = AddChar.standard(7)
    D = dmatrix(MultChar.trivial(7), psi, ctx)
    assert D.pattern() == ["*.*", ".*.", "*.*"]
    X = RatFun.X(7)
    # 2j = n - 1 on the diagonal: L(3s, 1) / L(1 - 3s, 1)
    assert D.entries[1][1] == (1 - Fraction(1, 7) * X ** -3) / (1 - X ** 3)
    ram = [c for c in canonical_characters(ctx) if canonical_case(c, ctx) == "ramified"][0]
    assert dmatrix(ram, psi, ctx).pattern() == ["..*", ".*.", "*.."]


def test_eta_case_pattern():
    ctx = FieldCtx(13, 4)
    D = dmatrix(eta_pi(ctx), AddChar.standard(13), ctx, "closed")
    assert D.pattern() == [".*", "*."]
    assert D.to_json()["chi_case"] == "eta"


@pytest.mark.parametrize("p,n", [(7, 3), (5, 2), (13, 4), (13, 6), (5, 4), (7, 1)])
def test_routes_agree(p, n):
    ctx = FieldCtx(p, n)
    psi = AddChar.standard(p)
    for chi in canonical_characters(ctx):
        for i in range(ctx.d):
            for j in range(ctx.d):
                ref = tau_entry_integral(i, j, chi, psi, ctx)
                assert tau_entry_closed(i, j, chi, psi, ctx) == ref
                assert tau_entry_theta(i, j, chi, psi, ctx) == ref


def test_printed_tables_differ_where_minus_one_is_not_an_nth_power():
    ctx = FieldCtx(5, 4)
    psi = AddChar.standard(5)
    mismatches = 0
    for chi in canonical_characters(ctx):
        for i in range(ctx.d):
            for j in range(ctx.d):
                mismatches += tau_entry_printed(i, j, chi, psi, ctx) != tau_entry_integral(i, j, chi, psi, ctx)
    assert mismatches > 0


def test_closed_route_needs_normalized_uniformizer():
    ctx = FieldCtx(7, 6)
    psi = AddChar.standard(7)
    assert not normalized_route_available(psi, ctx)
    with pytest.raises(ValueError):
        dmatrix(MultChar.trivial(7), psi, ctx, "closed")
    with pytest.raises(ValueError):
        tau_entry_theta(0, 0, MultChar.trivial(7), psi, ctx)
    # the integral route is still defined and the product identity holds
    for chi in canonical_characters(ctx):
        assert matrix_product_check(chi, psi, ctx).ok


def test_non_canonical_character_needs_integral_route():
    ctx = FieldCtx(13, 4)
    chi = MultChar.unramified(ctx, CycNum.zeta(3))
    assert canonical_case(chi, ctx) is None
    with pytest.raises(ValueError):
        tau_entry_closed(0, 0, chi, AddChar.standard(13), ctx)
    assert matrix_product_check(chi, AddChar.standard(13), ctx).ok


def test_index_range():
    ctx = FieldCtx(13, 4)
    with pytest.raises(IndexError):
        tau_entry_integral(2, 0, MultChar.trivial(13), AddChar.standard(13), ctx)


def test_coefficient_matrix_json():
    ctx = FieldCtx(5, 2)
    data = dmatrix(MultChar.trivial(5), AddChar.standard(5), ctx).to_json()
    assert data["d"] == 1 and len(data["entries"]) == 1 and len(data["entries"][0]) == 1
    assert RatFun.from_json(data["entries"][0][0]) == dmatrix(MultChar.trivial(5), AddChar.standard(5),
                                                               ctx).entries[0][0]


# -- Plancherel and reducibility --------------------------------------------------------------

@pytest.mark.parametrize("p,n", [(7, 3), (13, 4), (5, 2)])
def test_product_is_scalar_and_methods_agree(p, n):
    ctx = FieldCtx(p, n)
    psi = AddChar.standard(p)
    for chi in canonical_characters(ctx):
        check = matrix_product_check(chi, psi, ctx)
        assert check.scalar is not None and check.ok
        if canonical_case(chi.inverse(), ctx):
            assert matrix_product_check(chi, psi, ctx, "closed").ok
        assert plancherel(chi, psi, ctx, "formula") == plancherel(chi, psi, ctx, "matrices")


def test_plancherel_shapes():
    p, n = 13, 4
    ctx = FieldCtx(p, n)
    psi = AddChar.standard(p)
    mu = plancherel_formula(MultChar.trivial(p), psi, ctx)
    assert mu.has_pole_at(1)
    ram = [c for c in canonical_characters(ctx) if canonical_case(c, ctx) == "ramified"][0]
    assert plancherel_formula(ram, psi, ctx).is_constant()
    unram = MultChar.unramified(ctx, CycNum.zeta(3))
    c = unram.pi_value(ctx) ** n
    L = lambda a, k: 1 / (1 - RatFun.monomial(p, a, k))  # noqa: E731
    want = (L(c, n) * L(c.inverse(), -n)
            / (L(c.inverse() * Fraction(1, p), -n) * L(c * Fraction(1, p), n)))
    assert plancherel_formula(unram, psi, ctx) == want


def test_reducibility_examples():
    ctx = FieldCtx(7, 3)
    verdicts = [reducible_at_zero(chi, ctx) for chi in unitary_characters(ctx)]
    assert all(r.predicate == r.reducible for r in verdicts)
    assert any(r.reducible for r in verdicts)
    even = FieldCtx(13, 4)
    assert not any(reducible_at_zero(chi, even).reducible for chi in unitary_characters(even))
    one = FieldCtx(7, 1)
    quad = MultChar.from_pi_value(one, Fraction(1, 2), 1)
    assert reducible_at_zero(quad, one).reducible
    assert not reducible_at_zero(MultChar.trivial(7), one).reducible
    assert not reducible_at_zero(MultChar.from_pi_value(one, Fraction(1, 3), 1), one).reducible


def test_closed_equals_integral_at_full_cover_of_13():
    rep = run_suite(JobConfig(13, 12, suites=["dmatrix"]))
    assert rep.records and not rep.failures
    assert not any(r.skipped for r in rep.records)
