"""Local factors of characters of Q_p^*: L, epsilon, the Tate gamma factor,
the metaplectic gamma factor, and the coefficient families of the
valuation-restricted functional equations."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exact import RatFun, q_power
from .local import AddChar, FieldCtx, MultChar, hilbert_symbol, weil_gamma_F, weil_index
from .zeta import (CharWeight, SchwartzFn, WeilWeight, mellin, oscillatory_integral,
                   weight_of, zeta_nk, zeta_nk_tilde)


def lfactor(chi: MultChar, ctx: FieldCtx) -> RatFun:
    """L(s, chi) = 1/(1 - chi(varpi) X) for unramified chi, else 1."""
    if chi.conductor:
        return RatFun.const(ctx.p, 1)
    return RatFun.geometric(ctx.p, chi.pi_value(ctx))


def lfactor_at(chi: MultChar, ctx: FieldCtx, scale: int = 1, offset: Fraction | int = 0) -> RatFun:
    """L(scale*s + offset, chi)."""
    return lfactor(chi, ctx).substitute(scale, offset)


def default_test_level(chi: MultChar) -> int:
    return max(1, chi.conductor) + 1


def tate_gamma(chi: MultChar, psi: AddChar, ctx: FieldCtx, r: int | None = None) -> RatFun:
    """gamma(s, chi, psi) = zeta(1-s, chi^-1, phi^) / zeta(s, chi, phi) with
    phi = q^r 1_{1+P^r}, r > max(1, e(chi))."""
    r = default_test_level(chi) if r is None else r
    if r < max(1, chi.conductor):
        raise ValueError(f"test level r = {r} is below the conductor bound")
    phi = SchwartzFn.canonical_test(ctx.p, r)
    lhs = mellin(phi.fourier(psi), chi.inverse(), ctx).reflect()
    return lhs / mellin(phi, chi, ctx)


def epsilon(chi: MultChar, psi: AddChar, ctx: FieldCtx) -> RatFun:
    """epsilon(s, chi, psi) = gamma(s, chi, psi) L(s, chi) / L(1-s, chi^-1)."""
    return tate_gamma(chi, psi, ctx) * lfactor(chi, ctx) / lfactor(chi.inverse(), ctx).reflect()


def conductor_pair(psi: AddChar, chi: MultChar) -> int:
    """e(psi, chi) = e(psi) - e(chi)."""
    return psi.conductor - chi.conductor


def meta_gamma_rhs(chi: MultChar, psi: AddChar, ctx: FieldCtx) -> RatFun:
    """gamma_F(psi_-1)^-1 chi(-1) gamma(2s, chi^2, psi_2)^-1 gamma(s + 1/2, chi, psi).

    This is gamma~(1-s, chi^-1, psi)."""
    psi2 = psi.twisted(2)
    g2 = tate_gamma(chi ** 2, psi2, ctx).double_s()
    g1 = tate_gamma(chi, psi, ctx).shift_s(Fraction(1, 2))
    c = chi.sign() / weil_gamma_F(psi.twisted(-1))
    return g1 / g2 * c


def meta_gamma(chi: MultChar, psi: AddChar, ctx: FieldCtx) -> RatFun:
    """gamma~(s, chi, psi), characterised by zeta(1-s, chi^-1, phi~) = zeta(s, chi, phi) gamma~."""
    return meta_gamma_rhs(chi.inverse(), psi, ctx).reflect()


def sweet_bound(chi: MultChar, psi: AddChar) -> int:
    return max(1, chi.conductor) - psi.conductor


def sweet_integral(chi: MultChar, psi: AddChar, ctx: FieldCtx, M: int | None = None,
                   extra_depth: int = 0) -> RatFun:
    """Integral over P^-M of gamma_psi(x)^-1 chi(x) |x|^s psi(x) d*_psi x."""
    bound = sweet_bound(chi, psi)
    M = bound if M is None else M
    if M < bound:
        raise ValueError(f"M = {M} is below the bound {bound}")
    weight = weight_of(CharWeight(chi, ctx), WeilWeight(psi, ctx, 1, -1))
    return oscillatory_integral(weight, psi, ctx, M, extra_depth=extra_depth) * psi.measure_factor()


# -- coefficient families -------------------------------------------------------

def _one_minus_inv_q(q: int) -> Fraction:
    return 1 - Fraction(1, q)


def theta(m: int, chi: MultChar, psi: AddChar, n: int, ctx: FieldCtx) -> RatFun:
    """theta_m(s, chi, psi) for the valuation-restricted Tate equation."""
    if not 0 <= m < n:
        raise ValueError(f"m = {m} out of range for n = {n}")
    q = ctx.p
    eps_inv = epsilon(chi, psi, ctx).inverse()
    if chi.conductor:
        return eps_inv * chi.sign() if m == 0 else RatFun.const(q, 0)
    chin = chi ** n
    base = eps_inv * lfactor_at(chin, ctx, n) * RatFun.monomial(q, chi.pi_value(ctx) ** m, m)
    if m <= n - 2:
        return base * _one_minus_inv_q(q)
    return base / lfactor_at(chin.inverse(), ctx, -n, 1)


def tilde_prefactor(chi: MultChar, psi: AddChar, ctx: FieldCtx) -> RatFun:
    """gamma_F(psi_-1)^-1 epsilon(2s, chi^2, psi_2)^-1 epsilon(s + 1/2, chi, psi)."""
    e2 = epsilon(chi ** 2, psi.twisted(2), ctx).double_s()
    e1 = epsilon(chi, psi, ctx).shift_s(Fraction(1, 2))
    return e1 / e2 / weil_gamma_F(psi.twisted(-1))


def tilde_case(chi: MultChar) -> str:
    if chi.conductor == 0:
        return "unramified"
    if (chi ** 2).conductor == 0:
        return "square-unramified"
    return "square-ramified"


def theta_tilde(m: int, chi: MultChar, psi: AddChar, n: int, ctx: FieldCtx) -> RatFun:
    """theta~_m(s, chi, psi) for the metaplectic valuation-restricted equation (n even)."""
    if n % 2:
        raise ValueError("theta~ needs n even")
    if not 0 <= m < n:
        raise ValueError(f"m = {m} out of range for n = {n}")
    q = ctx.p
    zero = RatFun.const(q, 0)
    pref = tilde_prefactor(chi, psi, ctx)
    case = tilde_case(chi)
    chi_pi = chi.pi_value(ctx)
    if case == "square-ramified":
        return pref * chi.sign() if m == 0 else zero
    chin = chi ** n
    if case == "unramified":
        if m == n - 1:
            return pref * RatFun.monomial(q, q_power(q, -1) / chi_pi, -1)
        if m % 2 == 0:
            return pref * RatFun.monomial(q, chi_pi ** m, m) * lfactor_at(chin, ctx, n) * _one_minus_inv_q(q)
        return zero
    base = pref * RatFun.monomial(q, chi_pi ** (m - 1), m - 1) * lfactor_at(chin, ctx, n)
    if m == n - 1:
        return base / lfactor_at(chin.inverse(), ctx, -n, 1)
    if m % 2 == 1:
        return base * _one_minus_inv_q(q)
    return zero


@dataclass
class FECheck:
    k: int
    lhs: RatFun
    rhs: RatFun

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


@dataclass
class FEReport:
    variant: str
    checks: list[FECheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


def verify_functional_equation(n: int, chi: MultChar, psi: AddChar, phi: SchwartzFn, ctx: FieldCtx,
                               variant: str = "tate-family", thetas=None) -> FEReport:
    """Check zeta_{n,k}(s, chi, T phi) = sum_m theta_m zeta_{n, m + shift - k}(1-s, chi^-1, phi)
    for every k, with T the Fourier transform (tate-family) or phi -> phi~
    (metaplectic-family).  ``thetas`` overrides the coefficient list."""
    chi_inv = chi.inverse()
    if variant == "tate-family":
        coeffs = thetas or [theta(m, chi, psi, n, ctx) for m in range(n)]
        shift = conductor_pair(psi, chi)
        lhs_of = lambda k: zeta_nk(phi.fourier(psi), chi, n, k, ctx, psi, self_dual=True)
    elif variant == "metaplectic-family":
        coeffs = thetas or [theta_tilde(m, chi, psi, n, ctx) for m in range(n)]
        shift = conductor_pair(psi, chi ** 2)
        lhs_of = lambda k: zeta_nk_tilde(phi, chi, n, k, psi, ctx, self_dual=True)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    rhs_parts = {j: zeta_nk(phi, chi_inv, n, j, ctx, psi, self_dual=True).reflect() for j in range(n)}
    report = FEReport(variant)
    for k in range(n):
        rhs = RatFun.const(ctx.p, 0)
        for m, th in enumerate(coeffs):
            if not th.is_zero():
                rhs = rhs + th * rhs_parts[(m + shift - k) % n]
        report.checks.append(FECheck(k, lhs_of(k), rhs))
    return report


def ramified_psi_reduction(chi: MultChar, psi: AddChar, ctx: FieldCtx) -> tuple[RatFun, RatFun]:
    """Both sides of the reduction of the Weil-weighted integral to an unramified character.

    With e = e(psi) and psi' = psi(varpi^e .), the change of variables x = varpi^e a gives
    I_psi = q^(e/2) X^e gamma_psi'(varpi^e)^-1 (-1, varpi^e)_2 chi(varpi)^e I_psi'."""
    e = psi.conductor
    pe = ctx.pi_power(e)
    psi1 = psi.twisted(pe)
    const = (psi.measure_factor() * chi(pe) * hilbert_symbol(-1, pe, ctx, 2)
             / weil_index(pe, psi1))
    lhs = sweet_integral(chi, psi, ctx)
    rhs = sweet_integral(chi, psi1, ctx) * RatFun.monomial(ctx.p, const, e)
    return lhs, rhs


@dataclass
class IdentityRecord:
    name: str
    params: dict
    lhs: RatFun
    rhs: RatFun

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


def epsilon_identities(chi: MultChar, psi: AddChar, ctx: FieldCtx, twists=()) -> list[IdentityRecord]:
    """The standard identities satisfied by epsilon(s, chi, psi):

    reflection   eps(1-s, chi^-1, psi) = chi(-1) eps(s, chi, psi)^-1
    monomial     eps = c X^(e(chi) - e(psi))
    change-psi   eps(s, chi, psi_a) = chi(a) |a|^(s - 1/2) eps(s, chi, psi)
    product      eps(s, chi, psi) eps(-s, chi^-1, psi) = chi(-1) q^-(e(psi) - e(chi))
    """
    q = ctx.p
    eps = epsilon(chi, psi, ctx)
    eps_inv_chi = epsilon(chi.inverse(), psi, ctx)
    sign = chi.sign()
    params = {"e_chi": chi.conductor, "e_psi": psi.conductor}
    out = [IdentityRecord("epsilon-reflection", params, eps_inv_chi.reflect(), eps.inverse() * sign)]
    mono = eps.as_monomial()
    expected = -conductor_pair(psi, chi)
    got = RatFun.monomial(q, 1, mono[1]) if mono else eps
    out.append(IdentityRecord("epsilon-monomial", params, got, RatFun.monomial(q, 1, expected)))
    for a in twists:
        a = ctx.num(a)
        lhs = epsilon(chi, psi.twisted(a), ctx)
        rhs = eps * RatFun.monomial(q, chi(a) * q_power(q, a.v), a.v)
        out.append(IdentityRecord("epsilon-change-psi", dict(params, a=a.to_json()), lhs, rhs))
    prod = eps * eps_inv_chi.negate_s()
    out.append(IdentityRecord("epsilon-product", params, prod,
                              RatFun.const(q, sign * Fraction(q) ** (-conductor_pair(psi, chi)))))
    return out
