"""Mellin transforms zeta(s, chi, phi), their restrictions to valuation classes,
and the Weil-index twisted transform phi -> phi~."""

from __future__ import annotations

from collections import Counter
from fractions import Fraction

from ..exact import CycNum, RatFun, q_power
from ..local import AddChar, FieldCtx, MultChar, PadicNum, weil_angle
from .schwartz import SchwartzFn, SchwartzTerm
from .shells import CharWeight, WeilWeight, weight_of, zeta_integral


def _measure(psi: AddChar | None, self_dual: bool) -> CycNum:
    if not self_dual:
        return CycNum.one()
    if psi is None:
        raise ValueError("the self-dual measure needs an additive character")
    return psi.measure_factor()


def mellin(phi: SchwartzFn, chi: MultChar, ctx: FieldCtx, psi: AddChar | None = None,
           self_dual: bool = False, modulus: int = 1, residue: int = 0, extra_depth: int = 0) -> RatFun:
    """zeta(s, chi, phi) = integral of phi(x) chi(x) |x|^s d*x as a RatFun in X = q^-s.

    The default measure gives O^* volume 1 - 1/q; ``self_dual`` switches to
    d*_psi x = q^(e(psi)/2) d*x.  ``modulus``/``residue`` restrict to
    valuations congruent to residue.
    """
    result = zeta_integral(phi, CharWeight(chi, ctx), ctx, modulus, residue, extra_depth)
    return result * _measure(psi, self_dual)


def zeta_nk(phi: SchwartzFn, chi: MultChar, n: int, k: int, ctx: FieldCtx, psi: AddChar | None = None,
            self_dual: bool = False) -> RatFun:
    """zeta(s, chi, phi * beta_{n,k})."""
    return mellin(phi, chi, ctx, psi, self_dual, modulus=n, residue=k)


def _tilde_parts(phi: SchwartzFn, psi: AddChar):
    """For phi = sum c 1_{a(1+P^r)} yield (a, ball term) with
    phi~ = sum gamma_psi^-1(a x) * term(x), where
    term = c |a| q^(e/2 - r) psi(a x) 1_{P^(e - r - v(a))}."""
    if not phi.is_tilde_supported():
        raise ValueError("phi~ is only available for combinations of unmodulated cosets a(1 + P^r)")
    p, e = phi.p, psi.conductor
    for t in phi.terms:
        a = t.center
        r = t.level - a.v
        coeff = t.coeff * q_power(p, e - 2 * r - 2 * a.v)
        yield a, SchwartzTerm(coeff, PadicNum.zero(p), e - r - a.v, a * psi.twist)


def tilde_value(phi: SchwartzFn, x, psi: AddChar, ctx: FieldCtx) -> CycNum:
    """phi~(x) from the closed form gamma_psi^-1(a x) psi(a x) 1_{P^(e-r)}(a x) per coset."""
    x = ctx.num(x)
    total = CycNum.zero()
    for a, term in _tilde_parts(phi, psi):
        if term.contains(x):
            total = total + term(x) * CycNum.root_of_unity(-weil_angle(a * x, psi))
    return total


def tilde_value_direct(phi: SchwartzFn, x, psi: AddChar, ctx: FieldCtx) -> CycNum:
    """phi~(x) = integral of phi(y) gamma_psi^-1(x y) psi(x y) d_psi y by a finite sum.

    The integrand on a coset a + P^m is constant on classes mod P^K with
    K >= m, K >= 1 + v(a) (square classes) and K >= e(psi) - v(x)."""
    x = ctx.num(x)
    p = ctx.p
    total = CycNum.zero()
    for t in phi.terms:
        if t.is_ball() or not t.modulation.is_zero():
            raise ValueError("direct phi~ needs unmodulated cosets away from 0")
        a, m = t.center, t.level
        K = max(m, a.v + 1, psi.conductor - x.v)
        span = K - a.v
        base = a.unit_mod(m - a.v)
        counts: Counter = Counter()
        for w in range(base, p ** span, p ** (m - a.v)):
            y = PadicNum(p, a.v, w)
            xy = x * y
            ang = (psi.angle(xy) - weil_angle(xy, psi)) % 1
            counts[ang] += 1
        vol = Fraction(1, p ** K)
        total = total + CycNum.from_angle_sum(counts) * vol * t.coeff
    return total * psi.measure_factor()


def mellin_tilde(phi: SchwartzFn, chi: MultChar, psi: AddChar, ctx: FieldCtx, self_dual: bool = False,
                 modulus: int = 1, residue: int = 0, extra_depth: int = 0) -> RatFun:
    """zeta(s, chi, phi~) for phi in the supported coset family."""
    total = RatFun.const(ctx.p, 0)
    for a, term in _tilde_parts(phi, psi):
        weight = weight_of(CharWeight(chi, ctx), WeilWeight(psi, ctx, a, -1))
        total = total + zeta_integral(SchwartzFn(ctx.p, [term]), weight, ctx, modulus, residue, extra_depth)
    return total * _measure(psi, self_dual)


def zeta_nk_tilde(phi: SchwartzFn, chi: MultChar, n: int, k: int, psi: AddChar, ctx: FieldCtx,
                  self_dual: bool = False) -> RatFun:
    return mellin_tilde(phi, chi, psi, ctx, self_dual, modulus=n, residue=k)


def oscillatory_integral(weight, psi: AddChar, ctx: FieldCtx, depth: int, modulus: int = 1,
                         residue: int = 0, extra_depth: int = 0) -> RatFun:
    """Integral over P^-depth of W(x) psi(x) |x|^s d*x."""
    term = SchwartzTerm(CycNum.one(), PadicNum.zero(ctx.p), -depth, psi.twist)
    return zeta_integral(SchwartzFn(ctx.p, [term]), weight, ctx, modulus, residue, extra_depth)


def stable_depth(weight_level: int, psi: AddChar) -> int:
    """Shells below e(psi) - max(level, 1) integrate to zero, so truncating the
    domain at P^-depth with this depth already gives the limit."""
    return max(weight_level, 1) - psi.conductor
