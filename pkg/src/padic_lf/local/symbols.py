"""The tame n-th power Hilbert symbol and the objects built from it."""

from __future__ import annotations

import warnings
from fractions import Fraction

from ..exact import CycNum
from .characters import AddChar, MultChar
from .field import FieldCtx, PadicNum, dlog
from .weil import weil_angle


def tame_residue(x: PadicNum, y: PadicNum) -> int:
    """(-1)^(v(x)v(y)) x^v(y) y^-v(x) reduced mod p."""
    if x.is_zero() or y.is_zero():
        raise ValueError("Hilbert symbol of zero")
    p = x.p
    a, b = x.v, y.v
    ux, uy = x.unit_mod(1), y.unit_mod(1)
    r = pow(ux, b, p) * pow(uy, -a, p) % p
    if (a * b) % 2:
        r = -r % p
    return r


def hilbert_angle(x, y, ctx: FieldCtx, n: int | None = None) -> Fraction:
    """(x, y)_n as an angle k/n, via the embedding g -> exp(2 pi i/(p-1))."""
    n = ctx.n if n is None else n
    if (ctx.p - 1) % n:
        raise ValueError(f"mu_{n} is not contained in Q_{ctx.p}")
    x, y = ctx.num(x), ctx.num(y)
    r = tame_residue(x, y)
    # r^((p-1)/n) = g^(k (p-1)/n) maps to zeta_n^k
    return Fraction(dlog(r, ctx.p, 1) % n, n) if n > 1 else Fraction(0)


def hilbert_symbol(x, y, ctx: FieldCtx, n: int | None = None) -> CycNum:
    return CycNum.root_of_unity(hilbert_angle(x, y, ctx, n))


def quadratic_symbol(x, y, ctx: FieldCtx) -> CycNum:
    return hilbert_symbol(x, y, ctx, 2)


def eta_char(x, ctx: FieldCtx, n: int | None = None) -> MultChar:
    """eta_x(y) = (x, y)."""
    x = ctx.num(x)
    unit_angle = hilbert_angle(x, ctx.G, ctx, n)
    return MultChar(ctx.p, unit_angle, hilbert_symbol(x, ctx.p, ctx, n))


def eta_pi(ctx: FieldCtx) -> MultChar:
    return eta_char(ctx.pi, ctx)


def beta_nk(x, n: int, k: int, ctx: FieldCtx) -> int:
    """Indicator of the elements of valuation congruent to k mod n."""
    x = ctx.num(x)
    return 1 if (x.v - k) % n == 0 else 0


def beta_nk_sum(x, n: int, k: int, ctx: FieldCtx) -> CycNum:
    """(1/n) sum over l of (u0, x varpi^-k)^l, computed with n-th power symbols."""
    x = ctx.num(x)
    nctx = ctx.with_n(n)
    z = x * ctx.pi_power(-k)
    a = hilbert_angle(nctx.u0, z, nctx)
    weights = _multiples(a, n)
    return CycNum.from_angle_sum(weights) / n


def _multiples(a: Fraction, n: int) -> dict[Fraction, int]:
    out: dict[Fraction, int] = {}
    for l in range(n):
        key = (a * l) % 1
        out[key] = out.get(key, 0) + 1
    return out


def beta_map(a, ctx: FieldCtx) -> PadicNum:
    """beta_varpi(u varpi^(m d)) = u varpi^m on F*_d."""
    a = ctx.num(a)
    d = ctx.d
    v, w = ctx.pi_coordinates(a)
    if v % d:
        raise ValueError(f"valuation {v} is not divisible by d = {d}")
    return w * ctx.pi_power(v // d)


def xi_angle(a, ctx: FieldCtx, psi: AddChar) -> Fraction:
    """The splitting xi_{psi,varpi} on F*_d, as an angle."""
    a = ctx.num(a)
    if a.v % ctx.d:
        raise ValueError(f"xi is defined on F*_d; valuation {a.v} is not divisible by {ctx.d}")
    if ctx.n % 2:
        return Fraction(0)
    return (-weil_angle(beta_map(a, ctx), psi)) % 1


def xi_splitting(a, ctx: FieldCtx, psi: AddChar) -> CycNum:
    return CycNum.root_of_unity(xi_angle(a, ctx, psi))


def normalize_uniformizer(ctx: FieldCtx, psi: AddChar) -> FieldCtx:
    """For 4 | n, replace varpi by u varpi with gamma_psi(u varpi) = 1."""
    if ctx.n % 4:
        warnings.warn("normalize_uniformizer only applies when 4 divides n; context unchanged",
                      stacklevel=2)
        return ctx
    for u in (1, ctx.g):
        if weil_angle(PadicNum(ctx.p, 1, u), psi) == 0:
            return ctx.with_uniformizer(u)
    raise ArithmeticError("no unit class u with gamma_psi(u varpi) = 1")
