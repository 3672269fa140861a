"""Weil indices of the characters of second degree x -> psi(a x^2)."""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache

from ..exact import CycNum, legendre, q_power
from .characters import AddChar
from .field import PadicNum, smallest_primitive_root

# largest p^T for which the quadratic exponential sum is enumerated directly
BRUTE_FORCE_LIMIT = 20000


@lru_cache(maxsize=None)
def quadratic_exp_sum(p: int, u: int, T: int) -> CycNum:
    """sum over y mod p^T of exp(2 pi i u y^2 / p^T), u a unit."""
    if T <= 0:
        return CycNum.one()
    mod = p ** T
    if mod <= BRUTE_FORCE_LIMIT:
        counts = Counter(u * y * y % mod for y in range(mod))
        return CycNum.from_terms(mod, counts.items())
    # y = y0 + p^(T-1) z: the z-sum kills every y0 not divisible by p, and
    # y0 = p y1 reduces the modulus to p^(T-2) with multiplicity p.
    return p * quadratic_exp_sum(p, u, T - 2)


def c_integral(p: int, t: PadicNum, M: int) -> CycNum:
    """The finite integral of psi_0(t x^2) dx over P^-M, vol(Z_p) = 1."""
    if t.is_zero():
        return CycNum.rational(Fraction(p) ** M)
    T = 2 * M - t.v
    if T <= 0:
        return CycNum.rational(Fraction(p) ** M)
    return quadratic_exp_sum(p, t.unit_mod(T), T) * Fraction(p) ** (M - T)


def c_psi(a, psi: AddChar, M: int) -> CycNum:
    """c_psi(a) = integral over P^-M of psi(a x^2) dx.

    Equals the limit over P^-r, r -> infinity, once |a| >= q^-M and M >= 1.
    """
    a = PadicNum.of(psi.p, a)
    if a.is_zero():
        raise ValueError("c_psi needs a nonzero argument")
    if M < 1:
        raise ValueError(f"M must be at least 1, got {M}")
    t = psi.twist * a
    if t.v > M:
        raise ValueError(f"|t| = q^{-t.v} is below q^-{M}; the truncated integral is not the limit")
    return c_integral(psi.p, t, M)


@lru_cache(maxsize=None)
def _gamma_F_class(p: int, v: int, residue_class: int) -> CycNum:
    u = 1 if residue_class == 1 else smallest_primitive_root(p)
    t = PadicNum(p, v, u)
    M = max(1, v)
    return q_power(p, -v) * c_integral(p, t, M)


def weil_gamma_F(psi: AddChar) -> CycNum:
    """Unnormalized Weil index gamma_F(psi) = lim integral of psi(x^2) d_psi x.

    For psi = psi_0(t .) this is |t|^(1/2) c_psi0(t); it depends only on the
    square class of t.
    """
    t = psi.twist
    return _gamma_F_class(psi.p, t.v, legendre(t.unit, psi.p))


def weil_index(a, psi: AddChar) -> CycNum:
    """Normalized Weil index gamma_psi(a) = gamma_F(psi_a) / gamma_F(psi)."""
    a = PadicNum.of(psi.p, a)
    return weil_gamma_F(psi.twisted(a)) / weil_gamma_F(psi)


@lru_cache(maxsize=None)
def _eighth_roots() -> list[CycNum]:
    return [CycNum.zeta(8, k) for k in range(8)]


def angle_in_mu8(z: CycNum) -> Fraction:
    for k, r in enumerate(_eighth_roots()):
        if r == z:
            return Fraction(k, 8)
    raise ValueError(f"{z!r} is not an eighth root of unity")


@lru_cache(maxsize=None)
def _weil_angle_class(p: int, tv: int, tcls: int, av: int, acls: int) -> Fraction:
    g = smallest_primitive_root(p)
    psi = AddChar(p, PadicNum(p, tv, 1 if tcls == 1 else g))
    a = PadicNum(p, av, 1 if acls == 1 else g)
    return angle_in_mu8(weil_index(a, psi))


def weil_angle(a, psi: AddChar) -> Fraction:
    """gamma_psi(a) as an angle in (1/8)Z / Z."""
    a = PadicNum.of(psi.p, a)
    t = psi.twist
    p = psi.p
    return _weil_angle_class(p, t.v % 2, legendre(t.unit, p), a.v % 2, legendre(a.unit, p))


def completing_square_lhs(z, psi: AddChar, M: int) -> CycNum:
    """Integral over P^-M of psi^-1(z c^2 - 2 c) dc as a finite sum (psi unramified).

    The integrand is constant on c + P^K once 2h, z c h and z h^2 are all
    integral, i.e. K >= max(0, M - v(z), ceil(-v(z)/2))."""
    if psi.conductor != 0:
        raise ValueError("the finite sum assumes an unramified psi")
    z = PadicNum.of(psi.p, z)
    p = psi.p
    K = max(0, M - z.v, -(z.v // 2))
    counts: Counter = Counter()
    zr = z.to_rational()
    for k in range(p ** (M + K)):
        c = Fraction(k, p ** M)
        counts[-psi.angle(PadicNum.from_rational(p, zr * c * c - 2 * c)) % 1] += 1
    return CycNum.from_angle_sum(counts) / p ** K


def completing_square_rhs(z, psi: AddChar, M: int) -> CycNum:
    """psi(1/z) |z|^-1/2 gamma_psi(z)^-1 c_psi(-1) 1_{P^-M}(1/z)."""
    z = PadicNum.of(psi.p, z)
    if z.v > M:
        return CycNum.zero()
    return (psi(z.inverse()) * q_power(psi.p, z.v) * c_psi(-1, psi, M)) / weil_index(z, psi)
