"""The n-fold cover of SL_2(Q_p): Kubota cocycle, genuine characters of the
torus cover, local coefficient matrices, Plancherel measure and reducibility
at s = 0."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact import CycNum, RatFun, q_power
from .factors import epsilon, lfactor_at, theta, theta_tilde
from .local import (AddChar, FieldCtx, MultChar, eta_pi, hilbert_angle, hilbert_symbol,
                    weil_angle, xi_angle)
from .zeta import CharWeight, XiWeight, oscillatory_integral, stable_depth, weight_of

Matrix = tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]


def whittaker_dimension(n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    return n // math.gcd(n, 2)


# -- the cover --------------------------------------------------------------------

def mat(a, b, c, d) -> Matrix:
    return ((Fraction(a), Fraction(b)), (Fraction(c), Fraction(d)))


def mat_mul(g: Matrix, h: Matrix) -> Matrix:
    (a, b), (c, d) = g
    (e, f), (k, l) = h
    return ((a * e + b * k, a * f + b * l), (c * e + d * k, c * f + d * l))


def det(g: Matrix) -> Fraction:
    return g[0][0] * g[1][1] - g[0][1] * g[1][0]


def n_elt(x) -> Matrix:
    return mat(1, x, 0, 1)


def h_elt(a) -> Matrix:
    a = Fraction(a)
    return mat(a, 0, 0, 1 / a)


W_ELT: Matrix = mat(0, 1, -1, 0)


def x_entry(g: Matrix) -> Fraction:
    """Lower-left entry, or lower-right when that vanishes."""
    return g[1][0] if g[1][0] != 0 else g[1][1]


def kubota_angle(g1: Matrix, g2: Matrix, ctx: FieldCtx) -> Fraction:
    """c(g1, g2) = (x(g1 g2)/x(g1), x(g1 g2)/x(g2)) as an angle in (1/n)Z/Z."""
    for g in (g1, g2):
        if det(g) != 1:
            raise ValueError("cocycle arguments must have determinant 1")
    x12 = x_entry(mat_mul(g1, g2))
    return hilbert_angle(x12 / x_entry(g1), x12 / x_entry(g2), ctx)


def kubota_cocycle(g1: Matrix, g2: Matrix, ctx: FieldCtx) -> CycNum:
    return CycNum.root_of_unity(kubota_angle(g1, g2, ctx))


@dataclass(frozen=True)
class CoverElement:
    """(g, epsilon) with epsilon in mu_n stored as an angle."""

    g: Matrix
    root: Fraction = Fraction(0)

    def mul(self, other: "CoverElement", ctx: FieldCtx) -> "CoverElement":
        c = kubota_angle(self.g, other.g, ctx)
        return CoverElement(mat_mul(self.g, other.g), (self.root + other.root + c) % 1)


def bruhat_root(i: int, j: int, y, x, ctx: FieldCtx) -> tuple[Fraction, Fraction, Fraction]:
    """Rewrite s(w)s(n(y))s(h(varpi^i))s(w)s(n(x)) as
    zeta * s(n(z')) s(h(a')) s(h(varpi^j)) s(w) s(n(u)) with a' in F*_d and
    return (angle of zeta, z, u) where z = -varpi^(2i)/y.

    This is the cover computation behind the integral form of tau(i, j)."""
    y, x = Fraction(y), Fraction(x)
    t = ctx.pi.to_rational() ** i
    lhs = CoverElement(W_ELT)
    for g in (n_elt(y), h_elt(t), W_ELT, n_elt(x)):
        lhs = lhs.mul(CoverElement(g), ctx)
    a = -t / y
    a_rest = a / ctx.pi.to_rational() ** j
    if ctx.num(a_rest).v % ctx.d:
        raise ValueError("v(varpi^-i z) is not congruent to j mod d")
    u = x - t * t / y
    rhs = CoverElement(n_elt(-1 / y))
    for g in (h_elt(a_rest), h_elt(ctx.pi.to_rational() ** j), W_ELT, n_elt(u)):
        rhs = rhs.mul(CoverElement(g), ctx)
    if rhs.g != lhs.g:
        raise ArithmeticError("Bruhat decomposition mismatch")
    return (lhs.root - rhs.root) % 1, -t * t / y, u


# -- genuine characters ---------------------------------------------------------

@dataclass(frozen=True)
class GenuineChar:
    """(h(a), eps) -> eps chi(a) xi(a) |a|^s on the cover of H_d."""

    chi: MultChar
    ctx: FieldCtx
    psi: AddChar

    def __call__(self, a, root: Fraction = Fraction(0)) -> CycNum:
        a = self.ctx.num(a)
        if a.v % self.ctx.d:
            raise ValueError(f"h({a!r}) is outside H_d")
        ang = Fraction(root) + xi_angle(a, self.ctx, self.psi)
        return self.chi(a) * CycNum.root_of_unity(ang)

    def with_s(self, a, root: Fraction = Fraction(0)) -> RatFun:
        a = self.ctx.num(a)
        return RatFun.monomial(self.ctx.p, self(a, root), a.v)


def genuine_char_eval(gc: GenuineChar, a, root: Fraction = Fraction(0)) -> CycNum:
    return gc(a, root)


def agree_on_Fd(chi1: MultChar, chi2: MultChar, ctx: FieldCtx) -> bool:
    """chi1 = chi2 on O^* x varpi^(dZ)."""
    ratio = chi1 / chi2
    return ratio.is_unramified() and (ratio.pi_value(ctx) ** ctx.d).is_one()


def equivalent_inducing_data(chi: MultChar, chi2: MultChar, ctx: FieldCtx) -> tuple[bool, int | None]:
    """Whether chi2 = chi eta_varpi^(2m) on F*_d for some 0 <= m < d, with the witness m."""
    eta2 = eta_pi(ctx) ** 2
    cur = chi
    for m in range(ctx.d):
        if agree_on_Fd(cur, chi2, ctx):
            return True, m
        cur = cur * eta2
    return False, None


# -- local coefficients -----------------------------------------------------------

def _check_index(i: int, j: int, ctx: FieldCtx) -> None:
    if not (0 <= i < ctx.d and 0 <= j < ctx.d):
        raise IndexError(f"({i}, {j}) out of range for d = {ctx.d}")


def tau_prefactor(i: int, j: int, chi: MultChar, ctx: FieldCtx) -> RatFun:
    """q^(j-i) (chi(varpi) X)^(-i-j)."""
    c = chi.pi_value(ctx) ** (-i - j) * Fraction(ctx.p) ** (j - i)
    return RatFun.monomial(ctx.p, c, -i - j)


def cocycle_sign(i: int, j: int, ctx: FieldCtx) -> CycNum:
    """(-1, varpi)^(j(i+j)): the constant root of unity picked up when
    s(w)s(n(y))s(h(varpi^i))s(w)s(n(x)) is rewritten as an element of
    B~_d s(h(varpi^j)) s(w) s(n(u)).  Trivial when -1 is an n-th power."""
    return hilbert_symbol(-1, ctx.pi, ctx) ** (j * (i + j))


def tau_entry_integral(i: int, j: int, chi: MultChar, psi: AddChar, ctx: FieldCtx) -> RatFun:
    """tau(i, j) from its integral representation over the valuations congruent to i + j mod d:
    q^(j-i) (chi(varpi)X)^(-i-j) lim_r int chi(z) eta_varpi(z)^(i-j) xi(varpi^(-i-j) z) psi(z) |z|^s d*_psi z."""
    _check_index(i, j, ctx)
    twist = chi * eta_pi(ctx) ** (i - j)
    weight = weight_of(CharWeight(twist, ctx), XiWeight(psi, ctx, offset=-(i + j)))
    depth = stable_depth(weight.level, psi)
    integral = oscillatory_integral(weight, psi, ctx, depth, modulus=ctx.d, residue=i + j)
    const = psi.measure_factor() * cocycle_sign(i, j, ctx)
    return tau_prefactor(i, j, chi, ctx) * integral * const


def canonical_case(chi: MultChar, ctx: FieldCtx) -> str | None:
    """The representative class handled by the closed formulas, or None."""
    if chi.is_trivial():
        return "trivial"
    if ctx.n % 2 == 0 and chi == eta_pi(ctx):
        return "eta"
    if (chi ** ctx.n).conductor:
        return "ramified"
    return None


def alpha(n: int) -> int:
    return 1 if n % 4 == 0 else 0


def _eps_shift(chi: MultChar, psi: AddChar, ctx: FieldCtx) -> RatFun:
    """epsilon(s + 1/2, chi, psi)."""
    return epsilon(chi, psi, ctx).shift_s(Fraction(1, 2))


def _eps_double(chi: MultChar, psi: AddChar, ctx: FieldCtx) -> RatFun:
    """epsilon(2s, chi, psi_2)."""
    return epsilon(chi, psi.twisted(2), ctx).double_s()


def _tau_odd(i: int, j: int, chi: MultChar, psi: AddChar, ctx: FieldCtx, case: str) -> RatFun:
    q, n = ctx.p, ctx.n
    eta = eta_pi(ctx)
    zero = RatFun.const(q, 0)
    one_minus = 1 - Fraction(1, q)
    if case == "trivial":
        if i == j:
            L = lfactor_at(MultChar.trivial(q), ctx, n)
            if 2 * j < n - 1:
                return L * one_minus
            if 2 * j == n - 1:
                return L / lfactor_at(MultChar.trivial(q), ctx, -n, 1)
            return L * RatFun.monomial(q, one_minus, -n)
        if i + j == n - 1:
            mono = RatFun.monomial(q, Fraction(q) ** (j - i), -(n - 1))
            return mono / epsilon(eta ** (i - j), psi, ctx)
        return zero
    if (i + j + chi.conductor) % n:
        return zero
    return tau_prefactor(i, j, chi, ctx) * chi.sign() / epsilon(chi * eta ** (i - j), psi, ctx)


def _tau_even(i: int, j: int, chi: MultChar, psi: AddChar, ctx: FieldCtx, case: str,
              printed: bool = False) -> RatFun:
    """Closed forms for n even.  ``printed`` reproduces the tables in their
    published form, which omit the signs chi'(-1) of the square-ramified
    twists, the factor chi(varpi)^(-i-j) in the eta case and the top
    coefficient of the trivial twist where the two eta rows overlap."""
    q, n, d = ctx.p, ctx.n, ctx.d
    eta = eta_pi(ctx)
    one = MultChar.trivial(q)
    zero = RatFun.const(q, 0)
    one_minus = 1 - Fraction(1, q)
    L_ns = lfactor_at(one, ctx, n)
    if case == "trivial":
        if i == j and 2 * j == d - 1:
            half = Fraction(1, 2)
            num = L_ns * lfactor_at(one, ctx, -d, half)
            den = lfactor_at(one, ctx, -n, 1) * lfactor_at(one, ctx, d, half)
            return num / den
        if i == j:
            return L_ns * one_minus
        if i + j == d - 1:
            mono = RatFun.monomial(q, Fraction(q) ** (j - i), -(d - 1))
            sign = 1 if printed else (eta ** ((d + 1) * (i - j))).sign()
            return mono * _eps_shift(eta ** (i - j), psi, ctx) / _eps_double(eta ** (2 * (i - j)), psi, ctx) * sign
        return zero
    if case == "eta":
        sign = 1 if printed else eta.pi_value(ctx) ** (-i - j)
        if (j - i) % d == 1 % d:
            mono = RatFun.monomial(q, Fraction(q) ** (j - i), -(j - i))
            base = mono * _eps_shift(eta ** d, psi, ctx) * L_ns
            if (i, j) == (d - 1, 0):
                return base / lfactor_at(one, ctx, -n, 1) * sign
            out = base * one_minus
            if not printed and d % 2 == 0 and 2 * j == d:
                # the trivial twist contributes its top coefficient here
                out = out + RatFun.monomial(q, q_power(q, 1), -d)
            return out * sign
        if i + j == d - 1:
            k = i - j + 1
            mono = RatFun.monomial(q, Fraction(q) ** (j - i), -(d - 1))
            return mono * _eps_shift(eta ** k, psi, ctx) / _eps_double(eta ** (2 * k), psi, ctx) * sign
        return zero
    if (i + j + chi.conductor) % d:
        return zero
    k = (d + 1) * (i - j) + alpha(n) * (chi.conductor + i + j)
    twist = chi * eta ** k
    val = _eps_shift(twist, psi, ctx) / _eps_double(chi ** 2 * eta ** (2 * (i - j)), psi, ctx)
    return tau_prefactor(i, j, chi, ctx) * val * (chi.sign() if printed else twist.sign())


def normalized_route_available(psi: AddChar, ctx: FieldCtx) -> bool:
    """True when the closed and theta routes apply: they pull xi(varpi^(-i-j))
    out of the integral as if gamma_psi(varpi) = 1, which matters for even n."""
    return ctx.n % 2 == 1 or weil_angle(ctx.pi, psi) == 0


def _require_normalized(psi: AddChar, ctx: FieldCtx) -> None:
    if not normalized_route_available(psi, ctx):
        raise ValueError("this route needs gamma_psi(varpi) = 1; use the integral form")


def _closed(i: int, j: int, chi: MultChar, psi: AddChar, ctx: FieldCtx, printed: bool) -> RatFun:
    _check_index(i, j, ctx)
    if psi.conductor != 0:
        raise ValueError("the closed formulas assume an unramified psi")
    _require_normalized(psi, ctx)
    case = canonical_case(chi, ctx)
    if case is None:
        raise ValueError("chi is not a canonical representative; use the integral form")
    if ctx.n % 2:
        val = _tau_odd(i, j, chi, psi, ctx, case)
    else:
        val = _tau_even(i, j, chi, psi, ctx, case, printed)
    return val if printed else val * cocycle_sign(i, j, ctx)


def tau_entry_closed(i: int, j: int, chi: MultChar, psi: AddChar, ctx: FieldCtx) -> RatFun:
    """tau(i, j) from the explicit case tables (unramified psi, chi canonical)."""
    return _closed(i, j, chi, psi, ctx, printed=False)


def tau_entry_printed(i: int, j: int, chi: MultChar, psi: AddChar, ctx: FieldCtx) -> RatFun:
    """The case tables exactly as published, kept for auditing.  They differ from
    tau_entry_closed only when -1 is not an n-th power or in the eta case."""
    return _closed(i, j, chi, psi, ctx, printed=True)


def tau_entry_theta(i: int, j: int, chi: MultChar, psi: AddChar, ctx: FieldCtx) -> RatFun:
    """tau(i, j) through the coefficient families of the restricted functional equations:
    a single theta_m for n odd, a sum of two theta~_m for n even."""
    _check_index(i, j, ctx)
    _require_normalized(psi, ctx)
    n, d = ctx.n, ctx.d
    eta = eta_pi(ctx)
    pref = tau_prefactor(i, j, chi, ctx) * cocycle_sign(i, j, ctx)
    if n % 2:
        twist = chi * eta ** (i - j)
        return pref * theta((i + j + twist.conductor) % n, twist, psi, n, ctx)
    e2 = (chi ** 2 * eta ** (2 * (i - j))).conductor
    c1 = chi * eta ** ((d + 1) * (i - j))
    c2 = chi * eta ** ((d + 1) * (i - j) + d * alpha(n))
    t1 = theta_tilde((e2 + i + j) % n, c1, psi, n, ctx)
    t2 = theta_tilde((e2 + d + i + j) % n, c2, psi, n, ctx)
    return pref * (t1 + t2)


ENTRY_METHODS = {"closed": tau_entry_closed, "integral": tau_entry_integral, "theta": tau_entry_theta,
                 "printed": tau_entry_printed}


@dataclass
class CoeffMatrix:
    d: int
    entries: list[list[RatFun]]
    meta: dict = field(default_factory=dict)

    def __mul__(self, other: "CoeffMatrix") -> "CoeffMatrix":
        d = self.d
        out = []
        for i in range(d):
            row = []
            for j in range(d):
                acc = RatFun.const(self.entries[0][0].q, 0)
                for k in range(d):
                    a, b = self.entries[i][k], other.entries[k][j]
                    if not (a.is_zero() or b.is_zero()):
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return CoeffMatrix(d, out)

    def map(self, f) -> "CoeffMatrix":
        return CoeffMatrix(self.d, [[f(e) for e in row] for row in self.entries], dict(self.meta))

    def __eq__(self, other) -> bool:
        return isinstance(other, CoeffMatrix) and self.d == other.d and all(
            a == b for ra, rb in zip(self.entries, other.entries) for a, b in zip(ra, rb))

    def scalar(self) -> RatFun | None:
        """The common diagonal entry if the matrix is scalar, else None."""
        diag = self.entries[0][0]
        for i in range(self.d):
            for j in range(self.d):
                e = self.entries[i][j]
                if (i == j and e != diag) or (i != j and not e.is_zero()):
                    return None
        return diag

    def pattern(self) -> list[str]:
        return ["".join("." if e.is_zero() else "*" for e in row) for row in self.entries]

    def to_json(self) -> dict:
        return {"d": self.d, **self.meta, "entries": [[e.to_json() for e in row] for row in self.entries]}


def dmatrix(chi: MultChar, psi: AddChar, ctx: FieldCtx, method: str = "integral") -> CoeffMatrix:
    """D(chi, s, psi) with rows and columns indexed by the representatives s(varpi^i), 0 <= i < d."""
    entry = ENTRY_METHODS[method]
    d = ctx.d
    rows = [[entry(i, j, chi, psi, ctx) for j in range(d)] for i in range(d)]
    return CoeffMatrix(d, rows, {"method": method, "chi_case": canonical_case(chi, ctx) or "general"})


# -- Plancherel measure and reducibility ------------------------------------------

def plancherel_lratio(chi: MultChar, ctx: FieldCtx) -> RatFun:
    """L(ns, chi^n) L(-ns, chi^-n) / (L(1-ns, chi^-n) L(1+ns, chi^n))."""
    n = ctx.n
    chin = chi ** n
    inv = chin.inverse()
    num = lfactor_at(chin, ctx, n) * lfactor_at(inv, ctx, -n)
    den = lfactor_at(inv, ctx, -n, 1) * lfactor_at(chin, ctx, n, 1)
    return num / den


def plancherel_formula(chi: MultChar, psi: AddChar, ctx: FieldCtx) -> RatFun:
    """mu^-1 = q^(e(psi) - e(chi^n)) times the L-ratio."""
    e = psi.conductor - (chi ** ctx.n).conductor
    return plancherel_lratio(chi, ctx) * Fraction(ctx.p) ** e


@dataclass
class PlancherelCheck:
    product: CoeffMatrix
    scalar: RatFun | None
    expected: RatFun

    @property
    def ok(self) -> bool:
        return self.scalar is not None and self.scalar == self.expected


def matrix_product_check(chi: MultChar, psi: AddChar, ctx: FieldCtx, method: str = "integral") -> PlancherelCheck:
    """D(chi, s, psi) D(chi^-1, -s, psi) against chi(-1) q^-e(chi^n) times the L-ratio."""
    D1 = dmatrix(chi, psi, ctx, method)
    D2 = dmatrix(chi.inverse(), psi, ctx, method).map(lambda e: e.negate_s())
    prod = D1 * D2
    expected = plancherel_lratio(chi, ctx) * (chi.sign() * Fraction(ctx.p) ** (-(chi ** ctx.n).conductor))
    return PlancherelCheck(prod, prod.scalar(), expected)


def plancherel(chi: MultChar, psi: AddChar, ctx: FieldCtx, method: str = "formula") -> RatFun:
    if method == "formula":
        return plancherel_formula(chi, psi, ctx)
    if method != "matrices":
        raise ValueError(f"unknown method {method!r}")
    if psi.conductor != 0:
        raise ValueError("the matrix method works with an unramified psi")
    check = matrix_product_check(chi, psi, ctx)
    if check.scalar is None:
        raise ArithmeticError("D(chi, s) D(chi^-1, -s) is not scalar")
    return check.scalar / chi.sign()


@dataclass
class Reducibility:
    reducible: bool
    predicate: bool
    self_dual: bool
    witness: int | None
    pole_at_zero: bool
    reason: str


def reducible_at_zero(chi: MultChar, ctx: FieldCtx, psi: AddChar | None = None) -> Reducibility:
    """Decide reducibility of the unitary genuine principal series at s = 0 twice:
    by the central-character predicate and through tau ~ tau^w plus the Plancherel pole."""
    psi = psi or AddChar.standard(ctx.p)
    n = ctx.n
    chin = chi ** n
    predicate = n % 2 == 1 and (chin ** 2).is_trivial() and not chin.is_trivial()
    same, m = equivalent_inducing_data(chi, chi.inverse(), ctx)
    pole = plancherel_formula(chi, psi, ctx).has_pole_at(1)
    analytic = same and not pole
    if predicate != analytic:
        raise ArithmeticError(f"reducibility routes disagree for {chi!r} at n = {n}")
    if analytic:
        reason = "tau ~ tau^w and mu^-1 is regular at s = 0"
    elif not same:
        reason = "tau is not isomorphic to tau^w"
    else:
        reason = "mu^-1 has a pole at s = 0"
    return Reducibility(analytic, predicate, same, m, pole, reason)


def unitary_characters(ctx: FieldCtx, max_conductor: int = 1, pi_orders: Sequence[int] | None = None):
    """Characters with unit part of conductor <= max_conductor (one per unit-angle class)
    and chi(varpi) running over mu_(2n)."""
    p = ctx.p
    orders = pi_orders or (2 * ctx.n,)
    N = (p - 1) * p ** (max_conductor - 1) if max_conductor >= 1 else 1
    angles = [Fraction(k, N) for k in range(N)]
    out = []
    for a in angles:
        for order in orders:
            for k in range(order):
                out.append(MultChar.from_pi_value(ctx, a, CycNum.root_of_unity(Fraction(k, order))))
    return out
