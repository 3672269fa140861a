"""Exact evaluation of integrals over Q_p^* by valuation shells.

An integrand is a Schwartz term times a weight W(x) times |x|^s.  On the shell
varpi^v O^* the weight depends on the unit part only modulo p^level, and
W(varpi^(v+P) w) = ratio * W(varpi^v w).  Each shell is a finite exact sum over
units; beyond the depth where the Schwartz term is constant the shells repeat
up to the ratio and are summed as a geometric series in X = q^-s.
"""

from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction
from typing import Sequence

from ..exact import CycNum, RatFun
from ..local import AddChar, FieldCtx, MultChar, PadicNum, weil_angle, xi_angle
from .schwartz import SchwartzFn, SchwartzTerm


class Weight:
    """Interface for quasi-periodic weights; see the module docstring."""

    period: int = 1
    level: int = 0

    def shell_factor(self, v: int) -> CycNum:
        return CycNum.one()

    def unit_angle(self, v: int, w: int) -> Fraction:
        return Fraction(0)

    def ratio(self) -> CycNum:
        return CycNum.one()

    def key(self):
        return id(self)


class CharWeight(Weight):
    """x -> chi(x)."""

    def __init__(self, chi: MultChar, ctx: FieldCtx):
        self.chi, self.ctx = chi, ctx
        self.level = chi.conductor
        self._pi_value = chi.pi_value(ctx)

    def shell_factor(self, v):
        return self._pi_value ** v

    def unit_angle(self, v, w):
        return self.chi.angle_of_unit(w)

    def ratio(self):
        return self._pi_value


class WeilWeight(Weight):
    """x -> gamma_psi(shift * x)^sign."""

    period = 2
    level = 1

    def __init__(self, psi: AddChar, ctx: FieldCtx, shift=1, sign: int = -1):
        self.psi, self.ctx, self.sign = psi, ctx, sign
        self.shift = PadicNum.of(ctx.p, shift)

    def unit_angle(self, v, w):
        x = self.shift * self.ctx.pi_power(v) * PadicNum(self.ctx.p, 0, w)
        return (self.sign * weil_angle(x, self.psi)) % 1


class XiWeight(Weight):
    """x -> xi_{psi,varpi}(varpi^offset * x), defined where v(x) + offset is divisible by d."""

    level = 1

    def __init__(self, psi: AddChar, ctx: FieldCtx, offset: int = 0):
        self.psi, self.ctx, self.offset = psi, ctx, offset
        self.period = 2 * ctx.d if ctx.n % 2 == 0 else 1

    def unit_angle(self, v, w):
        if self.ctx.n % 2:
            return Fraction(0)
        if (v + self.offset) % self.ctx.d:
            raise ValueError("xi evaluated outside F*_d")
        x = self.ctx.pi_power(v + self.offset) * PadicNum(self.ctx.p, 0, w)
        return xi_angle(x, self.ctx, self.psi)


class ProductWeight(Weight):
    def __init__(self, parts: Sequence[Weight]):
        self.parts = list(parts)
        self.level = max((w.level for w in self.parts), default=0)
        self.period = 1
        for w in self.parts:
            self.period = self.period * w.period // math.gcd(self.period, w.period)

    def shell_factor(self, v):
        out = CycNum.one()
        for w in self.parts:
            out = out * w.shell_factor(v)
        return out

    def unit_angle(self, v, w):
        return sum((part.unit_angle(v, w % part.ctx.p ** part.level if part.level else 0)
                    for part in self.parts), Fraction(0)) % 1

    def ratio(self):
        out = CycNum.one()
        for w in self.parts:
            out = out * w.ratio() ** (self.period // w.period)
        return out


def weight_of(*parts: Weight) -> Weight:
    return parts[0] if len(parts) == 1 else ProductWeight(parts)


def _units(p: int, L: int, residue: int | None = None, modulus_exp: int = 0):
    """Units mod p^L, optionally restricted to residue mod p^modulus_exp."""
    mod = p ** L
    if residue is None or modulus_exp == 0:
        return (w for w in range(1, mod) if w % p)
    step = p ** modulus_exp
    base = residue % step
    return range(base, mod, step)


class ShellEngine:
    """Evaluates sum over terms of the integral of term(x) W(x) |x|^s d*x."""

    def __init__(self, ctx: FieldCtx, weight: Weight, modulus: int = 1, residue: int = 0,
                 extra_depth: int = 0):
        self.ctx, self.weight = ctx, weight
        self.modulus, self.residue = modulus, residue % modulus
        self.extra_depth = extra_depth
        self.period = weight.period * modulus // math.gcd(weight.period, modulus)
        self._tables: dict[int, tuple[dict[int, int], int]] = {}

    def _table(self, v: int) -> tuple[dict[int, int], int]:
        """Unit angle table for shell v as integers over a common denominator."""
        key = v % self.weight.period
        if key in self._tables:
            return self._tables[key]
        p, lev = self.ctx.p, self.weight.level
        if lev == 0:
            ang = {0: self.weight.unit_angle(v, 1)}
        else:
            ang = {w: self.weight.unit_angle(v, w) for w in _units(p, lev)}
        den = 1
        for a in ang.values():
            den = den * a.denominator // math.gcd(den, a.denominator)
        table = ({w: int(a * den) for w, a in ang.items()}, den)
        self._tables[key] = table
        return table

    def shell_sum(self, term: SchwartzTerm, v: int) -> CycNum:
        """Integral of term * W over the shell varpi^v O^*, without X^v."""
        if (v - self.residue) % self.modulus:
            return CycNum.zero()
        p, ctx = self.ctx.p, self.ctx
        lev = self.weight.level
        table, wden = self._table(v)
        levels = [lev, 1]
        coset_exp, coset_res = 0, None
        if not term.is_ball():
            if v != term.center.v:
                return CycNum.zero()
            coset_exp = term.level - v
            # w' = center / varpi^v as a unit
            coset_res = (term.center * ctx.pi_power(-v)).unit_mod(coset_exp)
            levels.append(coset_exp)
        mod_exp, mod_const = 0, 0
        b = term.modulation
        if not b.is_zero() and b.v + v < 0:
            mod_exp = -(b.v + v)
            mod_const = (b * ctx.pi_power(v)).unit_mod(mod_exp)
            levels.append(mod_exp)
        L = max(levels)
        N = wden * (p ** mod_exp) // math.gcd(wden, p ** mod_exp)
        fw = N // wden
        fm = N // p ** mod_exp if mod_exp else 0
        wmod = p ** lev if lev else 1
        pm = p ** mod_exp
        counts: Counter = Counter()
        if lev == 0:
            base = table[0] * fw
            for w in _units(p, L, coset_res, coset_exp):
                counts[(base + (mod_const * w % pm) * fm) % N] += 1
        else:
            for w in _units(p, L, coset_res, coset_exp):
                counts[(table[w % wmod] * fw + (mod_const * w % pm) * fm) % N] += 1
        total = CycNum.from_terms(N, counts.items()) / p ** L
        return total * self.weight.shell_factor(v) * term.coeff

    def integrate(self, phi: SchwartzFn) -> RatFun:
        q = self.ctx.p
        finite: dict[int, CycNum] = {}
        tail: dict[int, CycNum] = {}
        has_tail = False
        P = self.period

        def add(acc, v, c):
            if not c.is_zero():
                acc[v] = acc[v] + c if v in acc else c

        for term in phi.terms:
            if not term.is_ball():
                v = term.center.v
                add(finite, v, self.shell_sum(term, v))
                continue
            has_tail = True
            m = term.level
            V0 = m
            if not term.modulation.is_zero():
                V0 = max(V0, -term.modulation.v)
            V0 += self.extra_depth
            for v in range(m, V0):
                add(finite, v, self.shell_sum(term, v))
            for v in range(V0, V0 + P):
                add(tail, v, self.shell_sum(term, v))
        if not has_tail:
            return RatFun.from_laurent(q, finite)
        rho = self.weight.ratio() ** (P // self.weight.period)
        den = {0: CycNum.one(), P: -rho}
        num = dict(tail)
        for v, c in finite.items():
            add(num, v, c)
            add(num, v + P, -rho * c)
        return RatFun.from_laurent(q, num, den)


def zeta_integral(phi: SchwartzFn, weight: Weight, ctx: FieldCtx, modulus: int = 1, residue: int = 0,
                  extra_depth: int = 0) -> RatFun:
    return ShellEngine(ctx, weight, modulus, residue, extra_depth).integrate(phi)
