"""Schwartz functions on Q_p built from modulated indicator functions."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from ..exact import CycNum, q_power
from ..local import AddChar, PadicNum


@dataclass(frozen=True)
class SchwartzTerm:
    """coeff * psi_0(modulation * x) * 1_{center + P^level}(x)."""

    coeff: CycNum
    center: PadicNum
    level: int
    modulation: PadicNum

    @property
    def p(self) -> int:
        return self.center.p

    def is_ball(self) -> bool:
        return self.center.is_zero() or self.center.v >= self.level

    def canonical(self) -> "SchwartzTerm":
        if self.is_ball() and not self.center.is_zero():
            return SchwartzTerm(self.coeff, PadicNum.zero(self.p), self.level, self.modulation)
        return self

    def contains(self, x: PadicNum) -> bool:
        a, m = self.center, self.level
        if self.is_ball():
            return x.is_zero() or x.v >= m
        if x.is_zero() or x.v != a.v:
            return False
        k = m - a.v
        return (x.unit - a.unit) % self.p ** k == 0

    def __call__(self, x: PadicNum) -> CycNum:
        if not self.contains(x):
            return CycNum.zero()
        if self.modulation.is_zero() or x.is_zero():
            return self.coeff
        return self.coeff * CycNum.root_of_unity((self.modulation * x).frac_angle())


class SchwartzFn:
    """A finite sum of SchwartzTerm."""

    def __init__(self, p: int, terms: Iterable[SchwartzTerm] = ()):
        self.p = p
        self.terms = tuple(t.canonical() for t in terms if not t.coeff.is_zero())

    # -- constructors -------------------------------------------------------

    @classmethod
    def indicator(cls, p: int, center=0, level: int = 0, coeff=1, modulation=0) -> "SchwartzFn":
        term = SchwartzTerm(CycNum.coerce(coeff), PadicNum.of(p, center), level, PadicNum.of(p, modulation))
        return cls(p, [term])

    @classmethod
    def canonical_test(cls, p: int, r: int, scale=1) -> "SchwartzFn":
        """q^r * 1_{1 + P^r}: its Fourier transform under an unramified psi is
        psi(x) 1_{P^-r}(x) and its Mellin transform is 1 when r >= e(chi)."""
        if r < 1:
            raise ValueError("r must be at least 1")
        return cls.indicator(p, 1, r, CycNum.coerce(scale) * p ** r)

    # -- algebra ----------------------------------------------------------

    def __add__(self, other: "SchwartzFn") -> "SchwartzFn":
        return SchwartzFn(self.p, self.terms + other.terms)

    def scaled(self, c) -> "SchwartzFn":
        c = CycNum.coerce(c)
        return SchwartzFn(self.p, [SchwartzTerm(t.coeff * c, t.center, t.level, t.modulation)
                                   for t in self.terms])

    def dilate(self, a) -> "SchwartzFn":
        """x -> phi(a x)."""
        a = PadicNum.of(self.p, a)
        out = []
        for t in self.terms:
            center = t.center if t.center.is_zero() else t.center / a
            out.append(SchwartzTerm(t.coeff, center, t.level - a.v, t.modulation * a))
        return SchwartzFn(self.p, out)

    def __call__(self, x) -> CycNum:
        x = PadicNum.of(self.p, x)
        total = CycNum.zero()
        for t in self.terms:
            total = total + t(x)
        return total

    def fourier(self, psi: AddChar) -> "SchwartzFn":
        """phi^(x) = integral of phi(y) psi(x y) d_psi y (self-dual measure).

        With psi = psi_0(alpha .), e = e(psi), each term transforms as
        psi_0(b y) 1_{a+P^m}(y)  ->  q^(e/2-m) psi_0(a b) psi_0(a alpha x) 1_{-b/alpha + P^(e-m)}(x).
        """
        alpha = psi.twist
        e = psi.conductor
        p = self.p
        out = []
        for t in self.terms:
            a, b, m = t.center, t.modulation, t.level
            coeff = t.coeff * q_power(p, e - 2 * m)
            if not a.is_zero() and not b.is_zero():
                coeff = coeff * CycNum.root_of_unity((a * b).frac_angle())
            modulation = PadicNum.zero(p) if a.is_zero() else a * alpha
            center = PadicNum.zero(p) if b.is_zero() else -(b / alpha)
            out.append(SchwartzTerm(coeff, center, e - m, modulation))
        return SchwartzFn(p, out)

    def is_tilde_supported(self) -> bool:
        """True if every term is an unmodulated coset a(1 + P^r), r >= 1."""
        return all(not t.is_ball() and t.modulation.is_zero() for t in self.terms)

    def to_json(self) -> dict:
        def num(x: PadicNum):
            return None if x.is_zero() else {"v": x.v, "unit": x.unit}

        return {"p": self.p, "terms": [
            {"coeff": t.coeff.to_json(), "center": num(t.center), "level": t.level,
             "modulation": num(t.modulation)} for t in self.terms]}

    @classmethod
    def from_json(cls, data: dict) -> "SchwartzFn":
        p = int(data["p"])

        def num(x):
            return PadicNum.zero(p) if x is None else PadicNum(p, int(x["v"]), int(x["unit"]))

        return cls(p, [SchwartzTerm(CycNum.from_json(t["coeff"]), num(t["center"]), int(t["level"]),
                                    num(t["modulation"])) for t in data["terms"]])

    @classmethod
    def from_spec(cls, p: int, items: list[dict]) -> "SchwartzFn":
        """Terms given as {coeff, center_val, center_unit, level} (center_unit 0 for the ball)."""
        terms = []
        for it in items:
            unit = int(it.get("center_unit", 0))
            center = PadicNum.zero(p) if unit == 0 else PadicNum(p, int(it.get("center_val", 0)), unit)
            terms.append(SchwartzTerm(CycNum.coerce(Fraction(it.get("coeff", 1))), center, int(it["level"]),
                                      PadicNum.zero(p)))
        return cls(p, terms)

    def __repr__(self) -> str:
        return f"SchwartzFn(p={self.p}, {len(self.terms)} terms)"


def random_schwartz(p: int, rng: random.Random, n_terms: int = 3, vrange: tuple[int, int] = (-1, 1),
                    max_depth: int = 2, ball_ok: bool = True) -> SchwartzFn:
    """A random combination of indicators of cosets and balls with rational coefficients."""
    terms = []
    for _ in range(n_terms):
        coeff = CycNum.rational(Fraction(rng.randint(-5, 5) or 1, rng.randint(1, 4)))
        v = rng.randint(*vrange)
        if ball_ok and rng.random() < 0.3:
            terms.append(SchwartzTerm(coeff, PadicNum.zero(p), v, PadicNum.zero(p)))
            continue
        unit = rng.randrange(1, p ** (max_depth + 1))
        while unit % p == 0:
            unit = rng.randrange(1, p ** (max_depth + 1))
        level = v + rng.randint(1, max_depth)
        terms.append(SchwartzTerm(coeff, PadicNum(p, v, unit), level, PadicNum.zero(p)))
    return SchwartzFn(p, terms)
