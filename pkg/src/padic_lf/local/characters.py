"""Multiplicative characters of Q_p^* and additive characters of Q_p."""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from ..exact import CycNum, q_power
from .field import FieldCtx, PadicNum, dlog


def _p_exponent(m: int, p: int) -> int:
    k = 0
    while m % p == 0:
        m //= p
        k += 1
    return k


class MultChar:
    """chi(p^v u) = chi(p)^v * exp(2 pi i * unit_angle * dlog_G(u)).

    ``unit_angle`` is chi(G) as an angle, with G the fixed generator of every
    (Z/p^e)^*; ``p_value`` is chi(p).  The value at the uniformizer of a
    FieldCtx is derived from these.
    """

    __slots__ = ("p", "unit_angle", "p_value", "conductor")

    def __init__(self, p: int, unit_angle: Union[Fraction, int] = 0, p_value=1):
        unit_angle = Fraction(unit_angle) % 1
        den = unit_angle.denominator
        k = _p_exponent(den, p)
        if (den // p ** k) and (p - 1) % (den // p ** k):
            raise ValueError(f"unit angle {unit_angle} is not a character of Z_{p}^*")
        self.p = p
        self.unit_angle = unit_angle
        self.p_value = CycNum.coerce(p_value)
        if self.p_value.is_zero():
            raise ValueError("chi(p) must be nonzero")
        self.conductor = 0 if unit_angle == 0 else 1 + k

    # -- construction ---------------------------------------------------

    @classmethod
    def trivial(cls, p: int) -> "MultChar":
        return cls(p)

    @classmethod
    def from_pi_value(cls, ctx: FieldCtx, unit_angle, pi_value) -> "MultChar":
        """The character with given unit part and chi(varpi) for ctx's varpi."""
        base = cls(ctx.p, unit_angle, 1)
        u = base.unit_value(ctx.uniformizer_unit)
        return cls(ctx.p, unit_angle, CycNum.coerce(pi_value) / u)

    @classmethod
    def unramified(cls, ctx: FieldCtx, pi_value) -> "MultChar":
        return cls.from_pi_value(ctx, 0, pi_value)

    # -- evaluation -----------------------------------------------------

    def angle_of_unit(self, w: int) -> Fraction:
        if self.conductor == 0:
            return Fraction(0)
        return (self.unit_angle * dlog(w, self.p, self.conductor)) % 1

    def unit_value(self, w: int) -> CycNum:
        return CycNum.root_of_unity(self.angle_of_unit(w))

    def __call__(self, x) -> CycNum:
        x = PadicNum.of(self.p, x)
        if x.is_zero():
            raise ValueError("character evaluated at zero")
        return self.p_value ** x.v * self.unit_value(x.unit_mod(max(self.conductor, 1)))

    def pi_value(self, ctx: FieldCtx) -> CycNum:
        return self(ctx.pi)

    def sign(self) -> CycNum:
        """chi(-1)."""
        return self(-1)

    # -- group structure ------------------------------------------------

    def __mul__(self, other: "MultChar") -> "MultChar":
        if other.p != self.p:
            raise ValueError("characters of different fields")
        return MultChar(self.p, self.unit_angle + other.unit_angle, self.p_value * other.p_value)

    def inverse(self) -> "MultChar":
        return MultChar(self.p, -self.unit_angle, self.p_value.inverse())

    def __truediv__(self, other: "MultChar") -> "MultChar":
        return self * other.inverse()

    def __pow__(self, k: int) -> "MultChar":
        return MultChar(self.p, self.unit_angle * k, self.p_value ** k)

    def is_trivial(self) -> bool:
        return self.conductor == 0 and self.p_value.is_one()

    def is_unramified(self) -> bool:
        return self.conductor == 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultChar):
            return NotImplemented
        return self.p == other.p and self.unit_angle == other.unit_angle and self.p_value == other.p_value

    def __hash__(self):
        return hash((self.p, self.unit_angle, self.p_value))

    def __repr__(self) -> str:
        return f"MultChar(p={self.p}, e={self.conductor}, unit_angle={self.unit_angle}, chi(p)={self.p_value!r})"

    def to_json(self, ctx: FieldCtx | None = None) -> dict:
        e = self.conductor
        order = (self.p - 1) * self.p ** (e - 1) if e else 1
        data = {"e": e, "unit_part_exponent": int(self.unit_angle * order)}
        if ctx is not None:
            data["value_at_pi"] = self.pi_value(ctx).to_json()
        data["value_at_p"] = self.p_value.to_json()
        return data

    @classmethod
    def from_json(cls, p: int, data: dict, ctx: FieldCtx | None = None) -> "MultChar":
        e = int(data["e"])
        order = (p - 1) * p ** (e - 1) if e else 1
        angle = Fraction(int(data["unit_part_exponent"]), order)
        if "value_at_p" in data:
            return cls(p, angle, CycNum.from_json(data["value_at_p"]))
        if ctx is None:
            raise ValueError("value_at_pi needs a FieldCtx")
        return cls.from_pi_value(ctx, angle, CycNum.from_json(data["value_at_pi"]))


class AddChar:
    """psi(x) = psi_0(a x), where psi_0(x) = exp(2 pi i {x}_p) is the
    unramified base character.  Its conductor is e(psi) = -v(a): psi is
    trivial exactly on P^e(psi)."""

    __slots__ = ("p", "twist")

    def __init__(self, p: int, twist=1):
        twist = PadicNum.of(p, twist)
        if twist.is_zero():
            raise ValueError("additive character twist must be nonzero")
        self.p = p
        self.twist = twist

    @classmethod
    def standard(cls, p: int) -> "AddChar":
        return cls(p, 1)

    @property
    def conductor(self) -> int:
        return -self.twist.v

    def angle(self, x) -> Fraction:
        x = PadicNum.of(self.p, x)
        if x.is_zero():
            return Fraction(0)
        return (self.twist * x).frac_angle()

    def __call__(self, x) -> CycNum:
        return CycNum.root_of_unity(self.angle(x))

    def twisted(self, a) -> "AddChar":
        """psi_a(x) = psi(a x)."""
        return AddChar(self.p, self.twist * PadicNum.of(self.p, a))

    def measure_factor(self) -> CycNum:
        """d_psi x = q^(e(psi)/2) dx."""
        return q_power(self.p, self.conductor)

    def __eq__(self, other) -> bool:
        return isinstance(other, AddChar) and self.p == other.p and self.twist == other.twist

    def __hash__(self):
        return hash((self.p, self.twist))

    def __repr__(self) -> str:
        return f"AddChar(p={self.p}, twist={self.twist!r})"

    def to_json(self) -> dict:
        return {"twist": self.twist.to_json(), "conductor": self.conductor}


def char_eval(chi: MultChar, x) -> CycNum:
    return chi(x)


def add_char_eval(psi: AddChar, x) -> CycNum:
    return psi(x)
