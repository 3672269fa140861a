"""The local field Q_p with mu_n inside it, and its elements at tracked precision."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Union

DEFAULT_PRECISION = 30


class PrecisionError(ArithmeticError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@lru_cache(maxsize=None)
def smallest_primitive_root(p: int) -> int:
    factors = [q for q in range(2, p) if (p - 1) % q == 0 and is_prime(q)]
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    if p == 2:
        return 1
    raise ValueError(f"no primitive root mod {p}")


@lru_cache(maxsize=None)
def unit_generator(p: int) -> int:
    """A generator of (Z/p^e)^* for every e >= 1, congruent to g mod p."""
    g = smallest_primitive_root(p)
    return g if pow(g, p - 1, p * p) != 1 else g + p


@lru_cache(maxsize=None)
def _dlog_table(p: int, e: int) -> dict[int, int]:
    mod = p ** e
    G = unit_generator(p)
    table = {}
    x = 1
    for k in range((p - 1) * p ** (e - 1)):
        table[x] = k
        x = x * G % mod
    return table


def dlog(w: int, p: int, e: int) -> int:
    """Discrete log of the unit w mod p^e to the base unit_generator(p)."""
    if e <= 0:
        return 0
    w %= p ** e
    if w % p == 0:
        raise ValueError(f"{w} is not a unit mod {p}")
    if e <= 3 or p ** e <= 50000:
        return _dlog_table(p, e)[w]
    raise PrecisionError(f"discrete log mod {p}^{e} is beyond the supported range")


def valuation_of_int(x: int, p: int) -> int:
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


class PadicNum:
    """A nonzero element p^v * u of Q_p with the unit u known mod p^precision,
    or the zero element (valuation None)."""

    __slots__ = ("p", "v", "unit", "precision")

    def __init__(self, p: int, v: int | None, unit: int = 0, precision: int = DEFAULT_PRECISION):
        self.p = p
        self.precision = precision
        if v is None:
            self.v, self.unit = None, 0
            return
        mod = p ** precision
        unit %= mod
        if unit % p == 0:
            raise ValueError(f"unit part {unit} is divisible by {p}")
        self.v, self.unit = v, unit

    @classmethod
    def zero(cls, p: int) -> "PadicNum":
        return cls(p, None)

    @classmethod
    def from_rational(cls, p: int, x: Union[int, Fraction], precision: int = DEFAULT_PRECISION) -> "PadicNum":
        x = Fraction(x)
        if x == 0:
            return cls.zero(p)
        num, den = x.numerator, x.denominator
        v = 0
        while num % p == 0:
            num //= p
            v += 1
        while den % p == 0:
            den //= p
            v -= 1
        mod = p ** precision
        return cls(p, v, num * pow(den, -1, mod) % mod, precision)

    @classmethod
    def of(cls, p: int, x) -> "PadicNum":
        if isinstance(x, PadicNum):
            return x
        return cls.from_rational(p, x)

    def is_zero(self) -> bool:
        return self.v is None

    def _check(self, other: "PadicNum") -> None:
        if other.p != self.p:
            raise ValueError(f"mixing Q_{self.p} and Q_{other.p}")

    def __mul__(self, other):
        if not isinstance(other, PadicNum):
            other = PadicNum.from_rational(self.p, other)
        self._check(other)
        if self.is_zero() or other.is_zero():
            return PadicNum.zero(self.p)
        k = min(self.precision, other.precision)
        return PadicNum(self.p, self.v + other.v, self.unit * other.unit, k)

    __rmul__ = __mul__

    def inverse(self) -> "PadicNum":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q_p")
        mod = self.p ** self.precision
        return PadicNum(self.p, -self.v, pow(self.unit, -1, mod), self.precision)

    def __truediv__(self, other):
        if not isinstance(other, PadicNum):
            other = PadicNum.from_rational(self.p, other)
        return self * other.inverse()

    def __neg__(self):
        if self.is_zero():
            return self
        return PadicNum(self.p, self.v, -self.unit, self.precision)

    def __add__(self, other):
        if not isinstance(other, PadicNum):
            other = PadicNum.from_rational(self.p, other)
        self._check(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        p = self.p
        lo = min(self.v, other.v)
        # absolute precision: known mod p^(v + precision)
        abs_prec = min(self.v + self.precision, other.v + other.precision)
        mod = p ** (abs_prec - lo)
        total = (self.unit * p ** (self.v - lo) + other.unit * p ** (other.v - lo)) % mod
        if total == 0:
            raise PrecisionError("sum is zero to the known precision")
        extra = valuation_of_int(total, p)
        return PadicNum(p, lo + extra, total // p ** extra, abs_prec - lo - extra)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, PadicNum):
            other = PadicNum.from_rational(self.p, other)
        return self + (-other)

    def __pow__(self, k: int) -> "PadicNum":
        if self.is_zero():
            if k <= 0:
                raise ZeroDivisionError("non-positive power of zero")
            return self
        base = self if k >= 0 else self.inverse()
        mod = self.p ** self.precision
        return PadicNum(self.p, base.v * abs(k), pow(base.unit, abs(k), mod), self.precision)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PadicNum):
            try:
                other = PadicNum.from_rational(self.p, other)
            except (TypeError, ValueError):
                return NotImplemented
        if self.p != other.p or self.v != other.v:
            return False
        if self.is_zero():
            return True
        k = min(self.precision, other.precision)
        return (self.unit - other.unit) % self.p ** k == 0

    def __hash__(self):
        return hash((self.p, self.v, self.unit % self.p))

    def unit_mod(self, e: int) -> int:
        if e > self.precision:
            raise PrecisionError(f"unit known mod {self.p}^{self.precision}, need {self.p}^{e}")
        return self.unit % self.p ** e

    def unit_part(self) -> "PadicNum":
        return PadicNum(self.p, 0, self.unit, self.precision)

    def frac_angle(self) -> Fraction:
        """The p-adic fractional part of self, in [0, 1)."""
        if self.is_zero() or self.v >= 0:
            return Fraction(0)
        k = -self.v
        return Fraction(self.unit_mod(k), self.p ** k)

    def to_rational(self) -> Fraction:
        """The rational representative p^v * u with 0 < u < p^precision."""
        if self.is_zero():
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.p) ** self.v

    def __repr__(self) -> str:
        if self.is_zero():
            return f"PadicNum({self.p}, 0)"
        return f"PadicNum({self.p}^{self.v} * {self.unit % self.p ** min(self.precision, 4)}...)"

    def to_json(self) -> dict:
        if self.is_zero():
            return {"p": self.p, "zero": True}
        return {"p": self.p, "v": self.v, "unit": self.unit, "precision": self.precision}


@dataclass(frozen=True)
class FieldCtx:
    """F = Q_p with mu_n in F, a uniformizer u_pi * p, and the embedding of
    mu_{p-1} sending the Teichmuller lift of g to exp(2 pi i / (p-1))."""

    p: int
    n: int
    uniformizer_unit: int = 1
    g: int = field(init=False)
    u0: int = field(init=False)

    def __post_init__(self):
        if self.p == 2 or not is_prime(self.p):
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.n < 1 or (self.p - 1) % self.n:
            raise ValueError(f"n = {self.n} must divide p - 1 = {self.p - 1}")
        if self.uniformizer_unit % self.p == 0:
            raise ValueError("uniformizer unit must be a unit")
        g = smallest_primitive_root(self.p)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "u0", g)

    @property
    def q(self) -> int:
        return self.p

    @property
    def d(self) -> int:
        return self.n // math.gcd(self.n, 2)

    @property
    def G(self) -> int:
        return unit_generator(self.p)

    def num(self, x) -> PadicNum:
        return PadicNum.of(self.p, x)

    @property
    def pi(self) -> PadicNum:
        return PadicNum(self.p, 1, self.uniformizer_unit)

    def pi_power(self, k: int) -> PadicNum:
        return self.pi ** k

    def unit(self, u: int) -> PadicNum:
        return PadicNum(self.p, 0, u)

    def with_uniformizer(self, u: int) -> "FieldCtx":
        return FieldCtx(self.p, self.n, u % self.p ** DEFAULT_PRECISION)

    def with_n(self, n: int) -> "FieldCtx":
        return FieldCtx(self.p, n, self.uniformizer_unit)

    def pi_coordinates(self, x: PadicNum) -> tuple[int, PadicNum]:
        """(v, w) with x = pi^v * w and w a unit."""
        v = x.v
        w = x * self.pi_power(-v)
        return v, w

    def to_json(self) -> dict:
        return {"p": self.p, "n": self.n, "g": self.g, "u0": self.u0,
                "uniformizer_unit": self.uniformizer_unit}
