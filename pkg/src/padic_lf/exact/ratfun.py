"""Rational functions in X = q^(-s) with cyclotomic coefficients.

A RatFun is X^shift * num(X) / den(X) where num and den are coprime
polynomials, neither divisible by X, and den has constant term 1.  This
form is unique, so equality is a structural comparison.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .cyclotomic import CycNum, CyclotomicError, q_power

Poly = list  # list[CycNum], lowest degree first
Scalar = Union[CycNum, int, Fraction]


# -- dense polynomial helpers ------------------------------------------------

def _trim(a: Poly) -> Poly:
    while a and a[-1].is_zero():
        a.pop()
    return a


def _padd(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return _trim(out)


def _pneg(a: Poly) -> Poly:
    return [-c for c in a]


def _pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return []
    out = [CycNum.zero()] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            if not y.is_zero():
                out[i + j] = out[i + j] + x * y
    return _trim(out)


def _pscale(a: Poly, c: CycNum) -> Poly:
    return _trim([x * c for x in a])


def _pdivmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    inv = b[-1].inverse()
    quot = [CycNum.zero()] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        c = a[-1] * inv
        quot[k] = c
        for i, y in enumerate(b):
            a[i + k] = a[i + k] - c * y
        a.pop()
        _trim(a)
    return _trim(quot), a


def _pmonic(a: Poly) -> Poly:
    return _pscale(a, a[-1].inverse())


def _pgcd(a: Poly, b: Poly) -> Poly:
    a, b = list(a), list(b)
    while b:
        _, r = _pdivmod(a, b)
        a, b = b, r
    return _pmonic(a) if a else a


def _strip_x(a: Poly) -> tuple[Poly, int]:
    k = 0
    while k < len(a) and a[k].is_zero():
        k += 1
    return a[k:], k


def _peval(a: Poly, x: CycNum) -> CycNum:
    acc = CycNum.zero()
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _from_laurent(terms: Mapping[int, CycNum]) -> tuple[Poly, int]:
    """Dense poly and the exponent of its lowest term."""
    items = {k: c for k, c in terms.items() if not c.is_zero()}
    if not items:
        return [], 0
    lo, hi = min(items), max(items)
    out = [CycNum.zero()] * (hi - lo + 1)
    for k, c in items.items():
        out[k - lo] = c
    return out, lo


class RatFun:
    """X^shift * num / den, with X = q^(-s) and q = p."""

    __slots__ = ("q", "shift", "num", "den")

    def __init__(self, q: int, num: Sequence[Scalar], den: Sequence[Scalar] = (1,), shift: int = 0,
                 reduce: bool = True):
        self.q = q
        num = _trim([CycNum.coerce(c) for c in num])
        den = _trim([CycNum.coerce(c) for c in den])
        if not den:
            raise ZeroDivisionError("RatFun with zero denominator")
        if not num:
            self.shift, self.num, self.den = 0, [], [CycNum.one()]
            return
        num, kn = _strip_x(num)
        den, kd = _strip_x(den)
        shift += kn - kd
        if reduce and len(den) > 1 and len(num) > 1:
            g = _pgcd(num, den)
            if len(g) > 1:
                num, _ = _pdivmod(num, g)
                den, _ = _pdivmod(den, g)
        c = den[0].inverse()
        if not c.is_one():
            num = _pscale(num, c)
            den = _pscale(den, c)
        self.shift, self.num, self.den = shift, num, den

    # -- constructors -------------------------------------------------------

    @classmethod
    def const(cls, q: int, c: Scalar) -> "RatFun":
        return cls(q, [c])

    @classmethod
    def monomial(cls, q: int, c: Scalar, k: int) -> "RatFun":
        """c * X^k."""
        return cls(q, [c], shift=k)

    @classmethod
    def X(cls, q: int) -> "RatFun":
        return cls.monomial(q, 1, 1)

    @classmethod
    def from_laurent(cls, q: int, num: Mapping[int, Scalar], den: Mapping[int, Scalar] | None = None) -> "RatFun":
        """Build from exponent -> coefficient maps (negative exponents allowed)."""
        n, ln = _from_laurent({k: CycNum.coerce(c) for k, c in num.items()})
        if den is None:
            d, ld = [CycNum.one()], 0
        else:
            d, ld = _from_laurent({k: CycNum.coerce(c) for k, c in den.items()})
        return cls(q, n, d, shift=ln - ld)

    @classmethod
    def geometric(cls, q: int, ratio: Scalar, period: int = 1) -> "RatFun":
        """1 / (1 - ratio * X^period)."""
        den = [CycNum.zero()] * (period + 1)
        den[0] = CycNum.one()
        den[period] = -CycNum.coerce(ratio)
        return cls(q, [1], den)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "RatFun":
        if isinstance(other, RatFun):
            if other.q != self.q:
                raise ValueError(f"mixing RatFun over q={self.q} and q={other.q}")
            return other
        return RatFun.const(self.q, other)

    def _parts(self) -> tuple[Poly, Poly, int]:
        return self.num, self.den, self.shift

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        k = min(self.shift, other.shift)
        a = [CycNum.zero()] * (self.shift - k) + self.num
        b = [CycNum.zero()] * (other.shift - k) + other.num
        if self.den == other.den:
            return RatFun(self.q, _padd(a, b), self.den, shift=k)
        num = _padd(_pmul(a, other.den), _pmul(b, self.den))
        return RatFun(self.q, num, _pmul(self.den, other.den), shift=k)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(self.q, _pneg(self.num), self.den, self.shift, reduce=False)

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycNum)):
            c = CycNum.coerce(other)
            if c.is_zero():
                return RatFun.const(self.q, 0)
            return RatFun(self.q, _pscale(self.num, c), self.den, self.shift, reduce=False)
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RatFun.const(self.q, 0)
        return RatFun(self.q, _pmul(self.num, other.num), _pmul(self.den, other.den),
                      self.shift + other.shift)

    __rmul__ = __mul__

    def inverse(self) -> "RatFun":
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero RatFun")
        return RatFun(self.q, self.den, self.num, -self.shift, reduce=False)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, CycNum)):
            return self * CycNum.coerce(other).inverse()
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "RatFun":
        if k < 0:
            return self.inverse() ** (-k)
        result = RatFun.const(self.q, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def __eq__(self, other) -> bool:
        try:
            other = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return (self.shift == other.shift and self.num == other.num and self.den == other.den)

    def __hash__(self):
        return hash((self.q, self.shift, len(self.num), len(self.den)))

    def as_monomial(self) -> tuple[CycNum, int] | None:
        """(c, k) if self == c * X^k, else None."""
        if self.is_zero():
            return CycNum.zero(), 0
        if len(self.num) == 1 and len(self.den) == 1:
            return self.num[0], self.shift
        return None

    def is_constant(self) -> bool:
        m = self.as_monomial()
        return m is not None and (m[1] == 0 or m[0].is_zero())

    def constant_value(self) -> CycNum:
        m = self.as_monomial()
        if m is None or (m[1] != 0 and not m[0].is_zero()):
            raise ValueError(f"{self} is not constant")
        return m[0]

    # -- evaluation ---------------------------------------------------------

    def __call__(self, x: Scalar) -> CycNum:
        x = CycNum.coerce(x)
        d = _peval(self.den, x)
        if d.is_zero():
            raise ZeroDivisionError(f"pole of {self} at X = {x}")
        return _peval(self.num, x) * x ** self.shift / d

    def has_pole_at(self, x: Scalar) -> bool:
        x = CycNum.coerce(x)
        if self.is_zero():
            return False
        if x.is_zero():
            return self.shift < 0
        return _peval(self.den, x).is_zero()

    def numerator_laurent(self) -> dict[int, CycNum]:
        return {k + self.shift: c for k, c in enumerate(self.num) if not c.is_zero()}

    # -- substitution -------------------------------------------------------

    def substitute(self, scale: int, offset: Fraction | int = 0) -> "RatFun":
        """Apply s -> scale*s + offset.

        q^(-s) becomes q^(-offset) X^scale, so X^k maps to q^(-offset*k) X^(scale*k).
        """
        if scale == 0:
            raise ValueError("scale must be nonzero")
        offset = Fraction(offset)
        if (2 * offset).denominator != 1:
            raise ValueError(f"offset must be a multiple of 1/2, got {offset}")
        half = int(-2 * offset)  # q^(-offset) = q^(half/2)

        def image(poly: Poly, base: int) -> dict[int, CycNum]:
            out = {}
            for k, c in enumerate(poly):
                if c.is_zero():
                    continue
                e = k + base
                factor = q_power(self.q, half * e) if half else CycNum.one()
                out[scale * e] = c * factor
            return out

        num = image(self.num, self.shift)
        den = image(self.den, 0)
        n, ln = _from_laurent(num)
        d, ld = _from_laurent(den)
        return RatFun(self.q, n, d, shift=ln - ld, reduce=False)

    def shift_s(self, t: Fraction | int) -> "RatFun":
        """s -> s + t."""
        return self.substitute(1, t)

    def reflect(self) -> "RatFun":
        """s -> 1 - s."""
        return self.substitute(-1, 1)

    def negate_s(self) -> "RatFun":
        """s -> -s."""
        return self.substitute(-1, 0)

    def double_s(self) -> "RatFun":
        """s -> 2s."""
        return self.substitute(2, 0)

    # -- display / serialization -------------------------------------------

    def __repr__(self) -> str:
        def fmt(poly, shift=0):
            parts = []
            for k, c in enumerate(poly):
                if c.is_zero():
                    continue
                e = k + shift
                parts.append(f"({c!r})*X^{e}" if e else f"({c!r})")
            return " + ".join(parts) or "0"

        if len(self.den) == 1:
            return f"RatFun[{fmt(self.num, self.shift)}]"
        return f"RatFun[({fmt(self.num, self.shift)}) / ({fmt(self.den)})]"

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "monomial_exp": self.shift,
            "num_coeffs": [c.to_json() for c in self.num],
            "den_coeffs": [c.to_json() for c in self.den],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "RatFun":
        return cls(int(data["q"]),
                   [CycNum.from_json(c) for c in data["num_coeffs"]],
                   [CycNum.from_json(c) for c in data["den_coeffs"]],
                   shift=int(data["monomial_exp"]))


def rf_substitute(f: RatFun, rule: str) -> RatFun:
    """Named substitution rules: 's->2s', 's->s+1/2', 's->-s', 's->1-s',
    or 's->s+t' with t a multiple of 1/2."""
    rule = rule.replace(" ", "")
    if rule == "s->2s":
        return f.double_s()
    if rule == "s->-s":
        return f.negate_s()
    if rule == "s->1-s":
        return f.reflect()
    if rule.startswith("s->s+"):
        return f.shift_s(Fraction(rule[len("s->s+"):]))
    if rule.startswith("s->s-"):
        return f.shift_s(-Fraction(rule[len("s->s-"):]))
    raise ValueError(f"unknown substitution rule {rule!r}")


def poly_terms(f: RatFun) -> Iterable[tuple[int, CycNum]]:
    return f.numerator_laurent().items()


__all__ = ["RatFun", "rf_substitute", "CyclotomicError"]
