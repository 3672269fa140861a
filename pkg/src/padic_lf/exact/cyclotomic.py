"""Exact elements of cyclotomic fields Q(zeta_N).

An element is stored as a rational polynomial in zeta_N reduced modulo the
N-th cyclotomic polynomial, so two elements of the same order are equal iff
their coefficient vectors agree.  Elements of different orders are compared
after promotion to the lcm of the orders.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

import flint

Rational = Union[int, Fraction]


class CyclotomicError(ValueError):
    pass


@lru_cache(maxsize=None)
def cyclotomic_poly(N: int) -> flint.fmpq_poly:
    return flint.fmpq_poly(flint.fmpz_poly.cyclotomic(N))


@lru_cache(maxsize=None)
def totient(N: int) -> int:
    return cyclotomic_poly(N).degree()


@lru_cache(maxsize=None)
def _mobius(n: int) -> int:
    result = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    if n > 1:
        result = -result
    return result


@lru_cache(maxsize=None)
def _ramanujan_sum(N: int, k: int) -> int:
    # trace of zeta_N^k from Q(zeta_N) down to Q
    m = N // math.gcd(N, k)
    return _mobius(m) * totient(N) // totient(m)


def _to_fmpq(x: Rational) -> flint.fmpq:
    if isinstance(x, Fraction):
        return flint.fmpq(x.numerator, x.denominator)
    return flint.fmpq(x)


def _to_fraction(x: flint.fmpq) -> Fraction:
    return Fraction(int(x.p), int(x.q))


def _spread(poly: flint.fmpq_poly, step: int) -> flint.fmpq_poly:
    """Substitute x -> x**step."""
    if step == 1 or poly.degree() <= 0:
        return poly
    coeffs = poly.coeffs()
    out = [0] * ((len(coeffs) - 1) * step + 1)
    for i, c in enumerate(coeffs):
        out[i * step] = c
    return flint.fmpq_poly(out)


class CycNum:
    """An element of Q(zeta_N), zeta_N = exp(2*pi*i/N).

    Immutable.  Arithmetic with elements of another order promotes both to
    the lcm of the two orders.
    """

    __slots__ = ("order", "poly")

    def __init__(self, order: int, poly: flint.fmpq_poly, reduced: bool = False):
        if order < 1:
            raise CyclotomicError(f"order must be positive, got {order}")
        if not reduced:
            poly = poly % cyclotomic_poly(order)
        self.order = order
        self.poly = poly

    # -- constructors -------------------------------------------------------

    @classmethod
    def rational(cls, value: Rational) -> "CycNum":
        return cls(1, flint.fmpq_poly([_to_fmpq(value)]), reduced=True)

    @classmethod
    def zero(cls) -> "CycNum":
        return cls.rational(0)

    @classmethod
    def one(cls) -> "CycNum":
        return cls.rational(1)

    @classmethod
    def zeta(cls, N: int, k: int = 1) -> "CycNum":
        """zeta_N ** k."""
        k %= N
        coeffs = [0] * (k + 1)
        coeffs[k] = 1
        return cls(N, flint.fmpq_poly(coeffs))

    @classmethod
    def root_of_unity(cls, angle: Rational) -> "CycNum":
        """exp(2*pi*i*angle) for a rational angle."""
        angle = Fraction(angle) % 1
        return cls.zeta(angle.denominator, angle.numerator)

    @classmethod
    def from_angle_sum(cls, weights: Mapping[Fraction, Rational]) -> "CycNum":
        """Sum of w * exp(2*pi*i*angle) over the mapping angle -> w."""
        items = [(Fraction(a) % 1, w) for a, w in weights.items() if w]
        if not items:
            return cls.zero()
        N = 1
        for a, _ in items:
            N = N * a.denominator // math.gcd(N, a.denominator)
        coeffs = [Fraction(0)] * N
        for a, w in items:
            coeffs[a.numerator * (N // a.denominator)] += Fraction(w)
        return cls(N, flint.fmpq_poly([_to_fmpq(c) for c in coeffs]))

    @classmethod
    def from_terms(cls, N: int, terms: Iterable[tuple[int, Rational]]) -> "CycNum":
        coeffs: dict[int, Fraction] = {}
        for k, c in terms:
            coeffs[k % N] = coeffs.get(k % N, Fraction(0)) + Fraction(c)
        top = max(coeffs, default=0)
        dense = [Fraction(0)] * (top + 1)
        for k, c in coeffs.items():
            dense[k] = c
        return cls(N, flint.fmpq_poly([_to_fmpq(c) for c in dense]))

    @staticmethod
    def coerce(x: Union["CycNum", Rational]) -> "CycNum":
        if isinstance(x, CycNum):
            return x
        if isinstance(x, (int, Fraction)):
            return CycNum.rational(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to CycNum")

    # -- structure ----------------------------------------------------------

    def promote(self, N: int) -> "CycNum":
        """The same value viewed in Q(zeta_N); requires order | N."""
        if N % self.order:
            raise CyclotomicError(f"cannot promote order {self.order} to {N}")
        if N == self.order:
            return self
        return CycNum(N, _spread(self.poly, N // self.order))

    def _common(self, other: "CycNum") -> tuple[flint.fmpq_poly, flint.fmpq_poly, int]:
        if self.order == other.order:
            return self.poly, other.poly, self.order
        if self.is_rational():
            return self.poly, other.poly, other.order
        if other.is_rational():
            return self.poly, other.poly, self.order
        N = self.order * other.order // math.gcd(self.order, other.order)
        return self.promote(N).poly, other.promote(N).poly, N

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def is_rational(self) -> bool:
        return self.poly.degree() <= 0

    def is_one(self) -> bool:
        return self.poly.is_one()

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise CyclotomicError(f"{self} is not rational")
        if self.poly.is_zero():
            return Fraction(0)
        return _to_fraction(self.poly.coeffs()[0])

    def terms(self) -> list[tuple[int, Fraction]]:
        """Canonical (exponent, coefficient) pairs, zero coefficients dropped."""
        return [(k, _to_fraction(c)) for k, c in enumerate(self.poly.coeffs()) if c != 0]

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        try:
            other = CycNum.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, N = self._common(other)
        return CycNum(N, a + b, reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.order, -self.poly, reduced=True)

    def __sub__(self, other):
        try:
            other = CycNum.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, N = self._common(other)
        return CycNum(N, a - b, reduced=True)

    def __rsub__(self, other):
        return CycNum.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycNum(self.order, self.poly * _to_fmpq(other), reduced=True)
        if not isinstance(other, CycNum):
            return NotImplemented
        a, b, N = self._common(other)
        if a.degree() <= 0 or b.degree() <= 0:
            return CycNum(N, a * b, reduced=True)
        return CycNum(N, a * b)

    __rmul__ = __mul__

    def inverse(self) -> "CycNum":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_N)")
        if self.is_rational():
            return CycNum(self.order, flint.fmpq_poly([1 / self.poly.coeffs()[0]]), reduced=True)
        g, s, _ = self.poly.xgcd(cyclotomic_poly(self.order))
        # g is a nonzero constant because Phi_N is irreducible
        return CycNum(self.order, s / g.coeffs()[0])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return CycNum(self.order, self.poly / _to_fmpq(other), reduced=True)
        if not isinstance(other, CycNum):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return CycNum.coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "CycNum":
        if k < 0:
            return self.inverse() ** (-k)
        result = CycNum.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def conjugate(self) -> "CycNum":
        """Complex conjugate: zeta_N -> zeta_N^{-1}."""
        N = self.order
        if N <= 2:
            return self
        coeffs = self.poly.coeffs()
        out = [0] * N
        for k, c in enumerate(coeffs):
            out[(-k) % N] = c
        return CycNum(N, flint.fmpq_poly(out))

    def galois(self, a: int) -> "CycNum":
        """The automorphism zeta_N -> zeta_N^a, gcd(a, N) = 1."""
        N = self.order
        if math.gcd(a, N) != 1:
            raise CyclotomicError(f"{a} is not a unit mod {N}")
        coeffs = self.poly.coeffs()
        out = [0] * N
        for k, c in enumerate(coeffs):
            out[(a * k) % N] += c
        return CycNum(N, flint.fmpq_poly(out))

    def normalized_trace(self) -> Fraction:
        """Tr_{Q(zeta_N)/Q}(self) / phi(N); independent of the order chosen."""
        N = self.order
        total = Fraction(0)
        for k, c in enumerate(self.poly.coeffs()):
            if c != 0:
                total += _to_fraction(c) * _ramanujan_sum(N, k)
        return total / totient(N)

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        try:
            other = CycNum.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, _ = self._common(other)
        return a == b

    def __hash__(self) -> int:
        return hash(self.normalized_trace())

    def __complex__(self) -> complex:
        z = cmath.exp(2j * math.pi / self.order)
        return sum((float(c) * z**k for k, c in self.terms()), 0j)

    def __repr__(self) -> str:
        if self.is_rational():
            return f"CycNum({self.to_rational()})"
        parts = [f"{c}*z{self.order}^{k}" for k, c in self.terms()]
        return "CycNum(" + " + ".join(parts) + ")"

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "N": self.order,
            "terms": [[k, c.numerator, c.denominator] for k, c in self.terms()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "CycNum":
        return cls.from_terms(int(data["N"]), ((k, Fraction(a, b)) for k, a, b in data["terms"]))


def cyc_promote(z: CycNum, N: int) -> CycNum:
    return z.promote(N)


def root_angle(z: CycNum, max_order: int | None = None) -> Fraction:
    """The angle a with z = exp(2*pi*i*a), for z a root of unity.

    Searches orders dividing 2 * order(z) (every root of unity in Q(zeta_N)
    has order dividing lcm(2, N)).
    """
    N = z.order if max_order is None else max_order
    M = N * 2 // math.gcd(N, 2)
    zp = z.promote(M) if M % z.order == 0 else z
    for k in range(M):
        if CycNum.zeta(M, k) == zp:
            return Fraction(k, M)
    raise CyclotomicError(f"{z!r} is not a root of unity of order dividing {M}")


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def quadratic_gauss_sum(p: int) -> CycNum:
    """sum over x mod p of (x|p) zeta_p^x."""
    return CycNum.from_terms(p, ((x, legendre(x, p)) for x in range(1, p)))


@lru_cache(maxsize=None)
def sqrt_q(p: int, order: int | None = None) -> CycNum:
    """The positive real square root of an odd prime p, as a Gauss sum.

    If ``order`` is given the result must live in Q(zeta_order).
    """
    if p == 2:
        raise CyclotomicError("sqrt_q is only defined for odd primes")
    needed = p if p % 4 == 1 else 4 * p
    if order is not None and order % needed:
        raise CyclotomicError(f"sqrt({p}) is not in Q(zeta_{order}); need {needed} | order")
    g = quadratic_gauss_sum(p)
    if p % 4 == 3:
        g = g / CycNum.zeta(4)
    return g


def q_power(p: int, half_exponent: int) -> CycNum:
    """p ** (half_exponent / 2) exactly."""
    whole, odd = divmod(half_exponent, 2)
    value = CycNum.rational(Fraction(p) ** whole)
    if odd:
        value = value * sqrt_q(p)
    return value
