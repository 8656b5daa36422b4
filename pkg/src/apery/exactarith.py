"""Exact and truncated p-adic arithmetic.

Integers are Python ints and rationals are :class:`fractions.Fraction`; this
module adds residues modulo ``m`` and :class:`PadicApprox`, a rational known
only to finite p-adic precision.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

__all__ = [
    "NonInvertible",
    "PrecisionExhausted",
    "Residue",
    "PadicApprox",
    "mod_inverse",
    "binomial",
    "valuation",
    "rational_to_padic",
    "padic_from_residue",
    "padic_arith",
    "jacobi_symbol",
    "INF",
]

INF = math.inf

Rational = Union[int, Fraction]


class NonInvertible(ArithmeticError):
    """Raised when an element has no inverse modulo m."""


class PrecisionExhausted(ArithmeticError):
    """Raised when a p-adic approximation cannot determine the requested residue."""


def mod_inverse(a: int, m: int) -> "Residue":
    """Inverse of ``a`` modulo ``m`` as a :class:`Residue`.

    >>> mod_inverse(3, 32).value
    11
    """
    if m < 1:
        raise ValueError("modulus must be positive")
    try:
        inv = pow(a, -1, m)
    except ValueError:
        raise NonInvertible(f"{a} is not invertible modulo {m}") from None
    return Residue(m, inv)


def binomial(n: int, k: int) -> int:
    """Binomial coefficient, extended to negative ``n`` by the falling factorial."""
    if k < 0:
        return 0
    if n >= 0:
        return math.comb(n, k)
    # C(n, k) = (-1)^k C(k - n - 1, k)
    c = math.comb(k - n - 1, k)
    return -c if k & 1 else c


def valuation(x: Rational, p: int) -> Union[int, float]:
    """p-adic valuation of an integer or Fraction; ``INF`` for zero."""
    if x == 0:
        return INF
    x = Fraction(x)
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def jacobi_symbol(a: int, n: int) -> int:
    if n <= 0 or n % 2 == 0:
        raise ValueError("n must be an odd positive integer")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


@dataclass(frozen=True)
class Residue:
    """An element of Z/mZ. Arithmetic is only defined between equal moduli."""

    modulus: int
    value: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        object.__setattr__(self, "value", self.value % self.modulus)

    def _other(self, other) -> int:
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise ValueError(f"modulus mismatch: {self.modulus} vs {other.modulus}")
            return other.value
        if isinstance(other, Fraction):
            return other.numerator * mod_inverse(other.denominator, self.modulus).value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Residue(self.modulus, self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Residue(self.modulus, self.value - o)

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Residue(self.modulus, o - self.value)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Residue(self.modulus, self.value * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return self * mod_inverse(o, self.modulus)

    def __neg__(self):
        return Residue(self.modulus, -self.value)

    def __pow__(self, e: int):
        return Residue(self.modulus, pow(self.value, e, self.modulus))

    def __int__(self):
        return self.value


@dataclass(frozen=True)
class PadicApprox:
    """A rational ``p^valuation * unit`` with ``unit`` known modulo ``p^precision``.

    Zero carries ``valuation == INF``; its ``precision`` then records how many
    p-adic digits are known to vanish (``INF`` for an exact zero). A nonzero
    value always has ``precision >= 1`` and a unit coprime to ``prime``.
    """

    prime: int
    valuation: Union[int, float]
    unit: int
    precision: Union[int, float]

    def __post_init__(self):
        if self.valuation == INF:
            if self.unit != 0:
                raise ValueError("zero must have unit 0")
        else:
            if self.precision < 1:
                raise ValueError("nonzero approximation needs precision >= 1")
            if self.unit % self.prime == 0:
                raise ValueError("unit must be coprime to the prime")
            object.__setattr__(self, "unit", self.unit % self.prime**self.precision)

    @classmethod
    def zero(cls, p: int, absolute: Union[int, float] = INF) -> "PadicApprox":
        return cls(p, INF, 0, absolute)

    @property
    def is_zero(self) -> bool:
        return self.valuation == INF

    @property
    def is_exact(self) -> bool:
        return self.precision == INF

    @property
    def absolute_precision(self) -> Union[int, float]:
        """Exponent N such that the value is determined modulo p^N."""
        if self.is_zero:
            return self.precision
        return self.valuation + self.precision

    def residue(self, m: int) -> int:
        """The value modulo ``p^m``; the value must be p-integral."""
        if self.absolute_precision < m:
            raise PrecisionExhausted(
                f"value known mod {self.prime}^{self.absolute_precision}, asked for ^{m}"
            )
        if self.is_zero:
            return 0
        if self.valuation < 0:
            raise PrecisionExhausted(f"value has negative {self.prime}-adic valuation")
        if self.valuation >= m:
            return 0
        return (self.unit * self.prime**self.valuation) % self.prime**m

    def is_congruent(self, other, m: int) -> bool:
        """Decide ``self == other (mod p^m)``; refuses when precision is insufficient."""
        other = _coerce(other, self, "+")
        for side in (self, other):
            if side.absolute_precision < m:
                raise PrecisionExhausted(
                    f"operand known only mod {self.prime}^{side.absolute_precision}, need ^{m}"
                )
        diff = self - other
        return diff.is_zero or diff.valuation >= m

    def __add__(self, other):
        return padic_arith(self, other, "+")

    def __radd__(self, other):
        return padic_arith(other, self, "+")

    def __sub__(self, other):
        return padic_arith(self, other, "-")

    def __rsub__(self, other):
        return padic_arith(other, self, "-")

    def __mul__(self, other):
        return padic_arith(self, other, "*")

    def __rmul__(self, other):
        return padic_arith(other, self, "*")

    def __truediv__(self, other):
        return padic_arith(self, other, "/")

    def __rtruediv__(self, other):
        return padic_arith(other, self, "/")

    def __neg__(self):
        if self.is_zero:
            return self
        return PadicApprox(self.prime, self.valuation, -self.unit, self.precision)

    def __repr__(self):
        if self.is_zero:
            return f"O({self.prime}^{self.precision})"
        return (
            f"PadicApprox({self.prime}^{self.valuation} * {self.unit}"
            f" + O({self.prime}^{self.absolute_precision}))"
        )


def rational_to_padic(x: Rational, p: int, precision: int) -> PadicApprox:
    """Reduce an exact rational to ``precision`` significant p-adic digits."""
    if precision < 1:
        raise ValueError("precision must be >= 1")
    x = Fraction(x)
    if x == 0:
        return PadicApprox.zero(p)
    num, den = x.numerator, x.denominator
    a = b = 0
    while num % p == 0:
        num //= p
        a += 1
    while den % p == 0:
        den //= p
        b += 1
    mod = p**precision
    return PadicApprox(p, a - b, num * pow(den, -1, mod) % mod, precision)


def padic_from_residue(p: int, value: int, absolute: int) -> PadicApprox:
    """The p-adic integer known only as ``value mod p^absolute``."""
    return _normalize(p, 0, value, absolute)


def _normalize(p: int, v0: int, s: int, absolute) -> PadicApprox:
    """Build ``p^v0 * s`` known modulo ``p^absolute`` (``s`` taken mod ``p^(absolute - v0)``)."""
    if absolute <= v0:
        return PadicApprox.zero(p, absolute)
    s %= p ** (absolute - v0)
    if s == 0:
        return PadicApprox.zero(p, absolute)
    t = 0
    while s % p == 0:
        s //= p
        t += 1
    return PadicApprox(p, v0 + t, s, absolute - v0 - t)


def _coerce(x, like: PadicApprox, op: str) -> PadicApprox:
    if isinstance(x, PadicApprox):
        if x.prime != like.prime:
            raise ValueError(f"prime mismatch: {x.prime} vs {like.prime}")
        return x
    if not isinstance(x, (int, Fraction)):
        raise TypeError(f"cannot combine {type(x).__name__} with PadicApprox")
    if x == 0:
        return PadicApprox.zero(like.prime)
    if op in "+-":
        target = like.absolute_precision
        if target == INF:
            raise PrecisionExhausted("cannot choose a precision for an exact-zero partner")
        rel = max(1, target - valuation(x, like.prime))
    else:
        rel = like.precision if not like.is_zero and like.precision != INF else 1
    return rational_to_padic(x, like.prime, int(rel))


def padic_arith(a, b, op: str) -> PadicApprox:
    """Apply ``op`` in ``{'+', '-', '*', '/'}`` with correct precision propagation."""
    if not isinstance(a, PadicApprox):
        if not isinstance(b, PadicApprox):
            raise TypeError("at least one operand must be a PadicApprox")
        a = _coerce(a, b, op)
    b = _coerce(b, a, op)
    p = a.prime
    if op == "-":
        op, b = "+", -b
    if op == "+":
        if a.is_zero and a.is_exact:
            return b
        if b.is_zero and b.is_exact:
            return a
        absolute = min(a.absolute_precision, b.absolute_precision)
        terms = [t for t in (a, b) if not t.is_zero]
        if not terms:
            return PadicApprox.zero(p, absolute)
        v0 = min(t.valuation for t in terms)
        if v0 >= absolute:
            return PadicApprox.zero(p, absolute)
        s = sum(t.unit * p ** (t.valuation - v0) for t in terms)
        return _normalize(p, v0, s, absolute)
    if op == "*":
        if a.is_zero or b.is_zero:
            if (a.is_zero and a.is_exact) or (b.is_zero and b.is_exact):
                return PadicApprox.zero(p)
            shift = (a.precision if a.is_zero else a.valuation) + (
                b.precision if b.is_zero else b.valuation
            )
            return PadicApprox.zero(p, shift)
        r = min(a.precision, b.precision)
        return PadicApprox(p, a.valuation + b.valuation, a.unit * b.unit, r)
    if op == "/":
        if b.is_zero:
            if b.is_exact:
                raise ZeroDivisionError("division by exact p-adic zero")
            raise PrecisionExhausted("divisor is indistinguishable from zero")
        if a.is_zero:
            return a if a.is_exact else PadicApprox.zero(p, a.precision - b.valuation)
        r = min(a.precision, b.precision)
        inv = pow(b.unit, -1, p**r)
        return PadicApprox(p, a.valuation - b.valuation, a.unit * inv, r)
    raise ValueError(f"unknown operation {op!r}")
