"""Generators for the Apéry numbers and the auxiliary sequences used alongside them."""
from __future__ import annotations

import enum
import itertools
import threading
from fractions import Fraction
from math import comb
from typing import Iterator, List

from .exactarith import (
    PadicApprox,
    Residue,
    padic_from_residue,
    rational_to_padic,
)

__all__ = [
    "Kind",
    "RecurrenceMismatch",
    "OutOfRange",
    "SequenceCache",
    "apery_a",
    "apery_beta",
    "apery_fast",
    "apery_value",
    "apery_residues",
    "validate_recurrence",
    "harmonic",
    "harmonic_padic",
    "bernoulli_exact",
    "bernoulli_mod_p",
    "bernoulli_padic",
    "run_length",
    "run_length_blocks",
    "catalan",
    "catalan_difference",
]


class Kind(str, enum.Enum):
    A = "a"
    BETA = "beta"


class RecurrenceMismatch(AssertionError):
    pass


class OutOfRange(ValueError):
    pass


def apery_a(n: int) -> int:
    """A_n as the definitional sum of C(n,k)^2 C(n+k,k)^2."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return sum((comb(n, k) * comb(n + k, k)) ** 2 for k in range(n + 1))


def apery_beta(n: int) -> int:
    """beta_n as the definitional sum of C(n,k)^2 C(n+k,k)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return sum(comb(n, k) ** 2 * comb(n + k, k) for k in range(n + 1))


_DEFINITIONAL = {Kind.A: apery_a, Kind.BETA: apery_beta}


def _recurrence(kind: Kind) -> Iterator[int]:
    """Yield the sequence from its three-term recurrence, starting at index 0."""
    prev, cur = 1, (5 if kind is Kind.A else 3)
    yield prev
    yield cur
    for n in itertools.count(1):
        if kind is Kind.A:
            num = (34 * n**3 + 51 * n**2 + 27 * n + 5) * cur - n**3 * prev
            den = (n + 1) ** 3
        else:
            num = (11 * n * n + 11 * n + 3) * cur + n * n * prev
            den = (n + 1) ** 2
        nxt, rem = divmod(num, den)
        if rem:
            raise RecurrenceMismatch(f"non-integral recurrence step at n={n + 1}")
        prev, cur = cur, nxt
        yield cur


class SequenceCache:
    """Monotonically growing store of exact values for one sequence kind.

    Reads of already-computed prefixes are lock-free; extensions are serialized.
    """

    def __init__(self, kind: Kind):
        self.kind = Kind(kind)
        self.values: List[int] = []
        self._lock = threading.Lock()
        self._validated = False

    def prefix(self, n_max: int) -> List[int]:
        if len(self.values) <= n_max:
            with self._lock:
                if not self._validated:
                    validate_recurrence(self.kind)
                    self._validated = True
                if len(self.values) <= n_max:
                    self.values = list(itertools.islice(_recurrence(self.kind), n_max + 1))
        return self.values[: n_max + 1]


_CACHES = {kind: SequenceCache(kind) for kind in Kind}

#: recurrence values are trusted only after agreeing with the definitional sums this far
ORACLE_BOUND = 500


def validate_recurrence(kind, n_max: int = ORACLE_BOUND) -> None:
    """Compare recurrence values against the definitional sums for n <= n_max."""
    kind = Kind(kind)
    direct = _DEFINITIONAL[kind]
    for n, value in zip(range(n_max + 1), _recurrence(kind)):
        expected = direct(n)
        if value != expected:
            raise RecurrenceMismatch(f"{kind.value}: recurrence gives {value}, sum gives {expected} at n={n}")


def apery_fast(kind, n_max: int) -> List[int]:
    """[x_0, ..., x_{n_max}] from the recurrence, validated against the sums once per process."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    return _CACHES[Kind(kind)].prefix(n_max)


def apery_value(kind, n: int) -> int:
    """Single recurrence-backed value, served from the shared cache without copying."""
    cache = _CACHES[Kind(kind)]
    if len(cache.values) <= n:
        cache.prefix(max(n, 2 * len(cache.values)))
    return cache.values[n]


def apery_residues(kind, n_max: int, modulus: int) -> List[int]:
    """x_n mod ``modulus`` for n <= n_max, streamed from the recurrence without caching.

    Intended for long ranges (n < 2^16) where keeping exact values would cost gigabytes.
    """
    _CACHES[Kind(kind)].prefix(min(n_max, ORACLE_BOUND))
    return [v % modulus for v in itertools.islice(_recurrence(Kind(kind)), n_max + 1)]


def harmonic(n: int, s: int = 1) -> Fraction:
    """H_{n,s} = sum_{0<k<=n} 1/k^s as an exact fraction."""
    if n < 0 or s < 1:
        raise ValueError("need n >= 0 and s >= 1")
    total = Fraction(0)
    for k in range(1, n + 1):
        total += Fraction(1, k**s)
    return total


def harmonic_padic(n: int, s: int, p: int, absolute: int) -> PadicApprox:
    """H_{n,s} known modulo p^absolute, summed with modular inverses (requires n < p)."""
    if n >= p:
        raise ValueError("terms must be p-adic units (n < p)")
    mod = p**absolute
    total = sum(pow(k, -s, mod) for k in range(1, n + 1)) % mod
    return padic_from_residue(p, total, absolute)


_bernoulli: List[Fraction] = [Fraction(1)]
_bernoulli_lock = threading.Lock()


def bernoulli_exact(k: int) -> Fraction:
    """B_k from B_0 = 1 and sum_{j<=n} C(n+1, j) B_j = 0 (so B_1 = -1/2)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if k >= 3 and k % 2:
        return Fraction(0)
    with _bernoulli_lock:
        while len(_bernoulli) <= k:
            n = len(_bernoulli)
            acc = sum((comb(n + 1, j) * _bernoulli[j] for j in range(n) if j < 2 or j % 2 == 0), Fraction(0))
            _bernoulli.append(-acc / (n + 1))
        return _bernoulli[k]


def bernoulli_mod_p(k: int, p: int, method: str = "auto") -> Residue:
    """B_k mod p for even k in [2, p-3].

    ``power_sum`` uses B_k = (sum_{a<p} a^k mod p^2) / p (mod p); ``exact`` reduces the
    exact rational. ``auto`` picks exact for p <= 50.
    """
    if p <= 5:
        raise OutOfRange("power-sum reduction needs p > 5")
    if k % 2 or not 2 <= k <= p - 3:
        raise OutOfRange(f"k={k} outside the even range [2, {p - 3}]")
    if method == "auto":
        method = "exact" if p <= 50 else "power_sum"
    if method == "exact":
        return Residue(p, 0) + bernoulli_exact(k)
    if method != "power_sum":
        raise ValueError(f"unknown method {method!r}")
    p2 = p * p
    s = sum(pow(a, k, p2) for a in range(1, p)) % p2
    assert s % p == 0
    return Residue(p, s // p)


def bernoulli_padic(k: int, p: int, precision: int = 1, method: str = "auto") -> PadicApprox:
    """B_k as a p-adic approximation.

    The power-sum route only determines one digit, so its result has precision 1
    whatever ``precision`` asks for; ``auto`` uses it for p > 50 where the exact
    rational gets expensive.
    """
    if k >= 3 and k % 2:
        return PadicApprox.zero(p)
    if method == "auto":
        method = "power_sum" if p > 50 and k % 2 == 0 and 2 <= k <= p - 3 else "exact"
    if method == "power_sum":
        r = bernoulli_mod_p(k, p, "power_sum").value
        return padic_from_residue(p, r, 1)
    return rational_to_padic(bernoulli_exact(k), p, precision)


def run_length(n: int) -> int:
    """L_2(n) via L_2(n) = L_2(n // 2) + [n mod 4 in {1, 2}], L_2(0) = 0."""
    if n < 0:
        raise ValueError("n must be >= 0")
    count = 0
    while n:
        count += n % 4 in (1, 2)
        n //= 2
    return count


def run_length_blocks(n: int) -> int:
    """L_2(n) by counting maximal blocks of the binary expansion directly."""
    if n == 0:
        return 0
    return sum(1 for _ in itertools.groupby(bin(n)[2:]))


def catalan(k: int) -> int:
    return comb(2 * k, k) // (k + 1)


def catalan_difference(k: int) -> int:
    return comb(2 * k, k) - comb(2 * k, k + 1)
