"""Registry of congruences over positive integers and primes, with a batch verifier.

Two shapes of case exist. A :class:`PrefixSumCase` asserts that the partial sums
``sum_{k<n} term(k)`` vanish modulo ``modulus(n)`` for every ``n``; a :class:`PrimeCase`
compares two sides, evaluated as :class:`PadicApprox`, modulo ``p^e``. Both sides of
a prime case are computed with ``e + GUARD`` digits so that cancellation between
terms cannot silently eat the digits being compared.
"""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .exactarith import (
    PadicApprox,
    PrecisionExhausted,
    Residue,
    jacobi_symbol,
    padic_from_residue,
    rational_to_padic,
)
from .reports import VerificationReport
from .sequences import apery_fast, apery_value, bernoulli_padic, harmonic_padic

GUARD = 2


def primes_up_to(n: int) -> List[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, int(n**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i, flag in enumerate(sieve) if flag]


# --------------------------------------------------------------------------- sums


def multiple_harmonic(
    exponents: Sequence[int],
    n: int,
    modulus: Optional[int] = None,
    weak: Sequence[bool] = (),
):
    """sum over 1 <= i_1 R i_2 R ... R i_r <= n of prod i_m^(-exponents[m]).

    ``R`` is ``<`` unless ``weak[m]`` marks the relation between i_(m+1) and i_(m+2)
    as ``<=``. With ``modulus`` the sum is a residue (terms must be units), otherwise
    an exact Fraction. Runs in O(r n) via prefix sums.
    """
    weak = list(weak) + [False] * (len(exponents) - 1 - len(weak))
    if modulus is None:
        def inv(i, e):
            return Fraction(1, i**e)
        zero, one = Fraction(0), Fraction(1)
    else:
        def inv(i, e):
            return pow(i, -e, modulus)
        zero, one = 0, 1

    # acc[i] = sum over admissible chains of the current length whose last index is <= i
    acc = [one] * (n + 1)
    first = True
    for m, e in enumerate(exponents):
        new = [zero] * (n + 1)
        running = zero
        for i in range(1, n + 1):
            if first:
                prev = one
            else:
                prev = acc[i] if weak[m - 1] else acc[i - 1]
            running = running + inv(i, e) * prev
            if modulus is not None:
                running %= modulus
            new[i] = running
        acc = new
        first = False
    return acc[n] if exponents else one


def _unit_padic(p: int, value: int, digits: int) -> PadicApprox:
    return padic_from_residue(p, value, digits)


def _bern(p: int, digits: int, k: int) -> PadicApprox:
    return bernoulli_padic(k, p, digits)


# --------------------------------------------------------------------------- cases


@dataclass(frozen=True)
class PrefixSumCase:
    """``sum_{k=0}^{n-1} term(k) == 0 (mod modulus(n))`` for all n >= 1."""

    id: str
    group: str
    statement: str
    term: Callable[[int], int]
    modulus: Callable[[int], int]

    def verify(self, n_max: int) -> VerificationReport:
        start = time.perf_counter()
        report = VerificationReport(self.id, f"n in [1, {n_max}]")
        total = 0
        for n in range(1, n_max + 1):
            total += self.term(n - 1)
            m = self.modulus(n)
            report.points += 1
            if total % m:
                report.add_counterexample(n=n, modulus=m, lhs_residue=total % m, rhs_residue=0)
        report.seconds = time.perf_counter() - start
        return report


@dataclass(frozen=True)
class PrimeCase:
    """``lhs(p, *param) == rhs(p, *param) (mod p^exponent(p, *param))`` for primes p > lower.

    ``exponent`` returning ``None`` asks for exact equality of the two sides.
    ``params(p)`` enumerates the parameter tuples that satisfy the hypothesis at p.
    ``probes`` lists primes outside the hypothesis that are evaluated for information only.
    """

    id: str
    group: str
    statement: str
    lower: int
    exponent: Callable[..., Optional[int]]
    lhs: Callable[..., object]
    rhs: Callable[..., object]
    params: Callable[[int], Iterable[tuple]] = lambda p: [()]
    probes: Tuple[int, ...] = ()

    def check_point(self, p: int, param: tuple) -> Tuple[bool, Dict]:
        e = self.exponent(p, *param)
        digits = (e or 0) + GUARD
        lhs = self.lhs(p, digits, *param)
        rhs = self.rhs(p, digits, *param)
        if e is None:
            return lhs == rhs, {"lhs": str(lhs), "rhs": str(rhs)}
        lhs = _as_padic(lhs, p, digits)
        rhs = _as_padic(rhs, p, digits)
        try:
            ok = lhs.is_congruent(rhs, e)
        except PrecisionExhausted as exc:
            return False, {"exponent": e, "error": str(exc)}
        return ok, {"exponent": e, "lhs_residue": _show(lhs, e), "rhs_residue": _show(rhs, e)}

    def verify(self, p_max: int) -> VerificationReport:
        start = time.perf_counter()
        primes = [p for p in primes_up_to(p_max) if p > self.lower]
        lo = primes[0] if primes else None
        report = VerificationReport(self.id, f"primes p in ({self.lower}, {p_max}]" if lo else "empty")
        for p in primes:
            for param in self.params(p):
                report.points += 1
                ok, info = self.check_point(p, param)
                if not ok:
                    report.add_counterexample(p=p, param=list(param), **info)
        for p in self.probes:
            if p > p_max:
                continue
            held = all(self.check_point(p, param)[0] for param in self.params(p))
            report.informational.append({"p": p, "holds": held})
        report.seconds = time.perf_counter() - start
        return report


def _as_padic(x, p: int, digits: int) -> PadicApprox:
    if isinstance(x, PadicApprox):
        return x
    if x == 0:
        return PadicApprox.zero(p)
    from .exactarith import valuation

    return rational_to_padic(x, p, max(1, digits - int(valuation(x, p))))


def _show(x: PadicApprox, e: int):
    try:
        return x.residue(e)
    except PrecisionExhausted:
        return repr(x)


Case = object
REGISTRY: Dict[str, Case] = {}
GROUPS: Dict[str, List[str]] = {}


def register(case) -> None:
    if case.id in REGISTRY:
        raise ValueError(f"duplicate case id {case.id}")
    REGISTRY[case.id] = case
    GROUPS.setdefault(case.group, []).append(case.id)


# ------------------------------------------------------- beta sums over all n


def _beta(k: int) -> int:
    return apery_value("beta", k)


def _apery(k: int) -> int:
    return apery_value("a", k)


register(PrefixSumCase(
    "beta-weighted-sum", "beta-sums",
    "sum_{k<n} (11k^2+13k+4) beta_k == 0 mod 2n^2",
    lambda k: (11 * k * k + 13 * k + 4) * _beta(k), lambda n: 2 * n * n))
register(PrefixSumCase(
    "beta-alternating-sum", "beta-sums",
    "sum_{k<n} (11k^2+9k+2)(-1)^k beta_k == 0 mod 2n^2",
    lambda k: (11 * k * k + 9 * k + 2) * (-1) ** k * _beta(k), lambda n: 2 * n * n))
register(PrefixSumCase(
    "beta-cubic-alternating-sum", "beta-sums",
    "sum_{k<n} (11k^3+7k^2-1)(-1)^k beta_k == 0 mod n^2",
    lambda k: (11 * k**3 + 7 * k * k - 1) * (-1) ** k * _beta(k), lambda n: n * n))


# ------------------------------------------------------- beta sums at primes


def beta_prime_sum(p: int, which: int, reverse: bool = False) -> int:
    """The three weighted sums of beta_k over 0 <= k < p, as exact integers."""
    beta = apery_fast("beta", p)
    order = range(p - 1, -1, -1) if reverse else range(p)
    total = 0
    for k in order:
        if which == 1:
            total += (11 * k * k + 13 * k + 4) * beta[k]
        elif which == 2:
            total += (11 * k * k + 9 * k + 2) * (-1) ** k * beta[k]
        else:
            total += (11 * k**3 + 7 * k * k - 1) * (-1) ** k * beta[k]
    return total


def beta_prime_sum_residue(p: int, which: int, exponent: int = 8) -> Residue:
    """Same sums accumulated term by term as residues mod p^exponent."""
    mod = p**exponent
    beta = apery_fast("beta", p)
    acc = Residue(mod, 0)
    for k in range(p):
        b = Residue(mod, beta[k])
        if which == 1:
            acc = acc + b * (11 * k * k + 13 * k + 4)
        elif which == 2:
            acc = acc + b * ((11 * k * k + 9 * k + 2) * (-1) ** k)
        else:
            acc = acc + b * ((11 * k**3 + 7 * k * k - 1) * (-1) ** k)
    return acc


def _hp(p: int, digits: int, s: int = 1) -> PadicApprox:
    """H_{p-1,s} modulo p^digits."""
    return harmonic_padic(p - 1, s, p, digits)


register(PrimeCase(
    "beta-weighted-sum-prime", "beta-prime-sums",
    "sum_{k<p} (11k^2+13k+4) beta_k == 4p^2 + 4p^7 B_{p-5} mod p^8", 3,
    lambda p: 8,
    lambda p, d: beta_prime_sum(p, 1),
    lambda p, d: 4 * p**2 + 4 * p**7 * _bern(p, d, p - 5)))
register(PrimeCase(
    "beta-alternating-sum-prime", "beta-prime-sums",
    "sum_{k<p} (11k^2+9k+2)(-1)^k beta_k == 2p^2 + 10p^3 H_{p-1} - p^7 B_{p-5} mod p^8", 3,
    lambda p: 8,
    lambda p, d: beta_prime_sum(p, 2),
    lambda p, d: 2 * p**2 + 10 * p**3 * _hp(p, d) - p**7 * _bern(p, d, p - 5)))
register(PrimeCase(
    "beta-cubic-alternating-sum-prime", "beta-prime-sums",
    "sum_{k<p} (11k^3+7k^2-1)(-1)^k beta_k == 2p^3 - 3p^2 + (10p-5)p^3 H_{p-1} - 3/2 p^7 B_{p-5} mod p^8", 3,
    lambda p: 8,
    lambda p, d: beta_prime_sum(p, 3),
    lambda p, d: 2 * p**3 - 3 * p**2 + (10 * p - 5) * p**3 * _hp(p, d)
    - Fraction(3, 2) * p**7 * _bern(p, d, p - 5)))


# ------------------------------------------------------- sigma sums


def sigma(p: int, r: int) -> int:
    """sum_{k=1}^{p-1} C(p,k)^2 C(p+k-1,k-1) k^r."""
    return sum(comb(p, k) ** 2 * comb(p + k - 1, k - 1) * k**r for k in range(1, p))


register(PrimeCase(
    "sigma0", "sigma-sums",
    "sigma_0 == p H_{p-1} + 9/10 p^5 B_{p-5} mod p^6", 5,
    lambda p: 6,
    lambda p, d: sigma(p, 0),
    lambda p, d: p * _hp(p, d) + Fraction(9, 10) * p**5 * _bern(p, d, p - 5),
    probes=(5,)))
register(PrimeCase(
    "sigma1", "sigma-sums",
    "sigma_1 == -3p^2 H_{p-1} + 21/10 p^6 B_{p-5} mod p^7", 5,
    lambda p: 7,
    lambda p, d: sigma(p, 1),
    lambda p, d: -3 * p**2 * _hp(p, d) + Fraction(21, 10) * p**6 * _bern(p, d, p - 5),
    probes=(5,)))
register(PrimeCase(
    "sigma2", "sigma-sums",
    "sigma_2 == -p^2 - (4p^5+4p^4+2p^3) H_{p-1} + 4/5 p^7 B_{p-5} mod p^8", 5,
    lambda p: 8,
    lambda p, d: sigma(p, 2),
    lambda p, d: -(p**2) - (4 * p**5 + 4 * p**4 + 2 * p**3) * _hp(p, d)
    + Fraction(4, 5) * p**7 * _bern(p, d, p - 5),
    probes=(5,)))


# ------------------------------------------------------- harmonic-type lemmas


def _mh(p: int, digits: int, exponents, weak=()) -> PadicApprox:
    mod = p**digits
    return _unit_padic(p, multiple_harmonic(exponents, p - 1, mod, weak), digits)


register(PrimeCase(
    "harmonic-mod-p3", "harmonic",
    "H_{p-1} == -p^2/3 B_{p-3} mod p^3", 3,
    lambda p: 3,
    lambda p, d: _hp(p, d),
    lambda p, d: Fraction(-(p**2), 3) * _bern(p, d, p - 3)))
register(PrimeCase(
    "power-harmonic", "harmonic",
    "H_{p-1,s} == s/(s+1) p B_{p-1-s} mod p^2 for 1 <= s <= p-2", 3,
    lambda p, s: 2,
    lambda p, d, s: _hp(p, d, s),
    lambda p, d, s: Fraction(s, s + 1) * p * _bern(p, d, p - 1 - s),
    params=lambda p: [(s,) for s in range(1, p - 1)]))


def _symmetric_rhs(p, d, r, s):
    rs = r * s
    if rs % 2:
        return Fraction((-1) ** r * s * (rs + 1), 2 * (rs + 2)) * p**2 * _bern(p, d, p - rs - 2)
    return Fraction((-1) ** (r - 1) * s, rs + 1) * p * _bern(p, d, p - rs - 1)


register(PrimeCase(
    "symmetric-power-sums", "harmonic",
    "e_r(1/i^s : i<p) == (-1)^r s(rs+1)/(2(rs+2)) p^2 B_{p-rs-2} mod p^3 (rs odd), "
    "(-1)^(r-1) s/(rs+1) p B_{p-rs-1} mod p^2 (rs even); p > rs+2, r,s <= 4", 3,
    lambda p, r, s: 3 if (r * s) % 2 else 2,
    lambda p, d, r, s: _mh(p, d, [s] * r),
    _symmetric_rhs,
    params=lambda p: [(r, s) for r in range(1, 5) for s in range(1, 5) if p > r * s + 2]))
register(PrimeCase(
    "double-sum-mod-p", "harmonic",
    "sum_{j<k<p} 1/(j^s k^t) == (-1)^t/(s+t) C(s+t,s) B_{p-s-t} mod p; p >= s+t, s,t <= 5", 3,
    lambda p, s, t: 1,
    lambda p, d, s, t: _mh(p, d, [s, t]),
    lambda p, d, s, t: Fraction((-1) ** t * comb(s + t, s), s + t) * _bern(p, d, p - s - t),
    params=lambda p: [(s, t) for s in range(1, 6) for t in range(1, 6) if p >= s + t]))


def _double_p2_rhs(p, d, s, t):
    w = s + t
    c = (-1) ** s * t * comb(w + 1, s) - (-1) ** t * s * comb(w + 1, t) - s - t
    return Fraction(c, 2 * (w + 1)) * p * _bern(p, d, p - w - 1)


register(PrimeCase(
    "double-sum-mod-p2", "harmonic",
    "sum_{j<k<p} 1/(j^s k^t) mod p^2 for s == t mod 2, p > s+t+1, s,t <= 5", 3,
    lambda p, s, t: 2,
    lambda p, d, s, t: _mh(p, d, [s, t]),
    _double_p2_rhs,
    params=lambda p: [(s, t) for s in range(1, 6) for t in range(1, 6)
                      if (s - t) % 2 == 0 and p > s + t + 1]))


def _triple_rhs(p, d, r, s, t):
    w = r + s + t
    c = (-1) ** r * comb(w, r) - (-1) ** t * comb(w, t)
    return Fraction(c, 2 * w) * _bern(p, d, p - w)


register(PrimeCase(
    "triple-sum", "harmonic",
    "sum_{i<j<k<p} 1/(i^r j^s k^t) mod p for r+s+t odd, p > r+s+t, r,s,t <= 5", 3,
    lambda p, r, s, t: 1,
    lambda p, d, r, s, t: _mh(p, d, [r, s, t]),
    _triple_rhs,
    params=lambda p: [(r, s, t) for r in range(1, 6) for s in range(1, 6) for t in range(1, 6)
                      if (r + s + t) % 2 and p > r + s + t]))

_MIXED = {0: (2, 1, 1), 1: (1, 2, 1), 2: (1, 1, 2)}
register(PrimeCase(
    "mixed-triple-sum", "harmonic",
    "sum_{i<j<=k<p} of 1/(i^2 j k), 1/(i j^2 k), 1/(i j k^2) == 0 mod p", 5,
    lambda p, which: 1,
    lambda p, d, which: _mh(p, d, _MIXED[which], weak=(False, True)),
    lambda p, d, which: 0,
    params=lambda p: [(0,), (1,), (2,)],
    probes=(5,)))


def _nested_harmonic_weighted(p: int, digits: int) -> PadicApprox:
    """sum_{k<p} H_{k-1} sum_{i<j<=k-1} 1/(i^2 j^2) modulo p^digits."""
    mod = p**digits
    h = 0  # H_{k-1}
    e1 = 0  # sum_{i<=k-1} 1/i^2
    e2 = 0  # sum_{i<j<=k-1} 1/(i^2 j^2)
    total = 0
    for k in range(1, p):
        total = (total + h * e2) % mod
        inv2 = pow(k, -2, mod)
        e2 = (e2 + e1 * inv2) % mod
        e1 = (e1 + inv2) % mod
        h = (h + pow(k, -1, mod)) % mod
    return _unit_padic(p, total, digits)


register(PrimeCase(
    "nested-inverse-squares", "harmonic",
    "sum_{k<p} sum_{i<j<=k-1} 1/(i^2 j^2) == 2/5 p B_{p-5} - 3 H_{p-1}/p^2 mod p^2", 5,
    lambda p: 2,
    lambda p, d: _mh(p, d, [2, 2, 0]),
    lambda p, d: Fraction(2, 5) * p * _bern(p, d, p - 5) - 3 * _hp(p, d + 2) / p**2,
    probes=(5,)))
register(PrimeCase(
    "nested-harmonic-weighted", "harmonic",
    "sum_{k<p} sum_{i<j<=k-1} H_{k-1}/(i^2 j^2) == 3 H_{p-1}/p^2 mod p", 5,
    lambda p: 1,
    lambda p, d: _nested_harmonic_weighted(p, d),
    lambda p, d: 3 * _hp(p, d + 2) / p**2,
    probes=(5,)))
register(PrimeCase(
    "nested-shift-identity", "harmonic",
    "sum_{k<p} sum_{i<j<=k-1} 1/(i^2 j^2) = (p-1) sum_{i<j<p} 1/(i^2 j^2) - sum_{i<j<p} 1/(i^2 j) exactly", 5,
    lambda p: None,
    lambda p, d: multiple_harmonic([2, 2, 0], p - 1),
    lambda p, d: (p - 1) * multiple_harmonic([2, 2], p - 1) - multiple_harmonic([2, 1], p - 1)))
register(PrimeCase(
    "harmonic-over-squares", "harmonic",
    "sum_{k<p} H_{k-1}/k^2 == -3 H_{p-1}/p^2 mod p^2", 5,
    lambda p: 2,
    lambda p, d: _mh(p, d, [1, 2]),
    lambda p, d: -3 * _hp(p, d + 2) / p**2,
    probes=(5,)))
register(PrimeCase(
    "inverse-square-pairs", "harmonic",
    "sum_{i<j<p} 1/(i^2 j^2) == -2/5 p B_{p-5} mod p^2", 5,
    lambda p: 2,
    lambda p, d: _mh(p, d, [2, 2]),
    lambda p, d: Fraction(-2, 5) * p * _bern(p, d, p - 5),
    probes=(5,)))


def _alternating_binomial_harmonic(p: int, digits: int) -> PadicApprox:
    """sum_{k<p} C(p,k) (-1)^k / k * H_{k-1,2} modulo p^digits."""
    mod = p**digits
    h2 = 0
    total = 0
    for k in range(1, p):
        total = (total + comb(p, k) * (-1) ** k * pow(k, -1, mod) * h2) % mod
        h2 = (h2 + pow(k, -2, mod)) % mod
    return _unit_padic(p, total, digits)


register(PrimeCase(
    "alternating-binomial-harmonic", "harmonic",
    "sum_{k<p} C(p,k) (-1)^k/k H_{k-1,2} == 9/10 p^2 B_{p-5} mod p^3", 5,
    lambda p: 3,
    _alternating_binomial_harmonic,
    lambda p, d: Fraction(9, 10) * p**2 * _bern(p, d, p - 5),
    probes=(5,)))
register(PrimeCase(
    "central-binomial", "harmonic",
    "C(2p-1,p-1) == 1 + 2p H_{p-1} - 4/5 p^5 B_{p-5} mod p^6", 5,
    lambda p: 6,
    lambda p, d: comb(2 * p - 1, p - 1),
    lambda p, d: 1 + 2 * p * _hp(p, d) - Fraction(4, 5) * p**5 * _bern(p, d, p - 5),
    probes=(5,)))
register(PrimeCase(
    "harmonic-three-orders", "harmonic",
    "H_{p-1} + p/2 H_{p-1,2} + p^2/6 H_{p-1,3} == 0 mod p^6", 7,
    lambda p: 6,
    lambda p, d: _hp(p, d) + Fraction(p, 2) * _hp(p, d, 2) + Fraction(p * p, 6) * _hp(p, d, 3),
    lambda p, d: 0,
    probes=(5, 7)))
register(PrimeCase(
    "harmonic-two-orders", "harmonic",
    "2 H_{p-1} + p H_{p-1,2} == 2/5 p^4 B_{p-5} mod p^5", 3,
    lambda p: 5,
    lambda p, d: 2 * _hp(p, d) + p * _hp(p, d, 2),
    lambda p, d: Fraction(2, 5) * p**4 * _bern(p, d, p - 5)))
register(PrimeCase(
    "harmonic-cubes", "harmonic",
    "H_{p-1,3} == -6/5 p^2 B_{p-5} mod p^3", 5,
    lambda p: 3,
    lambda p, d: _hp(p, d, 3),
    lambda p, d: Fraction(-6, 5) * p**2 * _bern(p, d, p - 5),
    probes=(5,)))


# ------------------------------------------------------- classical A_n congruences

register(PrefixSumCase(
    "a-weighted-sum", "apery-a",
    "sum_{k<n} (2k+1) A_k == 0 mod n",
    lambda k: (2 * k + 1) * _apery(k), lambda n: n))
register(PrefixSumCase(
    "a-alternating-sum", "apery-a",
    "sum_{k<n} (2k+1)(-1)^k A_k == 0 mod n",
    lambda k: (2 * k + 1) * (-1) ** k * _apery(k), lambda n: n))
register(PrefixSumCase(
    "a-cubic-alternating-sum", "apery-a",
    "sum_{k<n} (6k^3+9k^2+5k+1)(-1)^k A_k == 0 mod n^3",
    lambda k: (6 * k**3 + 9 * k * k + 5 * k + 1) * (-1) ** k * _apery(k), lambda n: n**3))


def _a_prime_sum(p: int, alternating: bool) -> int:
    a = apery_fast("a", p)
    return sum((2 * k + 1) * (-1 if alternating and k % 2 else 1) * a[k] for k in range(p))


register(PrimeCase(
    "a-weighted-sum-prime", "apery-a",
    "sum_{k<p} (2k+1) A_k == p + 7/6 p^4 B_{p-3} mod p^5", 3,
    lambda p: 5,
    lambda p, d: _a_prime_sum(p, False),
    lambda p, d: p + Fraction(7, 6) * p**4 * _bern(p, d, p - 3)))
register(PrimeCase(
    "a-alternating-sum-prime", "apery-a",
    "sum_{k<p} (2k+1)(-1)^k A_k == p (p/3) mod p^3", 3,
    lambda p: 3,
    lambda p, d: _a_prime_sum(p, True),
    lambda p, d: p * jacobi_symbol(p, 3)))


# ------------------------------------------------------- binomial expansions


def _expansion_p_over_k(p: int, digits: int, k: int):
    mod = p**digits
    h = multiple_harmonic([1], k - 1, mod) if k > 1 else 0
    e2 = multiple_harmonic([1, 1], k - 1, mod) if k > 2 else 0
    inner = _unit_padic(p, (1 - p * h + p * p * e2) % mod, digits)
    return Fraction((-1) ** (k - 1), k) * inner


def _expansion_square_product(p: int, digits: int, k: int):
    mod = p**digits
    h2 = multiple_harmonic([2], k - 1, mod) if k > 1 else 0
    e22 = multiple_harmonic([2, 2], k - 1, mod) if k > 2 else 0
    return _unit_padic(p, (1 - p**2 * h2 + p**4 * e22) % mod, digits)


register(PrimeCase(
    "binomial-p-over-k", "expansions",
    "C(p,k)/p == (-1)^(k-1)/k (1 - p H_{k-1} + p^2 e_2(1/j : j<k)) mod p^3, 1 <= k < p", 1,
    lambda p, k: 3,
    lambda p, d, k: Fraction(comb(p, k), p),
    _expansion_p_over_k,
    params=lambda p: [(k,) for k in range(1, p)]))
register(PrimeCase(
    "binomial-square-product", "expansions",
    "(-1)^(k-1) C(p-1,k-1) C(p+k-1,k-1) == 1 - p^2 H_{k-1,2} + p^4 e_2(1/j^2 : j<k) mod p^6", 1,
    lambda p, k: 6,
    lambda p, d, k: (-1) ** (k - 1) * comb(p - 1, k - 1) * comb(p + k - 1, k - 1),
    _expansion_square_product,
    params=lambda p: [(k,) for k in range(1, p)]))


# ------------------------------------------------------- driver


def verify_case(case_id: str, n_max: int = 1000, p_max: int = 199) -> VerificationReport:
    case = REGISTRY[case_id]
    if isinstance(case, PrefixSumCase):
        return case.verify(n_max)
    return case.verify(p_max)


def _verify_star(args):
    return verify_case(*args)


def verify_cases(case_ids: Sequence[str], n_max: int = 1000, p_max: int = 199, jobs: int = 1) -> List[VerificationReport]:
    """Run cases, optionally in worker processes; output order follows ``case_ids``."""
    work = [(cid, n_max, p_max) for cid in case_ids]
    if jobs <= 1 or len(work) <= 1:
        return [_verify_star(w) for w in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_verify_star, work))


def verify_group(group: str, n_max: int = 1000, p_max: int = 199, jobs: int = 1) -> List[VerificationReport]:
    return verify_cases(GROUPS[group], n_max, p_max, jobs)


def verify_beta_weighted_sums(n_max: int) -> List[VerificationReport]:
    """Divisibility of the three weighted beta sums for every 1 <= n <= n_max."""
    return verify_group("beta-sums", n_max=n_max)


def verify_beta_prime_sums(p_max: int) -> List[VerificationReport]:
    return verify_group("beta-prime-sums", p_max=p_max)


def verify_sigma_sums(p_max: int) -> List[VerificationReport]:
    return verify_group("sigma-sums", p_max=p_max)


def verify_harmonic_lemmas(p_max: int) -> List[VerificationReport]:
    return verify_group("harmonic", p_max=p_max)


def verify_apery_a_congruences(n_max: int, p_max: int) -> List[VerificationReport]:
    return verify_group("apery-a", n_max=n_max, p_max=p_max)


def verify_binomial_expansions(p_max: int) -> List[VerificationReport]:
    return verify_group("expansions", p_max=p_max)
