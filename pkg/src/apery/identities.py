"""Exact checks of the finite-sum identities and their telescoping certificates.

A certificate pair (R1, R2) for a summand ``c(k) * s(k) * w(k, l)`` with weight
``w(k, l) = C(k,l)^2 C(k+l,l)`` and sign ``s(k)`` in {1, (-1)^k} claims

    c(k) s(k) w(k,l) = T1(k+1,l) - T1(k,l) + T2(k,l+1) - T2(k,l),
    T_i(k,l) = R_i(k,l) s(k) w(k,l).

Dividing by ``s(k) w(k,l)`` and using the shift ratios of ``w`` turns this into a
rational-function identity in (k, l), which is checked by clearing denominators.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Dict, Iterable, Tuple, Union

from .reports import CheckResult, ResidualNonzero, VerificationReport
from .sequences import apery_fast

Number = Union[int, Fraction]


class BivariatePolynomial:
    """Polynomial in two indeterminates with exact rational coefficients.

    Stored as ``{(i, j): c}`` meaning ``c * x^i * y^j``; zero coefficients are never stored.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Dict[Tuple[int, int], Number] = None):
        self.coeffs: Dict[Tuple[int, int], Fraction] = {}
        for e, c in (coeffs or {}).items():
            if c:
                self.coeffs[e] = Fraction(c)

    @classmethod
    def constant(cls, c: Number) -> "BivariatePolynomial":
        return cls({(0, 0): c})

    @classmethod
    def gens(cls) -> Tuple["BivariatePolynomial", "BivariatePolynomial"]:
        return cls({(1, 0): 1}), cls({(0, 1): 1})

    @staticmethod
    def _lift(other) -> "BivariatePolynomial":
        if isinstance(other, BivariatePolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return BivariatePolynomial.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return BivariatePolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return BivariatePolynomial({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        other = self._lift(other)
        return NotImplemented if other is NotImplemented else self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out: Dict[Tuple[int, int], Fraction] = {}
        for (i1, j1), c1 in self.coeffs.items():
            for (i2, j2), c2 in other.coeffs.items():
                e = (i1 + i2, j1 + j2)
                out[e] = out.get(e, 0) + c1 * c2
        return BivariatePolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = BivariatePolynomial.constant(1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x, y):
        """Evaluate; arguments may be numbers or polynomials (composition)."""
        total = 0
        for (i, j), c in self.coeffs.items():
            total = total + c * (x**i) * (y**j)
        return total

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for (i, j), c in sorted(self.coeffs.items(), reverse=True):
            mono = "*".join(f for f in (f"x^{i}" if i else "", f"y^{j}" if j else "") if f)
            terms.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(terms)


X, Y = BivariatePolynomial.gens()


def _poly_a1(n, k):
    return n**3 - n**2 * k - n * k**2 - 2 * n**2 - 5 * n * k + k**2 - 4 * n + 2 * k + 1


def _poly_a2(n, k):
    return n * (3 * n - k - 1)


def _poly_a3(n, k):
    return 4 * n**3 - 2 * n**2 * k - n * k**2 - 4 * n**2 - 3 * n * k + k**2 - 2 * n + 2 * k + 1


@dataclass(frozen=True)
class Certificate:
    """Summand weight ``c(k)``, sign type, and the pair R1 = num1/den1, R2 = num2."""

    name: str
    target: BivariatePolynomial
    alternating: bool
    num1: BivariatePolynomial
    den1: BivariatePolynomial
    num2: BivariatePolynomial


@dataclass(frozen=True)
class CertificateSet:
    a1: BivariatePolynomial
    a2: BivariatePolynomial
    a3: BivariatePolynomial
    certificates: Tuple[Certificate, Certificate, Certificate]

    def __getitem__(self, which: int) -> Certificate:
        return self.certificates[which - 1]


def certificate_set() -> CertificateSet:
    n, k = X, Y
    a1, a2, a3 = _poly_a1(n, k), _poly_a2(n, k), _poly_a3(n, k)
    # certificates live in variables (k, l); reuse X for k and Y for l
    k, l = X, Y
    front = -((k - l) ** 2)
    den = (l + 1) ** 2
    certs = (
        Certificate("F", 11 * k**2 + 13 * k + 4, False,
                    front * a1(k, l), den, l * (3 * k * l - l**2 + 2 * k - 2 * l)),
        Certificate("G", 11 * k**2 + 9 * k + 2, True,
                    front * a2(k, l), den, -l * (6 * k + l + 3)),
        Certificate("H", 11 * k**3 + 7 * k**2 - 1, True,
                    front * a3(k, l), den, -l * (8 * k**2 + l**2 + 4 * k + 2 * l + 2)),
    )
    return CertificateSet(a1, a2, a3, certs)


CERTIFICATES = certificate_set()


def weight(k: int, l: int) -> int:
    """w(k, l) = C(k,l)^2 C(k+l,l), zero outside 0 <= l <= k."""
    if l < 0 or l > k or k < 0:
        return 0
    return comb(k, l) ** 2 * comb(k + l, l)


# shift ratios of the weight, as (numerator, denominator) polynomials in (k, l)
SHIFT_K = ((X + 1) * (X + Y + 1), (X + 1 - Y) ** 2)  # w(k+1,l)/w(k,l)
SHIFT_L = ((X - Y) ** 2 * (X + Y + 1), (Y + 1) ** 3)  # w(k,l+1)/w(k,l)


def _combine(fractions: Iterable[Tuple[BivariatePolynomial, BivariatePolynomial]]) -> BivariatePolynomial:
    """Numerator of sum(n_i / d_i) over the product of all denominators."""
    fractions = list(fractions)
    total = BivariatePolynomial()
    for i, (num, _) in enumerate(fractions):
        term = num
        for j, (_, den) in enumerate(fractions):
            if j != i:
                term = term * den
        total = total + term
    return total


def certificate_residual(cert: Certificate) -> BivariatePolynomial:
    k, l = X, Y
    sign = -1 if cert.alternating else 1
    one = BivariatePolynomial.constant(1)
    r1_next = (cert.num1(k + 1, l) * SHIFT_K[0] * sign, cert.den1(k + 1, l) * SHIFT_K[1])
    r2_next = (cert.num2(k, l + 1) * SHIFT_L[0], SHIFT_L[1])
    return _combine([
        r1_next,
        (-cert.num1, cert.den1),
        r2_next,
        (-cert.num2, one),
        (-cert.target, one),
    ])


def verify_certificate(which: int) -> CheckResult:
    """Reduce the telescoping identity to a polynomial and require it to vanish."""
    cert = CERTIFICATES[which]
    residual = certificate_residual(cert)
    return CheckResult(
        f"certificate-{cert.name}",
        residual.is_zero(),
        {} if residual.is_zero() else {"residual": repr(residual)},
        ResidualNonzero,
    )


def certificate_terms(which: int, k: int, l: int) -> Tuple[Fraction, Fraction]:
    """Both sides of the telescoping identity at an integer point, from actual binomials."""
    cert = CERTIFICATES[which]

    def sign(kk):
        return (-1) ** kk if cert.alternating else 1

    def t1(kk, ll):
        w = weight(kk, ll)
        return Fraction(cert.num1(kk, ll)) / cert.den1(kk, ll) * sign(kk) * w if w else Fraction(0)

    def t2(kk, ll):
        return Fraction(cert.num2(kk, ll)) * sign(kk) * weight(kk, ll)

    lhs = cert.target(k, l) * sign(k) * weight(k, l)
    rhs = t1(k + 1, l) - t1(k, l) + t2(k, l + 1) - t2(k, l)
    return Fraction(lhs), rhs


def verify_certificate_points(which: int, k_max: int = 50) -> CheckResult:
    """Evaluate the identity at every 0 <= l <= k+1, k <= k_max, support boundary included."""
    for k in range(k_max + 1):
        for l in range(0, k + 2):
            lhs, rhs = certificate_terms(which, k, l)
            if lhs != rhs:
                return CheckResult(f"certificate-points-{which}", False, {"k": k, "l": l, "lhs": str(lhs), "rhs": str(rhs)})
    return CheckResult(f"certificate-points-{which}", True, {"k_max": k_max})


def _sum_identity_sides(which: str, n: int, beta) -> Tuple[int, int]:
    if which == "weighted":
        lhs = sum((11 * k * k + 13 * k + 4) * beta[k] for k in range(n))
        rhs = -sum(comb(n, k + 1) ** 2 * comb(n + k, k) * _poly_a1(n, k) for k in range(n))
    elif which == "alternating":
        lhs = sum((11 * k * k + 9 * k + 2) * (-1) ** (n - 1 - k) * beta[k] for k in range(n))
        rhs = sum(comb(n, k + 1) ** 2 * comb(n + k, k) * _poly_a2(n, k) for k in range(n))
    elif which == "cubic-alternating":
        lhs = sum((11 * k**3 + 7 * k * k - 1) * (-1) ** (n - 1 - k) * beta[k] for k in range(n))
        rhs = sum(comb(n, k + 1) ** 2 * comb(n + k, k) * _poly_a3(n, k) for k in range(n))
    else:
        raise ValueError(f"unknown identity {which!r}")
    return lhs, rhs


def verify_sum_identity(which: str, n: int) -> CheckResult:
    if n < 1:
        raise ValueError("n must be >= 1")
    lhs, rhs = _sum_identity_sides(which, n, apery_fast("beta", n))
    return CheckResult(f"sum-identity-{which}", lhs == rhs, {"n": n, "lhs": lhs, "rhs": rhs})


def parity_sum(n: int) -> int:
    return sum(comb(n - 1, k) * comb(n + k, 2 * k) * comb(2 * k, k + 1) for k in range(n))


def verify_parity_lemma(n: int) -> CheckResult:
    if n < 2 or n % 2:
        raise ValueError("n must be a positive even integer")
    s = parity_sum(n)
    return CheckResult("parity-lemma", s % 2 == 1, {"n": n, "sum_mod_2": s % 2})


def _harmonic_sides(which: str, n: int) -> Tuple[Fraction, Fraction]:
    h1 = [Fraction(0)]
    h2 = [Fraction(0)]
    for k in range(1, n + 1):
        h1.append(h1[-1] + Fraction(1, k))
        h2.append(h2[-1] + Fraction(1, k * k))
    if which == "inverse-binomial":
        lhs = sum(Fraction(comb(n, k) * (-1) ** (k - 1), k) for k in range(1, n + 1))
        return lhs, h1[n]
    if which == "harmonic-binomial":
        lhs = sum(Fraction(comb(n, k) * (-1) ** (k - 1), k) * h1[k] for k in range(1, n + 1))
        return lhs, h2[n]
    if which == "square-harmonic-binomial":
        lhs = sum(comb(n, k) * (-1) ** (k - 1) * h2[k] for k in range(1, n + 1))
        return lhs, h1[n] / n
    raise ValueError(f"unknown identity {which!r}")


def verify_harmonic_identity(which: str, n: int) -> CheckResult:
    if n < 1:
        raise ValueError("n must be >= 1")
    lhs, rhs = _harmonic_sides(which, n)
    return CheckResult(f"harmonic-identity-{which}", lhs == rhs, {"n": n, "lhs": str(lhs), "rhs": str(rhs)})



# ------------------------------------------------------- batch reports


def _report_certificates(n_max: int) -> VerificationReport:
    report = VerificationReport("wz-certificates", "symbolic")
    for which in (1, 2, 3):
        report.points += 1
        res = verify_certificate(which)
        if not res:
            report.add_counterexample(certificate=CERTIFICATES[which].name, **res.detail)
    return report


def _report_over_n(case: str, check, names, n_values) -> VerificationReport:
    n_values = list(n_values)
    span = f"n in [{n_values[0]}, {n_values[-1]}]" if n_values else "empty"
    report = VerificationReport(case, span)
    for which in names:
        for n in n_values:
            report.points += 1
            res = check(which, n) if which is not None else check(n)
            if not res:
                report.add_counterexample(identity=which, **res.detail)
    return report


IDENTITY_CASES: Dict[str, Callable[[int], VerificationReport]] = {
    "wz-certificates": _report_certificates,
    "beta-sum-identities": lambda n_max: _report_over_n(
        "beta-sum-identities", verify_sum_identity, ("weighted", "alternating", "cubic-alternating"),
        range(1, n_max + 1)),
    "parity-lemma": lambda n_max: _report_over_n(
        "parity-lemma", verify_parity_lemma, (None,), range(2, n_max + 1, 2)),
    "harmonic-binomial-identities": lambda n_max: _report_over_n(
        "harmonic-binomial-identities", verify_harmonic_identity,
        ("inverse-binomial", "harmonic-binomial", "square-harmonic-binomial"), range(1, n_max + 1)),
}


def verify_identity_case(case_id: str, n_max: int = 300) -> VerificationReport:
    start = time.perf_counter()
    report = IDENTITY_CASES[case_id](n_max)
    report.seconds = time.perf_counter() - start
    return report
