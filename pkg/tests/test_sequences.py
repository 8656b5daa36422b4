from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from apery import sequences
from apery.congruences import primes_up_to
from apery.sequences import (
    Kind,
    OutOfRange,
    RecurrenceMismatch,
    apery_a,
    apery_beta,
    apery_fast,
    apery_residues,
    apery_value,
    bernoulli_exact,
    bernoulli_mod_p,
    bernoulli_padic,
    catalan,
    catalan_difference,
    harmonic,
    harmonic_padic,
    run_length,
    run_length_blocks,
    validate_recurrence,
)


def test_apery_examples():
    assert [apery_a(n) for n in range(3)] == [1, 5, 73]
    assert [apery_beta(n) for n in range(5)] == [1, 3, 19, 147, 1251]


def test_recurrence_steps_by_hand():
    # 8 A_2 = (34 + 51 + 27 + 5) * 5 - 1, 4 beta_2 = 25 * 3 + 1
    assert (117 * 5 - 1) // 8 == 73 and (117 * 5 - 1) % 8 == 0
    assert (25 * 3 + 1) // 4 == 19


@pytest.mark.parametrize("kind, direct", [(Kind.A, apery_a), (Kind.BETA, apery_beta)])
def test_recurrence_matches_definition(kind, direct):
    values = apery_fast(kind, 500)
    assert values == [direct(n) for n in range(501)]


def test_value_and_residue_views_agree():
    vals = apery_fast("beta", 300)
    assert apery_value("beta", 257) == vals[257]
    assert apery_residues("beta", 300, 97) == [v % 97 for v in vals]


def test_validation_detects_a_broken_recurrence(monkeypatch):
    def broken(kind):
        for i, v in enumerate(apery_fast(kind, 20)):
            yield v + (i == 17)

    monkeypatch.setattr(sequences, "_recurrence", broken)
    with pytest.raises(RecurrenceMismatch):
        validate_recurrence("a", 20)


def test_small_moduli_invariants():
    assert all(x == 1 for x in apery_residues("a", 10**4, 4))
    assert all(x == 1 for x in apery_residues("beta", 10**4, 2))


def test_harmonic_examples():
    assert harmonic(0) == 0
    assert harmonic(2) == Fraction(3, 2)
    assert harmonic(4, 2) == Fraction(205, 144)


@pytest.mark.parametrize("p", primes_up_to(50)[1:])
def test_harmonic_mod_p5_matches_exact(p):
    mod = p**5
    for s in (1, 2, 3):
        exact = harmonic(p - 1, s)
        got = harmonic_padic(p - 1, s, p, 5)
        want = exact.numerator * pow(exact.denominator, -1, mod) % mod
        assert got.residue(5) == want


def test_bernoulli_examples():
    assert [bernoulli_exact(k) for k in range(5)] == [1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30)]
    assert bernoulli_exact(12) == Fraction(-691, 2730)


def test_bernoulli_mod_p_examples():
    assert bernoulli_mod_p(2, 7, "power_sum").value == 6
    assert bernoulli_mod_p(2, 7, "exact").value == 6
    assert bernoulli_mod_p(4, 11).value == -pow(30, -1, 11) % 11
    assert bernoulli_mod_p(6, 11).value == pow(42, -1, 11)


def test_bernoulli_mod_p_range_checks():
    for k, p in [(3, 11), (0, 11), (10, 11), (2, 5)]:
        with pytest.raises(OutOfRange):
            bernoulli_mod_p(k, p)


def test_bernoulli_mod_p_two_methods_agree():
    for p in primes_up_to(50):
        if p <= 5:
            continue
        for k in range(2, p - 2, 2):
            assert bernoulli_mod_p(k, p, "power_sum") == bernoulli_mod_p(k, p, "exact")


def test_bernoulli_padic_routes():
    for p in (53, 97, 199):
        fast = bernoulli_padic(p - 5, p, 4)
        assert fast.absolute_precision == 1
        assert fast.residue(1) == bernoulli_padic(p - 5, p, 4, "exact").residue(1)
    b0 = bernoulli_padic(0, 5, 6)
    assert b0.residue(6) == 1 and b0.precision == 6
    assert bernoulli_padic(7, 11).is_zero


def test_run_length_examples():
    assert [run_length(n) for n in range(6)] == [0, 1, 2, 1, 2, 3]
    assert run_length(4) == 2


def test_run_length_two_methods():
    for n in range(1 << 16):
        assert run_length(n) == run_length_blocks(n)


@given(st.integers(0, 2**200))
def test_run_length_counts_bit_changes(n):
    bits = bin(n)[2:] if n else ""
    changes = sum(a != b for a, b in zip(bits, bits[1:]))
    assert run_length(n) == (changes + 1 if n else 0)


def test_catalan():
    assert [catalan(k) for k in range(5)] == [1, 1, 2, 5, 14]
    for k in range(1001):
        assert catalan(k) == catalan_difference(k)


def test_negative_indices_rejected():
    for fn in (apery_a, apery_beta, run_length):
        with pytest.raises(ValueError):
            fn(-1)
    with pytest.raises(ValueError):
        harmonic(3, 0)
    with pytest.raises(ValueError):
        apery_fast("a", -1)


def test_cache_is_consistent_under_threads():
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(8) as pool:
        results = list(pool.map(lambda n: apery_value("a", n), range(0, 800, 7)))
    assert results == [apery_fast("a", n)[n] for n in range(0, 800, 7)]
    assert list(itertools.islice(apery_fast("a", 10), 3)) == [1, 5, 73]
