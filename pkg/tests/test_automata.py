from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from apery.automata import (
    DegreeOverflow,
    DiagonalSpec,
    MooreMachine,
    MultiPoly,
    a_spec,
    beta_spec,
    build_diagonal_automaton,
    build_l2_automaton,
    cartier,
    convolve_exact,
    degree_box,
    digit_projection,
    isomorphic,
    load_or_build,
    minimize,
    product,
    relabel,
    residue_table,
    run,
    run_digits,
)
from apery.automata import _fft_convolve
from apery.sequences import apery_a, apery_beta, run_length

N_SMALL = 1 << 12


def poly(terms, mod=16, nvars=4):
    return MultiPoly.from_terms(terms, mod, nvars)


def test_cartier_examples():
    one = MultiPoly.one(4, 16)
    assert cartier(one, 0) == one
    assert cartier(poly({(1, 1, 1, 1): 1}), 1) == one
    assert cartier(poly({(2, 2, 2, 2): 3}), 0) == poly({(1, 1, 1, 1): 3})
    # odd/even mixtures vanish
    assert cartier(poly({(1, 0, 1, 1): 1}), 1).terms() == {}
    with pytest.raises(ValueError):
        cartier(one, 2)


@given(st.dictionaries(st.tuples(*[st.integers(0, 6)] * 3), st.integers(0, 31), min_size=1, max_size=12),
       st.sampled_from([0, 1]))
def test_cartier_extracts_congruent_exponents(terms, r):
    P = MultiPoly.from_terms(terms, 32, 3)
    got = cartier(P, r).terms()
    want = {}
    for e, c in terms.items():
        if c % 32 and all(x % 2 == r for x in e):
            want[tuple((x - r) // 2 for x in e)] = c % 32
    assert got == want


def brute_product(A: dict, B: dict, mod: int) -> dict:
    out: dict = {}
    for (ea, ca), (eb, cb) in itertools.product(A.items(), B.items()):
        e = tuple(x + y for x, y in zip(ea, eb))
        out[e] = (out.get(e, 0) + ca * cb) % mod
    return {e: c for e, c in out.items() if c}


small_terms = st.dictionaries(st.tuples(*[st.integers(0, 3)] * 3), st.integers(-40, 40), min_size=1, max_size=10)


@given(small_terms, small_terms)
def test_polynomial_product_matches_brute_force(a, b):
    A, B = MultiPoly.from_terms(a, 32, 3), MultiPoly.from_terms(b, 32, 3)
    assert (A * B).terms() == brute_product(A.terms(), B.terms(), 32)
    assert A * B == B * A


@given(st.integers(0, 2**32 - 1), st.sampled_from([(3, 4, 5), (7, 7), (5, 2, 3, 4)]), st.sampled_from([4, 32]))
def test_fft_and_direct_convolution_agree(seed, shape, mod):
    rng = np.random.default_rng(seed)
    a = rng.integers(0, mod, size=shape)
    b = rng.integers(0, mod, size=shape[::-1])
    assert np.array_equal(_fft_convolve(a, b, mod), convolve_exact(a, b, mod))


def test_multipoly_equality_ignores_box():
    p = poly({(1, 0, 0, 0): 3})
    assert p == p.padded((4, 4, 4, 4))
    assert hash(p) == hash(p.padded((3, 2, 2, 2)))
    assert p != poly({(1, 0, 0, 0): 3}, mod=32)
    with pytest.raises(DegreeOverflow):
        poly({(3, 0, 0, 0): 1}).padded((3, 1, 1, 1))


def test_power_and_addition():
    lin = poly({(0, 0, 0, 0): 1, (1, 0, 0, 0): 1}, mod=8)
    cube = lin ** 3
    assert cube.terms() == {(0, 0, 0, 0): 1, (1, 0, 0, 0): 3, (2, 0, 0, 0): 3, (3, 0, 0, 0): 1}
    assert (lin + lin).terms() == {(0, 0, 0, 0): 2, (1, 0, 0, 0): 2}


def test_diagonal_requires_odd_constant_term():
    with pytest.raises(ValueError):
        DiagonalSpec(MultiPoly.one(2, 8), poly({(1, 0): 1}, mod=8, nvars=2), 3)


def test_degree_box_bounds():
    assert degree_box(a_spec(5)) == (16, 16, 16, 16)
    assert degree_box(beta_spec(3)) == (8, 4, 4, 4)


def test_diagonal_of_simple_function():
    # 1/(1 - x - y) has diagonal C(2n, n)
    spec = DiagonalSpec(MultiPoly.one(2, 8), poly({(0, 0): 1, (1, 0): -1, (0, 1): -1}, mod=8, nvars=2), 3)
    M = build_diagonal_automaton(spec)
    from math import comb
    assert all(run(M, n) == comb(2 * n, n) % 8 for n in range(300))


@pytest.mark.parametrize("make, alpha", [(beta_spec, 2), (beta_spec, 3), (a_spec, 2), (a_spec, 3)])
def test_exact_and_fft_builds_identical(make, alpha):
    spec = make(alpha)
    assert build_diagonal_automaton(spec, exact=True) == build_diagonal_automaton(spec)


def test_run_examples(machines):
    A16, B4 = machines[("a", 4)], machines[("beta", 2)]
    assert run(A16, 0) == 1 and run(A16, 1) == 5 and run(A16, 2) == 73 % 16
    assert run(B4, 2) == 3
    assert run_digits(A16, [0, 1]) == run(A16, 2)


@pytest.mark.parametrize("seq, alpha", [("a", 2), ("a", 3), ("a", 4), ("beta", 1), ("beta", 2), ("beta", 3)])
def test_machines_match_sequences(machines, seq, alpha):
    M = machines[(seq, alpha)]
    f = apery_a if seq == "a" else apery_beta
    assert [run(M, n) for n in range(200)] == [f(n) % (1 << alpha) for n in range(200)]
    table = residue_table(seq, 1 << alpha, N_SMALL)
    assert all(run(M, n) == table[n] for n in range(N_SMALL))


def test_residue_table_rejects_bad_modulus():
    with pytest.raises(ValueError):
        residue_table("beta", 16, 10)


@pytest.mark.parametrize("key", [("a", 4), ("beta", 3), ("l2", 3)])
def test_leading_zero_stability(machines, key):
    M = machines[key]
    for n in range(N_SMALL):
        digits = [int(b) for b in reversed(bin(n)[2:])] if n else []
        base = run_digits(M, digits)
        for pad in range(1, 9):
            assert run_digits(M, digits + [0] * pad) == base


def test_l2_machine():
    for beta in (2, 3):
        M = build_l2_automaton(beta)
        assert run(M, 0) == 0 and run(M, 5) == 3
        assert all(run(M, n) == run_length(n) % (1 << beta) for n in range(1 << 14))


def test_minimize_collapses_duplicates():
    M = MooreMachine(((1, 1), (0, 0)), (7, 7))
    m = minimize(M)
    assert m.size == 1 and m.outputs == (7,)


@pytest.mark.parametrize("key", [("a", 3), ("beta", 3), ("l2", 3)])
def test_minimize_idempotent_and_faithful(machines, key):
    M = machines[key]
    raw = build_l2_automaton(3) if key[0] == "l2" else load_or_build(*key)
    m = minimize(raw)
    assert minimize(m) == m == M
    assert m.size <= raw.size
    assert all(run(m, n) == run(raw, n) for n in range(N_SMALL))


def test_canonical_numbering_is_bfs():
    M = MooreMachine(((2, 1), (1, 1), (0, 2), (3, 3)), ("a", "b", "c", "d"), initial=2)
    c = M.canonical()
    assert c.initial == 0 and c.outputs == ("c", "a", "b")
    assert c.transitions == ((1, 0), (0, 2), (2, 2))


def test_product_and_relabel_pointwise(machines):
    A, B = machines[("a", 3)], machines[("beta", 2)]
    P = product(A, B)
    R = relabel(P, lambda pair: (pair[0] + pair[1]) % 4)
    for n in range(N_SMALL):
        assert run(P, n) == (run(A, n), run(B, n))
        assert run(R, n) == (run(A, n) + run(B, n)) % 4


def test_product_with_trivial_machine(machines):
    A = machines[("a", 4)]
    one = MooreMachine(((0, 0),), (0,))
    assert isomorphic(relabel(product(A, one), lambda pair: pair[0]), A)


def test_relabel_identity_and_projection(machines):
    A = machines[("a", 4)]
    assert relabel(A, lambda x: x) == A
    d = digit_projection(A, 3)
    assert all(run(d, n) == (apery_a(n) >> 3) & 1 for n in range(100))


def test_isomorphism(machines):
    A = machines[("a", 4)]
    assert isomorphic(A, A)
    outs = list(A.outputs)
    outs[-1] += 16
    assert not isomorphic(A, MooreMachine(A.transitions, tuple(outs), A.initial))


def test_json_round_trip(machines):
    for M in list(machines.values()) + [product(machines[("a", 2)], machines[("beta", 2)])]:
        back = MooreMachine.from_json(M.to_json())
        assert back == M
    doc = machines[("beta", 2)].to_dict()
    assert doc["alphabet"] == [0, 1] and doc["initial"] == 0
    assert len(doc["transitions"]) == len(doc["outputs"])


def test_dot_export_format():
    M = MooreMachine(((0, 1), (1, 0)), (1, 3))
    assert M.to_dot("T") == (
        "digraph T {\n"
        "  rankdir=LR;\n"
        '  s0 [label="s0/1", shape=doublecircle];\n'
        '  s1 [label="s1/3"];\n'
        '  s0 -> s0 [label="0"];\n'
        '  s0 -> s1 [label="1"];\n'
        '  s1 -> s1 [label="0"];\n'
        '  s1 -> s0 [label="1"];\n'
        "}\n"
    )


def test_machine_validation():
    with pytest.raises(ValueError):
        MooreMachine(((0, 2),), (0,))
    with pytest.raises(ValueError):
        MooreMachine(((0, 0),), (0, 1))


def test_disk_cache_round_trip(tmp_path):
    built = load_or_build("beta", 2, tmp_path)
    path = tmp_path / "beta-mod4.json"
    assert path.exists()
    assert load_or_build("beta", 2, tmp_path) == built
    assert MooreMachine.from_json(path.read_text()) == built
