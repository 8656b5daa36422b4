"""Automata for diagonals of rational functions modulo 2^alpha.

A diagonal sum_n [x^(n,...,n)] P/Q is 2-automatic modulo 2^alpha. With
m = 2^(alpha-1) we have Q(x)^(2m) = Q(x^2)^m (mod 2^alpha), so writing a state
as P'/Q^m the digit-r step is P' -> cartier(P' * Q^m, r). States are explored
breadth first and identified by exact coefficient equality.

Digits are always read least significant first.
"""
from __future__ import annotations

import functools
import itertools
import json
import os
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import fft as sfft
from scipy import signal

from .reports import CheckResult
from .sequences import apery_residues, run_length

__all__ = [
    "DegreeOverflow",
    "MultiPoly",
    "DiagonalSpec",
    "MooreMachine",
    "cartier",
    "degree_box",
    "build_diagonal_automaton",
    "load_or_build",
    "run",
    "run_digits",
    "minimize",
    "product",
    "relabel",
    "digit_projection",
    "isomorphic",
    "build_l2_automaton",
    "a_spec",
    "beta_spec",
    "sequence_automaton",
    "residue_table",
    "verify_a16_b4",
    "verify_l2_mod8",
    "verify_l2_mod4",
    "CACHE_ENV",
]

#: directory for cached machines; unset means no disk cache
CACHE_ENV = "APERY_CACHE_DIR"

Label = Hashable


class DegreeOverflow(RuntimeError):
    """A transition produced a polynomial outside the fixed degree box."""


class MultiPoly:
    """Polynomial in k variables with coefficients mod 2^alpha.

    Stored as a dense integer array whose shape is (D_1 + 1, ..., D_k + 1) for the
    per-variable degree bounds D_i. Equality and hashing ignore the box size.
    """

    __slots__ = ("coeffs", "modulus")

    def __init__(self, coeffs, modulus: int):
        a = np.asarray(coeffs, dtype=np.int64)
        if a.ndim == 0:
            raise ValueError("need at least one variable")
        self.coeffs = np.mod(a, modulus)
        self.modulus = modulus

    @classmethod
    def from_terms(cls, terms: Mapping[Tuple[int, ...], int], modulus: int, nvars: Optional[int] = None):
        if nvars is None:
            nvars = len(next(iter(terms)))
        shape = [1] * nvars
        for e in terms:
            if len(e) != nvars:
                raise ValueError("inconsistent exponent length")
            shape = [max(s, x + 1) for s, x in zip(shape, e)]
        a = np.zeros(shape, dtype=np.int64)
        for e, c in terms.items():
            a[e] += c
        return cls(a, modulus)

    @classmethod
    def one(cls, nvars: int, modulus: int) -> "MultiPoly":
        return cls(np.ones([1] * nvars, dtype=np.int64), modulus)

    @property
    def nvars(self) -> int:
        return self.coeffs.ndim

    @property
    def degree_bound(self) -> Tuple[int, ...]:
        return tuple(s - 1 for s in self.coeffs.shape)

    def degrees(self) -> Tuple[int, ...]:
        """Actual per-variable degrees (-1 along every axis for the zero polynomial)."""
        nz = np.nonzero(self.coeffs)
        if not nz[0].size:
            return (-1,) * self.nvars
        return tuple(int(ix.max()) for ix in nz)

    def terms(self) -> Dict[Tuple[int, ...], int]:
        """Nonzero coefficients keyed by exponent vector, in sorted exponent order."""
        return {tuple(int(i) for i in e): int(self.coeffs[e]) for e in zip(*np.nonzero(self.coeffs))}

    def trimmed(self) -> "MultiPoly":
        deg = self.degrees()
        return MultiPoly(self.coeffs[tuple(slice(0, max(d, 0) + 1) for d in deg)], self.modulus)

    def padded(self, shape: Sequence[int]) -> "MultiPoly":
        if any(d >= s for d, s in zip(self.degrees(), shape)):
            raise DegreeOverflow(f"degrees {self.degrees()} do not fit shape {tuple(shape)}")
        out = np.zeros(shape, dtype=np.int64)
        src = self.trimmed().coeffs
        out[tuple(slice(0, s) for s in src.shape)] = src
        return MultiPoly(out, self.modulus)

    def constant_term(self) -> int:
        return int(self.coeffs[(0,) * self.nvars])

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        return MultiPoly(convolve_exact(self.coeffs, other.coeffs, self.modulus), self.modulus)

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        shape = [max(a, b) for a, b in zip(self.coeffs.shape, other.coeffs.shape)]
        out = np.zeros(shape, dtype=np.int64)
        for src in (self.coeffs, other.coeffs):
            out[tuple(slice(0, s) for s in src.shape)] += src
        return MultiPoly(out, self.modulus)

    def __pow__(self, e: int) -> "MultiPoly":
        result = MultiPoly.one(self.nvars, self.modulus)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def _check(self, other):
        if self.modulus != other.modulus or self.nvars != other.nvars:
            raise ValueError("operands differ in modulus or variable count")

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if self.modulus != other.modulus or self.nvars != other.nvars:
            return False
        a, b = self.trimmed().coeffs, other.trimmed().coeffs
        return a.shape == b.shape and bool((a == b).all())

    def __hash__(self):
        t = self.trimmed().coeffs
        return hash((self.modulus, t.shape, t.tobytes()))

    def __repr__(self):
        return f"MultiPoly({self.terms()}, mod {self.modulus})"


def convolve_exact(a: np.ndarray, b: np.ndarray, modulus: int) -> np.ndarray:
    """Full product of two coefficient arrays by direct integer convolution, reduced mod ``modulus``."""
    a = np.mod(a, modulus)
    b = np.mod(b, modulus)
    if max(a.size, b.size) * min(a.size, b.size) > 1 << 20:
        return _fft_convolve(a, b, modulus)
    return np.mod(signal.convolve(a, b, method="direct"), modulus)


def _fft_convolve(a: np.ndarray, b: np.ndarray, modulus: int) -> np.ndarray:
    full = [x + y - 1 for x, y in zip(a.shape, b.shape)]
    fast = [sfft.next_fast_len(x, real=True) for x in full]
    prod = sfft.irfftn(sfft.rfftn(a.astype(float), s=fast) * sfft.rfftn(b.astype(float), s=fast), s=fast)
    prod = prod[tuple(slice(0, x) for x in full)]
    return _round_exact(prod, a, b, modulus)


def _round_exact(prod: np.ndarray, a: np.ndarray, b: np.ndarray, modulus: int) -> np.ndarray:
    # the true coefficients are integers below 2^53, so rounding recovers them
    # provided the floating error stays well under 1/2
    bound = min(a.size, b.size) * (modulus - 1) ** 2
    if bound >= 1 << 50:
        raise OverflowError("coefficient growth too large for floating convolution")
    rounded = np.rint(prod)
    err = float(np.abs(rounded - prod).max()) if prod.size else 0.0
    if err > 0.2:
        raise ArithmeticError(f"floating convolution error {err:.3g} too large to round safely")
    return np.mod(rounded.astype(np.int64), modulus)


def cartier(P: MultiPoly, r: int) -> MultiPoly:
    """Coefficients at exponents 2e + (r, ..., r), re-indexed by e."""
    if r not in (0, 1):
        raise ValueError("digit must be 0 or 1")
    return MultiPoly(P.coeffs[tuple(slice(r, None, 2) for _ in range(P.nvars))], P.modulus)


@dataclass(frozen=True)
class DiagonalSpec:
    numerator: MultiPoly
    denominator: MultiPoly
    alpha: int
    name: str = ""

    def __post_init__(self):
        if self.alpha < 1:
            raise ValueError("alpha must be >= 1")
        if self.numerator.nvars != self.denominator.nvars:
            raise ValueError("numerator and denominator disagree on variable count")
        if self.denominator.constant_term() % 2 == 0:
            raise ValueError("denominator needs an odd constant term")
        mod = 1 << self.alpha
        if self.numerator.modulus != mod or self.denominator.modulus != mod:
            object.__setattr__(self, "numerator", MultiPoly(self.numerator.coeffs, mod))
            object.__setattr__(self, "denominator", MultiPoly(self.denominator.coeffs, mod))

    @property
    def nvars(self) -> int:
        return self.numerator.nvars

    @property
    def modulus(self) -> int:
        return 1 << self.alpha


def _a_terms() -> Dict[Tuple[int, ...], int]:
    # (1 - x1 - x2)(1 - x3 - x4) - x1 x2 x3 x4
    lin = {(0, 0): 1, (1, 0): -1, (0, 1): -1}
    terms: Dict[Tuple[int, ...], int] = {}
    for (i, j), c in lin.items():
        for (k, l), d in lin.items():
            terms[(i, j, k, l)] = terms.get((i, j, k, l), 0) + c * d
    terms[(1, 1, 1, 1)] = terms.get((1, 1, 1, 1), 0) - 1
    return terms


def _beta_terms() -> Dict[Tuple[int, ...], int]:
    # (1 - x1)(1 - x2)(1 - x3)(1 - x4) - (1 - x1) x1 x2 x3
    terms: Dict[Tuple[int, ...], int] = {}
    for e in itertools.product((0, 1), repeat=4):
        terms[e] = (-1) ** sum(e)
    terms[(1, 1, 1, 0)] -= 1
    terms[(2, 1, 1, 0)] = 1
    return terms


def a_spec(alpha: int) -> DiagonalSpec:
    """Four-variable rational function whose diagonal is A_n."""
    mod = 1 << alpha
    return DiagonalSpec(MultiPoly.one(4, mod), MultiPoly.from_terms(_a_terms(), mod), alpha, "a")


def beta_spec(alpha: int) -> DiagonalSpec:
    """Four-variable rational function whose diagonal is beta_n."""
    mod = 1 << alpha
    return DiagonalSpec(MultiPoly.one(4, mod), MultiPoly.from_terms(_beta_terms(), mod), alpha, "beta")


@dataclass(frozen=True)
class MooreMachine:
    """Total automaton over {0, 1} with a label on each state.

    ``transitions[s] == (t0, t1)``. Use :meth:`canonical` to get BFS numbering
    from the initial state (digit 0 before digit 1) with unreachable states dropped.
    """

    transitions: Tuple[Tuple[int, int], ...]
    outputs: Tuple[Label, ...]
    initial: int = 0

    def __post_init__(self):
        trans = tuple(tuple(int(t) for t in row) for row in self.transitions)
        object.__setattr__(self, "transitions", trans)
        object.__setattr__(self, "outputs", tuple(self.outputs))
        n = len(trans)
        if len(self.outputs) != n:
            raise ValueError("one output per state required")
        if not 0 <= self.initial < n:
            raise ValueError("initial state out of range")
        for row in trans:
            if len(row) != 2 or not all(0 <= t < n for t in row):
                raise ValueError(f"bad transition row {row}")

    @property
    def size(self) -> int:
        return len(self.transitions)

    def canonical(self) -> "MooreMachine":
        order = {self.initial: 0}
        queue = deque([self.initial])
        while queue:
            s = queue.popleft()
            for t in self.transitions[s]:
                if t not in order:
                    order[t] = len(order)
                    queue.append(t)
        old = sorted(order, key=order.get)
        trans = tuple(tuple(order[t] for t in self.transitions[s]) for s in old)
        return MooreMachine(trans, tuple(self.outputs[s] for s in old), 0)

    def to_dict(self) -> dict:
        return {
            "alphabet": [0, 1],
            "initial": self.initial,
            "transitions": [list(row) for row in self.transitions],
            "outputs": [list(o) if isinstance(o, tuple) else o for o in self.outputs],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "MooreMachine":
        if data.get("alphabet", [0, 1]) != [0, 1]:
            raise ValueError("only the binary alphabet is supported")
        outputs = [tuple(o) if isinstance(o, list) else o for o in data["outputs"]]
        return cls(tuple(map(tuple, data["transitions"])), tuple(outputs), data["initial"])

    @classmethod
    def from_json(cls, text: str) -> "MooreMachine":
        return cls.from_dict(json.loads(text))

    def to_dot(self, name: str = "M") -> str:
        lines = [f"digraph {name} {{", "  rankdir=LR;"]
        for s, out in enumerate(self.outputs):
            attrs = f'label="s{s}/{_dot_label(out)}"'
            if s == self.initial:
                attrs += ", shape=doublecircle"
            lines.append(f"  s{s} [{attrs}];")
        for s, row in enumerate(self.transitions):
            for digit, t in enumerate(row):
                lines.append(f'  s{s} -> s{t} [label="{digit}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _dot_label(out) -> str:
    if isinstance(out, tuple):
        return ",".join(map(str, out))
    return str(out)


def degree_box(spec: DiagonalSpec) -> Tuple[int, ...]:
    """Per-variable degree bound max(deg P Q^(m-1), m deg Q) kept by every state.

    A state of degree <= d times Q^m has degree <= d + m deg Q, and halving that
    stays <= d as soon as d >= m deg Q.
    """
    m = 1 << (spec.alpha - 1)
    start = spec.numerator * spec.denominator ** (m - 1)
    return tuple(max(a, m * q) for a, q in zip(start.degrees(), spec.denominator.degrees()))


def build_diagonal_automaton(spec: DiagonalSpec, exact: bool = False) -> MooreMachine:
    """Raw (unminimized) machine for the diagonal of spec.numerator / spec.denominator.

    ``exact=True`` forces direct integer convolution for every transition; it is
    only practical for small alpha and exists to cross-check the FFT path.
    """
    mod = spec.modulus
    m = 1 << (spec.alpha - 1)
    Qm = spec.denominator ** m
    start = spec.numerator * spec.denominator ** (m - 1)
    qdeg = spec.denominator.degrees()
    shape = [d + 1 for d in degree_box(spec)]
    start = start.padded(shape)
    qm = Qm.padded([m * q + 1 for q in qdeg]).coeffs
    full = [a + b - 1 for a, b in zip(shape, qm.shape)]
    fast = [sfft.next_fast_len(x, real=True) for x in full]
    q_hat = None if exact else sfft.rfftn(qm.astype(float), s=fast)
    out_scale = pow(Qm.constant_term(), -1, mod)

    def step(coeffs: np.ndarray) -> np.ndarray:
        if exact:
            return np.mod(signal.convolve(coeffs, qm, method="direct"), mod)
        prod = sfft.irfftn(sfft.rfftn(coeffs.astype(float), s=fast) * q_hat, s=fast)
        return _round_exact(prod[tuple(slice(0, x) for x in full)], coeffs, qm, mod)

    states = [start.coeffs]
    index = {start.coeffs.tobytes(): 0}
    transitions: List[Tuple[int, int]] = []
    outputs: List[int] = []
    i = 0
    while i < len(states):
        cur = states[i]
        prod = step(cur)
        row = []
        for r in (0, 1):
            part = prod[tuple(slice(r, None, 2) for _ in shape)]
            fit = part[tuple(slice(0, s) for s in shape)]
            if part.shape != fit.shape and np.count_nonzero(part) != np.count_nonzero(fit):
                raise DegreeOverflow(f"state {i} digit {r} escapes degree box {shape}")
            nxt = np.zeros(shape, dtype=np.int64)
            nxt[tuple(slice(0, s) for s in fit.shape)] = fit
            key = nxt.tobytes()
            if key not in index:
                index[key] = len(states)
                states.append(nxt)
            row.append(index[key])
        transitions.append(tuple(row))
        outputs.append(int(cur[(0,) * len(shape)]) * out_scale % mod)
        i += 1
    return MooreMachine(tuple(transitions), tuple(outputs), 0)


def run_digits(M: MooreMachine, digits: Iterable[int]) -> Label:
    s = M.initial
    for d in digits:
        s = M.transitions[s][d]
    return M.outputs[s]


def run(M: MooreMachine, n: int) -> Label:
    """Output after reading the binary digits of n, least significant first."""
    if n < 0:
        raise ValueError("n must be >= 0")
    s = M.initial
    while n:
        s = M.transitions[s][n & 1]
        n >>= 1
    return M.outputs[s]


def minimize(M: MooreMachine) -> MooreMachine:
    """Minimal equivalent machine in canonical numbering (Moore partition refinement)."""
    M = M.canonical()
    labels: Dict[Label, int] = {}
    block = [labels.setdefault(o, len(labels)) for o in M.outputs]
    count = len(labels)
    while True:
        sigs: Dict[Tuple[int, int, int], int] = {}
        new = [sigs.setdefault((block[s], block[t0], block[t1]), len(sigs)) for s, (t0, t1) in enumerate(M.transitions)]
        block = new
        if len(sigs) == count:
            break
        count = len(sigs)
    trans = [None] * count
    outs = [None] * count
    for s, (t0, t1) in enumerate(M.transitions):
        trans[block[s]] = (block[t0], block[t1])
        outs[block[s]] = M.outputs[s]
    return MooreMachine(tuple(trans), tuple(outs), block[M.initial]).canonical()


def product(M1: MooreMachine, M2: MooreMachine) -> MooreMachine:
    """Reachable product machine whose label is the pair of component labels."""
    start = (M1.initial, M2.initial)
    index = {start: 0}
    order = [start]
    trans = []
    i = 0
    while i < len(order):
        a, b = order[i]
        row = []
        for d in (0, 1):
            nxt = (M1.transitions[a][d], M2.transitions[b][d])
            if nxt not in index:
                index[nxt] = len(order)
                order.append(nxt)
            row.append(index[nxt])
        trans.append(tuple(row))
        i += 1
    return MooreMachine(tuple(trans), tuple((M1.outputs[a], M2.outputs[b]) for a, b in order), 0)


def relabel(M: MooreMachine, f: Union[Callable[[Label], Label], Mapping[Label, Label]]) -> MooreMachine:
    fn = f.__getitem__ if isinstance(f, Mapping) else f
    return MooreMachine(M.transitions, tuple(fn(o) for o in M.outputs), M.initial)


def digit_projection(M: MooreMachine, position: int) -> MooreMachine:
    """Relabel integer outputs by their binary digit at ``position`` (0 = lowest)."""
    return relabel(M, lambda x: (x >> position) & 1)


def isomorphic(M1: MooreMachine, M2: MooreMachine) -> bool:
    return minimize(M1) == minimize(M2)


def build_l2_automaton(beta_exponent: int) -> MooreMachine:
    """Machine computing the binary run-length count L_2(n) mod 2^beta_exponent.

    Reading LSB first, a block boundary is only confirmed once a 1 follows some
    zeros, so a trailing run of zeros is kept "pending" and is ignored if no more
    ones arrive (high-order zeros are padding).
    """
    if beta_exponent < 1:
        raise ValueError("beta_exponent must be >= 1")
    mod = 1 << beta_exponent
    names: List[Hashable] = ["I", "Z"] + [(c, kind) for c in range(mod) for kind in ("solid", "pending")]
    index = {name: i for i, name in enumerate(names)}

    def target(name, d):
        if name == "I":
            return "Z" if d == 0 else (1 % mod, "solid")
        if name == "Z":
            return "Z" if d == 0 else (2 % mod, "solid")
        c, kind = name
        if kind == "solid":
            return (c, "solid") if d == 1 else (c, "pending")
        return (c, "pending") if d == 0 else ((c + 2) % mod, "solid")

    trans = tuple(tuple(index[target(name, d)] for d in (0, 1)) for name in names)
    outs = tuple(0 if name in ("I", "Z") else name[0] for name in names)
    return MooreMachine(trans, outs, 0).canonical()


def _cache_dir() -> Optional[Path]:
    path = os.environ.get(CACHE_ENV)
    return Path(path) if path else None


_SPECS = {"a": a_spec, "beta": beta_spec}


def load_or_build(seq: str, alpha: int, cache_dir: Optional[Path] = None) -> MooreMachine:
    """Raw diagonal machine for "a" or "beta", read from or written to ``cache_dir`` if given."""
    if seq not in _SPECS:
        raise ValueError(f"unknown sequence {seq!r}")
    path = Path(cache_dir) / f"{seq}-mod{1 << alpha}.json" if cache_dir else None
    if path is not None and path.exists():
        return MooreMachine.from_json(path.read_text())
    M = build_diagonal_automaton(_SPECS[seq](alpha))
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(M.to_json())
        tmp.replace(path)
    return M


def sequence_automaton(seq: str, alpha: int, minimal: bool = True) -> MooreMachine:
    """Machine for A_n, beta_n or L_2(n) modulo 2^alpha, optionally minimized.

    Raw diagonal machines are stored under ``$APERY_CACHE_DIR`` when it is set.
    """
    return _sequence_automaton(seq, alpha, minimal, _cache_dir())


@functools.lru_cache(maxsize=None)
def _sequence_automaton(seq: str, alpha: int, minimal: bool, cache_dir: Optional[Path]) -> MooreMachine:
    if seq == "l2":
        M = build_l2_automaton(alpha)
    else:
        M = load_or_build(seq, alpha, cache_dir)
    return minimize(M) if minimal else M


_TABLE_BITS = {"a": 5, "beta": 3}


@functools.lru_cache(maxsize=None)
def _base_table(kind: str, n_max: int) -> Tuple[int, ...]:
    return tuple(apery_residues(kind, n_max - 1, 1 << _TABLE_BITS[kind]))


def residue_table(kind: str, modulus: int, n_max: int = 1 << 16) -> List[int]:
    """[x_n mod modulus for n < n_max] for kind "a" (modulus | 32), "beta" (| 8) or "l2"."""
    if kind == "l2":
        return [run_length(n) % modulus for n in range(n_max)]
    base = 1 << _TABLE_BITS[kind]
    if base % modulus:
        raise ValueError(f"modulus must divide {base}")
    return [x % modulus for x in _base_table(kind, n_max)]


def _machine_mismatch(M: MooreMachine, expected: Sequence[Label]) -> Optional[int]:
    for n, want in enumerate(expected):
        if run(M, n) != want:
            return n
    return None


def _decompose_a(x: int) -> Tuple[int, int, int]:
    """(i, j, k) with x = 1 + 4i + 8j + 16k mod 32 (x = 1 mod 4)."""
    return (x >> 2) & 1, (x >> 3) & 1, (x >> 4) & 1


def _decompose_beta(x: int) -> Tuple[int, int]:
    """(l, m) with x = 1 + 2l + 4m mod 8 (x odd)."""
    return (x >> 1) & 1, (x >> 2) & 1


def verify_a16_b4(n_max: int = 1 << 16) -> CheckResult:
    """A_n = 8j + 4i + 1 (mod 16) implies beta_n = 2(i + j) + 1 (mod 4)."""
    f = {1: 1, 13: 1, 5: 3, 9: 3}
    A16 = sequence_automaton("a", 4)
    B4 = sequence_automaton("beta", 2)
    detail: dict = {"labels_a16": sorted(set(A16.outputs))}
    if not set(A16.outputs) <= set(f):
        detail["unexpected_labels"] = sorted(set(A16.outputs) - set(f))
        return CheckResult("a16-b4", False, detail)
    lhs = minimize(relabel(A16, f))
    detail["automaton_isomorphic"] = lhs == B4
    detail["states"] = {"a16": A16.size, "b4": B4.size, "relabeled": lhs.size}
    if lhs != B4:
        detail["witness"] = _distinguishing_input(lhs, B4)
    a, b = residue_table("a", 16, n_max), residue_table("beta", 4, n_max)
    bad = None
    for n in range(n_max):
        i, j, _ = _decompose_a(a[n])
        if a[n] % 4 != 1 or b[n] != (2 * (i + j) + 1) % 4:
            bad = n
            break
    detail["numeric_range"] = n_max
    detail["first_numeric_failure"] = bad
    return CheckResult("a16-b4", bool(detail["automaton_isomorphic"]) and bad is None, detail)


def verify_l2_mod8(n_max: int = 1 << 16) -> CheckResult:
    """L_2(n) = 4(k + m) + 2j + i (mod 8) from the digits of A_n mod 32 and beta_n mod 8."""
    A32, B8 = sequence_automaton("a", 5), sequence_automaton("beta", 3)
    a5 = minimize(digit_projection(A32, 4))
    b3 = minimize(digit_projection(B8, 2))
    lhs = minimize(relabel(product(a5, b3), lambda pair: pair[0] ^ pair[1]))
    rhs = minimize(digit_projection(sequence_automaton("l2", 3, minimal=False), 2))
    detail: dict = {
        "automaton_isomorphic": lhs == rhs,
        "states": {"a32": A32.size, "b8": B8.size, "a32_digit": a5.size, "b8_digit": b3.size, "xor": lhs.size},
    }
    if lhs != rhs:
        detail["witness"] = _distinguishing_input(lhs, rhs)
    a, b = residue_table("a", 32, n_max), residue_table("beta", 8, n_max)
    bad = None
    for n in range(n_max):
        i, j, k = _decompose_a(a[n])
        l, m = _decompose_beta(b[n])
        if a[n] % 4 != 1 or b[n] % 2 != 1 or run_length(n) % 8 != (4 * (k + m) + 2 * j + i) % 8:
            bad = n
            break
    detail["numeric_range"] = n_max
    detail["first_numeric_failure"] = bad
    return CheckResult("l2-mod8", bool(detail["automaton_isomorphic"]) and bad is None, detail)


def verify_l2_mod4(n_max: int = 1 << 16) -> CheckResult:
    """L_2(n) = 2j + i (mod 4) when A_n = 8j + 4i + 1 (mod 16)."""
    A16 = sequence_automaton("a", 4)
    lhs = minimize(relabel(A16, lambda x: (x >> 2) & 3))
    rhs = sequence_automaton("l2", 2)
    detail: dict = {"automaton_isomorphic": lhs == rhs, "states": {"a16": A16.size, "l2": rhs.size}}
    if lhs != rhs:
        detail["witness"] = _distinguishing_input(lhs, rhs)
    a = residue_table("a", 16, n_max)
    bad = None
    for n in range(n_max):
        i, j, _ = _decompose_a(a[n])
        if a[n] % 4 != 1 or run_length(n) % 4 != 2 * j + i:
            bad = n
            break
    detail["numeric_range"] = n_max
    detail["first_numeric_failure"] = bad
    return CheckResult("l2-mod4", bool(detail["automaton_isomorphic"]) and bad is None, detail)


def _distinguishing_input(M1: MooreMachine, M2: MooreMachine) -> Optional[dict]:
    """Shortest LSB-first digit string on which the two machines disagree."""
    start = (M1.initial, M2.initial)
    seen = {start: []}
    queue = deque([start])
    while queue:
        a, b = pair = queue.popleft()
        if M1.outputs[a] != M2.outputs[b]:
            digits = seen[pair]
            return {"digits": digits, "n": sum(d << i for i, d in enumerate(digits)),
                    "outputs": [M1.outputs[a], M2.outputs[b]]}
        for d in (0, 1):
            nxt = (M1.transitions[a][d], M2.transitions[b][d])
            if nxt not in seen:
                seen[nxt] = seen[pair] + [d]
                queue.append(nxt)
    return None
