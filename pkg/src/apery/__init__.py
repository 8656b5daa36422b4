"""Exact verification of congruences for Apery numbers and of automata for their residues mod 2^alpha."""
from __future__ import annotations

from .exactarith import PadicApprox, Residue, binomial, mod_inverse, rational_to_padic, valuation
from .reports import CheckResult, VerificationReport
from .sequences import apery_a, apery_beta, apery_fast, bernoulli_exact, harmonic, run_length

__version__ = "0.1.0"

__all__ = [
    "PadicApprox",
    "Residue",
    "binomial",
    "mod_inverse",
    "rational_to_padic",
    "valuation",
    "CheckResult",
    "VerificationReport",
    "apery_a",
    "apery_beta",
    "apery_fast",
    "bernoulli_exact",
    "harmonic",
    "run_length",
]
