"""Command-line front end: ``python3 -m apery <command> ...``.

Exit codes: 0 when every check passes, 1 when a counterexample or failed
check is found, 2 for usage errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from . import automata, congruences, identities
from .reports import VerificationReport
from .sequences import apery_fast, catalan, run_length

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

#: group names accepted by ``verify`` besides the registered ones
GROUP_ALIASES = {
    "thm1.1": "beta-sums",
    "thm1.2": "beta-prime-sums",
    "thm4.1": "sigma-sums",
}

THEOREM_CHECKS = {
    "1.3": automata.verify_a16_b4,
    "1.4": automata.verify_l2_mod8,
    "5.1": automata.verify_l2_mod4,
}

SEQ_KINDS = ("a", "beta", "l2", "catalan")
MODULI = {4: 2, 8: 3, 16: 4, 32: 5}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    max_n: int = 1000
    max_p: int = 199
    identity_n: int = 300
    jobs: int = 1
    report: Optional[str] = None
    output: Optional[str] = None
    fmt: str = "text"
    targets: List[str] = field(default_factory=list)

    def __post_init__(self):
        if min(self.max_n, self.identity_n, self.jobs) < 1 or self.max_p < 2:
            raise UsageError("bounds and --jobs must be positive")


def _emit(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_seq(args) -> int:
    if args.to < args.start or args.start < 0:
        raise UsageError("need 0 <= --from <= --to")
    n_range = range(args.start, args.to + 1)
    if args.kind in ("a", "beta"):
        values = apery_fast(args.kind, args.to)[args.start:]
    elif args.kind == "l2":
        values = [run_length(n) for n in n_range]
    else:
        values = [catalan(n) for n in n_range]
    if args.format == "json":
        for n, v in zip(n_range, values):
            print(json.dumps({"n": n, "value": v}))
    else:
        print(" ".join(map(str, values)))
    return EXIT_OK


def resolve_targets(targets: Sequence[str]) -> List[str]:
    """Expand group names, aliases and ``all`` into an ordered list of case ids."""
    out: List[str] = []
    for t in targets:
        t = GROUP_ALIASES.get(t, t)
        if t == "all":
            ids = [cid for group in congruences.GROUPS.values() for cid in group] + list(identities.IDENTITY_CASES)
        elif t == "identities":
            ids = list(identities.IDENTITY_CASES)
        elif t in congruences.GROUPS:
            ids = congruences.GROUPS[t]
        elif t in congruences.REGISTRY or t in identities.IDENTITY_CASES:
            ids = [t]
        else:
            raise UsageError(f"unknown case or group {t!r}")
        out.extend(i for i in ids if i not in out)
    return out


def run_verify(config: RunConfig) -> List[VerificationReport]:
    ids = resolve_targets(config.targets)
    congruence_ids = [i for i in ids if i in congruences.REGISTRY]
    by_id = {r.case: r for r in congruences.verify_cases(congruence_ids, config.max_n, config.max_p, config.jobs)}
    for i in ids:
        if i in identities.IDENTITY_CASES:
            by_id[i] = identities.verify_identity_case(i, config.identity_n)
    return [by_id[i] for i in ids]


def cmd_verify(args) -> int:
    config = RunConfig("verify", args.max_n, args.max_p, args.max_identity_n, args.jobs,
                       report=args.report, targets=args.target)
    reports = run_verify(config)
    for r in reports:
        line = f"{r.case:36s} {r.status:4s} {r.range} ({r.points} points, {r.seconds:.2f}s)"
        if not r.passed:
            line += f" first counterexample: {json.dumps(r.first_counterexample, default=str)}"
        print(line)
    if config.report:
        with open(config.report, "w") as fh:
            json.dump([r.to_dict() for r in reports], fh, indent=2, default=str)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_certify(args) -> int:
    start = time.perf_counter()
    results = []
    for which in (1, 2, 3):
        cert = identities.CERTIFICATES[which]
        symbolic = identities.verify_certificate(which)
        entry = {"certificate": cert.name, "symbolic": "pass" if symbolic else "fail"}
        if not symbolic:
            entry["residual"] = symbolic.detail.get("residual")
        if args.points:
            pointwise = identities.verify_certificate_points(which, args.points)
            entry["pointwise"] = "pass" if pointwise else "fail"
            if not pointwise:
                entry["first_failure"] = pointwise.detail
        entry["status"] = "pass" if symbolic and entry.get("pointwise", "pass") == "pass" else "fail"
        results.append(entry)
    ok = all(e["status"] == "pass" for e in results)
    doc = {"status": "pass" if ok else "fail", "certificates": results, "seconds": time.perf_counter() - start}
    _emit(json.dumps(doc, indent=2) + "\n", args.output)
    return EXIT_OK if ok else EXIT_FAIL


def parse_modulus(text: str) -> int:
    """Accept ``32``, ``2^5`` or ``2**5``; return the exponent alpha."""
    t = text.replace("**", "^")
    try:
        mod = 2 ** int(t[2:]) if t.startswith("2^") else int(t)
    except ValueError:
        raise UsageError(f"bad modulus {text!r}") from None
    if mod not in MODULI:
        raise UsageError(f"modulus must be one of {sorted(MODULI)}")
    return MODULI[mod]


def cmd_automaton(args) -> int:
    if args.cache_dir:
        os.environ[automata.CACHE_ENV] = args.cache_dir
    if args.action == "build":
        alpha = parse_modulus(args.mod)
        if args.seq == "beta" and alpha > 3:
            raise UsageError("beta machines are supported up to modulus 8")
        M = automata.sequence_automaton(args.seq, alpha, minimal=not args.raw)
        text = M.to_dot(f"{args.seq}_mod{1 << alpha}") if args.out == "dot" else M.to_json() + "\n"
        _emit(text, args.output)
        print(f"{args.seq} mod {1 << alpha}: {M.size} states", file=sys.stderr)
        return EXIT_OK
    result = THEOREM_CHECKS[args.theorem](args.max_n)
    print(json.dumps({"theorem": args.theorem, "check": result.name,
                      "status": "pass" if result else "fail", "detail": result.detail}, default=str))
    return EXIT_OK if result else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="apery", description="Apery-number congruence and automaton checks")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("seq", help="print a range of sequence values")
    p.add_argument("--kind", choices=SEQ_KINDS, required=True)
    p.add_argument("--from", dest="start", type=int, default=0)
    p.add_argument("--to", type=int, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_seq)

    p = sub.add_parser("verify", help="run registered congruence and identity checks")
    p.add_argument("target", nargs="+", help="case id, group name, 'identities' or 'all'")
    p.add_argument("--max-n", type=int, default=1000)
    p.add_argument("--max-p", type=int, default=199)
    p.add_argument("--max-identity-n", type=int, default=300,
                   help="bound for the finite-sum identity checks, which cost far more per n")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--report", help="write the JSON reports here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("certify", help="check the telescoping certificates")
    p.add_argument("--points", type=int, default=0, help="also evaluate at integer points with k up to this")
    p.add_argument("--output", help="write JSON here instead of stdout")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("automaton", help="build machines or check digit correspondences")
    asub = p.add_subparsers(dest="action", required=True)
    b = asub.add_parser("build")
    b.add_argument("--seq", choices=("a", "beta", "l2"), required=True)
    b.add_argument("--mod", required=True, help="4, 8, 16, 32 or 2^alpha")
    b.add_argument("--out", choices=("json", "dot"), default="json")
    b.add_argument("--output", help="file to write instead of stdout")
    b.add_argument("--raw", action="store_true", help="skip minimization")
    c = asub.add_parser("check")
    c.add_argument("--theorem", choices=sorted(THEOREM_CHECKS), required=True)
    c.add_argument("--max-n", type=int, default=1 << 16, help="numeric check covers n below this")
    for q in (b, c):
        q.add_argument("--cache-dir", help=f"machine cache directory (default ${automata.CACHE_ENV})")
    p.set_defaults(func=cmd_automaton)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"apery: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
