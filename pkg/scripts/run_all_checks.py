"""Run every registered check at the default bounds plus the machine correspondences.

Writes one JSON document with all reports; exits 1 if anything fails.

    python3 scripts/run_all_checks.py --jobs 4 --report all_checks.json
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from apery.automata import verify_a16_b4, verify_l2_mod4, verify_l2_mod8
from apery.cli import RunConfig, run_verify


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-n", type=int, default=1000)
    parser.add_argument("--max-p", type=int, default=199)
    parser.add_argument("--max-identity-n", type=int, default=300)
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--report", default="all_checks.json")
    args = parser.parse_args()

    config = RunConfig("verify", args.max_n, args.max_p, args.max_identity_n, args.jobs, targets=["all"])
    reports = run_verify(config)
    for r in reports:
        print(f"{r.case:36s} {r.status:4s} {r.seconds:7.2f}s  {r.range}")
    machine_checks = []
    for check in (verify_a16_b4, verify_l2_mod8, verify_l2_mod4):
        start = time.perf_counter()
        res = check()
        machine_checks.append({"check": res.name, "status": "pass" if res else "fail",
                               "detail": res.detail, "seconds": time.perf_counter() - start})
        print(f"{res.name:36s} {'pass' if res else 'fail'}")
    ok = all(r.passed for r in reports) and all(c["status"] == "pass" for c in machine_checks)
    with open(args.report, "w") as fh:
        json.dump({"status": "pass" if ok else "fail", "reports": [r.to_dict() for r in reports],
                   "machine_checks": machine_checks}, fh, indent=2, default=str)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
