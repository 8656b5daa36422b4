"""Build every supported machine, print state counts and write JSON and DOT files.

    python3 scripts/build_automata.py --out-dir machines
"""
from __future__ import annotations

import argparse
import time
from pathlib import Path

from apery.automata import sequence_automaton

TARGETS = [("a", a) for a in range(1, 6)] + [("beta", a) for a in range(1, 4)] + [("l2", a) for a in range(1, 4)]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out-dir", type=Path, default=Path("machines"))
    args = parser.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)
    for seq, alpha in TARGETS:
        start = time.perf_counter()
        raw = sequence_automaton(seq, alpha, minimal=False)
        M = sequence_automaton(seq, alpha)
        stem = f"{seq}-mod{1 << alpha}"
        (args.out_dir / f"{stem}.json").write_text(M.to_json() + "\n")
        (args.out_dir / f"{stem}.dot").write_text(M.to_dot(stem.replace("-", "_")))
        print(f"{stem:12s} raw {raw.size:4d}  minimal {M.size:4d}  {time.perf_counter() - start:6.1f}s")


if __name__ == "__main__":
    main()
