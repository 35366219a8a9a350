"""Wall-clock timings of the verification pipeline per stage.

Usage: python3 benchmarks/bench_verify.py [--n 2 3 4] [--repeat 1]
"""
from __future__ import annotations

import argparse
import time

from gzchow.verify import verify_main_theorem


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, nargs="+", default=[2, 3, 4])
    parser.add_argument("--repeat", type=int, default=1)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    stages = ["mw_ring", "lefschetz_gorenstein", "flag_side", "phi", "comparison"]
    print(f"{'n':>2} {'status':>6} " + " ".join(f"{s:>20}" for s in stages) + f" {'total':>8}")
    for n in args.n:
        for _ in range(args.repeat):
            t = time.perf_counter()
            rep = verify_main_theorem(n, args.seed)
            total = time.perf_counter() - t
            cells = " ".join(f"{rep.timings[s]:>19.3f}s" for s in stages)
            print(f"{n:>2} {rep.status:>6} {cells} {total:>7.2f}s")


if __name__ == "__main__":
    main()
