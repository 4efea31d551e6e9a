#!/usr/bin/env python3
"""Run every builtin scenario and drop the CSV/metadata artifacts in one
directory. Equivalent to looping `churate run --scenario ...`.

The interference sweep re-solves the matching network per Gamma node and
dominates the wall time; use --workers to parallelize across sweep values.
"""

import argparse
import os
import time

from churate.experiments import SCENARIOS, run


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="results")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    parser.add_argument("--only", nargs="*", choices=sorted(SCENARIOS),
                        help="subset of scenarios to run")
    args = parser.parse_args()

    names = args.only or list(SCENARIOS)
    for name in names:
        t0 = time.time()
        csv_path, _ = run(name, args.out, seed=args.seed, workers=args.workers)
        print(f"{name}: {csv_path} [{time.time() - t0:.1f} s]")


if __name__ == "__main__":
    main()
