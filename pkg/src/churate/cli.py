"""Command-line entry point: scenario runner and registry listing.

Defaults can be overridden by CHURATE_-prefixed environment variables;
explicit flags win over the environment.
"""

from __future__ import annotations

import argparse
import os
import sys

from .core import load_config
from .errors import ChurateError, ConfigError
from .experiments import SCENARIOS, list_scenarios, run


def _env(name, cast, fallback):
    raw = os.environ.get(f"CHURATE_{name}")
    if raw is None:
        return fallback
    try:
        return cast(raw)
    except ValueError as exc:
        raise ConfigError(f"bad CHURATE_{name}={raw!r}: {exc}") from exc


def build_parser():
    parser = argparse.ArgumentParser(
        prog="churate",
        description="Achievable-rate sweeps for size-constrained receive antennas")
    sub = parser.add_subparsers(dest="command", required=True)

    runp = sub.add_parser("run", help="run a builtin scenario and write CSV + metadata")
    runp.add_argument("--scenario", required=True, choices=sorted(SCENARIOS))
    runp.add_argument("--config", help="flat JSON config overriding the scenario base")
    runp.add_argument("--out", default=None, help="output directory (default: results)")
    runp.add_argument("--seed", type=int, default=None)
    runp.add_argument("--rel-tol", type=float, default=None, dest="rel_tol")
    runp.add_argument("--workers", type=int, default=None,
                      help="worker processes (default: machine parallelism)")

    sub.add_parser("list-scenarios", help="print the builtin scenario registry")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "list-scenarios":
            for name, description in list_scenarios():
                print(f"{name}: {description}")
            return 0

        out = args.out if args.out is not None else _env("OUT", str, "results")
        seed = args.seed if args.seed is not None else _env("SEED", int, 0)
        rel_tol = args.rel_tol if args.rel_tol is not None \
            else _env("REL_TOL", float, 1e-9)
        workers = args.workers if args.workers is not None \
            else _env("WORKERS", int, os.cpu_count() or 1)
        base_override = load_config(args.config) if args.config else None

        csv_path, meta_path = run(args.scenario, out, seed=seed, rel_tol=rel_tol,
                                  workers=workers, base_override=base_override)
        print(f"wrote {csv_path} and {meta_path}")
        return 0
    except ChurateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
