"""Command-line front end.

Exit codes: 0 success, 1 verification failed, 2 invalid input,
3 no equilibrium / unsupported regime / invalid construction.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

import numpy as np

from .errors import (AuctionError, ConstructionInvalid, InvalidProfile, NoEquilibrium,
                     PreconditionViolated, UnsupportedRegime)
from .model import AuctionProfile
from .solve import Solution, solve
from .strategy import MixedStrategy, marginal_of, sample, write_samples_csv
from .verify import VerifierConfig, equilibrium_value, verify_equilibrium

EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_NO_EQUILIBRIUM = 3

_REFUSALS = (NoEquilibrium, UnsupportedRegime, ConstructionInvalid, PreconditionViolated)

DEMO_INSTANCES = [
    ("single, strong high value", (3, 1), [[4], [2]]),
    ("single, strong low value", (3, 1), [[1], [5]]),
    ("single, pure", (1, 1), [[4], [3]]),
    ("single, equal budgets B > v/2", (2, 2), [[4], [3]]),
    ("two items, symmetric", (1, 1), [[3, 3], [3, 3]]),
    ("two items, C1", (5, 2), [[3.5, 3.2], [4, 3]]),
    ("two items, C1 diagonal only", (20, 10), [[6, 5], [4, 3]]),
    ("two items, outside validity", (5, 2), [[6, 5], [4, 3]]),
    ("three items, triangle", (6, 5), [[4, 3, 3], [4, 3, 3]]),
    ("three items, chord", (7, 6), [[6, 2, 1], [6, 2, 1]]),
]


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _load_json(path: str):
    try:
        return json.loads(_read_text(path))
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidProfile("input", f"{path}: {exc}") from None


def _load_solution(args) -> Solution:
    """Candidate strategies from ``--strategies`` or solved from ``--profile``."""
    if getattr(args, "strategies", None):
        data = _load_json(args.strategies)
        try:
            if "profile" not in data and args.profile:
                data["profile"] = _load_json(args.profile)
            return Solution.from_dict(data)
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidProfile("strategies", f"malformed strategy file: {exc}") from None
    if not args.profile:
        raise InvalidProfile("input", "one of --profile or --strategies is required")
    profile = AuctionProfile.from_dict(_load_json(args.profile))
    return solve(profile, getattr(args, "boundary_mass", None))


def cmd_solve(args) -> int:
    sol = _load_solution(args)
    print(f"case: {sol.case}", file=sys.stderr)
    _write(args.output, sol.to_json() + "\n")
    return 0


def cmd_verify(args) -> int:
    sol = _load_solution(args)
    config = VerifierConfig(grid_step=args.grid_step, tolerance=args.tolerance,
                            critical_offset=min(1e-6, args.grid_step / 10), parallel=args.parallel)
    cert = verify_equilibrium(sol.profile, *sol.strategies, config=config)
    _write(args.output, cert.to_json() + "\n")
    return 0 if cert.passed else EXIT_FAIL


def _load_single_strategy(args) -> MixedStrategy:
    if args.strategy:
        data = _load_json(args.strategy)
        try:
            if "strategies" in data:
                return MixedStrategy.from_dict(data["strategies"][args.player - 1])
            return MixedStrategy.from_dict(data)
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise InvalidProfile("strategy", f"malformed strategy file: {exc}") from None
    return _load_solution(args).strategies[args.player - 1]


def cmd_sample(args) -> int:
    strat = _load_single_strategy(args)
    draws = sample(strat, args.seed, args.n)
    buf = io.StringIO()
    write_samples_csv(draws, buf)
    _write(args.output, buf.getvalue())
    return 0


def marginal_rows(strategies, item: int, points: int = 512) -> list[tuple[float, float, float]]:
    """Rows ``(x, F1, F2)``: an even grid plus every breakpoint; atoms get a left-limit row first."""
    m1, m2 = (marginal_of(s, item) for s in strategies)
    hi = max(m1.support_max, m2.support_max)
    xs = set(np.linspace(0.0, hi, points).tolist()) if hi > 0 else {0.0}
    xs.update(m1.breakpoints())
    xs.update(m2.breakpoints())
    atom_locs = {x for x, _ in m1.atoms} | {x for x, _ in m2.atoms}
    rows = []
    for x in sorted(xs):
        if x in atom_locs:
            rows.append((x, float(m1.left_limit(x)), float(m2.left_limit(x))))
        rows.append((x, float(m1(x)), float(m2(x))))
    return rows


def cmd_marginals(args) -> int:
    sol = _load_solution(args)
    if not 0 <= args.item < sol.profile.n_items:
        raise InvalidProfile("item", f"item must be in [0, {sol.profile.n_items})")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", "F1", "F2"])
    for row in marginal_rows(sol.strategies, args.item):
        writer.writerow([f"{v:.17g}" for v in row])
    _write(args.output, buf.getvalue())
    return 0


def cmd_demo(args) -> int:
    start = time.perf_counter()
    lines = [f"{'instance':<32} {'case':<26} {'u1':>10} {'u2':>10}  verdict"]
    for name, budgets, values in DEMO_INSTANCES:
        profile = AuctionProfile.create(budgets, values)
        try:
            sol = solve(profile)
        except AuctionError as exc:
            lines.append(f"{name:<32} {exc.kind:<26} {'-':>10} {'-':>10}  refused")
            continue
        u1, u2 = equilibrium_value(profile, *sol.strategies)
        cert = verify_equilibrium(profile, *sol.strategies, VerifierConfig(grid_step=args.grid_step))
        verdict = "certified" if cert.passed else "FAILED"
        u1, u2 = round(u1, 6) + 0.0, round(u2, 6) + 0.0  # no "-0.000000"
        lines.append(f"{name:<32} {sol.case:<26} {u1:>10.6f} {u2:>10.6f}  {verdict}")
    _write(args.output, "\n".join(lines) + "\n")
    print(f"elapsed {time.perf_counter() - start:.2f}s", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="budgeted-allpay", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p):
        p.add_argument("--profile", help="profile JSON file")
        p.add_argument("--output", "-o", help="output file (default stdout)")
        p.add_argument("--seed", type=int, default=42)
        p.add_argument("--boundary-mass", type=float, default=None,
                       help="mass at 0 for the equal-budget boundary family")

    p = sub.add_parser("solve", help="construct the equilibrium strategies")
    common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="certify a strategy pair")
    common(p)
    p.add_argument("--strategies", help="solution JSON with candidate strategies")
    p.add_argument("--grid-step", type=float, default=0.005)
    p.add_argument("--tolerance", type=float, default=1e-6)
    p.add_argument("--parallel", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sample", help="draw bid vectors as CSV")
    common(p)
    p.add_argument("--strategy", help="strategy or solution JSON")
    p.add_argument("--strategies", help=argparse.SUPPRESS)
    p.add_argument("--player", type=int, choices=(1, 2), default=1)
    p.add_argument("--n", type=int, default=1000, help="number of draws")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("marginals", help="per-item marginal CDFs as CSV")
    common(p)
    p.add_argument("--strategies", help="solution JSON with strategies")
    p.add_argument("--item", type=int, default=0)
    p.set_defaults(func=cmd_marginals)

    p = sub.add_parser("demo", help="run the worked instances and print a table")
    p.add_argument("--output", "-o")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--grid-step", type=float, default=0.005)
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "n", 1) < 1:
        parser.error("--n must be at least 1")
    try:
        return args.func(args)
    except _REFUSALS as exc:
        print(exc.reason, file=sys.stderr)
        return EXIT_NO_EQUILIBRIUM
    except (AuctionError, ValueError) as exc:
        reason = exc.reason if isinstance(exc, AuctionError) else f"InvalidInput: {exc}"
        print(reason, file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
