"""``fairdiv`` command line: run, audit, gen, sweep.

Exit codes: 0 success (all checks pass), 1 a check failed, 2 usage, parse or
resource error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from typing import Sequence

from . import generators
from .audit import ALL_CHECKS, audit, check_ef1, check_po_bruteforce, outputs_by_ordering, pef_degree_from_outputs
from .core import AgentOrdering, FairDivError, Instance
from .io import RunResult, load_instance, parse_ordering, parse_rational, serialize_instance
from .mechanisms import MECHANISMS, run_mechanism

SWEEP_HEADER = ["seed", "n", "m", "degree", "ef1", "po", "max_bundle", "wall_ms", "error"]


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def cmd_run(args) -> int:
    inst = load_instance(args.instance)
    ordering = parse_ordering(args.ordering, inst.n) if args.ordering else AgentOrdering.identity(inst.n)
    alloc = run_mechanism(args.mechanism, inst, ordering)
    _write(RunResult.build(args.mechanism, inst, ordering, alloc).dumps(), None)
    return 0


def cmd_audit(args) -> int:
    inst = load_instance(args.instance)
    checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    scalars = [parse_rational(s) for s in args.scalars.split(",")] if args.scalars else None
    orderings = [parse_ordering(args.ordering, inst.n)] if args.ordering else None
    report = audit(args.mechanism, inst, checks, scalars=scalars, orderings=orderings)
    doc = report.to_json(include_timing=args.timing)
    failed = not report.passed
    if args.require_pef1 and report.degree is not None and report.degree > 1:
        doc["require_pef1"] = {"passed": False}
        failed = True
    _write(json.dumps(doc, indent=2) + "\n", None)
    return 1 if failed else 0


def cmd_gen(args) -> int:
    inst = generators.generate(
        args.family, n=args.n, m=args.m, rounds=args.rounds, seed=args.seed, max_value=args.max_value
    )
    _write(serialize_instance(inst), args.out)
    return 0


def family_instances(n: int, m: int) -> list[tuple[str, Instance]]:
    """Lower-bound constructions whose shape matches ``n`` agents and ``m`` goods."""
    out = []
    if (n, m) == (4, 5):
        out.append(("example4", generators.gen_example4()))
    if m % n == 0 and m // n >= n.bit_length() - 1:
        out.append(("rr_log_lower_bound", generators.gen_rr_log_lower_bound(n, m // n)))
    if n == 2 and m >= 3:
        out.append(("aw_counterexample", generators.gen_aw_counterexample(m)))
    if m >= n:
        out.append(("ec_worst", generators.gen_ec_worst(n, m)))
    return out


def sweep_row(mechanism: str, tag, inst: Instance, with_po: bool) -> list:
    start = time.perf_counter()
    row = {"seed": tag, "n": inst.n, "m": inst.m, "degree": "", "ef1": "", "po": "",
           "max_bundle": "", "error": ""}
    try:
        outputs = outputs_by_ordering(mechanism, inst)
        row["degree"] = pef_degree_from_outputs(inst, outputs)[0]
        row["ef1"] = int(all(check_ef1(inst, alloc).passed for _, alloc in outputs))
        if with_po:
            row["po"] = int(all(check_po_bruteforce(inst, alloc).passed for _, alloc in outputs))
        row["max_bundle"] = max(len(b) for _, alloc in outputs for b in alloc.bundles)
    except FairDivError as exc:
        row["error"] = str(exc)
    row["wall_ms"] = f"{(time.perf_counter() - start) * 1000:.3f}"
    return [row[k] for k in SWEEP_HEADER]


def cmd_sweep(args) -> int:
    jobs: list[tuple[object, Instance]] = []
    for i in range(args.count):
        seed = args.seed + i
        jobs.append((seed, generators.gen_random(args.n, args.m, seed, args.max_value)))
    if args.include_families:
        jobs.extend(family_instances(args.n, args.m))
    out = sys.stdout if args.out in (None, "-") else open(args.out, "w", encoding="utf-8", newline="")
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(SWEEP_HEADER)
        for tag, inst in jobs:
            writer.writerow(sweep_row(args.mechanism, tag, inst, args.po))
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fairdiv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    mechanisms = sorted(MECHANISMS)

    p = sub.add_parser("run", help="run one mechanism under one ordering")
    p.add_argument("--mechanism", required=True, choices=mechanisms)
    p.add_argument("--instance", required=True)
    p.add_argument("--ordering", help="agent numbers in pick order, e.g. 2,1,3 (default identity)")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("audit", help="fairness checks and instance degree of position envy")
    p.add_argument("--mechanism", required=True, choices=mechanisms)
    p.add_argument("--instance", required=True)
    p.add_argument("--checks", default="ef1,po,pef_degree,scale", help=f"comma list from {','.join(ALL_CHECKS)}")
    p.add_argument("--scalars", help="comma list of positive rationals for the scale check")
    p.add_argument("--ordering", help="restrict ef/ef1/po/scale to this ordering")
    p.add_argument("--require-pef1", action="store_true", help="fail when the instance degree exceeds 1")
    p.add_argument("--timing", action="store_true", help="include per-check wall time")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("gen", help="emit an instance file")
    p.add_argument("--family", required=True, choices=generators.FAMILIES)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--rounds", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-value", type=int, default=10)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("sweep", help="CSV summary over seeded random instances")
    p.add_argument("--mechanism", required=True, choices=mechanisms)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--max-value", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--include-families", action="store_true",
                   help="append the lower-bound constructions matching n and m")
    p.add_argument("--po", action="store_true", help="fill the po column (exhaustive, slow)")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FairDivError as exc:
        print(f"fairdiv: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
