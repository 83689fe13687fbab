"""Command line interface.

Exit codes: 0 success, 1 a check failed (trace violation, demo FAIL, or
property does not hold), 2 bad usage or unparseable input.
"""

from __future__ import annotations

import argparse
import sys

from .adversary import AdversaryError
from .engine import EngineError
from .graphs import PROPERTIES, GraphError, Schedule, check_property, minimal_T
from .harness import (
    DEMOS,
    ScenarioError,
    demo,
    parse_scenario,
    run_scenario,
    sweep,
    verify_result,
    verify_trace,
)


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ScenarioError(f"cannot read {path}: {exc}") from exc


def _report(report, out) -> int:
    out(report.metrics.table())
    if report.violations:
        out(f"violations: {len(report.violations)}")
        for v in report.violations:
            out(f"  {v}")
        return 1
    out("violations: 0")
    return 0


def _cmd_run(args, out) -> int:
    sc = parse_scenario(_read(args.scenario))
    result = run_scenario(sc)
    text = result.to_text()
    if args.trace_out:
        with open(args.trace_out, "w", encoding="utf-8") as fh:
            fh.write(text)
        out(f"trace written to {args.trace_out}")
    return _report(verify_trace(text), out)


def _cmd_verify(args, out) -> int:
    return _report(verify_trace(_read(args.trace)), out)


def _cmd_demo(args, out) -> int:
    ids = tuple(DEMOS) if args.id == "all" else (args.id,)
    ok = True
    for demo_id in ids:
        ok &= demo(demo_id, out=out)
    return 0 if ok else 1


def _parse_seeds(text: str) -> list[int]:
    if ".." in text:
        lo, _, hi = text.partition("..")
        try:
            return list(range(int(lo), int(hi) + 1))
        except ValueError:
            raise ScenarioError(f"bad seed range {text!r}") from None
    try:
        return [int(s) for s in text.split(",")]
    except ValueError:
        raise ScenarioError(f"bad seed list {text!r}") from None


def _cmd_sweep(args, out) -> int:
    _, violations = sweep(_read(args.template), _parse_seeds(args.seeds), out=out)
    return 1 if violations else 0


def _cmd_classify(args, out) -> int:
    schedule = Schedule.load(args.schedule)
    if args.property is None:
        for prop in PROPERTIES:
            best = minimal_T(schedule, prop)
            out(f"{prop}: minimal T = {best if best is not None else 'none'}")
        return 0
    if args.T is None:
        best = minimal_T(schedule, args.property)
        out(f"{args.property}: minimal T = {best if best is not None else 'none'}")
        return 0 if best is not None else 1
    report = check_property(schedule, args.property, args.T)
    out(report.describe())
    return 0 if report.holds else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dispersim",
        description="simulate and verify agent dispersion and exploration"
        " on adversarial dynamic graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run a scenario file and verify its trace")
    p.add_argument("scenario")
    p.add_argument("--trace-out", help="also write the trace to this path")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("verify", help="re-check a recorded trace")
    p.add_argument("trace")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("demo", help="run an executable claim")
    p.add_argument("id", choices=tuple(DEMOS) + ("all",))
    p.set_defaults(func=_cmd_demo)

    p = sub.add_parser("sweep", help="run a scenario template across seeds")
    p.add_argument("template")
    p.add_argument("--seeds", default="0..19",
                   help="range a..b or comma list (default 0..19)")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("classify", help="check connectivity properties"
                       " of a schedule file")
    p.add_argument("schedule")
    p.add_argument("--property", choices=PROPERTIES)
    p.add_argument("--T", type=int)
    p.set_defaults(func=_cmd_classify)

    return parser


def main(argv=None, out=print) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except (ScenarioError, GraphError, EngineError, AdversaryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
