"""``nullkit`` command line.

Commands::

    hn        common-root test (empty / nonempty)
    radical   is g in the radical of <f>?  (needs a g: line)
    trdeg     transcendence degree of the system
    cert      Nullstellensatz certificate, echoed in the input grammar
    reduce    random generator reduction to r+1 combinations
    zerodim   exact dimension of the zeroset (Groebner oracle)
    threegen  three-generator rewrite of g in <f> (needs a g: line)

Exit status is 0 for a decided verdict and 2 for parse, budget or field errors.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from dataclasses import dataclass

from . import algorithms
from .errors import BudgetExceeded, FieldError, NoCertificate, NullkitError, ParseError
from .exact import GroebnerDimensionOracle
from .field import FieldCtx, sample_set
from .geometry import generator_reduction, required_sample_size
from .groebner import DEFAULT_BUDGET
from .parsing import format_poly, parse_input
from .poly import PolySystem

COMMANDS = ("hn", "radical", "trdeg", "cert", "reduce", "zerodim", "threegen")


@dataclass
class JobSpec:
    command: str
    input_path: str
    seed: int
    trials: int = algorithms.DEFAULT_TRIALS
    r_override: int | None = None
    output_format: str = "json"
    gb_budget: int = DEFAULT_BUDGET
    timing: bool = True

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")


def _field_info(ctx: FieldCtx | None) -> dict | None:
    if ctx is None:
        return None
    irr = list(ctx.irr) if ctx.irr is not None else None
    return {"p": ctx.p, "k": ctx.k, "order": ctx.order, "irr": irr}


def _note(frac) -> str | None:
    return None if frac is None else str(frac)


def _system_polys(parsed):
    if parsed.system is not None:
        return parsed.system
    return PolySystem(parsed.composition.expand())


def _require_g(parsed, command):
    if parsed.g is None:
        raise ParseError(f"'{command}' needs a g: line")
    return parsed.g


def _execute(job: JobSpec, parsed) -> dict:
    """Run ``job`` on parsed input; returns the report without timing."""
    oracle = GroebnerDimensionOracle(job.gb_budget)
    rng = random.Random(job.seed)
    s = parsed.blackboxes
    report: dict = {"command": job.command, "seed": job.seed, "trials": job.trials}
    if job.command == "hn":
        v = algorithms.hn_test(s, job.r_override, rng, job.trials, oracle)
    elif job.command == "radical":
        g = _require_g(parsed, job.command)
        v = algorithms.radical_membership(g, s, job.r_override, rng, job.trials, oracle)
    elif job.command == "trdeg":
        v = algorithms.trdeg_compute(s, rng, job.trials, oracle)
    else:
        v = None
    if v is not None:
        report.update(
            answer=v.answer,
            field=_field_info(v.field),
            confidence_note=_note(v.confidence_note),
            details={k: v.details[k] for k in sorted(v.details)},
        )
        return report

    system = _system_polys(parsed)
    if job.command == "cert":
        try:
            cert = algorithms.nss_certificate(system, job.r_override, rng=rng)
        except NoCertificate as exc:
            report.update(answer="no_certificate", field=_field_info(parsed.ctx), reason=str(exc))
            return report
        ctx = cert.h[0].ctx
        report.update(
            answer="certificate",
            field=_field_info(ctx),
            bound=cert.bound,
            attempts=cert.attempts,
            h=[format_poly(h) for h in cert.h],
            f=[format_poly(f) for f in system.unsorted()],
            confidence_note=None,
        )
    elif job.command == "reduce":
        r = job.r_override
        if r is None:
            r = algorithms.trdeg_compute(system, rng, oracle=oracle).answer
        degs = [d for d in system.degs if d > 0] or [1]
        S = sample_set(system.ctx.p, required_sample_size("generator_reduction", m=len(degs), r=r, degs=degs), system.ctx.order, degree_multiple=system.ctx.k)
        reduced, C = generator_reduction(system, r, S, rng)
        report.update(
            answer=[format_poly(g) for g in reduced.polys],
            r=r,
            field=_field_info(S.ctx),
            combination=[list(row) for row in C.c],
            confidence_note="1/6",
        )
    elif job.command == "zerodim":
        dim = oracle.dimension(list(system.polys), system.ctx, system.n)
        report.update(answer=dim, field=_field_info(system.ctx), confidence_note="0")
    elif job.command == "threegen":
        g = _require_g(parsed, job.command)
        g2, t = algorithms.three_generator_transform(g, system)
        report.update(
            answer={"g": format_poly(g2), "t": [format_poly(f) for f in t.polys]},
            field=_field_info(system.ctx),
            confidence_note="0",
        )
    return report


def run(job: JobSpec) -> tuple[int, dict]:
    """Execute ``job``; returns ``(exit status, report)``."""
    start = time.perf_counter()
    try:
        parsed = parse_input(job.input_path)
        report = _execute(job, parsed)
        status = 0
    except (ParseError, BudgetExceeded, FieldError, NullkitError, OSError) as exc:
        report = {"command": job.command, "seed": job.seed, "trials": job.trials, "error": type(exc).__name__, "message": str(exc)}
        status = 2
    if job.timing:
        report["wall_time_s"] = round(time.perf_counter() - start, 6)
    return status, report


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True)
    lines = []
    for key in sorted(report):
        value = report[key]
        if isinstance(value, list) and value and isinstance(value[0], str):
            lines.append(f"{key}:")
            lines.extend(f"  {v}" for v in value)
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nullkit", description="Randomized Nullstellensatz tools over finite fields.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("input", help="input file ('field p=...' header, then f:/g:/inner:/outer: lines)")
    ap.add_argument("--seed", type=int, default=None, help="random seed (default: $NULLKIT_SEED or 0)")
    ap.add_argument("--trials", type=int, default=algorithms.DEFAULT_TRIALS)
    ap.add_argument("--r", type=int, default=None, help="transcendence degree bound (computed when omitted)")
    ap.add_argument("--format", choices=("json", "text"), default="json")
    ap.add_argument("--gb-budget", type=int, default=DEFAULT_BUDGET, help="max S-pair reductions per Groebner basis")
    ap.add_argument("--no-timing", action="store_true", help="omit wall time so reports are byte-identical")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    seed = args.seed
    if seed is None:
        env = os.environ.get("NULLKIT_SEED")
        try:
            seed = int(env) if env else 0
        except ValueError:
            ap.error(f"NULLKIT_SEED must be an integer, got {env!r}")
    if args.trials < 1:
        ap.error("--trials must be >= 1")
    job = JobSpec(args.command, args.input, seed, args.trials, args.r, args.format, args.gb_budget, not args.no_timing)
    status, report = run(job)
    print(render(report, job.output_format))
    return status


if __name__ == "__main__":
    sys.exit(main())
