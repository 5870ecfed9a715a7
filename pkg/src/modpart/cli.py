"""Command line interface: ``map``, ``enumerate``, ``verify`` and ``table``.

Exit codes: 0 success (all checks pass), 1 usage error, 2 input outside the
required family, 3 at least one verification failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .bijection import NotInP, NotRegular, p_to_q_traced, q_to_p_traced
from .core import PartitionError, alt_sum_type, length_type, make_partition
from .enumeration import BadFamilyParams, BoundExceeded, Family, filtered_partitions, type_of
from . import verification as V

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_FAIL = 0, 1, 2, 3
TABLE_MAX_N = 60


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RenderedDiagram:
    """Rows of ``(residue, number of m-cells)``; residue 0 means no residue cell."""

    m: int
    rows: tuple[tuple[int, int], ...]

    @property
    def text(self) -> str:
        width = len(str(self.m))
        lines = []
        for residue, count in self.rows:
            cells = ([str(residue)] if residue else []) + [str(self.m)] * count
            lines.append(" ".join(c.rjust(width) for c in cells))
        return "\n".join(lines)

    def __str__(self) -> str:
        return self.text


def render_modular_diagram(lam: Sequence[int], m: int) -> RenderedDiagram:
    return RenderedDiagram(m, tuple((p % m, p // m) for p in lam))


def fmt_partition(lam: Sequence[int], sep: str = "+") -> str:
    return sep.join(map(str, lam)) if lam else "(empty)"


def fmt_type(t: Sequence[int]) -> str:
    return "(" + ",".join(map(str, t)) + ")"


def parse_range(text: str) -> list[int]:
    """``"5"``, ``"1..25"`` or comma-separated mixtures of both."""
    out: list[int] = []
    try:
        for chunk in text.split(","):
            if ".." in chunk:
                lo, hi = chunk.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(chunk))
    except ValueError:
        raise UsageError(f"bad range {text!r}") from None
    if not out:
        raise UsageError(f"empty range {text!r}")
    return out


def _guard(default: int) -> int:
    raw = os.environ.get("PARTITION_MAX_N")
    return int(raw) if raw else default


# -- map ---------------------------------------------------------------------


def cmd_map(args) -> int:
    try:
        lam = make_partition(args.parts)
    except PartitionError as exc:
        raise UsageError(str(exc)) from None
    m = args.m
    try:
        if args.direction == "p-to-q":
            image, trace = p_to_q_traced(lam, m)
            t = length_type(image, m)
        else:
            image, trace = q_to_p_traced(lam, m)
            t = alt_sum_type(image, m)
    except NotInP as exc:
        print(f"not in P: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except NotRegular:
        bad = next(p for p in lam if p % m == 0)
        print(f"not {m}-regular: part {bad} divisible by {m}", file=sys.stderr)
        return EXIT_DOMAIN

    if args.format == "json":
        doc = {
            "m": m,
            "direction": args.direction,
            "input": list(lam),
            "output": list(image),
            "type": list(t),
        }
        if args.trace:
            doc["trace"] = trace.to_dict()
        if args.diagram:
            doc["diagrams"] = {
                "flat": render_modular_diagram(trace.flat, m).text,
                "core": render_modular_diagram(trace.core, m).text,
                "regular": render_modular_diagram(trace.regular, m).text,
            }
        print(json.dumps(doc, sort_keys=True))
        return EXIT_OK

    print(f"{fmt_partition(image, ' ')}  type={fmt_type(t)}")
    if args.trace:
        print(_trace_text(trace))
    if args.diagram:
        for label, part in (("flat", trace.flat), ("core", trace.core), ("regular", trace.regular)):
            print(f"{label} {fmt_partition(part, ' ')}:")
            print(render_modular_diagram(part, m).text or "(empty)")
    return EXIT_OK


def _trace_text(trace) -> str:
    lines = [f"flat: {fmt_partition(trace.flat, ' ')}"]
    for r in trace.step1_removals:
        lines.append(f"step1: remove {r.value} at position {r.position}")
    for r in trace.step2_removals:
        lines.append(
            f"step2: remove {r.value} at position {r.position}, sigma part {r.sigma_part}"
        )
    lines.append(f"core: {fmt_partition(trace.core, ' ')}")
    lines.append(f"sigma: {fmt_partition(trace.sigma.reduced_parts, ' ')}")
    lines.append(f"sigma': {fmt_partition(trace.sigma.conjugate, ' ')}")
    lines.append(f"regular: {fmt_partition(trace.regular, ' ')}")
    return "\n".join(lines)


# -- enumerate ---------------------------------------------------------------


def _family_from_args(args) -> Family:
    kind = args.family.upper()
    return Family(kind, m=args.m, d=args.d, i=args.i)


def cmd_enumerate(args) -> int:
    family = _family_from_args(args)
    if args.with_types and family.kind not in ("P", "Q"):
        raise UsageError("--with-types needs family P or Q")
    rows = []
    for lam in filtered_partitions(args.n, family):
        t = type_of(lam, family.m, family.kind) if args.with_types else None
        rows.append((lam, t))

    if args.format == "json":
        doc = [
            {"partition": list(lam), **({"type": list(t)} if t is not None else {})}
            for lam, t in rows
        ]
        print(json.dumps(doc))
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["partition", "type"] if args.with_types else ["partition"])
        for lam, t in rows:
            row = [" ".join(map(str, lam))]
            if t is not None:
                row.append(" ".join(map(str, t)))
            writer.writerow(row)
        sys.stdout.write(buf.getvalue())
    else:
        for lam, t in rows:
            print(fmt_partition(lam) + (f"  {fmt_type(t)}" if t is not None else ""))
    return EXIT_OK


# -- verify ------------------------------------------------------------------


def _verify_jobs(args) -> list[tuple]:
    ns = parse_range(args.n)
    claim = args.claim
    if claim == "roundtrip":
        return [(V.verify_roundtrip, max(ns), tuple(parse_range(args.m or "2..7")))]
    if claim in ("main", "glaisher"):
        fn = V.verify_main_theorem if claim == "main" else V.verify_glaisher
        ms = parse_range(args.m or "2..7")
        return [(fn, n, m) for n in ns for m in ms]
    if claim in ("rr1", "rr2"):
        return [(V.verify_rr_companion, n, int(claim[-1])) for n in ns]
    ds = parse_range(args.d or "1..3")
    jobs = []
    for n in ns:
        for d in ds:
            for i in parse_range(args.i) if args.i else range(1, 2 * d + 1):
                jobs.append((V.verify_ag_companion, n, d, i))
    return jobs


def _run_job(job):
    fn, *params = job
    return fn(*params)


def _report_text(rep: V.VerificationReport) -> str:
    params = " ".join(f"{k}={_fmt_param(v)}" for k, v in rep.params.items())
    counts = " ".join(f"{k}={v}" for k, v in rep.counts.items())
    line = f"{rep.status.upper()} {rep.claim} {params} {counts}"
    if rep.conjectural:
        line += " [CONJECTURAL]"
    if rep.counterexample:
        line += f" counterexample={json.dumps(rep.counterexample, sort_keys=True)}"
    return line


def _fmt_param(v):
    if isinstance(v, list):
        return ",".join(map(str, v))
    return str(v)


def cmd_verify(args) -> int:
    jobs = _verify_jobs(args)
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = pool.map(_run_job, jobs)
    else:
        reports = map(_run_job, jobs)
    all_pass = True
    for rep in reports:
        all_pass &= rep.passed
        print(rep.to_json() if args.format == "json" else _report_text(rep), flush=True)
    return EXIT_OK if all_pass else EXIT_FAIL


# -- table -------------------------------------------------------------------


def table_rows(n: int, m: int, include_pure: bool = False) -> list[dict]:
    """Rows pairing P and Q members that share a type vector.

    Mixed types (two or more nonzero entries) come first, ordered by
    decreasing count and then type; pure types follow when requested.
    Every type is pure for ``m = 2``, so those are always shown.
    """
    groups: dict[tuple, dict[str, list]] = defaultdict(lambda: {"P": [], "Q": []})
    for side in ("P", "Q"):
        for lam in filtered_partitions(n, Family(side, m=m)):
            groups[type_of(lam, m, side)][side].append(lam)
    include_pure = include_pure or m == 2

    def order(t):
        return (-len(groups[t]["P"]), t)

    mixed = sorted((t for t in groups if sum(1 for x in t if x) >= 2), key=order)
    pure = sorted((t for t in groups if sum(1 for x in t if x) == 1), key=order)
    chosen = mixed + (pure if include_pure else [])
    return [
        {
            "type": t,
            "P": groups[t]["P"],
            "Q": groups[t]["Q"],
            "count": len(groups[t]["P"]),
            "mixed": t in mixed,
        }
        for t in chosen
    ]


def cmd_table(args) -> int:
    limit = _guard(TABLE_MAX_N)
    if args.n > limit:
        raise UsageError(f"n={args.n} exceeds the table guard {limit}")
    rows = table_rows(args.n, args.m, include_pure=args.all)
    if args.format == "json":
        doc = {
            "n": args.n,
            "m": args.m,
            "rows": [
                {
                    "type": list(r["type"]),
                    "count": r["count"],
                    "mixed": r["mixed"],
                    "P": [list(p) for p in r["P"]],
                    "Q": [list(q) for q in r["Q"]],
                }
                for r in rows
            ],
        }
        print(json.dumps(doc))
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["type", "count", "P", "Q"])
        for r in rows:
            writer.writerow([
                " ".join(map(str, r["type"])),
                r["count"],
                "; ".join(fmt_partition(p) for p in r["P"]),
                "; ".join(fmt_partition(q) for q in r["Q"]),
            ])
        sys.stdout.write(buf.getvalue())
    else:
        for r in rows:
            p = ", ".join(fmt_partition(x) for x in r["P"])
            q = ", ".join(fmt_partition(x) for x in r["Q"])
            print(f"{fmt_type(r['type'])}: P={{{p}}} Q={{{q}}} ♯={r['count']}")
    return EXIT_OK


# -- entry point -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="modpart", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("map", help="map one partition through the bijection")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--direction", choices=["p-to-q", "q-to-p"], default="p-to-q")
    p.add_argument("--trace", action="store_true")
    p.add_argument("--diagram", action="store_true")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("parts", nargs="*", type=int)
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("enumerate", help="list a family of partitions of n")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--family", required=True, type=str.upper,
                   choices=["P", "Q", "RR1", "RR2", "AG"])
    p.add_argument("-m", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--i", type=int)
    p.add_argument("--with-types", action="store_true")
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="run identity checks over parameter ranges")
    p.add_argument("claim", choices=["main", "glaisher", "rr1", "rr2", "ag", "roundtrip"])
    p.add_argument("--n", required=True, help="weight range, e.g. 1..25")
    p.add_argument("--m", help="modulus range (default 2..7)")
    p.add_argument("--d", help="AG parameter d range (default 1..3)")
    p.add_argument("--i", help="AG parameter i range (default all valid)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", help="side-by-side P and Q members per type")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--all", action="store_true", help="include pure types")
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")
    p.set_defaults(func=cmd_table)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if isinstance(getattr(args, "m", None), int) and args.m < 2:
            raise UsageError("modulus must be at least 2")
        return args.func(args)
    except (UsageError, BadFamilyParams, BoundExceeded) as exc:
        print(f"modpart: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
