"""``symprime`` command line.

Every command prints a human-readable report, or with ``--json`` a single
JSON line with the keys command, params, result, elapsed_ms and sieve_limit.

Exit codes: 0 success, 1 verification found counterexamples, 2 bad
arguments, 3 over the memory budget, 4 range or numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from pathlib import Path

from . import enumeration, heuristics
from .errors import InvalidArgumentError, NumericalError, RangeError, ResourceError, UnsupportedInputError
from .families import CLI_FAMILIES, TUPLE_FAMILIES, Family
from .primes import DEFAULT_MEM_BUDGET, build_sieve
from .symmetry import symmetric_partners
from .tables import PUBLISHED_CONSTANTS, PUBLISHED_TABLES, TABLE_XS

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_ARGUMENT = 2
EXIT_RESOURCE = 3
EXIT_RANGE = 4


@dataclass
class OutputRecord:
    command: str
    params: dict
    result: dict
    elapsed_ms: float = 0.0
    sieve_limit: int | None = None
    exit_code: int = field(default=EXIT_OK, repr=False)

    def to_json(self) -> str:
        return json.dumps(
            {
                "command": self.command,
                "params": self.params,
                "result": self.result,
                "elapsed_ms": self.elapsed_ms,
                "sieve_limit": self.sieve_limit,
            },
            sort_keys=False,
        )

    def to_text(self) -> str:
        head = " ".join(f"{k}={v}" for k, v in self.params.items() if v not in (None, False))
        lines = [f"{self.command} {head}".rstrip()]
        for key, value in self.result.items():
            if key == "rows":
                lines.extend(_render_rows(value))
            elif isinstance(value, list):
                lines.append(f"{key}: {len(value)}")
                lines.extend(f"  {_fmt(v)}" for v in value)
            else:
                lines.append(f"{key}: {_fmt(value)}")
        lines.append(f"sieve_limit: {self.sieve_limit}")
        lines.append(f"elapsed_ms: {self.elapsed_ms:.1f}")
        return "\n".join(lines)


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (list, tuple)):
        return " ".join(_fmt(x) for x in v)
    if isinstance(v, dict):
        return ", ".join(f"{k}={_fmt(x)}" for k, x in v.items())
    return str(v)


def _render_rows(rows: list[dict]) -> list[str]:
    if not rows:
        return []
    keys = list(rows[0])
    cells = [[_fmt(r[k]) for k in keys] for r in rows]
    widths = [max(len(k), *(len(c[i]) for c in cells)) for i, k in enumerate(keys)]
    out = ["  ".join(k.rjust(w) for k, w in zip(keys, widths))]
    out += ["  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in cells]
    return out


def parse_natural(text: str) -> int:
    """Accept 1000, 1_000, 1,000 and 1e8; reject anything that is not a whole number."""
    try:
        value = Decimal(text.replace("_", "").replace(",", ""))
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value.is_finite() or value != value.to_integral_value() or value < 1:
        raise argparse.ArgumentTypeError(f"not a positive integer: {text!r}")
    return int(value)


# -- commands -----------------------------------------------------------------------


def cmd_count(args) -> OutputRecord:
    family = CLI_FAMILIES[args.family]
    kw = dict(witnesses=args.witnesses, threads=args.threads, mem_budget=args.mem_budget)
    if family in TUPLE_FAMILIES:
        res = enumeration.count_family(family, args.limit, **kw)
        limit = 2 * args.limit + 1
    elif family is Family.SYMMETRIC_PRIMES:
        res = enumeration.count_symmetric_primes(args.limit, **kw)
        limit = 2 * args.limit
    else:
        res = enumeration.count_asymmetric_primes(args.limit, **kw)
        limit = 2 * args.limit
    result = {"family": res.family.value, "x": res.x, "count": res.count}
    if res.witnesses is not None:
        result["witnesses"] = res.to_dict()["witnesses"]
    return OutputRecord("count", {"family": args.family, "limit": args.limit, "witnesses": args.witnesses}, result, sieve_limit=limit)


def cmd_estimate(args) -> OutputRecord:
    res = heuristics.estimate_count(CLI_FAMILIES[args.family], args.limit, cutoff=args.cutoff, tolerance=args.tolerance)
    result = res.to_dict()
    return OutputRecord(
        "estimate",
        {"family": args.family, "limit": args.limit, "cutoff": args.cutoff, "tolerance": args.tolerance},
        result,
        sieve_limit=args.cutoff,
    )


def cmd_table(args) -> OutputRecord:
    family, published = PUBLISHED_TABLES[args.which]
    xs = [x for x in TABLE_XS if x <= args.max_x]
    if not xs:
        raise InvalidArgumentError(f"--max-x {args.max_x} is below the first row {TABLE_XS[0]}")
    limit = 2 * max(xs) + 1
    sieve = build_sieve(limit, threads=args.threads, mem_budget=args.mem_budget)
    rows = []
    for x in xs:
        actual = enumeration.count_family(family, x, sieve, threads=args.threads).count
        est = heuristics.estimate_count(family, x)
        pub_actual, pub_est = published[x]
        rows.append(
            {
                "x": x,
                "actual": actual,
                "published_actual": pub_actual,
                "delta_actual": actual - pub_actual,
                "estimate": est.rounded,
                "estimate_value": round(est.estimate, 3),
                "published_estimate": pub_est,
                "delta_estimate": est.rounded - pub_est,
            }
        )
    return OutputRecord(
        "table", {"which": args.which, "max_x": args.max_x}, {"family": family.value, "rows": rows}, sieve_limit=limit
    )


def cmd_verify(args) -> OutputRecord:
    report = enumeration.verify_scan(args.property, args.limit, threads=args.threads, mem_budget=args.mem_budget)
    rec = OutputRecord(
        "verify", {"property": args.property, "limit": args.limit}, report.to_dict(), sieve_limit=2 * args.limit + 7
    )
    rec.exit_code = EXIT_OK if report.passed else EXIT_VERIFY
    return rec


def cmd_neighbors(args) -> OutputRecord:
    p = args.p
    limit = max(2 * p - 1, 2)
    sieve = build_sieve(limit, threads=args.threads, mem_budget=args.mem_budget)
    if not sieve.lookup(p):
        raise InvalidArgumentError(f"{p} is not prime")
    partners = symmetric_partners(p, sieve)
    result = {
        "p": p,
        "asymmetric": not partners,
        "partner_count": len(partners),
        "partners": [[q, abs(q - p)] for q in partners],
    }
    return OutputRecord("neighbors", {"p": p}, result, sieve_limit=limit)


def cmd_constant(args) -> OutputRecord:
    name = args.name
    if name == "eta":
        result = {"name": name, "value": heuristics.eta_constant()}
        return OutputRecord("constant", {"name": name}, result)
    family = Family.EXTREME_HALF if name == "c3" else Family.EXTREME_QUADRUPLE
    ss = heuristics.singular_series(TUPLE_FAMILIES[family].system, args.cutoff, 5)
    published = PUBLISHED_CONSTANTS[name]
    result = {
        "name": name,
        "value": ss.value,
        "partial": ss.partial,
        "tail": ss.tail,
        "tail_bound": ss.tail_bound,
        "cutoff": ss.cutoff,
        "published": published,
        "relative_difference": ss.value / published - 1.0,
    }
    return OutputRecord("constant", {"name": name, "cutoff": args.cutoff}, result, sieve_limit=args.cutoff)


def cmd_graph(args) -> OutputRecord:
    graph = enumeration.build_symmetry_graph(args.limit, threads=args.threads, mem_budget=args.mem_budget)
    content = graph.to_csv() if args.format == "csv" else graph.to_text()
    result = {"vertices": len(graph.vertices), "edges": len(graph.edges), "format": args.format}
    if args.output:
        Path(args.output).write_bytes(content.encode("utf-8"))
        result["output"] = str(args.output)
    else:
        result["content"] = content
    return OutputRecord(
        "graph", {"limit": args.limit, "format": args.format, "output": args.output}, result, sieve_limit=2 * args.limit
    )


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON record instead of text")
    common.add_argument("--threads", type=int, default=None, help="worker threads (default: all cores)")
    common.add_argument(
        "--mem-budget", type=parse_natural, default=DEFAULT_MEM_BUDGET, help="sieve memory budget in bytes"
    )

    parser = argparse.ArgumentParser(prog="symprime", description="Symmetric and extremely symmetric primes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], help="exact count of a family up to a limit")
    p.add_argument("family", choices=list(CLI_FAMILIES))
    p.add_argument("--limit", type=parse_natural, required=True)
    p.add_argument("--witnesses", action="store_true", help="list what was counted")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("estimate", parents=[common], help="heuristic estimate for an extreme family")
    p.add_argument("family", choices=[n for n, f in CLI_FAMILIES.items() if f in TUPLE_FAMILIES])
    p.add_argument("--limit", type=parse_natural, required=True)
    p.add_argument("--cutoff", type=parse_natural, default=heuristics.DEFAULT_CUTOFF)
    p.add_argument("--tolerance", type=float, default=heuristics.DEFAULT_TOLERANCE)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("table", parents=[common], help="recompute a table of actual and estimated counts")
    p.add_argument("which", type=int, choices=[1, 2, 3])
    p.add_argument("--max-x", type=parse_natural, default=TABLE_XS[-1])
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", parents=[common], help="counterexample scan for a structural property")
    p.add_argument("property", choices=[s.value for s in enumeration.ScanProperty])
    p.add_argument("--limit", type=parse_natural, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("neighbors", parents=[common], help="symmetric partners of a prime")
    p.add_argument("p", type=parse_natural)
    p.set_defaults(func=cmd_neighbors)

    p = sub.add_parser("constant", parents=[common], help="print c3, c4 or eta")
    p.add_argument("name", choices=["c3", "c4", "eta"])
    p.add_argument("--cutoff", type=parse_natural, default=heuristics.DEFAULT_CUTOFF)
    p.set_defaults(func=cmd_constant)

    p = sub.add_parser("graph", parents=[common], help="export the symmetry graph")
    p.add_argument("--limit", type=parse_natural, required=True)
    p.add_argument("--format", choices=["csv", "text"], default="csv")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_graph)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    try:
        rec = args.func(args)
    except ResourceError as exc:
        print(f"symprime: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (InvalidArgumentError, UnsupportedInputError) as exc:
        print(f"symprime: {exc}", file=sys.stderr)
        return EXIT_ARGUMENT
    except (RangeError, NumericalError) as exc:
        print(f"symprime: {exc}", file=sys.stderr)
        return EXIT_RANGE
    rec.elapsed_ms = (time.perf_counter() - t0) * 1000.0
    if args.json:
        print(rec.to_json())
    elif rec.command == "graph" and "content" in rec.result:
        sys.stdout.write(rec.result["content"])
    else:
        print(rec.to_text())
    return rec.exit_code


if __name__ == "__main__":
    sys.exit(main())
