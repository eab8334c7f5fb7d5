"""Command line entry point: seeded batch experiments with CSV/JSON output.

Commands map onto the library modules: ``bounds`` renders width-bound
brackets over parameter grids, ``map`` applies the sparsifying threshold
map to a vector, ``certify`` runs one distortion certification, ``oracle``
evaluates the polytope maximum behind the key scalar inequality, and
``group`` drives the lattice harness (ratio table or embedding check).

Reproducibility rules: the seed defaults to 0x5EED so bare invocations are
deterministic, every echoed parameter lands in the output header, and the
worker count is deliberately not echoed because it cannot affect output
bytes. CSV uses '.' decimals and 17 significant digits so doubles
round-trip losslessly; ``--q inf`` (and ``--p inf`` where a sup-norm ball
makes sense) is the spelling for an infinite exponent.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from ._streams import DEFAULT_SEED
from .bounds import bracket, widim_equal_case
from .certify import (
    adversarial_certify,
    monte_carlo_certify,
    report_csv_header,
    report_to_csv_row,
    report_to_json,
)
from .certify import key_lemma_oracle_max
from .core import make_exponents
from .group_dynamics import (
    LatticeBox,
    embedding_check,
    embedding_csv_header,
    embedding_report_to_json,
    embedding_to_csv_row,
    geometric_weight_metric,
    mean_dimension_table,
    table_csv_header,
    table_to_csv_rows,
    table_to_json,
)
from .threshold_map import distortion, f_equivariant

__all__ = ["main"]


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _parse_seed(text: str) -> int:
    return int(text, 0)


def _parse_exponent(text: str) -> float:
    return math.inf if text.strip().lower() == "inf" else float(text)


def _parse_floats(text: str) -> list:
    return [float(v) for v in text.split(",") if v.strip()]


def _parse_ints(text: str) -> list:
    return [int(v) for v in text.split(",") if v.strip()]


def _exponent_str(q: float) -> str:
    return "inf" if math.isinf(q) else _fmt(q)


def _emit(args, text: str) -> None:
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)


def _comments(command: str, pairs) -> list:
    lines = [f"# widim {command}"]
    lines.extend(f"# {key}={value}" for key, value in pairs)
    return lines


# --------------------------------------------------------------------------
# bounds


def _run_bounds(args) -> int:
    p = args.p
    q = args.q
    if p < 1.0 or q < 1.0:
        raise ValueError(f"exponents must be at least 1, got p={p}, q={q}")
    rows = []
    for n in args.n:
        for eps in args.eps:
            if q > p:
                rep = bracket(n, eps, make_exponents(p, q))
                rows.append(
                    {
                        "n": n,
                        "epsilon": eps,
                        "p": p,
                        "q": q,
                        "r": rep.exponents.r,
                        "lower": rep.lower,
                        "upper": rep.upper,
                        "exact": rep.exact,
                        "status": "ok",
                    }
                )
            else:
                value = widim_equal_case(n, eps, p, q)
                covered = value is not None
                rows.append(
                    {
                        "n": n,
                        "epsilon": eps,
                        "p": p,
                        "q": q,
                        "r": None,
                        "lower": value,
                        "upper": value,
                        "exact": covered,
                        "status": "ok" if covered else "out_of_range",
                    }
                )
    if args.format == "json":
        doc = {
            "command": "bounds",
            "p": "inf" if math.isinf(p) else p,
            "q": _exponent_str_json(q),
            "seed": args.seed,
            "reports": rows,
        }
        _emit(args, json.dumps(doc) + "\n")
    else:
        lines = _comments(
            "bounds",
            [
                ("p", _exponent_str(p)),
                ("q", _exponent_str(q)),
                ("eps", ",".join(_fmt(v) for v in args.eps)),
                ("n", ",".join(str(v) for v in args.n)),
                ("seed", args.seed),
            ],
        )
        lines.append("n,epsilon,lower,upper,exact")
        for row in rows:
            if row["status"] == "ok":
                lines.append(
                    f"{row['n']},{_fmt(row['epsilon'])},{row['lower']},"
                    f"{row['upper']},{str(row['exact']).lower()}"
                )
            else:
                lines.append(
                    f"{row['n']},{_fmt(row['epsilon'])},out_of_range,out_of_range,false"
                )
        _emit(args, "\n".join(lines) + "\n")
    return 0


def _exponent_str_json(q: float):
    return "inf" if math.isinf(q) else q


# --------------------------------------------------------------------------
# map


def _run_map(args) -> int:
    if args.infile == "-":
        line = sys.stdin.readline()
    else:
        with open(args.infile) as fh:
            line = fh.readline()
    x = np.array([float(v) for v in line.split()], dtype=np.float64)
    if x.size == 0:
        raise ValueError("input vector is empty")
    y = f_equivariant(x, args.m)
    dist = None if args.q is None else float(distortion(x, args.m, args.q))
    if args.format == "json":
        doc = {
            "command": "map",
            "m": args.m,
            "q": None if args.q is None else _exponent_str_json(args.q),
            "input": [float(v) for v in x],
            "output": [float(v) for v in y],
            "nonzero_count": int(np.count_nonzero(y)),
            "distortion": dist,
        }
        _emit(args, json.dumps(doc) + "\n")
    else:
        pairs = [("m", args.m)]
        if args.q is not None:
            pairs.append(("q", _exponent_str(args.q)))
            pairs.append(("distortion", _fmt(dist)))
        lines = _comments("map", pairs)
        lines.append(",".join(_fmt(v) for v in y))
        _emit(args, "\n".join(lines) + "\n")
    return 0


# --------------------------------------------------------------------------
# certify


def _run_certify(args) -> int:
    e = make_exponents(args.p, args.q)
    if args.method == "mc":
        report = monte_carlo_certify(
            args.n, args.m, e, args.samples, seed=args.seed, workers=args.workers
        )
        budget = ("samples", args.samples)
    else:
        report = adversarial_certify(
            args.n, args.m, e, args.restarts, seed=args.seed, workers=args.workers
        )
        budget = ("restarts", args.restarts)
    if args.format == "json":
        _emit(args, report_to_json(report) + "\n")
    else:
        lines = _comments(
            "certify",
            [
                ("method", args.method),
                ("n", args.n),
                ("m", args.m),
                ("p", _exponent_str(args.p)),
                ("q", _exponent_str(args.q)),
                budget,
                ("seed", args.seed),
            ],
        )
        lines.append(report_csv_header())
        lines.append(report_to_csv_row(report))
        _emit(args, "\n".join(lines) + "\n")
    return 0 if report.passed else 1


# --------------------------------------------------------------------------
# oracle


def _run_oracle(args) -> int:
    rows = []
    all_passed = True
    for s in args.s:
        for c in args.c:
            for t in args.t:
                for n in args.n:
                    observed = key_lemma_oracle_max(
                        s, c, t, n, samples=args.samples, seed=args.seed
                    )
                    bound = c * t ** (s - 1.0)
                    passed = observed <= bound + 1e-12 * max(1.0, abs(bound))
                    all_passed &= passed
                    rows.append(
                        {
                            "s": s,
                            "c": c,
                            "t": t,
                            "n": n,
                            "observed_max": observed,
                            "bound": bound,
                            "passed": passed,
                        }
                    )
    if args.format == "json":
        doc = {
            "command": "oracle",
            "samples": args.samples,
            "seed": args.seed,
            "rows": rows,
        }
        _emit(args, json.dumps(doc) + "\n")
    else:
        lines = _comments(
            "oracle",
            [
                ("s", ",".join(_fmt(v) for v in args.s)),
                ("c", ",".join(_fmt(v) for v in args.c)),
                ("t", ",".join(_fmt(v) for v in args.t)),
                ("n", ",".join(str(v) for v in args.n)),
                ("samples", args.samples),
                ("seed", args.seed),
            ],
        )
        lines.append("s,c,t,n,observed_max,bound,passed")
        for row in rows:
            lines.append(
                f"{_fmt(row['s'])},{_fmt(row['c'])},{_fmt(row['t'])},{row['n']},"
                f"{_fmt(row['observed_max'])},{_fmt(row['bound'])},"
                f"{str(row['passed']).lower()}"
            )
        _emit(args, "\n".join(lines) + "\n")
    return 0 if all_passed else 1


# --------------------------------------------------------------------------
# group


def _run_group(args) -> int:
    metric = geometric_weight_metric(
        dim_d=args.dim, base=args.weight_base, total=args.weight_total
    )
    if args.task == "table":
        table = mean_dimension_table(metric, args.p, args.eps, args.n)
        if args.format == "json":
            _emit(args, table_to_json(table) + "\n")
        else:
            lines = _comments(
                "group",
                [
                    ("task", "table"),
                    ("dim", args.dim),
                    ("p", _exponent_str(args.p)),
                    ("eps", _fmt(args.eps)),
                    ("weight", metric.description),
                    ("n", ",".join(str(v) for v in args.n)),
                    ("seed", args.seed),
                ],
            )
            lines.append(table_csv_header())
            lines.extend(table_to_csv_rows(table))
            _emit(args, "\n".join(lines) + "\n")
        return 0
    # embedding check over the box [-radius, radius]^d
    if len(args.n) != 1:
        raise ValueError("the embed task takes exactly one probe-box radius in --n")
    omega = LatticeBox((0,) * args.dim, args.n[0])
    report = embedding_check(
        metric,
        omega,
        args.p,
        args.eps,
        args.samples,
        seed=args.seed,
        workers=args.workers,
    )
    if args.format == "json":
        _emit(args, embedding_report_to_json(report) + "\n")
    else:
        lines = _comments(
            "group",
            [
                ("task", "embed"),
                ("dim", args.dim),
                ("p", _exponent_str(args.p)),
                ("eps", _fmt(args.eps)),
                ("weight", metric.description),
                ("n", args.n[0]),
                ("samples", args.samples),
                ("seed", args.seed),
            ],
        )
        lines.append(embedding_csv_header())
        lines.append(embedding_to_csv_row(report))
        _emit(args, "\n".join(lines) + "\n")
    return 0 if report.passed else 1


# --------------------------------------------------------------------------
# parser


def _add_common(sub, *, workers=False):
    sub.add_argument("--seed", type=_parse_seed, default=DEFAULT_SEED,
                     help="64-bit seed; default 0x5EED")
    if workers:
        sub.add_argument("--workers", type=int, default=1,
                         help="worker threads; never affects output bytes")
    sub.add_argument("--format", choices=("csv", "json"), default="csv",
                     help="output format (default csv)")
    sub.add_argument("--out", default="-", help="output path, '-' for stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="widim",
        description="Sparsification maps, width bounds, and their certification.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    b = subs.add_parser("bounds", help="width-bound brackets over an (n, eps) grid")
    b.add_argument("--p", type=_parse_exponent, required=True)
    b.add_argument("--q", type=_parse_exponent, required=True)
    b.add_argument("--eps", type=_parse_floats, required=True,
                   help="comma-separated scales")
    b.add_argument("--n", type=_parse_ints, required=True,
                   help="comma-separated dimensions")
    _add_common(b)
    b.set_defaults(func=_run_bounds)

    m = subs.add_parser("map", help="apply the sparsifying threshold map to a vector")
    m.add_argument("--m", type=int, required=True, help="coordinates to keep")
    m.add_argument("--q", type=_parse_exponent, default=None,
                   help="also report the q-distance moved")
    m.add_argument("--in", dest="infile", default="-",
                   help="one-line whitespace-separated vector file, '-' for stdin")
    _add_common(m)
    m.set_defaults(func=_run_map)

    c = subs.add_parser("certify", help="certify the distortion bound")
    c.add_argument("--p", type=_parse_exponent, required=True)
    c.add_argument("--q", type=_parse_exponent, required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--m", type=int, required=True)
    c.add_argument("--method", choices=("mc", "adversarial"), default="mc")
    c.add_argument("--samples", type=int, default=100_000,
                   help="Monte Carlo sample count")
    c.add_argument("--restarts", type=int, default=32,
                   help="hill-climb restarts (adversarial method)")
    _add_common(c, workers=True)
    c.set_defaults(func=_run_certify)

    o = subs.add_parser("oracle", help="polytope maximum behind the key inequality")
    o.add_argument("--s", type=_parse_floats, required=True)
    o.add_argument("--c", type=_parse_floats, required=True)
    o.add_argument("--t", type=_parse_floats, required=True)
    o.add_argument("--n", type=_parse_ints, required=True)
    o.add_argument("--samples", type=int, default=4096)
    _add_common(o)
    o.set_defaults(func=_run_oracle)

    g = subs.add_parser("group", help="lattice harness: ratio table or embedding check")
    g.add_argument("--task", choices=("table", "embed"), default="table")
    g.add_argument("--dim", type=int, default=1, help="lattice dimension d")
    g.add_argument("--p", type=_parse_exponent, default=1.0)
    g.add_argument("--eps", type=float, default=0.5)
    g.add_argument("--n", type=_parse_ints, default=[1, 2, 3, 4, 5, 6, 7],
                   help="box radii (table) or one probe radius (embed)")
    g.add_argument("--samples", type=int, default=10_000)
    g.add_argument("--weight-base", type=float, default=2.0,
                   help="per-axis geometric decay base of the weight")
    g.add_argument("--weight-total", type=float, default=0.75,
                   help="closed-form total mass of the weight")
    _add_common(g, workers=True)
    g.set_defaults(func=_run_group)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
