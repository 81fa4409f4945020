"""Command line front end.

    trichord table --fn distance_pdf --a 1 --b 5 --normalize-c --grid 0,1,20
    trichord verify mc --seed 42 --n 10000000

Exit codes: 0 success, 1 a verification check failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import chord, distance, rectangle, suites
from .geometry import RectangleBox, RightTriangle
from .piecewise import Branch, locate

FUNCTIONS = ("chord_cdf", "chord_pdf", "distance_pdf", "distance_cdf",
             "rect_pdf", "rect_cdf", "cross_pdf", "cross_cdf")
DENSITIES = {"chord_pdf", "distance_pdf", "rect_pdf", "cross_pdf"}
SEED_ENV = "TRICHORD_SEED"
DEFAULT_SEED = 20240101


class UsageError(ValueError):
    pass


@dataclass
class TableSpec:
    function: str
    a: float
    b: float
    grid: Optional[tuple] = None         # (t_min, t_max, n_points)
    points: Optional[list] = None
    normalize_c: bool = False
    format: str = "csv"

    def validate(self) -> None:
        if self.function not in FUNCTIONS:
            raise UsageError(f"unknown function {self.function!r}")
        if not (self.a > 0 and self.b > 0 and np.isfinite(self.a) and np.isfinite(self.b)):
            raise UsageError("a and b must be positive finite lengths")
        if self.format not in ("csv", "json"):
            raise UsageError(f"unknown format {self.format!r}")
        if self.grid is not None:
            lo, hi, n = self.grid
            if n < 2 or not lo < hi:
                raise UsageError("grid needs t_min < t_max and at least 2 points")
        if self.points is not None and not self.points:
            raise UsageError("empty point list")

    def abscissae(self, c: float) -> np.ndarray:
        """Output abscissae (in units of c when normalizing)."""
        if self.points is not None:
            return np.asarray(self.points, dtype=float)
        if self.grid is not None:
            lo, hi, n = self.grid
            return np.linspace(lo, hi, int(n))
        return np.linspace(0.0, 1.0 if self.normalize_c else c, 20)


def evaluate(function: str, tri: RightTriangle, t: np.ndarray):
    """Values and branch names of ``function`` on ``t``."""
    rect = RectangleBox.from_triangle(tri)
    if function == "chord_cdf":
        v, br = chord.chord_cdf_values(tri, t)
    elif function == "chord_pdf":
        v, br = chord.chord_pdf_values(tri, t)
    elif function == "distance_pdf":
        v, br, _ = distance.distance_pdf_values(tri, t)
    elif function == "distance_cdf":
        v, br = distance.distance_cdf_values(tri, t)
    elif function == "rect_pdf":
        v, br = rectangle.rect_distance_pdf_values(rect, t)
    elif function == "rect_cdf":
        v, br = rectangle.rect_distance_cdf_values(rect, t)
    elif function == "cross_pdf":
        v, _ = rectangle.cross_pdf_values(tri, t)
        br = locate(t, tri.breakpoints)
    else:
        v = rectangle.cross_cdf_values(tri, t)
        br = locate(t, tri.breakpoints)
    return np.asarray(v, dtype=float), [Branch(int(x)).name for x in np.atleast_1d(br)]


def build_table(spec: TableSpec) -> dict:
    spec.validate()
    tri = RightTriangle(spec.a, spec.b)
    x = spec.abscissae(tri.c)
    t = x * tri.c if spec.normalize_c else x
    values, branches = evaluate(spec.function, tri, t)
    if spec.normalize_c and spec.function in DENSITIES:
        values = values * tri.c
    meta = {"function": spec.function, "a": tri.a, "b": tri.b, "c": tri.c, "h": tri.h,
            "alpha": tri.alpha, "normalize_c": spec.normalize_c}
    return {"meta": meta, "t": [float(v) for v in x], "value": [float(v) for v in values],
            "branch": branches}


def format_table(table: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(table) + "\n"
    meta = ",".join(f"{k}={v!r}" if isinstance(v, float) else f"{k}={str(v).lower()}"
                    for k, v in table["meta"].items())
    lines = [f"# {meta}", "t,value,branch"]
    lines += [f"{t!r},{v!r},{br}" for t, v, br in zip(table["t"], table["value"], table["branch"])]
    return "\n".join(lines) + "\n"


def parse_grid(text: str) -> tuple:
    try:
        lo, hi, n = text.split(",")
        return float(lo), float(hi), int(n)
    except ValueError:
        raise argparse.ArgumentTypeError("grid must be T_MIN,T_MAX,N_POINTS") from None


def parse_points(text: str) -> list:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("points must be comma separated numbers") from None


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    return int(raw) if raw else DEFAULT_SEED


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="trichord", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    tab = sub.add_parser("table", help="evaluate a distribution function on a grid")
    tab.add_argument("--fn", required=True, choices=FUNCTIONS)
    tab.add_argument("--a", type=float, required=True)
    tab.add_argument("--b", type=float, required=True)
    where = tab.add_mutually_exclusive_group()
    where.add_argument("--grid", type=parse_grid, help="T_MIN,T_MAX,N_POINTS")
    where.add_argument("--points", type=parse_points, help="explicit comma separated abscissae")
    tab.add_argument("--normalize-c", action="store_true",
                     help="abscissae in units of c; densities multiplied by c")
    tab.add_argument("--format", choices=("csv", "json"), default="csv")

    ver = sub.add_parser("verify", help="run verification suites")
    ver.add_argument("suite", nargs="?", choices=("all",) + suites.SUITES)
    ver.add_argument("--suite", dest="suite_opt", choices=("all",) + suites.SUITES)
    ver.add_argument("--a", type=float, default=1.0)
    ver.add_argument("--b", type=float, default=1.0)
    ver.add_argument("--seed", type=int, default=None)
    ver.add_argument("--n", type=int, default=1_000_000)
    ver.add_argument("--workers", type=int, default=1)
    return parser


def cmd_table(args, out) -> int:
    spec = TableSpec(args.fn, args.a, args.b, grid=args.grid, points=args.points,
                     normalize_c=args.normalize_c, format=args.format)
    try:
        table = build_table(spec)
    except ValueError as exc:
        print(f"trichord: error: {exc}", file=sys.stderr)
        return 2
    out.write(format_table(table, spec.format))
    return 0


def cmd_verify(args, out) -> int:
    suite = args.suite_opt or args.suite or "all"
    seed = default_seed() if args.seed is None else args.seed
    if args.n < 1:
        print("trichord: error: --n must be >= 1", file=sys.stderr)
        return 2
    try:
        tri = RightTriangle(args.a, args.b)
    except ValueError as exc:
        print(f"trichord: error: {exc}", file=sys.stderr)
        return 2
    ok = True
    for report in suites.run(suite, tri, seed, args.n, args.workers):
        out.write(report.line() + "\n")
        out.flush()
        ok &= report.passed
    return 0 if ok else 1


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = make_parser().parse_args(argv)
    if args.command == "table":
        return cmd_table(args, out)
    return cmd_verify(args, out)


if __name__ == "__main__":
    sys.exit(main())
