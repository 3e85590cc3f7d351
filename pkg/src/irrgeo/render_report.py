"""Reports, SVG rendering, and the command-line front end.

JSON reports and SVG files are byte-deterministic: the same inputs always
produce identical output, so artifacts can be diffed.  Exact values stay
exact in reports (rationals as "p/q" strings); floating point appears only
in SVG coordinates, where it is formatting, not arithmetic.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .descent import (
    BadIndex,
    BadParity,
    ChainResult,
    DescentFamily,
    DescentStep,
    RangeCheckResult,
    descent_chain,
    descent_step,
    range_check,
)
from .exact_arith import Surd
from .geometry import (
    Arrangement,
    CoverageCensus,
    FigureReport,
    MismatchReport,
    ORTHOGONAL,
    OutOfWindow,
    build_arrangement,
    census_to_descent,
    coverage_census,
    verify_figure,
    window_inequalities,
)
from .number_theory import SquareRadicand, convergents, square_density, square_triangular

SCHEMA_VERSION = "1"


def frac_str(x: Fraction | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def surd_str(x: Surd) -> str:
    if x.coef == 0:
        return frac_str(x.rat)
    return f"{frac_str(x.rat)} + {frac_str(x.coef)}*sqrt({x.radicand})"


def report_envelope(runs: list[dict]) -> dict:
    return {"version": SCHEMA_VERSION, "runs": runs}


def _window_block(family: DescentFamily, a: int, b: int) -> dict:
    ineqs = window_inequalities(family, a, b)
    violated = [w.name for w in ineqs if not w.ok]
    return {
        "pass": not violated,
        "inequalities": [{"name": w.name, "ok": w.ok} for w in ineqs],
        "violated": violated[0] if violated else None,
    }


def _step_block(step: DescentStep) -> dict:
    return {
        "output_pair": list(step.pair_out),
        "defect_in": step.defect_in,
        "defect_out": step.defect_out,
        "multiplier": frac_str(step.multiplier),
    }


def _census_block(census: CoverageCensus) -> dict:
    return {
        "big_area": frac_str(census.big_area),
        "total_small_area": frac_str(census.total_small_area),
        "union_area": frac_str(census.union_area),
        "blank_area": frac_str(census.blank_area),
        "excess_area": frac_str(census.excess_area),
        "exactly2_area": frac_str(census.exactly2_area),
        "exactly3_area": frac_str(census.exactly3_area),
        "pair_region_count": len(census.distinct_pair_regions),
        "doubly_region_count": len(census.doubly_covered_regions),
        "triple_region_count": len(census.distinct_triple_regions),
        "max_depth": census.max_depth,
    }


def _checks_block(report: FigureReport) -> list[dict]:
    return [
        {"name": c.name, "lhs": c.lhs, "rhs": c.rhs, "pass": c.passed}
        for c in report.checks
    ]


def build_verify_run(family: DescentFamily, a: int, b: int) -> dict:
    """Full verification of one pair: window, figure census, identities,
    and the geometric/algebraic descent cross-check."""
    run: dict = {
        "mode": "verify",
        "family": family.label,
        "n": family.n,
        "radicand": family.radicand,
        "input_pair": [a, b],
        "window": _window_block(family, a, b),
    }
    if not run["window"]["pass"]:
        run["pass"] = False
        return run
    arr = build_arrangement(family, a, b)
    census = coverage_census(arr)
    try:
        fig = verify_figure(arr, census)
        fig_pass = True
    except MismatchReport as exc:
        fig = exc.report
        fig_pass = False
    step = descent_step(family, a, b)
    checks = _checks_block(fig)
    try:
        measured = census_to_descent(arr, census)
        measured_str = str(list(measured))
    except ValueError as exc:
        measured = None
        measured_str = f"error: {exc}"
    cross_ok = measured == step.pair_out
    checks.append(
        {
            "name": "census_pair_matches_descent",
            "lhs": measured_str,
            "rhs": str(list(step.pair_out)),
            "pass": cross_ok,
        }
    )
    run["descent"] = _step_block(step)
    run["census"] = _census_block(census)
    run["identity_checks"] = checks
    run["census_pair"] = list(measured) if measured is not None else None
    run["pass"] = fig_pass and cross_ok
    return run


def build_census_run(family: DescentFamily, a: int, b: int) -> dict:
    run: dict = {
        "mode": "census",
        "family": family.label,
        "n": family.n,
        "radicand": family.radicand,
        "input_pair": [a, b],
        "window": _window_block(family, a, b),
    }
    if not run["window"]["pass"]:
        run["pass"] = False
        return run
    arr = build_arrangement(family, a, b)
    census = coverage_census(arr)
    run["census"] = _census_block(census)
    run["pass"] = True
    return run


def build_chain_run(family: DescentFamily, a: int, b: int, max_steps: int) -> dict:
    chain = descent_chain(family, a, b, max_steps)
    return {
        "mode": "chain",
        "family": family.label,
        "n": family.n,
        "radicand": family.radicand,
        "input_pair": [a, b],
        "steps": [
            {
                "pair_in": list(s.pair_in),
                "pair_out": list(s.pair_out),
                "defect_in": s.defect_in,
                "defect_out": s.defect_out,
            }
            for s in chain.steps
        ],
        "stop_reason": chain.stop_reason,
        "final_pair": list(chain.final_pair),
        "pass": True,
    }


def build_range_run(result: RangeCheckResult) -> dict:
    return {
        "mode": "range",
        "family": result.family.label,
        "n": result.family.n,
        "radicand": result.family.radicand,
        "works": result.works,
        "witnesses": [
            {
                "name": w.name,
                "value": surd_str(w.value),
                "require": w.require,
                "sign": w.sign,
                "ok": w.ok,
            }
            for w in result.witnesses
        ],
    }


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


# SVG rendering: fixed projection, fixed color per coverage depth, fixed
# 6-decimal formatting; sqrt(3)/2 appears only here, as a float.
SQRT3_HALF = 0.8660254
DEPTH_FILL = {0: "white", 1: "lightblue", 2: "orange", 3: "red"}


@dataclass(frozen=True)
class ScenePolygon:
    points: tuple[tuple[float, float], ...]
    depth: int


@dataclass(frozen=True)
class SvgScene:
    viewbox: tuple[float, float, float, float]
    stroke_width: float
    polygons: tuple[ScenePolygon, ...]


def scene_from_arrangement(arr: Arrangement, census: CoverageCensus) -> SvgScene:
    """Layer the figure back-to-front: big, smalls, double then triple
    overlaps, each at its coverage depth color."""

    def cart(p) -> tuple[float, float]:
        u, v = float(p.u), float(p.v)
        if arr.big.basis == ORTHOGONAL:
            return (u, -v)
        return (u + v / 2, -v * SQRT3_HALF)

    polys = [ScenePolygon(tuple(cart(p) for p in arr.big.vertices), 0)]
    for s in arr.smalls:
        polys.append(ScenePolygon(tuple(cart(p) for p in s.vertices), 1))
    for r in census.distinct_pair_regions:
        polys.append(ScenePolygon(tuple(cart(p) for p in r.vertices), 2))
    for r in census.distinct_triple_regions:
        polys.append(ScenePolygon(tuple(cart(p) for p in r.vertices), 3))
    xs = [x for poly in polys for x, _ in poly.points]
    ys = [y for poly in polys for _, y in poly.points]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    span = max(x1 - x0, y1 - y0) or 1.0
    margin = 0.04 * span
    viewbox = (x0 - margin, y0 - margin, (x1 - x0) + 2 * margin, (y1 - y0) + 2 * margin)
    return SvgScene(viewbox=viewbox, stroke_width=0.008 * span, polygons=tuple(polys))


def render_svg(scene: SvgScene) -> str:
    lines = [
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1"'
        ' viewBox="%.6f %.6f %.6f %.6f">' % scene.viewbox,
        '<g stroke="#333333" stroke-width="%.6f" stroke-linejoin="round">' % scene.stroke_width,
    ]
    for poly in scene.polygons:
        pts = " ".join("%.6f,%.6f" % xy for xy in poly.points)
        lines.append('<polygon fill="%s" points="%s"/>' % (DEPTH_FILL[poly.depth], pts))
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def emit_svg(scene: SvgScene, path: str) -> None:
    """Write the scene as a deterministic SVG 1.1 file."""
    with open(path, "w") as fh:
        fh.write(render_svg(scene))


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _add_family_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--family", required=True, choices=["sqrt2", "hex6", "triangular"])
    sub.add_argument("--n", type=int, default=None, help="row count (triangular only)")


def _add_pair_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--a", type=int, default=None)
    sub.add_argument("--b", type=int, default=None)
    sub.add_argument(
        "--convergent",
        type=int,
        default=None,
        metavar="K",
        help="use the K-th continued-fraction convergent of the target root, K >= 1",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="irrgeo", description=__doc__.splitlines()[0])
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("verify", help="verify one figure end to end")
    _add_family_options(sub)
    _add_pair_options(sub)
    sub.add_argument("--json", default=None, metavar="PATH")

    sub = subs.add_parser("census", help="print the coverage census of one figure")
    _add_family_options(sub)
    _add_pair_options(sub)
    sub.add_argument("--json", default=None, metavar="PATH")

    sub = subs.add_parser("chain", help="iterate the descent map")
    _add_family_options(sub)
    _add_pair_options(sub)
    sub.add_argument("--max-steps", type=int, default=32)
    sub.add_argument("--json", default=None, metavar="PATH")

    sub = subs.add_parser("range", help="decide which parameters shrink pairs")
    _add_family_options(sub)
    sub.add_argument("--n-max", type=int, default=None)
    sub.add_argument("--json", default=None, metavar="PATH")

    sub = subs.add_parser("sequence", help="square triangular numbers up to a bound")
    sub.add_argument("--limit", type=int, required=True)

    sub = subs.add_parser("density", help="how common perfect squares are up to x")
    sub.add_argument("--x", type=int, required=True)

    sub = subs.add_parser("svg", help="render one figure to SVG")
    _add_family_options(sub)
    _add_pair_options(sub)
    sub.add_argument("--out", required=True, metavar="PATH")

    return parser


def _resolve_family(args) -> DescentFamily:
    if args.family == "triangular":
        if args.n is None:
            raise _UsageError("--family triangular requires --n")
        try:
            return DescentFamily.triangular(args.n)
        except (BadIndex, BadParity) as exc:
            raise _UsageError(str(exc))
    if args.n is not None:
        raise _UsageError(f"--n is only valid with --family triangular")
    return DescentFamily.sqrt2() if args.family == "sqrt2" else DescentFamily.hex6()


def _resolve_pair(args, family: DescentFamily) -> tuple[int, int]:
    explicit = args.a is not None or args.b is not None
    if explicit and args.convergent is not None:
        raise _UsageError("give either --a/--b or --convergent, not both")
    if explicit:
        if args.a is None or args.b is None:
            raise _UsageError("--a and --b must be given together")
        if args.a < 1 or args.b < 1:
            raise _UsageError("--a and --b must be positive")
        return args.a, args.b
    if args.convergent is None:
        raise _UsageError("need --a/--b or --convergent")
    if args.convergent < 1:
        raise _UsageError("--convergent counts from 1")
    try:
        conv = convergents(family.radicand, args.convergent)[args.convergent - 1]
    except SquareRadicand as exc:
        raise _UsageError(str(exc))
    return conv.p, conv.q


def _write_json(path: Optional[str], report: dict) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(render_json(report))


def _print_window(run: dict) -> None:
    parts = [
        f"{w['name']} {'ok' if w['ok'] else 'VIOLATED'}"
        for w in run["window"]["inequalities"]
    ]
    print("window: " + "; ".join(parts))


def _cmd_verify(args) -> int:
    family = _resolve_family(args)
    a, b = _resolve_pair(args, family)
    run = build_verify_run(family, a, b)
    label = family.label if family.n is None else f"{family.label} n={family.n}"
    print(f"family {label}  pair ({a}, {b})  radicand {family.radicand}")
    _print_window(run)
    if run["window"]["pass"]:
        d = run["descent"]
        print(
            f"descent: ({a}, {b}) -> ({d['output_pair'][0]}, {d['output_pair'][1]})"
            f"  defect {d['defect_in']} -> {d['defect_out']}  multiplier {d['multiplier']}"
        )
        print(f"census-derived pair: {run['census_pair']}")
        for c in run["identity_checks"]:
            mark = "ok" if c["pass"] else "FAIL"
            print(f"check {c['name']}: {c['lhs']} == {c['rhs']} {mark}")
    report = report_envelope([run])
    _write_json(args.json, report)
    print("verify: " + ("PASS" if run["pass"] else "FAIL"))
    return 0 if run["pass"] else 2


def _cmd_census(args) -> int:
    family = _resolve_family(args)
    a, b = _resolve_pair(args, family)
    run = build_census_run(family, a, b)
    label = family.label if family.n is None else f"{family.label} n={family.n}"
    print(f"family {label}  pair ({a}, {b})  radicand {family.radicand}")
    _print_window(run)
    if run["window"]["pass"]:
        c = run["census"]
        for key in (
            "big_area",
            "total_small_area",
            "union_area",
            "blank_area",
            "excess_area",
            "exactly2_area",
            "exactly3_area",
        ):
            print(f"{key}: {Fraction(c[key])}")
        print(
            f"regions: {c['pair_region_count']} pairwise"
            f" ({c['doubly_region_count']} doubly, {c['triple_region_count']} triply)"
            f"  max depth {c['max_depth']}"
        )
    report = report_envelope([run])
    _write_json(args.json, report)
    return 0 if run["pass"] else 2


def _cmd_chain(args) -> int:
    family = _resolve_family(args)
    a, b = _resolve_pair(args, family)
    if args.max_steps < 0:
        raise _UsageError("--max-steps must be nonnegative")
    run = build_chain_run(family, a, b, args.max_steps)
    label = family.label if family.n is None else f"{family.label} n={family.n}"
    print(f"family {label}  start ({a}, {b})")
    for i, s in enumerate(run["steps"], start=1):
        print(
            f"step {i}: ({s['pair_in'][0]}, {s['pair_in'][1]}) ->"
            f" ({s['pair_out'][0]}, {s['pair_out'][1]})"
            f"  defect {s['defect_in']} -> {s['defect_out']}"
        )
    print(f"stop: {run['stop_reason']} after {len(run['steps'])} steps")
    _write_json(args.json, report_envelope([run]))
    return 0


def _cmd_range(args) -> int:
    family_name = args.family
    if family_name != "triangular":
        if args.n is not None or args.n_max is not None:
            raise _UsageError("--n/--n-max are only valid with --family triangular")
        family = DescentFamily.sqrt2() if family_name == "sqrt2" else DescentFamily.hex6()
        result = range_check(family)
        run = build_range_run(result)
        print(f"{family.label}: {'works' if result.works else 'fails'}")
        _write_json(args.json, report_envelope([run]))
        return 0
    if args.n is not None:
        raise _UsageError("use --n-max for a range sweep")
    if args.n_max is None or args.n_max < 2:
        raise _UsageError("--n-max must be at least 2")
    runs = []
    works: list[int] = []
    fails: list[int] = []
    for n in range(2, args.n_max + 1):
        result = range_check(DescentFamily.triangular(n))
        runs.append(build_range_run(result))
        (works if result.works else fails).append(n)
        verdict = "works" if result.works else "fails"
        print(f"n={n}: {verdict}")
    print("works: " + (",".join(map(str, works)) or "none"))
    print("fails: " + (",".join(map(str, fails)) or "none"))
    _write_json(args.json, report_envelope(runs))
    return 0


def _cmd_sequence(args) -> int:
    if args.limit < 0:
        raise _UsageError("--limit must be nonnegative")
    terms = square_triangular(args.limit)
    print(" ".join(map(str, terms)))
    return 0


def _cmd_density(args) -> int:
    if args.x < 1:
        raise _UsageError("--x must be positive")
    count, percent = square_density(args.x)
    print(f"perfect squares up to {args.x}: {count} ({percent}% of all integers)")
    return 0


def _cmd_svg(args) -> int:
    family = _resolve_family(args)
    a, b = _resolve_pair(args, family)
    try:
        arr = build_arrangement(family, a, b)
    except OutOfWindow as exc:
        print(f"cannot build figure: {exc}", file=sys.stderr)
        return 2
    census = coverage_census(arr)
    scene = scene_from_arrangement(arr, census)
    emit_svg(scene, args.out)
    print(f"wrote {args.out}")
    return 0


_COMMANDS = {
    "verify": _cmd_verify,
    "census": _cmd_census,
    "chain": _cmd_chain,
    "range": _cmd_range,
    "sequence": _cmd_sequence,
    "density": _cmd_density,
    "svg": _cmd_svg,
}


def cli_main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
