"""Command-line front end.

Angles are given and reported in degrees; every real number in JSON output
is a decimal string.  Exit codes: 0 success (an infeasible slant is still a
success), 2 usage error, 3 degenerate construction, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from decimal import Decimal, InvalidOperation
from typing import Optional, Sequence

from . import __version__
from .cover import ConstructionReport, DegeneracyError, ParameterError, construct, inflated_wxy
from .geom import GeometryError
from .hansen import table
from .optimize import BracketError, InconsistencyError, ScanFailure, find_sigma_star, scan
from .scalar import DEFAULT_DIGITS, MIN_DIGITS, PrecisionContext, degrees, fmt, parse, radians

SCHEMA = 1
EXIT_OK, EXIT_USAGE, EXIT_DEGENERATE, EXIT_IO = 0, 2, 3, 4


class UsageError(Exception):
    pass


def _dump(payload: dict) -> str:
    return json.dumps({"schema": SCHEMA, **payload}, indent=2) + "\n"


def _real(v) -> str:
    return str(v) if isinstance(v, Decimal) else repr(float(v))


def _precision(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < MIN_DIGITS:
        raise argparse.ArgumentTypeError(f"precision must be >= {MIN_DIGITS}")
    return n


def _decimal(text: str) -> Decimal:
    try:
        v = Decimal(text)
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"not a decimal number: {text!r}") from None
    if not v.is_finite():
        raise argparse.ArgumentTypeError(f"not a finite number: {text!r}")
    return v


def _sigma(text: str, ctx: PrecisionContext) -> Decimal:
    try:
        deg = parse(text, ctx)
    except ValueError as exc:
        raise UsageError(f"--sigma-deg: {exc}") from None
    if not 0 < deg < 10:
        raise UsageError(f"--sigma-deg must lie strictly between 0 and 10, got {text}")
    return radians(deg, ctx)


def report_json(report: ConstructionReport, ctx: PrecisionContext, sigma_deg: Optional[str] = None) -> dict:
    return {
        "sigma_deg": sigma_deg if sigma_deg is not None else str(degrees(report.sigma, ctx)),
        "precision": ctx.digits,
        "area": str(report.area),
        "angle_WYL_deg": str(degrees(report.angle_WYL, ctx)),
        "angle_MWY_deg": str(degrees(report.angle_MWY, ctx)),
        "wxy_in_Bprime": report.wxy_in_Bprime,
        "constraints_ok": report.constraints_ok,
        "points": {k: {"x": str(p.x), "y": str(p.y)} for k, p in report.points.as_dict().items()},
    }


# -- commands ----------------------------------------------------------------

def cmd_table1(args) -> str:
    if args.rows < 1:
        raise UsageError("--rows must be >= 1")
    ctx = PrecisionContext(args.precision)
    rows = table(args.rows, ctx)
    if args.format == "json":
        return _dump({"command": "table1", "precision": ctx.digits,
                      "rows": [{"i": r.i, "x": str(r.x), "a": str(r.a)} for r in rows]})
    sig = args.digits
    lines = [f"{'i':>2}  {'x_i':<{sig + 8}}  a_i"]
    for r in rows:
        lines.append(f"{r.i:>2}  {_sci(r.x, sig):<{sig + 8}}  {_sci(r.a, sig)}")
    return "\n".join(lines) + "\n"


def _sci(v: Decimal, sig: int) -> str:
    return "{:.{}E}".format(Decimal(fmt(v, sig)), sig - 1)


def cmd_area(args) -> str:
    ctx = PrecisionContext(args.precision)
    report = construct(_sigma(args.sigma_deg, ctx), ctx)
    return _dump({"command": "area", **report_json(report, ctx, args.sigma_deg)})


def cmd_scan(args) -> str:
    ctx = PrecisionContext(args.precision)
    sigmas = [_sigma(s, ctx) for s in args.sigma_deg]
    rows = []
    for s, item in zip(args.sigma_deg, scan(sigmas, ctx)):
        if isinstance(item, ScanFailure):
            rows.append({"sigma_deg": s, "error": item.error, "message": item.message})
        else:
            rows.append(report_json(item, ctx, s))
    return _dump({"command": "scan", "precision": ctx.digits, "results": rows})


def cmd_optimize(args) -> str:
    ctx = PrecisionContext(args.precision)
    lo, hi = (radians(parse(str(b), ctx), ctx) for b in args.bracket)
    res = find_sigma_star(lo, hi, ctx)
    rep = res.report
    return _dump({
        "command": "optimize",
        "precision": ctx.digits,
        "sigma_star_deg": str(degrees(res.sigma_star, ctx)),
        "sigma_star_rad": str(res.sigma_star),
        "area": str(res.area),
        "bracket_deg": [str(degrees(b, ctx)) for b in res.bracket],
        "iterations": res.iterations,
        "angle_WYL_deg": str(degrees(rep.angle_WYL, ctx)),
        "angle_MWY_deg": str(degrees(rep.angle_MWY, ctx)),
        "wxy_in_Bprime": rep.wxy_in_Bprime,
        "all_constraints_verified": res.all_constraints_verified,
    })


def cmd_validate(args) -> str:
    from .validate import batch, standard_mix

    if args.samples < 0:
        raise UsageError("--samples must be >= 0")
    ctx = PrecisionContext(args.precision)
    report = construct(_sigma(args.sigma_deg, ctx), ctx)
    removed = [inflated_wxy(report, args.inflate_wxy)] if args.inflate_wxy is not None else []
    summary = batch(standard_mix(args.samples), report, args.seed, args.curve_samples, removed, args.workers)
    failures = [{k: (_real(v) if isinstance(v, float) else v) for k, v in f.items()} for f in summary.failures]
    for f in failures:
        f["translation"] = [_real(t) for t in f["translation"]]
    return _dump({
        "command": "validate",
        "sigma_deg": args.sigma_deg,
        "seed": args.seed,
        "curves": summary.count,
        "curve_samples": args.curve_samples,
        "inflate_wxy": None if args.inflate_wxy is None else str(args.inflate_wxy),
        "contained": summary.contained,
        "failures": len(failures),
        "worst_violation": None if summary.worst_violation is None else _real(summary.worst_violation),
        "worst_curve": summary.worst_curve,
        "cases": summary.cases,
        "failing": failures,
    })


def cmd_svg(args) -> str:
    from .svg import ZOOM_NAMES, UnknownPointError, render

    ctx = PrecisionContext(args.precision)
    report = construct(_sigma(args.sigma_deg, ctx), ctx)
    try:
        text = render(report, ctx, args.zoom, args.scale)
    except UnknownPointError:
        raise UsageError(f"unknown zoom point {args.zoom!r}; valid names: {', '.join(ZOOM_NAMES)}") from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise IOError(f"cannot write {args.output}: {exc.strerror or exc}") from None
    return _dump({"command": "svg", "output": args.output, "zoom": args.zoom, "scale": str(args.scale),
                  "bytes": len(text.encode("utf-8"))})


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lebesgue", description="Slanted-hexagon universal covering toolkit.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def precision(sp, default=DEFAULT_DIGITS):
        sp.add_argument("--precision", type=_precision, default=default, help="significant decimal digits")

    sp = sub.add_parser("table1", help="lengths and sliver areas of Hansen's cuts")
    sp.add_argument("--rows", type=int, default=5)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.add_argument("--digits", type=int, default=13, help="significant digits in the text table")
    precision(sp)
    sp.set_defaults(func=cmd_table1)

    sp = sub.add_parser("area", help="build the covering for one slant angle")
    sp.add_argument("--sigma-deg", required=True)
    precision(sp)
    sp.set_defaults(func=cmd_area)

    sp = sub.add_parser("scan", help="build the covering for several slant angles")
    sp.add_argument("--sigma-deg", nargs="+", required=True)
    precision(sp)
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("optimize", help="smallest slant with angle WYL >= 90 degrees")
    sp.add_argument("--bracket", nargs=2, type=_decimal, default=[Decimal("1.0"), Decimal("1.5")],
                    metavar=("LO_DEG", "HI_DEG"))
    precision(sp, 60)
    sp.set_defaults(func=cmd_optimize)

    sp = sub.add_parser("validate", help="place random constant-width curves in the covering")
    sp.add_argument("--samples", type=int, default=1000, help="number of curves")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--sigma-deg", default="1.3")
    sp.add_argument("--curve-samples", type=int, default=10_000, help="boundary points per curve")
    sp.add_argument("--inflate-wxy", type=_decimal, default=None, metavar="FACTOR",
                    help="also cut region WXY grown by this area factor (mutation test)")
    sp.add_argument("--workers", type=int, default=1)
    precision(sp, 30)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("svg", help="draw the construction")
    sp.add_argument("--sigma-deg", default="1.3")
    sp.add_argument("--zoom", default=None, help="named point (O N L M W X Y A1..F1) or 'x,y'")
    sp.add_argument("--scale", type=_decimal, default=Decimal(1))
    sp.add_argument("-o", "--output", required=True)
    precision(sp)
    sp.set_defaults(func=cmd_svg)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.func(args)
    except (UsageError, ParameterError, BracketError) as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DegeneracyError, GeometryError, InconsistencyError) as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
        pts = getattr(exc, "points", None)
        if pts:
            err["points"] = {k: {"x": str(p.x), "y": str(p.y)} for k, p in pts.items()}
        sys.stdout.write(_dump(err))
        return EXIT_DEGENERATE
    except OSError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_IO
    sys.stdout.write(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
