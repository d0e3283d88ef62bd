"""Smallest admissible slant: the root of angle WYL = 90 degrees.

The area falls as sigma shrinks until the angle at Y closes to a right angle,
so minimizing the area is a one-dimensional root find on that angle.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from typing import Sequence, Union

from .cover import ConstructionReport, build_hexagons, construct, locate_points
from .geom import GeometryError, interior_angle
from .scalar import PrecisionContext, const_pi, radians

__all__ = [
    "BracketError",
    "InconsistencyError",
    "OptimizeResult",
    "ScanFailure",
    "angle_wyl_excess",
    "default_bracket",
    "find_sigma_star",
    "scan",
]


class BracketError(ValueError):
    pass


class InconsistencyError(RuntimeError):
    pass


@dataclass(frozen=True)
class OptimizeResult:
    sigma_star: Decimal
    area: Decimal
    bracket: tuple
    iterations: int
    all_constraints_verified: bool
    report: ConstructionReport


@dataclass(frozen=True)
class ScanFailure:
    sigma: Decimal
    error: str
    message: str


def angle_wyl_excess(sigma: Decimal, ctx: PrecisionContext) -> Decimal:
    """Angle WYL minus a right angle, radians."""
    np = locate_points(build_hexagons(sigma, ctx))
    wyl = interior_angle(np.Y, np.W, np.L, ctx)
    with ctx.active():
        return wyl - const_pi(ctx) / 2


def default_bracket(ctx: PrecisionContext) -> tuple[Decimal, Decimal]:
    return radians(Decimal("1.0"), ctx), radians(Decimal("1.5"), ctx)


def find_sigma_star(lo: Decimal, hi: Decimal, ctx: PrecisionContext) -> OptimizeResult:
    """Bisect until the bracket is narrower than ``10**(10 - digits)`` radians.

    Returns the feasible endpoint, where angle WYL is at least 90 degrees.
    """
    if not lo < hi:
        raise BracketError(f"empty bracket [{lo}, {hi}]")
    f_lo = angle_wyl_excess(lo, ctx)
    f_hi = angle_wyl_excess(hi, ctx)
    if (f_lo >= 0) == (f_hi >= 0):
        raise BracketError("angle WYL - 90 degrees has the same sign at both ends of the bracket")
    # keep ``bad`` infeasible and ``good`` feasible
    bad, good = (lo, hi) if f_lo < 0 else (hi, lo)
    width = ctx.tol(10)
    iterations = 0
    with ctx.active():
        while abs(good - bad) >= width:
            mid = (good + bad) / 2
            if mid in (good, bad):
                break
            if angle_wyl_excess(mid, ctx) >= 0:
                good = mid
            else:
                bad = mid
            iterations += 1
    report = construct(good, ctx)
    if not report.constraints_ok:
        raise InconsistencyError(f"constraints fail at the feasible endpoint sigma={good}")
    return OptimizeResult(good, report.area, (min(good, bad), max(good, bad)), iterations, True, report)


def scan(sigmas: Sequence[Decimal], ctx: PrecisionContext) -> list[Union[ConstructionReport, ScanFailure]]:
    """One report per slant, in order; a failing slant yields a :class:`ScanFailure` in place."""
    out = []
    for sigma in sigmas:
        try:
            out.append(construct(sigma, ctx))
        except (GeometryError, ValueError) as exc:
            out.append(ScanFailure(sigma, type(exc).__name__, str(exc)))
    return out
