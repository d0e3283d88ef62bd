"""Lengths and sliver areas of Hansen's nested corner cuts.

Each cut leaves a segment of length ``x_i`` along a hexagon side; the next
length solves ``(sqrt(3)*x_{i+1}/2 + x_i)**2 + (1 - x_{i+1}/2)**2 = 1``.  The
rationalized root below avoids the cancellation of ``1 - sqrt(...)`` that
destroys every digit once ``x_i`` drops below the working precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal

from .geom import circular_segment_area
from .scalar import DomainError, PrecisionContext, eval_sqrt

__all__ = ["HansenRow", "area_row", "quadratic_residual", "table", "x_initial", "x_next"]


@dataclass(frozen=True)
class HansenRow:
    i: int
    x: Decimal
    a: Decimal


def _sqrt3(ctx: PrecisionContext) -> Decimal:
    return eval_sqrt(Decimal(3), ctx)


def x_initial(ctx: PrecisionContext) -> Decimal:
    """``1 - sqrt(3)/2``: the first cut on a side of length 1/sqrt(3)."""
    with ctx.active():
        return 1 - _sqrt3(ctx) / 2


def _radicand(x: Decimal, r3: Decimal) -> Decimal:
    rad = 1 - 2 * r3 * x - x * x
    if rad < 0:
        raise DomainError("x_next", x)
    return rad


def x_next(x: Decimal, ctx: PrecisionContext) -> Decimal:
    with ctx.active():
        r3 = _sqrt3(ctx)
        rad = _radicand(x, r3)
        return 2 * x * x / (1 - r3 * x + eval_sqrt(rad, ctx))


def _x_next_subtractive(x: Decimal, ctx: PrecisionContext) -> Decimal:
    # textbook root of the quadratic; kept only as a cross-check
    with ctx.active():
        r3 = _sqrt3(ctx)
        return (1 - r3 * x - eval_sqrt(_radicand(x, r3), ctx)) / 2


def quadratic_residual(x: Decimal, x1: Decimal, ctx: PrecisionContext) -> Decimal:
    with ctx.active():
        r3 = _sqrt3(ctx)
        return (r3 * x1 / 2 + x) ** 2 + (1 - x1 / 2) ** 2 - 1


def chord(x: Decimal, x1: Decimal, ctx: PrecisionContext) -> Decimal:
    with ctx.active():
        return eval_sqrt(x1 * x1 / 4 + (x + _sqrt3(ctx) / 2 * x1) ** 2, ctx)


def area_row(x: Decimal, x1: Decimal, ctx: PrecisionContext) -> Decimal:
    """Triangle ``x*x1/4`` minus the unit-radius segment cut off by the chord."""
    wide = ctx.widen(10)
    seg = circular_segment_area(Decimal(1), chord(x, x1, wide), wide)
    with wide.active():
        a = x * x1 / 4 - seg
    return ctx.round(a)


def table(rows: int, ctx: PrecisionContext) -> list[HansenRow]:
    if rows < 1:
        raise ValueError("rows must be >= 1")
    x = x_initial(ctx)
    out = []
    for i in range(rows):
        x1 = x_next(x, ctx)
        out.append(HansenRow(i, x, area_row(x, x1, ctx)))
        x = x1
    return out
