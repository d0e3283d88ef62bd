"""Planar primitives, intersections and the area of arc/segment regions.

All coordinates are :class:`~decimal.Decimal`.  Arithmetic operators on
:class:`Point` follow the active decimal context; every public function takes
a :class:`PrecisionContext` and activates it itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from typing import Iterable, Sequence, Union

from .scalar import (
    PrecisionContext,
    const_pi,
    eval_asin,
    eval_atan2,
    eval_sin_cos,
    eval_sqrt,
)

__all__ = [
    "ArcSegment",
    "Circle",
    "CoveringBoundary",
    "DegenerateInputError",
    "GeometryError",
    "LineSegment",
    "MalformedBoundaryError",
    "Point",
    "circle_circle_intersection",
    "circle_line_intersection",
    "circular_segment_area",
    "interior_angle",
    "line_intersection",
    "nearest",
    "region_area",
    "rigid_motion",
]

CCW = "ccw"
CW = "cw"


class GeometryError(ValueError):
    pass


class DegenerateInputError(GeometryError):
    pass


class MalformedBoundaryError(GeometryError):
    pass


@dataclass(frozen=True)
class Point:
    x: Decimal
    y: Decimal

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def __mul__(self, k) -> "Point":
        return Point(self.x * k, self.y * k)

    __rmul__ = __mul__

    def __truediv__(self, k) -> "Point":
        return Point(self.x / k, self.y / k)

    def __neg__(self) -> "Point":
        return Point(-self.x, -self.y)

    def dot(self, other: "Point") -> Decimal:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Point") -> Decimal:
        return self.x * other.y - self.y * other.x

    def norm2(self) -> Decimal:
        return self.x * self.x + self.y * self.y

    def perp(self) -> "Point":
        """Rotated by +90 degrees."""
        return Point(-self.y, self.x)

    def as_floats(self) -> tuple[float, float]:
        return float(self.x), float(self.y)


def midpoint(a: Point, b: Point, ctx: PrecisionContext) -> Point:
    with ctx.active():
        return Point((a.x + b.x) / 2, (a.y + b.y) / 2)


def distance(a: Point, b: Point, ctx: PrecisionContext) -> Decimal:
    with ctx.active():
        return eval_sqrt((a - b).norm2(), ctx)


def nearest(points: Iterable[Point], reference: Point, ctx: PrecisionContext) -> Point:
    """The candidate closest to ``reference``; ties keep the first."""
    with ctx.active():
        return min(points, key=lambda p: (p - reference).norm2())


@dataclass(frozen=True)
class Circle:
    center: Point
    radius: Decimal

    def __post_init__(self):
        if not self.radius > 0:
            raise DegenerateInputError(f"circle radius must be positive, got {self.radius}")


@dataclass(frozen=True)
class LineSegment:
    start: Point
    end: Point

    def __post_init__(self):
        if self.start == self.end:
            raise DegenerateInputError("line segment with coincident endpoints")

    def reversed(self) -> "LineSegment":
        return LineSegment(self.end, self.start)


@dataclass(frozen=True)
class ArcSegment:
    center: Point
    radius: Decimal
    start: Point
    end: Point
    orientation: str = CCW

    def __post_init__(self):
        if self.orientation not in (CCW, CW):
            raise ValueError(f"orientation must be 'ccw' or 'cw', got {self.orientation!r}")
        if not self.radius > 0:
            raise DegenerateInputError("arc radius must be positive")

    def sweep(self, ctx: PrecisionContext) -> Decimal:
        """Unsigned angle swept from start to end in the arc's direction, in [0, 2pi)."""
        with ctx.active():
            a = self.start - self.center
            b = self.end - self.center
            if self.orientation == CW:
                a, b = b, a
            ang = eval_atan2(a.cross(b), a.dot(b), ctx)
            if ang < 0:
                ang += 2 * const_pi(ctx)
            return ang

    def midpoint(self, ctx: PrecisionContext) -> Point:
        with ctx.active():
            a = self.start - self.center
            b = self.end - self.center
            bis = a + b
            n = bis.norm2()
            if n == 0:
                raise DegenerateInputError("half-circle arc has no unique chord bisector")
            point = self.center + bis * (self.radius / eval_sqrt(n, ctx))
            # the bisector points at the minor arc; flip for major arcs
            if self.sweep(ctx) > const_pi(ctx):
                point = self.center - bis * (self.radius / eval_sqrt(n, ctx))
            return point

    def tangent_at(self, p: Point, ctx: PrecisionContext) -> Point:
        """Unit direction of travel at ``p``."""
        with ctx.active():
            t = (p - self.center).perp() / self.radius
            return t if self.orientation == CCW else -t


Element = Union[LineSegment, ArcSegment]


def _direction_at_start(e: Element, ctx: PrecisionContext) -> Point:
    if isinstance(e, LineSegment):
        return e.end - e.start
    return e.tangent_at(e.start, ctx)


def _direction_at_end(e: Element, ctx: PrecisionContext) -> Point:
    if isinstance(e, LineSegment):
        return e.end - e.start
    return e.tangent_at(e.end, ctx)


def _signed_turn(u: Point, v: Point, ctx: PrecisionContext) -> Decimal:
    return eval_atan2(u.cross(v), u.dot(v), ctx)


@dataclass(frozen=True)
class CoveringBoundary:
    """Closed, counterclockwise chain of segments and arcs around a convex region."""

    elements: tuple

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        if len(self.elements) < 2:
            raise MalformedBoundaryError("a boundary needs at least two elements")

    def vertices(self) -> list[Point]:
        return [e.start for e in self.elements]

    def check_closed(self, ctx: PrecisionContext) -> None:
        tol = ctx.tol(5)
        with ctx.active():
            n = len(self.elements)
            for i, e in enumerate(self.elements):
                nxt = self.elements[(i + 1) % n]
                gap = e.end - nxt.start
                if abs(gap.x) > tol or abs(gap.y) > tol:
                    raise MalformedBoundaryError(
                        f"open chain: element {i} ends at {e.end}, element {(i + 1) % n} starts at {nxt.start}")

    def turning(self, ctx: PrecisionContext) -> tuple[Decimal, Decimal]:
        """(total turning, most negative junction or arc turn)."""
        with ctx.active():
            total = Decimal(0)
            worst = Decimal(0)
            n = len(self.elements)
            for i, e in enumerate(self.elements):
                if isinstance(e, ArcSegment):
                    sw = e.sweep(ctx)
                    turn = sw if e.orientation == CCW else -sw
                    total += turn
                    worst = min(worst, turn)
                nxt = self.elements[(i + 1) % n]
                turn = _signed_turn(_direction_at_end(e, ctx), _direction_at_start(nxt, ctx), ctx)
                total += turn
                worst = min(worst, turn)
            return total, worst

    def validate(self, ctx: PrecisionContext) -> None:
        """Raise :class:`MalformedBoundaryError` unless closed and convex."""
        self.check_closed(ctx)
        total, worst = self.turning(ctx)
        tol = ctx.tol(5)
        with ctx.active():
            if worst < -tol:
                raise MalformedBoundaryError(f"not convex: negative turn {worst}")
            if abs(total - 2 * const_pi(ctx)) > tol:
                raise MalformedBoundaryError(f"total turning {total} is not 2*pi")

    def is_convex(self, ctx: PrecisionContext) -> bool:
        try:
            self.validate(ctx)
        except MalformedBoundaryError:
            return False
        return True

    def rotated(self, k: int) -> "CoveringBoundary":
        k %= len(self.elements)
        return CoveringBoundary(self.elements[k:] + self.elements[:k])


# -- intersections -----------------------------------------------------------

def _order(points: Sequence[Point]) -> tuple:
    return tuple(sorted(points, key=lambda p: (p.y, p.x)))


def circle_circle_intersection(a: Circle, b: Circle, ctx: PrecisionContext) -> tuple:
    """Intersection points of two circles.

    Returns ``()`` when they miss, a 1-tuple when tangent and a 2-tuple ordered
    by ascending ``y`` then ``x`` otherwise.
    """
    with ctx.active():
        delta = b.center - a.center
        d2 = delta.norm2()
        if d2 == 0:
            raise DegenerateInputError("concentric circles")
        # foot of the common chord at a.center + delta * t
        t = (d2 + a.radius * a.radius - b.radius * b.radius) / (2 * d2)
        h2 = a.radius * a.radius - t * t * d2
        foot = a.center + delta * t
        scale = max(a.radius, b.radius) ** 2
        if abs(h2) <= ctx.tol(10) * scale:
            return (foot,)
        if h2 < 0:
            return ()
        off = delta.perp() * (eval_sqrt(h2, ctx) / eval_sqrt(d2, ctx))
        return _order([foot + off, foot - off])


def circle_line_intersection(c: Circle, line: LineSegment, ctx: PrecisionContext) -> tuple:
    """Intersections of a circle with the carrier line of ``line``."""
    with ctx.active():
        d = line.end - line.start
        dd = d.norm2()
        t = (c.center - line.start).dot(d) / dd
        foot = line.start + d * t
        h2 = c.radius * c.radius - (c.center - foot).norm2()
        if abs(h2) < ctx.tol(10) * c.radius * c.radius:
            return (foot,)
        if h2 < 0:
            return ()
        off = d * (eval_sqrt(h2, ctx) / eval_sqrt(dd, ctx))
        return _order([foot + off, foot - off])


def line_intersection(p: LineSegment, q: LineSegment, ctx: PrecisionContext) -> Point:
    """Intersection of the two carrier lines."""
    with ctx.active():
        r = p.end - p.start
        s = q.end - q.start
        den = r.cross(s)
        if den == 0:
            raise DegenerateInputError("parallel lines")
        t = (q.start - p.start).cross(s) / den
        return p.start + r * t


def interior_angle(at: Point, ray_to_1: Point, ray_to_2: Point, ctx: PrecisionContext) -> Decimal:
    """Unsigned angle between the rays ``at->ray_to_1`` and ``at->ray_to_2``, radians."""
    with ctx.active():
        u = ray_to_1 - at
        v = ray_to_2 - at
        if u.norm2() == 0 or v.norm2() == 0:
            raise DegenerateInputError("zero-length ray")
        return eval_atan2(abs(u.cross(v)), u.dot(v), ctx)


# -- areas -------------------------------------------------------------------

def _theta_minus_sin(theta: Decimal, ctx: PrecisionContext) -> Decimal:
    # series form: no cancellation when theta is tiny (Hansen's slivers)
    with ctx.widen(10).active():
        t2 = theta * theta
        term = theta * t2 / 6
        total = term
        n = 3
        eps = ctx.tol(-12) * abs(term)
        while abs(term) > eps:
            term = -term * t2 / ((n + 1) * (n + 2))
            total += term
            n += 2
    return ctx.round(total)


def _segment_from_angle(radius: Decimal, theta: Decimal, ctx: PrecisionContext) -> Decimal:
    with ctx.active():
        return radius * radius / 2 * _theta_minus_sin(theta, ctx)


def circular_segment_area(radius: Decimal, chord_length: Decimal, ctx: PrecisionContext) -> Decimal:
    """Area between a chord and its minor arc: ``R**2/2 * (theta - sin theta)``."""
    with ctx.active():
        if chord_length < 0 or chord_length > 2 * radius:
            raise GeometryError(f"chord {chord_length} longer than diameter of radius {radius}")
        theta = 2 * eval_asin(chord_length / (2 * radius), ctx)
    return _segment_from_angle(radius, theta, ctx)


def region_area(boundary: CoveringBoundary, ctx: PrecisionContext) -> Decimal:
    """Area enclosed by a positively oriented boundary.

    Green's theorem: the shoelace sum over element endpoints, plus for each arc
    the circular segment between its chord and the arc, added for outward
    (counterclockwise) arcs and subtracted for inward ones.
    """
    boundary.check_closed(ctx)
    with ctx.widen(5).active():
        wide = ctx.widen(5)
        twice = Decimal(0)
        correction = Decimal(0)
        for e in boundary.elements:
            twice += e.start.cross(e.end)
            if isinstance(e, ArcSegment):
                seg = _segment_from_angle(e.radius, e.sweep(wide), wide)
                correction += seg if e.orientation == CCW else -seg
        area = twice / 2 + correction
    if area <= 0:
        raise MalformedBoundaryError("boundary is not positively oriented")
    return ctx.round(area)


def rigid_motion(boundary: CoveringBoundary, angle: Decimal, dx: Decimal, dy: Decimal,
                 ctx: PrecisionContext) -> CoveringBoundary:
    """Rotate about the origin by ``angle`` and then translate."""
    s, c = eval_sin_cos(angle, ctx)
    shift = Point(dx, dy)

    def move(p: Point) -> Point:
        return Point(c * p.x - s * p.y, s * p.x + c * p.y) + shift

    with ctx.active():
        out = []
        for e in boundary.elements:
            if isinstance(e, LineSegment):
                out.append(LineSegment(move(e.start), move(e.end)))
            else:
                out.append(ArcSegment(move(e.center), e.radius, move(e.start), move(e.end), e.orientation))
    return CoveringBoundary(tuple(out))


def polygon(points: Sequence[Point]) -> CoveringBoundary:
    """Closed polygon through ``points`` in the given order."""
    n = len(points)
    return CoveringBoundary(tuple(LineSegment(points[i], points[(i + 1) % n]) for i in range(n)))
