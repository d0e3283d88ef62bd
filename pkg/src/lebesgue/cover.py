"""The slanted-hexagon covering and its constraint checks.

Frame: the hexagon H has its center at the origin, inradius 1/2 and vertices
A1..F1 counterclockwise, with A1 at 60 degrees, so side D1E1 is horizontal at
the bottom and the symmetry axis through its midpoint M is the y axis.  H' is
H turned clockwise by 30 degrees plus the slant sigma.  The six pieces of H
outside H' are the corner triangles, named after the hexagon vertex they
contain.

An optional ``frame`` angle rotates the whole picture; nothing reported
depends on it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal
from typing import Optional

from .geom import (
    CCW,
    ArcSegment,
    Circle,
    CoveringBoundary,
    DegenerateInputError,
    GeometryError,
    LineSegment,
    MalformedBoundaryError,
    Point,
    circle_circle_intersection,
    circle_line_intersection,
    interior_angle,
    line_intersection,
    midpoint,
    nearest,
    polygon,
    region_area,
)
from .scalar import PrecisionContext, const_pi, eval_sin_cos, eval_sqrt, radians

__all__ = [
    "ConstructionReport",
    "DegeneracyError",
    "HexPair",
    "NamedPoints",
    "ParameterError",
    "VERTEX_NAMES",
    "assemble_boundary",
    "build_hexagons",
    "check_case1_containment",
    "construct",
    "locate_points",
]

VERTEX_NAMES = ("A1", "B1", "C1", "D1", "E1", "F1")
TRIANGLE_NAMES = ("A", "B", "C", "D", "E", "F")
POINT_NAMES = ("O", "N", "L", "M", "W", "X", "Y")

SIGMA_MAX_DEG = 10


class ParameterError(ValueError):
    pass


class DegeneracyError(GeometryError):
    """The construction collapses; ``points`` holds the offending coordinates."""

    def __init__(self, message: str, points: Optional[dict] = None):
        super().__init__(message)
        self.points = dict(points or {})


@dataclass(frozen=True)
class HexPair:
    hexagon: tuple
    rotated: tuple
    sigma: Decimal
    frame: Decimal
    digits: int
    crossings: tuple = ()

    @property
    def ctx(self) -> PrecisionContext:
        return PrecisionContext(self.digits)

    def vertex(self, name: str) -> Point:
        return self.hexagon[VERTEX_NAMES.index(name)]

    def side_points(self, k: int) -> tuple[Point, Point]:
        """Where the boundary of H' crosses side ``V_k V_{k+1}``, nearest ``V_k`` first."""
        return self.crossings[k % 6]

    def triangle(self, label: str) -> tuple[Point, Point, Point]:
        """Corner triangle: hexagon vertex, then its corners on the incoming and outgoing sides."""
        k = TRIANGLE_NAMES.index(label)
        return self.hexagon[k], self.side_points(k - 1)[1], self.side_points(k)[0]


def _side_points(hexagon, rotated, k: int, ctx: PrecisionContext) -> tuple[Point, Point]:
    a, b = hexagon[k], hexagon[(k + 1) % 6]
    side = LineSegment(a, b)
    tol = ctx.tol(10)
    found = []
    with ctx.active():
        d = b - a
        dd = d.norm2()
        for j in range(6):
            edge = LineSegment(rotated[j], rotated[(j + 1) % 6])
            try:
                p = line_intersection(side, edge, ctx)
            except DegenerateInputError:
                continue
            t = (p - a).dot(d) / dd
            e = edge.end - edge.start
            u = (p - edge.start).dot(e) / e.norm2()
            if -tol <= t <= 1 + tol and -tol <= u <= 1 + tol:
                found.append((t, p))
    found.sort(key=lambda tp: tp[0])
    if len(found) != 2:
        raise DegeneracyError(f"side {VERTEX_NAMES[k]}{VERTEX_NAMES[(k + 1) % 6]} meets H' {len(found)} times")
    return found[0][1], found[1][1]


def _rotate(p: Point, s: Decimal, c: Decimal) -> Point:
    return Point(c * p.x - s * p.y, s * p.x + c * p.y)


def build_hexagons(sigma: Decimal, ctx: PrecisionContext, frame: Decimal = Decimal(0)) -> HexPair:
    """H and H' for slant ``sigma`` (radians), optionally turned by ``frame``."""
    limit = radians(Decimal(SIGMA_MAX_DEG), ctx)
    if not (0 <= sigma < limit):
        raise ParameterError(f"sigma must lie in [0, 10) degrees, got {sigma} rad")
    with ctx.active():
        pi = const_pi(ctx)
        circumradius = 1 / eval_sqrt(Decimal(3), ctx)
        hexagon = []
        for k in range(6):
            s, c = eval_sin_cos(frame + pi / 3 * (k + 1), ctx)
            hexagon.append(Point(circumradius * c, circumradius * s))
        s, c = eval_sin_cos(-(pi / 6 + sigma), ctx)
        rotated = [_rotate(p, s, c) for p in hexagon]
    crossings = tuple(_side_points(hexagon, rotated, k, ctx) for k in range(6))
    return HexPair(tuple(hexagon), tuple(rotated), sigma, frame, ctx.digits, crossings)


def _reflect_across(p: Point, a: Point, b: Point, ctx: PrecisionContext) -> Point:
    with ctx.active():
        d = b - a
        t = (p - a).dot(d) / d.norm2()
        foot = a + d * t
        return foot * 2 - p


@dataclass(frozen=True)
class NamedPoints:
    O: Point
    N: Point
    L: Point
    M: Point
    W: Point
    X: Point
    Y: Point
    triangles: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {name: getattr(self, name) for name in POINT_NAMES}


def mirror(hp: HexPair, p: Point) -> Point:
    """Reflection about the axis through the center and M."""
    ctx = hp.ctx
    center = Point(Decimal(0), Decimal(0))
    return _reflect_across(p, center, midpoint(hp.vertex("D1"), hp.vertex("E1"), ctx), ctx)


def _unit(center: Point) -> Circle:
    return Circle(center, Decimal(1))


def _meet(a: Point, b: Point, toward: Point, names: str, ctx: PrecisionContext) -> Point:
    pts = circle_circle_intersection(_unit(a), _unit(b), ctx)
    if not pts:
        raise DegeneracyError(f"unit circles about {names} do not meet", {names[0]: a, names[1]: b})
    return nearest(pts, toward, ctx)


def locate_points(hp: HexPair) -> NamedPoints:
    ctx = hp.ctx
    if hp.sigma <= 0:
        raise DegeneracyError("sigma = 0: the slanted cut points coincide with dodecagon vertices")
    a1 = hp.vertex("A1")
    O = hp.side_points(2)[0]          # triangle C's corner on C1D1
    N = hp.side_points(3)[1]          # triangle E's corner on D1E1
    M = midpoint(hp.vertex("D1"), hp.vertex("E1"), ctx)
    # triangle F's corner on E1F1, mirrored onto C1D1: the corner of F'
    L = mirror(hp, hp.side_points(4)[1])
    X = _meet(O, N, a1, "ON", ctx)
    W = _meet(O, M, a1, "OM", ctx)
    Y = _meet(N, L, a1, "NL", ctx)
    tol = ctx.tol(10)
    with ctx.active():
        for (p, q), names in (((W, X), "WX"), ((X, Y), "XY"), ((W, Y), "WY")):
            if (p - q).norm2() <= tol * tol:
                raise DegeneracyError(f"points {names[0]} and {names[1]} coincide", {names[0]: p, names[1]: q})
    triangles = {label: hp.triangle(label) for label in TRIANGLE_NAMES}
    return NamedPoints(O, N, L, M, W, X, Y, triangles)


def _tangent_point(center: Point, a: Point, b: Point, ctx: PrecisionContext) -> Point:
    """Where the unit arc about ``center`` meets the covering edge ``ab``; nearest ``b``."""
    pts = circle_line_intersection(_unit(center), LineSegment(a, b), ctx)
    if not pts:
        raise DegeneracyError("unit arc misses the opposite hexagon side", {"center": center})
    return nearest(pts, b, ctx)


def _boundary_from(hp: HexPair, O: Point, N: Point, cut: list) -> CoveringBoundary:
    # H without triangles C and E, with the corner at A1 replaced by ``cut``
    a, b = hp.vertex("F1"), hp.vertex("B1")
    c_b, c_d = hp.side_points(1)[1], hp.side_points(2)[0]
    e_d, e_f = hp.side_points(3)[1], hp.side_points(4)[0]
    first, last = cut[0].start, cut[-1].end
    chain = [LineSegment(a, first), *cut, LineSegment(last, b), LineSegment(b, c_b),
             LineSegment(c_b, c_d), LineSegment(c_d, hp.vertex("D1")),
             LineSegment(hp.vertex("D1"), e_d), LineSegment(e_d, e_f), LineSegment(e_f, a)]
    return CoveringBoundary(tuple(chain))


def arc_ends(hp: HexPair, np: NamedPoints) -> tuple[Point, Point]:
    """Where the arcs about O and N leave sides F1A1 and A1B1."""
    ctx = hp.ctx
    a1 = hp.vertex("A1")
    t_o = _tangent_point(np.O, hp.vertex("F1"), a1, ctx)
    t_n = _tangent_point(np.N, hp.vertex("B1"), a1, ctx)
    return t_o, t_n


def assemble_boundary(hp: HexPair, np: NamedPoints) -> CoveringBoundary:
    t_o, t_n = arc_ends(hp, np)
    cut = [ArcSegment(np.O, Decimal(1), t_o, np.W, CCW), LineSegment(np.W, np.Y),
           ArcSegment(np.N, Decimal(1), np.Y, t_n, CCW)]
    boundary = _boundary_from(hp, np.O, np.N, cut)
    try:
        boundary.validate(hp.ctx)
    except MalformedBoundaryError as exc:
        raise MalformedBoundaryError(f"construction at sigma={hp.sigma} is not convex: {exc}") from None
    return boundary


def arcs_through_x(hp: HexPair, np: NamedPoints) -> CoveringBoundary:
    """The covering before region WXY is cut off: arcs about O and N meet at X."""
    t_o, t_n = arc_ends(hp, np)
    cut = [ArcSegment(np.O, Decimal(1), t_o, np.X, CCW), ArcSegment(np.N, Decimal(1), np.X, t_n, CCW)]
    return _boundary_from(hp, np.O, np.N, cut)


def _in_triangle(p: Point, tri: tuple, ctx: PrecisionContext) -> bool:
    tol = ctx.tol(5)
    with ctx.active():
        a, b, c = tri
        orient = (b - a).cross(c - a)
        sign = 1 if orient > 0 else -1
        for u, v in ((a, b), (b, c), (c, a)):
            if sign * (v - u).cross(p - u) < -tol:
                return False
    return True


def wxy_probe_points(hp: HexPair, np: NamedPoints) -> list[Point]:
    ctx = hp.ctx
    return [np.W, np.X, np.Y,
            ArcSegment(np.O, Decimal(1), np.W, np.X, CCW).midpoint(ctx),
            ArcSegment(np.N, Decimal(1), np.X, np.Y, CCW).midpoint(ctx)]


def reflected_triangle(hp: HexPair, label: str) -> tuple:
    return tuple(mirror(hp, p) for p in hp.triangle(label))


def check_case1_containment(np: NamedPoints, hp: HexPair) -> bool:
    """Is region WXY inside B', the mirror image of triangle B?

    WXY is bounded by the chord WY and two unit arcs a few thousandths long.
    Along such an arc any linear function is unimodal, and the arc strays
    from its chord by under a millionth, so with B' convex the three corners
    plus the two arc midpoints decide containment.  Dense arc sampling in the
    tests backs this up.
    """
    tri = reflected_triangle(hp, "B")
    return all(_in_triangle(p, tri, hp.ctx) for p in wxy_probe_points(hp, np))


@dataclass(frozen=True)
class ConstructionReport:
    sigma: Decimal
    digits: int
    points: NamedPoints
    boundary: CoveringBoundary
    area: Decimal
    angle_WYL: Decimal
    angle_MWY: Decimal
    wxy_in_Bprime: bool
    constraints_ok: bool
    frame: Decimal = Decimal(0)

    def to_dict(self) -> dict:
        return {
            "sigma": str(self.sigma),
            "digits": self.digits,
            "frame": str(self.frame),
            "area": str(self.area),
            "angle_WYL": str(self.angle_WYL),
            "angle_MWY": str(self.angle_MWY),
            "wxy_in_Bprime": self.wxy_in_Bprime,
            "constraints_ok": self.constraints_ok,
            "points": {k: _point_out(p) for k, p in self.points.as_dict().items()},
            "triangles": {k: [_point_out(p) for p in tri] for k, tri in self.points.triangles.items()},
            "boundary": [_element_out(e) for e in self.boundary.elements],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ConstructionReport":
        pts = {k: _point_in(v) for k, v in data["points"].items()}
        triangles = {k: tuple(_point_in(p) for p in tri) for k, tri in data["triangles"].items()}
        return cls(
            sigma=Decimal(data["sigma"]),
            digits=int(data["digits"]),
            points=NamedPoints(**pts, triangles=triangles),
            boundary=CoveringBoundary(tuple(_element_in(e) for e in data["boundary"])),
            area=Decimal(data["area"]),
            angle_WYL=Decimal(data["angle_WYL"]),
            angle_MWY=Decimal(data["angle_MWY"]),
            wxy_in_Bprime=bool(data["wxy_in_Bprime"]),
            constraints_ok=bool(data["constraints_ok"]),
            frame=Decimal(data.get("frame", "0")),
        )


def _point_out(p: Point) -> list:
    return [str(p.x), str(p.y)]


def _point_in(v) -> Point:
    return Point(Decimal(v[0]), Decimal(v[1]))


def _element_out(e) -> dict:
    if isinstance(e, LineSegment):
        return {"type": "line", "start": _point_out(e.start), "end": _point_out(e.end)}
    return {"type": "arc", "center": _point_out(e.center), "radius": str(e.radius),
            "start": _point_out(e.start), "end": _point_out(e.end), "orientation": e.orientation}


def _element_in(d: dict):
    if d["type"] == "line":
        return LineSegment(_point_in(d["start"]), _point_in(d["end"]))
    return ArcSegment(_point_in(d["center"]), Decimal(d["radius"]), _point_in(d["start"]),
                      _point_in(d["end"]), d["orientation"])


def construct(sigma: Decimal, ctx: PrecisionContext, frame: Decimal = Decimal(0)) -> ConstructionReport:
    hp = build_hexagons(sigma, ctx, frame)
    np = locate_points(hp)
    boundary = assemble_boundary(hp, np)
    area = region_area(boundary, ctx)
    wyl = interior_angle(np.Y, np.W, np.L, ctx)
    mwy = interior_angle(np.W, np.M, np.Y, ctx)
    inside = check_case1_containment(np, hp)
    with ctx.active():
        right = const_pi(ctx) / 2
    ok = wyl >= right and mwy >= right and inside
    return ConstructionReport(sigma, ctx.digits, np, boundary, area, wyl, mwy, inside, ok, frame)


def wxy_area(sigma: Decimal, ctx: PrecisionContext) -> Decimal:
    """Area of the sliver WXY removed in the last step."""
    hp = build_hexagons(sigma, ctx)
    np = locate_points(hp)
    with ctx.active():
        return region_area(arcs_through_x(hp, np), ctx) - region_area(assemble_boundary(hp, np), ctx)


# -- earlier stages, for regression -----------------------------------------

def hexagon_boundary(ctx: PrecisionContext) -> CoveringBoundary:
    return polygon(build_hexagons(Decimal(0), ctx).hexagon)


def dodecagon_boundary(ctx: PrecisionContext) -> CoveringBoundary:
    """H intersected with H' at zero slant."""
    hp = build_hexagons(Decimal(0), ctx)
    pts = []
    for k in range(6):
        pts.extend(hp.side_points(k))
    return polygon(pts)


def pal_boundary(ctx: PrecisionContext) -> CoveringBoundary:
    """H with triangles C and E removed, at zero slant."""
    hp = build_hexagons(Decimal(0), ctx)
    v = dict(zip(VERTEX_NAMES, hp.hexagon))
    return polygon([v["A1"], v["B1"], hp.side_points(1)[1], hp.side_points(2)[0], v["D1"],
                    hp.side_points(3)[1], hp.side_points(4)[0], v["F1"]])


def arcs_boundary(sigma: Decimal, ctx: PrecisionContext) -> CoveringBoundary:
    """Pal's covering with the corner at A1 trimmed by the unit arcs about O and N.

    At zero slant this is Sprague's covering.
    """
    hp = build_hexagons(sigma, ctx)
    a1 = hp.vertex("A1")
    O = hp.side_points(2)[0]
    N = hp.side_points(3)[1]
    X = _meet(O, N, a1, "ON", ctx)
    np = NamedPoints(O, N, O, O, X, X, X)
    return arcs_through_x(hp, np)


# -- mutation for the validation harness ------------------------------------

def wxy_boundary(np: NamedPoints) -> CoveringBoundary:
    """Region WXY itself, counterclockwise: arc W->X about O, arc X->Y about N, chord Y->W."""
    one = Decimal(1)
    return CoveringBoundary((ArcSegment(np.O, one, np.W, np.X, CCW), ArcSegment(np.N, one, np.X, np.Y, CCW),
                             LineSegment(np.Y, np.W)))


def inflated_wxy(report: ConstructionReport, factor: Decimal) -> CoveringBoundary:
    """Region WXY scaled about X so that its area grows by ``factor``."""
    ctx = PrecisionContext(report.digits)
    np = report.points
    with ctx.active():
        k = eval_sqrt(factor, ctx)
        x = np.X

        def grow(p: Point) -> Point:
            return x + (p - x) * k

        return CoveringBoundary((ArcSegment(grow(np.O), k, grow(np.W), x, CCW),
                                 ArcSegment(grow(np.N), k, x, grow(np.Y), CCW),
                                 LineSegment(grow(np.Y), grow(np.W))))
