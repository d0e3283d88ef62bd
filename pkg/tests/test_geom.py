import math
import random
from decimal import Decimal, localcontext

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lebesgue.cover import build_hexagons, hexagon_boundary
from lebesgue.geom import (
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
    circular_segment_area,
    interior_angle,
    polygon,
    region_area,
    rigid_motion,
)
from lebesgue.scalar import PrecisionContext, const_pi, degrees, eval_sqrt, parse

D = Decimal


def P(x, y):
    return Point(D(x), D(y))


def close(a, b, tol):
    with localcontext() as c:
        c.prec = 500
        return abs(a - b) <= tol


def test_unit_circles_meet_symmetrically(ctx50):
    pts = circle_circle_intersection(Circle(P(0, 0), D(1)), Circle(P(1, 0), D(1)), ctx50)
    assert len(pts) == 2
    with ctx50.active():
        h = eval_sqrt(D(3), ctx50) / 2
    lo, hi = pts
    assert lo.x == D("0.5") and hi.x == D("0.5")
    assert close(lo.y.copy_negate(), h, ctx50.tol(2)) and close(hi.y, h, ctx50.tol(2))


def test_separate_circles_do_not_meet(ctx50):
    assert circle_circle_intersection(Circle(P(0, 0), D(1)), Circle(P(3, 0), D(1)), ctx50) == ()


def test_tangent_circles(ctx50):
    pts = circle_circle_intersection(Circle(P(0, 0), D(1)), Circle(P(2, 0), D(1)), ctx50)
    assert pts == (P(1, 0),)


def test_concentric_is_degenerate(ctx50):
    with pytest.raises(DegenerateInputError):
        circle_circle_intersection(Circle(P(0, 0), D(1)), Circle(P(0, 0), D(2)), ctx50)


def test_x_matches_float_oracle(report13):
    o, n = report13.points.O.as_floats(), report13.points.N.as_floats()
    dx, dy = n[0] - o[0], n[1] - o[1]
    d = math.hypot(dx, dy)
    h = math.sqrt(1 - d * d / 4)
    mx, my = (o[0] + n[0]) / 2, (o[1] + n[1]) / 2
    cands = [(mx - h * dy / d, my + h * dx / d), (mx + h * dy / d, my - h * dx / d)]
    x = max(cands, key=lambda p: p[1])
    got = report13.points.X.as_floats()
    assert math.hypot(got[0] - x[0], got[1] - x[1]) < 1e-12


@settings(max_examples=60, deadline=None)
@given(st.floats(-2, 2), st.floats(-2, 2), st.floats(0.3, 1.5), st.floats(0.3, 1.5), st.floats(-2, 2), st.floats(-2, 2))
def test_intersections_lie_on_both_circles(ax, ay, ra, rb, bx, by):
    ctx = PrecisionContext(40)
    a = Circle(Point(parse(repr(ax), ctx), parse(repr(ay), ctx)), parse(repr(ra), ctx))
    b = Circle(Point(parse(repr(bx), ctx), parse(repr(by), ctx)), parse(repr(rb), ctx))
    if a.center == b.center:
        return
    pts = circle_circle_intersection(a, b, ctx)
    with ctx.active():
        for p in pts:
            for c in (a, b):
                r = eval_sqrt((p - c.center).norm2(), ctx)
                assert abs(r - c.radius) < ctx.tol(5) * 10 ** 10 if len(pts) == 1 else abs(r - c.radius) < ctx.tol(5)
        if len(pts) == 2:
            assert (pts[0].y, pts[0].x) <= (pts[1].y, pts[1].x)


def test_circle_line_cases(ctx50):
    unit = Circle(P(0, 0), D(1))
    assert circle_line_intersection(unit, LineSegment(P(-1, 1), P(1, 1)), ctx50) == (P(0, 1),)
    assert circle_line_intersection(unit, LineSegment(P(-3, 0), P(5, 0)), ctx50) == (P(-1, 0), P(1, 0))
    assert circle_line_intersection(unit, LineSegment(P(-1, 2), P(1, 2)), ctx50) == ()


def test_circle_about_w_against_side_c1d1(ctx50, report13):
    hp = build_hexagons(report13.sigma, ctx50)
    side = LineSegment(hp.vertex("D1"), hp.vertex("C1"))
    pts = circle_line_intersection(Circle(report13.points.W, D(1)), side, ctx50)
    assert len(pts) == 2
    w = report13.points.W.as_floats()
    a, b = side.start.as_floats(), side.end.as_floats()
    dx, dy = b[0] - a[0], b[1] - a[1]
    fx, fy = a[0] - w[0], a[1] - w[1]
    qa, qb, qc = dx * dx + dy * dy, 2 * (fx * dx + fy * dy), fx * fx + fy * fy - 1
    disc = math.sqrt(qb * qb - 4 * qa * qc)
    oracle = sorted(((a[0] + dx * t, a[1] + dy * t) for t in ((-qb - disc) / (2 * qa), (-qb + disc) / (2 * qa))),
                    key=lambda p: (p[1], p[0]))
    for got, want in zip(pts, oracle):
        g = got.as_floats()
        assert math.hypot(g[0] - want[0], g[1] - want[1]) < 1e-12
        with ctx50.active():
            assert abs((got - report13.points.W).norm2() - 1) < ctx50.tol(5)


def test_interior_angle(ctx50):
    with ctx50.active():
        assert interior_angle(P(0, 0), P(1, 0), P(0, 1), ctx50) == const_pi(ctx50) / 2
    with pytest.raises(DegenerateInputError):
        interior_angle(P(0, 0), P(0, 0), P(0, 1), ctx50)


def test_paper_angles(ctx50, report13):
    assert abs(degrees(report13.angle_WYL, ctx50) - D("90.00593")) < D("1e-5")
    assert abs(degrees(report13.angle_MWY, ctx50) - D("122.9277")) < D("1e-4")


def test_segment_area_closed_forms(ctx50):
    with ctx50.active():
        # a diameter chord: theta = pi, the segment is the half-disk
        assert close(circular_segment_area(D(1), D(2), ctx50), const_pi(ctx50) / 2, ctx50.tol(1))
        # a quarter-turn chord: pi/4 - 1/2
        chord = eval_sqrt(D(2), ctx50)
        assert close(circular_segment_area(D(1), chord, ctx50), const_pi(ctx50) / 4 - D("0.5"), ctx50.tol(2))
    assert circular_segment_area(D(1), D(0), ctx50) == 0
    with pytest.raises(GeometryError):
        circular_segment_area(D(1), D("2.01"), ctx50)


def test_segment_area_tiny_chord_has_no_cancellation():
    ctx = PrecisionContext(50)
    # theta ~ 1e-13: (theta - sin theta)/2 ~ theta**3/12, all digits significant
    seg = circular_segment_area(D(1), D("1e-13"), ctx)
    with ctx.active():
        want = D("1e-13") ** 3 / 12
        assert abs(seg / want - 1) < D("1e-20")


def _disk(ctx):
    r = D("0.5")
    quarter = [P(r, 0), P(0, r), P(-r, 0), P(0, -r)]
    return CoveringBoundary(tuple(ArcSegment(P(0, 0), r, quarter[i], quarter[(i + 1) % 4]) for i in range(4)))


def test_disk_area(ctx50):
    with ctx50.active():
        assert close(region_area(_disk(ctx50), ctx50), const_pi(ctx50) / 4, ctx50.tol(2))
    _disk(ctx50).validate(ctx50)


def test_hexagon_area(ctx50):
    with ctx50.active():
        assert close(region_area(hexagon_boundary(ctx50), ctx50), eval_sqrt(D(3), ctx50) / 2, ctx50.tol(2))


def test_headline_area_agrees_with_double_precision_value(ctx50, report13):
    # the published figure is a float64 result; allow a few units in its last place
    ulp = D(2) ** -53
    assert abs(region_area(report13.boundary, ctx50) - D("0.8441153768593765")) <= 4 * ulp


def test_polygon_area_is_plain_shoelace(ctx50):
    pts = [P(0, 0), P(3, 0), P("3.5", 2), P(1, "2.5")]
    twice = sum(pts[i].x * pts[(i + 1) % 4].y - pts[(i + 1) % 4].x * pts[i].y for i in range(4))
    assert region_area(polygon(pts), ctx50) == twice / 2


def test_invariant_under_rotation_of_list_and_rigid_motion(ctx50, report13):
    base = report13.boundary
    a0 = region_area(base, ctx50)
    assert abs(region_area(base.rotated(5), ctx50) - a0) <= ctx50.tol(10)
    rng = random.Random(3)
    for _ in range(3):
        theta = parse(repr(rng.uniform(-3, 3)), ctx50)
        moved = rigid_motion(base, theta, parse(repr(rng.uniform(-5, 5)), ctx50),
                             parse(repr(rng.uniform(-5, 5)), ctx50), ctx50)
        assert abs(region_area(moved, ctx50) - a0) <= ctx50.tol(10)


def test_chord_replacement_shrinks_area(ctx50, report13):
    elems = list(report13.boundary.elements)
    a0 = region_area(report13.boundary, ctx50)
    for i, e in enumerate(elems):
        if isinstance(e, ArcSegment):
            cut = elems[:i] + [LineSegment(e.start, e.end)] + elems[i + 1:]
            assert region_area(CoveringBoundary(tuple(cut)), ctx50) < a0


def test_open_chain_is_rejected(ctx50):
    broken = CoveringBoundary((LineSegment(P(0, 0), P(1, 0)), LineSegment(P(1, 0), P(0, 1)),
                               LineSegment(P(0, 1), P("0.1", 0))))
    with pytest.raises(MalformedBoundaryError):
        region_area(broken, ctx50)


def test_clockwise_polygon_is_rejected(ctx50):
    with pytest.raises(MalformedBoundaryError):
        region_area(polygon([P(0, 0), P(0, 1), P(1, 0)]), ctx50)


def test_nonconvex_polygon_fails_validation(ctx50):
    dart = polygon([P(0, 0), P(2, 0), P("0.5", "0.5"), P(0, 2)])
    assert not dart.is_convex(ctx50)
    assert hexagon_boundary(ctx50).is_convex(ctx50)


def test_degenerate_primitives():
    with pytest.raises(DegenerateInputError):
        LineSegment(P(1, 1), P(1, 1))
    with pytest.raises(DegenerateInputError):
        Circle(P(0, 0), D(0))


def test_arc_midpoint_lies_on_arc(ctx50):
    arc = ArcSegment(P(0, 0), D(1), P(1, 0), P(0, 1))
    m = arc.midpoint(ctx50)
    with ctx50.active():
        h = eval_sqrt(D(2), ctx50) / 2
    assert close(m.x, h, ctx50.tol(2)) and close(m.y, h, ctx50.tol(2))
