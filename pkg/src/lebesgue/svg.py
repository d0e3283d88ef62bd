"""SVG figures of the construction, with zoomed frames around named points.

World coordinates are mapped to a square canvas in Decimal arithmetic, so a
frame a millionth wide still places every vertex exactly.  Arcs are always
written as SVG elliptical-arc commands.
"""

from __future__ import annotations

from decimal import Context, Decimal
from typing import Optional
from xml.sax.saxutils import escape

from .cover import TRIANGLE_NAMES, VERTEX_NAMES, ConstructionReport, build_hexagons
from .geom import ArcSegment, CoveringBoundary, Point
from .scalar import PrecisionContext, const_pi, fmt

__all__ = ["FULL_VIEW", "CANVAS", "ZOOM_NAMES", "Frame", "frame_for", "render"]

CANVAS = 800
FULL_VIEW = Decimal("1.4")
ZOOM_NAMES = ("O", "N", "L", "M", "W", "X", "Y") + VERTEX_NAMES
_PLACES = 6

TRIANGLE_FILL = "#d9d9d9"
COVER_FILL = "#cfe3f7"


class UnknownPointError(KeyError):
    pass


class Frame:
    """A square world window mapped onto the canvas, y axis pointing up."""

    def __init__(self, center: Point, width: Decimal, ctx: PrecisionContext):
        self.center = center
        self.width = width
        self.ctx = ctx
        with ctx.active():
            self.k = Decimal(CANVAS) / width

    def to_px(self, p: Point) -> tuple[Decimal, Decimal]:
        with self.ctx.active():
            half = Decimal(CANVAS) / 2
            return (p.x - self.center.x) * self.k + half, half - (p.y - self.center.y) * self.k

    def contains(self, p: Point) -> bool:
        x, y = self.to_px(p)
        return 0 <= x <= CANVAS and 0 <= y <= CANVAS


def _num(v: Decimal) -> str:
    room = Context(prec=max(28, v.adjusted() + _PLACES + 4))
    q = v.quantize(Decimal(1).scaleb(-_PLACES), context=room)
    s = format(q, "f").rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def named_points(report: ConstructionReport, ctx: PrecisionContext) -> dict:
    hp = build_hexagons(report.sigma, ctx, report.frame)
    pts = dict(zip(VERTEX_NAMES, hp.hexagon))
    pts.update(report.points.as_dict())
    return pts


def frame_for(report: ConstructionReport, ctx: PrecisionContext, zoom: Optional[str] = None,
              scale: Decimal = Decimal(1)) -> Frame:
    """Frame of width ``FULL_VIEW / scale`` around a named point or ``"x,y"``."""
    if scale <= 0:
        raise ValueError("scale must be positive")
    if zoom is None:
        center = Point(Decimal(0), Decimal(0))
    elif "," in zoom:
        x, y = zoom.split(",", 1)
        center = Point(Decimal(x.strip()), Decimal(y.strip()))
    else:
        pts = named_points(report, ctx)
        if zoom not in pts:
            raise UnknownPointError(zoom)
        center = pts[zoom]
    with ctx.active():
        return Frame(center, FULL_VIEW / scale, ctx)


def _path(boundary: CoveringBoundary, frame: Frame) -> str:
    ctx = frame.ctx
    first = frame.to_px(boundary.elements[0].start)
    parts = [f"M {_num(first[0])} {_num(first[1])}"]
    for e in boundary.elements:
        x, y = frame.to_px(e.end)
        if isinstance(e, ArcSegment):
            with ctx.active():
                r = e.radius * frame.k
                large = 1 if e.sweep(ctx) > const_pi(ctx) else 0
            # y is flipped, so counterclockwise in the plane is sweep-flag 0 on screen
            sweep = 0 if e.orientation == "ccw" else 1
            parts.append(f"A {_num(r)} {_num(r)} 0 {large} {sweep} {_num(x)} {_num(y)}")
        else:
            parts.append(f"L {_num(x)} {_num(y)}")
    parts.append("Z")
    return " ".join(parts)


def _polygon(points, frame: Frame) -> str:
    return " ".join(f"{_num(x)},{_num(y)}" for x, y in (frame.to_px(p) for p in points))


def render(report: ConstructionReport, ctx: PrecisionContext, zoom: Optional[str] = None,
           scale: Decimal = Decimal(1)) -> str:
    frame = frame_for(report, ctx, zoom, scale)
    hp = build_hexagons(report.sigma, ctx, report.frame)
    pts = named_points(report, ctx)
    with ctx.active():
        sigma_deg = report.sigma * 180 / const_pi(ctx)
    title = f"sigma = {fmt(sigma_deg, 12)} deg, area = {fmt(report.area, 20)}"
    if zoom is not None:
        title += f", zoom {zoom} x{scale}"
    stroke = "1.5"
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{CANVAS}" height="{CANVAS}" '
        f'viewBox="0 0 {CANVAS} {CANVAS}">',
        f"<title>{escape(title)}</title>",
        f'<defs><clipPath id="frame"><rect x="0" y="0" width="{CANVAS}" height="{CANVAS}"/></clipPath></defs>',
        '<rect x="0" y="0" width="100%" height="100%" fill="white"/>',
        '<g clip-path="url(#frame)">',
        f'<path class="covering" d="{_path(report.boundary, frame)}" fill="{COVER_FILL}" stroke="#1f4e79" '
        f'stroke-width="{stroke}"/>',
    ]
    for label in TRIANGLE_NAMES:
        tri = hp.triangle(label)
        out.append(f'<polygon class="triangle" data-name="{label}" points="{_polygon(tri, frame)}" '
                   f'fill="{TRIANGLE_FILL}" fill-opacity="0.6" stroke="#777" stroke-width="0.75"/>')
    out.append(f'<polygon class="hexagon" data-name="H" points="{_polygon(hp.hexagon, frame)}" '
               f'fill="none" stroke="black" stroke-width="{stroke}"/>')
    out.append(f'<polygon class="hexagon" data-name="H\'" points="{_polygon(hp.rotated, frame)}" '
               f'fill="none" stroke="#888" stroke-dasharray="6 4" stroke-width="1"/>')
    for name, p in pts.items():
        x, y = frame.to_px(p)
        out.append(f'<circle class="point" data-name="{name}" cx="{_num(x)}" cy="{_num(y)}" r="3" fill="#b00"/>')
        out.append(f'<text x="{_num(x + 5)}" y="{_num(y - 5)}" font-family="sans-serif" font-size="14">'
                   f"{escape(name)}</text>")
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
