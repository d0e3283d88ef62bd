"""Falsification harness: place constant-width curves in the covering and look for leaks.

Everything here runs in machine floats (numpy float64).  A curve of constant
width 1 is given by its support function h and support point p; the
generators are Minkowski combinations of Reuleaux polygons and a disk, which
keep the width exactly 1.

Placement follows the covering argument step by step:

1. turn and shift the curve so it touches all six sides of the hexagon;
2. among the six 60-degree turns, keep those that stay out of corner
   triangles C and E;
3. dispatch on whether the curve enters E' or C' (the mirror images of E and
   C about the axis through M); if neither, mirror the curve when that moves
   its contact with side D1E1 onto the left half.

Every turn allowed by step 2 is tried and the worst one is reported, so a
single bad rule-following placement counts as a failure.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import brentq

from .cover import ConstructionReport
from .geom import ArcSegment, CoveringBoundary

__all__ = [
    "Curve",
    "CurveError",
    "FloatCovering",
    "PlacementResult",
    "batch",
    "make_curve",
    "place_in_covering",
    "standard_mix",
]

CONTAINMENT_TOL = 1e-10
WIDTH_TOL = 1e-12
# a curve enters an open corner triangle only if its support beats 1/2 by this
ENTER_TOL = 1e-12
DEFAULT_SAMPLES = 10_000
KINDS = ("disk", "reuleaux", "perturbed_reuleaux")


class CurveError(ValueError):
    pass


def _unit(phi):
    return np.stack([np.cos(phi), np.sin(phi)], axis=-1)


@dataclass(frozen=True)
class _Reuleaux:
    n: int
    phase: float

    @property
    def circumradius(self) -> float:
        return 1.0 / (2.0 * math.cos(math.pi / (2 * self.n)))

    def vertices(self) -> np.ndarray:
        ang = self.phase + 2 * math.pi * np.arange(self.n) / self.n
        return self.circumradius * _unit(ang)

    def support_point(self, phi) -> np.ndarray:
        # 2n cones of width pi/n; even cones pin a vertex, odd cones run
        # along the arc centered at the opposite vertex
        n = self.n
        phi = np.asarray(phi, dtype=float)
        m = np.floor((phi - self.phase) / (math.pi / n) + 0.5).astype(np.int64) % (2 * n)
        v = self.vertices()
        odd = m % 2 == 1
        k = np.where(odd, ((m - n) // 2) % n, (m // 2) % n)
        pts = v[k]
        return np.where(odd[..., None], pts + _unit(phi), pts)


@dataclass(frozen=True)
class Curve:
    """Constant-width-1 body: ``disk`` weight plus weighted Reuleaux parts, centered at the origin."""

    kind: str
    seed: int
    n: int
    parts: tuple = ()
    disk: float = 1.0

    @property
    def curve_id(self) -> str:
        if self.kind == "disk":
            return "disk"
        return f"{self.kind}({self.n},seed={self.seed})"

    def support_point(self, phi) -> np.ndarray:
        phi = np.asarray(phi, dtype=float)
        p = self.disk * 0.5 * _unit(phi)
        for w, r in self.parts:
            p = p + w * r.support_point(phi)
        return p

    def support(self, phi) -> np.ndarray:
        return np.sum(self.support_point(phi) * _unit(phi), axis=-1)

    def boundary(self, samples: int = DEFAULT_SAMPLES) -> np.ndarray:
        phi = 2 * math.pi * np.arange(samples) / samples
        # corners soak up whole cones of directions, so arcs and corners are both covered
        return self.support_point(phi)

    def area(self, samples: int = 200_000) -> float:
        """``(1/2) * integral of h**2 - h'**2``, with ``h' = p . u'``."""
        phi = 2 * math.pi * np.arange(samples) / samples
        p = self.support_point(phi)
        u = _unit(phi)
        du = np.stack([-np.sin(phi), np.cos(phi)], axis=-1)
        h = np.sum(p * u, axis=-1)
        dh = np.sum(p * du, axis=-1)
        return float(0.5 * np.mean(h * h - dh * dh) * 2 * math.pi)

    def check(self) -> None:
        """Raise :class:`CurveError` unless the width is 1 and support points are consistent."""
        phi = 2 * math.pi * np.arange(360) / 360
        width = self.support(phi) + self.support(phi + math.pi)
        err = float(np.max(np.abs(width - 1.0)))
        if err > WIDTH_TOL:
            raise CurveError(f"{self.curve_id}: width deviates from 1 by {err:.3e}")
        # convexity: every support point lies in every supporting half-plane
        dirs = 2 * math.pi * np.arange(720) / 720
        pts = self.support_point(dirs)
        slack = pts @ _unit(dirs).T - self.support(dirs)[None, :]
        worst = float(slack.max())
        if worst > WIDTH_TOL:
            raise CurveError(f"{self.curve_id}: support points violate a supporting line by {worst:.3e}")


def make_curve(kind: str, seed: int = 0, n: int = 3) -> Curve:
    """``disk``, ``reuleaux`` (random phase) or ``perturbed_reuleaux``.

    The perturbed kind keeps a Reuleaux n-gon as the dominant part and mixes
    in up to three random Reuleaux polygons and a disk.
    """
    if kind not in KINDS:
        raise CurveError(f"unknown curve kind {kind!r}; expected one of {', '.join(KINDS)}")
    if kind == "disk":
        curve = Curve("disk", seed, 0)
    else:
        if n < 3 or n % 2 == 0:
            raise CurveError(f"Reuleaux polygons need an odd n >= 3, got {n}")
        rng = np.random.default_rng(seed)
        base = _Reuleaux(n, float(rng.uniform(0, 2 * math.pi / n)))
        if kind == "reuleaux":
            curve = Curve(kind, seed, n, ((1.0, base),), 0.0)
        else:
            extra = int(rng.integers(1, 4))
            raw = rng.dirichlet(np.ones(extra + 1))
            main = float(rng.uniform(0.5, 0.9))
            weights = (1 - main) * raw
            parts = [(main, base)]
            for w in weights[:extra]:
                m = int(rng.choice([3, 5, 7, 9, 11]))
                parts.append((float(w), _Reuleaux(m, float(rng.uniform(0, 2 * math.pi / m)))))
            disk = 1.0 - sum(w for w, _ in parts)
            curve = Curve(kind, seed, n, tuple(parts), disk)
    curve.check()
    return curve


# -- the covering in floats --------------------------------------------------

@dataclass
class FloatCovering:
    """Signed distance to a convex region bounded by segments and ccw arcs."""

    starts: np.ndarray
    ends: np.ndarray
    centers: np.ndarray
    radii: np.ndarray
    is_arc: np.ndarray

    @classmethod
    def from_boundary(cls, boundary: CoveringBoundary) -> "FloatCovering":
        starts, ends, centers, radii, arcs = [], [], [], [], []
        for e in boundary.elements:
            starts.append(e.start.as_floats())
            ends.append(e.end.as_floats())
            if isinstance(e, ArcSegment):
                if e.orientation != "ccw":
                    raise ValueError("only outward arcs are supported")
                centers.append(e.center.as_floats())
                radii.append(float(e.radius))
                arcs.append(True)
            else:
                centers.append((0.0, 0.0))
                radii.append(0.0)
                arcs.append(False)
        return cls(np.array(starts), np.array(ends), np.array(centers), np.array(radii), np.array(arcs))

    def polygon(self, per_arc: int = 1) -> np.ndarray:
        """Boundary vertices in order; each arc split into ``per_arc`` chords."""
        out = []
        for a, b, c, r, arc in zip(self.starts, self.ends, self.centers, self.radii, self.is_arc):
            if not arc or per_arc <= 1:
                out.append(a[None, :])
                continue
            a0 = math.atan2(a[1] - c[1], a[0] - c[0])
            a1 = math.atan2(b[1] - c[1], b[0] - c[0])
            if a1 < a0:
                a1 += 2 * math.pi
            t = a0 + (a1 - a0) * np.arange(per_arc) / per_arc
            out.append(c + r * _unit(t))
        return np.concatenate(out)

    def signed_distance(self, p: np.ndarray) -> np.ndarray:
        p = np.atleast_2d(p)
        px, py = p[:, :1], p[:, 1:]
        ax, ay = self.starts[:, 0], self.starts[:, 1]
        dx, dy = self.ends[:, 0] - ax, self.ends[:, 1] - ay
        qx, qy = px - ax, py - ay
        # distance to each chord (exact for the straight elements)
        t = np.clip((qx * dx + qy * dy) / (dx * dx + dy * dy), 0.0, 1.0)
        dist = np.hypot(qx - t * dx, qy - t * dy)
        side = dx * qy - dy * qx
        in_poly = np.all(side >= 0, axis=1)
        in_seg = np.zeros(len(p), dtype=bool)
        for j in np.flatnonzero(self.is_arc):
            c, r = self.centers[j], self.radii[j]
            cx, cy = px[:, 0] - c[0], py[:, 0] - c[1]
            sx, sy = self.starts[j] - c
            ex, ey = self.ends[j] - c
            within = (sx * cy - sy * cx >= 0) & (cx * ey - cy * ex >= 0)
            rad = np.hypot(cx, cy)
            ends = np.minimum(np.hypot(qx[:, j], qy[:, j]),
                              np.hypot(px[:, 0] - self.ends[j, 0], py[:, 0] - self.ends[j, 1]))
            dist[:, j] = np.where(within, np.abs(rad - r), ends)
            in_seg |= (side[:, j] < 0) & (rad <= r)
        d = dist.min(axis=1)
        return np.where(in_poly | in_seg, -d, d)


def _cross(u, v):
    return u[..., 0] * v[..., 1] - u[..., 1] * v[..., 0]


# -- placement ---------------------------------------------------------------

@dataclass(frozen=True)
class _Motion:
    """x -> A x + t with A orthogonal."""

    A: np.ndarray
    t: np.ndarray

    def then(self, other: "_Motion") -> "_Motion":
        return _Motion(other.A @ self.A, other.A @ self.t + other.t)

    def support(self, curve: Curve, phi) -> np.ndarray:
        u = _unit(np.asarray(phi, dtype=float))
        back = u @ self.A          # rows are A^T u
        return curve.support(np.arctan2(back[..., 1], back[..., 0])) + u @ self.t

    def apply(self, pts: np.ndarray) -> np.ndarray:
        return pts @ self.A.T + self.t

    @property
    def reflected(self) -> bool:
        return bool(np.linalg.det(self.A) < 0)

    @property
    def rotation(self) -> float:
        # A = R(theta) or R(theta) * diag(-1, 1); either way A e2 = R(theta) e2
        return math.atan2(-self.A[0, 1], self.A[1, 1])


def _rot(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


MIRROR = _Motion(np.array([[-1.0, 0.0], [0.0, 1.0]]), np.zeros(2))
_SIDE_NORMALS = np.radians([90.0, 210.0, 330.0])


def inscribe(curve: Curve) -> _Motion:
    """Turn and shift ``curve`` so that it touches all six hexagon sides."""
    u = _unit(_SIDE_NORMALS)

    def gap(alpha: float) -> float:
        return float(np.sum(curve.support(_SIDE_NORMALS - alpha)) - 1.5)

    # turning by 60 degrees flips the sign of the gap, so a root exists
    lo, hi = 0.0, math.pi / 3
    g0 = gap(lo)
    alpha = lo if g0 == 0 else brentq(gap, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps)
    h = curve.support(_SIDE_NORMALS - alpha)
    t = np.linalg.solve(u[:2], 0.5 - h[:2])
    return _Motion(_rot(alpha), t)


def _triangle_normals(sigma: float) -> dict:
    # the H' edge cutting the corner at 60 + 60k degrees has normal 60 + 60k - sigma
    names = "ABCDEF"
    out = {}
    for k, name in enumerate(names):
        phi = math.radians(60 + 60 * k) - sigma
        out[name] = phi
        out[name + "'"] = math.pi - phi
    return out


def _enters(motion: _Motion, curve: Curve, normal: float) -> bool:
    return float(motion.support(curve, np.array([normal]))[0]) > 0.5 + ENTER_TOL


@dataclass(frozen=True)
class PlacementResult:
    curve_id: str
    rotation: float
    translation: tuple
    reflected: bool
    contained: bool
    max_violation: float
    case_used: Optional[int]
    candidates: int = 1

    def to_dict(self) -> dict:
        d = asdict(self)
        d["translation"] = list(self.translation)
        return d


def _place_candidates(curve: Curve, sigma: float) -> list[tuple[_Motion, Optional[int]]]:
    normals = _triangle_normals(sigma)
    base = inscribe(curve)
    out = []
    for j in range(6):
        m = base.then(_Motion(_rot(j * math.pi / 3), np.zeros(2)))
        if _enters(m, curve, normals["C"]) or _enters(m, curve, normals["E"]):
            continue
        if _enters(m, curve, normals["E'"]):
            out.append((m, 1))
        elif _enters(m, curve, normals["C'"]):
            out.append((m, 2))
        else:
            # contact with D1E1 should sit between N' and M, i.e. at x <= 0
            touch = m.apply(curve.support_point(_back_angle(m, -math.pi / 2)))
            if touch[0, 0] > 0:
                m = m.then(MIRROR)
            out.append((m, 3))
    return out


def _back_angle(m: _Motion, phi: float) -> np.ndarray:
    v = m.A.T @ np.array([math.cos(phi), math.sin(phi)])
    return np.array([math.atan2(v[1], v[0])])


def _violation(pts: np.ndarray, cov: FloatCovering, removed: Sequence[FloatCovering]) -> float:
    v = cov.signed_distance(pts)
    for hole in removed:
        v = np.maximum(v, -hole.signed_distance(pts))
    return float(v.max())


def place_in_covering(curve: Curve, report: ConstructionReport, samples: int = DEFAULT_SAMPLES,
                      covering: Optional[FloatCovering] = None,
                      removed: Sequence[FloatCovering] = ()) -> PlacementResult:
    """Worst rule-following placement of ``curve``.

    ``removed`` lists extra convex regions cut out of the covering; a sample
    inside one counts as a violation of its depth.
    """
    cov = covering or FloatCovering.from_boundary(report.boundary)
    sigma = float(report.sigma)
    pts = curve.boundary(samples)
    candidates = _place_candidates(curve, sigma)
    if not candidates:
        return PlacementResult(curve.curve_id, 0.0, (0.0, 0.0), False, False, math.inf, None, 0)
    worst = None
    for motion, case in candidates:
        v = _violation(motion.apply(pts), cov, removed)
        if worst is None or v > worst[0]:
            worst = (v, motion, case)
    v, motion, case = worst
    return PlacementResult(curve.curve_id, motion.rotation, tuple(float(x) for x in motion.t), motion.reflected,
                           v <= CONTAINMENT_TOL, v, case, len(candidates))


# -- batches -----------------------------------------------------------------

STANDARD_KINDS = ("disk", "reuleaux:3", "reuleaux:5", "reuleaux:7",
                  "perturbed_reuleaux:3", "perturbed_reuleaux:5", "perturbed_reuleaux:7")


def standard_mix(count: int) -> list[str]:
    return [STANDARD_KINDS[i % len(STANDARD_KINDS)] for i in range(count)]


def parse_kind(spec: str) -> tuple[str, int]:
    kind, _, n = spec.partition(":")
    return kind, int(n) if n else 3


def _curve_seed(seed: int, index: int) -> int:
    return int(np.random.SeedSequence([seed, index]).generate_state(1)[0])


def _run_one(args) -> dict:
    spec, seed, index, cov, removed, report, samples = args
    kind, n = parse_kind(spec)
    curve = make_curve(kind, _curve_seed(seed, index), n)
    res = place_in_covering(curve, report, samples, cov, removed)
    d = res.to_dict()
    d["index"] = index
    d["kind"] = spec
    return d


@dataclass
class BatchSummary:
    count: int = 0
    contained: int = 0
    failures: list = field(default_factory=list)
    worst_violation: Optional[float] = None
    worst_curve: Optional[str] = None
    cases: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def batch(curves: Sequence[str], report: ConstructionReport, seed: int, samples: int = DEFAULT_SAMPLES,
          removed: Sequence[CoveringBoundary] = (), workers: int = 1) -> BatchSummary:
    """Place every curve; results are merged in curve order whatever ``workers`` is.

    ``removed`` cuts extra regions out of the covering, for mutation tests.
    """
    cov = FloatCovering.from_boundary(report.boundary)
    holes = tuple(FloatCovering.from_boundary(r) for r in removed)
    jobs = [(spec, seed, i, cov, holes, report, samples) for i, spec in enumerate(curves)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_run_one, jobs, chunksize=16))
    else:
        results = [_run_one(j) for j in jobs]
    summary = BatchSummary(count=len(results))
    for r in results:
        key = str(r["case_used"])
        summary.cases[key] = summary.cases.get(key, 0) + 1
        if r["contained"]:
            summary.contained += 1
        else:
            summary.failures.append(r)
        if summary.worst_violation is None or r["max_violation"] > summary.worst_violation:
            summary.worst_violation = r["max_violation"]
            summary.worst_curve = r["curve_id"]
    summary.cases = dict(sorted(summary.cases.items()))
    return summary
