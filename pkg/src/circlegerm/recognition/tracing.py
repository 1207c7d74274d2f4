"""Tracing the preimage of a small circle under a plane germ.

For a finitely determined germ and small ``eps`` the set ``|f(p)| = eps`` is
one smooth loop around the origin and ``|f|`` has no critical points inside
it, so a tangent predictor with a Newton corrector along the gradient of
``|f|`` follows it reliably.  Steps are limited by the turning of the
tangent, by the change of ``arg f`` and by the distance to the origin.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np
import shapely

from ..errors import TracingError
from .marks import bracketed_root
from .numeric import CompiledGerm, NumCtx, get_context
from .polynomial import PolyGerm

__all__ = ["TraceConfig", "LevelCurve", "LevelCurveCircle", "trace_level_curve"]


@dataclass(frozen=True)
class TraceConfig:
    turn_cap: float = 0.05
    image_cap: float = 0.05
    rel_step_cap: float = 0.05
    min_rel_step: float = 1e-13
    max_radius: float = 2.0
    residual_tol: float = 1e-10
    max_vertices: int = 400_000
    n_rays: int = 16
    scan_grid: int = 96
    scan_margin: float = 0.1


@dataclass
class LevelCurve:
    epsilon: Any
    points: list[tuple[Any, Any]]
    closed: bool
    image_angles: list[Any] = field(repr=False)
    ctx: NumCtx = field(repr=False)

    def as_array(self) -> np.ndarray:
        return np.array([[float(x), float(y)] for x, y in self.points])

    def __len__(self) -> int:
        return len(self.points)


def _state(cg: CompiledGerm, x, y):
    """``|f|``, its gradient and ``f`` at a point."""
    (f1, f2), (a, b, c, d) = cg.value_and_jacobian(x, y)
    r = cg.ctx.sqrt(f1 * f1 + f2 * f2)
    if r == 0:
        return r, None, None, f1, f2
    return r, (f1 * a + f2 * c) / r, (f1 * b + f2 * d) / r, f1, f2


def _correct(cg: CompiledGerm, x, y, eps, tol, max_move, iters: int = 40):
    x0, y0 = x, y
    for _ in range(iters):
        r, gx, gy, _, _ = _state(cg, x, y)
        if gx is None:
            return None
        resid = r - eps
        if abs(resid) <= tol:
            return x, y
        g2 = gx * gx + gy * gy
        if g2 == 0:
            return None
        x = x - resid * gx / g2
        y = y - resid * gy / g2
        if max_move is not None and abs(x - x0) + abs(y - y0) > max_move:
            return None
    return None


def _tangent(cg: CompiledGerm, x, y):
    r, gx, gy, f1, f2 = _state(cg, x, y)
    if gx is None:
        return None
    norm = cg.ctx.sqrt(gx * gx + gy * gy)
    if norm == 0:
        return None
    # counter-clockwise with the sublevel set on the left
    return -gy / norm, gx / norm, cg.ctx.atan2(f2, f1)


def _find_start(cg: CompiledGerm, eps, cfg: TraceConfig):
    ctx = cg.ctx
    for k in range(cfg.n_rays):
        ang = 2 * ctx.pi * k / cfg.n_rays
        ux, uy = ctx.cos(ang), ctx.sin(ang)

        def excess(r):
            f1, f2 = cg.value(r * ux, r * uy)
            return ctx.sqrt(f1 * f1 + f2 * f2) - eps

        r = eps * ctx.num(Fraction(1, 10**6))
        for _ in range(10):
            if excess(r) < 0:
                break
            r = r / 1000
        else:
            continue
        prev = r
        found = False
        while r <= cfg.max_radius:
            if excess(r) >= 0:
                found = True
                break
            prev, r = r, r * ctx.num(Fraction(5, 4))
        if not found:
            continue
        r = bracketed_root(excess, prev, r, float(r) * 1e-6)
        point = _correct(cg, r * ux, r * uy, eps, cfg.residual_tol * eps, None)
        if point is not None:
            return point
    raise TracingError("no start point on any ray: eps too large or germ not finitely determined")


def trace_level_curve(
    germ: PolyGerm | CompiledGerm,
    eps,
    cfg: TraceConfig = TraceConfig(),
    precision: str = "long",
) -> LevelCurve:
    cg = germ if isinstance(germ, CompiledGerm) else CompiledGerm(germ, get_context(precision))
    ctx = cg.ctx
    eps = ctx.num(Fraction(eps) if not isinstance(eps, float) else eps)
    tol = cfg.residual_tol * eps / 4

    px, py = _find_start(cg, eps, cfg)
    tx, ty, img = _tangent(cg, px, py)
    points = [(px, py)]
    images = [img]
    x0, y0 = px, py
    polar = ctx.atan2(py, px)
    polar_total = 0.0
    radius = ctx.sqrt(px * px + py * py)
    h = radius * cfg.rel_step_cap / 4
    cos_cap = math.cos(cfg.turn_cap)

    while True:
        if len(points) >= 10 and polar_total > math.pi:
            gap = ctx.sqrt((x0 - px) ** 2 + (y0 - py) ** 2)
            if gap <= 1.05 * h and (x0 - px) * tx + (y0 - py) * ty > 0:
                break
        radius = ctx.sqrt(px * px + py * py)
        if radius > cfg.max_radius:
            raise TracingError(f"level curve leaves the domain radius {cfg.max_radius}: eps too large")
        h = min(h, radius * cfg.rel_step_cap)
        if h < radius * cfg.min_rel_step:
            raise TracingError("step size underflow while tracing the level curve")
        if len(points) > cfg.max_vertices:
            raise TracingError("too many vertices: level curve does not close")

        qx, qy = px + h * tx, py + h * ty
        corrected = _correct(cg, qx, qy, eps, tol, h)
        if corrected is None:
            h = h / 2
            continue
        nx, ny = corrected
        tan = _tangent(cg, nx, ny)
        if tan is None:
            h = h / 2
            continue
        ntx, nty, nimg = tan
        dot = tx * ntx + ty * nty
        dimg = ctx.wrap(nimg - img)
        moved = ctx.sqrt((nx - qx) ** 2 + (ny - qy) ** 2)
        if dot < cos_cap or abs(dimg) > cfg.image_cap or moved > h / 2:
            h = h / 2
            continue

        npolar = ctx.atan2(ny, nx)
        polar_total += float(ctx.wrap(npolar - polar))
        polar = npolar
        px, py, tx, ty, img = nx, ny, ntx, nty, nimg
        points.append((px, py))
        images.append(images[-1] + dimg)
        if dot > math.cos(cfg.turn_cap / 3) and abs(dimg) < cfg.image_cap / 3:
            h = h * 1.5
        if polar_total > 2 * math.pi + 1.0 or polar_total < -math.pi:
            raise TracingError("level curve does not close around the origin")

    polar_total += float(ctx.wrap(ctx.atan2(y0, x0) - polar))
    if round(polar_total / (2 * math.pi)) != 1:
        raise TracingError("level curve does not wind once around the origin")
    curve = LevelCurve(eps, points, True, images, ctx)
    _validate(cg, curve, cfg)
    return curve


def _validate(cg: CompiledGerm, curve: LevelCurve, cfg: TraceConfig) -> None:
    pts = curve.as_array()
    ring = shapely.LinearRing(pts)
    if not ring.is_simple:
        raise TracingError("traced level curve intersects itself")
    poly = shapely.Polygon(ring)
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    pad = 0.25 * (hi - lo)
    xs = np.linspace(lo[0] - pad[0], hi[0] + pad[0], cfg.scan_grid)
    ys = np.linspace(lo[1] - pad[1], hi[1] + pad[1], cfg.scan_grid)
    X, Y = np.meshgrid(xs, ys)
    ratio = cg.norm_grid(X, Y) / float(curve.epsilon)
    inside = shapely.contains_xy(poly, X, Y)
    if np.any(inside & (ratio > 1 + cfg.scan_margin)):
        raise TracingError("sublevel set has a hole inside the traced curve: eps too large")
    if np.any(~inside & (ratio < 1 - cfg.scan_margin)):
        raise TracingError("sublevel set has another component near the traced curve: eps too large")


class LevelCurveCircle:
    """The map ``arg f`` on a traced level curve, parametrized by normalized arc length.

    Segments that cross or pass close to the singular set ``{J = 0}`` are
    subdivided in the sampling grid, so that pairs of nearby extrema are
    resolved even when both fall inside one tracing step.
    """

    def __init__(self, cg: CompiledGerm, curve: LevelCurve, tol, refine: int = 64, screen: float = 0.05):
        self.cg = cg
        self.curve = curve
        ctx = curve.ctx
        self.ctx = ctx
        self.two_pi = ctx.two_pi
        self.period = ctx.two_pi
        self.tol = tol
        pts = curve.points
        lengths = [ctx.num(0)]
        for i in range(len(pts)):
            (ax, ay), (bx, by) = pts[i], pts[(i + 1) % len(pts)]
            lengths.append(lengths[-1] + ctx.sqrt((bx - ax) ** 2 + (by - ay) ** 2))
        total = lengths[-1]
        self.params = [s * ctx.two_pi / total for s in lengths]
        self.fparams = [float(s) for s in self.params]
        imgs = list(curve.image_angles)
        closing = imgs[-1] + ctx.wrap(imgs[0] - imgs[-1])
        self.thetas = imgs + [closing]
        self.winding = int(round(float((closing - imgs[0]) / ctx.two_pi)))
        self._build_grid(refine, screen)

    def _build_grid(self, refine: int, screen: float) -> None:
        cg, pts = self.cg, self.curve.points
        k = len(pts)
        jsign = [cg.jdet(x, y) > 0 for x, y in pts]
        near = [cg.sigma_distance(x, y) < screen for x, y in pts]
        self.grid_t, self.grid_theta, self.grid_points = [], [], []
        for i in range(k):
            self.grid_t.append(self.params[i])
            self.grid_theta.append(self.thetas[i])
            self.grid_points.append(pts[i])
            j = (i + 1) % k
            if jsign[i] == jsign[j] and not (near[i] or near[j]):
                continue
            span = self.params[i + 1] - self.params[i]
            for step in range(1, refine):
                t = self.params[i] + span * step / refine
                x, y, _, _ = self.point(t)
                self.grid_t.append(t)
                self.grid_theta.append(self.lift(t))
                self.grid_points.append((x, y))

    def grid(self):
        return self.grid_t, self.grid_theta

    def point(self, t):
        ctx = self.ctx
        q = math.floor(float(t / self.period))
        t0 = t - q * self.period
        i = min(max(bisect.bisect_right(self.fparams, float(t0)) - 1, 0), len(self.curve.points) - 1)
        (ax, ay) = self.curve.points[i]
        (bx, by) = self.curve.points[(i + 1) % len(self.curve.points)]
        span = self.params[i + 1] - self.params[i]
        frac = (t0 - self.params[i]) / span if span else ctx.num(0)
        x, y = ax + frac * (bx - ax), ay + frac * (by - ay)
        eps = self.curve.epsilon
        corrected = _correct(self.cg, x, y, eps, self.tol * eps, None, iters=8)
        if corrected is not None:
            x, y = corrected
        return x, y, i, q

    def lift(self, t):
        x, y, i, q = self.point(t)
        f1, f2 = self.cg.value(x, y)
        base = self.thetas[i]
        return base + self.ctx.wrap(self.ctx.atan2(f2, f1) - base) + q * self.winding * self.two_pi
