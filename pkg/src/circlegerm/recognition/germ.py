"""Recognition of plane-to-plane germs by their associated tuple.

For a finitely determined germ ``f`` and small ``eps``, ``f`` restricted to
the loop ``|f| = eps`` is a stable circle map whose tuple class does not
depend on ``eps``.  No computable bound on "small" is available, so
:func:`germ_ast` walks a halving schedule of ``eps`` and accepts the first
class seen at two consecutive steps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from ..errors import (
    ClassificationError,
    NonFoldError,
    NumericalError,
    StabilizationError,
)
from ..feasibility import abs_degree, cusp_parity, is_feasible
from ..tuples import AstTuple, HashTuple, canonical_ast, hash_from_ast
from .marks import CircleMarks, ExtractionTolerances, extract_circle_marks, golden_section
from .numeric import CompiledGerm, get_context
from .polynomial import PolyGerm
from .tracing import LevelCurve, LevelCurveCircle, TraceConfig, trace_level_curve

__all__ = [
    "RecognitionConfig",
    "MarkedCircle",
    "ClassReport",
    "GermComparison",
    "fold_check",
    "extract_marks",
    "germ_ast",
    "germ_equiv",
]


@dataclass(frozen=True)
class RecognitionConfig:
    eps0: Fraction = Fraction(1, 16)
    factor: Fraction = Fraction(1, 2)
    max_steps: int = 40
    precision: str = "long"
    seed: int = 0
    fold_tol: float = 1e-6
    # relative distance to the singular set: screening threshold on vertices, and touching after refinement
    touch_screen: float = 0.05
    touch_tol: float = 1e-7
    trace: TraceConfig = TraceConfig()
    tolerances: ExtractionTolerances = ExtractionTolerances()

    def schedule(self):
        eps = Fraction(self.eps0)
        for _ in range(self.max_steps):
            yield eps
            eps *= Fraction(self.factor)


@dataclass
class MarkedCircle:
    curve: LevelCurve
    angle_profile: list[Any]
    marks: CircleMarks
    points: list[tuple[float, float]] = field(default_factory=list)

    @property
    def singular_marks(self):
        return [(m.t, m.value) for m in self.marks.singular]

    @property
    def regular_marks(self):
        return [(m.t, m.value, m.which_sigma) for m in self.marks.regular]

    @property
    def winding(self) -> int:
        return self.marks.winding

    def word(self) -> AstTuple:
        return self.marks.word()


@dataclass(frozen=True)
class ClassReport:
    ast: AstTuple
    hash: HashTuple | None
    n: int
    m: int
    abs_deg: int
    cusp_parity: int | None
    epsilon_used: float
    stabilized: bool
    seed: int
    winding: int = 0
    history: tuple[tuple[float, str], ...] = ()

    @property
    def regular_type(self) -> bool:
        return self.hash is None

    def to_json_dict(self) -> dict:
        return {
            "ast": self.ast.word,
            "hash": list(self.hash.runs) if self.hash is not None else None,
            "n": self.n,
            "m": self.m,
            "abs_deg": self.abs_deg,
            "cusp_parity": self.cusp_parity,
            "epsilon_used": self.epsilon_used,
            "stabilized": self.stabilized,
            "seed": self.seed,
        }


def fold_check(g: PolyGerm | CompiledGerm, p, rel_tol: float = 1e-6, precision: str = "long") -> bool:
    """Is the singular point ``p`` a fold?  Tests ``Dg(p) . (J_y, -J_x) != 0``."""
    cg = g if isinstance(g, CompiledGerm) else CompiledGerm(g, get_context(precision))
    x, y = (cg.ctx.num(float(v)) if not isinstance(v, type(cg.one)) else v for v in p)
    _, (a, b, c, d) = cg.value_and_jacobian(x, y)
    _, jx, jy = cg.jdet_grad(x, y)
    vx = a * jy - b * jx
    vy = c * jy - d * jx
    scale = math.sqrt(float(a * a + b * b + c * c + d * d)) * math.sqrt(float(jx * jx + jy * jy))
    if scale == 0:
        return False
    return math.sqrt(float(vx * vx + vy * vy)) > rel_tol * scale


def _project_to_sigma(cg: CompiledGerm, x, y, iters: int = 200):
    """Newton steps along the gradient of ``J`` towards the singular set.

    Converges quadratically to a simple zero and linearly to a repeated one;
    where ``J`` has no real zero nearby the iterates wander and ``None`` is
    returned.
    """
    ctx = cg.ctx
    r0 = ctx.sqrt(x * x + y * y)
    x0, y0 = x, y
    stop = max(1e-13, 100 * ctx.eps) * r0
    for _ in range(iters):
        j, jx, jy = cg.jdet_grad(x, y)
        if j == 0:
            return x, y
        g2 = jx * jx + jy * jy
        if g2 == 0:
            return None
        dx, dy = j * jx / g2, j * jy / g2
        x, y = x - dx, y - dy
        if abs(x - x0) + abs(y - y0) > r0 / 100:
            return None
        if abs(dx) + abs(dy) <= stop:
            return x, y
    return None


def _simple_zero(cg: CompiledGerm, x, y) -> bool:
    """Does ``J`` vanish to first order at ``(x, y)``, so that the singular set is a smooth curve there?

    Probes ``J`` at ``+-delta`` along its gradient for shrinking ``delta``:
    a simple zero shows a sign change with slope ``|grad J|`` once ``delta``
    is below the local feature size, a repeated zero never does.
    """
    ctx = cg.ctx
    j, jx, jy = cg.jdet_grad(x, y)
    g = ctx.sqrt(jx * jx + jy * jy)
    if g == 0:
        return False
    ux, uy = jx / g, jy / g
    delta = ctx.sqrt(x * x + y * y) * ctx.num(Fraction(1, 10**4))
    for _ in range(8):
        if abs(j) <= g * delta / 100:
            a = cg.jdet(x + delta * ux, y + delta * uy)
            b = cg.jdet(x - delta * ux, y - delta * uy)
            if a > 0 > b and 0.5 < float((a - b) / (2 * delta * g)) < 2.0:
                return True
        delta = delta / 10
    return False


def _require_fold(cg: CompiledGerm, x, y, tol: float) -> None:
    projected = _project_to_sigma(cg, x, y)
    if projected is None:
        raise NumericalError(f"no point of the singular set near ({float(x):.3g}, {float(y):.3g})")
    px, py = projected
    if not (_simple_zero(cg, px, py) and fold_check(cg, (px, py), tol)):
        raise NonFoldError(f"non-fold singularity detected near ({float(x):.3g}, {float(y):.3g})")


def _touch_ratio(cg: CompiledGerm, x, y) -> float:
    (_, _), (a, b, c, d) = cg.value_and_jacobian(x, y)
    s = float(a * a + b * b + c * c + d * d)
    return float(cg.jdet(x, y)) / s if s else 0.0


def extract_marks(
    curve: LevelCurve, g: PolyGerm | CompiledGerm, config: RecognitionConfig = RecognitionConfig()
) -> MarkedCircle:
    cg = g if isinstance(g, CompiledGerm) else CompiledGerm(g, curve.ctx)
    circle = LevelCurveCircle(cg, curve, config.trace.residual_tol)
    marks = extract_circle_marks(circle, config.tolerances, seed=config.seed)

    for mark in marks.singular:
        x, y, _, _ = circle.point(mark.t)
        _require_fold(cg, x, y, config.fold_tol)

    # each fold crossing of the curve is an extremum of arg f and vice versa
    ratios = [_touch_ratio(cg, x, y) for x, y in circle.grid_points]
    signs = [r > 0 for r in ratios if r != 0]
    crossings = sum(1 for i in range(len(signs)) if signs[i] != signs[i - 1])
    if crossings != len(marks.singular):
        raise NumericalError(
            f"{crossings} crossings of the singular set but {len(marks.singular)} angle extrema"
        )
    _check_tangency(cg, circle, ratios, config)
    return MarkedCircle(curve, circle.thetas[:-1], marks)


def _check_tangency(cg, circle: LevelCurveCircle, ratios: list[float], config: RecognitionConfig) -> None:
    """Look for places where the curve touches the singular set without crossing it."""
    pts, params = circle.grid_points, circle.grid_t
    k = len(pts)
    dist = [cg.sigma_distance(x, y) for x, y in pts]
    for i in range(k):
        left, right = dist[i - 1], dist[(i + 1) % k]
        if not (dist[i] <= left and dist[i] <= right and dist[i] < config.touch_screen):
            continue
        if (ratios[i - 1] > 0) != (ratios[(i + 1) % k] > 0):
            continue  # an ordinary crossing
        lo = params[i - 1] if i else params[k - 1] - circle.period
        hi = params[i + 1] if i + 1 < k else params[0] + circle.period
        t_min = golden_section(
            lambda t: cg.sigma_distance(*circle.point(t)[:2]), lo, hi, 1e-12 * float(circle.period)
        )
        x, y, _, _ = circle.point(t_min)
        if cg.sigma_distance(x, y) > config.touch_tol:
            continue
        _require_fold(cg, x, y, config.fold_tol)
        raise NumericalError("level curve is tangent to the singular set at this eps")


def _class_of(marked: MarkedCircle, eps: Fraction, config: RecognitionConfig, stabilized: bool, history) -> ClassReport:
    word = canonical_ast(marked.word())
    if word.n_singular == 0:
        count = len(word)
        return ClassReport(word, None, 0, 0, count, None, float(eps), stabilized, config.seed,
                           marked.winding, tuple(history))
    h = hash_from_ast(word)
    return ClassReport(word, h, h.n, h.m, int(abs_degree(h)), cusp_parity(h), float(eps), stabilized,
                       config.seed, marked.winding, tuple(history))


def _analyse(cg: CompiledGerm, eps: Fraction, config: RecognitionConfig) -> MarkedCircle:
    curve = trace_level_curve(cg, eps, config.trace)
    marked = extract_marks(curve, cg, config)
    word = marked.word()
    if word.n_singular:
        h = hash_from_ast(word)
        if not is_feasible(h).feasible:
            raise NumericalError(f"extracted tuple {word} is not feasible")
        if abs(marked.winding) != abs_degree(h):
            raise NumericalError(f"winding {marked.winding} disagrees with the degree of {h}")
    return marked


def germ_ast(g: PolyGerm, config: RecognitionConfig = RecognitionConfig()) -> ClassReport:
    """Associated tuple class of a germ, stabilized over the ``eps`` schedule."""
    cg = CompiledGerm(g, get_context(config.precision))
    previous: AstTuple | None = None
    history: list[tuple[float, str]] = []
    for eps in config.schedule():
        try:
            marked = _analyse(cg, eps, config)
        except NonFoldError:
            raise
        except (NumericalError, ClassificationError) as exc:
            history.append((float(eps), f"error: {exc}"))
            previous = None
            continue
        word = canonical_ast(marked.word())
        history.append((float(eps), word.word))
        if previous is not None and previous == word:
            return _class_of(marked, eps, config, True, history)
        previous = word
    raise StabilizationError(
        "did not stabilize - germ may not be finitely determined "
        f"(tried {len(history)} values of eps, last: {history[-1][1] if history else 'none'})"
    )


@dataclass(frozen=True)
class GermComparison:
    equivalent: bool
    within_hypothesis: bool
    first: ClassReport
    second: ClassReport

    def to_json_dict(self) -> dict:
        return {
            "equivalent": self.equivalent,
            "within_hypothesis": self.within_hypothesis,
            "first": self.first.to_json_dict(),
            "second": self.second.to_json_dict(),
        }


def germ_equiv(g1: PolyGerm, g2: PolyGerm, config: RecognitionConfig = RecognitionConfig()) -> GermComparison:
    """Topological equivalence of two germs by comparing canonical tuples.

    The criterion is proved for germs whose singular set is more than the
    origin; for regular-type germs only the preimage counts are compared and
    ``within_hypothesis`` is False.
    """
    a, b = germ_ast(g1, config), germ_ast(g2, config)
    within = not (a.regular_type or b.regular_type)
    return GermComparison(a.ast == b.ast, within, a, b)
