"""Reading the associated tuple off a sampled circle map.

Both the explicit realizations of hash tuples and the level curves of plane
germs end up here as a *lifted* circle map: a continuous real function
``lift(t)`` on ``[0, period)`` with ``lift(t + period) = lift(t) + 2*pi*w``.
Singular points are strict local extrema of the lift; regular marks are the
other parameters where the lift hits a singular value modulo ``2*pi``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Protocol

import numpy as np

from ..errors import DoublePointError, NonMorseError, NumericalError
from ..tuples import AstTuple, StarredTuple, Symbol

__all__ = [
    "LiftedCircleMap",
    "ExtractionTolerances",
    "SingularMark",
    "RegularMark",
    "CircleMarks",
    "extract_circle_marks",
    "golden_section",
    "bracketed_root",
]

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


class LiftedCircleMap(Protocol):
    period: Any
    two_pi: Any

    def grid(self) -> tuple[np.ndarray, np.ndarray]:
        """Increasing parameters in ``[0, period)`` and the lift at each."""

    def lift(self, t: Any) -> Any:
        """Continuous lift, extended to all real ``t`` by the winding rule."""


@dataclass(frozen=True)
class ExtractionTolerances:
    param_tol: float = 1e-10
    value_tol: float = 1e-6
    # ratio of angle drops at steps h and h/2: ~4 for a quadratic extremum, ~16 for quartic
    morse_ratio: float = 8.0
    tangency_tol: float = 1e-3
    max_repicks: int = 8


@dataclass(frozen=True)
class SingularMark:
    t: Any
    value: float
    kind: str  # "max" or "min"


@dataclass(frozen=True)
class RegularMark:
    t: Any
    value: float
    which_sigma: int  # 1-based index into the singular marks


@dataclass
class CircleMarks:
    singular: list[SingularMark]
    regular: list[RegularMark]
    winding: int
    reference_angle: float | None = None
    reference_count: int | None = None
    seed: int | None = None
    _order: list[tuple[Any, int, int]] = field(default_factory=list, repr=False)

    def __post_init__(self):
        order = [(m.t, 0, i) for i, m in enumerate(self.singular)]
        order += [(m.t, 1, i) for i, m in enumerate(self.regular)]
        order.sort(key=lambda e: float(e[0]))
        self._order = order

    def word(self) -> AstTuple:
        if not self.singular:
            count = self.reference_count if self.reference_count is not None else abs(self.winding)
            if count < 1:
                raise NumericalError("regular circle map with no preimages of the reference angle")
            return AstTuple((Symbol.P,) * count)
        return AstTuple(tuple(Symbol.S if kind == 0 else Symbol.P for _, kind, _ in self._order))

    def starred(self) -> StarredTuple:
        entries = []
        for _, kind, i in self._order:
            if kind == 0:
                entries.append((Symbol.S, i + 1))
            else:
                entries.append((Symbol.P, self.regular[i].which_sigma))
        return StarredTuple(tuple(entries))


def golden_section(fn: Callable[[Any], Any], a: Any, b: Any, tol: float, maximize: bool = False) -> Any:
    """Extremum of a unimodal function on ``[a, b]`` (works for any real scalar type)."""
    sign = -1 if maximize else 1
    c = b - (b - a) * _INVPHI
    d = a + (b - a) * _INVPHI
    fc, fd = sign * fn(c), sign * fn(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - (b - a) * _INVPHI
            fc = sign * fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + (b - a) * _INVPHI
            fd = sign * fn(d)
    return (a + b) / 2


def bracketed_root(fn: Callable[[Any], Any], a: Any, b: Any, tol: float, max_iter: int = 200) -> Any:
    """Root of ``fn`` in ``[a, b]`` given a sign change (Illinois false position)."""
    fa, fb = fn(a), fn(b)
    if fa == 0:
        return a
    if fb == 0:
        return b
    if (fa > 0) == (fb > 0):
        raise NumericalError("root not bracketed")
    side = 0
    for _ in range(max_iter):
        if abs(b - a) <= tol:
            break
        c = (a * fb - b * fa) / (fb - fa)
        if not (min(a, b) < c < max(a, b)):
            c = (a + b) / 2
        fc = fn(c)
        if fc == 0:
            return c
        if (fc > 0) == (fb > 0):
            b, fb = c, fc
            if side == -1:
                fa /= 2
            side = -1
        else:
            a, fa = c, fc
            if side == 1:
                fb /= 2
            side = 1
    return (a + b) / 2


def _circ_dist(u: float, v: float) -> float:
    d = (u - v) % (2 * math.pi)
    return min(d, 2 * math.pi - d)


def _check_morse(cmap: LiftedCircleMap, t: Any, h: Any, ratio: float) -> None:
    f0 = cmap.lift(t)

    def drop(step):
        return abs((cmap.lift(t + step) + cmap.lift(t - step)) / 2 - f0)

    big, small = drop(h), drop(h / 2)
    if small == 0 or big / small > ratio:
        raise NonMorseError(f"flat extremum of the angle profile near t={float(t):.6g}")


def extract_circle_marks(
    cmap: LiftedCircleMap,
    tol: ExtractionTolerances = ExtractionTolerances(),
    seed: int = 0,
) -> CircleMarks:
    ts, thetas = cmap.grid()
    period, two_pi = cmap.period, cmap.two_pi
    m = len(ts)
    theta_end = cmap.lift(period)
    winding = int(round(float((theta_end - thetas[0]) / two_pi)))
    ext = list(thetas) + [theta_end]
    diffs = [ext[i + 1] - ext[i] for i in range(m)]

    signs: list[int] = []
    last = 0
    for d in diffs:
        s = 1 if d > 0 else (-1 if d < 0 else 0)
        signs.append(s if s else last)
        last = signs[-1]
    if last and signs and signs[0] == 0:
        signs = [last if s == 0 else s for s in signs]

    singular: list[SingularMark] = []
    ptol = tol.param_tol * float(period) / (2 * math.pi)
    for i in range(m):
        before, after = signs[i - 1], signs[i]
        if not before or not after or before == after:
            continue
        lo = ts[i - 1] if i else ts[m - 1] - period
        hi = ts[i + 1] if i + 1 < m else period
        maximize = before > 0
        t_star = golden_section(cmap.lift, lo, hi, ptol, maximize=maximize)
        _check_morse(cmap, t_star, (hi - lo) / 8, tol.morse_ratio)
        t_star = t_star % period
        singular.append(SingularMark(t_star, float(cmap.lift(t_star) % two_pi), "max" if maximize else "min"))
    singular.sort(key=lambda s: float(s.t))

    if not singular:
        return _regular_type(cmap, ts, thetas, winding, tol, seed)

    values = [s.value for s in singular]
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            if _circ_dist(values[i], values[j]) <= tol.value_tol:
                raise DoublePointError(
                    f"singular values {values[i]:.9g} and {values[j]:.9g} coincide within tolerance"
                )

    regular: list[RegularMark] = []
    n = len(singular)
    tp = float(two_pi)
    for i in range(n):
        a = singular[i].t
        b = singular[i + 1].t if i + 1 < n else singular[0].t + period
        va, vb = cmap.lift(a), cmap.lift(b)
        lo, hi = (va, vb) if va < vb else (vb, va)
        for j, sigma in enumerate(values):
            k_lo = math.ceil(float((lo - sigma) / two_pi) + tol.value_tol / tp)
            k_hi = math.floor(float((hi - sigma) / two_pi) - tol.value_tol / tp)
            for k in range(k_lo, k_hi + 1):
                target = sigma + k * two_pi
                t_root = bracketed_root(lambda t: cmap.lift(t) - target, a, b, ptol)
                regular.append(RegularMark(t_root % period, sigma, j + 1))
    return CircleMarks(singular, regular, winding)


def _regular_type(cmap, ts, thetas, winding, tol, seed) -> CircleMarks:
    """Count preimages of a generic reference angle for a map without singular points."""
    rng = np.random.default_rng(seed)
    two_pi = cmap.two_pi
    th = np.array([float(v) for v in thetas] + [float(cmap.lift(cmap.period))])
    tt = np.array([float(v) for v in ts] + [float(cmap.period)])
    slopes = np.diff(th) / np.diff(tt)
    typical = np.median(np.abs(slopes)) if len(slopes) else 0.0
    tp = float(two_pi)
    for _ in range(tol.max_repicks):
        alpha = float(rng.uniform(0.0, tp))
        crossings = []
        for i in range(len(slopes)):
            lo, hi = sorted((th[i], th[i + 1]))
            k_lo = math.ceil((lo - alpha) / tp)
            k_hi = math.floor((hi - alpha) / tp)
            if hi == lo or k_hi < k_lo:
                continue
            crossings.append((i, k_hi - k_lo + 1))
        if any(abs(slopes[i]) < tol.tangency_tol * typical for i, _ in crossings):
            continue
        count = sum(c for _, c in crossings)
        return CircleMarks([], [], winding, reference_angle=alpha, reference_count=count, seed=seed)
    raise NumericalError("no transverse reference angle found")
