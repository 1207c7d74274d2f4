"""Explicit smooth stable circle maps realizing feasible hash tuples.

The lift ``f_A`` is piecewise linear with slope +-1 away from the singular
points and, on a unit window around each of them, follows the smooth cap
``l`` whose only critical point is a nondegenerate maximum.  The pieces are
glued with a flat bump function so every seam is C-infinity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np
from scipy import integrate

from .errors import InfeasibleTupleError, VerificationError
from .feasibility import alternating_sum, is_feasible
from .recognition.marks import CircleMarks, ExtractionTolerances, extract_circle_marks
from .tuples import AstTuple, HashTuple, canonical_runs, hash_from_ast

__all__ = [
    "bump",
    "smooth_step",
    "cap_l",
    "RealizationSpec",
    "SampledCircleMap",
    "RealizationCircle",
    "eval_fA",
    "sample_realization",
    "realization_marks",
    "verify_realization",
    "min_samples",
]

TWO_PI = 2.0 * math.pi
_NODES = 512
_GL_X, _GL_W = np.polynomial.legendre.leggauss(20)


def bump(x):
    """``exp(-(x-1)^-2) * exp(-(x+1)^-2)`` on ``(-1, 1)``, zero elsewhere."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    inside = np.abs(x) < 1.0
    xi = x[inside]
    out[inside] = np.exp(-1.0 / (xi - 1.0) ** 2 - 1.0 / (xi + 1.0) ** 2)
    return out


@lru_cache(maxsize=1)
def _bump_table() -> tuple[float, np.ndarray, np.ndarray]:
    """Normalizing integral and cumulative integrals of the bump at equispaced nodes."""
    nodes = np.linspace(-1.0, 1.0, _NODES + 1)
    cum = np.zeros(_NODES + 1)
    fn = lambda s: float(bump(s))
    for i in range(_NODES):
        piece, _ = integrate.quad(fn, nodes[i], nodes[i + 1], epsabs=1e-15, epsrel=1e-14)
        cum[i + 1] = cum[i] + piece
    total, _ = integrate.quad(fn, -1.0, 1.0, epsabs=1e-12, epsrel=1e-13, points=[0.0])
    return total, nodes, cum


def smooth_step(x):
    """``k(x)``: integral of the bump from -1 to x, normalized to rise from 0 to 1."""
    total, nodes, cum = _bump_table()
    x = np.clip(np.asarray(x, dtype=float), -1.0, 1.0)
    idx = np.clip(((x + 1.0) * (_NODES / 2.0)).astype(int), 0, _NODES - 1)
    left = nodes[idx]
    half = (x - left) / 2.0
    # Gauss-Legendre on [left, x]; the bump is analytic there and the window is < 1/256 wide
    pts = left[..., None] + half[..., None] * (_GL_X + 1.0)
    rest = half * (bump(pts) * _GL_W).sum(axis=-1)
    return (cum[idx] + rest) / total


def cap_l(x):
    """Smooth cap: ``x`` left of -1, ``-x`` right of 1, ``x - 2x k(x)`` between."""
    x = np.asarray(x, dtype=float)
    mid = x - 2.0 * x * smooth_step(x)
    out = np.where(x <= -1.0, x, np.where(x >= 1.0, -x, mid))
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class RealizationSpec:
    hash: HashTuple
    X: tuple[int, ...]
    Y: tuple[int, ...]

    @classmethod
    def from_hash(cls, h: HashTuple | Iterable[int]) -> "RealizationSpec":
        if not isinstance(h, HashTuple):
            h = HashTuple(tuple(h))
        if not is_feasible(h).feasible:
            raise InfeasibleTupleError(f"cannot realize infeasible tuple {h}")
        X, Y = [], []
        acc_x = acc_y = 0
        for i, x in enumerate(h.runs):
            acc_x += x + 1
            acc_y += (x + 1) if i % 2 == 0 else -(x + 1)
            X.append(acc_x)
            Y.append(acc_y)
        return cls(h, tuple(X), tuple(Y))

    @property
    def n(self) -> int:
        return self.hash.n

    @property
    def m(self) -> int:
        return self.hash.m

    @property
    def degree(self) -> int:
        return self.Y[-1] // self.n

    def singular_params(self) -> np.ndarray:
        """Source angles of the singular points."""
        return (np.asarray(self.X, dtype=float) - 0.5) * TWO_PI / self.X[-1]


def _H(spec: RealizationSpec, u: np.ndarray) -> np.ndarray:
    X = np.asarray(spec.X, dtype=float)
    Y = np.asarray(spec.Y, dtype=float)
    n = spec.n
    X0 = np.concatenate([[0.0], X])
    Y0 = np.concatenate([[0.0], Y])
    # k = number of cap windows that start at or before u; u sits in J_k or in I_k
    k = np.searchsorted(X - 0.5, u, side="right")
    in_cap = (k >= 1) & (u < X0[k] + 0.5)
    linear = Y0[k] + np.where(k % 2 == 0, 1.0, -1.0) * (u - X0[k])
    kk = np.maximum(k, 1)
    cap_sign = np.where(kk % 2 == 1, 0.5, -0.5)
    local = np.where(in_cap, 2.0 * (u - X0[kk]), 0.0)
    capped = Y0[kk] + cap_sign * cap_l(local)
    out = np.where(in_cap, capped, linear)
    if np.any(k > n):
        raise ValueError("argument outside the fundamental domain")
    return out


def eval_fA(spec: RealizationSpec, x):
    """Lift of the realization; periodic up to ``2*pi*degree`` outside ``[0, 2*pi)``."""
    x = np.asarray(x, dtype=float)
    q = np.floor(x / TWO_PI)
    x0 = x - q * TWO_PI
    u = spec.X[-1] / TWO_PI * x0 + 0.5
    vals = TWO_PI / spec.n * _H(spec, u) + q * TWO_PI * spec.degree
    return vals if vals.ndim else float(vals)


def min_samples(spec: RealizationSpec) -> int:
    return 64 * (spec.m + spec.n)


@dataclass(frozen=True)
class SampledCircleMap:
    t: np.ndarray
    values: np.ndarray  # in [0, 2*pi)
    winding: int

    def rows(self) -> Iterable[tuple[float, float]]:
        return zip(self.t.tolist(), self.values.tolist())


def sample_realization(spec: RealizationSpec, count: int | None = None) -> SampledCircleMap:
    count = min_samples(spec) if count is None else count
    if count < min_samples(spec):
        raise ValueError(f"need at least {min_samples(spec)} samples for type ({spec.n},{spec.m}), got {count}")
    t = np.arange(count) * (TWO_PI / count)
    values = np.mod(eval_fA(spec, t), TWO_PI)
    unwrapped = np.unwrap(np.append(values, values[0]))
    winding = int(round((unwrapped[-1] - unwrapped[0]) / TWO_PI))
    return SampledCircleMap(t, values, winding)


class RealizationCircle:
    """Adapter presenting a realization to the shared mark extraction."""

    two_pi = TWO_PI
    period = TWO_PI

    def __init__(self, spec: RealizationSpec, count: int | None = None):
        self.spec = spec
        self.count = max(count or 0, min_samples(spec))

    def grid(self):
        t = np.arange(self.count) * (TWO_PI / self.count)
        return t, eval_fA(self.spec, t)

    def lift(self, t):
        return eval_fA(self.spec, float(t))


def realization_marks(
    spec: RealizationSpec, count: int | None = None, tol: ExtractionTolerances = ExtractionTolerances()
) -> CircleMarks:
    return extract_circle_marks(RealizationCircle(spec, count), tol)


def verify_realization(spec: RealizationSpec | HashTuple | Iterable[int], count: int | None = None) -> AstTuple:
    """Extract the tuple of the sampled realization and check it reproduces the input class."""
    if not isinstance(spec, RealizationSpec):
        spec = RealizationSpec.from_hash(spec)
    marks = realization_marks(spec, count)
    word = marks.word()
    expected = canonical_runs(spec.hash.runs)
    got = hash_from_ast(word).runs if word.n_singular else None
    if got != expected:
        raise VerificationError(f"realization of {spec.hash} extracted as {word} (hash {got})")
    if abs(marks.winding) != abs(alternating_sum(spec.hash)) // spec.n:
        raise VerificationError(f"realization of {spec.hash} has winding {marks.winding}")
    return word
