"""Scalar arithmetic back ends and compiled evaluation of polynomial germs.

Tracing runs on plain Python scalars of one type chosen by precision name:

* ``"double"``: IEEE binary64 floats
* ``"long"``: ``numpy.longdouble`` (64-bit mantissa on x86-64)
* ``"mp50"`` etc.: mpmath with the given number of decimal digits
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Any

import mpmath
import numpy as np

from .polynomial import Poly, PolyGerm, jacobian_det

__all__ = ["NumCtx", "get_context", "CompiledPoly", "CompiledGerm"]


class NumCtx:
    def __init__(self, name: str):
        self.name = name
        if name == "double":
            self._kind = "float"
            self.eps = float(np.finfo(float).eps)
        elif name == "long":
            self._kind = "long"
            self.eps = float(np.finfo(np.longdouble).eps)
        elif name.startswith("mp") and name[2:].isdigit():
            self._kind = "mp"
            self._mp = mpmath.MPContext()
            self._mp.dps = int(name[2:])
            self.eps = float(self._mp.eps)
        else:
            raise ValueError(f"unknown precision {name!r} (use double, long or mpNN)")
        if self._kind == "mp":
            self.pi = +self._mp.pi
        elif self._kind == "long":
            self.pi = np.longdouble("3.14159265358979323846264338")
        else:
            self.pi = math.pi
        self.two_pi = 2 * self.pi

    def num(self, v: Any):
        if self._kind == "float":
            return float(v)
        if isinstance(v, Fraction):
            if self._kind == "long":
                return np.longdouble(v.numerator) / np.longdouble(v.denominator)
            return self._mp.mpf(v.numerator) / self._mp.mpf(v.denominator)
        if self._kind == "long":
            return np.longdouble(v)
        return self._mp.mpf(v)

    def sqrt(self, v):
        if self._kind == "mp":
            return self._mp.sqrt(v)
        return np.sqrt(v) if self._kind == "long" else math.sqrt(v)

    def atan2(self, y, x):
        if self._kind == "mp":
            return self._mp.atan2(y, x)
        return np.arctan2(y, x) if self._kind == "long" else math.atan2(y, x)

    def cos(self, v):
        if self._kind == "mp":
            return self._mp.cos(v)
        return np.cos(v) if self._kind == "long" else math.cos(v)

    def sin(self, v):
        if self._kind == "mp":
            return self._mp.sin(v)
        return np.sin(v) if self._kind == "long" else math.sin(v)

    def wrap(self, v):
        """Reduce an angle difference to ``(-pi, pi]``."""
        two_pi = self.two_pi
        v = v - two_pi * math.floor(float(v / two_pi))
        if v > self.pi:
            v -= two_pi
        return v

    def __repr__(self) -> str:
        return f"NumCtx({self.name!r})"


_CONTEXTS: dict[str, NumCtx] = {}


def get_context(name: str) -> NumCtx:
    if name not in _CONTEXTS:
        _CONTEXTS[name] = NumCtx(name)
    return _CONTEXTS[name]


class CompiledPoly:
    """A polynomial with coefficients converted once to the context's scalar type."""

    def __init__(self, poly: Poly, ctx: NumCtx):
        self.terms = [(a, b, ctx.num(c)) for (a, b), c in sorted(poly.terms.items())]
        self.max_a = max((a for a, _, _ in self.terms), default=0)
        self.max_b = max((b for _, b, _ in self.terms), default=0)
        self.zero = ctx.num(0)

    def __call__(self, xp: list, yp: list):
        # xp, yp are precomputed power tables
        out = self.zero
        for a, b, c in self.terms:
            out = out + c * xp[a] * yp[b]
        return out


class CompiledGerm:
    """Fast evaluation of a germ, its Jacobian matrix and Jacobian determinant."""

    def __init__(self, germ: PolyGerm, ctx: NumCtx):
        self.germ = germ
        self.ctx = ctx
        J = jacobian_det(germ)
        polys = {
            "f1": germ.f1,
            "f2": germ.f2,
            "f1x": germ.f1.diff("x"),
            "f1y": germ.f1.diff("y"),
            "f2x": germ.f2.diff("x"),
            "f2y": germ.f2.diff("y"),
            "J": J,
            "Jx": J.diff("x"),
            "Jy": J.diff("y"),
        }
        self.c = {k: CompiledPoly(p, ctx) for k, p in polys.items()}
        self.max_a = max(p.max_a for p in self.c.values())
        self.max_b = max(p.max_b for p in self.c.values())
        self.one = ctx.num(1)
        # float64 coefficient arrays for vectorized grid scans
        self._vec = {k: [(a, b, float(c)) for (a, b), c in p.terms.items()] for k, p in polys.items()}

    def _powers(self, x, y):
        xp = [self.one]
        for _ in range(self.max_a):
            xp.append(xp[-1] * x)
        yp = [self.one]
        for _ in range(self.max_b):
            yp.append(yp[-1] * y)
        return xp, yp

    def value(self, x, y):
        xp, yp = self._powers(x, y)
        return self.c["f1"](xp, yp), self.c["f2"](xp, yp)

    def value_and_jacobian(self, x, y):
        xp, yp = self._powers(x, y)
        c = self.c
        return (
            (c["f1"](xp, yp), c["f2"](xp, yp)),
            (c["f1x"](xp, yp), c["f1y"](xp, yp), c["f2x"](xp, yp), c["f2y"](xp, yp)),
        )

    def jdet(self, x, y):
        xp, yp = self._powers(x, y)
        return self.c["J"](xp, yp)

    def jdet_grad(self, x, y):
        xp, yp = self._powers(x, y)
        return self.c["J"](xp, yp), self.c["Jx"](xp, yp), self.c["Jy"](xp, yp)

    def sigma_distance(self, x, y) -> float:
        """First-order distance to ``{J = 0}`` relative to the distance to the origin."""
        j, jx, jy = self.jdet_grad(x, y)
        g = math.hypot(float(jx), float(jy))
        r = math.hypot(float(x), float(y))
        if g == 0 or r == 0:
            return 0.0 if j == 0 else math.inf
        return abs(float(j)) / (g * r)

    def norm_grid(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        """``|f|`` on float64 arrays (for coarse validity scans only)."""
        f1 = sum(c * X**a * Y**b for a, b, c in self._vec["f1"]) + 0 * X
        f2 = sum(c * X**a * Y**b for a, b, c in self._vec["f2"]) + 0 * X
        return np.hypot(f1, f2)
