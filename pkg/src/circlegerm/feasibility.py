"""Arithmetic invariants of hash tuples.

A vector ``(x_1, ..., x_n)`` is realized by a stable circle map exactly when
``n`` is even, the alternating sum vanishes mod ``n`` and the alternating
partial sums ``L_k = sum_{i<=k} (-1)^(i+1) (x_i + 1)`` hit every residue
mod ``n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple

from .errors import InfeasibleTupleError
from .tuples import HashTuple

__all__ = [
    "FeasibilityReport",
    "TypeCheck",
    "type_of",
    "is_feasible",
    "exists_type",
    "abs_degree",
    "cusp_parity",
    "count_type2",
    "alternating_sum",
]


def _runs(h: HashTuple | Iterable[int]) -> tuple[int, ...]:
    return h.runs if isinstance(h, HashTuple) else tuple(int(x) for x in h)


def alternating_sum(h: HashTuple | Iterable[int], shift: int = 0) -> int:
    """``sum (-1)^(i+1) (x_i + shift)`` with 1-based ``i``."""
    return sum((x + shift) if i % 2 == 0 else -(x + shift) for i, x in enumerate(_runs(h)))


@dataclass(frozen=True)
class FeasibilityReport:
    feasible: bool
    type_n: int
    type_m: int
    cond_sum_ok: bool
    cond_altsum_ok: bool
    cond_crs_ok: bool
    partial_sums: tuple[int, ...] = field(default=())
    n_even: bool = True

    def as_dict(self) -> dict:
        return {
            "feasible": self.feasible,
            "n": self.type_n,
            "m": self.type_m,
            "n_even": self.n_even,
            "cond_sum_ok": self.cond_sum_ok,
            "cond_altsum_ok": self.cond_altsum_ok,
            "cond_crs_ok": self.cond_crs_ok,
            "partial_sums": list(self.partial_sums),
        }


def type_of(h: HashTuple | Iterable[int]) -> tuple[int, int]:
    runs = _runs(h)
    return len(runs), sum(runs)


def is_feasible(h: HashTuple | Iterable[int], m: int | None = None) -> FeasibilityReport:
    """Check the three feasibility conditions.

    ``m`` is the caller's declared number of regular points; when omitted the
    sum condition holds trivially.  Odd lengths are reported infeasible with
    ``n_even=False`` rather than raising.
    """
    runs = _runs(h)
    n, total = len(runs), sum(runs)
    if n == 0:
        raise ValueError("empty hash tuple")
    partial: list[int] = []
    acc = 0
    for i, x in enumerate(runs):
        acc += (x + 1) if i % 2 == 0 else -(x + 1)
        partial.append(acc)

    seen = [False] * n
    crs = True
    for L in partial:
        r = L % n
        if seen[r]:
            crs = False
            break
        seen[r] = True

    sum_ok = m is None or total == m
    altsum_ok = alternating_sum(runs) % n == 0
    n_even = n % 2 == 0
    return FeasibilityReport(
        feasible=n_even and sum_ok and altsum_ok and crs,
        type_n=n,
        type_m=total,
        cond_sum_ok=sum_ok,
        cond_altsum_ok=altsum_ok,
        cond_crs_ok=crs,
        partial_sums=tuple(partial),
        n_even=n_even,
    )


class TypeCheck(NamedTuple):
    possible: bool | None
    reason: str


def exists_type(n: int, m: int) -> TypeCheck:
    """Cheap non-existence shortcuts; ``possible is None`` means enumerate."""
    if n <= 0 or n % 2:
        raise ValueError(f"n must be even and positive, got {n}")
    if m < 0:
        raise ValueError(f"m must be non-negative, got {m}")
    if m % 2:
        return TypeCheck(False, "odd-m")
    if n % 4 == 0 and m % 4 == 2:
        return TypeCheck(False, "mod4-obstruction")
    return TypeCheck(None, "unknown-shortcut")


def abs_degree(h: HashTuple | Iterable[int]) -> Fraction:
    runs = _runs(h)
    return Fraction(abs(alternating_sum(runs)), len(runs))


def cusp_parity(h: HashTuple | Iterable[int]) -> int:
    """Parity of the cusp count of any stable perturbation of a germ with this hash."""
    runs = _runs(h)
    if not is_feasible(runs).feasible:
        raise InfeasibleTupleError(f"cusp parity needs a feasible tuple, got {runs}")
    n = len(runs)
    kappa = 1 + n // 2 + abs(alternating_sum(runs, shift=1)) // n
    return kappa % 2


def count_type2(m: int) -> int:
    if m < 0 or m % 2:
        raise ValueError(f"m must be even and non-negative, got {m}")
    return m // 4 + 1
