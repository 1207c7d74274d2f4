"""Enumeration of feasible hash tuples up to the dihedral action."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator

from .errors import CapacityError
from .tuples import canonical_runs

__all__ = ["ClassListing", "iter_feasible", "enumerate_classes", "count_classes", "DEFAULT_NODE_BOUND"]

DEFAULT_NODE_BOUND = 10**9


@dataclass(frozen=True)
class ClassListing:
    type_n: int
    type_m: int
    classes: tuple[tuple[int, ...], ...]

    @property
    def count(self) -> int:
        return len(self.classes)

    def as_dict(self) -> dict:
        return {
            "n": self.type_n,
            "m": self.type_m,
            "count": self.count,
            "classes": [list(c) for c in self.classes],
        }


def iter_feasible(n: int, m: int, first: int | None = None) -> Iterator[tuple[int, ...]]:
    """Yield every feasible composition of ``m`` into ``n`` parts (not deduplicated).

    Depth-first over prefixes.  The residues ``L_k mod n`` of the alternating
    partial sums must be pairwise distinct, so a prefix with a repeated
    residue is dead; the last part is forced by the sum and must bring
    ``L_n`` back to residue 0.
    """
    prefix = [0] * n

    def rec(k: int, used: int, acc: int, seen: int) -> Iterator[tuple[int, ...]]:
        sign = 1 if k % 2 == 0 else -1
        if k == n - 1:
            x = m - used
            r = (acc + sign * (x + 1)) % n
            if r == 0 and not seen & 1:
                prefix[k] = x
                yield tuple(prefix)
            return
        choices = range(m - used + 1) if (k or first is None) else (first,)
        for x in choices:
            r = (acc + sign * (x + 1)) % n
            bit = 1 << r
            if seen & bit:
                continue
            prefix[k] = x
            yield from rec(k + 1, used + x, acc + sign * (x + 1), seen | bit)

    if n <= 0 or n % 2:
        return
    if first is not None and first > m:
        return
    yield from rec(0, 0, 0, 0)


def _check(n: int, m: int, force: bool, node_bound: int) -> None:
    if n <= 0 or n % 2:
        raise ValueError(f"n must be even and positive, got {n}")
    if m < 0:
        raise ValueError(f"m must be non-negative, got {m}")
    estimate = math.comb(m + n - 1, n - 1)
    if estimate > node_bound and not force:
        raise CapacityError(
            f"type ({n},{m}) has about {estimate:.3g} compositions, above the bound {node_bound:.3g}; "
            "pass force=True to run anyway"
        )


def _classes_with_first(n: int, m: int, first: int) -> set[tuple[int, ...]]:
    return {canonical_runs(h) for h in iter_feasible(n, m, first)}


def enumerate_classes(
    n: int, m: int, *, force: bool = False, jobs: int = 1, node_bound: int = DEFAULT_NODE_BOUND
) -> ClassListing:
    """One canonical representative per class of feasible tuples of type ``(n, m)``.

    ``jobs > 1`` splits the search by the first part across processes; the
    merged result is sorted, so the output does not depend on ``jobs``.
    """
    _check(n, m, force, node_bound)
    found: set[tuple[int, ...]] = set()
    if jobs > 1 and m > 0:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_classes_with_first, [n] * (m + 1), [m] * (m + 1), range(m + 1)):
                found |= part
    else:
        found = {canonical_runs(h) for h in iter_feasible(n, m)}
    return ClassListing(n, m, tuple(sorted(found)))


def count_classes(n: int, m: int, **kwargs) -> int:
    return enumerate_classes(n, m, **kwargs).count
