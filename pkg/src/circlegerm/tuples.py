"""Associated tuples of stable circle maps and the legal-permutation action.

An associated tuple is a cyclic word over ``{s, p}``: ``s`` marks a singular
point, ``p`` a regular preimage of a singular value, in circle order.  Two
stable circle maps are smoothly equivalent exactly when their words lie in
the same orbit of the dihedral group of index shifts and reversal, so the
lexicographically least orbit element (with ``s < p``) stands for the class.

The hash form records only the number of ``p`` symbols in front of each
``s`` when the word is rotated to end with an ``s``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable, Iterator, Sequence

from .errors import DimensionError, InfeasibleTupleError, RegularTypeError

__all__ = [
    "Symbol",
    "AstTuple",
    "StarredTuple",
    "HashTuple",
    "LegalPerm",
    "apply",
    "orbit",
    "canonical_ast",
    "equivalent",
    "hash_from_ast",
    "ast_from_hash",
    "star_indices",
    "canonical_runs",
]

_WORD_RE = re.compile(r"[sp]+")
_HASH_RE = re.compile(r"\d+(,\d+)*")


class Symbol(IntEnum):
    # the integer values fix the canonical order s < p
    S = 0
    P = 1

    def __str__(self) -> str:
        return "s" if self is Symbol.S else "p"


@dataclass(frozen=True)
class AstTuple:
    symbols: tuple[Symbol, ...]

    def __post_init__(self):
        syms = tuple(Symbol(s) for s in self.symbols)
        object.__setattr__(self, "symbols", syms)
        if not syms:
            raise ValueError("an associated tuple needs at least one symbol")
        n = syms.count(Symbol.S)
        if n % 2:
            raise ValueError(f"odd number of singular points ({n}) in {self.word}")

    @classmethod
    def parse(cls, word: str) -> "AstTuple":
        word = word.strip().lower()
        if not _WORD_RE.fullmatch(word):
            raise ValueError(f"not a tuple word: {word!r} (expected letters s and p)")
        return cls(tuple(Symbol.S if c == "s" else Symbol.P for c in word))

    @property
    def word(self) -> str:
        return "".join(str(s) for s in self.symbols)

    @property
    def n_singular(self) -> int:
        return self.symbols.count(Symbol.S)

    @property
    def n_regular(self) -> int:
        return self.symbols.count(Symbol.P)

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[Symbol]:
        return iter(self.symbols)

    def __getitem__(self, i):
        return self.symbols[i]

    def __str__(self) -> str:
        return self.word


@dataclass(frozen=True)
class StarredTuple:
    """Associated tuple with each symbol tagged by the singular value it belongs to."""

    entries: tuple[tuple[Symbol, int], ...]

    def forget(self) -> AstTuple:
        return AstTuple(tuple(sym for sym, _ in self.entries))

    def __str__(self) -> str:
        return " ".join(f"{sym}{idx}" for sym, idx in self.entries)


def canonical_runs(runs: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically least rotation or reflection of a cyclic integer vector."""
    runs = tuple(runs)
    k = len(runs)
    if k == 0:
        return runs
    back = runs[::-1]
    return min(min(runs[i:] + runs[:i], back[i:] + back[:i]) for i in range(k))


@dataclass(frozen=True)
class HashTuple:
    runs: tuple[int, ...]

    def __post_init__(self):
        runs = tuple(int(x) for x in self.runs)
        object.__setattr__(self, "runs", runs)
        if len(runs) < 2 or len(runs) % 2:
            raise ValueError(f"hash tuple length must be even and >= 2, got {len(runs)}")
        if any(x < 0 for x in runs):
            raise ValueError("hash tuple entries must be non-negative")

    @classmethod
    def parse(cls, text: str) -> "HashTuple":
        text = text.replace(" ", "")
        if not _HASH_RE.fullmatch(text):
            raise ValueError(f"not a hash tuple: {text!r} (expected e.g. 1,2,1,0)")
        return cls(tuple(int(x) for x in text.split(",")))

    @property
    def n(self) -> int:
        return len(self.runs)

    @property
    def m(self) -> int:
        return sum(self.runs)

    def canonical(self) -> "HashTuple":
        return HashTuple(canonical_runs(self.runs))

    def __len__(self) -> int:
        return len(self.runs)

    def __iter__(self) -> Iterator[int]:
        return iter(self.runs)

    def __str__(self) -> str:
        return ",".join(str(x) for x in self.runs)


@dataclass(frozen=True)
class LegalPerm:
    """The position map ``i -> shift + i`` (or ``shift - 1 - i`` when reversed) mod ``modulus``.

    Acting on a tuple moves the symbol at position ``i`` to position
    ``perm(i)``, so ``apply(a, apply(b, t)) == apply(a.compose(b), t)``.
    """

    modulus: int
    shift: int = 0
    reversed: bool = False

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        object.__setattr__(self, "shift", self.shift % self.modulus)

    @classmethod
    def identity(cls, k: int) -> "LegalPerm":
        return cls(k)

    @classmethod
    def all(cls, k: int) -> list["LegalPerm"]:
        return [cls(k, a, r) for r in (False, True) for a in range(k)]

    def __call__(self, i: int) -> int:
        if self.reversed:
            return (self.shift - 1 - i) % self.modulus
        return (self.shift + i) % self.modulus

    def compose(self, other: "LegalPerm") -> "LegalPerm":
        """``self ∘ other``: apply ``other`` first."""
        if other.modulus != self.modulus:
            raise DimensionError(f"cannot compose moduli {self.modulus} and {other.modulus}")
        if self.reversed:
            return LegalPerm(self.modulus, self.shift - other.shift, not other.reversed)
        return LegalPerm(self.modulus, self.shift + other.shift, other.reversed)

    def inverse(self) -> "LegalPerm":
        if self.reversed:
            return self
        return LegalPerm(self.modulus, -self.shift, False)


def apply(perm: LegalPerm, t: AstTuple) -> AstTuple:
    k = len(t)
    if perm.modulus != k:
        raise DimensionError(f"permutation of modulus {perm.modulus} applied to tuple of length {k}")
    out: list[Symbol] = [Symbol.S] * k
    for i, sym in enumerate(t.symbols):
        out[perm(i)] = sym
    return AstTuple(tuple(out))


def orbit(t: AstTuple) -> frozenset[AstTuple]:
    return frozenset(apply(g, t) for g in LegalPerm.all(len(t)))


def canonical_ast(t: AstTuple) -> AstTuple:
    # brute force over all 2N images; N stays small for anything we classify
    return min(orbit(t), key=lambda u: u.symbols)


def equivalent(a: AstTuple, b: AstTuple) -> bool:
    return len(a) == len(b) and canonical_ast(a) == canonical_ast(b)


def _singular_positions(t: AstTuple) -> list[int]:
    return [i for i, sym in enumerate(t.symbols) if sym is Symbol.S]


def _runs_in_word_order(t: AstTuple) -> tuple[list[int], list[int]]:
    """Positions of the s's and the number of p's on the arc entering each."""
    q = _singular_positions(t)
    if not q:
        raise RegularTypeError(f"tuple {t} has no singular points")
    n_total = len(t)
    runs = [q[0] + n_total - q[-1] - 1]
    runs += [q[i] - q[i - 1] - 1 for i in range(1, len(q))]
    return q, runs


def hash_from_ast(t: AstTuple) -> HashTuple:
    _, runs = _runs_in_word_order(t)
    return HashTuple(canonical_runs(runs))


def ast_from_hash(h: HashTuple | Iterable[int]) -> AstTuple:
    if not isinstance(h, HashTuple):
        h = HashTuple(tuple(h))
    out: list[Symbol] = []
    for x in h.runs:
        out.extend([Symbol.P] * x)
        out.append(Symbol.S)
    return AstTuple(tuple(out))


def star_indices(t: AstTuple) -> StarredTuple:
    """Attach singular-value indices to every symbol of a realizable tuple.

    Singular points are numbered in word order.  The image of the arc entering
    ``s_k`` sweeps monotonically past ``x_k`` singular values, moving in the
    opposite direction to the previous arc; placing ``sigma_k`` at cyclic
    position ``L_k mod n`` on the target circle makes each ``p`` land on a
    known position.  Flipping the starting orientation negates every position
    and leaves the labels unchanged.
    """
    from .feasibility import is_feasible

    q, runs = _runs_in_word_order(t)
    n = len(q)
    report = is_feasible(runs)
    if not report.feasible:
        raise InfeasibleTupleError(f"tuple {t} is not realizable (hash {runs} infeasible)")

    sigma_at = {L % n: k + 1 for k, L in enumerate(report.partial_sums)}
    labels: list[int] = [0] * len(t)
    n_total = len(t)
    for k in range(n):
        labels[q[k]] = k + 1
        start = report.partial_sums[k - 1] % n if k else 0
        direction = 1 if k % 2 == 0 else -1
        first = q[k - 1] + 1 if k else q[-1] + 1
        for j in range(runs[k]):
            pos = (first + j) % n_total
            labels[pos] = sigma_at[(start + direction * (j + 1)) % n]
    return StarredTuple(tuple(zip(t.symbols, labels)))
