from __future__ import annotations

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from circlegerm.tuples import AstTuple, HashTuple, LegalPerm, Symbol

settings.register_profile(
    "default", max_examples=1000, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def ast_tuples(draw, min_size=1, max_size=12):
    """Valid associated tuples: an even number of s symbols (possibly none)."""
    syms = draw(st.lists(st.sampled_from([Symbol.S, Symbol.P]), min_size=min_size, max_size=max_size))
    if syms.count(Symbol.S) % 2:
        syms.append(Symbol.S)
    return AstTuple(tuple(syms))


@st.composite
def singular_ast_tuples(draw, max_size=12):
    t = draw(ast_tuples(max_size=max_size))
    if t.n_singular == 0:
        t = AstTuple(t.symbols + (Symbol.S, Symbol.S))
    return t


@st.composite
def hash_tuples(draw, max_half=4, max_entry=6):
    k = 2 * draw(st.integers(1, max_half))
    return HashTuple(tuple(draw(st.lists(st.integers(0, max_entry), min_size=k, max_size=k))))


@st.composite
def perms_for(draw, k: int):
    return LegalPerm(k, draw(st.integers(0, k - 1)), draw(st.booleans()))
