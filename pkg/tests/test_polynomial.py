from __future__ import annotations

import re
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from circlegerm.errors import GermSyntaxError, NotAGermError
from circlegerm.recognition.polynomial import Poly, jacobian_det, parse_germ, parse_poly

X, Y = Poly.var("x"), Poly.var("y")


class TestParse:
    def test_cusp_germ(self):
        g = parse_germ("x", "x*y + y^3")
        assert g.f1 == X
        assert g.f2 == X * Y + Y**3

    def test_fold_germ(self):
        assert parse_germ("x", "y^2").f2 == Y**2

    def test_constant_term(self):
        with pytest.raises(NotAGermError, match="not a germ at 0"):
            parse_germ("x + 1", "y")

    @pytest.mark.parametrize(
        "text, expected",
        [
            ("x**2 - 3*x*y", X**2 - Poly.const(3) * X * Y),
            ("(x+y)^2", X**2 + Poly.const(2) * X * Y + Y**2),
            ("-x", -X),
            ("x/2 + 0.25*y", Poly.const(Fraction(1, 2)) * X + Poly.const(Fraction(1, 4)) * Y),
            ("2 * (x - y) ^ 0", Poly.const(2)),
            ("--x", X),
        ],
    )
    def test_expressions(self, text, expected):
        assert parse_poly(text) == expected

    @pytest.mark.parametrize(
        "text, pos",
        [("x +", 3), ("x * * y", 4), ("x ^ y", 4), ("(x", 2), ("x $ y", 2), ("", 0), ("x y", 2), ("x/y", 1), ("x/0", 1)],
    )
    def test_syntax_errors(self, text, pos):
        with pytest.raises(GermSyntaxError) as info:
            parse_poly(text)
        assert info.value.position == pos
        assert str(info.value).endswith(f"at position {pos}")


class TestJacobian:
    def test_cusp_family(self):
        assert jacobian_det(parse_germ("x", "y^3+x*y")) == Poly.const(3) * Y**2 + X

    def test_identity(self):
        assert jacobian_det(parse_germ("x", "y")) == Poly.const(1)

    def test_fold(self):
        assert jacobian_det(parse_germ("x", "y^2")) == Poly.const(2) * Y


monomials = st.tuples(st.integers(0, 4), st.integers(0, 4))
coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=6)
polys = st.dictionaries(monomials, coeffs, max_size=6).map(Poly)
points = st.tuples(st.fractions(-3, 3, max_denominator=5), st.fractions(-3, 3, max_denominator=5))


@given(polys)
def test_str_round_trip(p):
    assert parse_poly(str(p)) == p


@given(polys, polys, points)
def test_ring_operations_evaluate(p, q, pt):
    x, y = pt
    assert (p * q)(x, y) == p(x, y) * q(x, y)
    assert (p + q)(x, y) == p(x, y) + q(x, y)
    assert (p - q)(x, y) == p(x, y) - q(x, y)


@given(polys, polys)
def test_derivative_rules(p, q):
    for v in "xy":
        assert (p * q).diff(v) == p.diff(v) * q + p * q.diff(v)
        assert (p + q).diff(v) == p.diff(v) + q.diff(v)


@given(polys, points)
def test_parsed_text_evaluates_like_python(p, pt):
    x, y = pt
    text = re.sub(r"\d+", lambda m: f"F({m.group()})", str(p).replace("^", "**"))
    assert eval(text, {"x": x, "y": y, "F": Fraction}) == p(x, y)  # noqa: S307 - generated text only
