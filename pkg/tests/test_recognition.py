from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest
from scipy import optimize

from circlegerm.errors import NonFoldError, NumericalError, StabilizationError, TracingError
from circlegerm.feasibility import abs_degree
from circlegerm.recognition import (
    CompiledGerm,
    RecognitionConfig,
    extract_marks,
    fold_check,
    germ_ast,
    germ_equiv,
    get_context,
    parse_germ,
    trace_level_curve,
)
from circlegerm.recognition.marks import bracketed_root, golden_section
from circlegerm.tuples import AstTuple, canonical_ast, equivalent

G = parse_germ


class TestContexts:
    def test_long_has_extended_mantissa(self):
        assert get_context("long").eps < 1e-18

    def test_mp_context(self):
        ctx = get_context("mp40")
        assert ctx.eps < 1e-39
        assert abs(float(ctx.pi) - math.pi) < 1e-15

    def test_unknown(self):
        with pytest.raises(ValueError):
            get_context("quad")

    @pytest.mark.parametrize("name", ["double", "long", "mp30"])
    def test_wrap(self, name):
        ctx = get_context(name)
        for v in (-7.0, -math.pi, 0.5, math.pi, 9.0):
            w = float(ctx.wrap(ctx.num(v)))
            assert -math.pi - 1e-12 < w <= math.pi + 1e-12
            assert abs(math.remainder(w - v, 2 * math.pi)) < 1e-12


class TestScalarSolvers:
    @pytest.mark.parametrize("name", ["double", "long", "mp30"])
    def test_golden_section(self, name):
        ctx = get_context(name)
        t = golden_section(lambda u: (u - ctx.num(Fraction(1, 3))) ** 2, ctx.num(0), ctx.num(1), 1e-12)
        assert abs(float(t) - 1 / 3) < 1e-11

    @pytest.mark.parametrize("name", ["double", "long", "mp30"])
    def test_bracketed_root(self, name):
        ctx = get_context(name)
        r = bracketed_root(lambda u: u * u * u - 2, ctx.num(0), ctx.num(2), 1e-14)
        assert abs(float(r) - 2 ** (1 / 3)) < 1e-13

    def test_unbracketed(self):
        with pytest.raises(NumericalError):
            bracketed_root(lambda u: u * u + 1, -1.0, 1.0, 1e-12)


class TestFoldCheck:
    def test_cusp_germ_fold_line(self):
        z = 0.1
        assert fold_check(G("x", "y^3+x*y"), (-3 * z * z, z))

    def test_fold_germ(self):
        assert fold_check(G("x", "y^2"), (0.2, 0.0))

    def test_not_a_fold(self):
        assert not fold_check(G("x", "y^3"), (0.2, 0.0))

    def test_cusp_point_is_not_a_fold(self):
        # the cusp (x, xy + y^3) at the origin: Df . grad-perp J vanishes
        assert not fold_check(G("x", "x*y+y^3"), (0.0, 0.0))


def _polar_radius(cg: CompiledGerm, phi: float, eps: float) -> float:
    def excess(r):
        f1, f2 = cg.value(r * math.cos(phi), r * math.sin(phi))
        return math.hypot(float(f1), float(f2)) - eps

    return optimize.brentq(excess, 1e-12, 1.0, xtol=1e-15)


class TestTracing:
    def test_identity_circle(self):
        curve = trace_level_curve(G("x", "y"), Fraction(1, 10))
        r = np.hypot(*curve.as_array().T)
        assert np.allclose(r, 0.1, rtol=1e-10)

    def test_fold_oval_against_polar_scan(self):
        g = G("x", "y^2")
        cg = CompiledGerm(g, get_context("double"))
        curve = trace_level_curve(g, Fraction(1, 100))
        pts = curve.as_array()
        phis = np.arctan2(pts[:, 1], pts[:, 0])
        radii = np.hypot(pts[:, 0], pts[:, 1])
        for phi, r in zip(phis[::7], radii[::7]):
            assert r == pytest.approx(_polar_radius(cg, float(phi), 0.01), rel=1e-8)
        winding = np.sum(np.angle(np.exp(1j * np.diff(np.append(phis, phis[0])))))
        assert round(winding / (2 * math.pi)) == 1

    def test_too_large(self):
        with pytest.raises(TracingError):
            trace_level_curve(G("x", "y^3+x*y"), 10)

    @pytest.mark.parametrize("germ", [("x", "x*y+y^3"), ("x", "x*y^2+y^5"), ("x", "x*y+y^4")])
    @pytest.mark.parametrize("eps", [Fraction(1, 16), Fraction(1, 64)])
    def test_corrector_residual(self, germ, eps):
        cg = CompiledGerm(G(*germ), get_context("long"))
        curve = trace_level_curve(cg, eps)
        e = cg.ctx.num(eps)
        for x, y in curve.points:
            f1, f2 = cg.value(x, y)
            assert abs(cg.ctx.sqrt(f1 * f1 + f2 * f2) - e) <= 1e-10 * e
        assert curve.closed


class TestMarks:
    def test_fold(self):
        g = G("x", "y^2")
        marked = extract_marks(trace_level_curve(g, Fraction(1, 32)), g)
        assert len(marked.singular_marks) == 2 and marked.regular_marks == []
        assert marked.word() == AstTuple.parse("ss")

    def test_cusp(self):
        g = G("x", "x*y+y^3")
        marked = extract_marks(trace_level_curve(g, Fraction(1, 32)), g)
        assert len(marked.singular_marks) == 2 and len(marked.regular_marks) == 2
        assert equivalent(marked.word(), AstTuple.parse("pssp"))

    def test_identity(self):
        g = G("x", "y")
        marked = extract_marks(trace_level_curve(g, Fraction(1, 32)), g)
        assert marked.singular_marks == []
        assert marked.word() == AstTuple.parse("p")

    @pytest.mark.parametrize("germ", [("x", "x*y^2+y^5"), ("x", "x*y^2+y^6+y^7"), ("x", "x*y+y^3")])
    def test_mark_invariants(self, germ):
        g = G(*germ)
        marked = extract_marks(trace_level_curve(g, Fraction(1, 128)), g)
        values = [v for _, v in marked.singular_marks]
        assert len(values) % 2 == 0
        for i in range(len(values)):
            for j in range(i):
                assert abs(math.remainder(float(values[i] - values[j]), 2 * math.pi)) > 1e-6
        for _, value, which in marked.regular_marks:
            assert value == values[which - 1]


REDUCED_TABLE = {
    ("x", "y"): "p",
    ("x", "y^2"): "ss",
    ("x", "x*y+y^3"): "pssp",
    ("x", "x*y^2+y^5"): "pssppssp",
    ("x", "x*y^2+y^6+y^7"): "spsspspp",
}


@pytest.mark.parametrize("germ, word", list(REDUCED_TABLE.items()))
def test_reduced_table(germ, word):
    report = germ_ast(G(*germ))
    assert report.stabilized
    assert report.ast == canonical_ast(AstTuple.parse(word))
    history = [w for _, w in report.history if not w.startswith("error")]
    assert history[-1] == history[-2] == report.ast.word


@pytest.mark.parametrize("germ", [("x", "y^3+x*y"), ("x", "y^3+x^3*y")])
def test_cusp_family(germ):
    assert germ_ast(G(*germ)).ast == canonical_ast(AstTuple.parse("pssp"))


def test_report_fields():
    r = germ_ast(G("x", "x*y^2+y^5"))
    assert (r.n, r.m, r.abs_deg, r.cusp_parity) == (4, 4, 1, 0)
    assert abs(r.winding) == abs_degree(r.hash)
    d = r.to_json_dict()
    assert list(d) == ["ast", "hash", "n", "m", "abs_deg", "cusp_parity", "epsilon_used", "stabilized", "seed"]
    assert d["hash"] == [0, 2, 0, 2]


def test_regular_type_report():
    r = germ_ast(G("x^2-y^2", "2*x*y"))
    assert r.regular_type and r.ast.word == "pp"
    assert (r.n, r.m, r.abs_deg, r.cusp_parity, r.hash) == (0, 0, 2, None, None)


@pytest.mark.parametrize("precision", ["double", "mp30"])
def test_other_precisions(precision):
    cfg = RecognitionConfig(precision=precision)
    assert germ_ast(G("x", "x*y+y^3"), cfg).ast.word == "sspp"


def test_non_fold():
    with pytest.raises(NonFoldError, match="non-fold singularity detected"):
        germ_ast(G("x", "y^3"))


@pytest.mark.parametrize("germ", [("x", "0"), ("x", "x*y^2+y^4")])
def test_not_finitely_determined(germ):
    with pytest.raises(StabilizationError, match="did not stabilize"):
        germ_ast(G(*germ), RecognitionConfig(max_steps=12))


def test_seed_is_reported():
    assert germ_ast(G("x", "y"), RecognitionConfig(seed=7)).seed == 7


class TestEquivalence:
    def test_cusp_rows(self):
        r = germ_equiv(G("x", "x*y+y^3"), G("x", "y^3+x^3*y"))
        assert r.equivalent and r.within_hypothesis

    def test_fold_rows(self):
        assert germ_equiv(G("x", "y^2"), G("x", "x*y+y^4")).equivalent

    def test_distinct_rows(self):
        assert not germ_equiv(G("x", "y^2"), G("x", "x*y+y^3")).equivalent

    def test_regular_flag(self):
        r = germ_equiv(G("x", "y"), G("x+y^2", "y"))
        assert r.equivalent and not r.within_hypothesis


# Further rows of the complex germ list, read over the reals.
STRETCH = {
    ("x", "x*y+y^5"): "pssp",
    ("x", "x*y+y^6"): "ss",
    ("x", "x*y+y^7"): "pssp",
    ("x", "x^2*y+y^4"): "ss",
    ("x", "x^2*y+x*y^3+y^5"): "p",
    ("x", "x^3*y+y^4+x^3*y^2"): "ss",
}


@pytest.mark.parametrize("germ, word", list(STRETCH.items()))
def test_stretch_rows(germ, word):
    assert germ_ast(G(*germ)).ast == canonical_ast(AstTuple.parse(word))


@pytest.mark.parametrize("tail", ["y^5", "y^7"])
def test_beaks_family_has_degree_zero(tail):
    # f2 = y^4 (1 + ...) > 0 on the y-axis, so both halves of the level curve
    # pass the positive f2-axis in the same direction: the winding is 0.
    # The class (p,s,s,p,p,s,s,p) has |deg| 1 and cannot occur; walking the
    # curve by hand gives s p p s p s s p.
    report = germ_ast(G("x", f"x*y^2+y^4+{tail}"))
    assert report.winding == 0
    assert report.ast == canonical_ast(AstTuple.parse("sppspssp"))
    assert abs_degree((0, 2, 0, 2)) == 1


def test_even_cusp_family_member_is_regular_over_the_reals():
    # J = 3y^2 + x^4 vanishes only at the origin
    assert germ_ast(G("x", "y^3+x^4*y")).ast.word == "p"
