"""Numerical recognition of plane-to-plane germs by their associated tuple."""

from .germ import (
    ClassReport,
    GermComparison,
    MarkedCircle,
    RecognitionConfig,
    extract_marks,
    fold_check,
    germ_ast,
    germ_equiv,
)
from .marks import CircleMarks, ExtractionTolerances, extract_circle_marks
from .numeric import CompiledGerm, NumCtx, get_context
from .polynomial import Poly, PolyGerm, jacobian_det, parse_germ, parse_poly
from .tracing import LevelCurve, LevelCurveCircle, TraceConfig, trace_level_curve

__all__ = [
    "CircleMarks",
    "ClassReport",
    "CompiledGerm",
    "ExtractionTolerances",
    "GermComparison",
    "LevelCurve",
    "LevelCurveCircle",
    "MarkedCircle",
    "NumCtx",
    "Poly",
    "PolyGerm",
    "RecognitionConfig",
    "TraceConfig",
    "extract_circle_marks",
    "extract_marks",
    "fold_check",
    "germ_ast",
    "germ_equiv",
    "get_context",
    "jacobian_det",
    "parse_germ",
    "parse_poly",
    "trace_level_curve",
]
