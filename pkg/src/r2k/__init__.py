"""Exact kernel for the generalized Ramond N=2 superconformal algebra."""

from .algebra import Algebra, Element, Sym, render_element
from .field import ONE, ZERO, Scalar, as_scalar
from .gamma import AdditiveHom, GammaEmbedding, MultiplicativeHom
from .parse import parse_element, parse_index, parse_scalar
from .report import CheckReport, emit_report

__all__ = [
    "Algebra", "Element", "Sym", "render_element", "ONE", "ZERO", "Scalar", "as_scalar",
    "AdditiveHom", "GammaEmbedding", "MultiplicativeHom", "parse_element", "parse_index",
    "parse_scalar", "CheckReport", "emit_report",
]
