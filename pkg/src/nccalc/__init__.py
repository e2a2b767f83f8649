"""Exact symbolic Riemannian geometry for noncommutative tori and 3-spheres."""
from .errors import NCCalcError
from .expr import parse_element, parse_scalar, render_element, render_latex
from .qalgebra import AlgebraSpec, AlgElement, Derivation, invert
from .scalars import CentralFn, Scalar

__all__ = ["AlgebraSpec", "AlgElement", "CentralFn", "Derivation", "NCCalcError", "Scalar",
           "invert", "parse_element", "parse_scalar", "render_element", "render_latex"]
