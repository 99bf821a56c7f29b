"""Exact computations in the Temperley-Lieb algebra TL_n(q) and its half-diagram modules."""

from .coeff_ring import ONE, Q, ZERO, Poly, RatFunc, eval_at, parse_poly, parse_ratfunc
from .diagram import FullDiagram, HalfDiagram, KILLED, THROUGH
from .encodings import BracketSeq, DyckPath, RestrictedSeq, StepKind
from .half_module import UVector, act, build_ortho_basis, inner_u, xi_prime
from .matrix_iso import BlockMatrix, e_prime, iso, normalized_iso
from .tl_algebra import TLElement, inner_tl, mul, star, tl_gen, tl_one, trace

__version__ = "0.1.0"

__all__ = [
    "ONE", "Q", "ZERO", "Poly", "RatFunc", "eval_at", "parse_poly", "parse_ratfunc",
    "FullDiagram", "HalfDiagram", "KILLED", "THROUGH",
    "BracketSeq", "DyckPath", "RestrictedSeq", "StepKind",
    "UVector", "act", "build_ortho_basis", "inner_u", "xi_prime",
    "BlockMatrix", "e_prime", "iso", "normalized_iso",
    "TLElement", "inner_tl", "mul", "star", "tl_gen", "tl_one", "trace",
]
