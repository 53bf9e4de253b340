"""Zernike radial polynomials via balanced-binary-tree recursion and iteration."""

from .bbt import EvalResult, eval_bbtia, eval_bbtia_result, eval_bbtra, f_coeffs
from .core import (
    FlopCounter,
    FlopVector,
    InvalidIndex,
    RadialIndex,
    leaf_type_a,
    leaf_type_b,
    make_index,
    pow_by_squaring,
)
from .legacy import Stopping, eval_kintner, eval_prata_rusch, eval_shakibaei
from .methods import Method, radial
from .reference import binomial, coefficients, eval_reference

__all__ = [
    "EvalResult",
    "FlopCounter",
    "FlopVector",
    "InvalidIndex",
    "Method",
    "RadialIndex",
    "Stopping",
    "binomial",
    "coefficients",
    "eval_bbtia",
    "eval_bbtia_result",
    "eval_bbtra",
    "eval_kintner",
    "eval_prata_rusch",
    "eval_reference",
    "eval_shakibaei",
    "f_coeffs",
    "leaf_type_a",
    "leaf_type_b",
    "make_index",
    "pow_by_squaring",
    "radial",
]
