"""Exact arithmetic and linear algebra."""

from tvlab.core.linalg import infer_field, kernel_basis, matvec, rank, rref
from tvlab.core.scalars import Field, QComplex, Scalar, conj, format_scalar, parse_scalar, re_im, to_field
from tvlab.core.snf import smith_normal_form, sparse_invariant_factors

__all__ = [
    "Field",
    "QComplex",
    "Scalar",
    "conj",
    "format_scalar",
    "infer_field",
    "kernel_basis",
    "matvec",
    "parse_scalar",
    "rank",
    "re_im",
    "rref",
    "smith_normal_form",
    "sparse_invariant_factors",
    "to_field",
]
