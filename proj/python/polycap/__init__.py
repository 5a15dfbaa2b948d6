"""Capacity of homogeneous polynomials with nonnegative coefficients."""

import json
from fractions import Fraction

from ._polycap import (
    ApproxResult,
    BoundReport,
    CapacityResult,
    CheckFailure,
    DiagnosticReport,
    InputError,
    Polynomial,
    ResourceError,
    ScalingResult,
    approx_guarantee_factor,
    bound_report,
    capacity,
    cli_main,
    half_plane_sample_check,
    improved_estimate,
    mixed_discriminant,
    mixed_discriminant_exact,
    permanent,
    permanent_exact,
    rank_factor,
    real_rootedness_check,
    root_profile,
    schrijver_like_permanent_bound,
    sinkhorn,
    vdw_factor,
)


def _scalar(v):
    if isinstance(v, float):
        return v
    if isinstance(v, (int, Fraction)):
        return str(v)
    return str(v) if isinstance(v, str) else float(v)


def _matrix(rows):
    return [[_scalar(v) for v in row] for row in rows]


def sparse(n, terms, mode="exact"):
    """terms: mapping or iterable of (exponent tuple, coefficient)."""
    items = terms.items() if hasattr(terms, "items") else terms
    body = {"kind": "sparse", "n": n,
            "terms": [{"exp": list(e), "coef": _scalar(c)} for e, c in items]}
    return Polynomial.from_json(json.dumps(body), mode)


def product_form(matrix, mode="exact"):
    """prod_i (sum_j a_ij x_j); its mixed partial is per(A)."""
    return Polynomial.from_json(json.dumps({"kind": "matrix", "matrix": _matrix(matrix)}), mode)


def determinantal(matrices, mode="exact"):
    """det(sum_i x_i A_i) for PSD A_i; its mixed partial is D(A_1, ..., A_n)."""
    body = {"kind": "determinantal", "matrices": [_matrix(a) for a in matrices]}
    return Polynomial.from_json(json.dumps(body), mode)
