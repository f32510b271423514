"""Concrete graded p-adic groups: scalars, elements, sampling and locally constant functions."""

from .padic import PAdicScalar, is_prime, ord_p
from .models import (
    GroupElement,
    GroupModel,
    commutator,
    dilate,
    engel,
    heisenberg,
    inverse,
    make_model,
    multiply,
    qp,
    quasi_norm,
    sample_uniform,
    shell_index,
    unitriangular,
)
from .lcf import LocallyConstantFunction, coset_count, coset_keys, directional_vt, vladimirov_laplacian
from .kernels import BACKEND

__all__ = [
    "PAdicScalar", "is_prime", "ord_p", "GroupElement", "GroupModel", "commutator", "dilate", "engel",
    "heisenberg", "inverse", "make_model", "multiply", "qp", "quasi_norm", "sample_uniform", "shell_index",
    "unitriangular", "LocallyConstantFunction", "coset_count", "coset_keys", "directional_vt",
    "vladimirov_laplacian", "BACKEND",
]
