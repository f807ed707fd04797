"""Floating-point kernels: polynomial roots, Jacobi SVD, operator norms."""
from .norms import (
    PseudoWitness,
    inverse_norm_batch,
    is_eigenvalue,
    opnorm,
    opnorm_batch,
    pseudo_witness,
    resolvent_norm,
)
from .roots import roots_numeric
from .svd import jacobi_svd, singular_values, singular_values_batch

__all__ = [
    "PseudoWitness",
    "inverse_norm_batch",
    "is_eigenvalue",
    "jacobi_svd",
    "opnorm",
    "opnorm_batch",
    "pseudo_witness",
    "resolvent_norm",
    "roots_numeric",
    "singular_values",
    "singular_values_batch",
]
