"""Operator norms, resolvent norms and pseudospectrum witnesses."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import DomainError, PoleError
from .svd import jacobi_svd, singular_values, singular_values_batch

SINGULAR_CUTOFF = 1e-14
EIGEN_TOL = 1e-12


def _norm_kind(p):
    if p in (1, "1"):
        return 1
    if p in (2, "2"):
        return 2
    if p in ("inf", "Inf", "infinity") or (isinstance(p, float) and math.isinf(p) and p > 0):
        return math.inf
    raise DomainError(f"unsupported operator norm p={p!r}; use 1, 2 or inf")


def opnorm(a, p=2) -> float:
    """Induced matrix p-norm for ``p`` in ``{1, 2, inf}``."""
    kind = _norm_kind(p)
    a = np.asarray(a, dtype=complex)
    if a.size == 0:
        return 0.0
    if kind == 1:
        return float(np.abs(a).sum(axis=0).max())
    if kind == math.inf:
        return float(np.abs(a).sum(axis=1).max())
    return float(singular_values(a)[0])


def opnorm_batch(a: np.ndarray, p=2) -> np.ndarray:
    kind = _norm_kind(p)
    a = np.asarray(a, dtype=complex)
    if kind == 1:
        return np.abs(a).sum(axis=1).max(axis=1)
    if kind == math.inf:
        return np.abs(a).sum(axis=2).max(axis=1)
    return singular_values_batch(a)[:, 0]


def inverse_norm_batch(a: np.ndarray, p=2) -> np.ndarray:
    """``||a^{-1}||_p`` for a stack, ``+inf`` where numerically singular."""
    kind = _norm_kind(p)
    a = np.asarray(a, dtype=complex)
    s = singular_values_batch(a)
    smin = s[:, -1]
    fro = np.sqrt((np.abs(a) ** 2).sum(axis=(1, 2)))
    singular = smin <= SINGULAR_CUTOFF * fro
    out = np.full(a.shape[0], np.inf)
    ok = ~singular
    if kind == 2:
        out[ok] = 1.0 / smin[ok]
    elif ok.any():
        out[ok] = opnorm_batch(np.linalg.inv(a[ok]), kind)
    return out


def _shifted(m, lam0):
    a = np.array(m.eval_at(lam0), dtype=complex)
    a[np.diag_indices_from(a)] -= complex(lam0)
    return a


def is_eigenvalue(m, lam0, tol: float = EIGEN_TOL) -> bool:
    """True when the characteristic numerator vanishes at ``lam0``."""
    num = m.char_ratfunc().num
    if num.degree <= 0:
        return False
    val = abs(num.evaluate(complex(lam0)))
    return val <= tol * max(1.0, float(num.magnitude_scale(complex(lam0))))


def resolvent_norm(m, lam0, p=2) -> float:
    """``||(M(lam0) - lam0 I)^{-1}||_p``.

    Returns ``inf`` at eigenvalues.  Where ``M`` itself has a pole the
    symbolic resolvent is evaluated instead; a pole of the resolvent that is
    not an eigenvalue raises :class:`PoleError`.
    """
    kind = _norm_kind(p)
    try:
        a = _shifted(m, lam0)
    except PoleError:
        g = m.resolvent()
        try:
            ga = np.array(g.eval_at(lam0), dtype=complex)
        except PoleError:
            if is_eigenvalue(m, lam0):
                return math.inf
            raise
        return opnorm(ga, kind)
    return float(inverse_norm_batch(a[None], kind)[0])


@dataclass(frozen=True)
class PseudoWitness:
    """Smallest singular triple of ``M(lam) - lam I`` and the rank-one
    perturbation of norm ``sigma_min`` that makes ``lam`` an exact eigenvalue.
    """

    lam: complex
    sigma_min: float
    right_vector: np.ndarray
    left_vector: np.ndarray
    perturbation: np.ndarray


def pseudo_witness(m, lam0) -> PseudoWitness:
    a = _shifted(m, lam0)
    u, s, vh = jacobi_svd(a)
    smin = float(s[-1])
    right = vh[-1].conj()
    if smin > 0 and smin > s[0] * a.shape[0] * np.finfo(float).eps:
        left = a @ right / smin
        left = left / np.linalg.norm(left)
    else:
        left = u[:, -1]
    e = -smin * np.outer(left, right.conj())
    return PseudoWitness(complex(lam0), smin, right, left, e)
