"""One-sided (Hestenes) Jacobi SVD for dense complex matrices.

The kernel works on a stack of matrices at once so that whole raster grids
can be processed in a handful of vectorised sweeps.  A rotation that is not
needed for one matrix of the stack is an exact no-op on it, so each
matrix's result depends only on its own entries.
"""
from __future__ import annotations

import numpy as np

EPS = np.finfo(float).eps
MAX_SWEEPS = 60


def _jacobi_columns(a: np.ndarray, want_v: bool, max_sweeps: int = MAX_SWEEPS):
    """Orthogonalise the columns of each ``a[b]`` (shape ``(B, m, n)``).

    Returns the rotated stack and, when requested, the accumulated unitary
    ``v`` with ``a_in @ v == a_out``.
    """
    a = np.array(a, dtype=complex, copy=True)
    nb, m, n = a.shape
    v = np.broadcast_to(np.eye(n, dtype=complex), (nb, n, n)).copy() if want_v else None
    tol = max(n, m) * EPS
    for _ in range(max_sweeps):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                ap = a[:, :, p].copy()
                aq = a[:, :, q]
                alpha = np.einsum("bi,bi->b", ap.conj(), ap).real
                beta = np.einsum("bi,bi->b", aq.conj(), aq).real
                gamma = np.einsum("bi,bi->b", ap.conj(), aq)
                g = np.abs(gamma)
                active = g > tol * np.sqrt(alpha * beta)
                if not active.any():
                    continue
                rotated = True
                gs = np.where(active, g, 1.0)
                phase = np.where(active, gamma / gs, 1.0)
                zeta = (beta - alpha) / (2.0 * gs)
                sgn = np.where(zeta >= 0, 1.0, -1.0)
                t = sgn / (np.abs(zeta) + np.sqrt(1.0 + zeta * zeta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = c * t
                c = np.where(active, c, 1.0)[:, None]
                s = np.where(active, s, 0.0)[:, None]
                ph = phase.conj()[:, None]
                aq_ph = aq * ph
                a[:, :, p] = c * ap - s * aq_ph
                a[:, :, q] = s * ap + c * aq_ph
                if want_v:
                    vp = v[:, :, p].copy()
                    vq_ph = v[:, :, q] * ph
                    v[:, :, p] = c * vp - s * vq_ph
                    v[:, :, q] = s * vp + c * vq_ph
        if not rotated:
            break
    return a, v


def singular_values_batch(a: np.ndarray) -> np.ndarray:
    """Singular values (descending) of every matrix in a ``(B, m, n)`` stack."""
    a = np.asarray(a, dtype=complex)
    if a.shape[1] < a.shape[2]:
        a = np.conj(np.swapaxes(a, 1, 2))
    out, _ = _jacobi_columns(a, want_v=False)
    s = np.sqrt(np.einsum("bij,bij->bj", out.conj(), out).real)
    return -np.sort(-s, axis=1)


def singular_values(a) -> np.ndarray:
    """Singular values of one matrix, in descending order."""
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2:
        raise ValueError("expected a 2-D matrix")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    if a.size == 0:
        return np.zeros(0)
    return singular_values_batch(a[None])[0]


def jacobi_svd(a):
    """Thin SVD ``a = u @ diag(s) @ vh`` with ``s`` descending.

    Columns of ``u`` belonging to zero singular values are completed to an
    orthonormal set.
    """
    a = np.asarray(a, dtype=complex)
    m, n = a.shape
    if m < n:
        u, s, vh = jacobi_svd(a.conj().T)
        return vh.conj().T, s, u.conj().T
    out, v = _jacobi_columns(a[None], want_v=True)
    out, v = out[0], v[0]
    s = np.linalg.norm(out, axis=0)
    order = np.argsort(-s, kind="stable")
    s, out, v = s[order], out[:, order], v[:, order]
    u = np.zeros((m, n), dtype=complex)
    big = s > (s[0] if n else 0.0) * max(m, n) * EPS
    u[:, big] = out[:, big] / s[big]
    if not big.all():
        u = _complete(u, big)
    return u, s, v.conj().T


def _complete(u: np.ndarray, have: np.ndarray) -> np.ndarray:
    """Fill the columns of ``u`` not flagged in ``have`` orthonormally."""
    m = u.shape[0]
    basis = [u[:, k] for k in np.flatnonzero(have)]
    for k in np.flatnonzero(~have):
        for e in range(m):
            cand = np.zeros(m, dtype=complex)
            cand[e] = 1.0
            for b in basis:
                cand = cand - b * np.vdot(b, cand)
            nrm = np.linalg.norm(cand)
            if nrm > 0.5:
                cand = cand / nrm
                # second pass for numerical orthogonality
                for b in basis:
                    cand = cand - b * np.vdot(b, cand)
                cand = cand / np.linalg.norm(cand)
                basis.append(cand)
                u[:, k] = cand
                break
    return u
