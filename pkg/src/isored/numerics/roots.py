"""Aberth-Ehrlich simultaneous root finder."""
from __future__ import annotations

import numpy as np

from ..errors import DomainError, NumericError
from ..field import Poly

MAX_SWEEPS = 200
STEP_TOL = 1e-14
RESIDUAL_TOL = 1e-9


def _as_coeffs(p) -> np.ndarray:
    """Complex coefficients, highest power first, leading term nonzero."""
    if isinstance(p, Poly):
        cc = p.complex_coeffs.copy()
    else:
        # plain sequence given lowest power first, like Poly
        cc = np.asarray(p, dtype=complex)[::-1].copy()
    nz = np.flatnonzero(cc)
    if nz.size == 0:
        raise DomainError("roots of the zero polynomial")
    return cc[nz[0]:]


def roots_numeric(p, max_sweeps: int = MAX_SWEEPS, tol: float = STEP_TOL) -> np.ndarray:
    """All ``deg(p)`` complex roots of a square-free polynomial.

    ``p`` is a :class:`Poly` or a coefficient sequence with the constant term
    first.  Raises :class:`NumericError` if the iteration stalls or a root
    fails the residual test ``|p(z)| <= 1e-9 * sum |c_k| max(1,|z|)^k``.
    """
    cc = _as_coeffs(p)
    n = cc.size - 1
    if n == 0:
        return np.zeros(0, dtype=complex)
    cc = cc / cc[0]
    if n == 1:
        return np.array([-cc[1]])
    dc = cc[:-1] * np.arange(n, 0, -1)

    # Cauchy bound; the angular offset keeps guesses off symmetry lines
    radius = 1.0 + np.max(np.abs(cc[1:]))
    k = np.arange(n)
    z = radius * np.exp(1j * (2 * np.pi * k / n + 0.4))

    converged = False
    for _ in range(max_sweeps):
        pz = np.polyval(cc, z)
        dpz = np.polyval(dc, z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        s = inv.sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            w = pz / dpz
            step = w / (1.0 - w * s)
        step = np.where(pz == 0, 0.0, step)
        if not np.all(np.isfinite(step)):
            # exact hit of a critical point: nudge and continue
            bad = ~np.isfinite(step)
            step[bad] = 1e-3 * radius * np.exp(1j * k[bad])
        z = z - step
        if np.all(np.abs(step) <= tol * np.maximum(1.0, np.abs(z))):
            converged = True
            break

    scale = np.polyval(np.abs(cc), np.maximum(1.0, np.abs(z)))
    resid = np.abs(np.polyval(cc, z)) / scale
    if not converged and np.any(resid > RESIDUAL_TOL):
        raise NumericError("Aberth iteration did not converge", residuals=resid)
    if np.any(resid > RESIDUAL_TOL):
        raise NumericError("root residual above tolerance", residuals=resid)
    return z
