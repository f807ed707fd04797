"""Isospectral reduction and the bookkeeping of what it does to spectra."""
from __future__ import annotations

from .errors import ConsistencyError, DomainError
from .wmatrix import (
    RootMultiset,
    WMatrix,
    _matmul,
    as_wmatrix,
    complement,
    index_set,
    inverse,
)


def _partition(m: WMatrix, keep):
    n = m.n
    b = index_set(keep, n)
    if len(b) == n:
        raise DomainError("the kept index set must be a proper subset")
    i = complement(b, n)
    return [k - 1 for k in b], [k - 1 for k in i]


def _schur_reduce(m: WMatrix, b0, i0) -> WMatrix:
    """``M_BB - M_BI (M_II - lambda I)^{-1} M_IB`` with 0-based blocks."""
    m_ii = m.block(i0, i0).shifted()
    x = inverse(m_ii.entries)
    m_bi = m.block(b0, i0).entries
    m_ib = m.block(i0, b0).entries
    corr = _matmul(_matmul(m_bi, x), m_ib)
    m_bb = m.block(b0, b0).entries
    return WMatrix([[a - c for a, c in zip(r, s)] for r, s in zip(m_bb, corr)])


def isospectral_reduce(m, keep) -> WMatrix:
    """Reduce ``M`` onto the 1-based index set ``keep``.

    Raises :class:`~isored.errors.SingularityError` when ``M_II - lambda I``
    is singular over the rational-function field, which cannot happen for
    matrices whose entries all have non-positive degree.
    """
    m = as_wmatrix(m)
    b0, i0 = _partition(m, keep)
    return _schur_reduce(m, b0, i0)


def sequential_reduce(m, chain) -> WMatrix:
    """Reduce over ``B_1 ⊃ B_2 ⊃ ... ⊃ B_m`` in turn.

    Every set in ``chain`` is given in the original 1-based labelling.
    """
    m = as_wmatrix(m)
    chain = [index_set(b, m.n) for b in chain]
    if not chain:
        raise DomainError("empty reduction chain")
    prev = tuple(range(1, m.n + 1))
    for b in chain:
        if not set(b) < set(prev):
            raise DomainError(f"chain is not strictly nested at {list(b)}")
        prev = b
    current, labels = m, tuple(range(1, m.n + 1))
    for b in chain:
        pos = [labels.index(k) + 1 for k in b]
        current = isospectral_reduce(current, pos)
        labels = b
    return current


def predicted_reduced_spectra(m, keep) -> tuple[RootMultiset, RootMultiset]:
    """Spectrum and inverse spectrum of ``R(M; keep)`` predicted from
    ``M`` and ``M_II`` alone::

        sigma(R)    = (sigma(M) ∪ sigma^-1(M_II)) - (sigma(M_II) ∪ sigma^-1(M))
        sigma^-1(R) = (sigma(M_II) ∪ sigma^-1(M)) - (sigma(M) ∪ sigma^-1(M_II))
    """
    m = as_wmatrix(m)
    _, i0 = _partition(m, keep)
    m_ii = m.block(i0, i0)
    gained = m.spectrum() | m_ii.inverse_spectrum()
    lost = m_ii.spectrum() | m.inverse_spectrum()
    return gained - lost, lost - gained


def reduce_spectral_inverse(m, keep) -> WMatrix:
    """``R(S(M); keep)`` computed two ways that must agree exactly.

    Path one reduces the spectral inverse directly.  Path two uses the
    resolvent ``G = (M - lambda I)^{-1}``: ``G_BB - G_BI G_II^{-1} G_IB +
    lambda I``.
    """
    m = as_wmatrix(m)
    b0, i0 = _partition(m, keep)
    direct = _schur_reduce(m.spectral_inverse(), b0, i0)
    g = m.resolvent()
    g_ii_inv = inverse(g.block(i0, i0).entries)
    corr = _matmul(_matmul(g.block(b0, i0).entries, g_ii_inv), g.block(i0, b0).entries)
    schur = WMatrix([[a - c for a, c in zip(r, s)]
                     for r, s in zip(g.block(b0, b0).entries, corr)]).add_lambda(1)
    if schur != direct:
        raise ConsistencyError("the two reductions of the spectral inverse disagree")
    return direct
