"""Gershgorin-type regions and pseudospectrum / pseudoresonance rasters.

Raster values are raw norms.  Membership at tolerance ``eps`` is the strict
test ``value > 1/eps``.  Points where a pole survives symbolic cancellation
are flagged and left out of inclusion checks.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, PoleError
from .numerics import inverse_norm_batch, opnorm, opnorm_batch, resolvent_norm, singular_values_batch
from .numerics.norms import _norm_kind
from .wmatrix import POLE_TOL, WMatrix, as_wmatrix

KINDS = ("pseudospectrum", "pseudoresonance", "gershgorin", "sigma_min")
CHUNK = 4096


@dataclass(frozen=True)
class GridSpec:
    """Rectangular window with ``nx`` by ``ny`` points, endpoints included."""

    re_min: float
    re_max: float
    im_min: float
    im_max: float
    nx: int = 200
    ny: int = 200

    def __post_init__(self):
        vals = (self.re_min, self.re_max, self.im_min, self.im_max)
        if not all(math.isfinite(float(v)) for v in vals):
            raise DomainError("grid window must be finite")
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise DomainError("grid window needs re_min < re_max and im_min < im_max")
        if int(self.nx) != self.nx or int(self.ny) != self.ny or self.nx < 2 or self.ny < 2:
            raise DomainError("grid needs at least 2 points per axis")

    @classmethod
    def parse(cls, window: str, grid: str = "200x200") -> "GridSpec":
        try:
            a, b, c, d = (float(x) for x in window.split(","))
            nx, ny = (int(x) for x in grid.lower().split("x"))
        except ValueError as exc:
            raise DomainError(f"bad window {window!r} or grid {grid!r}") from exc
        return cls(a, b, c, d, nx, ny)

    def axes(self) -> tuple[np.ndarray, np.ndarray]:
        i = np.arange(self.nx)
        j = np.arange(self.ny)
        re = self.re_min + i * ((self.re_max - self.re_min) / (self.nx - 1))
        im = self.im_min + j * ((self.im_max - self.im_min) / (self.ny - 1))
        return re, im

    def points(self) -> np.ndarray:
        """Complex grid of shape ``(ny, nx)``; row ``j`` has fixed imaginary part."""
        re, im = self.axes()
        return re[None, :] + 1j * im[:, None]

    def nearest(self, z: complex) -> tuple[int, int]:
        """``(j, i)`` index of the grid point closest to ``z`` (clamped)."""
        re, im = self.axes()
        return int(np.abs(im - z.imag).argmin()), int(np.abs(re - z.real).argmin())


@dataclass
class RegionRaster:
    spec: GridSpec
    kind: str
    values: np.ndarray
    flags: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown raster kind {self.kind!r}")
        shape = (self.spec.ny, self.spec.nx)
        if self.values.shape != shape:
            raise DomainError(f"values have shape {self.values.shape}, grid is {shape}")
        if self.flags is None:
            self.flags = np.zeros(shape, dtype=bool)

    def members(self, eps: float | None = None) -> np.ndarray:
        """Boolean membership grid.  ``eps`` is ignored for Gershgorin rasters."""
        if self.kind == "gershgorin":
            return self.values != 0
        if eps is None or not eps > 0:
            raise DomainError("membership needs a positive eps")
        if self.kind == "sigma_min":
            return self.values < eps
        return self.values > 1.0 / eps

    def __eq__(self, other):
        if not isinstance(other, RegionRaster):
            return NotImplemented
        return (self.spec == other.spec and self.kind == other.kind
                and np.array_equal(self.values, other.values)
                and np.array_equal(self.flags, other.flags))


def _workers() -> int:
    env = os.environ.get("ISORED_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise DomainError(f"ISORED_THREADS must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


def _chunked(z: np.ndarray, fn, dtype, threads: int | None = None):
    """Apply ``fn(chunk) -> (values, flags)`` over fixed-size chunks.

    Chunks are merged by position, so the result does not depend on the
    number of threads or on scheduling.
    """
    flat = z.ravel()
    starts = range(0, flat.size, CHUNK)
    threads = threads or _workers()
    if threads == 1 or flat.size <= CHUNK:
        parts = [fn(flat[s:s + CHUNK]) for s in starts]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda s: fn(flat[s:s + CHUNK]), starts))
    vals = np.concatenate([p[0] for p in parts]).astype(dtype, copy=False)
    flags = np.concatenate([p[1] for p in parts])
    return vals.reshape(z.shape), flags.reshape(z.shape)


# --------------------------------------------------------------------------
# Gershgorin-type regions


def _eval_poly_grid(p, z: np.ndarray) -> np.ndarray:
    if not p.coeffs:
        return np.zeros(z.shape, dtype=complex)
    return np.asarray(p.evaluate(z), dtype=complex)


def gershgorin_members_batch(mbar, z) -> np.ndarray:
    """Row bitmasks for every point of ``z``: bit ``i`` is set iff
    ``|z - Mbar_ii(z)| <= sum_{j != i} |Mbar_ij(z)|``."""
    z = np.asarray(z, dtype=complex)
    n = len(mbar)
    if any(len(r) != n for r in mbar):
        raise DomainError("polynomial extension must be square")
    if n > 62:
        raise DomainError("bitmask rasters support at most 62 rows")
    mask = np.zeros(z.shape, dtype=np.int64)
    for i, row in enumerate(mbar):
        radius = np.zeros(z.shape)
        for j, p in enumerate(row):
            if j != i:
                radius = radius + np.abs(_eval_poly_grid(p, z))
        inside = np.abs(z - _eval_poly_grid(row[i], z)) <= radius
        mask |= inside.astype(np.int64) << i
    return mask


def gershgorin_member(mbar, lam0) -> int:
    return int(gershgorin_members_batch(mbar, np.array([complex(lam0)]))[0])


def gershgorin_raster(m, spec: GridSpec, use_spectral_inverse: bool = False) -> RegionRaster:
    """Bitmask raster of the region of ``M`` (or of its spectral inverse)."""
    m = as_wmatrix(m)
    target = m.spectral_inverse() if use_spectral_inverse else m
    mbar = target.polynomial_extension()
    z = spec.points()
    vals, flags = _chunked(z, lambda c: (gershgorin_members_batch(mbar, c),
                                         np.zeros(c.shape, dtype=bool)), np.int64)
    return RegionRaster(spec, "gershgorin", vals, flags)


# --------------------------------------------------------------------------
# pseudospectra and pseudoresonances


def _shifted_values(m: WMatrix, z: np.ndarray):
    vals, poles = m.evaluate_many(z)
    idx = np.arange(m.n)
    vals[:, idx, idx] -= z[:, None]
    return vals, poles


def _pseudospectrum_chunk(m: WMatrix, kind, z):
    vals, poles = _shifted_values(m, z)
    out = np.empty(z.size)
    flags = np.zeros(z.size, dtype=bool)
    ok = ~poles
    out[ok] = inverse_norm_batch(vals[ok], kind)
    for k in np.flatnonzero(poles):
        try:
            out[k] = resolvent_norm(m, complex(z[k]), kind)
        except PoleError:
            out[k] = math.inf
            flags[k] = True
    return out, flags


def pseudospectrum_raster(m, spec: GridSpec, p=2, threads: int | None = None) -> RegionRaster:
    """``||(M(z) - z I)^{-1}||_p`` on the grid; ``inf`` at eigenvalues."""
    m = as_wmatrix(m)
    kind = _norm_kind(p)
    m.char_ratfunc()
    if any(x.den.degree > 0 for r in m.entries for x in r):
        m.resolvent()  # warm the shared cache before threads start
    vals, flags = _chunked(spec.points(), lambda c: _pseudospectrum_chunk(m, kind, c), float, threads)
    return RegionRaster(spec, "pseudospectrum", vals, flags)


def _is_resonance(m: WMatrix, z0: complex) -> bool:
    den = m.char_ratfunc().den
    if den.degree <= 0:
        return False
    return abs(den.evaluate(z0)) <= POLE_TOL * max(1.0, float(den.magnitude_scale(z0)))


def _pseudoresonance_chunk(m: WMatrix, kind, z):
    vals, poles = _shifted_values(m, z)
    out = np.full(z.size, math.inf)
    flags = np.zeros(z.size, dtype=bool)
    ok = ~poles
    out[ok] = opnorm_batch(vals[ok], kind)
    for k in np.flatnonzero(poles):
        flags[k] = not _is_resonance(m, complex(z[k]))
    return out, flags


def pseudoresonance_raster(m, spec: GridSpec, p=2, threads: int | None = None) -> RegionRaster:
    """``||M(z) - z I||_p`` on the grid; ``inf`` at poles of ``M``.

    Poles that are resonances are unflagged; other poles are flagged.
    """
    m = as_wmatrix(m)
    kind = _norm_kind(p)
    m.char_ratfunc()
    vals, flags = _chunked(spec.points(), lambda c: _pseudoresonance_chunk(m, kind, c), float, threads)
    return RegionRaster(spec, "pseudoresonance", vals, flags)


def _sigma_min_chunk(m: WMatrix, z):
    vals, poles = _shifted_values(m, z)
    out = np.empty(z.size)
    flags = np.zeros(z.size, dtype=bool)
    ok = ~poles
    out[ok] = singular_values_batch(vals[ok])[:, -1]
    for k in np.flatnonzero(poles):
        try:
            g = m.resolvent().eval_at(complex(z[k]))
            out[k] = 1.0 / opnorm(g, 2) if np.any(g) else math.inf
        except PoleError:
            out[k] = 0.0
            flags[k] = True
    return out, flags


def sigma_min_raster(m, spec: GridSpec, threads: int | None = None) -> RegionRaster:
    """Smallest singular value of ``M(z) - z I`` on the grid."""
    m = as_wmatrix(m)
    if any(x.den.degree > 0 for r in m.entries for x in r):
        m.resolvent()
    vals, flags = _chunked(spec.points(), lambda c: _sigma_min_chunk(m, c), float, threads)
    return RegionRaster(spec, "sigma_min", vals, flags)


# --------------------------------------------------------------------------
# inclusion checks


@dataclass
class InclusionReport:
    eps: float | None
    violations: list = field(default_factory=list)
    flagged: list = field(default_factory=list)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        tag = "inclusion holds" if self.ok else f"{len(self.violations)} violating points"
        eps = "" if self.eps is None else f" at eps={self.eps:g}"
        return f"{tag}{eps} ({self.checked} points checked, {len(self.flagged)} flagged)"


def check_inclusion(inner: RegionRaster, outer: RegionRaster, eps: float | None = None) -> InclusionReport:
    """Grid points where ``inner`` is a member but ``outer`` is not."""
    if inner.spec != outer.spec:
        raise DomainError("rasters are on different grids")
    if inner.kind != outer.kind:
        raise DomainError(f"cannot compare a {inner.kind} raster with a {outer.kind} raster")
    if inner.kind == "gershgorin":
        eps = None
    a = inner.members(eps)
    b = outer.members(eps)
    flagged = inner.flags | outer.flags
    bad = a & ~b & ~flagged
    pts = inner.spec.points()
    report = InclusionReport(eps, checked=int((~flagged).sum()))
    report.violations = [(int(j), int(i), complex(pts[j, i])) for j, i in zip(*np.nonzero(bad))]
    report.flagged = [(int(j), int(i), complex(pts[j, i])) for j, i in zip(*np.nonzero(flagged))]
    return report
