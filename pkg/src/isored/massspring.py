"""Line mass-spring networks and their boundary frequency response.

The response on boundary nodes ``B`` is the isospectral reduction of the
stiffness matrix ``K`` onto ``B``, read with ``lambda = omega^2``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError, PoleError, ResonanceError
from .reduction import isospectral_reduce
from .wmatrix import WMatrix, index_set, shifted_matvec


@dataclass(frozen=True)
class SpringNetwork:
    n: int
    springs: tuple = ()
    masses: tuple | None = None

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise DomainError("a network needs at least one node")
        clean = []
        for s in self.springs:
            if len(s) != 3:
                raise DomainError(f"spring {s!r} is not (i, j, k)")
            i, j, k = int(s[0]), int(s[1]), Fraction(s[2])
            if i > j:
                i, j = j, i
            if not 1 <= i < j <= self.n:
                raise DomainError(f"spring ({s[0]}, {s[1]}) needs distinct nodes in 1..{self.n}")
            if k <= 0:
                raise DomainError(f"spring ({i}, {j}) has non-positive stiffness {k}")
            clean.append((i, j, k))
        object.__setattr__(self, "springs", tuple(clean))
        if self.masses is not None:
            ms = tuple(Fraction(x) for x in self.masses)
            if len(ms) != self.n:
                raise DomainError(f"{len(ms)} masses for {self.n} nodes")
            if any(x <= 0 for x in ms):
                raise DomainError("masses must be positive")
            object.__setattr__(self, "masses", ms)

    @classmethod
    def path(cls, n: int, stiffness=1) -> "SpringNetwork":
        """Nodes ``1..n`` joined in a line; ``stiffness`` is a scalar or one
        value per spring."""
        if isinstance(stiffness, (list, tuple)):
            ks = list(stiffness)
            if len(ks) != n - 1:
                raise DomainError(f"{len(ks)} stiffnesses for {n - 1} springs")
        else:
            ks = [stiffness] * (n - 1)
        return cls(n, tuple((i + 1, i + 2, k) for i, k in enumerate(ks)))

    @property
    def unit_masses(self) -> bool:
        return self.masses is None or all(x == 1 for x in self.masses)


def stiffness_matrix(net: SpringNetwork) -> WMatrix:
    k = [[Fraction(0)] * net.n for _ in range(net.n)]
    for i, j, c in net.springs:
        i, j = i - 1, j - 1
        k[i][i] += c
        k[j][j] += c
        k[i][j] -= c
        k[j][i] -= c
    return WMatrix(k)


def frequency_response(net: SpringNetwork, boundary) -> WMatrix:
    """``R_lambda(K; B)``: boundary displacements to boundary forces."""
    if not net.unit_masses:
        raise DomainError("non-unit masses are not supported; the reduction assumes lambda*I")
    b = index_set(boundary, net.n)
    k = stiffness_matrix(net)
    if len(b) == net.n:
        return k
    return isospectral_reduce(k, b)


def boundary_force(net: SpringNetwork, boundary, omega: float, u_b) -> np.ndarray:
    """``(R_{w^2}(K; B) - w^2 I) u_B`` with the product formed before evaluation."""
    resp = frequency_response(net, boundary)
    lam0 = omega * omega
    if isinstance(omega, float) and float(lam0).is_integer():
        lam0 = int(lam0)
    try:
        return shifted_matvec(resp, u_b, lam0)
    except PoleError as exc:
        raise ResonanceError(f"omega^2 = {lam0} is a resonance: the boundary force is unbounded",
                             entry=exc.entry, point=lam0) from exc
