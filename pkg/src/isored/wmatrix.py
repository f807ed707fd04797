"""Matrices over the rational-function field.

Indices handed to the public functions are 1-based, the way index sets are
written on paper; ``WMatrix[i, j]`` itself is 0-based like any Python
container.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from numbers import Rational

import numpy as np

from .errors import DomainError, PoleError, SingularityError
from .field import (
    LAMBDA_POLY,
    ONE_POLY,
    GaussianRational,
    Poly,
    RatFunc,
    is_w_pi,
    poly_squarefree_factor,
)
from .numerics.roots import roots_numeric

POLE_TOL = 1e-12
ROOT_MATCH_TOL = 1e-9

_ZERO = RatFunc.coerce(0)
_ONE = RatFunc.coerce(1)
_LAM = RatFunc.lam()


# --------------------------------------------------------------------------
# index sets


def index_set(indices, n: int, *, allow_empty: bool = False) -> tuple[int, ...]:
    """Validate a 1-based index set against ``{1, ..., n}``.

    Returns the sorted, duplicate-free tuple.
    """
    try:
        idx = sorted({int(i) for i in indices})
    except (TypeError, ValueError) as exc:
        raise DomainError(f"bad index set {indices!r}") from exc
    if not idx and not allow_empty:
        raise DomainError("index set must be nonempty")
    bad = [i for i in idx if not 1 <= i <= n]
    if bad:
        raise DomainError(f"indices {bad} out of range 1..{n}")
    return tuple(idx)


def complement(indices, n: int) -> tuple[int, ...]:
    s = set(indices)
    return tuple(i for i in range(1, n + 1) if i not in s)


# --------------------------------------------------------------------------
# root multisets


@dataclass(frozen=True)
class RootMultiset:
    """Numeric roots with exact integer multiplicities.

    Union and difference follow the multiset rules: multiplicities add under
    union and subtract (clipped at zero) under difference.  Two roots are the
    same element when they are within ``tol`` of each other.
    """

    items: tuple = ()
    tol: float = ROOT_MATCH_TOL

    @classmethod
    def from_poly(cls, p: Poly, tol: float = ROOT_MATCH_TOL) -> "RootMultiset":
        if p.degree <= 0:
            return cls((), tol)
        items = []
        for factor, mult in poly_squarefree_factor(p):
            real = factor.is_real
            for z in roots_numeric(factor):
                z = complex(z)
                # real factors: drop imaginary parts that are pure rounding
                if real and abs(z.imag) <= 1e-12 * max(1.0, abs(z)):
                    z = complex(z.real, 0.0)
                items.append((z, mult))
        return cls(_canonical(items), tol)

    @classmethod
    def from_values(cls, values, tol: float = ROOT_MATCH_TOL) -> "RootMultiset":
        """Build from a flat list in which repeated values repeat."""
        return cls._merged([(complex(v), 1) for v in values], tol)

    @classmethod
    def _merged(cls, items, tol) -> "RootMultiset":
        out: list[list] = []
        for z, m in items:
            for entry in out:
                if abs(entry[0] - z) <= tol:
                    entry[1] += m
                    break
            else:
                out.append([z, m])
        return cls(_canonical([(z, m) for z, m in out if m > 0]), tol)

    @property
    def total(self) -> int:
        return sum(m for _, m in self.items)

    def __len__(self):
        return self.total

    def roots(self) -> np.ndarray:
        """Roots expanded by multiplicity."""
        return np.array([z for z, m in self.items for _ in range(m)], dtype=complex)

    def union(self, other: "RootMultiset") -> "RootMultiset":
        return RootMultiset._merged(list(self.items) + list(other.items), self.tol)

    __or__ = union

    def difference(self, other: "RootMultiset") -> "RootMultiset":
        left = [[z, m] for z, m in self.items]
        for z, m in other.items:
            best, dist = None, None
            for entry in left:
                d = abs(entry[0] - z)
                if d <= self.tol and (dist is None or d < dist):
                    best, dist = entry, d
            if best is not None:
                best[1] -= m
        return RootMultiset(_canonical([(z, m) for z, m in left if m > 0]), self.tol)

    __sub__ = difference

    def matches(self, other, tol: float | None = None) -> bool:
        """Multiset equality with roots matched within ``tol``."""
        tol = self.tol if tol is None else tol
        if not isinstance(other, RootMultiset):
            other = RootMultiset.from_values(other, tol)
        a = list(self.roots())
        b = list(other.roots())
        if len(a) != len(b):
            return False
        for z in a:
            if not b:
                return False
            d = [abs(z - w) for w in b]
            k = int(np.argmin(d))
            if d[k] > tol:
                return False
            b.pop(k)
        return True

    def __contains__(self, z) -> bool:
        return any(abs(w - complex(z)) <= self.tol for w, _ in self.items)

    def __str__(self):
        return "{" + ", ".join(
            f"{format_root(z)}" + (f" (x{m})" if m > 1 else "") for z, m in self.items
        ) + "}"


def _canonical(items):
    return tuple(sorted(items, key=lambda t: (round(t[0].real, 9), round(t[0].imag, 9))))


def format_root(z: complex) -> str:
    z = complex(z.real + 0.0, z.imag + 0.0)  # drop signed zeros
    if abs(z.imag) <= 1e-13 * max(1.0, abs(z)):
        return f"{z.real:.12g}"
    return f"{z.real:.12g}{z.imag:+.12g}i"


# --------------------------------------------------------------------------
# exact dense linear algebra on grids of RatFunc


def _weight(x: RatFunc) -> int:
    return x.num.degree + x.den.degree


def _det_cofactor(a) -> RatFunc:
    n = len(a)
    if n == 0:
        return _ONE
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    total = _ZERO
    for j in range(n):
        if not a[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in a[1:]]
        term = a[0][j] * _det_cofactor(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def _det_elimination(a) -> RatFunc:
    a = [list(r) for r in a]
    n = len(a)
    det = _ONE
    for k in range(n):
        piv, best = None, None
        for i in range(k, n):
            if a[i][k]:
                w = _weight(a[i][k])
                if best is None or w < best:
                    piv, best = i, w
        if piv is None:
            return _ZERO
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        pk = a[k][k]
        det = det * pk
        inv = pk.inverse()
        for i in range(k + 1, n):
            if not a[i][k]:
                continue
            f = a[i][k] * inv
            row_k, row_i = a[k], a[i]
            for j in range(k + 1, n):
                if row_k[j]:
                    row_i[j] = row_i[j] - f * row_k[j]
    return det


def determinant(a, method: str = "auto") -> RatFunc:
    """Exact determinant of a square grid of :class:`RatFunc`.

    ``method`` is ``"cofactor"``, ``"elimination"`` or ``"auto"`` (cofactor
    expansion up to 4x4, elimination beyond).
    """
    a = [[RatFunc.coerce(x) for x in row] for row in a]
    if any(len(r) != len(a) for r in a):
        raise DomainError("determinant of a non-square matrix")
    if method == "auto":
        method = "cofactor" if len(a) <= 4 else "elimination"
    if method == "cofactor":
        return _det_cofactor(a)
    if method == "elimination":
        return _det_elimination(a)
    raise DomainError(f"unknown determinant method {method!r}")


def _inverse_adjugate(a):
    n = len(a)
    det = _det_cofactor(a)
    if not det:
        raise SingularityError("matrix is singular over the rational-function field")
    if n == 1:
        return [[det.inverse()]]
    dinv = det.inverse()
    out = [[_ZERO] * n for _ in range(n)]
    for i, j in product(range(n), range(n)):
        minor = [row[:i] + row[i + 1:] for k, row in enumerate(a) if k != j]
        c = _det_cofactor(minor)
        if c:
            out[i][j] = c * dinv if (i + j) % 2 == 0 else -(c * dinv)
    return out


def _inverse_elimination(a):
    n = len(a)
    aug = [list(a[i]) + [_ONE if j == i else _ZERO for j in range(n)] for i in range(n)]
    for k in range(n):
        piv, best = None, None
        for i in range(k, n):
            if aug[i][k]:
                w = _weight(aug[i][k])
                if best is None or w < best:
                    piv, best = i, w
        if piv is None:
            raise SingularityError("matrix is singular over the rational-function field")
        aug[k], aug[piv] = aug[piv], aug[k]
        inv = aug[k][k].inverse()
        aug[k] = [x * inv if x else x for x in aug[k]]
        row_k = aug[k]
        for i in range(n):
            if i == k or not aug[i][k]:
                continue
            f = aug[i][k]
            aug[i] = [x - f * y if y else x for x, y in zip(aug[i], row_k)]
    return [row[n:] for row in aug]


def inverse(a, method: str = "auto"):
    """Exact inverse of a square grid; :class:`SingularityError` if none.

    ``"auto"`` uses the adjugate formula up to 3x3 and Gauss-Jordan
    elimination beyond.
    """
    a = [[RatFunc.coerce(x) for x in row] for row in a]
    if method == "auto":
        method = "adjugate" if len(a) <= 3 else "elimination"
    if method == "adjugate":
        return _inverse_adjugate(a)
    if method == "elimination":
        return _inverse_elimination(a)
    raise DomainError(f"unknown inverse method {method!r}")


def _matmul(a, b):
    m, k = len(a), len(b)
    n = len(b[0]) if b else 0
    out = [[_ZERO] * n for _ in range(m)]
    for i in range(m):
        for j in range(n):
            acc = _ZERO
            for t in range(k):
                if a[i][t] and b[t][j]:
                    acc = acc + a[i][t] * b[t][j]
            out[i][j] = acc
    return out


# --------------------------------------------------------------------------
# the matrix type


def _coerce_entry(x) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (Poly, int, Rational, GaussianRational, complex, float, np.number)):
        return RatFunc.coerce(x)
    raise TypeError(f"cannot use {type(x).__name__} as a matrix entry")


class WMatrix:
    """Dense matrix of :class:`RatFunc` entries (usually square)."""

    __slots__ = ("entries", "shape", "_cache")

    def __init__(self, rows):
        if isinstance(rows, WMatrix):
            rows = rows.entries
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        for i, r in enumerate(rows):
            if len(r) != ncols:
                raise DomainError(f"row {i + 1} has {len(r)} entries, expected {ncols}")
        self.entries = tuple(tuple(_coerce_entry(x) for x in r) for r in rows)
        self.shape = (len(rows), ncols)
        self._cache = {}

    @classmethod
    def identity(cls, n: int) -> "WMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_complex(cls, a) -> "WMatrix":
        return cls(np.asarray(a).tolist())

    @property
    def n(self) -> int:
        if self.shape[0] != self.shape[1]:
            raise DomainError(f"matrix of shape {self.shape} is not square")
        return self.shape[0]

    @property
    def is_square(self) -> bool:
        return self.shape[0] == self.shape[1]

    @property
    def is_w_pi(self) -> bool:
        """All entries have non-positive degree."""
        if "w_pi" not in self._cache:
            self._cache["w_pi"] = all(is_w_pi(x) for r in self.entries for x in r)
        return self._cache["w_pi"]

    @property
    def is_constant(self) -> bool:
        return all(x.is_constant() for r in self.entries for x in r)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, WMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def rows(self):
        return [list(r) for r in self.entries]

    # -- algebra ------------------------------------------------------------
    def __add__(self, other: "WMatrix") -> "WMatrix":
        if self.shape != other.shape:
            raise DomainError("shape mismatch")
        return WMatrix([[x + y for x, y in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __sub__(self, other: "WMatrix") -> "WMatrix":
        if self.shape != other.shape:
            raise DomainError("shape mismatch")
        return WMatrix([[x - y for x, y in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __matmul__(self, other: "WMatrix") -> "WMatrix":
        if self.shape[1] != other.shape[0]:
            raise DomainError("shape mismatch")
        return WMatrix(_matmul(self.entries, other.entries))

    def add_lambda(self, c=1) -> "WMatrix":
        """``M + c*lambda*I``."""
        n = self.n
        shift = _LAM * RatFunc.coerce(c)
        return WMatrix([[x + shift if i == j else x for j, x in enumerate(r)]
                        for i, r in enumerate(self.entries)])

    def shifted(self) -> "WMatrix":
        """``M - lambda I``."""
        if "shifted" not in self._cache:
            self._cache["shifted"] = self.add_lambda(-1)
        return self._cache["shifted"]

    def block(self, rows, cols) -> "WMatrix":
        """0-based submatrix."""
        return WMatrix([[self.entries[i][j] for j in cols] for i in rows])

    def transpose(self) -> "WMatrix":
        return WMatrix(list(zip(*self.entries)))

    # -- spectral data ------------------------------------------------------
    def determinant(self, method: str = "auto") -> RatFunc:
        return determinant(self.entries, method)

    def char_ratfunc(self, method: str = "auto") -> RatFunc:
        key = ("char", method)
        if key not in self._cache:
            self._cache[key] = self.shifted().determinant(method)
        return self._cache[key]

    def spectrum(self) -> RootMultiset:
        if "spectrum" not in self._cache:
            self._cache["spectrum"] = RootMultiset.from_poly(self.char_ratfunc().num)
        return self._cache["spectrum"]

    def inverse_spectrum(self) -> RootMultiset:
        if "inverse_spectrum" not in self._cache:
            self._cache["inverse_spectrum"] = RootMultiset.from_poly(self.char_ratfunc().den)
        return self._cache["inverse_spectrum"]

    def inverse(self, method: str = "auto") -> "WMatrix":
        return WMatrix(inverse(self.entries, method))

    def resolvent(self) -> "WMatrix":
        """Symbolic ``(M - lambda I)^{-1}``."""
        if "resolvent" not in self._cache:
            self._cache["resolvent"] = self.shifted().inverse()
        return self._cache["resolvent"]

    def spectral_inverse(self) -> "WMatrix":
        if "specinv" not in self._cache:
            self._cache["specinv"] = self.resolvent().add_lambda(1)
        return self._cache["specinv"]

    def polynomial_extension(self) -> list[list[Poly]]:
        n = self.n
        out = []
        for i, row in enumerate(self.entries):
            li = ONE_POLY
            for x in row:
                li = li * x.den
            new = []
            for j, x in enumerate(row):
                scaled = x.num * li.exact_div(x.den)
                if i == j:
                    # L_i (M_ii - lambda) + lambda
                    scaled = scaled - li * LAMBDA_POLY + LAMBDA_POLY
                new.append(scaled)
            out.append(new)
        assert len(out) == n
        return out

    # -- numeric evaluation -------------------------------------------------
    def eval_at(self, lam0) -> np.ndarray:
        """Entrywise value at ``lam0``; :class:`PoleError` outside the domain.

        Exact inputs (int, Fraction, GaussianRational) are evaluated exactly;
        floats and complex numbers by floating Horner evaluation.
        """
        exact = isinstance(lam0, (int, Rational, GaussianRational)) and not isinstance(lam0, bool)
        out = np.empty(self.shape, dtype=complex)
        for i, row in enumerate(self.entries):
            for j, x in enumerate(row):
                if exact:
                    d = x.den.value(lam0)
                    if abs(complex(d)) <= POLE_TOL:
                        raise PoleError(f"entry ({i + 1},{j + 1}) has a pole at {lam0}",
                                        entry=(i, j), point=lam0)
                    out[i, j] = complex(x.num.value(lam0) / d)
                else:
                    d = x.den.evaluate(complex(lam0))
                    if abs(d) <= POLE_TOL:
                        raise PoleError(f"entry ({i + 1},{j + 1}) has a pole at {lam0}",
                                        entry=(i, j), point=lam0)
                    out[i, j] = x.num.evaluate(complex(lam0)) / d
        return out

    def evaluate_many(self, z: np.ndarray):
        """Evaluate at every point of a flat array.

        Returns ``(values, poles)`` where ``values`` has shape
        ``(len(z), rows, cols)`` and ``poles`` marks points at which some
        denominator is within the pole tolerance of zero (their values are
        left as zero).
        """
        z = np.asarray(z, dtype=complex).ravel()
        m, n = self.shape
        vals = np.zeros((z.size, m, n), dtype=complex)
        poles = np.zeros(z.size, dtype=bool)
        for i, row in enumerate(self.entries):
            for j, x in enumerate(row):
                if not x:
                    continue
                num = x.num.evaluate(z)
                if x.den.is_one():
                    vals[:, i, j] = num
                    continue
                den = x.den.evaluate(z)
                bad = np.abs(den) <= POLE_TOL
                poles |= bad
                vals[:, i, j] = np.where(bad, 0.0, num / np.where(bad, 1.0, den))
        return vals, poles

    def shifted_matvec(self, v, lam0) -> np.ndarray:
        return shifted_matvec(self, v, lam0)

    def __repr__(self):
        return f"WMatrix({[[str(x) for x in r] for r in self.entries]})"

    def __str__(self):
        width = max((len(str(x)) for r in self.entries for x in r), default=1)
        return "\n".join("[" + "  ".join(str(x).rjust(width) for x in r) + "]"
                         for r in self.entries)


def as_wmatrix(m) -> WMatrix:
    return m if isinstance(m, WMatrix) else WMatrix(m)


# --------------------------------------------------------------------------
# operations with 1-based index sets


def submatrix(m: WMatrix, rows, cols) -> WMatrix:
    """Rows and columns selected by 1-based index sets."""
    m = as_wmatrix(m)
    r = index_set(rows, m.shape[0])
    c = index_set(cols, m.shape[1])
    return m.block([i - 1 for i in r], [j - 1 for j in c])


def char_ratfunc(m: WMatrix) -> RatFunc:
    """Reduced ``det(M(lambda) - lambda I)``."""
    return as_wmatrix(m).char_ratfunc()


def spectrum(m: WMatrix) -> RootMultiset:
    return as_wmatrix(m).spectrum()


def inverse_spectrum(m: WMatrix) -> RootMultiset:
    return as_wmatrix(m).inverse_spectrum()


def spectral_inverse(m: WMatrix) -> WMatrix:
    """``(M - lambda I)^{-1} + lambda I``."""
    return as_wmatrix(m).spectral_inverse()


def polynomial_extension(m: WMatrix) -> list[list[Poly]]:
    """Denominator-cleared matrix used for Gershgorin-type regions.

    Row ``i`` is multiplied by ``L_i``, the product of the denominators in
    that row; on the diagonal ``L_i (M_ii - lambda) + lambda`` is stored.
    """
    return as_wmatrix(m).polynomial_extension()


def eval_at(m: WMatrix, lam0) -> np.ndarray:
    return as_wmatrix(m).eval_at(lam0)


def _exact_vector(v):
    out = []
    for x in v:
        x = complex(x) if isinstance(x, (np.complexfloating, np.floating)) else x
        out.append(GaussianRational.coerce(x))
    return out


def shifted_matvec(m: WMatrix, v, lam0) -> np.ndarray:
    """``(M(s) - s I) v`` formed symbolically, then evaluated at ``s = lam0``.

    Because common factors cancel before evaluation, the product can be
    finite at points where ``M`` itself is undefined.
    """
    m = as_wmatrix(m)
    n = m.n
    vec = _exact_vector(v)
    if len(vec) != n:
        raise DomainError(f"vector of length {len(vec)} for a {n}x{n} matrix")
    shifted = m.shifted()
    exact = isinstance(lam0, (int, Fraction, GaussianRational)) and not isinstance(lam0, bool)
    out = np.empty(n, dtype=complex)
    for i in range(n):
        acc = _ZERO
        for j in range(n):
            if vec[j] and shifted[i, j]:
                acc = acc + shifted[i, j] * vec[j]
        if exact:
            d = acc.den.value(lam0)
            if abs(complex(d)) <= POLE_TOL:
                raise PoleError(f"component {i + 1} has a pole at {lam0}", entry=i, point=lam0)
            out[i] = complex(acc.num.value(lam0) / d)
        else:
            d = acc.den.evaluate(complex(lam0))
            if abs(d) <= POLE_TOL:
                raise PoleError(f"component {i + 1} has a pole at {lam0}", entry=i, point=lam0)
            out[i] = acc.num.evaluate(complex(lam0)) / d
    return out
