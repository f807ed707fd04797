"""Exact arithmetic over the Gaussian rationals.

Three value types live here:

* :class:`GaussianRational` -- ``a + b i`` with ``a, b`` rational.
* :class:`Poly` -- dense polynomial in ``lambda`` with Gaussian-rational
  coefficients, stored lowest power first.
* :class:`RatFunc` -- a reduced fraction ``num / den`` of polynomials with a
  monic denominator.  Structural equality is mathematical equality.

All values are immutable.  Numeric evaluation converts the exact
coefficients to complex doubles once and caches them.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np

from .errors import DomainError, ResourceError

__all__ = [
    "GaussianRational",
    "Poly",
    "RatFunc",
    "Limits",
    "LIMITS",
    "poly_gcd",
    "poly_squarefree_factor",
    "rf_reduce",
    "rf_add",
    "rf_mul",
    "pi_degree",
    "is_w_pi",
    "LAM",
]


@dataclass
class Limits:
    """Resource limits for the symbolic layer."""

    degree_cap: int = 512


LIMITS = Limits()

_F0 = Fraction(0)
_F1 = Fraction(1)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, float):
        if not np.isfinite(x):
            raise DomainError(f"non-finite coefficient {x!r}")
        return Fraction(x)
    if isinstance(x, np.integer):
        return Fraction(int(x))
    if isinstance(x, np.floating):
        return _frac(float(x))
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


class GaussianRational:
    """Exact complex number ``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _frac(re)
        self.im = _frac(im)

    @classmethod
    def _make(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (complex, np.complexfloating)):
            return cls(x.real, x.imag)
        return cls._make(_frac(x), _F0)

    # -- predicates -------------------------------------------------------
    def __bool__(self):
        return bool(self.re) or bool(self.im)

    @property
    def is_real(self) -> bool:
        return not self.im

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        return GaussianRational._make(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational._make(-self.re, -self.im)

    def __sub__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        return GaussianRational._make(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b:
            if not d:
                return GaussianRational._make(a * c, _F0)
            return GaussianRational._make(a * c, a * d)
        if not d:
            return GaussianRational._make(a * c, b * c)
        return GaussianRational._make(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        if not self:
            raise ZeroDivisionError("inverse of zero")
        if not self.im:
            return GaussianRational._make(1 / self.re, _F0)
        n = self.re * self.re + self.im * self.im
        return GaussianRational._make(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._make(self.re, -self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __abs__(self):
        return abs(complex(self))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


_G0 = GaussianRational._make(_F0, _F0)
_G1 = GaussianRational._make(_F1, _F0)


def _check_degree(deg: int) -> None:
    if deg > LIMITS.degree_cap:
        raise ResourceError(
            f"symbolic degree {deg} exceeds the cap {LIMITS.degree_cap}"
        )


class Poly:
    """Dense polynomial in lambda over the Gaussian rationals.

    ``coeffs[k]`` multiplies ``lambda**k``.  Trailing zeros are stripped on
    construction, so the zero polynomial is the empty tuple.
    """

    __slots__ = ("coeffs", "_cc")

    def __init__(self, coeffs=()):
        cs = [GaussianRational.coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self._cc = None

    @classmethod
    def _raw(cls, cs) -> "Poly":
        # cs: list of GaussianRational, possibly with trailing zeros
        while cs and not cs[-1]:
            cs.pop()
        obj = object.__new__(cls)
        obj.coeffs = tuple(cs)
        obj._cc = None
        return obj

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots) -> "Poly":
        p = cls.constant(1)
        for r in roots:
            p = p * cls((-GaussianRational.coerce(r), 1))
        return p

    # -- structure --------------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def lead(self) -> GaussianRational:
        if not self.coeffs:
            raise DomainError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == _G1

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def is_real(self) -> bool:
        return all(not c.im for c in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, GaussianRational, complex)):
            return self.coeffs == Poly.constant(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("Poly", self.coeffs))

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Poly):
            try:
                other = Poly.constant(other)
            except TypeError:
                return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, Poly):
            try:
                other = Poly.constant(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            try:
                other = Poly.constant(other)
            except TypeError:
                return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly._raw([])
        _check_degree(len(a) + len(b) - 2)
        if self.is_real and other.is_real:
            ar = [c.re for c in a]
            br = [c.re for c in b]
            out = [_F0] * (len(a) + len(b) - 1)
            for i, x in enumerate(ar):
                if not x:
                    continue
                for j, y in enumerate(br):
                    if y:
                        out[i + j] += x * y
            return Poly._raw([GaussianRational._make(c, _F0) for c in out])
        out = [_G0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
        return Poly._raw(out)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        c = GaussianRational.coerce(c)
        if not c:
            return Poly._raw([])
        return Poly._raw([x * c for x in self.coeffs])

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise DomainError("polynomial powers must be non-negative integers")
        if self.coeffs:
            _check_degree(self.degree * k)
        result = Poly.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __divmod__(self, other: "Poly"):
        if not isinstance(other, Poly):
            other = Poly.constant(other)
        if not other.coeffs:
            raise DomainError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        inv = other.lead.inverse()
        if len(rem) - 1 < db:
            return Poly._raw([]), self
        quot = [_G0] * (len(rem) - db)
        bc = other.coeffs
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if not c:
                continue
            q = c * inv
            quot[k - db] = q
            for j in range(db + 1):
                if bc[j]:
                    rem[k - db + j] = rem[k - db + j] - q * bc[j]
        return Poly._raw(quot), Poly._raw(rem[:db] if db > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if r:
            raise DomainError("polynomial division is not exact")
        return q

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        lc = self.coeffs[-1]
        if lc == _G1:
            return self
        return self.scale(lc.inverse())

    def derivative(self) -> "Poly":
        return Poly._raw([c * k for k, c in enumerate(self.coeffs)][1:])

    # -- evaluation -------------------------------------------------------
    def value(self, x) -> GaussianRational:
        """Exact evaluation at a Gaussian-rational point (Horner)."""
        x = GaussianRational.coerce(x)
        acc = _G0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    @property
    def complex_coeffs(self) -> np.ndarray:
        """Coefficients as complex doubles, highest power first."""
        if self._cc is None:
            self._cc = np.array(
                [complex(c) for c in reversed(self.coeffs)], dtype=complex
            )
        return self._cc

    def evaluate(self, z):
        """Floating evaluation at a complex scalar or array (Horner)."""
        cc = self.complex_coeffs
        z = np.asarray(z, dtype=complex)
        if cc.size == 0:
            return np.zeros_like(z)
        acc = np.full_like(z, cc[0])
        for c in cc[1:]:
            acc = acc * z + c
        return acc if acc.ndim else complex(acc)

    def magnitude_scale(self, z):
        """``sum |c_k| |z|^k``, the natural scale for residual tests."""
        a = np.abs(self.complex_coeffs)
        r = np.abs(np.asarray(z, dtype=complex))
        acc = np.zeros_like(r, dtype=float)
        for c in a:
            acc = acc * r + c
        return acc

    def __repr__(self):
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        from .io import format_poly

        return format_poly(self)


LAMBDA_POLY = Poly((0, 1))
ONE_POLY = Poly((1,))
ZERO_POLY = Poly(())


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor via the Euclidean remainder sequence."""
    if not a and not b:
        raise DomainError("gcd of two zero polynomials is undefined")
    a, b = a.monic(), b.monic()
    if a.degree < b.degree:
        a, b = b, a
    while b:
        if b.degree == 0:
            return ONE_POLY
        a, b = b, (a % b).monic()
    return a


def poly_squarefree_factor(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's square-free decomposition.

    Returns ``[(f_1, m_1), ...]`` with monic, square-free, pairwise coprime
    factors such that ``p = lead(p) * prod f_i**m_i``.  A nonzero constant
    yields an empty list.
    """
    if not p:
        raise DomainError("square-free factorization of the zero polynomial")
    f = p.monic()
    if f.degree <= 0:
        return []
    df = f.derivative()
    a = poly_gcd(f, df)
    b = f.exact_div(a)
    c = df.exact_div(a)
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree > 0:
        g = poly_gcd(b, d)
        b = b.exact_div(g)
        c = d.exact_div(g)
        d = c - b.derivative()
        if g.degree > 0:
            out.append((g, i))
        i += 1
    return out


class RatFunc:
    """Element of the rational-function field: reduced ``num/den``.

    The denominator is monic and shares no non-constant factor with the
    numerator; zero is ``0/1``.  Use :func:`rf_reduce` or the constructor to
    build one from arbitrary polynomials.
    """

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1):
        num = num if isinstance(num, Poly) else Poly.constant(num)
        den = den if isinstance(den, Poly) else Poly.constant(den)
        r = rf_reduce(num, den)
        self.num = r.num
        self.den = r.den

    @classmethod
    def _raw(cls, num: Poly, den: Poly) -> "RatFunc":
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    @classmethod
    def coerce(cls, x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, Poly):
            return cls._raw(x, ONE_POLY)
        return cls._raw(Poly.constant(x), ONE_POLY)

    @classmethod
    def lam(cls) -> "RatFunc":
        return cls._raw(LAMBDA_POLY, ONE_POLY)

    # -- predicates -------------------------------------------------------
    def __bool__(self):
        return bool(self.num)

    def is_zero(self) -> bool:
        return not self.num

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.den.is_one() and self.num.degree <= 0

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            try:
                other = RatFunc.coerce(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    @property
    def pi(self) -> int:
        return pi_degree(self)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return rf_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return rf_add(self, -other)

    def __rsub__(self, other):
        return RatFunc.coerce(other) - self

    def __mul__(self, other):
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return rf_mul(self, other)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise DomainError("division by the zero rational function")
        lc = self.num.lead.inverse()
        return RatFunc._raw(self.den.scale(lc), self.num.scale(lc))

    def __truediv__(self, other):
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return rf_mul(self, other.inverse())

    def __rtruediv__(self, other):
        return RatFunc.coerce(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise DomainError("rational-function powers must be integers")
        if k < 0:
            return self.inverse() ** (-k)
        # powers of a reduced fraction stay reduced
        return RatFunc._raw(self.num**k, self.den**k)

    # -- evaluation -------------------------------------------------------
    def value(self, x) -> GaussianRational:
        """Exact evaluation; raises :class:`DomainError` at a pole."""
        d = self.den.value(x)
        if not d:
            raise DomainError(f"pole at {x}")
        return self.num.value(x) / d

    def evaluate(self, z):
        """Floating evaluation ``num(z)/den(z)`` (no pole handling)."""
        return self.num.evaluate(z) / self.den.evaluate(z)

    def __repr__(self):
        return f"RatFunc({self.num!r}, {self.den!r})"

    def __str__(self):
        from .io import format_ratfunc

        return format_ratfunc(self)


def rf_reduce(num: Poly, den: Poly) -> RatFunc:
    """Cancel common factors and normalise the denominator to be monic."""
    if not den:
        raise DomainError("rational function with zero denominator")
    if not num:
        return RatFunc._raw(ZERO_POLY, ONE_POLY)
    if den.degree == 0:
        return RatFunc._raw(num.scale(den.lead.inverse()), ONE_POLY)
    g = poly_gcd(num, den)
    if g.degree > 0:
        num = num.exact_div(g)
        den = den.exact_div(g)
    lc = den.lead
    if lc != _G1:
        inv = lc.inverse()
        num, den = num.scale(inv), den.scale(inv)
    return RatFunc._raw(num, den)


def rf_add(a: RatFunc, b: RatFunc) -> RatFunc:
    """Sum of two reduced fractions, reduced."""
    if not a.num:
        return b
    if not b.num:
        return a
    if a.den == b.den:
        if a.den.is_one():
            return RatFunc._raw(a.num + b.num, ONE_POLY)
        return rf_reduce(a.num + b.num, a.den)
    if a.den.is_one():
        return RatFunc._raw(a.num * b.den + b.num, b.den)
    if b.den.is_one():
        return RatFunc._raw(a.num + b.num * a.den, a.den)
    g = poly_gcd(a.den, b.den)
    if g.is_one():
        # coprime denominators: only factors of the product can cancel, and
        # none do because each fraction is already reduced
        return RatFunc._raw(a.num * b.den + b.num * a.den, a.den * b.den)
    bq = b.den.exact_div(g)
    aq = a.den.exact_div(g)
    num = a.num * bq + b.num * aq
    if not num:
        return RatFunc._raw(ZERO_POLY, ONE_POLY)
    # any common factor of num and a.den*bq divides g
    h = poly_gcd(num, g)
    den = a.den * bq
    if h.degree > 0:
        num = num.exact_div(h)
        den = den.exact_div(h)
    return RatFunc._raw(num, den)


def rf_mul(a: RatFunc, b: RatFunc) -> RatFunc:
    """Product of two reduced fractions, reduced by cross-cancellation."""
    if not a.num or not b.num:
        return RatFunc._raw(ZERO_POLY, ONE_POLY)
    if a.den.is_one() and b.den.is_one():
        return RatFunc._raw(a.num * b.num, ONE_POLY)
    an, ad, bn, bd = a.num, a.den, b.num, b.den
    if not bd.is_one():
        g1 = poly_gcd(an, bd)
        if g1.degree > 0:
            an, bd = an.exact_div(g1), bd.exact_div(g1)
    if not ad.is_one():
        g2 = poly_gcd(bn, ad)
        if g2.degree > 0:
            bn, ad = bn.exact_div(g2), ad.exact_div(g2)
    num = an * bn
    den = ad * bd
    lc = den.lead
    if lc != _G1:
        inv = lc.inverse()
        num, den = num.scale(inv), den.scale(inv)
    return RatFunc._raw(num, den)


def pi_degree(w: RatFunc) -> int:
    """``deg(num) - deg(den)``; zero for the zero function."""
    if not w.num:
        return 0
    return w.num.degree - w.den.degree


def is_w_pi(w: RatFunc) -> bool:
    return pi_degree(w) <= 0


LAM = RatFunc.lam()
