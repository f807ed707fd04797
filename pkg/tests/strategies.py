"""Hypothesis strategies for exact values and small matrices over W."""
from hypothesis import strategies as st

from isored.field import GaussianRational, Poly, RatFunc, rf_reduce
from isored.wmatrix import WMatrix

small = st.integers(-3, 3)
nonzero_small = small.filter(bool)


@st.composite
def gaussians(draw, complex_prob=True):
    re = draw(small)
    im = draw(small) if complex_prob and draw(st.integers(0, 3)) == 0 else 0
    return GaussianRational(re, im)


@st.composite
def polys(draw, max_degree=3, nonzero=False):
    cs = draw(st.lists(gaussians(), min_size=1, max_size=max_degree + 1))
    p = Poly(cs)
    if nonzero and not p:
        p = Poly([draw(nonzero_small)])
    return p


@st.composite
def ratfuncs(draw, max_degree=3, nonzero=False):
    num = draw(polys(max_degree, nonzero=nonzero))
    den = draw(polys(max_degree, nonzero=True))
    return rf_reduce(num, den)


@st.composite
def wpi_ratfuncs(draw, max_degree=2):
    """Elements with deg(num) <= deg(den)."""
    den = draw(polys(max_degree, nonzero=True))
    num = draw(polys(max(den.degree, 0)))
    if num.degree > den.degree:  # pragma: no cover - guarded by sizes
        num = Poly(num.coeffs[: den.degree + 1])
    return rf_reduce(num, den)


@st.composite
def sparse_wpi_entry(draw):
    kind = draw(st.integers(0, 5))
    if kind <= 2:
        return RatFunc(0)
    if kind == 3:
        return RatFunc(draw(small))
    r = draw(small)
    c = draw(nonzero_small)
    if kind == 4:
        return RatFunc(Poly([c]), Poly([-r, 1]))
    return RatFunc(Poly([draw(small), c]), Poly([-r, 1]))


@st.composite
def wpi_matrices(draw, min_n=2, max_n=4):
    n = draw(st.integers(min_n, max_n))
    return WMatrix([[draw(sparse_wpi_entry()) for _ in range(n)] for _ in range(n)])


@st.composite
def integer_matrices(draw, min_n=2, max_n=4, lo=-2, hi=2):
    n = draw(st.integers(min_n, max_n))
    return WMatrix([[draw(st.integers(lo, hi)) for _ in range(n)] for _ in range(n)])


@st.composite
def proper_subsets(draw, n, min_size=1):
    k = draw(st.integers(min_size, n - 1))
    return sorted(draw(st.permutations(range(1, n + 1)))[:k])
