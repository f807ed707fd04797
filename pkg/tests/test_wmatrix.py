import numpy as np
import pytest
from hypothesis import given

from isored.errors import DomainError, PoleError, SingularityError
from isored.field import LAM, Poly, RatFunc, pi_degree
from isored.reduction import isospectral_reduce
from isored.wmatrix import (
    RootMultiset,
    WMatrix,
    char_ratfunc,
    determinant,
    eval_at,
    inverse_spectrum,
    polynomial_extension,
    shifted_matvec,
    spectral_inverse,
    spectrum,
    submatrix,
)
from strategies import integer_matrices, wpi_matrices

L = Poly([0, 1])
SQRT5 = 5 ** 0.5


def test_submatrix(six_node):
    sub = submatrix(six_node, [3, 4, 5, 6], [3, 4, 5, 6])
    assert spectrum(sub).matches([1, 1, 0, 0])
    assert submatrix(six_node, range(1, 7), range(1, 7)) == six_node
    m = WMatrix([[1, 2], [3, 4]])
    assert submatrix(m, [2], [1]) == WMatrix([[3]])
    with pytest.raises(DomainError):
        submatrix(m, [3], [1])


def test_char_ratfunc_examples(inv_lambda, inv_lambda_partial):
    nil = WMatrix([[0, RatFunc(1, L)], [0, 0]])
    assert char_ratfunc(nil) == RatFunc(L * L)
    assert char_ratfunc(WMatrix.identity(2)) == RatFunc((L - 1) ** 2)
    want = RatFunc(Poly([1, 0, -4, 0, 6, 0, -4, 0, 1]), L ** 4)
    assert char_ratfunc(inv_lambda) == want
    assert char_ratfunc(inv_lambda_partial) == want


def test_spectrum_without_domain():
    # the spectrum {0, 0} lies outside dom(M)
    nil = WMatrix([[0, RatFunc(1, L)], [0, 0]])
    assert spectrum(nil).matches([0, 0])
    with pytest.raises(PoleError):
        eval_at(nil, 0)


def test_spectrum_examples(six_node, pole_diag):
    assert spectrum(six_node).matches([2, -1, 1, 1, 0, 0])
    assert spectrum(pole_diag).matches([0, (1 + SQRT5) / 2, (1 - SQRT5) / 2])
    assert inverse_spectrum(pole_diag).matches([1])
    assert inverse_spectrum(WMatrix([[1, 2], [3, 4]])).total == 0


def test_root_multiset_ops():
    a = RootMultiset.from_values([0, 0, 1, 2])
    b = RootMultiset.from_values([0, 2, 5])
    assert (a | b).matches([0, 0, 0, 1, 2, 2, 5])
    assert (a - b).matches([0, 1])
    assert (b - a).matches([5])
    assert 1 in a and 3 not in a


def test_spectral_inverse_examples(inv_lambda):
    s = spectral_inverse(inv_lambda)
    q = L * L - 1
    e = lambda num, k: RatFunc(-num, q ** k)
    want = WMatrix([
        [e(L, 1), e(L, 2), e(L ** 2, 3), e(L ** 3, 4)],
        [0, e(L, 1), e(L ** 2, 2), e(L ** 3, 3)],
        [0, 0, e(L, 1), e(L ** 2, 2)],
        [0, 0, 0, e(L, 1)],
    ]).add_lambda(1)
    assert s == want
    assert spectral_inverse(WMatrix([[0]])) == WMatrix([[LAM - RatFunc(1, L)]])


def test_spectral_inverse_singular():
    with pytest.raises(SingularityError):
        spectral_inverse(WMatrix([[LAM, 0], [0, LAM]]))


def test_polynomial_extension_examples(inv_lambda):
    assert polynomial_extension(WMatrix([[1, 2], [3, 4]])) == [[Poly([1]), Poly([2])], [Poly([3]), Poly([4])]]
    assert polynomial_extension(WMatrix([[RatFunc(1, L)]])) == [[Poly([1, 1, -1])]]
    ext = polynomial_extension(spectral_inverse(inv_lambda))
    q = L * L - 1
    want = [
        [-L * q ** 9 + L, -L * q ** 8, -(L ** 2) * q ** 7, -(L ** 3) * q ** 6],
        [Poly(), -L * q ** 5 + L, -(L ** 2) * q ** 4, -(L ** 3) * q ** 3],
        [Poly(), Poly(), -L * q ** 2 + L, -(L ** 2) * q],
        [Poly(), Poly(), Poly(), Poly()],
    ]
    assert ext == want


def test_eval_at_examples(six_node):
    r = isospectral_reduce(six_node, [1, 2])
    assert np.allclose(eval_at(r, 2), [[1, 1], [0.5, 1.5]], atol=0, rtol=1e-15)
    assert np.array_equal(eval_at(WMatrix([[1, 2], [3, 4]]), 0.7j), [[1, 2], [3, 4]])
    with pytest.raises(PoleError) as info:
        eval_at(r, 1)
    assert info.value.entry == (0, 0)
    with pytest.raises(PoleError):
        eval_at(r, 1.0)


def test_shifted_matvec_examples():
    m = WMatrix([[1, RatFunc(1, L - 1)], [0, 1]])
    assert np.array_equal(shifted_matvec(m, [1, 0], 1), [0, 0])
    for lam0 in (0.3, 2 + 1j, -4):
        assert np.allclose(shifted_matvec(m, [1, 0], lam0), [1 - lam0, 0], atol=1e-15)
    with pytest.raises(PoleError):
        shifted_matvec(m, [0, 1], 1)
    a = np.array([[1, 2], [3, 4]])
    v = np.array([0.5, -1j])
    assert np.allclose(shifted_matvec(WMatrix(a), v, 0.25), (a - 0.25 * np.eye(2)) @ v)


@given(wpi_matrices(3, 4))
def test_elimination_matches_cofactor(m):
    a = m.shifted().entries
    assert determinant(a, "elimination") == determinant(a, "cofactor")


@given(wpi_matrices(1, 4))
def test_char_degree_is_n(m):
    assert pi_degree(char_ratfunc(m)) == m.n


@given(wpi_matrices(1, 4))
def test_spectrum_totals(m):
    c = char_ratfunc(m)
    assert spectrum(m).total == c.num.degree
    assert inverse_spectrum(m).total == c.den.degree


@given(wpi_matrices(1, 3))
def test_spectral_inverse_swaps_spectra(m):
    s = spectral_inverse(m)
    assert char_ratfunc(s) * char_ratfunc(m) == RatFunc(1)
    assert spectrum(s).matches(inverse_spectrum(m))
    assert inverse_spectrum(s).matches(spectrum(m))


@given(wpi_matrices(1, 3))
def test_spectral_inverse_is_involution(m):
    assert spectral_inverse(spectral_inverse(m)) == m


@given(integer_matrices(1, 4))
def test_constant_matrices_have_no_resonances(m):
    assert inverse_spectrum(m).total == 0
    assert spectrum(m).matches(np.linalg.eigvals(np.array(m.eval_at(0))), tol=1e-6)
