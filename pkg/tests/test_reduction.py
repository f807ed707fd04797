import pytest
from hypothesis import given
from hypothesis import strategies as st

from isored.errors import ConsistencyError, DomainError, SingularityError
from isored.field import LAM, Poly, RatFunc, is_w_pi
from isored.reduction import (
    isospectral_reduce,
    predicted_reduced_spectra,
    reduce_spectral_inverse,
    sequential_reduce,
)
from isored.wmatrix import WMatrix, char_ratfunc, complement, spectral_inverse, submatrix
from strategies import integer_matrices, proper_subsets, wpi_matrices

L = Poly([0, 1])
SQRT5 = 5 ** 0.5


def test_six_node_reduction(six_node):
    r = isospectral_reduce(six_node, [1, 2])
    want = WMatrix([[RatFunc(1, L - 1), RatFunc(1, L - 1)], [RatFunc(1, L), RatFunc(L + 1, L)]])
    assert r == want
    assert all(is_w_pi(x) for row in r.entries for x in row)


def test_uncoupled_and_lost_eigenvalue(lost_eig):
    assert isospectral_reduce(WMatrix([[1, 0], [0, 2]]), [1]) == WMatrix([[1]])
    assert isospectral_reduce(lost_eig, [1]) == WMatrix([[RatFunc(1, L)]])


def test_bad_index_sets(six_node):
    with pytest.raises(DomainError):
        isospectral_reduce(six_node, [])
    with pytest.raises(DomainError):
        isospectral_reduce(six_node, range(1, 7))
    with pytest.raises(DomainError):
        isospectral_reduce(six_node, [0, 1])


def test_singular_interior_block():
    m = WMatrix([[0, 1], [1, LAM]])
    with pytest.raises(SingularityError):
        isospectral_reduce(m, [1])


def test_nested_chains(nested4):
    direct = isospectral_reduce(nested4, [1, 2])
    q = L * L - 2 * L
    want = WMatrix([[RatFunc((L - 1) ** 2, q), RatFunc(L - 1, q)],
                    [RatFunc(L - 1, q), RatFunc((L - 1) ** 2, q)]])
    assert direct == want
    assert sequential_reduce(nested4, [[1, 2, 3], [1, 2]]) == direct
    assert sequential_reduce(nested4, [[1, 2, 4], [1, 2]]) == direct
    assert sequential_reduce(nested4, [[1, 2]]) == direct
    # the intermediate reductions differ
    assert isospectral_reduce(nested4, [1, 2, 3]) != isospectral_reduce(nested4, [1, 2, 4])


def test_chain_must_nest(nested4):
    with pytest.raises(DomainError):
        sequential_reduce(nested4, [[1, 2], [1, 3]])
    with pytest.raises(DomainError):
        sequential_reduce(nested4, [[1, 2], [1, 2]])
    with pytest.raises(DomainError):
        sequential_reduce(nested4, [])


def test_predicted_spectra_examples(six_node, nested4):
    sig, inv = predicted_reduced_spectra(six_node, [1, 2])
    assert sig.matches([2, -1]) and inv.total == 0
    sig, _ = predicted_reduced_spectra(nested4, [1, 2])
    want = [(3 + SQRT5) / 2, (3 - SQRT5) / 2, (1 + 3 ** 0.5 * 1j) / 2, (1 - 3 ** 0.5 * 1j) / 2]
    assert sig.matches(want)
    assert nested4.spectrum().matches(want)
    sig, _ = predicted_reduced_spectra(WMatrix([[1, 0, 0], [0, 2, 0], [0, 0, 1]]), [1])
    assert sig.matches([1])


def test_spectral_inverse_reduction(inv_lambda, inv_lambda_partial):
    q = L * L - 1
    e = lambda num, k: RatFunc(-num, q ** k)
    want = WMatrix([[e(L, 1), e(L, 2), e(L ** 2, 3)],
                    [0, e(L, 1), e(L ** 2, 2)],
                    [0, 0, e(L, 1)]]).add_lambda(1)
    assert reduce_spectral_inverse(inv_lambda, [1, 2, 3]) == want
    assert reduce_spectral_inverse(inv_lambda_partial, [1, 2, 3]) == want
    a, b = 3, -1
    got = reduce_spectral_inverse(WMatrix([[a, 0], [0, b]]), [1])
    assert got == WMatrix([[RatFunc(1, Poly([a, -1])) + LAM]])


def test_consistency_error_type():
    assert issubclass(ConsistencyError, AssertionError)


@st.composite
def matrix_and_keep(draw, max_n=5):
    m = draw(wpi_matrices(2, max_n))
    return m, draw(proper_subsets(m.n))


@given(matrix_and_keep())
def test_reduction_stays_in_w_pi(mk):
    m, keep = mk
    r = isospectral_reduce(m, keep)
    assert r.n == len(keep)
    assert all(is_w_pi(x) for row in r.entries for x in row)


@given(matrix_and_keep())
def test_determinant_factorises(mk):
    m, keep = mk
    r = isospectral_reduce(m, keep)
    inner = complement(keep, m.n)
    m_ii = submatrix(m, inner, inner)
    assert char_ratfunc(r) * char_ratfunc(m_ii) == char_ratfunc(m)


@given(matrix_and_keep(max_n=4))
def test_spectral_inverse_two_paths(mk):
    m, keep = mk
    # raises ConsistencyError on disagreement
    reduce_spectral_inverse(m, keep)


@given(wpi_matrices(3, 5), st.data())
def test_sequential_equals_direct(m, data):
    n = m.n
    first = data.draw(proper_subsets(n, min_size=2))
    second = sorted(data.draw(st.permutations(first))[: data.draw(st.integers(1, len(first) - 1))])
    assert sequential_reduce(m, [first, second]) == isospectral_reduce(m, second)


@given(wpi_matrices(3, 4), st.data())
def test_sequential_spectral_inverse(m, data):
    first = data.draw(proper_subsets(m.n, min_size=2))
    second = sorted(first[:-1])
    s = spectral_inverse(m)
    assert sequential_reduce(s, [first, second]) == isospectral_reduce(s, second)


@given(integer_matrices(5, 5, 0, 1))
def test_binary_chain(m):
    assert sequential_reduce(m, [[1, 2, 3, 4], [1, 2]]) == isospectral_reduce(m, [1, 2])


@given(matrix_and_keep())
def test_reduced_spectra_match_prediction(mk):
    m, keep = mk
    r = isospectral_reduce(m, keep)
    sig, inv = predicted_reduced_spectra(m, keep)
    assert r.spectrum().matches(sig)
    assert r.inverse_spectrum().matches(inv)
