import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given

from isored.errors import DomainError, ParseError
from isored.field import GaussianRational, Poly, RatFunc
from isored.io import (
    format_matrix,
    format_ratfunc,
    levels_window,
    parse_matrix_file,
    parse_matrix_text,
    parse_network_text,
    parse_ratfunc,
    raster_to_pgm,
    read_raster,
    write_raster,
)
from isored.reduction import isospectral_reduce
from isored.regions import GridSpec, RegionRaster
from isored.wmatrix import WMatrix
from conftest import DATA
from strategies import ratfuncs, wpi_matrices

L = Poly([0, 1])


def test_parse_examples():
    w = parse_ratfunc("(l^2+1)/(l-1)")
    assert w.num == L * L + 1 and w.den == L - 1
    assert parse_ratfunc("1/(l-1) + 1/l") == RatFunc(2 * L - 1, L * L - L)
    assert parse_ratfunc("(l+1)/(l+1)") == RatFunc(1)
    assert parse_ratfunc(" - 3 / 4 ") == RatFunc(Fraction(-3, 4))
    assert parse_ratfunc("(1+2i)*l") == RatFunc(L * GaussianRational(1, 2))
    assert parse_ratfunc("1/2i") == RatFunc(GaussianRational(0, -1) / 2)
    assert parse_ratfunc("x^2", var="x") == RatFunc(L * L)


@pytest.mark.parametrize("text,col", [("1/(l-l)", 2), ("l+", 3), ("2 $", 3), ("(l", 3), ("l^l", 3), ("", 1)])
def test_parse_errors_have_positions(text, col):
    with pytest.raises(ParseError) as info:
        parse_ratfunc(text)
    assert info.value.col == col


def test_zero_division_is_domain_error():
    with pytest.raises(DomainError):
        parse_ratfunc("1/(l^2-l*l)")


@given(ratfuncs(3))
def test_ratfunc_round_trip(w):
    assert parse_ratfunc(format_ratfunc(w)) == w


@given(wpi_matrices(1, 3))
def test_matrix_round_trip(m):
    assert parse_matrix_text(format_matrix(m, name="t")).matrix == m


def test_matrix_file(tmp_path):
    doc = parse_matrix_file(DATA / "six_node_01.wm")
    assert doc.name == "six_node_01" and doc.matrix.n == 6
    assert isospectral_reduce(doc.matrix, [1, 2]) == WMatrix(
        [[RatFunc(1, L - 1), RatFunc(1, L - 1)], [RatFunc(1, L), RatFunc(L + 1, L)]])
    assert parse_matrix_text("wmatrix 1\nl\n").matrix == WMatrix([[RatFunc(L)]])
    doc = parse_matrix_text("# comment\nwmatrix 1 var=s name=z\n\n1/s  # trailing\n")
    assert doc.var == "s" and doc.matrix == WMatrix([[RatFunc(1, L)]])
    path = tmp_path / "m.wm"
    from isored.io import write_matrix_file

    write_matrix_file(doc.matrix, path, var="s")
    assert parse_matrix_file(path).matrix == doc.matrix


@pytest.mark.parametrize("text,needle", [
    ("wmatrix 2\n1;2\n3\n", "row 2"),
    ("wmatrix 2\n1;2\n", "expected 2 matrix rows"),
    ("matrix 2\n1\n", "header"),
    ("wmatrix 1\n1\n2\n", "more than 1"),
    ("wmatrix 1\n(l\n", "line 2"),
])
def test_matrix_errors(text, needle):
    with pytest.raises(ParseError) as info:
        parse_matrix_text(text)
    assert needle in str(info.value)


def test_network_file():
    net = parse_network_text("springnet 3\nspring 1 2 3/2\nspring 2 3 1\nmass 2 1\n")
    assert net.springs[0][2] == 1.5 and net.unit_masses
    with pytest.raises(ParseError):
        parse_network_text("springnet 2\nspring 1 x 1\n")


def _raster():
    spec = GridSpec(0, 1, 0, 1, 2, 2)
    return RegionRaster(spec, "pseudospectrum", np.array([[1.0, 2.0], [3.0, math.inf]]))


def test_csv_layout_and_round_trip(tmp_path):
    r = _raster()
    p = tmp_path / "r.csv"
    write_raster(r, p)
    lines = p.read_text().splitlines()
    assert lines[1] == "re,im,value,flag"
    assert lines[2:] == ["0.0,0.0,1.0,0", "1.0,0.0,2.0,0", "0.0,1.0,3.0,0", "1.0,1.0,inf,0"]
    back = read_raster(p)
    assert back == r
    first = p.read_bytes()
    write_raster(r, p)
    assert p.read_bytes() == first


def test_csv_exact_floats(tmp_path):
    spec = GridSpec(-0.3, 0.7, -1 / 3, 2 / 3, 3, 2)
    vals = np.array([[0.1, 1 / 3, 2 ** 0.5], [1e-300, 123456789.123, math.pi]])
    r = RegionRaster(spec, "pseudoresonance", vals, np.array([[0, 1, 0], [0, 0, 0]], dtype=bool))
    write_raster(r, tmp_path / "x.csv")
    assert read_raster(tmp_path / "x.csv") == r


def test_gershgorin_csv(tmp_path):
    spec = GridSpec(0, 1, 0, 1, 2, 2)
    r = RegionRaster(spec, "gershgorin", np.array([[0, 5], [1, 0]], dtype=np.int64))
    write_raster(r, tmp_path / "g.csv")
    assert read_raster(tmp_path / "g.csv") == r


def test_pgm(tmp_path):
    r = _raster()
    data = raster_to_pgm(r, (0.0, math.log10(4)))
    header, pixels = data.rsplit(b"\n", 1)[0], data[-4:]
    assert header.startswith(b"P5\n# log10 window")
    # top row is the largest imaginary part
    assert list(pixels) == [round(255 * math.log10(3) / math.log10(4)), 255, 0, 128]
    write_raster(r, tmp_path / "a.pgm", "pgm", (0.0, 1.0))
    write_raster(r, tmp_path / "b.pgm", "pgm", (0.0, 1.0))
    assert (tmp_path / "a.pgm").read_bytes() == (tmp_path / "b.pgm").read_bytes()
    with pytest.raises(DomainError):
        write_raster(r, tmp_path / "c.bmp", "bmp")
    lo, hi = levels_window([1, 0.316, 0.1])
    assert lo == 0 and abs(hi - 1) < 1e-12
