from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from isored.io import parse_matrix_file

DATA = Path(__file__).resolve().parent.parent / "data"

settings.register_profile(
    "isored",
    derandomize=True,
    deadline=None,
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("isored")


def load(name):
    return parse_matrix_file(DATA / name).matrix


@pytest.fixture(scope="session")
def six_node():
    return load("six_node_01.wm")


@pytest.fixture(scope="session")
def nested4():
    return load("nested_chain_4x4.wm")


@pytest.fixture(scope="session")
def inv_lambda():
    return load("inv_lambda_bidiag_4x4.wm")


@pytest.fixture(scope="session")
def inv_lambda_partial():
    return load("inv_lambda_partial_4x4.wm")


@pytest.fixture(scope="session")
def pole_diag():
    return load("pole_diag_2x2.wm")


@pytest.fixture(scope="session")
def lost_eig():
    return load("lost_eigenvalue_3x3.wm")


@pytest.fixture(scope="session")
def equal_ps():
    return load("equal_pseudospectra_4x4.wm")


# -- acceptance bookkeeping ----------------------------------------------------

ACCEPTANCE: dict[str, tuple[bool, str]] = {}


class _Criterion:
    def __init__(self, key, title):
        self.key, self.title = key, title

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        ACCEPTANCE[self.key] = (exc_type is None, self.title)
        return False


@pytest.fixture
def criterion():
    return _Criterion


def _sort_key(key):
    return tuple(int(p) for p in key.split("."))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    tops = sorted({k.split(".")[0] for k in ACCEPTANCE}, key=int)
    for top in tops:
        parts = sorted((k for k in ACCEPTANCE if k.split(".")[0] == top), key=_sort_key)
        ok = all(ACCEPTANCE[k][0] for k in parts)
        title = ACCEPTANCE[top][1] if top in ACCEPTANCE else "property suites"
        extra = f" ({sum(ACCEPTANCE[k][0] for k in parts)}/{len(parts)} parts)" if len(parts) > 1 else ""
        terminalreporter.write_line(f"criterion {top:>2}: {'PASS' if ok else 'FAIL'}  {title}{extra}")
        if len(parts) > 1:
            for k in parts:
                terminalreporter.write_line(f"    {k:<6} {'PASS' if ACCEPTANCE[k][0] else 'FAIL'}  {ACCEPTANCE[k][1]}")
