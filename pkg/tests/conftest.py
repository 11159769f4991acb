from fractions import Fraction

import pytest

from adelic_chars.catalog import catalog_fixture, strictly_upper_triangular, CATALOG_NAMES
from adelic_chars.nilpotent import LieAlgebra


def Q(*xs):
    return tuple(Fraction(x) for x in xs)


@pytest.fixture(scope="session")
def h3():
    return LieAlgebra.from_triples(3, [(0, 1, 2, 1)], ("X", "Y", "Z"))


@pytest.fixture(scope="session")
def upper4():
    return strictly_upper_triangular(4)


@pytest.fixture(scope="session")
def fixtures():
    return {name: catalog_fixture(name) for name in CATALOG_NAMES}


@pytest.fixture(scope="session")
def sl2(fixtures):
    return fixtures["abelian-sl2"]


@pytest.fixture(scope="session")
def heis(fixtures):
    return fixtures["heisenberg-1"]


@pytest.fixture(scope="session")
def free3(fixtures):
    return fixtures["free-3"]


_ACCEPTANCE: dict[int, str] = {}


@pytest.fixture(scope="session")
def acceptance_line():
    def record(n: int, ok: bool, text: str) -> None:
        _ACCEPTANCE[n] = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {text}"
    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(_ACCEPTANCE):
            terminalreporter.write_line(_ACCEPTANCE[n])
