import functools

import pytest

from kafourier import build_basis, build_transform
from kafourier.params import Params

_ACCEPTANCE = {}


@functools.lru_cache(maxsize=None)
def cached_operator(N, k, a, n_basis=48):
    return build_transform(build_basis(Params(N, k, a), n_basis))


@pytest.fixture(scope="session")
def operator():
    return cached_operator


@pytest.fixture
def acceptance():
    """Record one pass/fail line per acceptance criterion."""

    def record(number, passed, detail):
        line = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}"
        _ACCEPTANCE[number] = line
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        terminalreporter.write_line(_ACCEPTANCE[n])
