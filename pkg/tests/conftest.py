import pytest

from wignerd import HalfInt, eigenbasis

_bases = {}


@pytest.fixture(scope="session")
def basis_of():
    """Session-wide eigenbasis cache keyed by doubled spin."""

    def get(two_j):
        if two_j not in _bases:
            _bases[two_j] = eigenbasis(HalfInt(two_j))
        return _bases[two_j]

    return get


_acceptance = {}

ACCEPTANCE_TITLES = {
    1: "headline absolute error, j=100",
    2: "relative error inside the central region, j=100",
    3: "first-derivative error scaling, j=10..100",
    4: "quadratic fit of the maximum error",
    5: "exact oracle values",
    6: "sum rule and coefficient parity",
    7: "cross-formula consistency",
    8: "group structure",
    9: "Fisher information of the rotated coherent state",
    10: "scale, j=1000",
}


@pytest.fixture(scope="session")
def acceptance():
    """record(number, passed, detail) stores the outcome line for a criterion."""

    def record(number, passed, detail):
        _acceptance[number] = (bool(passed), detail)
        return bool(passed)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number, title in ACCEPTANCE_TITLES.items():
        if number in _acceptance:
            passed, detail = _acceptance[number]
            status = "PASS" if passed else "FAIL"
        else:
            status, detail = "NOT RUN", ""
        terminalreporter.write_line(f"criterion {number:2d} {status:7s} {title}: {detail}")
