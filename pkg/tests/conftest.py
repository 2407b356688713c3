import numpy as np
import pytest
from hypothesis import strategies as st

from owafl.core import OwaWeights

_ACCEPTANCE = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): exit criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    for number, title in _ACCEPTANCE_INDEX.get(report.nodeid, ()):
        _ACCEPTANCE.append((number, title, report.passed))


_ACCEPTANCE_INDEX = {}


def pytest_collection_modifyitems(items):
    for item in items:
        for mark in item.iter_markers("acceptance"):
            _ACCEPTANCE_INDEX.setdefault(item.nodeid, []).append(mark.args)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {title}")


@st.composite
def owa_weights(draw, n=None, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n)) if n is None else n
    raw = draw(st.lists(st.floats(0, 1), min_size=n, max_size=n))
    if sum(raw) == 0:
        raw[draw(st.integers(0, n - 1))] = 1.0
    total = sum(raw)
    return OwaWeights(tuple(v / total for v in raw))


def profiles(n):
    return st.lists(st.floats(0, 1), min_size=n, max_size=n).map(tuple)


def random_weights(rng, n):
    return OwaWeights(tuple(rng.dirichlet(np.ones(n))))


@pytest.fixture
def rng():
    return np.random.default_rng(20241014)
