import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

FIXTURES = Path(__file__).parent / "fixtures"

angles = st.floats(-math.pi, math.pi, allow_nan=False)
params = st.floats(-2.0, 2.0, allow_nan=False)
seeds = st.integers(0, 2**31 - 1)


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


def unit(v):
    v = np.asarray(v, float)
    return v / np.linalg.norm(v)


# -- acceptance reporting --------------------------------------------------------------------

_ACCEPTANCE: dict[int, tuple[str, str, float]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or report.when != "call":
        return
    number, title = mark.args
    # parametrized criteria pass only if every case passes
    _, status, seconds = _ACCEPTANCE.get(number, (title, "PASS", 0.0))
    status = status if report.passed else "FAIL"
    _ACCEPTANCE[number] = (title, status, seconds + report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, status, seconds = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {status}  {title}  ({seconds:.2f} s)")
