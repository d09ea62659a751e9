import numpy as np
import pytest
from hypothesis import settings

from liesqueeze.algebra import CouplingTriple

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES = []


@pytest.fixture
def fig_c():
    return CouplingTriple(0.1, 0.25, 1.0)


@pytest.fixture
def criterion():
    """Record one acceptance line (name, measured, tolerance) and assert it."""

    def record(name, value, tol, passed=None):
        ok = bool(value <= tol) if passed is None else bool(passed)
        ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {name}: {value:.3e} (tol {tol:.0e})")
        print(ACCEPTANCE_LINES[-1])
        assert ok, ACCEPTANCE_LINES[-1]

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def rel_err(a, b):
    a, b = np.asarray(a), np.asarray(b)
    return float(np.max(np.abs(a - b) / np.abs(b)))
