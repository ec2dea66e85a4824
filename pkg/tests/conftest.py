import math

import numpy as np
import pytest

from saft.core import validate_params, preset

_ACCEPTANCE = []


@pytest.fixture
def A23():
    """a=2, b=3, d=4, p=q=0 with c forced by the determinant."""
    return validate_params(2.0, 3.0, 7.0 / 3.0, 4.0, 0.0, 0.0)


@pytest.fixture
def fourier():
    return preset("fourier")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def acceptance_log(request):
    """Collects ``(criterion, passed, detail)`` lines for the terminal summary."""
    def log(criterion, passed, detail):
        line = f"[{'PASS' if passed else 'FAIL'}] {criterion}: {detail}"
        _ACCEPTANCE.append(line)
        print(line)
    return log


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)


# parameter sets used across property tests
PARAM_SETS = [
    (0.0, 1.0, -1.0, 0.0, 0.0, 0.0),
    (2.0, 3.0, 7.0 / 3.0, 4.0, 0.0, 0.0),
    (1.0, 2.0, 0.0, 1.0, 0.5, -0.3),
    (math.cos(0.7), math.sin(0.7), -math.sin(0.7), math.cos(0.7), -0.4, 0.2),
    (-1.5, -2.0, (-1.5 * 0.4 - 1.0) / -2.0, 0.4, 0.3, 0.1),
]
