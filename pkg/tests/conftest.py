from fractions import Fraction as F

import numpy as np
import pytest

from hexmass.hex8 import CORNERS, ElementGeometry

# Generic distorted element with rational coordinates; exact integrals for it
# were obtained by symbolic integration and are frozen in the tests.
DISTORTED_NODES = [
    [F(-11, 10), F(-9, 10), F(-21, 20)],
    [F(6, 5), F(-1), F(-19, 20)],
    [F(9, 10), F(11, 10), F(-1)],
    [F(-1), F(19, 20), F(-11, 10)],
    [F(-19, 20), F(-21, 20), F(1)],
    [F(21, 20), F(-9, 10), F(11, 10)],
    [F(11, 10), F(6, 5), F(9, 10)],
    [F(-1), F(1), F(21, 20)],
]


@pytest.fixture
def identity():
    return ElementGeometry(CORNERS)


@pytest.fixture
def distorted():
    return ElementGeometry([[float(v) for v in row] for row in DISTORTED_NODES])


@pytest.fixture
def node7_moved():
    nodes = np.array(CORNERS)
    nodes[6] = (2.0, 2.0, 2.0)
    return ElementGeometry(nodes)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def acceptance(request):
    """Record one acceptance line, then assert it."""
    lines = request.config.stash.setdefault(_ACCEPTANCE_KEY, [])

    def check(name: str, ok: bool, detail: str = ""):
        lines.append(f"[{'PASS' if ok else 'FAIL'}] {name}" + (f"  ({detail})" if detail else ""))
        assert ok, f"{name}: {detail}"

    return check


_ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
