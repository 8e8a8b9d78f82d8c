import pathlib
import sys

import numpy as np
import pytest

sys.path.insert(0, str(pathlib.Path(__file__).parent))

ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_coefficients(rng, M, min_c0=0.1):
    while True:
        c = (rng.normal(size=M) + 1j * rng.normal(size=M)) / np.sqrt(2)
        if abs(c[0]) > min_c0:
            return c


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
