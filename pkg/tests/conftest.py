import numpy as np
import pytest

from contracta.linalg import random_density


@pytest.fixture
def diag_pair():
    return np.diag([0.6, 0.4]).astype(complex), np.diag([0.5, 0.5]).astype(complex)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def density_pairs(n, dims=(2, 3), seed=0):
    rng = np.random.default_rng(seed)
    for _ in range(n):
        d = int(rng.choice(dims))
        yield random_density(d, 0.05, rng), random_density(d, 0.05, rng)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
