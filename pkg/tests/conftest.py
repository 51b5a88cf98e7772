import numpy as np
import pytest

from multiwhittle import FivarmaModel, fivarma, replication_rng, scaling_filter

# criterion lines collected by test_acceptance and echoed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def d8():
    return scaling_filter("Daubechies", 8)


@pytest.fixture(scope="session")
def biv_path():
    """One bivariate FIVARMA(0,(0.2,0.4),0) path, rho=0.8, N=512."""
    model = FivarmaModel.correlated((0.2, 0.4), 0.8)
    x, _ = fivarma(512, model, replication_rng(11))
    return x


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)
