import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from fracsemi import FractionalOrder, Grid1D, assemble_dirichlet, spectrum

settings.register_profile(
    "fracsemi",
    max_examples=25,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("fracsemi")


@pytest.fixture(scope="session")
def half():
    return FractionalOrder(0.5, 1)


@pytest.fixture(scope="session")
def grid256():
    return Grid1D(-1.0, 1.0, 256)


@pytest.fixture(scope="session")
def op256(grid256, half):
    return assemble_dirichlet(grid256, half)


@pytest.fixture(scope="session")
def spec256(op256):
    return spectrum(op256)


@pytest.fixture(scope="session")
def small_ops():
    """Operators on a 64-cell grid for several exponents."""
    grid = Grid1D(-1.0, 1.0, 64)
    return {s: assemble_dirichlet(grid, FractionalOrder(s)) for s in (0.1, 0.3, 0.5, 0.7, 0.9)}


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


# acceptance verdicts, printed together at the end of the run
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[key])
