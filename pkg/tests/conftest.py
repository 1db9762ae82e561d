import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from latticelab import FiniteMeasureSpace

# derandomized so that test runs are reproducible
settings.register_profile(
    "repo",
    derandomize=True,
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


@pytest.fixture
def unit2():
    return FiniteMeasureSpace.uniform(2)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)



# one line per acceptance criterion, repeated in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
