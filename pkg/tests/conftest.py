import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from prodgrowth.model import ProductivityModelParams  # noqa: E402
from prodgrowth.synth import synthetic_pair  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def turkey_like():
    return ProductivityModelParams(a2=105.0, n0=1.45e6, base_year=1959, b=-6e6, c=0.24, lag_t=2,
                                   smoothing_window=1)


@pytest.fixture
def synthetic(turkey_like):
    gdp, dpp, _ = synthetic_pair(turkey_like, 60, seed=7)
    return gdp, dpp


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
