import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from lottokit import greedy_cover

import battery as battery_mod


@pytest.fixture(scope="session")
def greedy_25_6_5():
    """Shared (25, 6, 5) greedy cover; built once, used by several tests."""
    return greedy_cover(25, 6, 5)


@pytest.fixture(scope="session")
def battery_outcomes():
    """The 20-case calibration battery; the heavyweight case runs once here.

    Yields (outcomes, wall_seconds) so the calibration criterion can check
    its runtime budget.
    """
    import time
    start = time.perf_counter()
    outcomes = battery_mod.run_battery()
    return outcomes, time.perf_counter() - start
