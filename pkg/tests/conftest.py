import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from dioecy import FitnessParams  # noqa: E402


def random_fraction(rng, lo_num=0, hi_num=12, hi_den=7):
    return Fraction(rng.randint(lo_num, hi_num), rng.randint(1, hi_den))


def random_params(rng, positive=False, need_c_gamma=False):
    """Valid rational fitness tuple; zeros allowed unless ``positive``."""
    while True:
        lo = 1 if positive else 0
        vals = [random_fraction(rng, lo_num=lo) for _ in range(6)]
        a, b, c, al, be, ga = vals
        if a + b == 0 or al + be == 0:
            continue
        if need_c_gamma and (c == 0 or ga == 0):
            continue
        return FitnessParams(*vals)


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module and module.LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(module.LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
