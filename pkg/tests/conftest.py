import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hilbint.checks import PRESETS  # noqa: E402


@pytest.fixture
def p2():
    return PRESETS["P2"]


@pytest.fixture
def p1p1():
    return PRESETS["P1xP1"]


@pytest.fixture
def blown_up():
    return PRESETS["P2-blown-up"]
