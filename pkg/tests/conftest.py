import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from corpus import l3, u34  # noqa: E402


@pytest.fixture
def L3():
    return l3()


@pytest.fixture
def U34():
    return u34()
