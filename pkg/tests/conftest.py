import sys
from pathlib import Path

import pytest

from pforms import PFormCtx, ff_make

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def ctx22():
    """F_2, two variables."""
    return PFormCtx(ff_make(2), 2)


@pytest.fixture
def ctx23():
    """F_2, three variables."""
    return PFormCtx(ff_make(2), 3)


@pytest.fixture
def ctx32():
    """F_3, two variables."""
    return PFormCtx(ff_make(3), 2)


@pytest.fixture
def ctx43():
    """F_4, three variables."""
    return PFormCtx(ff_make(2, 2), 3)
