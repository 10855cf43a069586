import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from skewtab import SkewShape

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def s332_21() -> SkewShape:
    return SkewShape([3, 3, 2], [2, 1])


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA
