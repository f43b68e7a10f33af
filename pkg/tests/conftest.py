import os
import sys

import pytest

HERE = os.path.dirname(__file__)
sys.path.insert(0, HERE)


@pytest.fixture(scope="session")
def grid_fixture_path():
    return os.path.join(HERE, "fixtures", "a13_grids.txt")
