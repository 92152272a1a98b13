import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from mrgrid import make_field


@pytest.fixture(scope="session")
def gf2():
    return make_field(2, 1)


@pytest.fixture(scope="session")
def gf5():
    return make_field(5)


@pytest.fixture(scope="session")
def gf8():
    return make_field(2, 3)


@pytest.fixture(scope="session")
def gf13():
    return make_field(13)


@pytest.fixture(scope="session")
def gf16_q2():
    return make_field(2, 4, subfield_degree=1)


@pytest.fixture(scope="session")
def gf256():
    return make_field(2, 8)


@pytest.fixture(scope="session")
def gf2_13():
    return make_field(2, 13)
