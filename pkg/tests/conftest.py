import pytest

from localfourier.field import build_field


@pytest.fixture(scope="session")
def gf7():
    return build_field(7, 1)


@pytest.fixture(scope="session")
def gf9():
    return build_field(3, 2)


@pytest.fixture(scope="session")
def gf49():
    return build_field(7, 2)
