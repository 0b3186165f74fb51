import pytest

from rpf import make_context


@pytest.fixture(scope="session")
def ctx50():
    return make_context(50)


@pytest.fixture(scope="session")
def ctx100():
    return make_context(100)


@pytest.fixture(scope="session")
def ctx200():
    return make_context(200)


def close(a, b, tol):
    return abs(a - b) < tol
