import pytest

from twistkit import fixtures


@pytest.fixture(scope="session")
def H():
    return fixtures.quaternions()


@pytest.fixture(scope="session")
def O():
    return fixtures.octonions()


@pytest.fixture(scope="session")
def F9():
    return fixtures.f9_algebra()


@pytest.fixture(scope="session")
def F27():
    return fixtures.f27_algebra()


@pytest.fixture(scope="session")
def F4():
    return fixtures.f4_algebra()


@pytest.fixture(scope="session")
def F125():
    return fixtures.f125_algebra()


@pytest.fixture(scope="session")
def cyclicQ():
    return fixtures.cyclic_q_fixture()
