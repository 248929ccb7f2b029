import pytest

from finforce import fixtures


@pytest.fixture(scope="session")
def i1():
    return fixtures.i1()


@pytest.fixture(scope="session")
def i1_names(i1):
    return i1.registered_names()


@pytest.fixture(scope="session")
def fsi2_cc():
    return fixtures.fsi2_cohen_cohen()


@pytest.fixture(scope="session")
def fsi2_cohen_c():
    return fixtures.fsi2_cohen_c()


@pytest.fixture(scope="session")
def fsi3():
    return fixtures.fsi3_cohen()


@pytest.fixture(scope="session")
def case2():
    return fixtures.case2_fixture()


@pytest.fixture(scope="session")
def cohen22(i1):
    return i1.cohen22


@pytest.fixture(scope="session")
def ed22(i1):
    return i1.ed22
