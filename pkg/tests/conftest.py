import pytest

from qarev import builtin_algebra


@pytest.fixture(scope="session")
def allen():
    return builtin_algebra("allen")


@pytest.fixture(scope="session")
def rcc8():
    return builtin_algebra("rcc8")


@pytest.fixture(scope="session")
def omega3(allen):
    from oracles import omega_cells

    return omega_cells(allen, 3)
