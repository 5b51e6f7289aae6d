import pytest

from roquette.group import get_group
from roquette import jacobian


@pytest.fixture(scope="session")
def group5():
    return get_group(5)


@pytest.fixture(scope="session")
def group7():
    return get_group(7)


@pytest.fixture(scope="session")
def torsion3(group5):
    return jacobian.torsion_basis(group5, 3, seed=0)


@pytest.fixture(scope="session")
def torsion7(group5):
    # the expensive witness (span of 2401 classes over F_{5^12}); built once
    return jacobian.torsion_basis(group5, 7, seed=0)


@pytest.fixture(scope="session")
def traces3(group5, torsion3):
    return jacobian.rho_ell_traces(group5, torsion3)


@pytest.fixture(scope="session")
def traces7(group5, torsion7):
    return jacobian.rho_ell_traces(group5, torsion7)
