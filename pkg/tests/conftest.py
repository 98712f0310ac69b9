import pytest

from siegelscan.jacobi import phi_cusp
from siegelscan.siegel import maass_lift

# Full-scale bounds used by the acceptance suite; phi_cusp/jacobi_eisenstein
# are cached, so unit tests asking for smaller bounds stay cheap.
FULL_DISC = 8000
FULL_DET4 = 8000


@pytest.fixture(scope="session")
def phi10_full():
    return phi_cusp(10, FULL_DISC)


@pytest.fixture(scope="session")
def chi10_full(phi10_full):
    return maass_lift(phi10_full, FULL_DET4)


@pytest.fixture(scope="session")
def phi10_small():
    return phi_cusp(10, 600)


@pytest.fixture(scope="session")
def phi12_small():
    return phi_cusp(12, 600)
