import pytest

from becdephase import QuadratureConfig, paper_default_params


@pytest.fixture(scope="session")
def quad():
    return QuadratureConfig()


@pytest.fixture
def params_1d():
    return paper_default_params(D=1.0)


@pytest.fixture
def params_2d():
    return paper_default_params(D=2.0)


@pytest.fixture
def params_3d():
    return paper_default_params(D=3.0)
