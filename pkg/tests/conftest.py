import pytest

from kummerflags import construct_self_orthogonal, isodual, load_config


@pytest.fixture(scope="session")
def herm():
    return load_config("hermitian16")


@pytest.fixture(scope="session")
def k2():
    return load_config("koetter2")


@pytest.fixture(scope="session")
def k3():
    return load_config("koetter3")


@pytest.fixture(scope="session")
def f121():
    return load_config("f121")


@pytest.fixture(scope="session")
def herm_D(herm):
    return herm.eval_set()


@pytest.fixture(scope="session")
def herm_iso2(herm, herm_D):
    return isodual(herm.curve, herm.scope, (2,), herm_D)


@pytest.fixture(scope="session")
def k3_selforth(k3):
    return construct_self_orthogonal(k3.curve, k3.scope, k3.beta, k3.eval_set())
