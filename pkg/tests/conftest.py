"""
Shared fixtures. Instances are built once per session so that their
coproduct, product and antipode caches are reused across tests.
"""
import pytest

from hopfcalc.core.instances import (
    broken_instance,
    connes_kreimer_instance,
    polynomial_instance,
    quasi_shuffle_instance,
    shuffle_instance,
)


@pytest.fixture(scope="session")
def poly():
    return polynomial_instance()


@pytest.fixture(scope="session")
def shuffle():
    return shuffle_instance(2)


@pytest.fixture(scope="session")
def quasishuffle():
    return quasi_shuffle_instance(3)


@pytest.fixture(scope="session")
def ck():
    return connes_kreimer_instance()


@pytest.fixture(scope="session")
def broken():
    return broken_instance()


@pytest.fixture(scope="session")
def instances(poly, shuffle, quasishuffle, ck):
    return {"poly": poly, "shuffle": shuffle, "quasishuffle": quasishuffle, "ck": ck}


@pytest.fixture(params=["poly", "shuffle", "quasishuffle", "ck"])
def instance(request, instances):
    return instances[request.param]
