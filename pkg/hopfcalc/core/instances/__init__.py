"""Registry of the shipped bialgebra instances."""
import logging
from typing import List

from ..errors import UnknownInstanceError
from ..freemod import BasisKey
from ..hopf import BialgebraInstance
from .forests import ForestKey, connes_kreimer_instance
from .polynomial import PolynomialKey, polynomial_instance
from .words import WeightedWordKey, WordKey, broken_instance, quasi_shuffle_instance, shuffle_instance

logger = logging.getLogger(__name__)

INSTANCE_NAMES = ("poly", "shuffle", "quasishuffle", "ck", "broken")


def build_instance(name: str, alphabet_size: int = 2, max_weight: int = 3) -> BialgebraInstance:
    builders = {
        "poly": polynomial_instance,
        "shuffle": lambda: shuffle_instance(alphabet_size),
        "quasishuffle": lambda: quasi_shuffle_instance(max_weight),
        "ck": connes_kreimer_instance,
        "broken": lambda: broken_instance(alphabet_size),
    }
    if name not in builders:
        raise UnknownInstanceError(f"unknown instance {name!r}; expected one of {', '.join(INSTANCE_NAMES)}")
    logger.info(f"Building instance {name}")
    return builders[name]()


def enumerate_basis(inst: BialgebraInstance, degree_bound: int) -> List[BasisKey]:
    return inst.enumerate_basis(degree_bound)


__all__ = [
    "INSTANCE_NAMES",
    "ForestKey",
    "PolynomialKey",
    "WeightedWordKey",
    "WordKey",
    "broken_instance",
    "build_instance",
    "connes_kreimer_instance",
    "enumerate_basis",
    "polynomial_instance",
    "quasi_shuffle_instance",
    "shuffle_instance",
]
