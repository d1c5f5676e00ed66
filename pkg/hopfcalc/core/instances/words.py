"""
Word bialgebras with the deconcatenation coproduct: the shuffle algebra, the
quasi-shuffle algebra over positive integer weights, and a perturbed shuffle
coproduct used as a negative control.
"""
import itertools
import string
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, List, Tuple

from ..coalgebra import CoalgebraStructure
from ..errors import InvalidInstanceError
from ..expression import GeneratorSyntax
from ..freemod import BasisKey, Element, Tensor
from ..hopf import BialgebraInstance

Word = Tuple


@dataclass(frozen=True)
class WordKey(BasisKey):
    letters: Tuple[str, ...]

    @property
    def degree(self) -> int:
        return len(self.letters)

    def sort_key(self) -> Tuple:
        return self.letters

    def render(self) -> str:
        return "".join(self.letters) or "1"


@dataclass(frozen=True)
class WeightedWordKey(BasisKey):
    letters: Tuple[int, ...]

    def __post_init__(self):
        if any(not isinstance(w, int) or w < 1 for w in self.letters):
            raise InvalidInstanceError(f"weights must be positive integers, got {self.letters!r}")

    @property
    def degree(self) -> int:
        return len(self.letters)

    def sort_key(self) -> Tuple:
        return self.letters

    def render(self) -> str:
        return "".join(f"({w})" for w in self.letters) or "1"


# ---------- word combinatorics ----------

@lru_cache(maxsize=None)
def shuffle_counts(u: Word, v: Word) -> Tuple[Tuple[Word, int], ...]:
    """Words of u ⧢ v with multiplicities."""
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    acc: Counter = Counter()
    for w, c in shuffle_counts(u[1:], v):
        acc[u[:1] + w] += c
    for w, c in shuffle_counts(u, v[1:]):
        acc[v[:1] + w] += c
    return tuple(sorted(acc.items()))


@lru_cache(maxsize=None)
def quasi_shuffle_counts(u: Word, v: Word) -> Tuple[Tuple[Word, int], ...]:
    """u ∗ v with first letters merged by weight addition as the third branch."""
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    acc: Counter = Counter()
    for w, c in quasi_shuffle_counts(u[1:], v):
        acc[u[:1] + w] += c
    for w, c in quasi_shuffle_counts(u, v[1:]):
        acc[v[:1] + w] += c
    for w, c in quasi_shuffle_counts(u[1:], v[1:]):
        acc[(u[0] + v[0],) + w] += c
    return tuple(sorted(acc.items()))


def deconcatenation(key_type: Callable[[Word], BasisKey], letters: Word) -> Tensor:
    return Tensor(2, {(key_type(letters[:i]), key_type(letters[i:])): 1 for i in range(len(letters) + 1)})


def _empty_counit(key) -> int:
    return 0 if key.letters else 1


# ---------- generator literals ----------

def _word_resolver(alphabet: str) -> Callable[[str], WordKey]:
    def resolve(literal: str) -> WordKey:
        if any(ch not in alphabet for ch in literal):
            raise ValueError(literal)
        return WordKey(tuple(literal))
    return resolve


def _weighted_resolve(literal: str) -> WeightedWordKey:
    weights = tuple(int(w) for w in literal.strip("()").split(")("))
    if any(w < 1 for w in weights):
        raise ValueError(literal)
    return WeightedWordKey(weights)


# ---------- instances ----------

def _alphabet(alphabet_size: int) -> str:
    if not 1 <= alphabet_size <= len(string.ascii_lowercase):
        raise InvalidInstanceError(f"alphabet size must be between 1 and 26, got {alphabet_size}")
    return string.ascii_lowercase[:alphabet_size]


def _word_enumerator(key_type, letters) -> Callable[[int], List[BasisKey]]:
    def enumerate_basis(degree_bound: int) -> List[BasisKey]:
        keys = []
        for length in range(degree_bound + 1):
            keys.extend(key_type(w) for w in itertools.product(letters, repeat=length))
        return sorted(keys)
    return enumerate_basis


def _shuffle_product(left: WordKey, right: WordKey) -> Element:
    return Element({WordKey(w): c for w, c in shuffle_counts(left.letters, right.letters)})


def _word_coproduct(key: WordKey) -> Tensor:
    return deconcatenation(WordKey, key.letters)


def shuffle_instance(alphabet_size: int = 2) -> BialgebraInstance:
    alphabet = _alphabet(alphabet_size)
    coalgebra = CoalgebraStructure(
        name="shuffle",
        coproduct_map=_word_coproduct,
        counit_map=_empty_counit,
        coaugmentation_unit=WordKey(()),
        enumerate_basis=_word_enumerator(WordKey, alphabet),
    )
    return BialgebraInstance(
        name="shuffle",
        coalgebra=coalgebra,
        product_map=_shuffle_product,
        commutative=True,
        description=f"shuffle algebra on {{{','.join(alphabet)}}} with deconcatenation",
        syntax=GeneratorSyntax(r"[a-z]+", _word_resolver(alphabet)),
    )


def _quasi_shuffle_product(left: WeightedWordKey, right: WeightedWordKey) -> Element:
    return Element({WeightedWordKey(w): c for w, c in quasi_shuffle_counts(left.letters, right.letters)})


def _weighted_coproduct(key: WeightedWordKey) -> Tensor:
    return deconcatenation(WeightedWordKey, key.letters)


def quasi_shuffle_instance(max_weight: int = 3) -> BialgebraInstance:
    """
    Quasi-shuffle algebra. The coalgebra is graded by word length; the product
    is not, since merging letters shortens words. max_weight only bounds the
    letters enumerated for checks.
    """
    if max_weight < 1:
        raise InvalidInstanceError(f"max weight must be at least 1, got {max_weight}")
    coalgebra = CoalgebraStructure(
        name="quasishuffle",
        coproduct_map=_weighted_coproduct,
        counit_map=_empty_counit,
        coaugmentation_unit=WeightedWordKey(()),
        enumerate_basis=_word_enumerator(WeightedWordKey, tuple(range(1, max_weight + 1))),
    )
    return BialgebraInstance(
        name="quasishuffle",
        coalgebra=coalgebra,
        product_map=_quasi_shuffle_product,
        commutative=True,
        description=f"quasi-shuffle algebra on weights 1..{max_weight} with deconcatenation",
        syntax=GeneratorSyntax(r"(?:\(\d+\))+", _weighted_resolve),
    )


BROKEN_KEY = WordKey(("a", "b"))


def _broken_coproduct(key: WordKey) -> Tensor:
    image = _word_coproduct(key)
    if key != BROKEN_KEY:
        return image
    return image + Tensor.pure(WordKey(("a",)), WordKey(("b",)))


def broken_instance(alphabet_size: int = 2) -> BialgebraInstance:
    """Shuffle algebra whose Δ(ab) carries 2·a⊗b; counicity survives, coassociativity does not."""
    alphabet = _alphabet(max(alphabet_size, 2))
    coalgebra = CoalgebraStructure(
        name="broken",
        coproduct_map=_broken_coproduct,
        counit_map=_empty_counit,
        coaugmentation_unit=WordKey(()),
        enumerate_basis=_word_enumerator(WordKey, alphabet),
    )
    return BialgebraInstance(
        name="broken",
        coalgebra=coalgebra,
        product_map=_shuffle_product,
        commutative=True,
        description="shuffle algebra with a perturbed coproduct on ab",
        syntax=GeneratorSyntax(r"[a-z]+", _word_resolver(alphabet)),
    )
