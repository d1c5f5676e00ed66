"""Polynomial bialgebra 𝐤[x] with the binomial coproduct."""
from dataclasses import dataclass
from math import comb
from typing import List, Tuple

from ..coalgebra import CoalgebraStructure
from ..errors import InvalidInstanceError
from ..expression import GeneratorSyntax
from ..freemod import BasisKey, Element, Tensor
from ..hopf import BialgebraInstance


@dataclass(frozen=True)
class PolynomialKey(BasisKey):
    exponent: int

    def __post_init__(self):
        if not isinstance(self.exponent, int) or self.exponent < 0:
            raise InvalidInstanceError(f"exponent must be a non-negative integer, got {self.exponent!r}")

    @property
    def degree(self) -> int:
        return self.exponent

    def sort_key(self) -> Tuple:
        return (self.exponent,)

    def render(self) -> str:
        if self.exponent == 0:
            return "1"
        if self.exponent == 1:
            return "x"
        return f"x^{self.exponent}"


UNIT = PolynomialKey(0)


def _coproduct(key: PolynomialKey) -> Tensor:
    n = key.exponent
    return Tensor(2, {(PolynomialKey(k), PolynomialKey(n - k)): comb(n, k) for k in range(n + 1)})


def _counit(key: PolynomialKey) -> int:
    return 1 if key.exponent == 0 else 0


def _product(left: PolynomialKey, right: PolynomialKey) -> Element:
    return Element.basis(PolynomialKey(left.exponent + right.exponent))


def _enumerate(degree_bound: int) -> List[PolynomialKey]:
    return [PolynomialKey(n) for n in range(max(degree_bound, -1) + 1)]


def _resolve(literal: str) -> PolynomialKey:
    if literal != "x":
        raise ValueError(literal)
    return PolynomialKey(1)


def polynomial_instance() -> BialgebraInstance:
    coalgebra = CoalgebraStructure(
        name="poly",
        coproduct_map=_coproduct,
        counit_map=_counit,
        coaugmentation_unit=UNIT,
        enumerate_basis=_enumerate,
    )
    return BialgebraInstance(
        name="poly",
        coalgebra=coalgebra,
        product_map=_product,
        commutative=True,
        description="polynomials in x, Δ(xⁿ) = Σ C(n,k) xᵏ⊗xⁿ⁻ᵏ",
        syntax=GeneratorSyntax(r"x", _resolve),
    )
