"""
Bialgebras and Hopf algebras: products, convolution of endomorphisms, the
three antipode algorithms and the antipode/bialgebra axiom checkers.
"""
import logging
import threading
from collections import defaultdict
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Set, Tuple

from sympy import Matrix, Rational

from .coalgebra import CoalgebraStructure
from .errors import FreeModuleError, HopfCalcError, InvalidInstanceError, NotConilpotentError
from .freemod import BasisKey, Element, Tensor, linear_extend, scale, sum_vectors, tensor_of, to_scalar
from .reports import CheckReport

logger = logging.getLogger(__name__)

ProductMap = Callable[[BasisKey, BasisKey], Element]

SERIES = "series"
REC_LEFT = "rec-left"
REC_RIGHT = "rec-right"
ANTIPODE_ALGORITHMS = (SERIES, REC_LEFT, REC_RIGHT)


class EndoMap:
    """
    Linear endomorphism given by a rule on basis keys.

    Values are memoized per key; concurrent fills of the same key store
    whichever value lands first, which is the same value.
    """

    def __init__(self, name: str, rule: Callable[[BasisKey], Element]):
        self.name = name
        self.rule = rule
        self._memo: Dict[BasisKey, Element] = {}

    @classmethod
    def from_table(cls, name: str, table: Dict[BasisKey, Element]) -> "EndoMap":
        return cls(name, table.__getitem__)

    def on_basis(self, key: BasisKey) -> Element:
        cached = self._memo.get(key)
        if cached is None:
            cached = self._memo.setdefault(key, self.rule(key))
        return cached

    def __call__(self, a: Element) -> Element:
        return linear_extend(self.on_basis, a, arity=None)

    def __repr__(self) -> str:
        return f"EndoMap({self.name!r}, memo={len(self._memo)})"


class BialgebraInstance:
    """A concrete bialgebra: a coaugmented coalgebra plus a unital product on the same basis."""

    def __init__(
        self,
        name: str,
        coalgebra: CoalgebraStructure,
        product_map: ProductMap,
        commutative: bool = False,
        description: str = "",
        syntax=None,
    ):
        self.name = name
        self.coalgebra = coalgebra
        self.product_map = product_map
        self.unit = coalgebra.coaugmentation_unit
        self.commutative = commutative
        self.description = description
        self.syntax = syntax
        self._products: Dict[Tuple[BasisKey, BasisKey], Element] = {}
        self._antipodes: Dict[str, EndoMap] = {}
        self._lock = threading.Lock()

    def __repr__(self) -> str:
        return f"BialgebraInstance({self.name!r})"

    def enumerate_basis(self, degree_bound: int) -> List[BasisKey]:
        return self.coalgebra.enumerate_basis(degree_bound)

    def unit_element(self) -> Element:
        return Element.basis(self.unit)

    # ---------- algebra ----------
    def product_on_basis(self, left: BasisKey, right: BasisKey) -> Element:
        cached = self._products.get((left, right))
        if cached is None:
            cached = self._products.setdefault((left, right), self.product_map(left, right))
        return cached

    def multiply(self, a: Element, b: Element) -> Element:
        acc: Dict[BasisKey, Fraction] = defaultdict(Fraction)
        for ka, ca in a.terms.items():
            for kb, cb in b.terms.items():
                for key, c in self.product_on_basis(ka, kb).terms.items():
                    acc[key] += ca * cb * c
        return Element._from_accumulator(acc)

    def multiply_fold(self, t: Tensor) -> Element:
        """Left fold of the product across the slots: ((x₁x₂)x₃)⋯."""
        acc: Dict[BasisKey, Fraction] = defaultdict(Fraction)
        for keys, coeff in t.terms.items():
            current = Element.basis(keys[0])
            for key in keys[1:]:
                current = self.multiply(current, Element.basis(key))
            for key, c in current.terms.items():
                acc[key] += coeff * c
        return Element._from_accumulator(acc)

    def multiply_fold_right(self, t: Tensor) -> Element:
        """Right fold: x₁(x₂(⋯xₙ))."""
        acc: Dict[BasisKey, Fraction] = defaultdict(Fraction)
        for keys, coeff in t.terms.items():
            current = Element.basis(keys[-1])
            for key in reversed(keys[:-1]):
                current = self.multiply(Element.basis(key), current)
            for key, c in current.terms.items():
                acc[key] += coeff * c
        return Element._from_accumulator(acc)

    def multiply_tensors(self, s: Tensor, t: Tensor) -> Tensor:
        """Componentwise product in H^{⊗k}: (a₁⊗⋯⊗aₖ)(b₁⊗⋯⊗bₖ) = a₁b₁⊗⋯⊗aₖbₖ."""
        if s.arity != t.arity:
            raise FreeModuleError(f"cannot multiply tensors of arity {s.arity} and {t.arity}")
        parts = []
        for ks, cs in s.terms.items():
            for kt, ct in t.terms.items():
                factors = [self.product_on_basis(a, b) for a, b in zip(ks, kt)]
                parts.append(scale(cs * ct, tensor_of(*factors)))
        return sum_vectors(parts, arity=s.arity)

    # ---------- convolution ----------
    def identity_map(self) -> EndoMap:
        return EndoMap("id", Element.basis)

    def unit_counit_map(self) -> EndoMap:
        unit = self.unit_element()
        return EndoMap("uε", lambda key: scale(self.coalgebra.counit_map(key), unit))

    def convolve(self, f: EndoMap, g: EndoMap, a: Element) -> Element:
        """(f∗g)(a) = Σ f(a₍₁₎)g(a₍₂₎)."""
        acc: Dict[BasisKey, Fraction] = defaultdict(Fraction)
        for (left, right), coeff in self.coalgebra.coproduct(a).terms.items():
            for key, c in self.multiply(f.on_basis(left), g.on_basis(right)).terms.items():
                acc[key] += coeff * c
        return Element._from_accumulator(acc)

    # ---------- antipodes ----------
    def antipode_series_terms(self, a: Element) -> List[Element]:
        """
        Summands of S(x) = −x + Σ_{n≥1} (−1)^{n+1} mⁿ Δ̄ⁿ(x) for x = π(a).

        The sum runs until Δ̄ⁿ(x) vanishes; a nonzero Δ̄ⁿ at n = deg(x)
        means the instance is not conilpotent.
        """
        cg = self.coalgebra
        reduced = cg.project_ker_counit(a)
        if reduced.is_zero():
            return []
        terms = [-reduced]
        bound = max(cg.degree(reduced), 1)
        n = 1
        while True:
            iterated = cg.iterated_reduced_coproduct(reduced, n)
            if iterated.is_zero():
                break
            if n >= bound:
                raise NotConilpotentError(
                    f"Δ̄^{n} does not vanish in degree {bound}; the antipode series does not terminate"
                )
            sign = 1 if n % 2 == 1 else -1
            terms.append(scale(sign, self.multiply_fold(iterated)))
            n += 1
        return terms

    def antipode_series(self, a: Element) -> Element:
        counit = self.coalgebra.counit_extend(a)
        return sum_vectors([scale(counit, self.unit_element())] + self.antipode_series_terms(a))

    def antipode_recursive_left(self, a: Element) -> Element:
        """S(x) = −x − Σ S(x′)x″, memoized per basis key."""
        return self.antipode_map(REC_LEFT)(a)

    def antipode_recursive_right(self, a: Element) -> Element:
        """S(x) = −x − Σ x′S(x″)."""
        return self.antipode_map(REC_RIGHT)(a)

    def antipode_map(self, algorithm: str) -> EndoMap:
        with self._lock:
            endo = self._antipodes.get(algorithm)
            if endo is None:
                rules = {
                    SERIES: lambda key: self.antipode_series(Element.basis(key)),
                    REC_LEFT: lambda key: self._recursive_rule(key, left=True),
                    REC_RIGHT: lambda key: self._recursive_rule(key, left=False),
                }
                if algorithm not in rules:
                    raise HopfCalcError(f"unknown antipode algorithm {algorithm!r}")
                endo = self._antipodes[algorithm] = EndoMap(f"S[{algorithm}]", rules[algorithm])
        return endo

    def _recursive_rule(self, key: BasisKey, left: bool) -> Element:
        cg = self.coalgebra
        if key == self.unit:
            return self.unit_element()
        if to_scalar(cg.counit_map(key)):
            raise InvalidInstanceError(f"basis element {key.render()} is neither u(1) nor in ker ε")
        endo = self.antipode_map(REC_LEFT if left else REC_RIGHT)
        degree = cg.filtration_map(key)
        result = -Element.basis(key)
        for (x1, x2), coeff in cg.reduced_coproduct(Element.basis(key)).terms.items():
            inner = x1 if left else x2
            if cg.filtration_map(inner) >= degree:
                raise NotConilpotentError(
                    f"degree does not drop from {key.render()} to {inner.render()}; recursion would not terminate"
                )
            if left:
                product = self.multiply(endo.on_basis(x1), Element.basis(x2))
            else:
                product = self.multiply(Element.basis(x1), endo.on_basis(x2))
            result = result - scale(coeff, product)
        logger.debug(f"{self.name}: S({key.render()}) computed")
        return result


def coproduct_closure(inst: BialgebraInstance, keys: Iterable[BasisKey]) -> List[BasisKey]:
    """Keys reachable from `keys` through the legs of Δ, the keys themselves included."""
    seen: Set[BasisKey] = set()
    pending = list(keys)
    while pending:
        key = pending.pop()
        if key in seen:
            continue
        seen.add(key)
        for legs in inst.coalgebra.coproduct_map(key).terms:
            pending.extend(k for k in legs if k not in seen)
    return sorted(seen)


def antipode_triangular(inst: BialgebraInstance, degree_bound: int, side: str = "left",
                        keys: Optional[Iterable[BasisKey]] = None) -> Dict[BasisKey, Element]:
    """
    Solve S∗id = uε (side "left") or id∗S = uε (side "right") degree by
    degree as an exact linear system in the unknowns S(b), deg(b) = n, with
    all lower-degree values already known.

    The unknowns are the basis up to degree_bound, or, when `keys` is given,
    the coproduct closure of those keys (degree_bound is then ignored).
    """
    if side not in ("left", "right"):
        raise HopfCalcError(f"side must be left or right, got {side!r}")
    cg = inst.coalgebra
    unit = inst.unit_element()
    by_degree: Dict[int, List[BasisKey]] = defaultdict(list)
    basis = inst.enumerate_basis(degree_bound) if keys is None else coproduct_closure(inst, keys)
    for key in basis:
        by_degree[cg.filtration_map(key)].append(key)

    solved: Dict[BasisKey, Element] = {}
    for n in sorted(by_degree):
        block = by_degree[n]
        column = {k: i for i, k in enumerate(block)}
        coefficients = [[Fraction(0)] * len(block) for _ in block]
        rhs: List[Element] = []
        for row, key in enumerate(block):
            known = [scale(cg.counit_map(key), unit)]
            for (x1, x2), coeff in cg.coproduct_map(key).terms.items():
                inner, outer = (x1, x2) if side == "left" else (x2, x1)
                if inner in column:
                    if outer != inst.unit:
                        raise InvalidInstanceError(
                            f"{inst.name}: Δ({key.render()}) pairs a degree-{n} leg with {outer.render()}"
                        )
                    coefficients[row][column[inner]] += coeff
                elif inner in solved:
                    value = solved[inner]
                    other = Element.basis(outer)
                    product = inst.multiply(value, other) if side == "left" else inst.multiply(other, value)
                    known.append(scale(-coeff, product))
                else:
                    raise InvalidInstanceError(
                        f"{inst.name}: Δ({key.render()}) has a leg {inner.render()} of degree ≥ {n} outside the solve"
                    )
            rhs.append(sum_vectors(known))
        solved.update(_solve_block(block, coefficients, rhs))
    return solved


def _solve_block(keys: List[BasisKey], coefficients: List[List[Fraction]], rhs: List[Element]) -> Dict[BasisKey, Element]:
    size = len(keys)
    if all(coefficients[i][j] == 0 for i in range(size) for j in range(size) if i != j):
        # diagonal system: divide row by row
        if any(coefficients[i][i] == 0 for i in range(size)):
            raise InvalidInstanceError("the antipode equations are singular in this degree")
        return {key: scale(1 / coefficients[i][i], rhs[i]) for i, key in enumerate(keys)}

    lhs = Matrix([[Rational(c.numerator, c.denominator) for c in row] for row in coefficients])
    if lhs.det() == 0:
        raise InvalidInstanceError("the antipode equations are singular in this degree")
    support = sorted({k for element in rhs for k in element.terms})
    if not support:
        return {key: Element.zero() for key in keys}
    values = Matrix(
        [[Rational(e.coefficient(k).numerator, e.coefficient(k).denominator) for k in support] for e in rhs]
    )
    solution = lhs.LUsolve(values)
    return {
        key: Element({k: Fraction(int(solution[i, j].p), int(solution[i, j].q)) for j, k in enumerate(support)})
        for i, key in enumerate(keys)
    }


def verify_antipode(inst: BialgebraInstance, antipode: EndoMap, degree_bound: int) -> CheckReport:
    report = CheckReport("antipode", degree_bound)
    identity = inst.identity_map()
    unit = inst.unit_element()
    for key in inst.enumerate_basis(degree_bound):
        report.checked_count += 1
        b = Element.basis(key)
        expected = scale(inst.coalgebra.counit_map(key), unit)
        try:
            left = inst.convolve(antipode, identity, b)
            right = inst.convolve(identity, antipode, b)
        except HopfCalcError as e:
            report.add(key, f"{antipode.name} could not be evaluated: {e}")
            continue
        if left != expected:
            report.add(key, "S∗id ≠ uε")
        if right != expected:
            report.add(key, "id∗S ≠ uε")
    return report


def check_bialgebra(inst: BialgebraInstance, degree_bound: int) -> CheckReport:
    """Unit and associativity laws of m, and Δ, ε as algebra morphisms, over basis pairs/triples."""
    report = CheckReport("bialgebra", degree_bound)
    cg = inst.coalgebra
    degree = cg.degree_map
    basis = inst.enumerate_basis(degree_bound)
    unit = inst.unit_element()
    for b in basis:
        element = Element.basis(b)
        if inst.multiply(unit, element) != element or inst.multiply(element, unit) != element:
            report.add(b, "u(1) is not a two-sided unit")
    for b in basis:
        for c in basis:
            if degree(b) + degree(c) > degree_bound:
                continue
            report.checked_count += 1
            eb, ec = Element.basis(b), Element.basis(c)
            product = inst.multiply(eb, ec)
            if cg.coproduct(product) != inst.multiply_tensors(cg.coproduct(eb), cg.coproduct(ec)):
                report.add((b, c), "Δ(bc) ≠ Δ(b)Δ(c)")
            if cg.counit_extend(product) != to_scalar(cg.counit_map(b)) * to_scalar(cg.counit_map(c)):
                report.add((b, c), "ε(bc) ≠ ε(b)ε(c)")
            for d in basis:
                if degree(b) + degree(c) + degree(d) > degree_bound:
                    continue
                ed = Element.basis(d)
                if inst.multiply(product, ed) != inst.multiply(eb, inst.multiply(ec, ed)):
                    report.add((b, c, d), "(bc)d ≠ b(cd)")
    return report
