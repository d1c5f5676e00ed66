"""
Coaugmented coalgebras: coproduct iteration, reduced coproduct, coradical
filtration and the executable axiom checkers.

Iterated coproducts recurse in the second slot,
Δᵏ = (id ⊗ Δᵏ⁻¹)Δ and Δ̄ᵏ = (id ⊗ Δ̄ᵏ⁻¹)Δ̄.
"""
import logging
from collections import defaultdict
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from .errors import FreeModuleError, NonzeroCounitError, NotConilpotentError
from .freemod import BasisKey, Element, Tensor, apply_at, linear_extend, scale, to_scalar
from .reports import CONNECTED, COPRODUCT, COUNIT, CheckReport, FiltrationReport

logger = logging.getLogger(__name__)

CoproductMap = Callable[[BasisKey], Tensor]
CounitMap = Callable[[BasisKey], Fraction]
DegreeMap = Callable[[BasisKey], int]
BasisEnumerator = Callable[[int], List[BasisKey]]


def _key_degree(key: BasisKey) -> int:
    return key.degree


class CoalgebraStructure:
    """
    A coaugmented coalgebra given on a basis.

    The coproduct and counit are basis-level maps, linearly extended here.
    `degree_map` is the grading; `filtration_map` gives the filtration
    degree of a basis key (the least n with the key in Cⁿ) and defaults to
    the grading-induced filtration.
    """

    def __init__(
        self,
        name: str,
        coproduct_map: CoproductMap,
        counit_map: CounitMap,
        coaugmentation_unit: BasisKey,
        enumerate_basis: BasisEnumerator,
        degree_map: DegreeMap = _key_degree,
        filtration_map: Optional[DegreeMap] = None,
        graded: bool = True,
    ):
        self.name = name
        self.coproduct_map = coproduct_map
        self.counit_map = counit_map
        self.coaugmentation_unit = coaugmentation_unit
        self.enumerate_basis = enumerate_basis
        self.degree_map = degree_map
        self.filtration_map = filtration_map or degree_map
        self.graded = graded
        self._iterated: Dict[Tuple[BasisKey, int], Tensor] = {}
        self._reduced: Dict[Tuple[BasisKey, int], Tensor] = {}
        self._reduced_left: Dict[Tuple[BasisKey, int], Tensor] = {}

    def __repr__(self) -> str:
        return f"CoalgebraStructure({self.name!r})"

    # ---------- unit / counit ----------
    def unit_element(self) -> Element:
        return Element.basis(self.coaugmentation_unit)

    def counit_extend(self, a: Element) -> Fraction:
        return sum((c * to_scalar(self.counit_map(k)) for k, c in a.terms.items()), Fraction(0))

    def project_ker_counit(self, a: Element) -> Element:
        """π = id − uε, the projection onto ker ε along im u."""
        return a - scale(self.counit_extend(a), self.unit_element())

    # ---------- coproducts ----------
    def coproduct(self, a: Element) -> Tensor:
        return linear_extend(self.coproduct_map, a, arity=2)

    def iterated_coproduct(self, a: Element, k: int) -> Tensor:
        if k < 1:
            raise FreeModuleError(f"iteration count must be positive, got {k}")
        if k == 1:
            return self.coproduct(a)
        return apply_at(lambda key: self._iterated_on_basis(key, k - 1), self.coproduct(a), 2, width=k)

    def _iterated_on_basis(self, key: BasisKey, k: int) -> Tensor:
        cached = self._iterated.get((key, k))
        if cached is not None:
            return cached
        value = self.iterated_coproduct(Element.basis(key), k)
        return self._iterated.setdefault((key, k), value)

    def _reduced_on_basis(self, key: BasisKey) -> Tensor:
        # Δ(x) − x⊗1 − 1⊗x; a linear map on all of C that restricts to Δ̄ on ker ε
        unit = self.coaugmentation_unit
        image = self.coproduct_map(key)
        return image - Tensor.pure(key, unit) - Tensor.pure(unit, key)

    def _require_ker_counit(self, a: Element) -> None:
        counit = self.counit_extend(a)
        if counit:
            raise NonzeroCounitError(f"reduced coproduct needs an element of ker ε, counit is {counit}")

    def reduced_coproduct(self, a: Element) -> Tensor:
        self._require_ker_counit(a)
        return linear_extend(self._reduced_on_basis, a, arity=2)

    def iterated_reduced_coproduct(self, a: Element, k: int) -> Tensor:
        if k < 1:
            raise FreeModuleError(f"iteration count must be positive, got {k}")
        first = self.reduced_coproduct(a)
        if k == 1:
            return first
        return apply_at(lambda key: self._iterated_reduced_on_basis(key, k - 1), first, 2, width=k)

    def _iterated_reduced_on_basis(self, key: BasisKey, k: int) -> Tensor:
        cached = self._reduced.get((key, k))
        if cached is not None:
            return cached
        first = self._reduced_on_basis(key)
        if k == 1:
            value = first
        else:
            value = apply_at(lambda inner: self._iterated_reduced_on_basis(inner, k - 1), first, 2, width=k)
        return self._reduced.setdefault((key, k), value)

    def iterated_reduced_coproduct_left(self, a: Element, k: int) -> Tensor:
        """(Δ̄ᵏ⁻¹ ⊗ id)Δ̄, the first-slot bracketing."""
        if k < 1:
            raise FreeModuleError(f"iteration count must be positive, got {k}")
        first = self.reduced_coproduct(a)
        if k == 1:
            return first
        return apply_at(lambda key: self._iterated_reduced_left_on_basis(key, k - 1), first, 1, width=k)

    def _iterated_reduced_left_on_basis(self, key: BasisKey, k: int) -> Tensor:
        cached = self._reduced_left.get((key, k))
        if cached is not None:
            return cached
        first = self._reduced_on_basis(key)
        if k == 1:
            value = first
        else:
            value = apply_at(lambda inner: self._iterated_reduced_left_on_basis(inner, k - 1), first, 1, width=k)
        return self._reduced_left.setdefault((key, k), value)

    # ---------- degrees and the coradical filtration ----------
    def degree(self, a: Element) -> int:
        """Filtration degree: max over the support. Raises DegreeError on zero."""
        a.degree()
        return max(self.filtration_map(k) for k in a.terms)

    def conilpotency_index(self, a: Element) -> int:
        """
        Least n with a in F_n. Mixed elements are split by π and the larger
        of the two component indices is returned.
        """
        self.degree(a)
        reduced = self.project_ker_counit(a)
        if reduced.is_zero():
            return 0
        bound = max(self.degree(reduced), 1)
        for n in range(1, bound + 1):
            if self.iterated_reduced_coproduct(reduced, n).is_zero():
                return n
        raise NotConilpotentError(
            f"Δ̄^{bound} does not vanish on an element of degree {bound}; "
            f"{self.name} is not a connected cofiltered coalgebra"
        )

    def in_coradical_filtration(self, a: Element, n: int) -> bool:
        if n < 0:
            return False
        reduced = self.project_ker_counit(a)
        if reduced.is_zero():
            return True
        if n == 0:
            return False
        return self.iterated_reduced_coproduct(reduced, n).is_zero()


# ---------- checkers ----------

def check_coassociativity(s: CoalgebraStructure, degree_bound: int) -> CheckReport:
    report = CheckReport("coassoc", degree_bound)
    for key in s.enumerate_basis(degree_bound):
        report.checked_count += 1
        delta = s.coproduct_map(key)
        left = apply_at(s.coproduct_map, delta, 1, width=2)
        right = apply_at(s.coproduct_map, delta, 2, width=2)
        if left != right:
            logger.debug(f"coassociativity fails at {key.render()}")
            report.add(key, "(Δ⊗id)Δ differs from (id⊗Δ)Δ")
    return report


def check_counicity(s: CoalgebraStructure, degree_bound: int) -> CheckReport:
    report = CheckReport("counit", degree_bound)
    unit = s.coaugmentation_unit
    if to_scalar(s.counit_map(unit)) != 1:
        report.add(unit, "ε(u(1)) is not 1")
    for key in s.enumerate_basis(degree_bound):
        report.checked_count += 1
        delta = s.coproduct_map(key)
        expected = Element.basis(key)
        if apply_at(s.counit_map, delta, 1, width=0).as_element() != expected:
            report.add(key, "left counit triangle fails: (ε⊗id)Δ(b) ≠ b")
        if apply_at(s.counit_map, delta, 2, width=0).as_element() != expected:
            report.add(key, "right counit triangle fails: (id⊗ε)Δ(b) ≠ b")
    return report


def check_cograded(s: CoalgebraStructure, degree_bound: int) -> FiltrationReport:
    report = FiltrationReport("cograded", degree_bound)
    if not s.graded:
        report.add(s.coaugmentation_unit, f"{s.name} does not declare a grading", CONNECTED)
        return report
    unit = s.coaugmentation_unit
    basis = s.enumerate_basis(degree_bound)
    degree_zero = [k for k in basis if s.degree_map(k) == 0]
    if degree_zero != [unit]:
        labels = ", ".join(k.render() for k in degree_zero) or "nothing"
        report.add(unit, f"degree-0 part is spanned by {labels}, not by u(1)", CONNECTED)
    if to_scalar(s.counit_map(unit)) != 1:
        report.add(unit, "ε(u(1)) is not 1", COUNIT)
    for key in basis:
        report.checked_count += 1
        n = s.degree_map(key)
        if n >= 1 and to_scalar(s.counit_map(key)):
            report.add(key, f"ε does not vanish on degree {n}", COUNIT)
        for (left, right), _ in s.coproduct_map(key).items():
            p, q = s.degree_map(left), s.degree_map(right)
            if p + q != n:
                report.add(
                    key,
                    f"term {left.render()}⊗{right.render()} has degrees {p}+{q}, expected total {n}",
                    COPRODUCT,
                )
    return report


def check_cofiltered(s: CoalgebraStructure, degree_bound: int) -> FiltrationReport:
    report = FiltrationReport("cofiltered", degree_bound)
    unit = s.coaugmentation_unit
    level = s.filtration_map
    basis = s.enumerate_basis(degree_bound)
    level_zero = [k for k in basis if level(k) == 0]
    if level_zero != [unit]:
        labels = ", ".join(k.render() for k in level_zero) or "nothing"
        report.add(unit, f"C⁰ is spanned by {labels}, not by u(1)", CONNECTED)
    # Cⁿ = im u ⊕ (Cⁿ ∩ ker ε) for every n needs u(1) in C⁰
    if level(unit) != 0:
        report.add(unit, f"u(1) lies in C^{level(unit)}, not in C⁰", COUNIT)
    for key in basis:
        report.checked_count += 1
        n = level(key)
        for (left, right), _ in s.coproduct_map(key).items():
            p, q = level(left), level(right)
            if p + q > n:
                report.add(
                    key,
                    f"term {left.render()}⊗{right.render()} lies in C^{p}⊗C^{q} with {p}+{q} > {n}",
                    COPRODUCT,
                )
    return report


def check_degree_drop(s: CoalgebraStructure, degree_bound: int) -> CheckReport:
    report = CheckReport("degree-drop", degree_bound)
    level = s.filtration_map
    for key in s.enumerate_basis(degree_bound):
        n = level(key)
        if n < 1 or to_scalar(s.counit_map(key)):
            continue
        report.checked_count += 1
        for (left, right), _ in s.reduced_coproduct(Element.basis(key)).items():
            p, q = level(left), level(right)
            if not (0 < p < n and 0 < q < n):
                report.add(key, f"reduced term {left.render()}⊗{right.render()} has degrees {p}, {q} outside (0, {n})")
    return report


def check_decomposition(s: CoalgebraStructure, degree_bound: int) -> CheckReport:
    report = CheckReport("decomposition", degree_bound)
    unit = s.unit_element()
    if s.counit_extend(unit) != 1:
        report.add(s.coaugmentation_unit, "ε∘u is not the identity")
    for key in s.enumerate_basis(degree_bound):
        report.checked_count += 1
        b = Element.basis(key)
        projected = s.project_ker_counit(b)
        if s.counit_extend(projected):
            report.add(key, "π(b) is not in ker ε")
        if scale(s.counit_extend(b), unit) + projected != b:
            report.add(key, "b ≠ ε(b)·u(1) + π(b)")
        if s.project_ker_counit(projected) != projected:
            report.add(key, "π is not idempotent on b")
    return report


def check_reduced_legs(s: CoalgebraStructure, degree_bound: int) -> CheckReport:
    report = CheckReport("reduced-legs", degree_bound)
    for key in s.enumerate_basis(degree_bound):
        if to_scalar(s.counit_map(key)):
            continue
        report.checked_count += 1
        reduced = s.reduced_coproduct(Element.basis(key))
        if reduced.is_zero():
            continue
        if not apply_at(s.counit_map, reduced, 1, width=0).is_zero():
            report.add(key, "(ε⊗id)Δ̄(b) ≠ 0: a left leg leaves ker ε")
        if not apply_at(s.counit_map, reduced, 2, width=0).is_zero():
            report.add(key, "(id⊗ε)Δ̄(b) ≠ 0: a right leg leaves ker ε")
    return report


def check_conilpotent(s: CoalgebraStructure, degree_bound: int) -> CheckReport:
    report = CheckReport("conilpotent", degree_bound)
    for key in s.enumerate_basis(degree_bound):
        n = s.filtration_map(key)
        if n < 1 or to_scalar(s.counit_map(key)):
            continue
        report.checked_count += 1
        b = Element.basis(key)
        for k in (n, n + 1):
            if not s.iterated_reduced_coproduct(b, k).is_zero():
                report.add(key, f"Δ̄^{k}(b) ≠ 0 for b of degree {n}")
        try:
            index = s.conilpotency_index(b)
        except NotConilpotentError as e:
            report.add(key, str(e))
            continue
        if index > n:
            report.add(key, f"conilpotency index {index} exceeds degree {n}")
    return report


def coradical_layers(s: CoalgebraStructure, degree_bound: int) -> Dict[int, List[BasisKey]]:
    """Basis keys up to the bound grouped by conilpotency index."""
    layers: Dict[int, List[BasisKey]] = defaultdict(list)
    for key in s.enumerate_basis(degree_bound):
        layers[s.conilpotency_index(Element.basis(key))].append(key)
    return dict(sorted(layers.items()))
