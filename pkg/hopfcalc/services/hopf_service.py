"""
Hopf Service - One method per command, each returning a ReportDocument
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, Optional, Sequence

from .. import __version__
from ..core import coalgebra as co
from ..core.errors import HopfCalcError
from ..core.expression import parse_expression, render_element, render_tensor
from ..core.freemod import Element, Tensor, format_scalar
from ..core.hopf import (
    ANTIPODE_ALGORITHMS,
    SERIES,
    BialgebraInstance,
    EndoMap,
    antipode_triangular,
    check_bialgebra,
    verify_antipode,
)
from ..core.instances import enumerate_basis
from ..core.reports import CheckReport, FiltrationReport
from ..models.schemas import (
    BasisEntry,
    BasisPayload,
    CheckResult,
    ElementPayload,
    IndexPayload,
    ReportDocument,
    ReportPayload,
    Settings,
    TensorPayload,
    TensorTermModel,
    TermModel,
    ViolationModel,
)
from .instance_service import instance_manager

CheckRunner = Callable[[BialgebraInstance, int, str], CheckReport]

# Order here is the order of `verify --all`
CHECKS: Dict[str, CheckRunner] = {
    "coassoc": lambda inst, bound, algo: co.check_coassociativity(inst.coalgebra, bound),
    "counit": lambda inst, bound, algo: co.check_counicity(inst.coalgebra, bound),
    "cograded": lambda inst, bound, algo: co.check_cograded(inst.coalgebra, bound),
    "cofiltered": lambda inst, bound, algo: co.check_cofiltered(inst.coalgebra, bound),
    "degree-drop": lambda inst, bound, algo: co.check_degree_drop(inst.coalgebra, bound),
    "decomposition": lambda inst, bound, algo: co.check_decomposition(inst.coalgebra, bound),
    "reduced-legs": lambda inst, bound, algo: co.check_reduced_legs(inst.coalgebra, bound),
    "conilpotent": lambda inst, bound, algo: co.check_conilpotent(inst.coalgebra, bound),
    "bialgebra": lambda inst, bound, algo: check_bialgebra(inst, bound),
    "antipode": lambda inst, bound, algo: verify_antipode(inst, inst.antipode_map(algo), bound),
}
CHECK_NAMES = tuple(CHECKS)

CONVOLUTION_OPERANDS = ("id", "antipode", "unit-counit")


# ============= Payload builders =============
def element_payload(a: Element, **extra) -> ElementPayload:
    terms = [TermModel(key=k.render(), coefficient=format_scalar(c)) for k, c in a.items()]
    return ElementPayload(text=render_element(a), terms=terms, **extra)


def tensor_payload(t: Tensor) -> TensorPayload:
    terms = [
        TensorTermModel(factors=[k.render() for k in keys], coefficient=format_scalar(c))
        for keys, c in t.items()
    ]
    return TensorPayload(arity=t.arity, text=render_tensor(t), terms=terms)


def violation_models(report: CheckReport) -> List[ViolationModel]:
    return [
        ViolationModel(check=report.name, key=v.key_label(), description=v.description, category=v.category)
        for v in report.violations
    ]


def check_result(name: str, report: CheckReport) -> CheckResult:
    flags = {}
    if isinstance(report, FiltrationReport):
        flags = {
            "connected": report.connected,
            "counit_compatible": report.counit_compatible,
            "coproduct_compatible": report.coproduct_compatible,
        }
    return CheckResult(
        name=name,
        passed=report.passed,
        checked_degree_bound=report.checked_degree_bound,
        checked_count=report.checked_count,
        violations=violation_models(report),
        **flags,
    )


class HopfService:
    """
    Service class behind the command router.
    Parses expressions, dispatches to the core library and shapes the results.
    """

    def __init__(self, settings: Optional[Settings] = None):
        self.logger = logging.getLogger(__name__)
        self.instance_manager = instance_manager
        self.settings = settings or Settings()

    def instance(self, name: str) -> BialgebraInstance:
        return self.instance_manager.get_instance(
            name, alphabet_size=self.settings.alphabet_size, max_weight=self.settings.max_weight
        )

    def _document(self, inst: BialgebraInstance, command: str, arguments: Dict[str, str], result,
                  violations: Optional[List[ViolationModel]] = None,
                  max_degree: Optional[int] = None) -> ReportDocument:
        return ReportDocument(
            instance=inst.name,
            command=command,
            arguments=arguments,
            max_degree=self.settings.max_degree if max_degree is None else max_degree,
            result=result,
            violations=violations or [],
            version=__version__,
        )

    # ============= antipode =============
    def antipode(self, name: str, expression: str, algorithm: str = SERIES, show_terms: bool = False) -> ReportDocument:
        """
        Antipode of an element.

        Args:
            name: Instance name
            expression: Element in the instance's expression syntax
            algorithm: series, rec-left, rec-right, or all (adds the triangular oracle and an agreement flag)
            show_terms: Include the summands of the series formula
        """
        inst = self.instance(name)
        a = parse_expression(expression, inst)
        self.logger.info(f"antipode[{algorithm}] of {render_element(a)} in {inst.name}")

        extra = {}
        if algorithm == "all":
            values = {algo: inst.antipode_map(algo)(a) for algo in ANTIPODE_ALGORITHMS}
            # unknowns: the coproduct closure of the support of a
            table = antipode_triangular(inst, self.settings.max_degree, keys=a.terms)
            oracle = EndoMap.from_table("S[triangular]", table)
            values["triangular"] = oracle(a)
            value = values[SERIES]
            extra["algorithms"] = {algo: render_element(v) for algo, v in values.items()}
            extra["agreement"] = all(v == value for v in values.values())
        else:
            value = inst.antipode_map(algorithm)(a)
        if show_terms:
            extra["series_terms"] = [render_element(t) for t in inst.antipode_series_terms(a)]

        arguments = {"expression": expression, "algorithm": algorithm}
        return self._document(inst, "antipode", arguments, element_payload(value, **extra))

    # ============= coproduct =============
    def coproduct(self, name: str, expression: str, reduced: bool = False, iterate: int = 1) -> ReportDocument:
        inst = self.instance(name)
        a = parse_expression(expression, inst)
        cg = inst.coalgebra
        if reduced:
            t = cg.iterated_reduced_coproduct(a, iterate)
        else:
            t = cg.iterated_coproduct(a, iterate)
        arguments = {"expression": expression, "reduced": str(reduced).lower(), "iterate": str(iterate)}
        return self._document(inst, "coproduct", arguments, tensor_payload(t))

    # ============= filtration =============
    def filtration(self, name: str, expression: str) -> ReportDocument:
        """
        Conilpotency index of an element with the Δ̄ⁿ term counts that witness it.

        Raises:
            DegreeError: for the zero element.
        """
        inst = self.instance(name)
        a = parse_expression(expression, inst)
        cg = inst.coalgebra
        index = cg.conilpotency_index(a)
        reduced = cg.project_ker_counit(a)
        witness = [len(cg.iterated_reduced_coproduct(reduced, n)) for n in range(1, index + 1)]
        payload = IndexPayload(
            index=index,
            witness=witness,
            unit_part=format_scalar(cg.counit_extend(a)),
            ker_counit_part=render_element(reduced),
        )
        return self._document(inst, "filtration", {"expression": expression}, payload)

    # ============= verify =============
    def verify(self, name: str, checks: Sequence[str], degree_bound: Optional[int] = None,
               antipode_algorithm: str = SERIES) -> ReportDocument:
        """
        Run axiom checks, concurrently when workers > 1.

        Args:
            name: Instance name
            checks: Check names from CHECK_NAMES, reported in this order
            degree_bound: Defaults to settings.max_degree
            antipode_algorithm: S used by the antipode check
        """
        inst = self.instance(name)
        bound = self.settings.max_degree if degree_bound is None else degree_bound
        unknown = [c for c in checks if c not in CHECKS]
        if unknown:
            raise HopfCalcError(f"unknown checks: {', '.join(unknown)}")
        self.logger.info(f"Verifying {', '.join(checks)} on {inst.name} up to degree {bound}")

        def run(check: str) -> CheckReport:
            try:
                report = CHECKS[check](inst, bound, antipode_algorithm)
            except Exception:
                self.logger.exception(f"Check {check} failed to run")
                raise
            self.logger.info(
                f"{check}: {'pass' if report.passed else 'FAIL'} "
                f"({report.checked_count} checked, {len(report.violations)} violations)"
            )
            return report

        with ThreadPoolExecutor(max_workers=self.settings.workers) as executor:
            reports = list(executor.map(run, checks))

        results = [check_result(check, report) for check, report in zip(checks, reports)]
        violations = [v for result in results for v in result.violations]
        payload = ReportPayload(passed=all(r.passed for r in results), checks=results)
        arguments = {"checks": ",".join(checks), "antipode_algorithm": antipode_algorithm}
        return self._document(inst, "verify", arguments, payload, violations, max_degree=bound)

    # ============= basis =============
    def basis(self, name: str, degree_bound: Optional[int] = None) -> ReportDocument:
        inst = self.instance(name)
        bound = self.settings.max_degree if degree_bound is None else degree_bound
        cg = inst.coalgebra
        entries = [
            BasisEntry(key=k.render(), degree=cg.degree_map(k), counit=format_scalar(cg.counit_extend(Element.basis(k))))
            for k in enumerate_basis(inst, bound)
        ]
        payload = BasisPayload(count=len(entries), entries=entries)
        return self._document(inst, "basis", {}, payload, max_degree=bound)

    # ============= convolve =============
    def convolve(self, name: str, expression: str, left: str, right: str,
                 antipode_algorithm: str = SERIES) -> ReportDocument:
        """(left∗right)(a) for left, right in {id, antipode, unit-counit}."""
        inst = self.instance(name)
        a = parse_expression(expression, inst)
        maps = {
            "id": inst.identity_map,
            "antipode": lambda: inst.antipode_map(antipode_algorithm),
            "unit-counit": inst.unit_counit_map,
        }
        for operand in (left, right):
            if operand not in maps:
                raise HopfCalcError(f"unknown convolution operand {operand!r}")
        value = inst.convolve(maps[left](), maps[right](), a)
        arguments = {"expression": expression, "left": left, "right": right}
        return self._document(inst, "convolve", arguments, element_payload(value))
