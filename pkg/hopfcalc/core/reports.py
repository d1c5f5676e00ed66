"""
Result types returned by the axiom checkers. Violations are data, never exceptions.
"""
from dataclasses import dataclass, field
from typing import Any, List, Optional, Tuple

from .freemod import BasisKey


@dataclass(frozen=True)
class Violation:
    key: Any  # a BasisKey, or a tuple of keys for checks over pairs
    description: str
    category: str = "axiom"

    def key_label(self) -> str:
        if isinstance(self.key, BasisKey):
            return self.key.render()
        if isinstance(self.key, tuple):
            return ", ".join(k.render() for k in self.key)
        return str(self.key)


@dataclass
class CheckReport:
    name: str
    checked_degree_bound: int
    checked_count: int = 0
    violations: List[Violation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def add(self, key: Any, description: str, category: str = "axiom") -> None:
        self.violations.append(Violation(key, description, category))

    def categories(self) -> Tuple[str, ...]:
        return tuple(sorted({v.category for v in self.violations}))


CONNECTED = "connected"
COUNIT = "counit"
COPRODUCT = "coproduct"


@dataclass
class FiltrationReport(CheckReport):
    """
    Report of a grading or filtration check. The three flags are derived
    from the violation categories, so they are all true exactly when the
    violation list is empty.
    """

    @property
    def connected(self) -> bool:
        return not any(v.category == CONNECTED for v in self.violations)

    @property
    def counit_compatible(self) -> bool:
        return not any(v.category == COUNIT for v in self.violations)

    @property
    def coproduct_compatible(self) -> bool:
        return not any(v.category == COPRODUCT for v in self.violations)

    def add(self, key: Any, description: str, category: Optional[str] = None) -> None:
        if category not in (CONNECTED, COUNIT, COPRODUCT):
            raise ValueError(f"filtration violations need a category, got {category!r}")
        super().add(key, description, category)
