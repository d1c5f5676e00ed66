"""
Pydantic models for settings validation and report documents
"""
from typing import Dict, List, Literal, Optional, Union

from pydantic import BaseModel, Field, field_validator


# ============= Settings =============
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class Settings(BaseModel):
    max_degree: int = Field(default=8, ge=0, description="Degree bound for verify and basis")
    format: Literal["text", "json"] = Field(default="text", description="Output format")
    alphabet_size: int = Field(default=2, ge=1, le=26, description="Letters of the word instances")
    max_weight: int = Field(default=3, ge=1, description="Largest letter weight enumerated for quasishuffle")
    workers: int = Field(default=1, ge=1, description="Threads used by verify")
    log_level: str = Field(default="WARNING", description="Logging level on stderr")

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        level = value.upper()
        if level not in LOG_LEVELS:
            raise ValueError(f"log_level must be one of {', '.join(LOG_LEVELS)}")
        return level


# ============= Result Payloads =============
class TermModel(BaseModel):
    key: str
    coefficient: str


class ElementPayload(BaseModel):
    kind: Literal["element"] = "element"
    text: str
    terms: List[TermModel]
    algorithms: Optional[Dict[str, str]] = None
    agreement: Optional[bool] = None
    series_terms: Optional[List[str]] = None


class TensorTermModel(BaseModel):
    factors: List[str]
    coefficient: str


class TensorPayload(BaseModel):
    kind: Literal["tensor"] = "tensor"
    arity: int
    text: str
    terms: List[TensorTermModel]


class IndexPayload(BaseModel):
    kind: Literal["index"] = "index"
    index: int
    witness: List[int] = Field(description="Number of terms of Δ̄¹(π(a)), …, Δ̄ⁿ(π(a))")
    unit_part: str = Field(description="ε(a), the im u component")
    ker_counit_part: str = Field(description="π(a) = a − ε(a)·1")


class ViolationModel(BaseModel):
    check: str
    key: str
    description: str
    category: str


class CheckResult(BaseModel):
    name: str
    passed: bool
    checked_degree_bound: int
    checked_count: int
    # set for the grading and filtration checks only
    connected: Optional[bool] = None
    counit_compatible: Optional[bool] = None
    coproduct_compatible: Optional[bool] = None
    violations: List[ViolationModel]


class ReportPayload(BaseModel):
    kind: Literal["report"] = "report"
    passed: bool
    checks: List[CheckResult]


class BasisEntry(BaseModel):
    key: str
    degree: int
    counit: str


class BasisPayload(BaseModel):
    kind: Literal["basis"] = "basis"
    count: int
    entries: List[BasisEntry]


ResultPayload = Union[ElementPayload, TensorPayload, IndexPayload, ReportPayload, BasisPayload]


# ============= Report Document =============
class ReportDocument(BaseModel):
    instance: str
    command: str
    arguments: Dict[str, str] = Field(default_factory=dict)
    max_degree: int
    result: ResultPayload = Field(discriminator="kind")
    violations: List[ViolationModel] = Field(default_factory=list)
    version: str
