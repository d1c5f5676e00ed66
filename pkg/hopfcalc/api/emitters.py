"""
Text and JSON renderings of a ReportDocument. Both are byte-deterministic.
"""
import json
from typing import List

from ..models.schemas import (
    BasisPayload,
    ElementPayload,
    IndexPayload,
    ReportDocument,
    ReportPayload,
    TensorPayload,
)


def emit_json(document: ReportDocument) -> str:
    return json.dumps(document.model_dump(mode="json", exclude_none=True), indent=2, ensure_ascii=False) + "\n"


def _bool(value: bool) -> str:
    return "true" if value else "false"


def _result_lines(result) -> List[str]:
    if isinstance(result, ElementPayload):
        lines = [f"value: {result.text}"]
        for algorithm, text in (result.algorithms or {}).items():
            lines.append(f"algorithm[{algorithm}]: {text}")
        if result.agreement is not None:
            lines.append(f"agreement: {_bool(result.agreement)}")
        for i, text in enumerate(result.series_terms or [], start=1):
            lines.append(f"series_term[{i}]: {text}")
        return lines
    if isinstance(result, TensorPayload):
        return [f"arity: {result.arity}", f"value: {result.text}"]
    if isinstance(result, IndexPayload):
        return [
            f"index: {result.index}",
            f"witness: {', '.join(str(n) for n in result.witness) or '-'}",
            f"unit_part: {result.unit_part}",
            f"ker_counit_part: {result.ker_counit_part}",
        ]
    if isinstance(result, ReportPayload):
        lines = []
        for check in result.checks:
            status = "pass" if check.passed else "FAIL"
            lines.append(f"check[{check.name}]: {status} ({check.checked_count} checked)")
            for v in check.violations:
                lines.append(f"  violation[{v.category}]: {v.key}: {v.description}")
        lines.append(f"passed: {_bool(result.passed)}")
        return lines
    if isinstance(result, BasisPayload):
        lines = [f"count: {result.count}"]
        lines.extend(f"basis: {e.key} (degree {e.degree}, counit {e.counit})" for e in result.entries)
        return lines
    raise TypeError(f"no text rendering for {type(result).__name__}")


def emit_text(document: ReportDocument) -> str:
    lines = [f"instance: {document.instance}", f"command: {document.command}"]
    lines.extend(f"{key}: {value}" for key, value in document.arguments.items())
    lines.append(f"max_degree: {document.max_degree}")
    lines.extend(_result_lines(document.result))
    lines.append(f"version: {document.version}")
    return "\n".join(lines) + "\n"


def emit(document: ReportDocument, output_format: str) -> str:
    return emit_json(document) if output_format == "json" else emit_text(document)
