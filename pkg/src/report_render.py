# src/report_render.py - JSON report payloads and boxed text for the CLI
"""Every CLI command builds one payload dict here. --format json dumps it;
--format text draws it as key/value rows inside a box."""

from __future__ import annotations

from typing import Any, Dict, List, Optional, Sequence, Tuple

from .ascent import PartitionCertificate
from .certificate_io import format_rational
from .combinatorics import Partition
from .cone import ConeDescription
from .divisor_model import FNefResult, SymmetricDivisor
from .pipeline import AuditReport, CertifyFailure, NefCertificate

BOX_WIDTH = 72


def clamp_width(text: str, width: int) -> str:
    if width <= 0:
        return ""
    if len(text) <= width:
        return text
    if width == 1:
        return text[:1]
    return text[: width - 1] + "."


def wrap_text(text: str, width: int) -> List[str]:
    if width <= 0:
        return []
    words = text.split()
    if not words:
        return [""]
    lines: List[str] = []
    current = words[0]
    for word in words[1:]:
        if len(current) + 1 + len(word) <= width:
            current = f"{current} {word}"
        else:
            lines.append(current)
            current = word
    lines.append(current)
    return lines


def box(lines: Sequence[str], title: Optional[str] = None, width: int = BOX_WIDTH) -> str:
    """Single-line box; inner width = width - 2."""
    inner = max(10, width - 2)
    content = [clamp_width(w, inner) for line in lines for w in wrap_text(str(line), inner)]
    if title:
        title_text = clamp_width(f" {title} ", inner)
        top = "+" + title_text + "-" * max(0, inner - len(title_text)) + "+"
    else:
        top = "+" + "-" * inner + "+"
    bottom = "+" + "-" * inner + "+"
    body = [f"|{line.ljust(inner)}|" for line in content] or [f"|{' ' * inner}|"]
    return "\n".join([top, *body, bottom])


def key_value_rows(pairs: Sequence[Tuple[str, Any]], key_width: int = 18) -> List[str]:
    return [f"{str(key).ljust(key_width)} {value}" for key, value in pairs]


def _divisor_text(divisor: SymmetricDivisor) -> str:
    return ", ".join(f"c{i}={format_rational(c)}" for i, c in divisor.as_mapping().items())


def fnef_payload(divisor: SymmetricDivisor, result: FNefResult) -> Dict[str, Any]:
    return {
        "command": "check-fnef",
        "n": divisor.n,
        "ok": result.ok,
        "witness": list(result.witness.quad) if result.witness else None,
        "value": format_rational(result.value) if result.value is not None else None,
    }


def _entry_row(entry: PartitionCertificate) -> Dict[str, Any]:
    return {
        "partition": list(entry.partition.parts),
        "provenance": entry.provenance,
        "base": list(entry.base.parts) if entry.base is not None else None,
    }


def certify_payload(outcome: Any) -> Dict[str, Any]:
    if isinstance(outcome, CertifyFailure):
        return {
            "command": "certify",
            "ok": False,
            "n": outcome.divisor.n,
            "stage": outcome.stage,
            "message": outcome.message,
            "witness": list(outcome.witness.quad) if outcome.witness else None,
            "partitions": [list(p.parts) for p in outcome.partitions],
        }
    assert isinstance(outcome, NefCertificate)
    payload: Dict[str, Any] = {"command": "certify", "ok": True}
    payload.update(outcome.summary())
    return payload


def audit_payload(cert: NefCertificate, report: AuditReport) -> Dict[str, Any]:
    d = report.discrepancy
    return {
        "command": "verify",
        "ok": report.ok,
        "n": cert.divisor.n,
        "mode": cert.mode,
        "entries_checked": report.entries_checked,
        "discrepancy": None
        if d is None
        else {
            "kind": d.kind,
            "detail": d.detail,
            "partition": list(d.partition.parts) if d.partition else None,
        },
    }


def rays_report_payload(cone: ConeDescription) -> Dict[str, Any]:
    return {
        "command": "rays",
        "n": cone.n,
        "dim": cone.dim,
        "facets": len(cone.facets),
        "rays": [list(r) for r in cone.rays or ()],
    }


def pullback_payload(partition: Partition, table: Optional[Dict[str, str]],
                     effective: Optional[bool] = None) -> Dict[str, Any]:
    payload: Dict[str, Any] = {
        "command": "pullback",
        "partition": list(partition.parts),
        "degenerate": table is None,
        "b": table,
    }
    if effective is not None:
        payload["effective_boundary"] = effective
    return payload


def render_text(payload: Dict[str, Any], divisor: Optional[SymmetricDivisor] = None) -> str:
    command = payload.get("command", "report")
    rows: List[Tuple[str, Any]] = []
    if divisor is not None:
        rows.append(("divisor", f"n={divisor.n}: {_divisor_text(divisor)}"))
    for key, value in payload.items():
        if key == "command" or value is None:
            continue
        if isinstance(value, dict):
            if not value:
                continue
            value = ", ".join(f"{k}: {v}" for k, v in value.items())
        elif isinstance(value, list):
            value = " ".join(
                "(" + ",".join(str(x) for x in item) + ")" if isinstance(item, list) else str(item)
                for item in value
            )
        rows.append((key, value))
    status = "OK" if payload.get("ok", True) else "FAILED"
    return box(key_value_rows(rows), title=f"{command}: {status}")
