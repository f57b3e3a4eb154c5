# src/certificate_io.py — JSON file formats for divisors, certificates and ray tables
"""Schema-validated parsing and deterministic emission.

Rationals travel as "p/q" strings and are always re-emitted in lowest terms with a
positive denominator. Emission sorts keys and ends with a newline, so equal values
give byte-identical files. Unknown fields and unknown schema versions are rejected.
"""

from __future__ import annotations

import json
import logging
import re
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, ValidationError, field_validator

from .ascent import PROVENANCE_ASCENT, PROVENANCE_DEGENERATE, PROVENANCE_FEASIBILITY, PartitionCertificate
from .combinatorics import Partition
from .cone import ConeDescription
from .divisor_model import SymmetricDivisor, basis_indices
from .effective_boundary import WeightCertificate
from .pipeline import MODE_ALL, MODE_STRICT, NefCertificate

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
DEGENERATE = "degenerate"

_PROVENANCES = (PROVENANCE_FEASIBILITY, PROVENANCE_ASCENT, PROVENANCE_DEGENERATE)
_RATIONAL = re.compile(r"-?\d+(/\d+)?")


class InputError(ValueError):
    """Bad input file. field is a dotted path into the document ("" for the whole file)."""

    def __init__(self, message: str, field: str = "", line: Optional[int] = None,
                 column: Optional[int] = None) -> None:
        where = f" [{field}]" if field else ""
        super().__init__(f"{message}{where}")
        self.field = field
        self.line = line
        self.column = column


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str, field: str) -> Fraction:
    """Integers or "p/q" only; no decimals, exponents or surrounding blanks."""
    if not _RATIONAL.fullmatch(text):
        raise InputError(f"bad rational {text!r}; expected \"p/q\" or an integer", field=field)
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational {text!r}", field=field) from exc


def _check_version(value: int) -> int:
    if value != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema version {value}; this tool reads version {SCHEMA_VERSION}")
    return value


class DivisorFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    schema_version: int = SCHEMA_VERSION
    n: int
    coeffs: Dict[str, str] = {}

    @field_validator("schema_version")
    @classmethod
    def known_version(cls, value: int) -> int:
        return _check_version(value)


class PathStep(BaseModel):
    model_config = ConfigDict(extra="forbid")

    partition: List[int]
    merged: int


class PairWeight(BaseModel):
    model_config = ConfigDict(extra="forbid")

    pair: Tuple[int, int]
    value: str


class EntryFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    partition: List[int]
    m: int
    # "degenerate", or one {"pair": [i, j], "value": "p/q"} per i < j, sorted by pair
    w: Union[str, List[PairWeight]]
    provenance: str
    path: List[PathStep] = []
    base: Optional[List[int]] = None
    base_provenance: Optional[str] = None

    @field_validator("provenance")
    @classmethod
    def known_provenance(cls, value: str) -> str:
        if value not in _PROVENANCES:
            raise ValueError(f"unknown provenance {value!r}")
        return value


class CertificateFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    schema_version: int
    divisor: DivisorFile
    mode: str
    metadata: Dict[str, str]
    entries: List[EntryFile]

    @field_validator("schema_version")
    @classmethod
    def known_version(cls, value: int) -> int:
        return _check_version(value)

    @field_validator("mode")
    @classmethod
    def known_mode(cls, value: str) -> str:
        if value not in (MODE_STRICT, MODE_ALL):
            raise ValueError(f"unknown mode {value!r}")
        return value


class RaysFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    schema_version: int = SCHEMA_VERSION
    n: int
    dim: int
    facets: List[List[int]]
    multiplicities: List[int]
    rays: List[List[int]]

    @field_validator("schema_version")
    @classmethod
    def known_version(cls, value: int) -> int:
        return _check_version(value)


def dump_json(payload: Any) -> bytes:
    return (json.dumps(payload, sort_keys=True, indent=2) + "\n").encode("utf-8")


def _load_json(data: Union[bytes, str]) -> Any:
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(
            f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}",
            line=exc.lineno,
            column=exc.colno,
        ) from exc


def _validate(model: type, raw: Any, prefix: str = "") -> Any:
    try:
        return model.model_validate(raw)  # type: ignore[attr-defined]
    except ValidationError as exc:
        first = exc.errors()[0]
        path = ".".join(str(part) for part in first.get("loc", ()))
        field = ".".join(p for p in (prefix, path) if p)
        raise InputError(first.get("msg", "invalid value"), field=field) from exc


def _divisor_from_model(model: DivisorFile, prefix: str = "") -> SymmetricDivisor:
    def at(name: str) -> str:
        return f"{prefix}.{name}" if prefix else name

    n = model.n
    if n < 4:
        raise InputError(f"n must be at least 4, got {n}", field=at("n"))
    allowed = basis_indices(n)
    coeffs: Dict[int, Fraction] = {}
    for key, text in model.coeffs.items():
        field = at(f"coeffs.{key}")
        try:
            index = int(key)
        except ValueError as exc:
            raise InputError(f"coefficient key {key!r} is not an integer", field=field) from exc
        if index not in allowed:
            raise InputError(
                f"coefficient key {index} out of range 2..{n // 2} (floor({n}/2) = {n // 2})", field=field
            )
        coeffs[index] = parse_rational(text, field)
    return SymmetricDivisor.from_mapping(n, coeffs)


def parse_divisor(data: Union[bytes, str]) -> SymmetricDivisor:
    """{"n": 6, "coeffs": {"2": "1", "3": "3"}}; missing coefficients are 0."""
    model = _validate(DivisorFile, _load_json(data))
    return _divisor_from_model(model)


def divisor_payload(divisor: SymmetricDivisor) -> Dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "n": divisor.n,
        "coeffs": {str(i): format_rational(c) for i, c in divisor.as_mapping().items()},
    }


def emit_divisor(divisor: SymmetricDivisor) -> bytes:
    return dump_json(divisor_payload(divisor))


def weights_payload(cert: WeightCertificate) -> Dict[str, Any]:
    """{"m": 3, "w": [{"pair": [1, 2], "value": "-2/1"}, ...]} with pairs in lexicographic order."""
    return {
        "m": cert.m,
        "w": [{"pair": [i, j], "value": format_rational(v)} for (i, j), v in sorted(cert.w.items())],
    }


def _entry_payload(entry: PartitionCertificate) -> Dict[str, Any]:
    if entry.certificate is None:
        weights: Dict[str, Any] = {"m": entry.partition.length, "w": DEGENERATE}
    else:
        weights = weights_payload(entry.certificate)
    return {
        "partition": list(entry.partition.parts),
        **weights,
        "provenance": entry.provenance,
        "path": [{"partition": list(lam.parts), "merged": value} for lam, value in entry.path],
        "base": list(entry.base.parts) if entry.base is not None else None,
        "base_provenance": entry.base_provenance,
    }


def certificate_payload(cert: NefCertificate) -> Dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "divisor": divisor_payload(cert.divisor),
        "mode": cert.mode,
        "metadata": dict(cert.metadata),
        "entries": [_entry_payload(e) for e in cert.entries],
    }


def emit_certificate(cert: NefCertificate) -> bytes:
    return dump_json(certificate_payload(cert))


def _partition(parts: List[int], field: str) -> Partition:
    try:
        return Partition(n=sum(parts), parts=tuple(parts))
    except ValueError as exc:
        raise InputError(str(exc), field=field) from exc


def _entry_from_model(model: EntryFile, field: str) -> PartitionCertificate:
    lam = _partition(model.partition, f"{field}.partition")
    if model.m != lam.length:
        raise InputError(f"m={model.m} but ({lam}) has {lam.length} markers", field=f"{field}.m")
    if isinstance(model.w, str):
        if model.w != DEGENERATE:
            raise InputError(f"w must be a pair list or {DEGENERATE!r}", field=f"{field}.w")
        cert: Optional[WeightCertificate] = None
    else:
        w: Dict[Tuple[int, int], Fraction] = {}
        previous: Optional[Tuple[int, int]] = None
        for k, item in enumerate(model.w):
            at = f"{field}.w.{k}"
            i, j = item.pair
            if i >= j:
                raise InputError(f"pair ({i}, {j}) must satisfy i < j", field=at)
            if previous is not None and item.pair <= previous:
                raise InputError(f"pair ({i}, {j}) is out of lexicographic order or repeated", field=at)
            previous = item.pair
            w[(i, j)] = parse_rational(item.value, f"{at}.value")
        try:
            cert = WeightCertificate(m=lam.length, w=w)
        except ValueError as exc:
            raise InputError(str(exc), field=f"{field}.w") from exc
    path = []
    for k, step in enumerate(model.path):
        path.append((_partition(step.partition, f"{field}.path.{k}.partition"), step.merged))
    base = _partition(model.base, f"{field}.base") if model.base is not None else None
    return PartitionCertificate(
        partition=lam,
        certificate=cert,
        provenance=model.provenance,
        path=tuple(path),
        base=base,
        base_provenance=model.base_provenance,
    )


def parse_certificate(data: Union[bytes, str]) -> NefCertificate:
    model = _validate(CertificateFile, _load_json(data))
    divisor = _divisor_from_model(model.divisor, prefix="divisor")
    entries = tuple(
        _entry_from_model(entry, f"entries.{k}") for k, entry in enumerate(model.entries)
    )
    logger.debug("parsed certificate for n=%d with %d entries", divisor.n, len(entries))
    return NefCertificate(divisor=divisor, mode=model.mode, entries=entries, metadata=dict(model.metadata))


def rays_payload(cone: ConeDescription) -> Dict[str, Any]:
    return RaysFile(
        n=cone.n,
        dim=cone.dim,
        facets=[list(f) for f in cone.facets],
        multiplicities=list(cone.multiplicities),
        rays=[list(r) for r in cone.rays or ()],
    ).model_dump()


def emit_rays(cone: ConeDescription) -> bytes:
    return dump_json(rays_payload(cone))


def parse_rays(data: Union[bytes, str]) -> ConeDescription:
    model = _validate(RaysFile, _load_json(data))
    try:
        return ConeDescription(
            n=model.n,
            dim=model.dim,
            facets=tuple(tuple(f) for f in model.facets),
            multiplicities=tuple(model.multiplicities),
            rays=tuple(tuple(r) for r in model.rays),
        )
    except ValueError as exc:
        raise InputError(str(exc), field="rays") from exc


def ray_divisors(cone: ConeDescription) -> List[SymmetricDivisor]:
    return [SymmetricDivisor(n=cone.n, coeffs=tuple(Fraction(x) for x in ray)) for ray in cone.rays or ()]
