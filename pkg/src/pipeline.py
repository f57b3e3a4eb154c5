# src/pipeline.py — end-to-end nefness certificates for symmetric divisors
"""certify() checks F-nefness, certifies every strict stratum by feasibility, and in
all-partitions mode extends to every stratum by ascent. verify() audits a finished
certificate from the divisor alone and never reuses producer state.

An F-nef L whose strict strata are all effective boundary is stratally effective
boundary, hence nef. Partitions of length <= 2 carry no moduli and are recorded as
degenerate entries so coverage can be checked mechanically.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Tuple, Union

from .ascent import (
    PROVENANCE_ASCENT,
    PROVENANCE_DEGENERATE,
    PROVENANCE_FEASIBILITY,
    PartitionCertificate,
    StrictBaseInfeasible,
    certify_partition,
)
from .combinatorics import (
    MERGE_POLICY,
    FQuad,
    Partition,
    max_strict_length,
    partitions_of,
    path_endpoint,
    reduction_path,
)
from .divisor_model import SymmetricDivisor, f_from_symmetric, is_fnef
from .effective_boundary import VerificationTooLarge, WeightCertificate, verify_certificate
from .pullback import pullback

logger = logging.getLogger(__name__)

TOOL_NAME = "symfnef"
TOOL_VERSION = "0.1.0"

MODE_STRICT = "strict-only"
MODE_ALL = "all-partitions"
MODE_ALIASES = {"strict": MODE_STRICT, "all": MODE_ALL, MODE_STRICT: MODE_STRICT, MODE_ALL: MODE_ALL}

STAGE_FNEF = "f-nef"
STAGE_STRICT_BASE = "strict-base"


def policy_metadata() -> Dict[str, str]:
    """Identifiers an auditor needs to re-derive reduction paths and marker numbering."""
    return {
        "tool": TOOL_NAME,
        "version": TOOL_VERSION,
        "merge_policy": MERGE_POLICY,
        "marker_order": "parts-decreasing",
        "lp_pivot_rule": "bland",
        "ascent_symmetrization": "stabilizer-average",
    }


def normalize_mode(mode: str) -> str:
    try:
        return MODE_ALIASES[mode]
    except KeyError:
        raise ValueError(f"unknown mode {mode!r}; use 'strict' or 'all'") from None


@dataclass(frozen=True)
class NefCertificate:
    divisor: SymmetricDivisor
    mode: str
    entries: Tuple[PartitionCertificate, ...]
    metadata: Mapping[str, str] = field(default_factory=policy_metadata)

    def entry_for(self, partition: Partition) -> Optional[PartitionCertificate]:
        return next((e for e in self.entries if e.partition == partition), None)

    def summary(self) -> Dict[str, object]:
        by_length: Dict[int, int] = {}
        for e in self.entries:
            by_length[e.partition.length] = by_length.get(e.partition.length, 0) + 1
        if self.mode == MODE_ALL:
            conclusion = "stratally effective boundary, hence nef"
        else:
            conclusion = "every strict stratum is effective boundary (main theorem hypothesis met)"
        return {
            "n": self.divisor.n,
            "mode": self.mode,
            "entries": len(self.entries),
            "entries_by_length": {str(k): v for k, v in sorted(by_length.items())},
            "max_strict_length": max_strict_length(self.divisor.n),
            "conclusion": conclusion,
        }


@dataclass(frozen=True)
class CertifyFailure:
    stage: str
    divisor: SymmetricDivisor
    message: str
    witness: Optional[FQuad] = None
    partitions: Tuple[Partition, ...] = ()


CertifyOutcome = Union[NefCertificate, CertifyFailure]


def certify(divisor: SymmetricDivisor, mode: str = MODE_STRICT, exhaustive: bool = False) -> CertifyOutcome:
    """Build a nefness certificate, or report the first failure in enumeration order.

    exhaustive=True reports every failing partition instead of the first.
    """
    mode = normalize_mode(mode)
    fnef = is_fnef(divisor)
    if not fnef.ok:
        return CertifyFailure(
            stage=STAGE_FNEF,
            divisor=divisor,
            message=f"F-inequality {fnef.witness} is negative ({fnef.value})",
            witness=fnef.witness,
        )
    logger.info("n=%d is F-nef; certifying %s", divisor.n, mode)

    f = f_from_symmetric(divisor)
    n = divisor.n
    cache: Dict[Partition, WeightCertificate] = {}
    done: Dict[Partition, PartitionCertificate] = {}
    failed: List[Partition] = []

    strict = partitions_of(n, "strict")
    for lam in strict:
        try:
            done[lam] = certify_partition(f, lam, cache)
        except StrictBaseInfeasible:
            failed.append(lam)
            if not exhaustive:
                break

    if mode == MODE_STRICT:
        targets = strict
    else:
        targets = partitions_of(n, "all")
        if not failed or exhaustive:
            bad_bases = set(failed)
            # increasing length, so every merged partition is certified before its refinements
            for lam in sorted(targets, key=lambda p: p.length):
                if lam in done:
                    continue
                if path_endpoint(lam) in bad_bases:
                    failed.append(lam)
                    continue
                done[lam] = certify_partition(f, lam, cache)
                if lam.length >= 3 and len(done) % 1000 == 0:
                    logger.info("n=%d: %d of %d partitions certified", n, len(done), len(targets))

    if failed:
        order = {lam: idx for idx, lam in enumerate(targets)}
        failed = sorted(set(failed), key=lambda p: order.get(p, len(order)))
        first = failed[0]
        logger.warning("n=%d: %d partition(s) without certificate, first (%s)", n, len(failed), first)
        return CertifyFailure(
            stage=STAGE_STRICT_BASE,
            divisor=divisor,
            message=f"strict base infeasible for ({first})",
            partitions=tuple(failed),
        )

    entries = tuple(done[lam] for lam in targets)
    return NefCertificate(divisor=divisor, mode=mode, entries=entries, metadata=policy_metadata())


@dataclass(frozen=True)
class Discrepancy:
    kind: str
    detail: str
    partition: Optional[Partition] = None


@dataclass(frozen=True)
class AuditReport:
    ok: bool
    discrepancy: Optional[Discrepancy] = None
    entries_checked: int = 0


def _fail(kind: str, detail: str, partition: Optional[Partition] = None, checked: int = 0) -> AuditReport:
    return AuditReport(ok=False, discrepancy=Discrepancy(kind, detail, partition), entries_checked=checked)


def verify(cert: NefCertificate) -> AuditReport:
    """Independent audit: recompute coverage, pullbacks and every constraint."""
    divisor = cert.divisor
    n = divisor.n
    if n < 4:
        return _fail("structure", f"n={n} has no F-curves to certify against")
    if cert.mode not in (MODE_STRICT, MODE_ALL):
        return _fail("structure", f"unknown mode {cert.mode!r}")
    policy = cert.metadata.get("merge_policy")
    if policy != MERGE_POLICY:
        return _fail("policy", f"certificate uses merge policy {policy!r}; auditor knows {MERGE_POLICY!r}")

    fnef = is_fnef(divisor)
    if not fnef.ok:
        return _fail("f-nef", f"divisor fails the F-inequality at {fnef.witness}")

    expected = partitions_of(n, "strict" if cert.mode == MODE_STRICT else "all")
    listed = [e.partition for e in cert.entries]
    seen = set()
    for lam in listed:
        if lam in seen:
            return _fail("coverage", f"({lam}) is listed twice", lam)
        seen.add(lam)
    missing = [lam for lam in expected if lam not in seen]
    if missing:
        return _fail("coverage", f"({missing[0]}) has no entry", missing[0])
    extra = [lam for lam in listed if lam not in set(expected)]
    if extra:
        return _fail("coverage", f"({extra[0]}) does not belong in a {cert.mode} certificate", extra[0])
    if listed != expected:
        return _fail("order", "entries are not in canonical partition order")

    f = f_from_symmetric(divisor)
    checked = 0
    for entry in cert.entries:
        lam = entry.partition
        if lam.length <= 2:
            if entry.certificate is not None or entry.provenance != PROVENANCE_DEGENERATE:
                return _fail("provenance", f"({lam}) carries no moduli and must be degenerate", lam, checked)
            checked += 1
            continue
        if entry.certificate is None:
            return _fail("missing-certificate", f"({lam}) has no weight certificate", lam, checked)
        wanted = PROVENANCE_FEASIBILITY if lam.is_strict else PROVENANCE_ASCENT
        if entry.provenance != wanted:
            return _fail("provenance", f"({lam}) is recorded as {entry.provenance}, expected {wanted}", lam, checked)
        if entry.provenance == PROVENANCE_ASCENT and tuple(entry.path) != tuple(reduction_path(lam)):
            return _fail("provenance", f"({lam}) records a merge path the policy does not produce", lam, checked)
        if entry.certificate.m != lam.length:
            return _fail("dimension", f"({lam}) needs a certificate on m={lam.length}", lam, checked)
        try:
            report = verify_certificate(pullback(f, lam), entry.certificate)  # type: ignore[arg-type]
        except VerificationTooLarge as exc:
            return _fail("unverifiable", str(exc), lam, checked)
        if not report.ok:
            v = report.violations[0]
            kind = "equality" if v.equality else "inequality"
            return _fail(
                "constraint",
                f"({lam}) fails the {kind} at split {v.split.key}: cut {v.cut} vs b {v.b}",
                lam,
                checked,
            )
        checked += 1

    return AuditReport(ok=True, entries_checked=checked)


def conjecture_bound(k: int) -> int:
    """Largest n covered once the strong F-conjecture is known for all m <= k."""
    if k < 3:
        raise ValueError(f"k must be at least 3, got {k}")
    return (k + 1) * (k + 2) // 2 - 1
