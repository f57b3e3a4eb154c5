# src/ascent.py — lifting weight certificates from a merged partition back to a refinement
"""Ascent of effectivity.

Given lambda with two equal parts a at markers p, q and mu = lambda with that pair
merged into 2a, a certificate w~ for b_mu^* L lifts to a certificate w for
b_lambda^* L:

    w(i, j) = w~(i, j)          away from the merged pair
    w(p, j) = w(q, j) = w~(M, j) / 2   (M = the merged marker of mu)
    w(p, q) = f(a) - f(2a) / 2

Splits keeping p and q together inherit the mu constraint (case 1), the two
singletons {p}, {q} hold with equality by construction (case 2), and splits
separating p from q hold because L . F(A, B, a, a) >= 0 (case 3).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, MutableMapping, Optional, Tuple

from .combinatorics import (
    FQuad,
    Partition,
    TwoPartSplit,
    merge_equal_pair,
    reduction_path,
    subset_sums,
    two_part_splits,
)
from .divisor_model import FFunction, cut_value, f_inequality_value, pairs
from .effective_boundary import (
    Violation,
    WeightCertificate,
    find_certificate,
    symmetrize,
    verify_certificate,
)
from .pullback import pullback

logger = logging.getLogger(__name__)

PROVENANCE_FEASIBILITY = "feasibility"
PROVENANCE_ASCENT = "ascent-chain"
PROVENANCE_DEGENERATE = "degenerate"


class AscentPreconditionError(ValueError):
    """w~ does not certify mu, or an F-inequality the lift relies on fails."""

    def __init__(self, message: str, *, quad: Optional[FQuad] = None,
                 violation: Optional[Violation] = None) -> None:
        super().__init__(message)
        self.quad = quad
        self.violation = violation


class StrictBaseInfeasible(ValueError):
    """The strict end of a reduction path has no weight certificate."""

    def __init__(self, base: Partition) -> None:
        super().__init__(f"strict base infeasible: ({base})")
        self.base = base


@dataclass(frozen=True)
class AscentStep:
    partition: Partition
    p: int
    q: int
    mu: Partition
    merged: int
    # mu marker j (1-based) corresponds to lambda marker correspondence[j - 1];
    # the merged marker maps to p
    correspondence: Tuple[int, ...]

    @property
    def value(self) -> int:
        return self.partition.parts[self.p - 1]

    @classmethod
    def for_merge(cls, partition: Partition, value: int) -> "AscentStep":
        positions = [t for t, v in enumerate(partition.parts, 1) if v == value]
        if len(positions) < 2:
            raise ValueError(f"value {value} occurs fewer than twice in ({partition})")
        p, q = positions[0], positions[1]
        rest = [t for t in range(1, partition.length + 1) if t not in (p, q)]
        # merged part goes first among equal values of mu
        merged = sum(1 for t in rest if partition.parts[t - 1] > 2 * value) + 1
        correspondence = tuple(rest[: merged - 1]) + (p,) + tuple(rest[merged - 1:])
        mu = merge_equal_pair(partition, value)
        return cls(partition=partition, p=p, q=q, mu=mu, merged=merged, correspondence=correspondence)

    def mu_marker(self, lam_marker: int) -> int:
        """The mu marker a lambda marker collapses to (p and q both go to the merged one)."""
        if lam_marker == self.q:
            return self.merged
        return self.correspondence.index(lam_marker) + 1

    def case3_sums(self) -> List[int]:
        """Achievable A = sum over I' for splits I' | J' of the other k - 2 markers."""
        others = [v for t, v in enumerate(self.partition.parts, 1) if t not in (self.p, self.q)]
        return subset_sums(others)


def _check_input(f: FFunction, step: AscentStep, w_tilde: WeightCertificate) -> None:
    mu = step.mu
    if w_tilde.m != mu.length:
        raise AscentPreconditionError(
            f"w~ lives on m={w_tilde.m} but ({mu}) has {mu.length} markers"
        )
    if mu.length == 2:
        if w_tilde.value(1, 2) != f(mu.parts[0]):
            raise AscentPreconditionError(
                f"seed w~(1,2) = {w_tilde.value(1, 2)} differs from f({mu.parts[0]}) = {f(mu.parts[0])}"
            )
        return
    expression = pullback(f, mu)
    report = verify_certificate(expression, w_tilde)  # type: ignore[arg-type]
    if not report.ok:
        first = report.violations[0]
        raise AscentPreconditionError(
            f"w~ does not certify ({mu}): split {first.split.key} has margin {first.margin}",
            violation=first,
        )


def _check_f_inequalities(f: FFunction, step: AscentStep) -> None:
    a = step.value
    n = step.partition.n
    for A in step.case3_sums():
        quad = FQuad.of((A, n - 2 * a - A, a, a))
        if f_inequality_value(f, quad) < 0:
            raise AscentPreconditionError(
                f"F-inequality fails at {quad}; cannot lift to ({step.partition})", quad=quad
            )


def ascend(f: FFunction, step: AscentStep, w_tilde: WeightCertificate) -> WeightCertificate:
    """Lift a certificate for mu to one for lambda."""
    if step.partition.n != f.n:
        raise ValueError(f"({step.partition}) is not a partition of {f.n}")
    _check_input(f, step, w_tilde)
    _check_f_inequalities(f, step)

    a = step.value
    k = step.partition.length
    w: Dict[Tuple[int, int], Fraction] = {}
    for i, j in pairs(k):
        merged_i = i in (step.p, step.q)
        merged_j = j in (step.p, step.q)
        if merged_i and merged_j:
            w[(i, j)] = f(a) - f(2 * a) / 2
        elif merged_i or merged_j:
            w[(i, j)] = w_tilde.value(step.mu_marker(i), step.mu_marker(j)) / 2
        else:
            w[(i, j)] = w_tilde.value(step.mu_marker(i), step.mu_marker(j))
    return WeightCertificate(m=k, w=w)


@dataclass(frozen=True)
class SplitCase:
    split: TwoPartSplit
    case: int
    margin: Fraction
    # Case 3 only: half the F-inequality value the margin is bounded by
    bound: Optional[Fraction] = None


def case_margins(f: FFunction, step: AscentStep, w: WeightCertificate) -> List[SplitCase]:
    """Classify every split of lambda by the three cases and report its margin."""
    lam = step.partition
    k = lam.length
    a = step.value
    out: List[SplitCase] = []
    for split in two_part_splits(k):
        b = f(sum(lam.parts[t - 1] for t in split.side))
        margin = cut_value(w.w, split.side, k) - b
        together = (step.p in split.side) == (step.q in split.side)
        if together:
            out.append(SplitCase(split, 1, margin))
        elif len(split.side) == 1 or len(split.complement) == 1:
            out.append(SplitCase(split, 2, margin))
        else:
            with_p = split.side if step.p in split.side else split.complement
            A = sum(lam.parts[t - 1] for t in with_p if t != step.p)
            B = lam.n - 2 * a - A
            bound = f_inequality_value(f, FQuad.of((A, B, a, a))) / 2
            out.append(SplitCase(split, 3, margin, bound))
    return out


@dataclass(frozen=True)
class PartitionCertificate:
    partition: Partition
    certificate: Optional[WeightCertificate]
    provenance: str
    path: Tuple[Tuple[Partition, int], ...] = ()
    base: Optional[Partition] = None
    base_provenance: Optional[str] = None


def seed_certificate(f: FFunction, partition: Partition) -> WeightCertificate:
    """The two-marker seed w(1,2) = f(lambda_1) that starts ascents through short strata."""
    if partition.length != 2:
        raise ValueError(f"seeds exist for length-2 partitions only, got ({partition})")
    return WeightCertificate(m=2, w={(1, 2): f(partition.parts[0])})


def certify_partition(
    f: FFunction,
    partition: Partition,
    cache: Optional[MutableMapping[Partition, WeightCertificate]] = None,
) -> PartitionCertificate:
    """Certificate for b_lambda^* L: direct for strict lambda, otherwise by ascent.

    cache maps already-certified partitions to their (verified) certificates; the
    ascent chain starts from the first cached partition on the reduction path.
    """
    if partition.length <= 2:
        return PartitionCertificate(partition, None, PROVENANCE_DEGENERATE)

    path = reduction_path(partition)
    if not path:
        cert = cache.get(partition) if cache is not None else None
        if cert is None:
            cert = find_certificate(pullback(f, partition))  # type: ignore[arg-type]
            if cert is None:
                logger.warning("no weight certificate for strict (%s)", partition)
                raise StrictBaseInfeasible(partition)
        if cache is not None:
            cache[partition] = cert
        return PartitionCertificate(partition, cert, PROVENANCE_FEASIBILITY, base=partition,
                                    base_provenance=PROVENANCE_FEASIBILITY)

    chain = [step_partition for step_partition, _ in path]
    endpoint = merge_equal_pair(*path[-1])
    chain.append(endpoint)

    start: Optional[int] = None
    w: Optional[WeightCertificate] = None
    if cache is not None:
        for idx in range(1, len(chain)):
            if chain[idx] in cache:
                start, w = idx, cache[chain[idx]]
                break

    if w is None:
        if endpoint.length >= 3:
            start = len(chain) - 1
            w = find_certificate(pullback(f, endpoint))  # type: ignore[arg-type]
            if w is None:
                logger.warning("no weight certificate for strict base (%s) of (%s)", endpoint, partition)
                raise StrictBaseInfeasible(endpoint)
            if cache is not None:
                cache[endpoint] = w
        else:
            start = next(idx for idx, lam in enumerate(chain) if lam.length == 2)
            w = seed_certificate(f, chain[start])
    assert start is not None

    base = chain[start]
    if base.length <= 2:
        base_provenance = PROVENANCE_DEGENERATE
    elif base.is_strict:
        base_provenance = PROVENANCE_FEASIBILITY
    else:
        base_provenance = PROVENANCE_ASCENT

    for idx in range(start - 1, -1, -1):
        lam, value = path[idx]
        w = symmetrize(ascend(f, AscentStep.for_merge(lam, value), w), lam.parts)
        if cache is not None and lam.length >= 3:
            cache[lam] = w
    logger.debug("(%s) certified by %d ascent steps from (%s)", partition, start, base)

    final = verify_certificate(pullback(f, partition), w)  # type: ignore[arg-type]
    if not final.ok:
        raise RuntimeError(
            f"ascended certificate for ({partition}) fails at split "
            f"{final.violations[0].split.key}; the ascent construction is broken"
        )
    return PartitionCertificate(
        partition=partition,
        certificate=w,
        provenance=PROVENANCE_ASCENT,
        path=tuple(path),
        base=base,
        base_provenance=base_provenance,
    )
