# src/effective_boundary.py — weight-function certificates for effective boundary classes
"""D = -sum b_{I,J} Delta_{I,J} is an effective boundary iff some w on pairs of [m] has
cut_w(I) >= b_{I,J} on every proper split, with equality on the m non-proper ones.

Diagonal values of w never enter a constraint and are not stored.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import comb, prod
from types import MappingProxyType
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from . import certify_config
from . import fourier_motzkin
from .combinatorics import TwoPartSplit
from .divisor_model import BoundaryExpression, Pair, cut_value, pairs
from .exact_lp import EQ, GE, LinearConstraint, find_feasible_point

logger = logging.getLogger(__name__)


# above this many markers a violating split type is reported once, by a representative
EXPAND_VIOLATIONS_M = 12


class VerificationTooLarge(ValueError):
    """The certificate has too little symmetry for an exhaustive check within budget."""


@dataclass(frozen=True)
class WeightCertificate:
    m: int
    w: Mapping[Pair, Fraction]

    def __post_init__(self) -> None:
        expected = set(pairs(self.m))
        keys = set(self.w)
        if keys != expected:
            extra = sorted(keys - expected)
            missing = sorted(expected - keys)
            raise ValueError(
                f"certificate on m={self.m} must cover exactly the {len(expected)} pairs; "
                f"missing {missing[:3]} extra {extra[:3]}"
            )
        object.__setattr__(
            self, "w", MappingProxyType({p: Fraction(self.w[p]) for p in sorted(expected)})
        )

    def value(self, i: int, j: int) -> Fraction:
        if i == j:
            raise ValueError("diagonal weights are not part of a certificate")
        return self.w[(i, j) if i < j else (j, i)]

    @classmethod
    def zero(cls, m: int) -> "WeightCertificate":
        return cls(m=m, w={p: Fraction(0) for p in pairs(m)})

    def shifted(self, u: Mapping[Pair, object]) -> "WeightCertificate":
        return WeightCertificate(m=self.m, w={p: v + Fraction(u[p]) for p, v in self.w.items()})  # type: ignore[arg-type]

    def scaled(self, factor: Fraction) -> "WeightCertificate":
        return WeightCertificate(m=self.m, w={p: v * factor for p, v in self.w.items()})

    def __hash__(self) -> int:
        return hash((self.m, tuple(self.w.items())))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightCertificate):
            return NotImplemented
        return self.m == other.m and dict(self.w) == dict(other.w)


@dataclass(frozen=True)
class EffectiveCombination:
    m: int
    coeffs: Mapping[TwoPartSplit, Fraction]

    def __post_init__(self) -> None:
        negative = [s.key for s, c in self.coeffs.items() if c < 0]
        if negative:
            raise ValueError(f"effective combination has a negative coefficient at {negative[0]}")
        if any(not s.proper for s in self.coeffs):
            raise ValueError("effective combinations only use proper boundary divisors")


@dataclass(frozen=True)
class Violation:
    split: TwoPartSplit
    equality: bool
    cut: Fraction
    b: Fraction
    # splits sharing this type; 1 once types are expanded
    splits: int = 1

    @property
    def margin(self) -> Fraction:
        return self.cut - self.b

    @property
    def singleton(self) -> Optional[int]:
        """The isolated marker of a non-proper split."""
        if len(self.split.side) == 1:
            return next(iter(self.split.side))
        if len(self.split.complement) == 1:
            return next(iter(self.split.complement))
        return None


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    violations: Tuple[Violation, ...] = ()
    types_checked: int = 0


def _constraint_system(expression: BoundaryExpression) -> Tuple[List[LinearConstraint], List[Pair]]:
    m = expression.m
    variables = pairs(m)
    index = {p: k for k, p in enumerate(variables)}
    constraints: List[LinearConstraint] = []
    for split, b in expression.items():
        coeffs: Dict[int, Fraction] = {}
        for i in split.side:
            for j in split.complement:
                coeffs[index[(i, j) if i < j else (j, i)]] = Fraction(1)
        constraints.append(LinearConstraint(coeffs, GE if split.proper else EQ, b))
    return constraints, variables


def find_certificate(expression: BoundaryExpression) -> Optional[WeightCertificate]:
    """A weight function witnessing effectivity, or None when none exists."""
    constraints, variables = _constraint_system(expression)
    point = find_feasible_point(constraints, len(variables))
    if point is None:
        logger.debug("no weight certificate for %r", expression)
        return None
    return WeightCertificate(m=expression.m, w=dict(zip(variables, point)))


def is_effective_boundary(expression: BoundaryExpression) -> bool:
    return find_certificate(expression) is not None


def feasible_by_elimination(expression: BoundaryExpression) -> bool:
    """Same verdict as find_certificate, by Fourier-Motzkin elimination."""
    limit = certify_config.max_elimination_m()
    if expression.m > limit:
        raise ValueError(f"elimination oracle is limited to m <= {limit}, got m={expression.m}")
    constraints, variables = _constraint_system(expression)
    return fourier_motzkin.feasible(constraints, len(variables))


def _symmetry_classes(expression: BoundaryExpression, cert: WeightCertificate) -> List[Tuple[int, ...]]:
    """Refine the expression's marker classes so that swapping any two markers of a
    class fixes both b and w. Transpositions fixing w compose, so this is an
    equivalence and comparing against one representative per group suffices."""
    m = cert.m
    out: List[Tuple[int, ...]] = []
    for group in expression.marker_classes():
        buckets: List[List[int]] = []
        for i in group:
            for bucket in buckets:
                r = bucket[0]
                if all(cert.value(i, k) == cert.value(r, k) for k in range(1, m + 1) if k not in (i, r)):
                    bucket.append(i)
                    break
            else:
                buckets.append([i])
        out.extend(tuple(b) for b in buckets)
    return out


def _splits_of_type(m: int, classes: Sequence[Tuple[int, ...]], counts: Sequence[int]) -> List[TwoPartSplit]:
    found = {
        TwoPartSplit.of(m, [i for pick in picks for i in pick])
        for picks in product(*(combinations(c, x) for c, x in zip(classes, counts)))
    }
    return sorted(found, key=lambda s: (len(s.side), sorted(s.side)))


def verify_certificate(
    expression: BoundaryExpression,
    cert: WeightCertificate,
    max_types: Optional[int] = None,
) -> VerificationReport:
    """Exact, exhaustive re-check of every split constraint.

    Splits are enumerated by type: counts of markers taken from each symmetry class.
    All splits of one type share both their cut value and their b value. For
    m <= EXPAND_VIOLATIONS_M every violated split is listed; above that each violated
    type is listed once with a representative split and its split count.
    """
    if expression.m != cert.m:
        raise ValueError(f"expression lives on m={expression.m}, certificate on m={cert.m}")
    m = cert.m
    classes = _symmetry_classes(expression, cert)
    sizes = [len(c) for c in classes]
    total_types = prod(s + 1 for s in sizes)
    limit = max_types if max_types is not None else certify_config.max_verify_types()
    if total_types > limit:
        raise VerificationTooLarge(
            f"{total_types} split types on m={m} exceed the verification budget of {limit}"
        )

    r = len(classes)
    weight = [[Fraction(0)] * r for _ in range(r)]
    for t, ct in enumerate(classes):
        for u, cu in enumerate(classes):
            if t == u:
                if len(ct) >= 2:
                    weight[t][t] = cert.value(ct[0], ct[1])
            else:
                weight[t][u] = cert.value(ct[0], cu[0])

    violations: List[Violation] = []
    checked = 0
    for counts in product(*(range(s + 1) for s in sizes)):
        complement = tuple(s - x for s, x in zip(sizes, counts))
        if counts > complement:
            continue
        size = sum(counts)
        if size == 0 or size == m:
            continue
        checked += 1
        cut = Fraction(0)
        for t in range(r):
            xt, yt = counts[t], complement[t]
            if xt and yt:
                cut += xt * yt * weight[t][t]
            for u in range(t + 1, r):
                crossing = xt * complement[u] + counts[u] * yt
                if crossing:
                    cut += crossing * weight[t][u]
        b = expression.coefficient_of_counts(classes, counts)
        proper = 2 <= size <= m - 2
        if (proper and cut < b) or (not proper and cut != b):
            if m <= EXPAND_VIOLATIONS_M:
                violations.extend(
                    Violation(split=s, equality=not proper, cut=cut, b=b) for s in _splits_of_type(m, classes, counts)
                )
            else:
                side = [marker for c, x in zip(classes, counts) for marker in c[:x]]
                count = prod(comb(s, x) for s, x in zip(sizes, counts))
                if counts == complement:
                    count //= 2
                violations.append(
                    Violation(split=TwoPartSplit.of(m, side), equality=not proper, cut=cut, b=b, splits=count)
                )

    violations.sort(key=lambda v: (len(v.split.side), sorted(v.split.side)))
    return VerificationReport(ok=not violations, violations=tuple(violations), types_checked=checked)


def effective_combination(expression: BoundaryExpression, cert: WeightCertificate) -> EffectiveCombination:
    """c_{I,J} = cut_w(I) - b_{I,J} on proper splits; the class of D as a nonnegative sum."""
    report = verify_certificate(expression, cert)
    if not report.ok:
        first = report.violations[0]
        raise ValueError(
            f"certificate fails at split {first.split.key} (margin {first.margin}); "
            "no effective combination to extract"
        )
    m = expression.m
    return EffectiveCombination(
        m=m,
        coeffs={
            split: cut_value(cert.w, split.side, m) - b
            for split, b in expression.items()
            if split.proper
        },
    )


def symmetrize(cert: WeightCertificate, marker_values: Sequence[int]) -> WeightCertificate:
    """Average w over permutations of markers with equal values.

    The average of certificates for a permutation-invariant system is again a
    certificate, equalities included.
    """
    if len(marker_values) != cert.m:
        raise ValueError(f"{len(marker_values)} marker values for a certificate on m={cert.m}")
    sums: Dict[Tuple[int, int], Fraction] = {}
    counts: Dict[Tuple[int, int], int] = {}
    for (i, j), v in cert.w.items():
        a, b = marker_values[i - 1], marker_values[j - 1]
        key = (a, b) if a >= b else (b, a)
        sums[key] = sums.get(key, Fraction(0)) + v
        counts[key] = counts.get(key, 0) + 1
    out = {}
    for (i, j) in cert.w:
        a, b = marker_values[i - 1], marker_values[j - 1]
        key = (a, b) if a >= b else (b, a)
        out[(i, j)] = sums[key] / counts[key]
    return WeightCertificate(m=cert.m, w=out)
