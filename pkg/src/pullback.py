# src/pullback.py — boundary expression of the stratum pullback b_lambda^* L
"""The immersion b_lambda only enters through its pullback formula:
b_I = f(sum of lambda_t over t in I), markers numbered by stored part order."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Union

from .combinatorics import Partition
from .divisor_model import FFunction, PartSumExpression

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DegenerateStratum:
    """Length <= 2: the stratum carries no moduli and nothing needs certifying."""

    partition: Partition


PullbackResult = Union[PartSumExpression, DegenerateStratum]


def pullback(f: FFunction, partition: Partition) -> PullbackResult:
    if partition.n != f.n:
        raise ValueError(f"partition of {partition.n} used with f on Z/{f.n}")
    if partition.length <= 2:
        return DegenerateStratum(partition)
    return PartSumExpression(f, partition.parts)


def pullback_table(f: FFunction, partition: Partition) -> Dict[str, str]:
    """The b-map keyed by sorted side strings ("1,4"), rationals as "p/q"."""
    result = pullback(f, partition)
    if isinstance(result, DegenerateStratum):
        raise ValueError(f"({partition}) has length {partition.length}; no moduli to pull back to")
    return {split.key: f"{b.numerator}/{b.denominator}" for split, b in result.items()}
