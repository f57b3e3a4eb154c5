# src/combinatorics.py — integer partitions, 2-part marker splits, F-curve quadruples
"""Enumeration and canonical forms for the discrete objects the certifier walks over.

Markers are 1-based throughout: marker t of a stratum corresponds to part t of the
partition in stored (weakly decreasing) order.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

logger = logging.getLogger(__name__)

PartitionFilter = Union[str, int]

# Tie-breaking identifier recorded in certificates; verify re-derives paths with it.
MERGE_POLICY = "largest-repeated-value"


@dataclass(frozen=True)
class Partition:
    n: int
    parts: Tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.parts:
            raise ValueError("a partition needs at least one part")
        if any(p < 1 for p in self.parts):
            raise ValueError(f"partition parts must be positive: {self.parts}")
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise ValueError(f"partition parts must be weakly decreasing: {self.parts}")
        if sum(self.parts) != self.n:
            raise ValueError(f"parts {self.parts} do not sum to {self.n}")

    @classmethod
    def of(cls, parts: Iterable[int]) -> "Partition":
        """Build from parts in any order."""
        ordered = tuple(sorted((int(p) for p in parts), reverse=True))
        return cls(n=sum(ordered), parts=ordered)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse the CLI form "4,3,2,1". Order is not enforced on input."""
        raw = [chunk.strip() for chunk in (text or "").split(",")]
        if not raw or any(not chunk for chunk in raw):
            raise ValueError(f"partition {text!r} must be comma-separated positive integers")
        try:
            parts = [int(chunk) for chunk in raw]
        except ValueError as exc:
            raise ValueError(f"partition {text!r} has a non-integer part") from exc
        return cls.of(parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def is_strict(self) -> bool:
        return len(set(self.parts)) == len(self.parts)

    def multiplicity(self, value: int) -> int:
        return self.parts.count(value)

    def largest_repeated(self) -> Optional[int]:
        repeated = [v for v in set(self.parts) if self.parts.count(v) >= 2]
        return max(repeated) if repeated else None

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts)


@dataclass(frozen=True)
class TwoPartSplit:
    """Unordered split {I, J} of [m], named by the side holding marker 1."""

    m: int
    side: FrozenSet[int]

    def __post_init__(self) -> None:
        if 1 not in self.side:
            raise ValueError("canonical split side must contain marker 1")
        if not self.side <= frozenset(range(1, self.m + 1)):
            raise ValueError(f"split side {sorted(self.side)} is not inside [1..{self.m}]")
        if len(self.side) >= self.m:
            raise ValueError("split complement must be nonempty")

    @classmethod
    def of(cls, m: int, markers: Iterable[int]) -> "TwoPartSplit":
        """Canonicalize either side of a split."""
        chosen = frozenset(int(i) for i in markers)
        if 1 not in chosen:
            chosen = frozenset(range(1, m + 1)) - chosen
        return cls(m=m, side=chosen)

    @property
    def complement(self) -> FrozenSet[int]:
        return frozenset(range(1, self.m + 1)) - self.side

    @property
    def proper(self) -> bool:
        return len(self.side) >= 2 and self.m - len(self.side) >= 2

    @property
    def key(self) -> str:
        return ",".join(str(i) for i in sorted(self.side))


@dataclass(frozen=True)
class FQuad:
    n: int
    quad: Tuple[int, int, int, int]

    def __post_init__(self) -> None:
        if len(self.quad) != 4 or any(x < 1 for x in self.quad):
            raise ValueError(f"F-curve index needs four positive entries: {self.quad}")
        if sum(self.quad) != self.n:
            raise ValueError(f"F-curve index {self.quad} does not sum to {self.n}")

    @classmethod
    def of(cls, entries: Iterable[int]) -> "FQuad":
        ordered = tuple(sorted((int(x) for x in entries), reverse=True))
        return cls(n=sum(ordered), quad=ordered)  # type: ignore[arg-type]

    def __str__(self) -> str:
        return "{" + ",".join(str(x) for x in self.quad) + "}"


def _descending(n: int, cap: int) -> Iterable[Tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, cap), 0, -1):
        for rest in _descending(n - first, first):
            yield (first,) + rest


def _distinct_descending(n: int, cap: int) -> Iterable[Tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, cap), 0, -1):
        for rest in _distinct_descending(n - first, first - 1):
            yield (first,) + rest


def partitions_of(n: int, filter: PartitionFilter = "all") -> List[Partition]:
    """All partitions of n in lexicographically decreasing order.

    filter is "all", "strict", or an int k for partitions of length exactly k.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if filter == "strict":
        shapes = _distinct_descending(n, n)
    elif filter == "all":
        shapes = _descending(n, n)
    elif isinstance(filter, int) and not isinstance(filter, bool):
        shapes = (p for p in _descending(n, n) if len(p) == filter)
    else:
        raise ValueError(f"unknown partition filter {filter!r}")
    return [Partition(n=n, parts=p) for p in shapes]


def four_quads(n: int) -> List[FQuad]:
    """Every multiset {a,b,c,d} of positive integers summing to n, largest first."""
    if n < 4:
        raise ValueError(f"F-curves need n >= 4, got {n}")
    return [FQuad(n=n, quad=p) for p in _descending(n, n) if len(p) == 4]  # type: ignore[arg-type]


@lru_cache(maxsize=32)
def two_part_splits(m: int) -> Tuple[TwoPartSplit, ...]:
    """All 2^(m-1) - 1 canonical splits of [m], by side size then lexicographically."""
    if m < 3:
        raise ValueError(f"splits are only enumerated for m >= 3, got {m}")
    out: List[TwoPartSplit] = []
    others = range(2, m + 1)
    for size in range(1, m):
        for combo in combinations(others, size - 1):
            out.append(TwoPartSplit(m=m, side=frozenset((1,) + combo)))
    return tuple(out)


def merge_equal_pair(partition: Partition, value: int) -> Partition:
    """Replace two copies of value by one part 2*value."""
    if partition.multiplicity(value) < 2:
        raise ValueError(f"value {value} occurs fewer than twice in ({partition})")
    parts = list(partition.parts)
    parts.remove(value)
    parts.remove(value)
    parts.append(2 * value)
    return Partition.of(parts)


def reduction_path(partition: Partition) -> List[Tuple[Partition, int]]:
    """Merge steps from partition down to a strict one.

    Each entry is (partition before the merge, merged value); the policy always
    merges the largest value that repeats.
    """
    path: List[Tuple[Partition, int]] = []
    current = partition
    while not current.is_strict:
        value = current.largest_repeated()
        assert value is not None
        path.append((current, value))
        current = merge_equal_pair(current, value)
    return path


def path_endpoint(partition: Partition) -> Partition:
    path = reduction_path(partition)
    if not path:
        return partition
    last, value = path[-1]
    return merge_equal_pair(last, value)


def max_strict_length(n: int) -> int:
    """Largest k with k(k+1)/2 <= n."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    k = 1
    while (k + 1) * (k + 2) // 2 <= n:
        k += 1
    return k


def subset_sums(values: Sequence[int]) -> List[int]:
    """Sums of nonempty proper sub-multisets of values, ascending."""
    reachable = {0}
    for v in values:
        reachable |= {s + v for s in reachable}
    total = sum(values)
    return sorted(s for s in reachable if 0 < s < total)
