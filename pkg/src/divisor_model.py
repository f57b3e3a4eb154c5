# src/divisor_model.py — symmetric divisor classes, f-functions, F-inequalities, boundary expressions
"""Divisor classes on the moduli space of n-pointed rational curves, as exact rationals.

A symmetric class L = sum_i c_i Delta_i is carried by its coefficient function f on
Z/nZ (f(i) = f(n - i) = -c_i, f(0) = f(1) = f(n - 1) = 0). A boundary expression
D = -sum b_{I,J} Delta_{I,J} on [m] is a map from canonical splits to rationals, where
the non-proper entries stand for psi classes (Delta_{{i}, rest} = -psi_i).
"""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .combinatorics import FQuad, TwoPartSplit, four_quads, two_part_splits

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]

# Tables beyond this many markers would hold over a million splits.
MAX_TABULATED_M = 21


def basis_indices(n: int) -> range:
    """Indices i of the symmetric basis Delta_i, i = 2..floor(n/2)."""
    return range(2, n // 2 + 1)


def pairs(m: int) -> List[Pair]:
    """Off-diagonal unordered pairs (i, j), i < j, of [m] in lexicographic order."""
    return list(combinations(range(1, m + 1), 2))


def cut_value(weights: Mapping[Pair, Fraction], side: Iterable[int], m: int) -> Fraction:
    """Sum of weights over pairs crossing the split (side, complement)."""
    inside = set(side)
    total = Fraction(0)
    for i in inside:
        for j in range(1, m + 1):
            if j in inside:
                continue
            total += weights[(i, j) if i < j else (j, i)]
    return total


@dataclass(frozen=True)
class SymmetricDivisor:
    """L = sum c_i Delta_i; coeffs[t] is c_{t+2}."""

    n: int
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.n < 3:
            raise ValueError(f"symmetric divisors need n >= 3, got {self.n}")
        expected = len(basis_indices(self.n))
        if len(self.coeffs) != expected:
            raise ValueError(
                f"n={self.n} needs {expected} coefficients (c_2..c_{self.n // 2}), "
                f"got {len(self.coeffs)}"
            )
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def from_mapping(cls, n: int, coeffs: Mapping[int, object]) -> "SymmetricDivisor":
        """Build from {i: c_i}; missing indices are 0, unknown ones rejected."""
        allowed = set(basis_indices(n))
        unknown = sorted(set(coeffs) - allowed)
        if unknown:
            raise ValueError(
                f"coefficient index {unknown[0]} out of range 2..{n // 2} for n={n}"
            )
        return cls(n=n, coeffs=tuple(Fraction(coeffs.get(i, 0)) for i in basis_indices(n)))  # type: ignore[arg-type]

    @classmethod
    def zero(cls, n: int) -> "SymmetricDivisor":
        return cls(n=n, coeffs=tuple(Fraction(0) for _ in basis_indices(n)))

    def coefficient(self, i: int) -> Fraction:
        if i not in basis_indices(self.n):
            raise ValueError(f"no basis divisor Delta_{i} for n={self.n}")
        return self.coeffs[i - 2]

    def scaled(self, factor: Fraction) -> "SymmetricDivisor":
        return SymmetricDivisor(n=self.n, coeffs=tuple(c * factor for c in self.coeffs))

    def as_mapping(self) -> Dict[int, Fraction]:
        return {i: self.coeffs[i - 2] for i in basis_indices(self.n)}


@dataclass(frozen=True)
class FFunction:
    """Residue table f(0..n-1) of a symmetric class."""

    n: int
    values: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.values) != self.n:
            raise ValueError(f"f needs {self.n} residues, got {len(self.values)}")
        vals = tuple(Fraction(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if vals[0] != 0 or vals[1 % self.n] != 0 or vals[self.n - 1] != 0:
            raise ValueError("f must vanish at 0, 1 and n-1")
        for a in range(self.n):
            if vals[a] != vals[(self.n - a) % self.n]:
                raise ValueError(f"f is not symmetric at {a}: f(a) != f(n-a)")

    def __call__(self, a: int) -> Fraction:
        return self.values[a % self.n]

    @classmethod
    def zero(cls, n: int) -> "FFunction":
        return cls(n=n, values=tuple(Fraction(0) for _ in range(n)))


def f_from_symmetric(divisor: SymmetricDivisor) -> FFunction:
    n = divisor.n
    values = [Fraction(0)] * n
    for i in basis_indices(n):
        values[i] = -divisor.coefficient(i)
        values[n - i] = -divisor.coefficient(i)
    return FFunction(n=n, values=tuple(values))


def f_inequality_value(f: FFunction, quad: FQuad) -> Fraction:
    """Intersection number L . F(a,b,c,d)."""
    if quad.n != f.n:
        raise ValueError(f"quad sums to {quad.n} but f lives on Z/{f.n}")
    a, b, c, d = quad.quad
    return f(a) + f(b) + f(c) + f(d) - f(a + b) - f(b + c) - f(a + c)


@dataclass(frozen=True)
class FNefResult:
    ok: bool
    witness: Optional[FQuad] = None
    value: Optional[Fraction] = None


def is_fnef(divisor: SymmetricDivisor) -> FNefResult:
    """First violated F-inequality in enumeration order, if any."""
    if divisor.n < 4:
        raise ValueError(f"F-nefness needs n >= 4, got {divisor.n}")
    f = f_from_symmetric(divisor)
    for quad in four_quads(divisor.n):
        value = f_inequality_value(f, quad)
        if value < 0:
            logger.info("n=%d fails the F-inequality at %s (value %s)", divisor.n, quad, value)
            return FNefResult(ok=False, witness=quad, value=value)
    return FNefResult(ok=True)


class BoundaryExpression(ABC):
    """D = -sum b_{I,J} Delta_{I,J} on [m], total over canonical splits."""

    def __init__(self, m: int) -> None:
        if m < 3:
            raise ValueError(f"boundary expressions need m >= 3, got {m}")
        self.m = m

    @abstractmethod
    def coefficient(self, split: TwoPartSplit) -> Fraction:
        ...

    def marker_classes(self) -> Tuple[Tuple[int, ...], ...]:
        """A partition of the markers under whose permutations b is invariant."""
        return tuple((i,) for i in range(1, self.m + 1))

    def coefficient_of_side(self, markers: Iterable[int]) -> Fraction:
        return self.coefficient(TwoPartSplit.of(self.m, markers))

    def coefficient_of_counts(self, classes: Sequence[Sequence[int]], counts: Sequence[int]) -> Fraction:
        """b for the split taking the first counts[t] markers of each class (classes
        must refine marker_classes())."""
        return self.coefficient_of_side(marker for c, x in zip(classes, counts) for marker in c[:x])

    def items(self) -> Iterator[Tuple[TwoPartSplit, Fraction]]:
        if self.m > MAX_TABULATED_M:
            raise ValueError(
                f"refusing to tabulate 2^{self.m - 1} splits; m={self.m} exceeds {MAX_TABULATED_M}"
            )
        for split in two_part_splits(self.m):
            yield split, self.coefficient(split)

    def as_table(self) -> "TabulatedExpression":
        return TabulatedExpression(self.m, dict(self.items()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BoundaryExpression) or other.m != self.m:
            return NotImplemented
        return all(other.coefficient(s) == b for s, b in self.items())

    __hash__ = None  # type: ignore[assignment]


class TabulatedExpression(BoundaryExpression):
    def __init__(self, m: int, table: Mapping[TwoPartSplit, object]) -> None:
        super().__init__(m)
        expected = set(two_part_splits(m))
        if set(table) != expected:
            raise ValueError(f"a boundary expression on m={m} needs every one of {len(expected)} splits")
        self._table = MappingProxyType({s: Fraction(v) for s, v in table.items()})  # type: ignore[arg-type]

    def coefficient(self, split: TwoPartSplit) -> Fraction:
        return self._table[split]

    @classmethod
    def from_keys(cls, m: int, values: Mapping[str, object]) -> "TabulatedExpression":
        """Build from "1,4"-style side keys; absent splits are 0."""
        by_key = {s.key: s for s in two_part_splits(m)}
        table: Dict[TwoPartSplit, Fraction] = {s: Fraction(0) for s in by_key.values()}
        for key, value in values.items():
            split = TwoPartSplit.of(m, (int(x) for x in key.split(",")))
            table[split] = Fraction(value)  # type: ignore[arg-type]
        return cls(m, table)

    def __repr__(self) -> str:
        return f"TabulatedExpression(m={self.m})"


class PartSumExpression(BoundaryExpression):
    """b_{I,J} = f(sum of marker values over I); the shape of every stratum pullback."""

    def __init__(self, f: FFunction, marker_values: Sequence[int]) -> None:
        super().__init__(len(marker_values))
        self.f = f
        self.marker_values = tuple(marker_values)

    def coefficient(self, split: TwoPartSplit) -> Fraction:
        if split.m != self.m:
            raise ValueError(f"split on m={split.m} used with an expression on m={self.m}")
        return self.f(sum(self.marker_values[i - 1] for i in split.side))

    def coefficient_of_side(self, markers: Iterable[int]) -> Fraction:
        # f is symmetric, so either side of the split gives the same value
        return self.f(sum(self.marker_values[i - 1] for i in markers))

    def coefficient_of_counts(self, classes: Sequence[Sequence[int]], counts: Sequence[int]) -> Fraction:
        return self.f(sum(x * self.marker_values[c[0] - 1] for c, x in zip(classes, counts) if x))

    def marker_classes(self) -> Tuple[Tuple[int, ...], ...]:
        groups: Dict[int, List[int]] = {}
        for marker, value in enumerate(self.marker_values, 1):
            groups.setdefault(value, []).append(marker)
        return tuple(tuple(g) for g in groups.values())

    def __repr__(self) -> str:
        return f"PartSumExpression(n={self.f.n}, values={self.marker_values})"


def full_boundary_expression(divisor: SymmetricDivisor) -> PartSumExpression:
    """L itself on [n]: b_{I,J} = f(|I|)."""
    return PartSumExpression(f_from_symmetric(divisor), (1,) * divisor.n)


def apply_cut_shift(expression: BoundaryExpression, shift: Mapping[Pair, object]) -> TabulatedExpression:
    """b'_{I,J} = b_{I,J} + sum over crossing pairs of shift; same divisor class."""
    m = expression.m
    needed = set(pairs(m))
    missing = needed - set(shift)
    if missing:
        raise ValueError(f"cut function is missing pair {sorted(missing)[0]}")
    u = {p: Fraction(shift[p]) for p in needed}  # type: ignore[arg-type]
    return TabulatedExpression(
        m, {split: b + cut_value(u, split.side, m) for split, b in expression.items()}
    )
