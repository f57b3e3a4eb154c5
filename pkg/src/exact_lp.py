# src/exact_lp.py — phase-1 simplex over exact rationals with Bland's rule
"""Feasibility of {x free : A_i . x >= b_i (or == b_i)} with no tolerance anywhere.

Rows are sparse dicts {column: Fraction}. Free variables are split x = y - z, every
'>=' row gets a surplus column, and every row gets an artificial basic variable;
phase 1 minimizes the artificial sum. Bland's smallest-index rule (entering column
and leaving row) guarantees termination and makes the returned point deterministic.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

logger = logging.getLogger(__name__)

GE = ">="
EQ = "=="


@dataclass(frozen=True)
class LinearConstraint:
    coefficients: Dict[int, Fraction]
    sense: str
    rhs: Fraction


def _pivot(rows: List[Dict[int, Fraction]], rhs: List[Fraction], cost: Dict[int, Fraction],
           row: int, col: int) -> None:
    pivot_row = rows[row]
    norm = pivot_row[col]
    for key in list(pivot_row):
        pivot_row[key] /= norm
    rhs[row] /= norm

    for i, other in enumerate(rows):
        if i == row:
            continue
        mult = other.get(col)
        if not mult:
            continue
        for key, value in pivot_row.items():
            updated = other.get(key, Fraction(0)) - mult * value
            if updated:
                other[key] = updated
            else:
                other.pop(key, None)
        rhs[i] -= mult * rhs[row]

    mult = cost.get(col)
    if mult:
        for key, value in pivot_row.items():
            updated = cost.get(key, Fraction(0)) - mult * value
            if updated:
                cost[key] = updated
            else:
                cost.pop(key, None)


def find_feasible_point(constraints: Sequence[LinearConstraint], num_vars: int) -> Optional[List[Fraction]]:
    """A point satisfying every constraint exactly, or None when none exists."""
    num_rows = len(constraints)
    surplus_base = 2 * num_vars
    artificial_base = surplus_base + num_rows

    rows: List[Dict[int, Fraction]] = []
    rhs: List[Fraction] = []
    surplus_col = surplus_base
    for c in constraints:
        if c.sense not in (GE, EQ):
            raise ValueError(f"unsupported constraint sense {c.sense!r}")
        row: Dict[int, Fraction] = {}
        for j, a in c.coefficients.items():
            if not 0 <= j < num_vars:
                raise ValueError(f"constraint references variable {j} outside 0..{num_vars - 1}")
            a = Fraction(a)
            if a:
                row[j] = a
                row[num_vars + j] = -a
        if c.sense == GE:
            row[surplus_col] = Fraction(-1)
            surplus_col += 1
        b = Fraction(c.rhs)
        if b < 0:
            row = {k: -v for k, v in row.items()}
            b = -b
        rows.append(row)
        rhs.append(b)

    basis = [artificial_base + i for i in range(num_rows)]

    # Reduced costs of the phase-1 objective (minimize the artificial sum).
    cost: Dict[int, Fraction] = {}
    for row in rows:
        for key, value in row.items():
            updated = cost.get(key, Fraction(0)) - value
            if updated:
                cost[key] = updated
            else:
                cost.pop(key, None)

    iterations = 0
    while True:
        entering = min((k for k, v in cost.items() if v < 0 and k < artificial_base), default=None)
        if entering is None:
            break
        leaving = None
        best = None
        for i, row in enumerate(rows):
            a = row.get(entering)
            if a is None or a <= 0:
                continue
            ratio = rhs[i] / a
            if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                best, leaving = ratio, i
        if leaving is None:
            # phase-1 objective is bounded below by 0, so this cannot happen
            raise RuntimeError("phase-1 simplex reported an unbounded direction")
        _pivot(rows, rhs, cost, leaving, entering)
        basis[leaving] = entering
        iterations += 1

    infeasibility = sum((rhs[i] for i in range(num_rows) if basis[i] >= artificial_base), Fraction(0))
    logger.debug("phase 1 finished after %d pivots; residual %s", iterations, infeasibility)
    if infeasibility != 0:
        return None

    values = [Fraction(0)] * (2 * num_vars)
    for i, var in enumerate(basis):
        if var < 2 * num_vars:
            values[var] = rhs[i]
    return [values[j] - values[num_vars + j] for j in range(num_vars)]
