# src/fourier_motzkin.py — independent feasibility oracle by variable elimination
"""Decides the same systems as exact_lp by a different route: equalities are
substituted away, then inequalities are eliminated one variable at a time. The
row count grows quickly, so callers guard the problem size."""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .exact_lp import EQ, GE, LinearConstraint

logger = logging.getLogger(__name__)

Row = Tuple[Dict[int, Fraction], Fraction]


def _normalized(coeffs: Dict[int, Fraction], rhs: Fraction) -> Tuple[Tuple[Tuple[int, Fraction], ...], Fraction]:
    """Scale a >= row so its largest |coefficient| is 1 (keeps the direction)."""
    scale = max(abs(v) for v in coeffs.values())
    key = tuple(sorted((j, v / scale) for j, v in coeffs.items()))
    return key, rhs / scale


def _substitute(row: Row, var: int, expr: Dict[int, Fraction], const: Fraction) -> Row:
    """Replace var by const + expr . x in row."""
    coeffs, rhs = dict(row[0]), row[1]
    a = coeffs.pop(var, None)
    if not a:
        return coeffs, rhs
    for j, v in expr.items():
        updated = coeffs.get(j, Fraction(0)) + a * v
        if updated:
            coeffs[j] = updated
        else:
            coeffs.pop(j, None)
    return coeffs, rhs - a * const


def feasible(constraints: Sequence[LinearConstraint], num_vars: int) -> bool:
    equalities: List[Row] = []
    inequalities: List[Row] = []
    for c in constraints:
        coeffs = {j: Fraction(v) for j, v in c.coefficients.items() if v}
        if c.sense == EQ:
            equalities.append((coeffs, Fraction(c.rhs)))
        elif c.sense == GE:
            inequalities.append((coeffs, Fraction(c.rhs)))
        else:
            raise ValueError(f"unsupported constraint sense {c.sense!r}")

    while equalities:
        coeffs, rhs = equalities.pop(0)
        if not coeffs:
            if rhs != 0:
                return False
            continue
        var = min(coeffs)
        a = coeffs[var]
        # var = rhs/a - sum_{j != var} (coeffs[j]/a) x_j
        expr = {j: -v / a for j, v in coeffs.items() if j != var}
        const = rhs / a
        equalities = [_substitute(r, var, expr, const) for r in equalities]
        inequalities = [_substitute(r, var, expr, const) for r in inequalities]

    rows: Dict[Tuple[Tuple[int, Fraction], ...], Fraction] = {}
    for coeffs, rhs in inequalities:
        if not coeffs:
            if rhs > 0:
                return False
            continue
        key, b = _normalized(coeffs, rhs)
        if key not in rows or b > rows[key]:
            rows[key] = b

    for var in range(num_vars):
        positive, negative, rest = [], [], {}
        for key, b in rows.items():
            coeffs = dict(key)
            a = coeffs.get(var)
            if a is None:
                rest[key] = b
            elif a > 0:
                positive.append((coeffs, b))
            else:
                negative.append((coeffs, b))
        for pc, pb in positive:
            for nc, nb in negative:
                ap, an = pc[var], -nc[var]
                combined: Dict[int, Fraction] = {}
                for j in set(pc) | set(nc):
                    if j == var:
                        continue
                    v = an * pc.get(j, Fraction(0)) + ap * nc.get(j, Fraction(0))
                    if v:
                        combined[j] = v
                b = an * pb + ap * nb
                if not combined:
                    if b > 0:
                        return False
                    continue
                key, nb_ = _normalized(combined, b)
                if key not in rest or nb_ > rest[key]:
                    rest[key] = nb_
        rows = rest
        logger.debug("eliminated x%d; %d rows remain", var, len(rows))

    return True
