# tests/test_divisor_model.py
import random
from fractions import Fraction
from itertools import permutations

import pytest

from src.combinatorics import FQuad, TwoPartSplit, two_part_splits
from src.divisor_model import (
    FFunction,
    PartSumExpression,
    SymmetricDivisor,
    TabulatedExpression,
    apply_cut_shift,
    cut_value,
    f_from_symmetric,
    f_inequality_value,
    full_boundary_expression,
    is_fnef,
    pairs,
)


def test_f_from_symmetric_n6():
    f = f_from_symmetric(SymmetricDivisor(n=6, coeffs=(1, 3)))
    assert list(f.values) == [0, 0, -1, -3, -1, 0]


def test_f_is_periodic():
    f = f_from_symmetric(SymmetricDivisor(n=7, coeffs=(2, 5)))
    assert f(9) == f(2) == -2
    assert f(-3) == f(4) == -5


def test_divisor_validation():
    with pytest.raises(ValueError):
        SymmetricDivisor(n=6, coeffs=(1,))
    with pytest.raises(ValueError):
        SymmetricDivisor(n=2, coeffs=())


def test_from_mapping_defaults_and_rejects():
    d = SymmetricDivisor.from_mapping(8, {3: Fraction(1, 2)})
    assert d.coeffs == (0, Fraction(1, 2), 0)
    assert d.coefficient(3) == Fraction(1, 2)
    with pytest.raises(ValueError, match="out of range"):
        SymmetricDivisor.from_mapping(6, {4: 1})


def test_ffunction_checks_zeros_and_symmetry():
    with pytest.raises(ValueError):
        FFunction(n=5, values=(0, 1, 0, 0, 0))
    with pytest.raises(ValueError):
        FFunction(n=6, values=(0, 0, -1, 0, -2, 0))


def test_f_inequality_n6_facets():
    f = f_from_symmetric(SymmetricDivisor(n=6, coeffs=(1, 3)))
    # 3c2 - c3 and 2c3 - c2
    assert f_inequality_value(f, FQuad.of((3, 1, 1, 1))) == 0
    assert f_inequality_value(f, FQuad.of((2, 2, 1, 1))) == 5


def test_is_fnef_ok():
    assert is_fnef(SymmetricDivisor(n=6, coeffs=(1, 3))).ok


def test_is_fnef_reports_first_witness():
    result = is_fnef(SymmetricDivisor(n=6, coeffs=(1, 4)))
    assert not result.ok
    assert str(result.witness) == "{3,1,1,1}"
    assert result.value == -1


def test_is_fnef_n4_and_n5():
    assert is_fnef(SymmetricDivisor(n=4, coeffs=(1,))).ok
    assert not is_fnef(SymmetricDivisor(n=4, coeffs=(-1,))).ok
    assert is_fnef(SymmetricDivisor(n=5, coeffs=(1,))).ok
    assert not is_fnef(SymmetricDivisor(n=5, coeffs=(-1,))).ok


def test_is_fnef_needs_four_points():
    with pytest.raises(ValueError):
        is_fnef(SymmetricDivisor(n=3, coeffs=()))


def test_zero_divisor_is_fnef():
    assert is_fnef(SymmetricDivisor.zero(11)).ok


def test_scaling_preserves_fnef():
    d = SymmetricDivisor(n=8, coeffs=(3, 5, 6))
    assert is_fnef(d).ok == is_fnef(d.scaled(Fraction(7, 3))).ok


def test_full_boundary_expression():
    d = SymmetricDivisor(n=6, coeffs=(1, 3))
    expr = full_boundary_expression(d)
    assert expr.m == 6
    assert expr.coefficient(TwoPartSplit.of(6, {1, 2})) == -1
    assert expr.coefficient(TwoPartSplit.of(6, {1, 2, 3})) == -3
    assert expr.coefficient(TwoPartSplit.of(6, {1})) == 0


def test_part_sum_expression_uses_marker_values():
    f = f_from_symmetric(SymmetricDivisor(n=10, coeffs=(1, 2, 3, 4)))
    expr = PartSumExpression(f, (4, 3, 2, 1))
    assert expr.coefficient(TwoPartSplit.of(4, {1, 4})) == f(5) == -4
    assert expr.coefficient_of_side({2, 3}) == f(5)
    assert expr.marker_classes() == ((1,), (2,), (3,), (4,))
    assert PartSumExpression(f, (3, 3, 2, 1, 1)).marker_classes() == ((1, 2), (3,), (4, 5))


def test_tabulated_requires_every_split():
    with pytest.raises(ValueError):
        TabulatedExpression(4, {TwoPartSplit.of(4, {1}): 0})


def test_tabulated_from_keys_and_equality():
    f = f_from_symmetric(SymmetricDivisor(n=6, coeffs=(1, 3)))
    lazy = PartSumExpression(f, (3, 2, 1))
    table = TabulatedExpression.from_keys(3, {"1": -3, "1,2": 0, "1,3": -1})
    assert table == lazy
    assert lazy.as_table() == table


def test_cut_value():
    w = {p: Fraction(1) for p in pairs(4)}
    assert cut_value(w, {1}, 4) == 3
    assert cut_value(w, {1, 2}, 4) == 4


def test_cut_shift_changes_b_by_cut():
    expr = TabulatedExpression.from_keys(4, {"1,2": 1})
    shift = {p: Fraction(k) for k, p in enumerate(pairs(4))}
    shifted = apply_cut_shift(expr, shift)
    for split in two_part_splits(4):
        assert shifted.coefficient(split) == expr.coefficient(split) + cut_value(shift, split.side, 4)


def test_cut_shift_needs_total_function():
    expr = TabulatedExpression.from_keys(4, {})
    with pytest.raises(ValueError, match="missing pair"):
        apply_cut_shift(expr, {(1, 2): 1})


def test_tabulation_is_guarded():
    f = FFunction.zero(30)
    with pytest.raises(ValueError, match="refusing to tabulate"):
        list(PartSumExpression(f, (1,) * 30).items())


@pytest.mark.parametrize("quad", [(5, 4, 2, 1), (3, 3, 3, 3), (6, 3, 2, 1), (4, 4, 3, 1)])
def test_f_inequality_value_ignores_quad_order(quad):
    rng = random.Random(sum(quad))
    n = sum(quad)
    f = f_from_symmetric(SymmetricDivisor(n=n, coeffs=tuple(rng.randint(-5, 5) for _ in range(n // 2 - 1))))
    expected = f_inequality_value(f, FQuad.of(quad))
    orderings = list(permutations(quad))
    assert len(orderings) == 24
    assert all(f_inequality_value(f, FQuad(n=n, quad=order)) == expected for order in orderings)


def test_full_boundary_expression_ignores_marker_labels():
    d = SymmetricDivisor(n=7, coeffs=(2, -1))
    expr = full_boundary_expression(d)
    rng = random.Random(7)
    for _ in range(5):
        images = list(range(1, 8))
        rng.shuffle(images)
        sigma = dict(zip(range(1, 8), images))
        for split in two_part_splits(7):
            assert expr.coefficient_of_side({sigma[i] for i in split.side}) == expr.coefficient(split)
