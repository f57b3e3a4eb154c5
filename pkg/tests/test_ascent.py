# tests/test_ascent.py
import random
from fractions import Fraction

import pytest

from src.ascent import (
    PROVENANCE_ASCENT,
    PROVENANCE_DEGENERATE,
    PROVENANCE_FEASIBILITY,
    AscentPreconditionError,
    AscentStep,
    StrictBaseInfeasible,
    ascend,
    case_margins,
    certify_partition,
    seed_certificate,
)
from src.combinatorics import Partition
from src.cone import sample_fnef
from src.divisor_model import FFunction, SymmetricDivisor, f_from_symmetric, pairs
from src.effective_boundary import WeightCertificate, find_certificate, verify_certificate
from src.pullback import pullback


@pytest.fixture
def f6():
    return f_from_symmetric(SymmetricDivisor(n=6, coeffs=(1, 3)))


def constant(m, value):
    return WeightCertificate(m=m, w={p: Fraction(value) for p in pairs(m)})


def test_step_for_merge_numbering():
    step = AscentStep.for_merge(Partition.of((2, 2, 1, 1)), 1)
    assert (step.p, step.q) == (3, 4)
    assert step.mu.parts == (2, 2, 2)
    assert step.merged == 1
    assert step.correspondence == (3, 1, 2)
    assert [step.mu_marker(t) for t in (1, 2, 3, 4)] == [2, 3, 1, 1]


def test_step_places_merged_part_by_value():
    step = AscentStep.for_merge(Partition.of((4, 1, 1)), 1)
    assert step.mu.parts == (4, 2)
    assert step.merged == 2
    assert step.correspondence == (1, 2)
    step = AscentStep.for_merge(Partition.of((5, 3, 3, 1)), 3)
    assert step.mu.parts == (6, 5, 1)
    assert step.merged == 1


def test_step_needs_a_repeated_value():
    with pytest.raises(ValueError):
        AscentStep.for_merge(Partition.of((3, 2, 1)), 2)


def test_ascend_hand_example(f6):
    step = AscentStep.for_merge(Partition.of((2, 2, 1, 1)), 1)
    w = ascend(f6, step, constant(3, Fraction(-1, 2)))
    assert w.value(1, 2) == Fraction(-1, 2)
    for i in (3, 4):
        for j in (1, 2):
            assert w.value(i, j) == Fraction(-1, 4)
    assert w.value(3, 4) == Fraction(1, 2)
    assert verify_certificate(pullback(f6, step.partition), w).ok

    cases = case_margins(f6, step, w)
    assert len(cases) == 7
    case3 = [c for c in cases if c.case == 3]
    assert sorted(c.split.key for c in case3) == ["1,3", "1,4"]
    assert all(c.margin == Fraction(5, 2) and c.bound == Fraction(5, 2) for c in case3)
    assert all(c.margin == 0 for c in cases if c.case == 2)


def test_zero_lifts_to_zero():
    f = FFunction.zero(7)
    step = AscentStep.for_merge(Partition.of((2, 2, 1, 1, 1)), 2)
    assert ascend(f, step, WeightCertificate.zero(4)) == WeightCertificate.zero(5)


def test_ascend_rejects_invalid_input_certificate(f6):
    step = AscentStep.for_merge(Partition.of((2, 2, 1, 1)), 1)
    with pytest.raises(AscentPreconditionError) as info:
        ascend(f6, step, constant(3, 0))
    assert info.value.violation is not None


def test_ascend_rejects_wrong_dimension(f6):
    step = AscentStep.for_merge(Partition.of((2, 2, 1, 1)), 1)
    with pytest.raises(AscentPreconditionError):
        ascend(f6, step, WeightCertificate.zero(4))


def test_ascend_reports_failing_f_inequality():
    f = f_from_symmetric(SymmetricDivisor(n=6, coeffs=(1, 4)))
    step = AscentStep.for_merge(Partition.of((3, 1, 1, 1)), 1)
    w_tilde = find_certificate(pullback(f, step.mu))
    assert w_tilde is not None
    with pytest.raises(AscentPreconditionError) as info:
        ascend(f, step, w_tilde)
    assert str(info.value.quad) == "{3,1,1,1}"


def test_seed_certificate():
    f = f_from_symmetric(SymmetricDivisor(n=6, coeffs=(1, 3)))
    seed = seed_certificate(f, Partition.of((4, 2)))
    assert seed.value(1, 2) == f(4) == -1
    with pytest.raises(ValueError):
        seed_certificate(f, Partition.of((3, 2, 1)))


def test_seed_lifts_to_the_unique_three_marker_certificate(f6):
    step = AscentStep.for_merge(Partition.of((4, 1, 1)), 1)
    w = ascend(f6, step, seed_certificate(f6, step.mu))
    direct = find_certificate(pullback(f6, step.partition))
    assert w == direct


def test_seed_must_match_f(f6):
    step = AscentStep.for_merge(Partition.of((4, 1, 1)), 1)
    with pytest.raises(AscentPreconditionError):
        ascend(f6, step, WeightCertificate(m=2, w={(1, 2): Fraction(5)}))


def test_ascent_exactness_on_random_fnef_divisors():
    rng = random.Random(2024)
    checked = 0
    while checked < 100:
        n = rng.randint(6, 11)
        divisor = sample_fnef(n, seed=rng.randint(0, 10_000))
        f = f_from_symmetric(divisor)
        length = rng.randint(3, min(n, 8))
        cuts = sorted(rng.sample(range(1, n), length - 1))
        lam = Partition.of(b - a for a, b in zip([0] + cuts, cuts + [n]))
        repeated = [v for v in set(lam.parts) if lam.multiplicity(v) >= 2]
        if not repeated:
            continue
        step = AscentStep.for_merge(lam, rng.choice(sorted(repeated)))
        if step.mu.length == 2:
            w_tilde = seed_certificate(f, step.mu)
        else:
            w_tilde = find_certificate(pullback(f, step.mu))
            assert w_tilde is not None
        w = ascend(f, step, w_tilde)
        assert verify_certificate(pullback(f, lam), w).ok
        for case in case_margins(f, step, w):
            if not case.split.proper:
                assert case.margin == 0
            else:
                assert case.margin >= 0
            if case.case == 3:
                assert case.margin >= case.bound >= 0
        checked += 1


def test_certify_partition_strict():
    divisor = sample_fnef(10, seed=3)
    result = certify_partition(f_from_symmetric(divisor), Partition.of((4, 3, 2, 1)))
    assert result.provenance == PROVENANCE_FEASIBILITY
    assert result.path == ()


@pytest.mark.parametrize("parts", [(6,), (5, 1), (3, 3)])
def test_certify_partition_short_is_degenerate(f6, parts):
    result = certify_partition(f6, Partition.of(parts))
    assert result.provenance == PROVENANCE_DEGENERATE
    assert result.certificate is None


def test_certify_partition_by_ascent(f6):
    lam = Partition.of((2, 2, 1, 1))
    result = certify_partition(f6, lam)
    assert result.provenance == PROVENANCE_ASCENT
    assert result.base == Partition.of((4, 2))
    assert result.base_provenance == PROVENANCE_DEGENERATE
    assert verify_certificate(pullback(f6, lam), result.certificate).ok


def test_certify_partition_reuses_cache(f6):
    cache = {}
    certify_partition(f6, Partition.of((4, 1, 1)), cache)
    assert Partition.of((4, 1, 1)) in cache
    result = certify_partition(f6, Partition.of((2, 2, 1, 1)), cache)
    assert result.base == Partition.of((4, 1, 1))
    assert result.base_provenance == PROVENANCE_ASCENT
    assert Partition.of((2, 2, 1, 1)) in cache


def test_certify_partition_all_ones():
    f = f_from_symmetric(sample_fnef(9, seed=5))
    lam = Partition.of((1,) * 9)
    result = certify_partition(f, lam, {})
    assert result.provenance == PROVENANCE_ASCENT
    assert verify_certificate(pullback(f, lam), result.certificate).ok


def test_infeasible_strict_base():
    # c5 < c2 breaks the only proper-split condition on (4,3,2,1)
    f = f_from_symmetric(SymmetricDivisor(n=10, coeffs=(0, 0, 0, -1)))
    with pytest.raises(StrictBaseInfeasible) as info:
        certify_partition(f, Partition.of((4, 3, 2, 1)))
    assert info.value.base == Partition.of((4, 3, 2, 1))
    with pytest.raises(StrictBaseInfeasible):
        certify_partition(f, Partition.of((4, 3, 1, 1, 1)))
