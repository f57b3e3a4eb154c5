# tests/test_combinatorics.py
from itertools import combinations

import pytest

from src.combinatorics import (
    FQuad,
    Partition,
    TwoPartSplit,
    four_quads,
    max_strict_length,
    merge_equal_pair,
    partitions_of,
    path_endpoint,
    reduction_path,
    subset_sums,
    two_part_splits,
)


def parts(partitions):
    return [p.parts for p in partitions]


def test_strict_partitions_of_6():
    assert parts(partitions_of(6, "strict")) == [(6,), (5, 1), (4, 2), (3, 2, 1)]


def test_all_partitions_of_6_in_decreasing_order():
    out = parts(partitions_of(6))
    assert len(out) == 11
    assert out == sorted(out, reverse=True)
    assert out[0] == (6,) and out[-1] == (1, 1, 1, 1, 1, 1)


def test_strict_filter_matches_all_filtered():
    for n in range(1, 16):
        strict = [p for p in partitions_of(n) if p.is_strict]
        assert partitions_of(n, "strict") == strict


def test_length_filter():
    assert parts(partitions_of(6, 3)) == [(4, 1, 1), (3, 2, 1), (2, 2, 2)]


def test_single_partition_of_one():
    assert parts(partitions_of(1)) == [(1,)]


def test_bad_filter_and_n():
    with pytest.raises(ValueError):
        partitions_of(0)
    with pytest.raises(ValueError):
        partitions_of(5, "distinct")


def test_partition_counts():
    assert len(partitions_of(20)) == 627
    assert len(partitions_of(35, "strict")) == 585


def test_longest_strict_partition_of_35():
    assert max(p.length for p in partitions_of(35, "strict")) == 7


def test_max_strict_length_bounds():
    assert max_strict_length(35) == 7
    assert max_strict_length(36) == 8
    assert max_strict_length(6) == 3
    assert max_strict_length(5) == 2


def test_partition_validation():
    with pytest.raises(ValueError):
        Partition(n=5, parts=(2, 3))
    with pytest.raises(ValueError):
        Partition(n=6, parts=(3, 2))
    with pytest.raises(ValueError):
        Partition(n=0, parts=())


def test_partition_parse_sorts_and_prints():
    lam = Partition.parse("1, 3,2,4")
    assert lam.parts == (4, 3, 2, 1)
    assert str(lam) == "4,3,2,1"
    with pytest.raises(ValueError):
        Partition.parse("4,,1")
    with pytest.raises(ValueError):
        Partition.parse("4,x")


def test_four_quads_of_6():
    assert [q.quad for q in four_quads(6)] == [(3, 1, 1, 1), (2, 2, 1, 1)]


def test_four_quads_of_4_and_error():
    assert [q.quad for q in four_quads(4)] == [(1, 1, 1, 1)]
    with pytest.raises(ValueError):
        four_quads(3)


def test_fquad_validation_and_str():
    assert str(FQuad.of((1, 3, 1, 1))) == "{3,1,1,1}"
    with pytest.raises(ValueError):
        FQuad(n=5, quad=(3, 1, 1, 0))


def test_two_part_splits_of_4():
    splits = two_part_splits(4)
    assert len(splits) == 7
    assert [s.key for s in splits] == ["1", "1,2", "1,3", "1,4", "1,2,3", "1,2,4", "1,3,4"]
    assert [s.proper for s in splits] == [False, True, True, True, False, False, False]


@pytest.mark.parametrize("m", [3, 5, 6, 8])
def test_two_part_split_count(m):
    splits = two_part_splits(m)
    assert len(splits) == 2 ** (m - 1) - 1
    assert len(set(splits)) == len(splits)
    assert sum(1 for s in splits if not s.proper) == m


def test_two_part_splits_rejects_small_m():
    with pytest.raises(ValueError):
        two_part_splits(2)


def test_split_canonicalizes_either_side():
    assert TwoPartSplit.of(5, {2, 3}) == TwoPartSplit.of(5, {1, 4, 5})
    assert TwoPartSplit.of(5, {2, 3}).complement == frozenset({2, 3})
    with pytest.raises(ValueError):
        TwoPartSplit(m=4, side=frozenset({2}))
    with pytest.raises(ValueError):
        TwoPartSplit.of(3, {1, 2, 3})


def test_merge_equal_pair():
    assert merge_equal_pair(Partition.of((2, 2, 1, 1)), 1).parts == (2, 2, 2)
    assert merge_equal_pair(Partition.of((3, 3, 1)), 3).parts == (6, 1)
    with pytest.raises(ValueError):
        merge_equal_pair(Partition.of((3, 2, 1)), 2)


def test_reduction_path_merges_largest_repeated_value():
    path = reduction_path(Partition.of((2, 2, 1, 1)))
    assert [(lam.parts, v) for lam, v in path] == [((2, 2, 1, 1), 2), ((4, 1, 1), 1)]
    assert path_endpoint(Partition.of((2, 2, 1, 1))).parts == (4, 2)


def test_reduction_path_through_short_strata():
    path = reduction_path(Partition.of((1, 1, 1, 1)))
    assert [lam.parts for lam, _ in path] == [(1, 1, 1, 1), (2, 1, 1), (2, 2)]
    assert path_endpoint(Partition.of((1, 1, 1, 1))).parts == (4,)


def test_strict_partition_has_empty_path():
    lam = Partition.of((5, 3, 1))
    assert reduction_path(lam) == []
    assert path_endpoint(lam) == lam


@pytest.mark.parametrize("n", [7, 12, 18])
def test_every_path_ends_strict_and_shortens(n):
    for lam in partitions_of(n):
        path = reduction_path(lam)
        lengths = [p.length for p, _ in path] + [path_endpoint(lam).length]
        assert lengths == sorted(lengths, reverse=True)
        assert len(set(lengths)) == len(lengths)
        assert path_endpoint(lam).is_strict


def test_subset_sums():
    assert subset_sums([3, 1]) == [1, 3]
    assert subset_sums([2, 2, 1]) == [1, 2, 3, 4]
    assert subset_sums([5]) == []
    assert subset_sums([]) == []


def test_subset_sums_match_brute_force():
    values = [5, 3, 3, 2, 1]
    brute = set()
    for size in range(1, len(values)):
        for combo in combinations(values, size):
            brute.add(sum(combo))
    assert subset_sums(values) == sorted(s for s in brute if 0 < s < sum(values))
