"""Core partition types, generators and crossing tests."""

import itertools
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from ncpart.generate import (
    catalan,
    nc_b,
    nc_b_filtered,
    nc_d_circular,
    noncrossing_partitions,
    set_partitions,
    signed_partitions,
)
from ncpart.partitions import (
    PartitionError,
    SetPartition,
    SignedPartition,
    TypeVector,
    half_to_signed,
    is_noncrossing_A,
    k_type,
    partition_from_json,
    partition_to_json,
    rank_of,
    refines,
    rotate_half,
    type_of,
)

BELL = [1, 1, 2, 5, 15, 52, 203, 877]
DOWLING_B = [1, 2, 6, 24, 116, 648]


def crosses(pi):
    """Textbook test: a < b < c < d with a, c in one block and b, d in another."""
    lab = {x: i for i, blk in enumerate(pi.blocks) for x in blk}
    for a, b, c, d in itertools.combinations(range(1, pi.n + 1), 4):
        if lab[a] == lab[c] and lab[b] == lab[d] and lab[a] != lab[b]:
            return True
    return False


@pytest.mark.parametrize("n", range(1, 8))
def test_set_partitions_bell(n):
    assert sum(1 for _ in set_partitions(n)) == BELL[n]


@pytest.mark.parametrize("n", range(1, 6))
def test_signed_partitions_dowling(n):
    assert sum(1 for _ in signed_partitions(n)) == DOWLING_B[n]


@pytest.mark.parametrize("n", range(1, 8))
def test_nc_matches_textbook_filter(n):
    brute = sorted(p for p in set_partitions(n) if not crosses(p))
    assert list(noncrossing_partitions(n)) == brute
    assert len(brute) == catalan(n)


@pytest.mark.parametrize("m,k", [(4, 2), (6, 2), (6, 3), (8, 2), (9, 3)])
def test_k_divisible_is_filter(m, k):
    want = sorted(p for p in noncrossing_partitions(m) if all(len(b) % k == 0 for b in p.blocks))
    assert list(noncrossing_partitions(m, k)) == want
    n = m // k
    assert len(want) == comb((k + 1) * n, n) // (k * n + 1)


@pytest.mark.parametrize("n", range(1, 6))
def test_nc_b_central_binomial(n):
    assert len(nc_b(n)) == comb(2 * n, n)


@pytest.mark.parametrize("m,k", [(4, 2), (6, 2), (6, 3)])
def test_nc_b_generation_agrees_with_filter(m, k):
    assert nc_b(m, k) == nc_b_filtered(m, k)


def test_nc_d_sizes():
    # (3n-2)/n · C(2n-2, n-1)
    assert [len(nc_d_circular(n)) for n in (2, 3, 4, 5)] == [4, 14, 50, 182]


def test_type_vector_trims_and_weighs():
    t = TypeVector([2, 1, 0, 0])
    assert t.counts == (2, 1) and t.b == 3 and t.weight == 4
    assert t == TypeVector([2, 1])
    with pytest.raises(PartitionError):
        TypeVector([1, -1])


def test_ranks_and_types():
    pi = SetPartition(4, [[1, 4], [2, 3]])
    assert rank_of(pi, "A") == 2
    assert type_of(pi) == TypeVector([0, 2])
    sp = SignedPartition.from_pairs(3, [[1, -2]], [3])
    assert sp.zero_block == (-3, 3) or set(sp.zero_block) == {3, -3}
    assert rank_of(sp, "B") == 2


def test_k_type_rejects_nondivisible():
    with pytest.raises(PartitionError):
        k_type(SetPartition(3, [[1, 2], [3]]), 2)
    assert k_type(SetPartition(3, [[1, 2], [3]]), 2, skip_nondivisible=True) == TypeVector([1])


def test_refines_mismatch():
    with pytest.raises(PartitionError):
        refines(SetPartition(3, [[1], [2, 3]]), SetPartition(4, [[1, 2, 3, 4]]))


def test_rotation_and_signed_view():
    pi = SetPartition(6, [[1, 4], [2, 3], [5, 6]])
    assert rotate_half(pi) == SetPartition(6, [[1, 4], [5, 6], [2, 3]])
    assert half_to_signed(pi) == SignedPartition(3, [[1, -1], [2, 3], [-2, -3]])


@given(st.integers(1, 7).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, catalan(n) - 1))))
@settings(max_examples=80, deadline=None)
def test_json_round_trip_A(arg):
    n, i = arg
    pi = noncrossing_partitions(n)[i]
    assert partition_from_json(partition_to_json(pi)) == pi


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, comb(2 * n, n) - 1))))
@settings(max_examples=80, deadline=None)
def test_json_round_trip_B(arg):
    n, i = arg
    pi = nc_b(n)[i]
    assert partition_from_json(partition_to_json(pi)) == pi


@given(st.lists(st.integers(0, 3), min_size=1, max_size=9))
@settings(max_examples=200, deadline=None)
def test_noncrossing_flag_matches_definition(labels):
    blocks = {}
    for i, b in enumerate(labels, 1):
        blocks.setdefault(b, []).append(i)
    pi = SetPartition(len(labels), blocks.values())
    assert is_noncrossing_A(pi) == (not crosses(pi))


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(st.integers(0, catalan(n) - 1), st.integers(0, catalan(n) - 1), st.just(n))))
@settings(max_examples=100, deadline=None)
def test_refinement_is_blockwise_containment(arg):
    i, j, n = arg
    a, b = noncrossing_partitions(n)[i], noncrossing_partitions(n)[j]
    want = all(any(set(x) <= set(y) for y in b.blocks) for x in a.blocks)
    assert refines(a, b) == want
