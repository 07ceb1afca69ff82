"""The type-B bijection ψ and the order-transfer criterion."""

import pytest
from hypothesis import given, settings, strategies as st
from math import comb

from ncpart.generate import nc_b, noncrossing_partitions
from ncpart.partitions import PartitionError, SetPartition, SignedPartition, refines
from ncpart.typeb import BPair, XBlock, XEdge, XEmpty, all_bpairs, classify_x, leq_pairs, psi, psi_inv


def test_figure_example():
    sigma = SetPartition(8, [[1, 2, 8], [3, 7], [4, 5], [6]])
    bp = BPair(sigma, XEdge(3, 7))
    pi = psi_inv(bp)
    assert psi(pi) == bp
    mixed = sorted(tuple(sorted(x for x in b if x > 0)) for b in pi.blocks if any(x < 0 for x in b) and any(x > 0 for x in b))
    assert mixed == [(1, 2), (3,), (7,), (8,)]


def test_bpair_validation():
    sigma = SetPartition(4, [[1, 3], [2], [4]])
    with pytest.raises(PartitionError):
        BPair(sigma, XEdge(1, 2))
    with pytest.raises(PartitionError):
        BPair(sigma, XBlock(3))


def test_top_and_bottom():
    assert psi(SignedPartition.full(3)) == BPair(SetPartition.full(3), XBlock(1))
    assert psi(SignedPartition.discrete(3)) == BPair(SetPartition.discrete(3), XEmpty())


@pytest.mark.parametrize("n", range(1, 6))
def test_psi_bijective(n):
    els = nc_b(n)
    images = {psi(p) for p in els}
    assert len(images) == len(els) == comb(2 * n, n)
    target = {bp for s in noncrossing_partitions(n) for bp in all_bpairs(s)}
    assert images == target


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, comb(2 * n, n) - 1))))
@settings(max_examples=150, deadline=None)
def test_psi_round_trip(arg):
    n, i = arg
    pi = nc_b(n)[i]
    bp = psi(pi)
    assert psi_inv(bp) == pi
    assert classify_x(pi) == bp.x


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, comb(2 * n, n) - 1), st.integers(0, comb(2 * n, n) - 1))))
@settings(max_examples=200, deadline=None)
def test_order_transfer(arg):
    n, i, j = arg
    a, b = nc_b(n)[i], nc_b(n)[j]
    assert leq_pairs(psi(a), psi(b)) == refines(a, b)


def test_json_round_trip():
    for p in nc_b(3):
        bp = psi(p)
        assert BPair.from_json(bp.to_json()) == bp
