"""The annulus model of k-divisible type-D partitions, τ_D and τ_D′."""

from math import comb

import pytest

from ncpart.annulus import (
    AnnulusPartition,
    annular_blocks,
    check_PD,
    find_dparen,
    is_member_NCkD,
    nc_d_annulus,
    pd_states,
    tau_D,
    tau_D_prime,
    tau_D_prime_inv,
)
from ncpart.generate import nc_d_circular
from ncpart.paren import MembershipError, ParenError, ParenState
from ncpart.partitions import SignedPartition

from_pairs = SignedPartition.from_pairs


def ap(reps, zero=()):
    return AnnulusPartition(5, 4, SignedPartition.from_pairs(20, reps, zero))


FIG7L = AnnulusPartition(5, 4, from_pairs(20, [[1, 2, 3, 4], [5, 6, 11, 12], [7, 8, 9, 10], [13, 14, 15, 16], [17, 18, 19, 20]]))
EQ26 = ap([[1, 2, 3, 4, -13, -14, -15, -16], [5, 6, 11, 12, 17, 18, 19, 20], [7, 8, 9, 10]])
EQ27 = ap([[1, 2, -16, -19], [3, 4, 5, 6], [7, 8, -17, -18], [9, 14, 15, 20], [10, 11, 12, 13]])
EQ28 = ap([[1, 2, 3, 4, 5, 6, -16, -19], [7, 8, 9, 14, 15, 20, -17, -18], [10, 11, 12, 13]])


def fuss_d(n, k):
    return comb((k + 1) * (n - 1), n) + comb((k + 1) * (n - 1) + 1, n)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_k1_agrees_with_circular_model(n):
    assert {a.pi for a in nc_d_annulus(n, 1)} == set(nc_d_circular(n))


@pytest.mark.parametrize("n,k", [(2, 2), (3, 2), (2, 3), (4, 1)])
def test_family_sizes(n, k):
    assert len(nc_d_annulus(n, k)) == fuss_d(n, k)


def test_figure_partitions_are_members():
    for a in (FIG7L, EQ26, EQ27, EQ28):
        assert is_member_NCkD(a)
    assert not annular_blocks(FIG7L)
    assert len(annular_blocks(EQ27)) == 6
    assert len(annular_blocks(EQ28)) == 4


@pytest.mark.parametrize(
    "P,plus",
    [
        (ParenState(16, [7, 13], [[4, 10, 12]], {12: 4}), EQ26),
        (ParenState(16, [3, 10], [[2, 6, 8, 13, 15]], {2: 1, 8: 2, 15: 1}), EQ27),
        (ParenState(16, [10], [[6, 13, 15]], {6: 1, 15: 3}), EQ28),
    ],
)
def test_tau_D_worked_cases(P, plus):
    img = tau_D(P, 5, 4)
    assert img[0] == plus
    assert len(img) == 2 and img[1] == plus.inner_negated()
    assert find_dparen(plus) == P


def test_tau_D_prime_worked_chains():
    Y = ParenState(16, [3, 10], [[6, 8], [6, 13, 15]], {6: 1, 8: 2, 15: 1})
    assert tau_D_prime(Y, 1, 5, 4) == [EQ27, EQ28]
    assert tau_D_prime_inv([EQ27, EQ28]) == (Y, 1)
    X = ParenState(16, [1, 5, 7, 13], [[4, 12], [4, 10, 12]], {12: 4})
    assert tau_D_prime(X, 1, 5, 4) == [FIG7L, EQ26]
    assert tau_D_prime_inv([FIG7L, EQ26]) == (X, 1)


def test_find_dparen_domain():
    with pytest.raises(MembershipError):
        find_dparen(FIG7L)


def test_check_PD_rejects():
    with pytest.raises(ParenError):
        check_PD(ParenState(4, [1, 3], [[2, 4]]), 3, 2)  # fully matched with no free integer
    with pytest.raises(ParenError):
        check_PD(ParenState(4, [], [[2]], {2: 1}), 3, 2)  # f must sum to k


@pytest.mark.parametrize("n,k", [(3, 1), (4, 1), (2, 2), (3, 2)])
def test_tau_D_injective_and_onto_reachable(n, k):
    seen = []
    for P in pd_states(n, k, 1):
        seen += tau_D(P, n, k)
    assert len(seen) == len(set(seen))
    reachable = {a for a in nc_d_annulus(n, k) if a.pi.zero_block is not None or annular_blocks(a)}
    assert set(seen) == reachable


@pytest.mark.parametrize("n,k,ell", [(3, 1, 1), (3, 1, 2), (2, 2, 2), (4, 1, 2)])
def test_tau_D_prime_round_trip(n, k, ell):
    for P in pd_states(n, k, ell, barred=True):
        for eps in (1, -1):
            assert tau_D_prime_inv(tau_D_prime(P, eps, n, k)) == (P, eps)


def test_json_round_trip():
    assert AnnulusPartition.from_json(EQ27.to_json()) == EQ27
