"""Enumeration, filtered multichain counts and brute-vs-formula sweeps."""

import pytest

from ncpart import formulas as F
from ncpart.enumeration import (
    CountQuery,
    CountReport,
    FamilySpec,
    Ranges,
    ScaleError,
    armstrong_iso,
    count_multichains,
    enumerate_family,
    expected_size,
    param_tuples,
    query_for,
    summarize,
    type_vectors,
    verify,
    zeta,
)
from ncpart.partitions import PartitionError, SetPartition, TypeVector

SMALL = [
    FamilySpec("A", 4),
    FamilySpec("A", 3, 2),
    FamilySpec("B", 3),
    FamilySpec("B", 2, 2),
    FamilySpec("D", 3),
    FamilySpec("D", 2, 2),
    FamilySpec("AugA", 2, 2, 1),
    FamilySpec("AugA", 2, 3, 2),
    FamilySpec("TildeA", 3, 2),
    FamilySpec("TildeA", 5, 2),
]


def test_examples():
    assert len(enumerate_family(FamilySpec("A", 4))) == 14
    assert len(enumerate_family(FamilySpec("B", 2))) == 6
    aug = enumerate_family(FamilySpec("AugA", 1, 2, 1))
    assert set(aug) == {
        SetPartition(3, [[1, 2, 3]]),
        SetPartition(3, [[1, 2], [3]]),
        SetPartition(3, [[1, 3], [2]]),
        SetPartition(3, [[1], [2, 3]]),
    }
    tilde = enumerate_family(FamilySpec("TildeA", 3, 2))
    assert set(tilde) == {
        SetPartition(6, [[1, 2, 3, 4, 5, 6]]),
        SetPartition(6, [[1, 4], [2, 3], [5, 6]]),
        SetPartition(6, [[1, 2], [3, 6], [4, 5]]),
        SetPartition(6, [[1, 6], [2, 5], [3, 4]]),
    }


def test_chain_examples():
    assert count_multichains(CountQuery(FamilySpec("A", 3), 1, jumps=(1, 1))) == 3
    assert count_multichains(CountQuery(FamilySpec("A", 4), 1, jumps=(2, 1))) == 6
    assert zeta(FamilySpec("AugA", 1, 2, 1), 1) == 4
    assert zeta(FamilySpec("TildeA", 3, 2), 1) == 4
    assert zeta(FamilySpec("TildeA", 5, 2), 1) == 21


@pytest.mark.parametrize("spec", SMALL, ids=str)
def test_zeta_one_is_size_and_monotone(spec):
    els = enumerate_family(spec)
    assert zeta(spec, 1) == len(els)
    assert expected_size(spec) == len(els)
    vals = [zeta(spec, ell) for ell in (1, 2, 3)]
    assert vals == sorted(vals)


@pytest.mark.parametrize("spec", SMALL, ids=str)
def test_jump_vectors_partition_chains(spec):
    from ncpart.enumeration import compositions

    for ell in (1, 2):
        parts = sum(count_multichains(CountQuery(spec, ell, jumps=s)) for s in compositions(spec.max_rank, ell + 1))
        assert parts == zeta(spec, ell)


@pytest.mark.parametrize("n,k,ell", [(3, 1, 1), (3, 1, 2), (4, 1, 2), (2, 2, 2), (3, 2, 1)])
def test_type_d_decomposition(n, k, ell):
    """non-annular + annular = all, with both pieces against their closed forms."""
    from ncpart.enumeration import compositions

    spec = FamilySpec("D", n, k)
    for bs in type_vectors(n, lambda w: w == n):
        b = sum(bs)
        for rest in compositions(b, ell):
            s = (n - b, *rest)
            tv = TypeVector(bs)
            p = {"n": n, "k": k, "ell": ell, "s": list(s), "b": list(bs)}
            every = count_multichains(CountQuery(spec, ell, jumps=s, ktype1=tv))
            ann = count_multichains(CountQuery(spec, ell, jumps=s, ktype1=tv, annular=True))
            flat = count_multichains(CountQuery(spec, ell, jumps=s, ktype1=tv, annular=False))
            assert ann + flat == every
            assert ann == F.eval_formula("D-ANNULAR", p)
            assert every == F.eval_formula("THM-D", p)


def test_index_partitions_chains():
    spec = FamilySpec("B", 3)
    for ell in (1, 2, 3):
        total = sum(count_multichains(CountQuery(spec, ell, index=d)) for d in range(1, ell + 2))
        assert total == zeta(spec, ell)


def test_scale_guards(monkeypatch):
    with pytest.raises(ScaleError):
        enumerate_family(FamilySpec("A", 17))
    with pytest.raises(ScaleError):
        enumerate_family(FamilySpec("A", 16))  # Catalan(16) is over the family limit
    with pytest.raises(ScaleError):
        enumerate_family(FamilySpec("B", 5), max_ground_=8)
    monkeypatch.setenv("NCPART_MAX_GROUND", "4")
    with pytest.raises(ScaleError):
        enumerate_family(FamilySpec("A", 5))


def test_spec_validation():
    with pytest.raises(PartitionError):
        FamilySpec("AugA", 2, 2, 2)
    with pytest.raises(PartitionError):
        FamilySpec("A", 2, 1, 1)
    with pytest.raises(PartitionError):
        FamilySpec("D", 1)
    with pytest.raises(PartitionError):
        FamilySpec("TildeA", 3, 1)


def test_query_validation():
    spec = FamilySpec("A", 3)
    with pytest.raises(ValueError):
        CountQuery(spec, 0)
    with pytest.raises(ValueError):
        CountQuery(spec, 1, jumps=(1, 2))
    with pytest.raises(ValueError):
        CountQuery(spec, 1, jumps=(1, 1), ktype1=TypeVector([3]))
    with pytest.raises(ValueError):
        CountQuery(spec, 1, index=1)
    with pytest.raises(ValueError):
        CountQuery(FamilySpec("B", 3), 1, annular=True)


def test_report_json():
    r = verify("THM-A", Ranges(max_n=3, max_k=1, max_kn=3, max_l=1))
    assert r and all(x.match for x in r)
    js = r[0].to_json()
    assert set(js) == {"query", "params", "brute", "formula", "id", "match"}
    assert isinstance(js["brute"], str)
    again = query_for("THM-A", js["params"])
    assert again.to_json() == js["query"]
    assert not CountReport(r[0].query, 3).match


def test_mismatch_is_reported_not_raised():
    p = {"n": 3, "k": 1, "ell": 1, "s": [1, 1], "b": [1, 1]}
    (rep,) = verify("THM-A", params=[p])
    assert rep.match
    bad = summarize([CountReport(rep.query, 4, 3, "THM-A", p)])
    assert not bad["all_match"] and len(bad["mismatches"]) == 1


@pytest.mark.parametrize("fid", sorted(F.FORMULAS))
def test_every_formula_small_range(fid):
    rng = Ranges(max_n=3, max_k=2, max_kn=6, max_l=2)
    reports = verify(fid, rng)
    assert reports, fid
    assert summarize(reports)["all_match"], summarize(reports)["mismatches"][:3]


def test_param_tuples_admissible():
    for p in param_tuples("THM-D", Ranges(max_n=4, max_k=1, max_kn=4, max_l=2)):
        w = sum(i * x for i, x in enumerate(p["b"], 1))
        assert w != p["n"] - 1


@pytest.mark.parametrize("n,k,size", [(1, 1, 4), (2, 1, 21), (1, 2, 7)])
def test_armstrong(n, k, size):
    cert = armstrong_iso(n, k)
    assert cert.size == size
    assert cert.to_json()["size"] == size
