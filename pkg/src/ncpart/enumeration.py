"""Family enumeration, filtered multichain counts and brute-vs-formula sweeps."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

import numpy as np

from . import formulas as F
from . import kernels
from .annulus import AnnulusPartition, annular_blocks, nc_d_annulus
from .generate import augmented_partitions, nc_b, noncrossing_partitions
from .partitions import (
    PartitionError,
    SetPartition,
    TypeVector,
    half_to_signed,
    k_type,
    rank_of,
    refines,
    rotate_half,
)
from .typeb import XBlock, leq_pairs, psi

DEFAULT_MAX_GROUND = 16
DEFAULT_MAX_FAMILY = 200_000


class ScaleError(RuntimeError):
    """Refusal to enumerate beyond the configured limits."""


def max_ground() -> int:
    return int(os.environ.get("NCPART_MAX_GROUND", DEFAULT_MAX_GROUND))


@dataclass(frozen=True)
class FamilySpec:
    family: str
    n: int
    k: int = 1
    r: int | None = None

    def __post_init__(self):
        fam, n, k, r = self.family, self.n, self.k, self.r
        if fam not in ("A", "B", "D", "AugA", "TildeA"):
            raise PartitionError(f"unknown family {fam!r}")
        if n < 1 or k < 1:
            raise PartitionError("n and k must be positive")
        if fam == "D" and n < 2:
            raise PartitionError("type D needs n >= 2")
        if fam == "AugA":
            if r is None or not 0 < r < k:
                raise PartitionError("AugA needs 0 < r < k")
        elif r not in (None, 0):
            raise PartitionError("r is only meaningful for AugA")
        if fam == "TildeA" and (k * n) % 2:
            raise PartitionError("TildeA needs an even ground set")

    @property
    def ground(self) -> int:
        """Number of points on the circle(s)."""
        if self.family in ("B", "D"):
            return 2 * self.k * self.n
        if self.family == "AugA":
            return self.k * self.n + self.r
        return self.k * self.n

    @property
    def max_rank(self) -> int:
        if self.family == "A":
            return self.n - 1
        if self.family == "TildeA":
            return self.n // 2
        return self.n

    def rank(self, pi) -> int:
        return rank_of(pi, self.family, self.k)

    def ktype(self, pi) -> TypeVector:
        if self.family == "AugA":
            return k_type(pi, self.k, skip_nondivisible=True)
        if self.family == "TildeA":
            return k_type(half_to_signed(pi), self.k)
        return k_type(pi, self.k)

    def has_zero(self, pi) -> bool:
        return pi.zero_block is not None

    def is_annular(self, pi) -> bool:
        return bool(annular_blocks(AnnulusPartition(self.n, self.k, pi)))

    def to_json(self) -> dict:
        out = {"family": self.family, "n": self.n, "k": self.k}
        if self.family == "AugA":
            out["r"] = self.r
        return out


def _guard(spec: FamilySpec, limit: int | None):
    limit = max_ground() if limit is None else limit
    if spec.ground > limit:
        raise ScaleError(f"ground set of {spec.ground} points exceeds the limit {limit} (raise --max-ground or NCPART_MAX_GROUND)")


@lru_cache(maxsize=128)
def _members(spec: FamilySpec) -> tuple:
    fam, n, k = spec.family, spec.n, spec.k
    if fam == "A":
        return noncrossing_partitions(k * n, k)
    if fam == "B":
        return nc_b(k * n, k)
    if fam == "D":
        return tuple(a.pi for a in nc_d_annulus(n, k))
    if fam == "AugA":
        return augmented_partitions(k * n + spec.r, k)
    # TildeA
    return tuple(p for p in noncrossing_partitions(k * n, k) if rotate_half(p) == p)


def expected_size(spec: FamilySpec) -> int | None:
    """Known cardinality, used to refuse oversized requests up front."""
    fam, n, k = spec.family, spec.n, spec.k
    if fam == "A":
        return comb((k + 1) * n, n) // (k * n + 1)
    if fam == "B":
        return comb((k + 1) * n, n)
    if fam == "D":
        return comb((k + 1) * (n - 1), n) + comb((k + 1) * (n - 1) + 1, n)
    if fam == "AugA":
        return comb(n + k * n + spec.r, n)
    if k % 2 == 0 and n % 2 == 1:
        h = n // 2
        return comb(h + k * h + k // 2, h)
    return None


def enumerate_family(spec: FamilySpec, max_ground_: int | None = None, max_family: int = DEFAULT_MAX_FAMILY) -> tuple:
    _guard(spec, max_ground_)
    est = expected_size(spec)
    if est is not None and est > max_family:
        raise ScaleError(f"family would have {est} elements, above the limit {max_family} (raise --max-family)")
    out = _members(spec)
    if len(out) > max_family:
        raise ScaleError(f"family has {len(out)} elements, above the limit {max_family}")
    return out


@lru_cache(maxsize=128)
def _leq_matrix(spec: FamilySpec) -> np.ndarray:
    els = _members(spec)
    if not els:
        return np.zeros((0, 0), dtype=np.uint8)
    return kernels.refinement_matrix([e.labels() for e in els])


@dataclass(frozen=True)
class CountQuery:
    spec: FamilySpec
    ell: int
    jumps: tuple[int, ...] | None = None
    ktype1: TypeVector | None = None
    index: int | None = None
    annular: bool | None = None

    def __post_init__(self):
        if self.ell < 1:
            raise ValueError("ℓ must be at least 1")
        if self.jumps is not None:
            object.__setattr__(self, "jumps", tuple(int(x) for x in self.jumps))
            if len(self.jumps) != self.ell + 1:
                raise ValueError("need ℓ+1 rank jumps")
            if sum(self.jumps) != self.spec.max_rank:
                raise ValueError(f"rank jumps must sum to {self.spec.max_rank}")
            if self.ktype1 is not None and self.spec.family != "TildeA":
                if self.jumps[0] != self.spec.n - self.ktype1.b:
                    raise ValueError("s_1 must equal n - b")
        if self.index is not None:
            if self.spec.family != "B":
                raise ValueError("the zero-block index filter applies to family B only")
            if not 1 <= self.index <= self.ell + 1:
                raise ValueError("index must lie in 1..ℓ+1")
        if self.annular is not None and self.spec.family != "D":
            raise ValueError("the annular filter applies to family D only")

    def to_json(self) -> dict:
        out = {"spec": self.spec.to_json(), "ell": self.ell}
        if self.jumps is not None:
            out["jumps"] = list(self.jumps)
        if self.ktype1 is not None:
            out["ktype1"] = list(self.ktype1.counts)
        if self.index is not None:
            out["index"] = self.index
        if self.annular is not None:
            out["annular"] = self.annular
        return out


def _masks(q: CountQuery, els, extra=None) -> np.ndarray:
    spec, ell = q.spec, q.ell
    N = len(els)
    masks = np.ones((ell, N), dtype=np.uint8)
    if q.jumps is not None:
        ranks = np.array([spec.rank(e) for e in els])
        acc = 0
        for t in range(ell):
            acc += q.jumps[t]
            masks[t] &= (ranks == acc).astype(np.uint8)
    if q.ktype1 is not None:
        masks[0] &= np.array([spec.ktype(e) == q.ktype1 for e in els], dtype=np.uint8)
    if q.index is not None:
        zero = np.array([spec.has_zero(e) for e in els], dtype=np.uint8)
        for t in range(ell):
            if t < q.index - 1:
                masks[t] &= 1 - zero
            elif t == q.index - 1:
                masks[t] &= zero
    if extra is not None:
        for t in range(ell):
            masks[t] &= extra
    return masks


def count_multichains(q: CountQuery, max_ground_: int | None = None) -> int:
    els = enumerate_family(q.spec, max_ground_)
    leq = _leq_matrix(q.spec)
    if not els:
        return 0
    total = kernels.chain_count(leq, _masks(q, els))
    if q.annular is None:
        return total
    flat = np.array([not q.spec.is_annular(e) for e in els], dtype=np.uint8)
    none = kernels.chain_count(leq, _masks(q, els, flat))
    return total - none if q.annular else none


def zeta(spec: FamilySpec, ell: int, max_ground_: int | None = None) -> int:
    return count_multichains(CountQuery(spec, ell), max_ground_)


# verification sweeps ----------------------------------------------------------

@dataclass
class CountReport:
    query: CountQuery
    brute: int
    formula: int | None = None
    formula_id: str | None = None
    params: dict = field(default_factory=dict)

    @property
    def match(self) -> bool:
        return self.formula is not None and self.brute == self.formula

    def to_json(self) -> dict:
        return {
            "query": self.query.to_json(),
            "params": self.params,
            "brute": str(self.brute),
            "formula": None if self.formula is None else str(self.formula),
            "id": self.formula_id,
            "match": self.match,
        }


def compositions(total: int, parts: int):
    """Weak compositions of ``total`` into ``parts`` parts."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def type_vectors(n: int, weight_ok) -> list[tuple[int, ...]]:
    """All (b_1..b_n) with ``weight_ok(Σ i·b_i)``."""
    out = []

    def rec(i, left, acc):
        if i > n:
            if weight_ok(n - left):
                out.append(tuple(acc))
            return
        for c in range(left // i + 1):
            rec(i + 1, left - c * i, acc + [c])

    rec(1, n, [])
    return out


@dataclass(frozen=True)
class Ranges:
    max_n: int = 4
    max_k: int = 2
    max_kn: int = 6
    max_l: int = 2
    min_n: int = 1
    combos: frozenset | None = None  # optional whitelist of (n, k, ℓ)

    def admits(self, params: dict) -> bool:
        if self.combos is None:
            return True
        return (params["n"], params.get("k", 1), params.get("ell", 1)) in self.combos


_FAMILY_OF = {
    "EQ-1": "A", "EQ-8": "A", "EQ-12": "A", "THM-A": "A",
    "EQ-2": "B", "EQ-9": "B", "EQ-13": "B", "EQ-14": "B", "THM-B": "B", "INDEX": "B",
    "EQ-7": "D", "EQ-10": "D", "EQ-11": "D", "THM-D": "D", "D-ANNULAR": "D",
    "AUG-TYPE": "AugA", "AUG-RANK": "AugA", "AUG-ZETA": "AugA",
    "TILDE-TYPE": "TildeA", "TILDE-RANK": "TildeA", "TILDE-ZETA": "TildeA",
}
_K1 = {"EQ-7", "EQ-8", "EQ-9", "EQ-10", "EQ-11", "EQ-14"}


def query_for(fid: str, params: dict) -> CountQuery:
    """The brute-force query matching a formula's parameter tuple."""
    fid = F.normalize_id(fid)
    fam = _FAMILY_OF[fid]
    n, k, ell = int(params["n"]), int(params.get("k", 1)), int(params.get("ell", 1))
    if fid in _K1 and k != 1:
        raise F.HypothesisError(f"{fid} is stated for k = 1")
    if fam == "AugA":
        spec = FamilySpec(fam, n, k, int(params["r"]))
    elif fam == "TildeA":
        spec = FamilySpec(fam, 2 * n + 1, 2 * k)
    else:
        spec = FamilySpec(fam, n, k)
    s = params.get("s")
    tv = TypeVector(params["b"]) if "b" in params else None
    return CountQuery(
        spec,
        ell,
        jumps=tuple(s) if s is not None else None,
        ktype1=tv,
        index=params.get("d") if fid in ("INDEX", "EQ-14") else None,
        annular=True if fid == "D-ANNULAR" else None,
    )


def _weight_rule(fid: str, n: int):
    if fid in ("EQ-8", "EQ-12", "THM-A", "EQ-11", "D-ANNULAR"):
        return lambda w: w == n
    if fid == "EQ-10":
        return lambda w: w <= n - 2
    if fid == "THM-D":
        return lambda w: w <= n and w != n - 1
    return lambda w: w <= n


def _nk_for(fid: str, rng: Ranges):
    fam = _FAMILY_OF[fid]
    min_n = 2 if fam == "D" else 1
    if fam == "AugA":
        for k in range(2, rng.max_k + 1):
            for r in range(1, k):
                for n in range(rng.min_n, rng.max_n + 1):
                    if k * n + r <= rng.max_kn:
                        yield {"n": n, "k": k, "r": r}
    elif fam == "TildeA":
        for k in range(1, rng.max_k + 1):
            for n in range(rng.min_n, rng.max_n + 1):
                if 2 * k * (2 * n + 1) <= rng.max_kn:
                    yield {"n": n, "k": k}
    else:
        ks = [1] if fid in _K1 else range(1, rng.max_k + 1)
        for k in ks:
            for n in range(max(min_n, rng.min_n), rng.max_n + 1):
                if k * n <= rng.max_kn:
                    yield {"n": n, "k": k}


def param_tuples(fid: str, rng: Ranges):
    """Every admissible parameter tuple of a formula inside the ranges."""
    fid = F.normalize_id(fid)
    fam = _FAMILY_OF[fid]
    ells = [1] if fid in ("EQ-8", "EQ-9", "EQ-10", "EQ-11") else range(1, rng.max_l + 1)
    for base in _nk_for(fid, rng):
        n = base["n"]
        top = n - 1 if fam == "A" else n
        for ell in ells:
            p = dict(base, ell=ell)
            if fid in ("EQ-1", "EQ-2", "EQ-7", "EQ-14", "AUG-RANK", "TILDE-RANK"):
                for s in compositions(top, ell + 1):
                    if fid == "EQ-14":
                        for d in range(1, ell + 2):
                            yield dict(p, s=list(s), d=d)
                    else:
                        yield dict(p, s=list(s))
            elif fid in ("AUG-ZETA", "TILDE-ZETA"):
                yield p
            elif fid in ("EQ-8", "EQ-9", "EQ-10", "EQ-11"):
                for bs in type_vectors(n, _weight_rule(fid, n)):
                    yield {"n": n, "b": list(bs)}
            elif fid in ("EQ-12", "EQ-13"):
                for bs in type_vectors(n, _weight_rule(fid, n)):
                    yield dict(p, b=list(bs))
            else:
                for bs in type_vectors(n, _weight_rule(fid, n)):
                    b = sum(bs)
                    if fam == "A" and b == 0:
                        continue
                    w = sum(i * x for i, x in enumerate(bs, 1))
                    for rest in compositions(top - (n - b), ell):
                        q = dict(p, s=[n - b, *rest], b=list(bs))
                        if fid == "INDEX":
                            for d in ([1] if w < n else range(2, ell + 2)):
                                yield dict(q, d=d)
                        else:
                            yield q


def check_tuple(fid: str, params: dict, max_ground_: int | None = None) -> CountReport:
    q = query_for(fid, params)
    brute = count_multichains(q, max_ground_)
    try:
        val = F.eval_formula(fid, params)
    except F.HypothesisError:
        val = None
    return CountReport(q, brute, val, F.normalize_id(fid), params)


def verify(fid: str, rng: Ranges = Ranges(), max_ground_: int | None = None, params: list | None = None) -> list[CountReport]:
    """Brute force against the closed form on every tuple in range (or on
    the explicit ``params`` list).  Mismatches are reported, never raised."""
    fid = F.normalize_id(fid)
    tuples = params if params is not None else [p for p in param_tuples(fid, rng) if rng.admits(p)]
    return [check_tuple(fid, p, max_ground_) for p in tuples]


def summarize(reports: list[CountReport]) -> dict:
    bad = [r for r in reports if not r.match]
    return {
        "tuples": len(reports),
        "matched": len(reports) - len(bad),
        "all_match": not bad,
        "mismatches": [r.to_json() for r in bad],
    }


# rotation-fixed poset vs augmented poset -----------------------------------------

@dataclass
class IsoCertificate:
    n: int
    k: int
    pairs: list[tuple[SetPartition, SetPartition]]
    size: int

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "size": self.size,
            "pairs": [[[list(b) for b in a.blocks], [list(b) for b in s.blocks]] for a, s in self.pairs],
        }


def armstrong_iso(n: int, k: int, max_ground_: int | None = None) -> IsoCertificate:
    """Certify the rotation-fixed 2k-divisible poset on [2k(2n+1)] is
    isomorphic to NC^{(2k)}(n;k) through π ↦ first component of ψ(π)."""
    tilde = FamilySpec("TildeA", 2 * n + 1, 2 * k)
    aug = FamilySpec("AugA", n, 2 * k, k)
    T = enumerate_family(tilde, max_ground_)
    A = enumerate_family(aug, max_ground_)
    pairs = []
    images = {}
    for pi in T:
        sp = half_to_signed(pi)
        bp = psi(sp)
        assert isinstance(bp.x, XBlock), "the zero block must map to a block"
        sigma = bp.sigma
        assert sigma in set(A), f"{sigma} is not in the augmented poset"
        assert k_type(sp, 2 * k) == aug.ktype(sigma), "k-type not preserved"
        images[pi] = (sigma, bp)
        pairs.append((pi, sigma))
    assert len({s for _, s in pairs}) == len(T) == len(A), "not a bijection"
    for p1 in T:
        for p2 in T:
            s1, b1 = images[p1]
            s2, b2 = images[p2]
            want = refines(p1, p2)
            assert refines(s1, s2) == want, "order not preserved"
            assert leq_pairs(b1, b2) == want
    top_t = SetPartition.full(tilde.ground)
    top_a = SetPartition.full(aug.ground)
    assert dict(pairs).get(top_t) == top_a, "maximum not sent to maximum"
    return IsoCertificate(n, k, pairs, len(T))


def clear_caches() -> None:
    """Drop every memoized family and comparability matrix."""
    from . import generate as G

    for fn in (_members, _leq_matrix, G.noncrossing_partitions, G.nc_b, G.nc_d_circular, G.augmented_partitions):
        fn.cache_clear()
