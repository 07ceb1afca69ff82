"""The bijection ψ from type-B noncrossing partitions to pointed type-A ones.

ψ(π) = (σ, x) where σ ∈ NC(n) and x is nothing, an edge of σ, or a block of σ.
Keeping σ and x together determines π, and comparisons between type-B
partitions can be read off the pairs (``leq_pairs``).
"""

from __future__ import annotations

from dataclasses import dataclass

from .partitions import (
    Block,
    Edge,
    PartitionError,
    SetPartition,
    SignedPartition,
    edges,
    is_noncrossing_A,
    is_noncrossing_B,
    partition_from_json,
    refines,
)


@dataclass(frozen=True)
class XEmpty:
    kind = "empty"

    def to_json(self):
        return {"kind": "empty", "value": None}


@dataclass(frozen=True)
class XEdge:
    i: int
    j: int
    kind = "edge"

    def to_json(self):
        return {"kind": "edge", "value": [self.i, self.j]}


@dataclass(frozen=True)
class XBlock:
    """A block of σ, identified by its minimum."""

    min: int
    kind = "block"

    def to_json(self):
        return {"kind": "block", "value": self.min}


X = XEmpty | XEdge | XBlock


@dataclass(frozen=True)
class BPair:
    sigma: SetPartition
    x: X

    def __post_init__(self):
        s, x = self.sigma, self.x
        if isinstance(x, XEdge) and Edge(x.i, x.j) not in edges(s):
            raise PartitionError(f"({x.i},{x.j}) is not an edge of {s}")
        if isinstance(x, XBlock) and s.block_of(x.min)[0] != x.min:
            raise PartitionError(f"{x.min} is not the minimum of a block of {s}")

    def block(self) -> Block:
        assert isinstance(self.x, XBlock)
        return self.sigma.block_of(self.x.min)

    def to_json(self):
        return {"sigma": self.sigma.to_json(), "x": self.x.to_json()}

    @classmethod
    def from_json(cls, obj):
        sigma = partition_from_json(obj["sigma"])
        xo = obj["x"]
        if xo["kind"] == "empty":
            x = XEmpty()
        elif xo["kind"] == "edge":
            x = XEdge(*xo["value"])
        else:
            x = XBlock(int(xo["value"]))
        return cls(sigma, x)


def psi(pi: SignedPartition) -> BPair:
    if not is_noncrossing_B(pi):
        raise PartitionError(f"{pi} is not noncrossing of type B")
    n = pi.n
    eta = []
    mixed = []
    for b in pi.blocks:
        pos = tuple(sorted(x for x in b if x > 0))
        if not pos:
            continue
        eta.append(pos)
        if any(x < 0 for x in b):
            mixed.append(pos)
    mixed.sort(key=max)
    for a, c in zip(mixed, mixed[1:]):
        assert max(a) < min(c), "blocks meeting negatives must be non-nested"
    m = len(mixed)
    merged = {mixed[i]: mixed[m - 1 - i] for i in range(m // 2)}
    blocks = [b for b in eta if b not in set(mixed)]
    blocks += [a + c for a, c in merged.items()]
    if m % 2:
        blocks.append(mixed[m // 2])
    sigma = SetPartition(n, blocks)
    if m == 0:
        x = XEmpty()
    elif m % 2 == 0:
        x = XEdge(max(mixed[m // 2 - 1]), min(mixed[m // 2]))
    else:
        x = XBlock(min(mixed[m // 2]))
    return BPair(sigma, x)


def psi_inv(p: BPair) -> SignedPartition:
    sigma, x = p.sigma, p.x
    n = sigma.n
    if isinstance(x, XEmpty):
        return SignedPartition.from_pairs(n, sigma.blocks)
    if isinstance(x, XEdge):
        lo, hi = x.i, x.j
        zero = ()
        rest = sigma.blocks
    else:
        zb = p.block()
        lo, hi = min(zb), max(zb)
        zero = zb
        rest = [b for b in sigma.blocks if b != zb]
    reps = []
    for a in rest:
        a1 = [y for y in a if y <= lo]
        a2 = [y for y in a if y >= hi]
        if a1 and a2:
            reps.append(a1 + [-y for y in a2])
        else:
            reps.append(list(a))
    return SignedPartition.from_pairs(n, reps, zero=zero)


def classify_x(pi: SignedPartition) -> X:
    """The x-component of ψ(π), read directly from π."""
    n = pi.n
    z = pi.zero_block
    if z is not None:
        return XBlock(min(y for y in z if y > 0))
    best = None
    for a in range(1, n + 1):
        blk = set(pi.block_of(a))
        for b in range(a + 1, n + 1):
            if -b in blk and (best is None or b - a < best[1] - best[0]):
                best = (a, b)
    return XEmpty() if best is None else XEdge(*best)


def _min_edge(sigma: SetPartition, cond):
    cands = [e for e in edges(sigma) if cond(e.i, e.j)]
    if not cands:
        return None
    cands.sort(key=lambda e: e.j - e.i)
    if len(cands) > 1:
        assert cands[0].j - cands[0].i < cands[1].j - cands[1].i, "minimal edge not unique"
    return XEdge(cands[0].i, cands[0].j)


def leq_pairs(p1: BPair, p2: BPair) -> bool:
    """ψ^{-1}(p1) <= ψ^{-1}(p2), decided on the pairs."""
    s1, x1, s2, x2 = p1.sigma, p1.x, p2.sigma, p2.x
    if s1.n != s2.n:
        raise PartitionError("leq_pairs: mismatched n")
    if not refines(s1, s2):
        return False
    if isinstance(x2, XEmpty):
        return isinstance(x1, XEmpty)
    if isinstance(x2, XEdge):
        a, b = x2.i, x2.j
        want = _min_edge(s1, lambda i, j: i <= a and b <= j)
        return x1 == (want if want is not None else XEmpty())
    blk = set(p2.block())
    if isinstance(x1, XBlock):
        return set(p1.block()) <= blk
    if isinstance(x1, XEdge) and x1.i in blk and x1.j in blk:
        return True
    lo, hi = min(blk), max(blk)
    want = _min_edge(s1, lambda i, j: i < lo and hi < j)
    return x1 == (want if want is not None else XEmpty())


def all_bpairs(sigma: SetPartition) -> list[BPair]:
    """The n+1 admissible x for a fixed σ."""
    assert is_noncrossing_A(sigma)
    out = [BPair(sigma, XEmpty())]
    out += [BPair(sigma, XEdge(e.i, e.j)) for e in sorted(edges(sigma), key=lambda e: (e.i, e.j))]
    out += [BPair(sigma, XBlock(b[0])) for b in sigma.blocks]
    return out
