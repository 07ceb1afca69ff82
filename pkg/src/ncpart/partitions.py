"""Partition types for families A, B and D, with crossing tests, order and types.

Cyclic conventions used everywhere:

* type A on ``[m]``: the circle reads 1, 2, ..., m;
* type B on ``±[n]``: the circle reads 1, ..., n, -1, ..., -n;
* type D on ``±[n]`` (circular picture): ±1..±(n-1) on the circle in type-B
  order, ±n at the centre.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import kernels

Block = tuple[int, ...]


class PartitionError(ValueError):
    """Malformed partition, mismatched ground sets or wrong family."""


@dataclass(frozen=True)
class TypeVector:
    """Block-size census (b; b_1, b_2, ...).  Trailing zeros are not significant."""

    counts: tuple[int, ...]

    def __init__(self, counts: Iterable[int]):
        c = [int(x) for x in counts]
        if any(x < 0 for x in c):
            raise PartitionError("type entries must be nonnegative")
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "counts", tuple(c))

    @property
    def b(self) -> int:
        return sum(self.counts)

    @property
    def weight(self) -> int:
        """Σ i·b_i."""
        return sum(i * c for i, c in enumerate(self.counts, 1))

    def padded(self, n: int) -> list[int]:
        if len(self.counts) > n:
            raise PartitionError(f"type {self} does not fit length {n}")
        return list(self.counts) + [0] * (n - len(self.counts))

    def __str__(self) -> str:
        return f"({self.b}; {', '.join(map(str, self.counts)) or '0'})"


@dataclass(frozen=True)
class Edge:
    i: int
    j: int


def _sorted_blocks(blocks, key):
    return tuple(sorted((tuple(sorted(b, key=key)) for b in blocks), key=lambda b: key(b[0])))


class SetPartition:
    """Partition of ``[n]``; blocks sorted ascending and ordered by minimum."""

    __slots__ = ("n", "blocks", "_labels")

    def __init__(self, n: int, blocks: Iterable[Iterable[int]]):
        n = int(n)
        bl = [tuple(int(x) for x in b) for b in blocks]
        if any(len(b) == 0 for b in bl):
            raise PartitionError("empty block")
        flat = sorted(x for b in bl for x in b)
        if flat != list(range(1, n + 1)):
            raise PartitionError(f"blocks do not partition [1..{n}]")
        self.n = n
        self.blocks: tuple[Block, ...] = _sorted_blocks(bl, key=lambda x: x)
        lab = [0] * n
        for idx, b in enumerate(self.blocks):
            for x in b:
                lab[x - 1] = idx
        self._labels = tuple(lab)

    @classmethod
    def discrete(cls, n: int) -> "SetPartition":
        return cls(n, [[i] for i in range(1, n + 1)])

    @classmethod
    def full(cls, n: int) -> "SetPartition":
        return cls(n, [range(1, n + 1)])

    def labels(self) -> tuple[int, ...]:
        """Block index of each element 1..n."""
        return self._labels

    def block_of(self, x: int) -> Block:
        return self.blocks[self._labels[x - 1]]

    def __eq__(self, other):
        return isinstance(other, SetPartition) and self.n == other.n and self.blocks == other.blocks

    def __hash__(self):
        return hash(("A", self.n, self.blocks))

    def __lt__(self, other):
        return (self.n, self.blocks) < (other.n, other.blocks)

    def __repr__(self):
        return "{" + ", ".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks) + "}"

    def to_json(self, family: str = "A", k: int = 1, r: int = 0) -> dict:
        return partition_to_json(self, family, k, r)


def _signed_pos(x: int, n: int) -> int:
    """0-based position of x on the type-B circle 1..n, -1..-n."""
    return x - 1 if x > 0 else n - x - 1


class SignedPartition:
    """Partition of ``±[n]`` closed under negation with at most one zero block.

    Blocks are stored in full (both B and -B).  Inside a block elements follow
    the type-B circle; blocks are ordered by their first circle position, so a
    pair's representative (the block holding +m, m the least absolute value)
    always precedes its negative.
    """

    __slots__ = ("n", "blocks", "_labels")

    def __init__(self, n: int, blocks: Iterable[Iterable[int]]):
        n = int(n)
        key = lambda x: _signed_pos(x, n)  # noqa: E731
        bl = [tuple(int(x) for x in b) for b in blocks]
        if any(len(b) == 0 for b in bl):
            raise PartitionError("empty block")
        flat = sorted(x for b in bl for x in b)
        if flat != sorted(list(range(1, n + 1)) + list(range(-n, 0))):
            raise PartitionError(f"blocks do not partition ±[1..{n}]")
        sets = {frozenset(b) for b in bl}
        zero = 0
        for s in sets:
            neg = frozenset(-x for x in s)
            if neg not in sets:
                raise PartitionError("not closed under negation")
            zero += neg == s
        if zero > 1:
            raise PartitionError("more than one zero block")
        self.n = n
        self.blocks: tuple[Block, ...] = _sorted_blocks(bl, key=key)
        lab = [0] * (2 * n)
        for idx, b in enumerate(self.blocks):
            for x in b:
                lab[key(x)] = idx
        self._labels = tuple(lab)

    @classmethod
    def from_pairs(cls, n: int, reps: Iterable[Iterable[int]], zero: Iterable[int] = ()) -> "SignedPartition":
        """Build from one representative per ± pair plus an optional zero block.

        ``zero`` lists the positive (or any) members; it is symmetrised.
        """
        blocks = []
        for r in reps:
            r = list(r)
            blocks.append(r)
            blocks.append([-x for x in r])
        z = set(zero) | {-x for x in zero}
        if z:
            blocks.append(sorted(z))
        return cls(n, blocks)

    @classmethod
    def discrete(cls, n: int) -> "SignedPartition":
        return cls.from_pairs(n, [[i] for i in range(1, n + 1)])

    @classmethod
    def full(cls, n: int) -> "SignedPartition":
        return cls.from_pairs(n, [], zero=range(1, n + 1))

    def labels(self) -> tuple[int, ...]:
        """Block index of each element in circle order 1..n, -1..-n."""
        return self._labels

    def block_of(self, x: int) -> Block:
        return self.blocks[self._labels[_signed_pos(x, self.n)]]

    @property
    def zero_block(self) -> Block | None:
        for b in self.blocks:
            if -b[0] in b:
                return b
        return None

    def pairs(self) -> list[Block]:
        """One representative per nonzero ± pair (the block containing +min|x|)."""
        out = []
        for b in self.blocks:
            m = min(b, key=abs)
            if -m in b:
                continue
            if m > 0:
                out.append(b)
        return out

    @property
    def nz(self) -> int:
        return len(self.pairs())

    def __eq__(self, other):
        return isinstance(other, SignedPartition) and self.n == other.n and self.blocks == other.blocks

    def __hash__(self):
        return hash(("B", self.n, self.blocks))

    def __lt__(self, other):
        return (self.n, self._labels) < (other.n, other._labels)

    def __repr__(self):
        parts = ["±{" + ",".join(map(str, b)) + "}" for b in self.pairs()]
        z = self.zero_block
        if z is not None:
            parts.append("{" + ",".join(map(str, z)) + "}")
        return "{" + ", ".join(parts) + "}"

    def to_json(self, family: str = "B", k: int = 1) -> dict:
        return partition_to_json(self, family, k)


def partition_to_json(pi, family: str | None = None, k: int = 1, r: int = 0) -> dict:
    """JSON form; ``n`` is the family parameter, so the ground set is k·n (+r)."""
    if family is None:
        family = "A" if isinstance(pi, SetPartition) else "B"
    ground = pi.n
    obj = {"family": family, "n": (ground - r) // k, "k": k}
    if family == "AugA":
        obj["r"] = r
    obj["blocks"] = [list(b) for b in pi.blocks]
    return obj


def partition_from_json(obj: dict):
    fam = obj.get("family", "A")
    k = int(obj.get("k", 1))
    ground = int(obj["n"]) * k + int(obj.get("r", 0))
    if fam in ("A", "AugA", "TildeA"):
        return SetPartition(ground, obj["blocks"])
    if fam in ("B", "D"):
        return SignedPartition(ground, obj["blocks"])
    raise PartitionError(f"unknown family {fam!r}")


# crossing tests ---------------------------------------------------------

def _relabel(seq):
    ids = {}
    return [ids.setdefault(b, len(ids)) for b in seq]


def is_noncrossing_labels(labels: Sequence[int]) -> bool:
    """Crossing test on a cyclic sequence of block labels."""
    if len(labels) <= 3:
        return True
    return kernels.noncrossing(_relabel(labels))


def is_noncrossing_A(pi: SetPartition) -> bool:
    return is_noncrossing_labels(pi.labels())


def is_noncrossing_B(pi: SignedPartition) -> bool:
    return is_noncrossing_labels(pi.labels())


def _gap_index(positions: Sequence[int], p: int) -> int:
    """Gap g is the arc after positions[g]; the last gap wraps around."""
    g = len(positions) - 1
    for i, q in enumerate(positions):
        if q < p:
            g = i
    return g


def covered_blocks(blocks: Sequence[Sequence[int]], pos) -> set[int]:
    """Indices of blocks lying in a non-central gap of another block.

    ``blocks`` is a noncrossing, negation-closed family without a zero block
    on a circle; ``pos`` maps an element to its
    circle position.  The central gap of C is the gap holding -C.
    """
    out = set()
    for ci, c in enumerate(blocks):
        cp = sorted(pos(x) for x in c)
        central = _gap_index(cp, pos(-c[0]))
        for ai, a in enumerate(blocks):
            if ai == ci:
                continue
            g = _gap_index(cp, pos(a[0]))
            if g != central:
                out.add(ai)
    return out


def _outer_restriction(pi: SignedPartition, m: int) -> list[tuple[int, ...]]:
    out = []
    for b in pi.blocks:
        r = tuple(x for x in b if abs(x) <= m)
        if r:
            out.append(r)
    return out


def is_noncrossing_D(pi: SignedPartition) -> bool:
    """Type-D test on the circle ±1..±(n-1) with ±n at the centre."""
    n = pi.n
    if n < 2:
        raise PartitionError("type D needs n >= 2")
    m = n - 1
    outer = _outer_restriction(pi, m)
    lab = [0] * (2 * m)
    for i, b in enumerate(outer):
        for x in b:
            lab[_signed_pos(x, m)] = i
    if not is_noncrossing_labels(lab):
        return False
    z = pi.zero_block
    if z is not None:
        # the centre must lie inside the zero block, with outer points on both sides
        return n in z and len(z) > 2
    c = pi.block_of(n)
    co = tuple(x for x in c if x != n)
    if not co:
        return True
    # the cone from the centre to C must not pass under another block
    idx = outer.index(co)
    return idx not in covered_blocks(outer, lambda x: _signed_pos(x, m))


# order, types, ranks ----------------------------------------------------

def refines(p1, p2) -> bool:
    """p1 <= p2: every block of p1 lies inside a block of p2."""
    if type(p1) is not type(p2) or p1.n != p2.n:
        raise PartitionError("refines: mismatched ground sets")
    l1, l2 = p1.labels(), p2.labels()
    rep = {}
    for e, b in enumerate(l1):
        if rep.setdefault(b, l2[e]) != l2[e]:
            return False
    return True


def _sizes(pi) -> list[int]:
    if isinstance(pi, SetPartition):
        return [len(b) for b in pi.blocks]
    return [len(b) for b in pi.pairs()]


def type_of(pi) -> TypeVector:
    """Blocks (type A) or nonzero ± pairs (types B/D) counted by size."""
    n = pi.n
    c = [0] * n
    for s in _sizes(pi):
        c[s - 1] += 1
    return TypeVector(c)


def k_type(pi, k: int, skip_nondivisible: bool = False) -> TypeVector:
    """Sizes divided by k.  ``skip_nondivisible`` drops the one odd block of an
    augmented partition instead of raising."""
    c = [0] * max(pi.n // k, 1)
    for s in _sizes(pi):
        if s % k:
            if skip_nondivisible:
                continue
            raise PartitionError(f"block size {s} not divisible by k={k}")
        c[s // k - 1] += 1
    return TypeVector(c)


FAMILIES = ("A", "B", "D", "AugA", "TildeA")


def rank_of(pi, family: str, k: int = 1) -> int:
    """Rank in the named family; ``n`` is recovered from the ground set."""
    if family == "A":
        _need(isinstance(pi, SetPartition) and pi.n % k == 0, family)
        return pi.n // k - len(pi.blocks)
    if family in ("B", "D"):
        _need(isinstance(pi, SignedPartition) and pi.n % k == 0, family)
        return pi.n // k - pi.nz
    if family == "AugA":
        _need(isinstance(pi, SetPartition) and k > 1 and pi.n % k != 0, family)
        return pi.n // k - sum(1 for b in pi.blocks if len(b) % k == 0)
    if family == "TildeA":
        _need(isinstance(pi, SetPartition) and pi.n % 2 == 0, family)
        return (pi.n // k) // 2 - sum(1 for b in pi.blocks if not _rot_invariant(b, pi.n)) // 2
    raise PartitionError(f"unknown family {family!r}")


def _need(cond, family):
    if not cond:
        raise PartitionError(f"partition is not in family {family}")


def _rot_invariant(block, m):
    h = m // 2
    s = set(block)
    return all((x + h - 1) % m + 1 in s for x in block)


def rotate_half(pi: SetPartition) -> SetPartition:
    m = pi.n
    if m % 2:
        raise PartitionError("rotate_half needs an even ground set")
    h = m // 2
    return SetPartition(m, [[(x + h - 1) % m + 1 for x in b] for b in pi.blocks])


def half_to_signed(pi: SetPartition) -> SignedPartition:
    """Read a rotation-fixed partition of [2M] as a type-B partition of ±[M]."""
    M = pi.n // 2
    return SignedPartition(M, [[x if x <= M else -(x - M) for x in b] for b in pi.blocks])


def edges(pi: SetPartition) -> set[Edge]:
    return {Edge(b[t], b[t + 1]) for b in pi.blocks for t in range(len(b) - 1)}
