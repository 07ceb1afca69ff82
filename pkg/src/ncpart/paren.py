"""Cyclic parenthesizations and the bijections τ, τ′.

A state (L, R_1, ..., R_ℓ) puts a left parenthesis before each i ∈ L and
right parentheses after each i ∈ R_j, ordered by increasing label j, on the
cyclic sequence 1..n.  Matching is done on a periodic unrolling of that
sequence, so wrap-around needs no special case.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb

from .partitions import (
    Block,
    PartitionError,
    SetPartition,
    TypeVector,
    is_noncrossing_A,
    refines,
)


class ParenError(ValueError):
    pass


class CardinalityError(ParenError):
    """Too many left parentheses, or unmatched ones where none are allowed."""


class RangeError(ParenError):
    """An element outside [n]."""


class MembershipError(ParenError):
    """The state is well formed but outside the required domain."""


RightKey = tuple[int, int]  # (element, label)


@dataclass(frozen=True)
class ParenState:
    n: int
    L: tuple[int, ...]
    Rs: tuple[tuple[int, ...], ...]
    f: tuple[tuple[int, int], ...] | None = None

    def __init__(self, n, L, Rs, f=None):
        n = int(n)
        L = tuple(sorted(int(x) for x in L))
        Rs = tuple(tuple(sorted(int(x) for x in R)) for R in Rs)
        for x in itertools.chain(L, *Rs):
            if not 1 <= x <= n:
                raise RangeError(f"element {x} outside [1..{n}]")
        if len(set(L)) != len(L) or any(len(set(R)) != len(R) for R in Rs):
            raise RangeError("repeated element in L or some R_i")
        if len(L) > sum(len(R) for R in Rs):
            raise CardinalityError(f"|L|={len(L)} exceeds the number of right parentheses")
        if f is not None:
            f = tuple(sorted((int(a), int(v)) for a, v in dict(f).items()))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "L", L)
        object.__setattr__(self, "Rs", Rs)
        object.__setattr__(self, "f", f)

    @property
    def ell(self) -> int:
        return len(self.Rs)

    @property
    def fmap(self) -> dict[int, int]:
        return dict(self.f or ())

    def rights(self) -> list[RightKey]:
        return sorted((r, j) for j, R in enumerate(self.Rs, 1) for r in R)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "L": list(self.L),
            "Rs": [list(R) for R in self.Rs],
            "f": None if self.f is None else {str(a): v for a, v in self.f},
        }

    @classmethod
    def from_json(cls, obj) -> "ParenState":
        f = obj.get("f")
        if f is not None:
            f = {int(a): int(v) for a, v in f.items()}
        return cls(obj["n"], obj["L"], obj["Rs"], f)

    def __str__(self) -> str:
        Ls, fm = set(self.L), self.fmap
        m = match(self)
        out = []
        for i in range(1, self.n + 1):
            s = ("(" if i in Ls else "") + str(i)
            for j, R in enumerate(self.Rs, 1):
                if i in R:
                    s += ")" + (f"_{j}" if self.ell > 1 else "")
                    if m.partner[(i, j)] is None and i in fm:
                        s += f"^{fm[i]}"
            out.append(s)
        return " ".join(out)


@dataclass
class Matching:
    """Result of scanning one period (in steady state).

    ``content[l]`` lists the integers directly enclosed by the pair opened at
    l, as (value, wrapped) where ``wrapped`` marks the next period.  For an
    unmatched right parenthesis, ``free_before`` lists the free integers since
    the previous unmatched one (``wrapped`` marks the previous period).
    """

    partner: dict[RightKey, int | None] = field(default_factory=dict)
    left_partner: dict[int, RightKey] = field(default_factory=dict)
    content: dict[int, list[tuple[int, bool]]] = field(default_factory=dict)
    free: list[int] = field(default_factory=list)
    free_before: dict[RightKey, list[tuple[int, bool]]] = field(default_factory=dict)

    @property
    def unmatched(self) -> list[RightKey]:
        return sorted(k for k, v in self.partner.items() if v is None)


def _tokens(P: ParenState):
    Ls = set(P.L)
    toks = []
    for i in range(1, P.n + 1):
        if i in Ls:
            toks.append(("L", i, 0))
        toks.append(("I", i, 0))
        for j, R in enumerate(P.Rs, 1):
            if i in R:
                toks.append(("R", i, j))
    return toks


def match(P: ParenState) -> Matching:
    # Every left parenthesis closes within one period when |L| <= |R|, so
    # from the second copy on the scan is exact; copy 2 is the one recorded.
    toks = _tokens(P)
    res = Matching()
    stack: list[tuple[int, int]] = []
    pending: list[tuple[int, int]] = []
    for period in range(4):
        for kind, i, j in toks:
            if kind == "L":
                stack.append((i, period))
                if period == 2:
                    res.content[i] = []
            elif kind == "I":
                if stack:
                    l, lp = stack[-1]
                    if lp == 2:
                        res.content[l].append((i, period == 3))
                else:
                    pending.append((i, period))
                    if period == 2:
                        res.free.append(i)
            else:
                key = (i, j)
                if stack:
                    l, lp = stack.pop()
                    if period == 2:
                        res.partner[key] = l
                    if lp == 2:
                        res.left_partner[l] = key
                else:
                    if period == 2:
                        res.partner[key] = None
                        res.free_before[key] = [(v, p < 2) for v, p in pending]
                    pending = []
    return res


def sizes(P: ParenState, m: Matching | None = None) -> dict[RightKey, int]:
    """Size of every right parenthesis (f(x) counts for unmatched ones)."""
    m = m or match(P)
    fm = P.fmap
    out = {}
    for key, l in m.partner.items():
        if l is None:
            out[key] = fm.get(key[0], 0) + len(m.free_before[key])
        else:
            out[key] = len(m.content[l])
    return out


def paren_type(P: ParenState, k: int = 1) -> TypeVector:
    """Census of right-parenthesis sizes (divided by k)."""
    m = match(P)
    if P.f is None and m.unmatched:
        raise CardinalityError("unmatched right parentheses")
    c = [0] * max(P.n // k + 1, 1)
    for s in sizes(P, m).values():
        if s % k:
            raise MembershipError(f"size {s} not divisible by {k}")
        c[s // k - 1] += 1
    return TypeVector(c)


def _check_barred(P: ParenState, m: Matching):
    if len(P.L) != sum(len(R) for R in P.Rs):
        raise CardinalityError("|L| must equal the number of right parentheses")
    if not m.free:
        raise MembershipError("every integer is enclosed; state is not in the barred set")


def peel(P: ParenState, order: str = "first") -> tuple[Block, list[Block]]:
    """Literal peeling of innermost pairs; returns (leftover, peeled blocks)."""
    toks = [t for t in _tokens(P)]
    blocks = []
    while True:
        parens = [t for t, tok in enumerate(toks) if tok[0] != "I"]
        if not parens:
            break
        cands = []
        for a, b in zip(parens, parens[1:] + parens[:1]):
            if toks[a][0] == "L" and toks[b][0] == "R":
                cands.append((a, b))
        if not cands:
            raise CardinalityError("unmatched right parentheses")
        a, b = cands[0] if order == "first" else cands[-1]
        if a < b:
            span = list(range(a, b + 1))
        else:
            span = list(range(a, len(toks))) + list(range(0, b + 1))
        blocks.append(tuple(sorted(toks[t][1] for t in span if toks[t][0] == "I")))
        keep = set(range(len(toks))) - set(span)
        toks = [toks[t] for t in sorted(keep)]
    rest = tuple(sorted(tok[1] for tok in toks))
    return rest, blocks


def tau(P: ParenState, order: str = "first") -> tuple[Block, SetPartition]:
    m = match(P)
    _check_barred(P, m)
    rest, blocks = peel(P, order)
    return rest, SetPartition(P.n, blocks + [rest])


def _consecutive_run(remaining: list[int], A: set[int]):
    """(first, last) if A is a cyclic run in ``remaining``, else None."""
    t = len(remaining)
    starts = [p for p in range(t) if remaining[p] in A and remaining[p - 1] not in A]
    if len(starts) != 1:
        return None
    p = starts[0]
    q = p
    while remaining[(q + 1) % t] in A:
        q = (q + 1) % t
    return remaining[p], remaining[q]


def _tau_inv_pairs(B: Block, pi: SetPartition) -> list[tuple[int, int]]:
    B = tuple(sorted(B))
    if B not in pi.blocks:
        raise PartitionError(f"{B} is not a block of {pi}")
    if not is_noncrossing_A(pi):
        raise PartitionError(f"{pi} is crossing")
    remaining = list(range(1, pi.n + 1))
    todo = [b for b in pi.blocks if b != B]
    pairs = []
    while todo:
        for A in todo:
            run = _consecutive_run(remaining, set(A))
            if run:
                break
        else:  # pragma: no cover - noncrossing guarantees a run
            raise PartitionError("no consecutive block found")
        pairs.append(run)
        todo.remove(A)
        remaining = [x for x in remaining if x not in A]
    return pairs


def tau_inv(B: Block, pi: SetPartition) -> ParenState:
    pairs = _tau_inv_pairs(B, pi)
    return ParenState(pi.n, [a for a, _ in pairs], [[b for _, b in pairs]])


def strip_label(P: ParenState, label: int) -> ParenState:
    """Remove the right parentheses labelled ``label`` and their partners.

    f-values of removed unmatched parentheses move to the next surviving
    unmatched one in cyclic order (dropped if none survives).
    """
    m = match(P)
    drop_left = {m.partner[(r, label)] for r in P.Rs[label - 1]} - {None}
    L = [x for x in P.L if x not in drop_left]
    Rs = [R if j != label else () for j, R in enumerate(P.Rs, 1)]
    f = None
    if P.f is not None:
        fm = P.fmap
        um = m.unmatched
        keep = [key for key in um if key[1] != label]
        f = {key[0]: fm.get(key[0], 0) for key in keep}
        if keep:
            for key in um:
                if key[1] == label:
                    nxt = next((kk for kk in keep if kk > key), keep[0])
                    f[nxt[0]] += fm.get(key[0], 0)
    return ParenState(P.n, L, Rs, f)


def levels(P: ParenState) -> list[ParenState]:
    """P_1 = P and P_{i+1} = P_i with label i stripped."""
    out = [P]
    for i in range(1, P.ell):
        out.append(strip_label(out[-1], i))
    return out


def tau_prime(P: ParenState) -> tuple[Block, list[SetPartition]]:
    m = match(P)
    _check_barred(P, m)
    if P.ell == 0:
        raise MembershipError("ℓ must be positive")
    B1 = None
    chain = []
    for Q in levels(P):
        B, pi = tau(Q)
        if B1 is None:
            B1 = B
        chain.append(pi)
    return B1, chain


def tau_prime_inv(B: Block, chain: list[SetPartition]) -> ParenState:
    if not chain:
        raise PartitionError("empty chain")
    for a, b in zip(chain, chain[1:]):
        if not refines(a, b):
            raise PartitionError("not a multichain")
    B = tuple(sorted(B))
    if B not in chain[0].blocks:
        raise PartitionError(f"{B} is not a block of the bottom element")
    ell = len(chain)
    n = chain[0].n
    L: set[int] = set()
    Rs: list[list[int]] = [[] for _ in range(ell)]
    for i in range(ell - 1, -1, -1):
        Bi = chain[i].block_of(B[0])
        for l, r in _tau_inv_pairs(Bi, chain[i]):
            if l not in L:
                L.add(l)
                Rs[i].append(r)
    return ParenState(n, L, Rs)


def count_paren_by_type(n: int, ell: int, tv: TypeVector, c) -> int:
    """multinomial(b; b_1..b_n) · Π C(n, c_i)."""
    c = list(c)
    if len(c) != ell:
        raise ParenError("need one c_i per label")
    if tv.b != sum(c):
        raise ParenError("b must equal Σ c_i")
    out = multinomial(tv.b, tv.counts)
    for ci in c:
        out *= comb(n, ci)
    return out


def multinomial(b: int, parts) -> int:
    parts = list(parts)
    if b < 0 or any(p < 0 for p in parts) or sum(parts) != b:
        return 0
    out = 1
    left = b
    for p in parts:
        out *= comb(left, p)
        left -= p
    return out


def paren_states(n: int, ell: int, barred: bool = True):
    """All fully matched (L, R_1..R_ℓ) on [n]; ``barred`` keeps those with a free integer."""
    subsets = [c for s in range(n + 1) for c in itertools.combinations(range(1, n + 1), s)]
    by_size: dict[int, list] = {}
    for c in subsets:
        by_size.setdefault(len(c), []).append(c)
    for Rs in itertools.product(subsets, repeat=ell):
        t = sum(len(R) for R in Rs)
        for L in by_size.get(t, ()):
            P = ParenState(n, L, Rs)
            if barred and not match(P).free:
                continue
            yield P
