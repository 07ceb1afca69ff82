"""k-divisible type-D noncrossing partitions drawn on an annulus.

Ground set ±[kn].  With N = k(n-1) the outer circle carries 1..N, -1..-N
clockwise and the inner circle carries N+1..kn, -(N+1)..-kn counterclockwise.

Drawability is decided by the genus formula for permutations of an annulus:
reading each block as a cycle (outer part clockwise, then inner part
counterclockwise) gives a permutation p, and the drawing is noncrossing iff
#cycles(p) + #cycles(p^{-1} γ) equals the number of points (when some block
touches both circles) or that number plus two (when none does).  Here γ is
the product of the two boundary cycles.  An annular block may be traversed
from several junction points; any one that works is enough, but it must be
the same traversal on which the congruence condition is checked.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .paren import (
    CardinalityError,
    MembershipError,
    ParenError,
    ParenState,
    _consecutive_run,
    levels,
    match,
    sizes,
)
from .partitions import PartitionError, SignedPartition, _gap_index, covered_blocks, refines


@dataclass(frozen=True)
class AnnulusPartition:
    n: int
    k: int
    pi: SignedPartition

    def __post_init__(self):
        if self.n < 2:
            raise PartitionError("the annulus model needs n >= 2")
        if self.pi.n != self.k * self.n:
            raise PartitionError("ground set must be ±[kn]")

    @property
    def N(self) -> int:
        return self.k * (self.n - 1)

    @property
    def blocks(self):
        return self.pi.blocks

    def inner_negated(self) -> "AnnulusPartition":
        N = self.N
        flip = lambda x: -x if abs(x) > N else x  # noqa: E731
        return AnnulusPartition(self.n, self.k, SignedPartition(self.pi.n, [[flip(x) for x in b] for b in self.pi.blocks]))

    def to_json(self) -> dict:
        return {
            "family": "D",
            "n": self.n,
            "k": self.k,
            "innerStart": self.N + 1,
            "blocks": [list(b) for b in self.pi.blocks],
        }

    @classmethod
    def from_json(cls, obj) -> "AnnulusPartition":
        n, k = int(obj["n"]), int(obj.get("k", 1))
        return cls(n, k, SignedPartition(n * k, obj["blocks"]))

    def __repr__(self):
        return f"Annulus(n={self.n}, k={self.k}, {self.pi!r})"


# positions ---------------------------------------------------------------

def _pos(x: int, N: int, k: int) -> int:
    a = abs(x)
    if a <= N:
        return a - 1 if x > 0 else N + a - 1
    return 2 * N + (a - N - 1) + (0 if x > 0 else k)


def _inner_ccw(N: int, k: int) -> list[int]:
    return list(range(N + 1, N + k + 1)) + [-x for x in range(N + 1, N + k + 1)]


def _outer_cw(N: int) -> list[int]:
    return list(range(1, N + 1)) + [-x for x in range(1, N + 1)]


def _cyc_sorted(xs, N, k):
    return sorted(xs, key=lambda x: _pos(x, N, k))


def _congruent_cycle(cyc, k) -> bool:
    u = len(cyc)
    return all((abs(cyc[(t + 1) % u]) - abs(cyc[t]) - 1) % k == 0 for t in range(u))


def _rotations(seq):
    return [seq[t:] + seq[:t] for t in range(len(seq))] or [seq]


def _count_cycles(perm: list[int]) -> int:
    seen = [False] * len(perm)
    c = 0
    for s in range(len(perm)):
        if not seen[s]:
            c += 1
            while not seen[s]:
                seen[s] = True
                s = perm[s]
    return c


def _genus_ok(cycles: list[list[int]], N: int, k: int, connected: bool) -> bool:
    P = 2 * N + 2 * k
    p = list(range(P))
    for cyc in cycles:
        ps = [_pos(x, N, k) for x in cyc]
        for t in range(len(ps)):
            p[ps[t]] = ps[(t + 1) % len(ps)]
    gamma = [(i + 1) % (2 * N) for i in range(2 * N)] + [2 * N + (i + 1) % (2 * k) for i in range(2 * k)]
    pinv = [0] * P
    for i, v in enumerate(p):
        pinv[v] = i
    comp = [pinv[gamma[i]] for i in range(P)]
    total = _count_cycles(p) + _count_cycles(comp)
    return total == (P if connected else P + 2)


def _forced_inner_pair(N: int, k: int, a: int) -> frozenset[int]:
    """The k inner integers ending (counterclockwise) at the b ≡ |a| mod k."""
    b = N + ((abs(a) - N - 1) % k) + 1
    S = _inner_ccw(N, k)
    i = S.index(b)
    return frozenset(S[(i - t) % (2 * k)] for t in range(k))


def is_member_NCkD(ap: AnnulusPartition) -> bool:
    n, k, pi = ap.n, ap.k, ap.pi
    N = k * (n - 1)
    outer_of = lambda b: [x for x in b if abs(x) <= N]  # noqa: E731
    inner_of = lambda b: [x for x in b if abs(x) > N]  # noqa: E731
    z = pi.zero_block
    if z is not None:
        if len(inner_of(z)) != 2 * k or len(outer_of(z)) < 2:
            return False
    choices = []
    connected = False
    for b in pi.blocks:
        o = _cyc_sorted(outer_of(b), N, k)
        i = _cyc_sorted(inner_of(b), N, k)
        if o and i:
            connected = True
            opts = [ro + ri for ro in _rotations(o) for ri in _rotations(i)]
        else:
            opts = [o or i]
        opts = [c for c in opts if _congruent_cycle(c, k)]
        if not opts:
            return False
        choices.append(opts)
    if not any(_genus_ok(list(combo), N, k, connected) for combo in itertools.product(*choices)):
        return False
    if not connected:
        return _condition_four(pi, N, k)
    return True


def _condition_four(pi: SignedPartition, N: int, k: int) -> bool:
    outer = [b for b in pi.blocks if abs(b[0]) <= N]
    inner = {frozenset(b) for b in pi.blocks if abs(b[0]) > N}
    pos = lambda x: _pos(x, N, k)  # noqa: E731
    hidden = covered_blocks(outer, pos)
    forced = set()
    for idx, A in enumerate(outer):
        if idx in hidden:
            continue
        cp = sorted(pos(x) for x in A)
        g = _gap_index(cp, pos(-A[0]))
        a = next(x for x in A if pos(x) == cp[g])
        B = _forced_inner_pair(N, k, a)
        forced.add(B)
    if len(forced) != 1:
        raise AssertionError(f"visible blocks disagree on the inner pair: {sorted(map(sorted, forced))}")
    B = forced.pop()
    return inner == {B, frozenset(-x for x in B)}


def annular_blocks(ap: AnnulusPartition) -> list[tuple[int, ...]]:
    N = ap.N
    z = ap.pi.zero_block
    return [b for b in ap.pi.blocks if b != z and any(abs(x) <= N for x in b) and any(abs(x) > N for x in b)]


# type-D parenthesizations --------------------------------------------------

def _unmatched_info(P: ParenState):
    m = match(P)
    um = m.unmatched
    return m, um


def is_member_PD(P: ParenState, n: int, k: int) -> bool:
    """Membership in the k-divisible type-D parenthesization set."""
    try:
        check_PD(P, n, k)
    except ParenError:
        return False
    return True


def check_PD(P: ParenState, n: int, k: int) -> None:
    if n < 2:
        raise MembershipError("n >= 2 required")
    if P.n != k * (n - 1):
        raise MembershipError(f"state lives on [{P.n}], expected [{k * (n - 1)}]")
    m, um = _unmatched_info(P)
    fm = P.fmap
    if not um:
        if fm:
            raise MembershipError("f given for a fully matched state")
        if not m.free:
            raise MembershipError("fully matched state needs a free integer")
    else:
        pos = [x for x, _ in um]
        if len(set(pos)) != len(pos):
            raise MembershipError("two unmatched right parentheses at one integer")
        if set(fm) != set(pos):
            raise MembershipError("f must be defined exactly on the unmatched right parentheses")
        if any(v <= 0 for v in fm.values()):
            raise MembershipError("f values must be positive")
        if sum(fm.values()) != k:
            raise MembershipError(f"f values must sum to k={k}")
    for key, s in sizes(P, m).items():
        if s % k:
            raise MembershipError(f"right parenthesis {key} has size {s}, not divisible by {k}")


def tau_D(P: ParenState, n: int, k: int) -> list[AnnulusPartition]:
    """[π] (Cases 1, 2) or [π⁺, π⁻] (Case 3)."""
    check_PD(P, n, k)
    N = P.n
    m, um = _unmatched_info(P)
    reps = []
    for l, content in m.content.items():
        reps.append([-v if w else v for v, w in content])
    S = _inner_ccw(N, k)
    mk = lambda reps, zero=(): AnnulusPartition(n, k, SignedPartition.from_pairs(k * n, reps, zero))  # noqa: E731
    if not um:
        return [mk(reps, list(m.free) + list(range(N + 1, k * n + 1)))]
    if not m.free:
        assert len(um) == 1
        B = _forced_inner_pair(N, k, um[0][0])
        return [mk(reps + [sorted(B)])]
    fm = P.fmap
    A = []
    for key in um:
        Ai = [-v if w else v for v, w in m.free_before[key]]
        if not Ai:
            raise AssertionError("a window between unmatched parentheses has no free integer")
        A.append((Ai, fm[key[0]]))
    aj = A[-1][0][-1]
    c = N + (abs(aj) % k) + 1
    out = []
    for start in (c, -c):
        t = S.index(start)
        extra = []
        for Ai, fi in reversed(A):
            extra.append(Ai + [S[(t + s) % (2 * k)] for s in range(fi)])
            t += fi
        out.append(mk(reps + extra))
    return out


def find_dparen(ap: AnnulusPartition) -> ParenState:
    """The unique ℓ = 1 state whose τ_D image contains ``ap``.

    Only defined when ``ap`` has a zero block or an annular block; a
    partition with neither is the image of no single-label state.
    """
    N, k = ap.N, ap.k
    z = ap.pi.zero_block
    if z is None and not annular_blocks(ap):
        raise MembershipError("no zero block and no annular block: not reachable from a single-label state")
    todo = [b for b in ap.pi.pairs()]
    remaining = [x for x in _outer_cw(N)]
    L, R, f = [], [], {}
    while todo:
        for B in todo:
            o = [x for x in B if abs(x) <= N]
            run = _consecutive_run(remaining, set(o)) if o else None
            if run:
                break
        else:
            raise MembershipError("no peelable block")
        inner = [x for x in B if abs(x) > N]
        first, last = run
        if inner:
            R.append(abs(last))
            f[abs(last)] = len(inner)
        else:
            L.append(abs(first))
            R.append(abs(last))
        todo.remove(B)
        drop = set(o) | {-x for x in o}
        remaining = [x for x in remaining if x not in drop]
    return ParenState(N, L, [R], f if f else {})


def which_sign(ap: AnnulusPartition, image: list[AnnulusPartition]) -> int:
    if ap == image[0]:
        return 1
    if len(image) == 2 and ap == image[1]:
        return -1
    raise MembershipError("partition is not in the given image")


def _leq(a: AnnulusPartition, b: AnnulusPartition) -> bool:
    return refines(a.pi, b.pi)


def tau_D_prime(P: ParenState, eps: int, n: int, k: int) -> list[AnnulusPartition]:
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    if len(P.L) >= sum(len(R) for R in P.Rs):
        raise CardinalityError("need |L| < Σ|R_i|")
    check_PD(P, n, k)
    images = [tau_D(Q, n, k) for Q in levels(P)]
    first = next(i for i, im in enumerate(images) if len(im) == 2)
    chain = []
    for i, im in enumerate(images):
        if i < first:
            assert len(im) == 1
            chosen = im[0]
        elif i == first:
            chosen = im[0] if eps == 1 else im[1]
        else:
            ok = [c for c in im if _leq(chain[-1], c)]
            assert len(ok) == 1, "continuation above the first annular level is not unique"
            chosen = ok[0]
        chain.append(chosen)
    return chain


def _matched_pairs(ap: AnnulusPartition) -> list[tuple[int, int]]:
    """(|first|, |last|) for every non-annular pair of outer blocks."""
    N = ap.N
    z = ap.pi.zero_block
    todo = [b for b in ap.pi.pairs() if all(abs(x) <= N for x in b) and b != z]
    remaining = _outer_cw(N)
    out = []
    while todo:
        for B in todo:
            run = _consecutive_run(remaining, set(B))
            if run:
                break
        else:  # pragma: no cover - noncrossing guarantees a run
            raise MembershipError("no peelable block")
        out.append((abs(run[0]), abs(run[1])))
        todo.remove(B)
        drop = set(B) | {-x for x in B}
        remaining = [x for x in remaining if x not in drop]
    return out


def _annular_windows(ap: AnnulusPartition):
    """Annular pair representatives, the owning pair of each of their outer
    elements, and the clockwise-last outer element (absolute value) of each."""
    N = ap.N
    pairs = ap.pi.pairs()
    reps = [b for b in annular_blocks(ap) if b in pairs]
    owner, block = {}, {}
    for idx, b in enumerate(reps):
        for x in b:
            if abs(x) <= N:
                owner[x] = owner[-x] = idx
                block[x], block[-x] = idx, ~idx
    circle = [x for x in _outer_cw(N) if x in owner]
    last = {}
    for t, x in enumerate(circle):
        if block[circle[(t + 1) % len(circle)]] != block[x]:
            last.setdefault(owner[x], abs(x))
    return reps, owner, last


def tau_D_prime_inv(chain: list[AnnulusPartition]) -> tuple[ParenState, int]:
    """Rebuild (P, ε) level by level from the top.

    Matched pairs are read off the outer blocks.  An unmatched parenthesis
    that survives from a higher level keeps its position and claims the
    annular pair whose window it closes; every other annular pair gets a new
    unmatched parenthesis after its clockwise-last outer element.
    """
    if not chain:
        raise PartitionError("empty chain")
    n, k = chain[0].n, chain[0].k
    N = k * (n - 1)
    for a, b in zip(chain, chain[1:]):
        if not _leq(a, b):
            raise PartitionError("not a multichain")
    ann = [i for i, ap in enumerate(chain) if annular_blocks(ap)]
    if not ann:
        raise MembershipError("no level has an annular block")
    j = ann[0]
    ell = len(chain)
    L: set[int] = set()
    Rs: list[list[int]] = [[] for _ in range(ell)]
    U: list[int] = []
    circle = _outer_cw(N)
    for i in range(ell - 1, -1, -1):
        ap = chain[i]
        for l, r in _matched_pairs(ap):
            if l not in L:
                L.add(l)
                Rs[i].append(r)
        if i < j:
            if len(U) != 1:
                raise MembershipError("levels below the first annular one carry exactly one unmatched parenthesis")
            continue
        reps, owner, last = _annular_windows(ap)
        claimed = {}
        for p in U:
            t = circle.index(p)
            while circle[t] not in owner:
                t -= 1
            idx = owner[circle[t]]
            if idx in claimed:
                raise MembershipError("two unmatched parentheses close the same window")
            claimed[idx] = p
        for idx in range(len(reps)):
            if idx not in claimed:
                Rs[i].append(last[idx])
                U.append(last[idx])
                claimed[idx] = last[idx]
        if i == 0:
            f = {claimed[idx]: sum(1 for x in reps[idx] if abs(x) > N) for idx in range(len(reps))}
    if j > 0:
        f = {U[0]: k}
    P = ParenState(N, L, Rs, f)
    eps = which_sign(chain[j], tau_D(levels(P)[j], n, k))
    return P, eps


# generation ------------------------------------------------------------------

def nc_d_annulus(n: int, k: int = 1) -> tuple[AnnulusPartition, ...]:
    from .generate import signed_partitions

    out = []
    for sp in signed_partitions(k * n):
        if any(len(b) % k for b in sp.blocks):
            continue
        ap = AnnulusPartition(n, k, sp)
        if is_member_NCkD(ap):
            out.append(ap)
    out.sort(key=lambda a: a.pi)
    return tuple(out)


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for c in itertools.combinations(range(1, total), parts - 1):
        cuts = (0,) + c + (total,)
        yield tuple(cuts[i + 1] - cuts[i] for i in range(parts))


def pd_states(n: int, k: int, ell: int, barred: bool = False):
    """All members of the k-divisible type-D parenthesization set on [k(n-1)]."""
    N = k * (n - 1)
    subsets = [c for s in range(N + 1) for c in itertools.combinations(range(1, N + 1), s)]
    for Rs in itertools.product(subsets, repeat=ell):
        t = sum(len(R) for R in Rs)
        for L in subsets:
            if len(L) > t or (barred and len(L) == t):
                continue
            base = ParenState(N, L, Rs)
            um = match(base).unmatched
            pos = [x for x, _ in um]
            if len(set(pos)) != len(pos):
                continue
            for comp in _compositions(k, len(um)) if um else [()]:
                P = ParenState(N, L, Rs, dict(zip(pos, comp)))
                if is_member_PD(P, n, k):
                    yield P
