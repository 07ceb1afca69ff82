"""Exhaustive generators for the partition families."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from .partitions import SetPartition, SignedPartition, is_noncrossing_B, is_noncrossing_D


def set_partitions(n: int) -> Iterator[SetPartition]:
    """All of Π(n), by restricted growth strings."""
    def rec(i, blocks):
        if i > n:
            yield SetPartition(n, blocks)
            return
        for b in blocks:
            b.append(i)
            yield from rec(i + 1, blocks)
            b.pop()
        blocks.append([i])
        yield from rec(i + 1, blocks)
        blocks.pop()
    yield from rec(1, [])


def _nc_blocks(elems: tuple[int, ...], k: int):
    """Noncrossing k-divisible partitions of an ordered tuple, as block lists."""
    if not elems:
        yield []
        return
    first, rest = elems[0], elems[1:]

    def grow(pos, block):
        if len(block) % k == 0 and (len(rest) - pos) % k == 0:
            for tail in _nc_blocks(rest[pos:], k):
                yield [tuple(block)] + tail
        for q in range(pos, len(rest)):
            gap = rest[pos:q]
            if len(gap) % k:
                continue
            inner = list(_nc_blocks(gap, k))
            for out in grow(q + 1, block + [rest[q]]):
                for g in inner:
                    yield g + out

    yield from grow(0, [first])


@lru_cache(maxsize=64)
def noncrossing_partitions(m: int, k: int = 1) -> tuple[SetPartition, ...]:
    """NC^{(k)} on [m] (every block size divisible by k), sorted."""
    if m % k:
        return ()
    return tuple(sorted(SetPartition(m, b) for b in _nc_blocks(tuple(range(1, m + 1)), k)))


def signed_partitions(n: int) -> Iterator[SignedPartition]:
    """All type-B set partitions of ±[n] (Dowling numbers), by inserting ±i."""
    def rec(i, reps, zero):
        if i > n:
            yield SignedPartition.from_pairs(n, reps, zero)
            return
        reps.append([i])
        yield from rec(i + 1, reps, zero)
        reps.pop()
        yield from rec(i + 1, reps, zero + [i])
        for r in reps:
            for s in (i, -i):
                r.append(s)
                yield from rec(i + 1, reps, zero)
                r.pop()
    yield from rec(1, [], [])


def nc_b_filtered(m: int, k: int = 1) -> tuple[SignedPartition, ...]:
    """Reference version of ``nc_b``: membership filter over all of Π_B(m)."""
    out = [p for p in signed_partitions(m) if is_noncrossing_B(p) and all(len(b) % k == 0 for b in p.blocks)]
    return tuple(sorted(out))


@lru_cache(maxsize=64)
def nc_b(m: int, k: int = 1) -> tuple[SignedPartition, ...]:
    """k-divisible type-B noncrossing partitions of ±[m] (m = kn), as ψ⁻¹ of
    every (σ, x) with σ ∈ NC(m)."""
    from .typeb import all_bpairs, psi_inv

    out = []
    for sigma in noncrossing_partitions(m):
        for bp in all_bpairs(sigma):
            p = psi_inv(bp)
            if all(len(b) % k == 0 for b in p.blocks):
                out.append(p)
    return tuple(sorted(out))


@lru_cache(maxsize=64)
def nc_d_circular(n: int) -> tuple[SignedPartition, ...]:
    """NC_D(n) in the circular picture (±n at the centre)."""
    if n < 2:
        raise ValueError("type D needs n >= 2")
    return tuple(sorted(p for p in signed_partitions(n) if is_noncrossing_D(p)))


def catalan(n: int) -> int:
    c = 1
    for i in range(n):
        c = c * 2 * (2 * i + 1) // (i + 2)
    return c


def _nc_aug_blocks(elems: tuple[int, ...], k: int):
    """Noncrossing partitions of a tuple in which every block has size
    divisible by k, except exactly one when len(elems) is not a multiple of k."""
    if not elems:
        yield []
        return
    first, rest = elems[0], elems[1:]

    def grow(pos, block, odd):
        tail_odd = (len(rest) - pos) % k != 0
        if odd + (len(block) % k != 0) + tail_odd <= 1:
            for tail in _nc_aug_blocks(rest[pos:], k):
                yield [tuple(block)] + tail
        for q in range(pos, len(rest)):
            gap_odd = (q - pos) % k != 0
            if odd + gap_odd > 1:
                continue
            inner = list(_nc_aug_blocks(rest[pos:q], k))
            for out in grow(q + 1, block + [rest[q]], odd + gap_odd):
                for g in inner:
                    yield g + out

    yield from grow(0, [first], 0)


@lru_cache(maxsize=64)
def augmented_partitions(m: int, k: int) -> tuple[SetPartition, ...]:
    """Noncrossing partitions of [m], m not divisible by k, with exactly one
    block of size not divisible by k."""
    if k < 2 or m % k == 0:
        return ()
    return tuple(sorted(SetPartition(m, b) for b in _nc_aug_blocks(tuple(range(1, m + 1)), k)))
