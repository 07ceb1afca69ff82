"""Pure-Python versions of the compiled kernels (same signatures)."""

import numpy as np

IMPLEMENTATION = "python"


def noncrossing(labels):
    labels = [int(x) for x in labels]
    last = {}
    for i, b in enumerate(labels):
        last[b] = i
    seen = set()
    stack = []
    for i, b in enumerate(labels):
        if stack and stack[-1] == b:
            pass
        elif b in seen:
            return False
        else:
            seen.add(b)
            stack.append(b)
        if last[b] == i:
            stack.pop()
    return True


def refinement_matrix(labels):
    rows = [list(map(int, r)) for r in labels]
    reps = []
    for r in rows:
        first = {}
        reps.append([first.setdefault(b, e) for e, b in enumerate(r)])
    N = len(rows)
    out = np.zeros((N, N), dtype=np.uint8)
    for i, rep in enumerate(reps):
        for j, r in enumerate(rows):
            if all(r[e] == r[p] for e, p in enumerate(rep)):
                out[i, j] = 1
    return out


def chain_count(leq, masks):
    leq = [list(map(int, r)) for r in leq]
    masks = [list(map(int, r)) for r in masks]
    f = {a: 1 for a, on in enumerate(masks[0]) if on}
    for row in masks[1:]:
        g = {}
        for b, on in enumerate(row):
            if on:
                s = sum(v for a, v in f.items() if leq[a][b])
                if s:
                    g[b] = s
        f = g
    return sum(f.values())
