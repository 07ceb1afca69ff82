"""Acceptance suite: one PASS/FAIL line per criterion, each timed from cold caches.

Run with ``pytest tests/test_acceptance.py -v`` (lines appear in the
terminal summary) or directly as a script.
"""

import sys
import time
from math import comb

import pytest

from ncpart import enumeration as E
from ncpart.annulus import nc_d_annulus
from ncpart.formulas import eval_formula
from ncpart.generate import catalan, nc_d_circular
from ncpart.roundtrip import run as roundtrip

LINES = []


def _emit(line):
    LINES.append(line)
    if __name__ == "__main__":
        print(line, flush=True)


def _criterion(num, title, limit, body):
    E.clear_caches()
    t = time.perf_counter()
    ok, detail = body()
    dt = time.perf_counter() - t
    passed = ok and dt < limit
    _emit(f"criterion {num}: {'PASS' if passed else 'FAIL'}  {title}  [{detail}; {dt:.2f}s of {limit}s]")
    return passed, detail, dt


def _sweep(*jobs):
    """jobs: (formula id, Ranges).  Returns (all matched, tuples, mismatches)."""
    total = bad = 0
    for fid, rng in jobs:
        reps = E.verify(fid, rng)
        total += len(reps)
        bad += sum(not r.match for r in reps)
        if not reps:
            return False, f"{fid}: empty sweep"
    return bad == 0, f"{total - bad}/{total} tuples match"


def c1():
    a = all(len(E.enumerate_family(E.FamilySpec("A", n))) == catalan(n) for n in range(1, 11))
    b = all(len(E.enumerate_family(E.FamilySpec("B", n))) == comb(2 * n, n) for n in range(1, 7))
    d = True
    for n in range(2, 6):
        want = sum(eval_formula("EQ-7", {"n": n, "ell": 1, "s": [s, n - s]}) for s in range(n + 1))
        d &= len(E.enumerate_family(E.FamilySpec("D", n))) == want
    return a and b and d, f"A {a}, B {b}, D {d}"


def c2():
    return _sweep(("THM-A", E.Ranges(max_n=8, max_k=8, max_kn=8, max_l=3)))


def c3():
    r = E.Ranges(max_n=5, max_k=5, max_kn=5, max_l=3)
    return _sweep(("THM-B", r), ("INDEX", r), ("EQ-14", E.Ranges(max_n=5, max_k=1, max_kn=5, max_l=3)))


def c4():
    combos = frozenset({(3, 1, 1), (3, 1, 2), (4, 1, 1), (4, 1, 2), (2, 2, 1), (3, 2, 1)})
    r = E.Ranges(max_n=4, max_k=2, max_kn=6, max_l=2, combos=combos)
    return _sweep(("THM-D", r), ("D-ANNULAR", r))


def c5():
    jobs = [("psi", n, 1, 1) for n in range(1, 6)]
    jobs += [("tau", n, 1, 1) for n in range(1, 6)]
    jobs += [("tau-prime", n, 1, ell) for n in range(1, 6) for ell in (1, 2, 3)]
    jobs += [("tau-d", n, k, 1) for n, k, _ in ((3, 1, 1), (2, 2, 1))]
    jobs += [("tau-d-prime", n, k, ell) for n, k, ell in ((3, 1, 1), (3, 1, 2), (2, 2, 1))]
    checks = fails = 0
    for job in jobs:
        rep = roundtrip(*job)
        checks += rep.checks + rep.order_checks
        fails += len(rep.failures) + len(rep.order_failures)
    return fails == 0, f"{checks - fails}/{checks} checks ok"


def c6():
    r = E.Ranges(max_n=3, max_k=3, max_kn=11, max_l=4)
    return _sweep(("AUG-TYPE", r), ("AUG-RANK", r), ("AUG-ZETA", r))


def c7():
    sizes = [E.armstrong_iso(n, k).size for n, k in ((1, 1), (2, 1), (1, 2))]
    z3 = E.zeta(E.FamilySpec("TildeA", 3, 2), 1)
    z5 = E.zeta(E.FamilySpec("TildeA", 5, 2), 1)
    ok = z3 == 4 and z5 == 21 and sizes == [4, 21, 7]
    return ok, f"isomorphisms of sizes {sizes}, Z = {z3}, {z5}"


def c8():
    return _sweep(
        ("EQ-8", E.Ranges(max_n=6, max_k=1, max_kn=6, max_l=1)),
        ("EQ-9", E.Ranges(max_n=5, max_k=1, max_kn=5, max_l=1)),
        ("EQ-10", E.Ranges(max_n=5, max_k=1, max_kn=5, max_l=1)),
        ("EQ-11", E.Ranges(max_n=5, max_k=1, max_kn=5, max_l=1)),
        ("EQ-12", E.Ranges(max_n=6, max_k=2, max_kn=6, max_l=2)),
        ("EQ-13", E.Ranges(max_n=5, max_k=2, max_kn=5, max_l=2)),
    )


def c9():
    ok = all({a.pi for a in nc_d_annulus(n, 1)} == set(nc_d_circular(n)) for n in range(2, 6))
    return ok, "annulus = circular for n = 2..5" if ok else "models disagree"


CRITERIA = [
    (1, "cardinalities of NC, NC_B, NC_D", 10, c1),
    (2, "type-A theorem, kn <= 8, l <= 3", 60, c2),
    (3, "type-B theorem and index lemma, kn <= 5, l <= 3", 60, c3),
    (4, "type-D theorem and annular lemma", 120, c4),
    (5, "bijection round trips", 60, c5),
    (6, "augmented type A, n <= 3, k <= 3, l <= 4", 30, c6),
    (7, "rotation-fixed poset isomorphism", 30, c7),
    (8, "type-count identities", 30, c8),
    (9, "two type-D models agree", 10, c9),
]


@pytest.mark.parametrize("num,title,limit,body", CRITERIA, ids=[f"criterion-{c[0]}" for c in CRITERIA])
def test_criterion(num, title, limit, body):
    passed, detail, dt = _criterion(num, title, limit, body)
    assert passed, f"{detail} in {dt:.2f}s (limit {limit}s)"


if __name__ == "__main__":
    results = [_criterion(*c)[0] for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
