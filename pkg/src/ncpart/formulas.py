"""Closed-form evaluators for the multichain and type counts.

Every evaluator takes a parameter dict with keys drawn from ``n``, ``k``,
``r``, ``ell``, ``s`` (rank-jump vector s_1..s_{ℓ+1}), ``b`` (type counts
b_1, b_2, ...) and ``d`` (zero-block index).  Binomials outside their range
are 0 and so is any multinomial with a negative entry.  Hypotheses are
checked strictly: a violated one raises ``HypothesisError``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import comb as _comb

from .paren import multinomial


class HypothesisError(ValueError):
    """Parameters outside the stated hypotheses of a formula."""


def C(a: int, b: int) -> int:
    if b < 0 or a < 0 or b > a:
        return 0
    return _comb(a, b)


def _prod(xs):
    out = 1
    for x in xs:
        out *= x
    return out


def _need(cond: bool, msg: str):
    if not cond:
        raise HypothesisError(msg)


def _type(p):
    bs = [int(x) for x in p.get("b", ())]
    _need(all(x >= 0 for x in bs), "type entries must be nonnegative")
    return sum(bs), bs, sum(i * x for i, x in enumerate(bs, 1))


def _jumps(p, total, name="rank"):
    s = [int(x) for x in p["s"]]
    _need(all(x >= 0 for x in s), "jumps must be nonnegative")
    _need(sum(s) == total, f"Σ s_i must equal the {name} of the maximum ({total})")
    if "ell" in p:
        _need(len(s) == int(p["ell"]) + 1, "need ℓ+1 jumps")
    return s


def _exact(fr: Fraction) -> int:
    if fr.denominator != 1:
        raise ArithmeticError(f"non-integral value {fr}")
    return fr.numerator


# rank-jump formulas ---------------------------------------------------------

def eq1(p):
    n, k = int(p["n"]), int(p.get("k", 1))
    s = _jumps(p, n - 1)
    return _exact(Fraction(C(n, s[0]) * _prod(C(k * n, x) for x in s[1:]), n))


def eq2(p):
    n, k = int(p["n"]), int(p.get("k", 1))
    s = _jumps(p, n)
    return C(n, s[0]) * _prod(C(k * n, x) for x in s[1:])


def eq7(p):
    n = int(p["n"])
    _need(n >= 2, "type D needs n >= 2")
    s = _jumps(p, n)
    out = 2 * _prod(C(n - 1, x) for x in s)
    for i in range(len(s)):
        out += _prod(C(n - 2, x - 2) if t == i else C(n - 1, x) for t, x in enumerate(s))
    return out


def eq14(p):
    n, d = int(p["n"]), int(p["d"])
    s = _jumps(p, n)
    _need(1 <= d <= len(s), "index d must lie in 1..ℓ+1")
    return _exact(Fraction(s[d - 1] * _prod(C(n, x) for x in s), n))


# type formulas -----------------------------------------------------------------

def eq8(p):
    n = int(p["n"])
    b, bs, w = _type(p)
    _need(w == n and b >= 1, "needs Σ i·b_i = n")
    return _exact(Fraction(multinomial(b, bs) * C(n, b - 1), b))


def eq9(p):
    n = int(p["n"])
    b, bs, w = _type(p)
    _need(w <= n, "needs Σ i·b_i <= n")
    return multinomial(b, bs) * C(n, b)


def eq10(p):
    n = int(p["n"])
    b, bs, w = _type(p)
    _need(n >= 2 and w <= n - 2, "needs Σ i·b_i <= n-2")
    return multinomial(b, bs) * C(n - 1, b)


def eq11(p):
    n = int(p["n"])
    b, bs, w = _type(p)
    _need(n >= 2 and w == n, "needs Σ i·b_i = n")
    head = [bs[0] - 1] + bs[1:] if bs else [-1]
    return 2 * multinomial(b, bs) * C(n - 1, b) + multinomial(b - 1, head) * C(n - 1, b - 1)


def eq12(p):
    n, k, ell = int(p["n"]), int(p.get("k", 1)), int(p["ell"])
    b, bs, w = _type(p)
    _need(w == n and b >= 1, "needs Σ i·b_i = n")
    return _exact(Fraction(multinomial(b, bs) * C(ell * k * n, b - 1), b))


def eq13(p):
    n, k, ell = int(p["n"]), int(p.get("k", 1)), int(p["ell"])
    b, bs, w = _type(p)
    _need(w <= n, "needs Σ i·b_i <= n")
    return multinomial(b, bs) * C(ell * k * n, b)


# rank jumps and type together ------------------------------------------------------

def _s1(s, n, b):
    _need(s[0] == n - b, "needs s_1 = n - b")


def thm_a(p):
    n, k = int(p["n"]), int(p.get("k", 1))
    b, bs, w = _type(p)
    _need(w == n and b >= 1, "needs Σ i·b_i = n")
    s = _jumps(p, n - 1)
    _s1(s, n, b)
    return _exact(Fraction(multinomial(b, bs) * _prod(C(k * n, x) for x in s[1:]), b))


def thm_b(p):
    n, k = int(p["n"]), int(p.get("k", 1))
    b, bs, w = _type(p)
    _need(w <= n, "needs Σ i·b_i <= n")
    s = _jumps(p, n)
    _s1(s, n, b)
    return multinomial(b, bs) * _prod(C(k * n, x) for x in s[1:])


def thm_d(p):
    n, k = int(p["n"]), int(p.get("k", 1))
    _need(n >= 2, "type D needs n >= 2")
    b, bs, w = _type(p)
    _need(w <= n and w != n - 1, "needs Σ i·b_i <= n and != n-1")
    s = _jumps(p, n)
    _s1(s, n, b)
    N = k * (n - 1)
    main = multinomial(b, bs) * _prod(C(N, x) for x in s[1:])
    if w <= n - 2:
        return main
    head = [bs[0] - 1] + bs[1:] if bs else [-1]
    m = multinomial(b - 1, head)
    extra = Fraction(0)
    if m:
        for i in range(1, len(s)):
            term = _prod(C(N, x - 1) if t == i else C(N, x) for t, x in enumerate(s) if t >= 1)
            extra += Fraction((s[i] - 1) * m * term, b - 1)
    return 2 * main + _exact(extra)


def index_lemma(p):
    n, k, d = int(p["n"]), int(p.get("k", 1)), int(p["d"])
    b, bs, w = _type(p)
    _need(w <= n, "needs Σ i·b_i <= n")
    s = _jumps(p, n)
    _s1(s, n, b)
    _need(1 <= d <= len(s), "index d must lie in 1..ℓ+1")
    base = multinomial(b, bs) * _prod(C(k * n, x) for x in s[1:])
    if d == 1:
        _need(w < n, "d = 1 needs Σ i·b_i < n (π_1 has a zero block)")
        return base
    _need(w == n and b >= 1, "d >= 2 needs Σ i·b_i = n (π_1 has no zero block)")
    return _exact(Fraction(s[d - 1] * base, b))


def d_annular(p):
    n, k = int(p["n"]), int(p.get("k", 1))
    _need(n >= 2, "type D needs n >= 2")
    b, bs, w = _type(p)
    _need(w == n, "needs Σ i·b_i = n")
    s = _jumps(p, n)
    _s1(s, n, b)
    return 2 * multinomial(b, bs) * _prod(C(k * (n - 1), x) for x in s[1:])


# augmented and rotation-invariant families --------------------------------------

def _aug(p):
    n, k, r = int(p["n"]), int(p["k"]), int(p["r"])
    _need(0 < r < k, "needs 0 < r < k")
    return n, k, r


def aug_type(p):
    n, k, r = _aug(p)
    b, bs, w = _type(p)
    _need(w <= n, "needs Σ i·b_i <= n")
    s = _jumps(p, n)
    _s1(s, n, b)
    return multinomial(b, bs) * _prod(C(k * n + r, x) for x in s[1:])


def aug_rank(p):
    n, k, r = _aug(p)
    s = _jumps(p, n)
    return C(n, s[0]) * _prod(C(k * n + r, x) for x in s[1:])


def aug_zeta(p):
    n, k, r = _aug(p)
    ell = int(p["ell"])
    _need(ell >= 1, "ℓ >= 1")
    return C(n + ell * (k * n + r), n)


def _tilde_as_aug(p):
    n, k = int(p["n"]), int(p["k"])
    _need(n >= 1 and k >= 1, "needs positive n, k")
    q = dict(p)
    q.update(n=n, k=2 * k, r=k)
    return q


def tilde_type(p):
    return aug_type(_tilde_as_aug(p))


def tilde_rank(p):
    return aug_rank(_tilde_as_aug(p))


def tilde_zeta(p):
    return aug_zeta(_tilde_as_aug(p))


FORMULAS = {
    "EQ-1": (eq1, "rank-jump count in NC^(k)(n)"),
    "EQ-2": (eq2, "rank-jump count in NC^(k)_B(n)"),
    "EQ-7": (eq7, "rank-jump count in NC_D(n)"),
    "EQ-8": (eq8, "type count in NC(n)"),
    "EQ-9": (eq9, "type count in NC_B(n)"),
    "EQ-10": (eq10, "type count in NC_D(n), Σ i·b_i <= n-2"),
    "EQ-11": (eq11, "type count in NC_D(n), Σ i·b_i = n"),
    "EQ-12": (eq12, "multichains in NC^(k)(n) by type of the bottom"),
    "EQ-13": (eq13, "multichains in NC^(k)_B(n) by type of the bottom"),
    "EQ-14": (eq14, "rank jumps and zero-block index in NC_B(n)"),
    "THM-A": (thm_a, "rank jumps and k-type in NC^(k)(n)"),
    "THM-B": (thm_b, "rank jumps and k-type in NC^(k)_B(n)"),
    "THM-D": (thm_d, "rank jumps and k-type in NC^(k)_D(n)"),
    "INDEX": (index_lemma, "rank jumps, k-type and zero-block index in NC^(k)_B(n)"),
    "D-ANNULAR": (d_annular, "chains of NC^(k)_D(n) with some annular level"),
    "AUG-TYPE": (aug_type, "rank jumps and k-type in NC^(k)(n;r)"),
    "AUG-RANK": (aug_rank, "rank jumps in NC^(k)(n;r)"),
    "AUG-ZETA": (aug_zeta, "zeta polynomial of NC^(k)(n;r)"),
    "TILDE-TYPE": (tilde_type, "rank jumps and k-type in the rotation-fixed poset"),
    "TILDE-RANK": (tilde_rank, "rank jumps in the rotation-fixed poset"),
    "TILDE-ZETA": (tilde_zeta, "zeta polynomial of the rotation-fixed poset"),
}


def normalize_id(fid: str) -> str:
    """'Eq-14', 'eq14', 'EQ 14' -> 'EQ-14'; 'thm_a' -> 'THM-A'."""
    s = re.sub(r"[\s_]+", "-", fid.strip().upper())
    m = re.fullmatch(r"EQ-?(\d+)", s)
    if m:
        s = f"EQ-{int(m.group(1))}"
    if s not in FORMULAS:
        raise KeyError(f"unknown formula id {fid!r}; known: {', '.join(FORMULAS)}")
    return s


def eval_formula(fid: str, params: dict) -> int:
    return FORMULAS[normalize_id(fid)][0](params)
