"""Exhaustive round-trip checks for every bijection in the package."""

from __future__ import annotations

from dataclasses import dataclass, field

from .annulus import (
    AnnulusPartition,
    annular_blocks,
    find_dparen,
    nc_d_annulus,
    pd_states,
    tau_D,
    tau_D_prime,
    tau_D_prime_inv,
)
from .generate import nc_b, noncrossing_partitions
from .paren import paren_states, tau, tau_inv, tau_prime, tau_prime_inv
from .partitions import refines
from .typeb import leq_pairs, psi, psi_inv

MAPS = ("psi", "tau", "tau-prime", "tau-d", "tau-d-prime")


@dataclass
class RoundTripReport:
    map: str
    params: dict
    elements: int
    checks: int = 0
    failures: list = field(default_factory=list)
    order_checks: int = 0
    order_failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and not self.order_failures

    def summary(self) -> str:
        good = self.checks - len(self.failures)
        out = f"{self.map} {self.params}: {self.elements} elements, {good}/{self.checks} round-trips ok"
        if self.order_checks:
            og = self.order_checks - len(self.order_failures)
            out += f", {og}/{self.order_checks} order checks ok"
        return out

    def to_json(self) -> dict:
        return {
            "map": self.map,
            "params": self.params,
            "elements": self.elements,
            "checks": self.checks,
            "ok": self.ok,
            "failures": [str(f) for f in self.failures[:20]],
            "orderChecks": self.order_checks,
            "orderFailures": [str(f) for f in self.order_failures[:20]],
        }


def _check(rep: RoundTripReport, cond: bool, what):
    rep.checks += 1
    if not cond:
        rep.failures.append(what)


def multichains(els, leq, ell):
    """All weakly increasing index sequences of length ell."""
    n = len(els)

    def rec(prefix):
        if len(prefix) == ell:
            yield [els[i] for i in prefix]
            return
        last = prefix[-1] if prefix else None
        for j in range(n):
            if last is None or leq(els[last], els[j]):
                yield from rec(prefix + [j])

    yield from rec([])


def check_psi(n: int, pairs: bool = True) -> RoundTripReport:
    els = nc_b(n)
    rep = RoundTripReport("psi", {"n": n}, len(els))
    images = {}
    for p in els:
        bp = psi(p)
        images[p] = bp
        _check(rep, psi_inv(bp) == p, p)
    if len(set(images.values())) != len(els):
        rep.failures.append("psi not injective")
    if pairs:
        for a in els:
            for b in els:
                rep.order_checks += 1
                if leq_pairs(images[a], images[b]) != refines(a, b):
                    rep.order_failures.append((a, b))
    return rep


def check_tau(n: int) -> RoundTripReport:
    states = list(paren_states(n, 1))
    rep = RoundTripReport("tau", {"n": n}, len(states))
    for P in states:
        B, pi = tau(P)
        _check(rep, tau_inv(B, pi) == P, P)
    for pi in noncrossing_partitions(n):
        for B in pi.blocks:
            _check(rep, tau(tau_inv(B, pi)) == (B, pi), (B, pi))
    return rep


def check_tau_prime(n: int, ell: int) -> RoundTripReport:
    states = list(paren_states(n, ell))
    rep = RoundTripReport("tau-prime", {"n": n, "ell": ell}, len(states))
    for P in states:
        B, chain = tau_prime(P)
        _check(rep, tau_prime_inv(B, chain) == P, P)
    pairs = 0
    for chain in multichains(noncrossing_partitions(n), refines, ell):
        for B in chain[0].blocks:
            pairs += 1
            _check(rep, tau_prime(tau_prime_inv(B, chain)) == (B, chain), (B, chain))
    _check(rep, pairs == len(states), f"{pairs} pairs vs {len(states)} states")
    return rep


def check_tau_d(n: int, k: int) -> RoundTripReport:
    states = list(pd_states(n, k, 1))
    rep = RoundTripReport("tau-d", {"n": n, "k": k}, len(states))
    seen = set()
    for P in states:
        for ap in tau_D(P, n, k):
            _check(rep, ap not in seen, f"image repeated: {ap}")
            seen.add(ap)
            _check(rep, find_dparen(ap) == P, P)
    for ap in nc_d_annulus(n, k):
        if ap.pi.zero_block is None and not annular_blocks(ap):
            _check(rep, ap not in seen, ap)
            continue
        _check(rep, ap in tau_D(find_dparen(ap), n, k), ap)
    return rep


def check_tau_d_prime(n: int, k: int, ell: int) -> RoundTripReport:
    states = list(pd_states(n, k, ell, barred=True))
    rep = RoundTripReport("tau-d-prime", {"n": n, "k": k, "ell": ell}, len(states))
    for P in states:
        for eps in (1, -1):
            chain = tau_D_prime(P, eps, n, k)
            _check(rep, tau_D_prime_inv(chain) == (P, eps), (P, eps))
    annular = 0
    leq = lambda a, b: refines(a.pi, b.pi)  # noqa: E731
    for chain in multichains(nc_d_annulus(n, k), leq, ell):
        if not any(annular_blocks(c) for c in chain):
            continue
        annular += 1
        P, eps = tau_D_prime_inv(chain)
        _check(rep, tau_D_prime(P, eps, n, k) == chain, chain)
    _check(rep, annular == 2 * len(states), f"{annular} annular chains vs 2·{len(states)} states")
    return rep


def run(name: str, n: int, k: int = 1, ell: int = 1) -> RoundTripReport:
    if name == "psi":
        return check_psi(n)
    if name == "tau":
        return check_tau(n)
    if name == "tau-prime":
        return check_tau_prime(n, ell)
    if name == "tau-d":
        return check_tau_d(n, k)
    if name == "tau-d-prime":
        return check_tau_d_prime(n, k, ell)
    raise KeyError(f"unknown map {name!r}; choose from {', '.join(MAPS)}")


__all__ = ["MAPS", "RoundTripReport", "run", "multichains", "AnnulusPartition"]
