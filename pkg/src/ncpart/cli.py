"""ncpart command line: enumerate, chains, zeta, verify, bijection."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import enumeration as E
from . import formulas as F
from .partitions import PartitionError, TypeVector, partition_to_json
from .roundtrip import MAPS, run as run_roundtrip


class UsageError(Exception):
    pass


def _ints(text: str, flag: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise UsageError(f"{flag}: expected comma-separated integers, got {text!r}") from None


def _spec(a) -> E.FamilySpec:
    if a.n is None:
        raise UsageError("--n is required")
    try:
        return E.FamilySpec(a.family, a.n, a.k, a.r)
    except PartitionError as e:
        raise UsageError(f"--family/--n/--k/--r: {e}") from None


def _add_spec(p, ell=False):
    p.add_argument("--family", choices=["A", "B", "D", "AugA", "TildeA"], default="A")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--r", type=int)
    if ell:
        p.add_argument("--ell", type=int, default=1)


def _add_common(p):
    p.add_argument("--format", choices=["json", "csv", "table"], default="json")
    p.add_argument("--output", help="write the report here instead of stdout")
    p.add_argument("--max-ground", type=int, help="scale guard on the ground-set size")
    p.add_argument("--max-family", type=int, default=E.DEFAULT_MAX_FAMILY, help="scale guard on the family size")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ncpart", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list a family")
    _add_spec(p)
    _add_common(p)

    p = sub.add_parser("chains", help="count multichains under filters")
    _add_spec(p, ell=True)
    p.add_argument("--jumps", help="rank-jump vector s_1,...,s_{ℓ+1}")
    p.add_argument("--ktype", help="k-type of the bottom element: b_1,b_2,...")
    p.add_argument("--index", type=int, help="zero-block index d (family B)")
    p.add_argument("--annular", choices=["yes", "no"], help="some level annular (family D)")
    _add_common(p)

    p = sub.add_parser("zeta", help="zeta polynomial at ℓ")
    _add_spec(p, ell=True)
    _add_common(p)

    p = sub.add_parser("verify", help="brute force against a closed form")
    p.add_argument("--id", required=True, help=", ".join(F.FORMULAS))
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--max-k", type=int, default=2)
    p.add_argument("--max-kn", type=int, default=6)
    p.add_argument("--max-l", type=int, default=2)
    p.add_argument("--params-file", help="JSON array of parameter objects to check instead of a range")
    _add_common(p)

    p = sub.add_parser("bijection", help="exhaustive round trips of a bijection")
    p.add_argument("--map", choices=MAPS, required=True)
    p.add_argument("--roundtrip", action="store_true", help="check both directions (default: list images)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--ell", type=int, default=1)
    _add_common(p)
    return ap


def _emit(a, rows: list[dict], doc=None, text: str | None = None):
    fmt = a.format
    out = io.StringIO()
    if fmt == "json":
        if doc is not None:
            out.write(json.dumps(doc, sort_keys=True) + "\n")
        else:
            for r in rows:
                out.write(json.dumps(r, sort_keys=True) + "\n")
    elif fmt == "csv":
        flat = [{k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in r.items()} for r in rows]
        keys = sorted({k for r in flat for k in r})
        w = csv.DictWriter(out, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        w.writerows(flat)
    else:
        if text:
            out.write(text + "\n")
        for r in rows:
            out.write("  ".join(f"{k}={json.dumps(v) if isinstance(v, (list, dict)) else v}" for k, v in sorted(r.items())) + "\n")
    data = out.getvalue()
    if a.output:
        with open(a.output, "w") as fh:
            fh.write(data)
    else:
        sys.stdout.write(data)


def _ground(a):
    return a.max_ground if a.max_ground is not None else None


def cmd_enumerate(a) -> int:
    spec = _spec(a)
    els = E.enumerate_family(spec, _ground(a), a.max_family)
    fam = spec.family
    rows = [partition_to_json(p, "A" if fam in ("AugA", "TildeA") else fam, spec.k) for p in els]
    _emit(a, rows, text=f"{len(rows)} partitions")
    return 0


def _query(a) -> E.CountQuery:
    spec = _spec(a)
    if a.index is not None and spec.family != "B":
        raise UsageError("--index applies to --family B only")
    if a.annular is not None and spec.family != "D":
        raise UsageError("--annular applies to --family D only")
    try:
        return E.CountQuery(
            spec,
            a.ell,
            jumps=_ints(a.jumps, "--jumps") if a.jumps else None,
            ktype1=TypeVector(_ints(a.ktype, "--ktype")) if a.ktype else None,
            index=a.index,
            annular=None if a.annular is None else a.annular == "yes",
        )
    except (ValueError, PartitionError) as e:
        raise UsageError(f"--ell/--jumps/--ktype: {e}") from None


def cmd_chains(a) -> int:
    q = _query(a)
    E.enumerate_family(q.spec, _ground(a), a.max_family)
    c = E.count_multichains(q, _ground(a))
    row = {"query": q.to_json(), "count": str(c)}
    _emit(a, [row], doc=row, text=str(c))
    return 0


def cmd_zeta(a) -> int:
    spec = _spec(a)
    if a.ell < 1:
        raise UsageError("--ell must be at least 1")
    E.enumerate_family(spec, _ground(a), a.max_family)
    z = E.zeta(spec, a.ell, _ground(a))
    row = {"spec": spec.to_json(), "ell": a.ell, "zeta": str(z)}
    _emit(a, [row], doc=row, text=str(z))
    return 0


def cmd_verify(a) -> int:
    try:
        fid = F.normalize_id(a.id)
    except KeyError as e:
        raise UsageError(f"--id: {e.args[0]}") from None
    params = None
    if a.params_file:
        try:
            with open(a.params_file) as fh:
                params = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise UsageError(f"--params-file: {e}") from None
        if not isinstance(params, list) or not all(isinstance(p, dict) for p in params):
            raise UsageError("--params-file: expected a JSON array of objects")
    rng = E.Ranges(max_n=a.max_n, max_k=a.max_k, max_kn=a.max_kn, max_l=a.max_l)
    try:
        reports = E.verify(fid, rng, _ground(a), params=params)
    except (ValueError, KeyError, PartitionError) as e:
        raise UsageError(f"--params-file: {e}") from None
    summ = E.summarize(reports)
    summ["id"] = fid
    summ["message"] = (
        f"all {summ['tuples']} tuples match" if summ["all_match"] else f"{summ['tuples'] - summ['matched']} of {summ['tuples']} tuples mismatch"
    )
    _emit(a, [r.to_json() for r in reports] if a.format == "csv" else [], doc=summ, text=summ["message"])
    return 0 if summ["all_match"] else 1


def cmd_bijection(a) -> int:
    if a.roundtrip:
        rep = run_roundtrip(a.map, a.n, a.k, a.ell)
        _emit(a, [rep.to_json()], doc=rep.to_json(), text=rep.summary())
        return 0 if rep.ok else 1
    rows = list(_images(a.map, a.n, a.k, a.ell))
    _emit(a, rows, text=f"{len(rows)} images")
    return 0


def _images(name, n, k, ell):
    from .annulus import pd_states, tau_D, tau_D_prime
    from .generate import nc_b
    from .paren import paren_states, tau, tau_prime
    from .typeb import psi

    if name == "psi":
        for p in nc_b(n):
            yield {"pi": p.to_json(), "image": psi(p).to_json()}
    elif name == "tau":
        for P in paren_states(n, 1):
            B, pi = tau(P)
            yield {"state": P.to_json(), "block": list(B), "pi": pi.to_json()}
    elif name == "tau-prime":
        for P in paren_states(n, ell):
            B, chain = tau_prime(P)
            yield {"state": P.to_json(), "block": list(B), "chain": [c.to_json() for c in chain]}
    elif name == "tau-d":
        for P in pd_states(n, k, 1):
            yield {"state": P.to_json(), "image": [x.to_json() for x in tau_D(P, n, k)]}
    else:
        for P in pd_states(n, k, ell, barred=True):
            for eps in (1, -1):
                yield {"state": P.to_json(), "eps": eps, "chain": [x.to_json() for x in tau_D_prime(P, eps, n, k)]}


COMMANDS = {
    "enumerate": cmd_enumerate,
    "chains": cmd_chains,
    "zeta": cmd_zeta,
    "verify": cmd_verify,
    "bijection": cmd_bijection,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return COMMANDS[a.command](a)
    except UsageError as e:
        print(f"ncpart: usage error: {e}", file=sys.stderr)
        return 2
    except E.ScaleError as e:
        print(f"ncpart: refused: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
