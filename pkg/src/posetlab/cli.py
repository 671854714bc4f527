"""Command-line entry point.

Machine-readable JSON lines go to stdout, logs to stderr; ``--human``
renders aligned tables instead.  Exit codes: 0 success, 1 when a report
that was asserted to hold came back failing, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import families, geometry, injections, search, vanishing
from .errors import PosetLabError
from .extensions import f_table, n_vector
from .inequalities import FAILS, TABLE_CHECKS, check_gcpc, check_stanley, check_thin_flat
from .posets import (
    SCHEMA,
    fraction_str,
    load_poset,
    normalize,
    params,
    thin_threshold,
)


def _read_poset(path: str | None, stdin):
    text = stdin.read() if path in (None, "-") else open(path, "r", encoding="utf-8").read()
    return load_poset(text)


def _parse_fraction(text: str) -> Fraction:
    return Fraction(text)


def _emit(obj: dict, out, human: bool) -> None:
    if human:
        pairs = ", ".join(f"{k}={v}" for k, v in obj.items() if k != "schema")
        print(pairs, file=out)
    else:
        print(json.dumps(obj), file=out)


def _grid(n: int):
    for k in range(1, n):
        for l in range(1, n - k + 1):
            yield k, l


def cmd_table(args, stdin, out) -> int:
    p, z, _ = _read_poset(args.poset, stdin)
    if z is None:
        raise PosetLabError("poset JSON lacks a marked triple 'z'")
    p, z = normalize(p, z)
    _emit(f_table(p, z).to_json_obj(), out, args.human)
    return 0


def cmd_vanish(args, stdin, out) -> int:
    p, z, _ = _read_poset(args.poset, stdin)
    if z is None:
        raise PosetLabError("poset JSON lacks a marked triple 'z'")
    p, z = normalize(p, z)
    region = vanishing.support(p, z)
    obj = {
        "schema": SCHEMA,
        "type": "vanish",
        "k": args.k,
        "l": args.l,
        "member": region.membership(args.k, args.l),
        "bounds": region.bounds_dict(),
    }
    _emit(obj, out, args.human)
    return 0


def cmd_check(args, stdin, out) -> int:
    p, z, a = _read_poset(args.poset, stdin)
    failed = False
    reports = []
    if args.ineq == "stanley":
        mark = args.a if args.a is not None else (a if a is not None else None)
        if mark is None:
            if z is None:
                raise PosetLabError("stanley check needs --a or an 'a'/'z' field")
            mark = z.z2
        nv = n_vector(p, mark)
        ks = [args.k] if args.k is not None else sorted(
            set(nv.counts) | {k + 1 for k in nv.counts}
        )
        reports = [check_stanley(nv, k) for k in ks]
    else:
        if z is None:
            raise PosetLabError("poset JSON lacks a marked triple 'z'")
        p, z = normalize(p, z)
        F = f_table(p, z)
        if args.ineq == "gcpc":
            if args.all or args.k is None:
                cells = sorted(F.support())
                pairs = [
                    (k, l, pp, qq)
                    for (k, l) in cells
                    for (pp, qq) in cells
                    if k <= pp and l <= qq
                ]
            else:
                pairs = [(args.k, args.l, args.p, args.q)]
            reports = [check_gcpc(F, *quad) for quad in pairs]
        elif args.ineq == "thin":
            prm = params(p)
            t = args.t if args.t is not None else thin_threshold(p, z, prm)
            kls = list(_grid(p.n)) if args.all or args.k is None else [(args.k, args.l)]
            reports = [check_thin_flat(F, prm, t, k, l) for k, l in kls]
        else:
            checker = TABLE_CHECKS[args.ineq]
            kls = list(_grid(p.n)) if args.all or args.k is None else [(args.k, args.l)]
            reports = [checker(F, k, l) for k, l in kls]
    for rep in reports:
        if rep.verdict == FAILS:
            failed = True
        _emit(rep.to_json_obj(), out, args.human)
    return 1 if failed else 0


def cmd_family(args, stdin, out) -> int:
    kwargs = {}
    for name in ("n", "k", "l"):
        value = getattr(args, name)
        if value is not None:
            kwargs[name] = value
    inst = families.build_family(args.id, **kwargs)
    obj = inst.to_json_obj()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(obj) + "\n")
    else:
        _emit(obj, out, args.human)
    return 0


def cmd_verify_injections(args, stdin, out) -> int:
    p, z, _ = _read_poset(args.poset, stdin)
    if z is None:
        raise PosetLabError("poset JSON lacks a marked triple 'z'")
    p, z = normalize(p, z)
    maps = (args.map,) if args.map else ("stanley", "transfer", "shrink", "grow")
    bad = False
    for cert in injections.verify_injections(p, z, maps):
        if not cert.ok:
            bad = True
        _emit(cert.to_json_obj(), out, args.human)
    return 1 if bad else 0


def cmd_search(args, stdin, out) -> int:
    job = search.SearchJob(
        target=args.target,
        n_max=args.n_max,
        n_min=args.n_min,
        width_max=args.width_max,
        seed=args.seed,
        budget=args.budget,
        out=args.out,
    )
    certs, summary = search.run(job, workers=args.threads)
    if not args.out:
        for cert in certs:
            _emit(cert.to_json_obj(), out, args.human)
    _emit(summary.to_json_obj(), out, args.human)
    return 0


def cmd_volume_mc(args, stdin, out) -> int:
    p, z, _ = _read_poset(args.poset, stdin)
    if z is None:
        raise PosetLabError("poset JSON lacks a marked triple 'z'")
    p, z = normalize(p, z)
    s, t = _parse_fraction(args.s), _parse_fraction(args.t)
    exact = geometry.volume_formula(f_table(p, z), s, t)
    est = geometry.volume_mc(p, z, s, t, args.samples, args.seed)
    obj = {
        "schema": SCHEMA,
        "type": "volume",
        "s": fraction_str(s),
        "t": fraction_str(t),
        "formula": fraction_str(exact),
        "formula_float": float(exact),
        "mc_mean": est.mean,
        "mc_stderr": est.stderr,
        "samples": est.samples,
        "within_3se": est.within(exact),
    }
    _emit(obj, out, args.human)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="posetlab")
    ap.add_argument("--threads", type=int,
                    default=int(os.environ.get("POSETLAB_THREADS", os.cpu_count() or 1)))
    ap.add_argument("--human", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("table", help="exact F(k,l) table")
    sp.add_argument("--poset")
    sp.set_defaults(fn=cmd_table)

    sp = sub.add_parser("vanish", help="positivity test and its six bounds")
    sp.add_argument("--poset")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--l", type=int, required=True)
    sp.set_defaults(fn=cmd_vanish)

    sp = sub.add_parser("check", help="evaluate one inequality family")
    sp.add_argument("--poset")
    sp.add_argument("--ineq", required=True,
                    choices=sorted(TABLE_CHECKS) + ["thin", "stanley", "gcpc"])
    sp.add_argument("--k", type=int)
    sp.add_argument("--l", type=int)
    sp.add_argument("--p", type=int)
    sp.add_argument("--q", type=int)
    sp.add_argument("--t", type=int)
    sp.add_argument("--a", type=int)
    sp.add_argument("--all", action="store_true")
    sp.set_defaults(fn=cmd_check)

    sp = sub.add_parser("family", help="build a named family instance")
    sp.add_argument("--id", required=True, choices=list(families.FAMILY_IDS))
    sp.add_argument("--n", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--l", type=int)
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_family)

    sp = sub.add_parser("verify-injections", help="certify the word injections")
    sp.add_argument("--poset")
    sp.add_argument("--map", choices=["stanley", "transfer", "shrink", "grow"])
    sp.set_defaults(fn=cmd_verify_injections)

    sp = sub.add_parser("search", help="randomized violation search")
    sp.add_argument("--target", required=True, choices=list(search.SEARCH_TARGETS))
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--n-min", type=int, default=3)
    sp.add_argument("--width-max", type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--budget", type=int, required=True)
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_search)

    sp = sub.add_parser("volume-mc", help="Monte Carlo slice volume vs exact formula")
    sp.add_argument("--poset")
    sp.add_argument("--s", required=True)
    sp.add_argument("--t", required=True)
    sp.add_argument("--samples", type=int, default=100_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(fn=cmd_volume_mc)
    return ap


def main(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args, stdin, stdout)
    except PosetLabError as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
