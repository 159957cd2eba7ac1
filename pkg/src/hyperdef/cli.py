"""Command-line entry point.

Subcommands build and dump algebras and modules, enumerate irreducibles,
and run the verification grids.  Every output is deterministic given argv:
seeds, monomial order and field moduli are all pinned.  Exit status 0 on
success, 1 when a verification check fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import dist, hyper, repthy, verify
from .gf import field


def _atomic_write(path: str, text: str) -> None:
    tmp = f"{path}.tmp.{os.getpid()}"
    with open(tmp, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _emit(text: str, out: str | None) -> None:
    if out:
        _atomic_write(out, text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def parse_chi(text: str, p: int, k: int):
    """chi as comma-separated values on (e, h, f).

    Plain integers give prime-field values; bracketed little-endian
    coefficient vectors like "[0,1],[1],[0]" give extension elements.
    """
    fld = field(p, k)
    if "[" in text:
        parts = []
        buf = text
        for _ in range(3):
            if not buf.startswith("["):
                raise ValueError("malformed chi")
            end = buf.index("]")
            coeffs = [int(x) for x in buf[1:end].split(",") if x.strip()]
            coeffs += [0] * (k - len(coeffs))
            parts.append(int(fld.to_index(fld.from_coeffs(coeffs))))
            buf = buf[end + 1:].lstrip(",")
        return hyper.PCharacter(fld, *parts)
    vals = [int(x) for x in text.split(",")]
    if len(vals) != 3:
        raise ValueError("chi needs three components (e, h, f)")
    return hyper.PCharacter(fld, *[v % fld.q for v in vals])


def rep_to_json(rep) -> dict:
    fld = rep.field
    action = {}
    for idx in sorted(rep.basis_action):
        m = rep.basis_action[idx]
        action[str(idx)] = [[[int(c) for c in m[i, j]]
                             for j in range(rep.dim)] for i in range(rep.dim)]
    return {"algebra": rep.algebra.label if rep.algebra else None,
            "dim": rep.dim, "field": {"p": fld.p, "k": fld.k},
            "action": action}


def cmd_dist_dump(args) -> int:
    data = dist.dump_di_gr(args.p, args.r)
    _emit(json.dumps(data, sort_keys=True), args.out)
    return 0


def cmd_algebra_build(args) -> int:
    chi = parse_chi(args.chi, args.p, args.k)
    alg = hyper.build_u_r_chi(args.r, chi)
    _emit(json.dumps(alg.to_json(), sort_keys=True), args.out)
    return 0


def cmd_verma(args) -> int:
    chi_ints = tuple(int(x) % args.p for x in args.chi.split(","))
    cell = repthy.Cell(args.p, args.r, chi_ints)
    digits = (tuple(int(x) for x in args.P.split(",")) if args.P
              else tuple([0] * args.r))
    Pt = next(s for s in cell.standard if s.digits == digits)
    lam = cell.weights[args.lam]
    Z = cell.teenage(Pt, lam)
    _emit(json.dumps(rep_to_json(Z), sort_keys=True), args.out)
    return 0


def cmd_irr(args) -> int:
    chi_ints = tuple(int(x) % args.p for x in args.chi.split(","))
    cell = repthy.Cell(args.p, args.r, chi_ints)
    classes, _g, ev = cell.enumerate(args.seed)
    cd = hyper.center(cell.alg_u)
    rows = []
    for t, c in enumerate(classes):
        rep = repthy.central_character_check(cell.alg_u, c["canonical"],
                                             c["pair"].N, cd.basis)
        rows.append({
            "class": t,
            "dim_M": c["M"].dim,
            "dim_P": c["pair"].P.dim,
            "P_digits": list(c["pair"].digits),
            "dim_N": c["pair"].N.dim,
            "fingerprint": list(rep["fingerprint"]),
        })
    if args.format == "csv":
        lines = ["class,dim_M,dim_P,P_digits,dim_N,fingerprint"]
        for row in rows:
            digs = "".join(map(str, row["P_digits"]))
            fp = "+".join(map(str, row["fingerprint"]))
            lines.append(f"{row['class']},{row['dim_M']},{row['dim_P']},"
                         f"{digs},{row['dim_N']},{fp}")
        _emit("\n".join(lines), args.out)
    else:
        _emit(json.dumps({"classes": rows, "counts": ev}, sort_keys=True),
              args.out)
    return 0


def cmd_verify(args) -> int:
    bundle = verify.run_suite(args.grid)
    if args.format == "csv":
        _emit(verify.bundle_to_csv(bundle), args.out)
    else:
        _emit(json.dumps(bundle, sort_keys=True, indent=1), args.out)
    summary = bundle["summary"]
    sys.stderr.write(
        f"verify[{args.grid}]: {summary['n_pass']} pass, "
        f"{summary['n_fail']} fail, {summary['n_skipped']} skipped\n")
    return 1 if summary["n_fail"] else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hyperdef",
        description="Exact computation in higher reduced enveloping algebras "
                    "of SL2 over small finite fields.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    d = sub.add_parser("dist", help="distribution-algebra oracle")
    dsub = d.add_subparsers(dest="subcmd", required=True)
    dd = dsub.add_parser("dump", help="dump Di(G_r) structure constants")
    dd.add_argument("--p", type=int, required=True)
    dd.add_argument("--r", type=int, required=True)
    dd.add_argument("--out")
    dd.set_defaults(func=cmd_dist_dump)

    a = sub.add_parser("algebra", help="higher reduced enveloping algebras")
    asub = a.add_subparsers(dest="subcmd", required=True)
    ab = asub.add_parser("build", help="build U^[r]_chi(SL2)")
    ab.add_argument("--p", type=int, required=True)
    ab.add_argument("--r", type=int, required=True)
    ab.add_argument("--k", type=int, default=1, help="field degree for chi")
    ab.add_argument("--chi", required=True)
    ab.add_argument("--out")
    ab.set_defaults(func=cmd_algebra_build)

    v = sub.add_parser("verma", help="dump a teenage Verma module")
    v.add_argument("--p", type=int, required=True)
    v.add_argument("--r", type=int, required=True)
    v.add_argument("--chi", required=True, help="integer triple, chi(e)=0")
    v.add_argument("--P", help="digit string of P, comma separated")
    v.add_argument("--lambda", dest="lam", type=int, default=0,
                   help="index into the sorted Lambda_chi list")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verma)

    irr = sub.add_parser("irr", help="enumerate irreducible classes")
    irr.add_argument("--p", type=int, required=True)
    irr.add_argument("--r", type=int, required=True)
    irr.add_argument("--chi", required=True, help="integer triple, chi(e)=0")
    irr.add_argument("--format", choices=["json", "csv"], default="csv")
    irr.add_argument("--seed", type=int, default=verify.SEED)
    irr.add_argument("--out")
    irr.set_defaults(func=cmd_irr)

    ver = sub.add_parser("verify", help="run the theorem-check suite")
    ver.add_argument("--grid", choices=sorted(verify.GRIDS), default="default")
    ver.add_argument("--format", choices=["json", "csv"], default="json")
    ver.add_argument("--out")
    ver.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except (ValueError, KeyError, IndexError, StopIteration) as exc:
        sys.stderr.write(f"hyperdef: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
