"""Command-line driver.

    sicpovm tcount --from 2 --to 47
    sicpovm conjugator -p 5 -F 4,1,4,0
    sicpovm fiducial -d 5 --seed 1
    sicpovm numtheory --to 199
    sicpovm unitary -d 7 -o zauner7.json
    sicpovm verify zauner7.json -F 0,-1,1,-1

Exit status is 0 exactly when every verification in the run passed.
If SICPOVM_OUTPUT_DIR is set, relative --output paths are placed there.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from . import clifford_group as cg
from . import fiducial, modnum, pauli_rep

OUTPUT_DIR_ENV = "SICPOVM_OUTPUT_DIR"
MAX_DIM = 96


class UsageError(Exception):
    pass


def parse_matrix(text: str) -> tuple[int, int, int, int]:
    try:
        parts = [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"matrix must be four comma-separated integers: {text!r}")
    if len(parts) != 4:
        raise UsageError(f"matrix must have 4 entries a,b,c,d, got {len(parts)}")
    return tuple(parts)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _emit(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    sys.stdout.write(text)
    if args.output:
        path = Path(args.output)
        base = os.environ.get(OUTPUT_DIR_ENV)
        if base and not path.is_absolute():
            path = Path(base) / path
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)


# -- tcount ------------------------------------------------------------------


def cmd_tcount(args) -> int:
    lo, hi = args.lo, args.hi
    if not 2 <= lo <= hi <= MAX_DIM:
        raise UsageError(f"need 2 <= from <= to <= {MAX_DIM}, got {lo}..{hi}")
    rows, tables = [], []
    for d in range(lo, hi + 1):
        table = cg.enumerate_trace_classes(d)
        formula = cg.t_count_formula(d)
        rows.append((d, table.dbar, table.t_count, formula, table.t_count == formula))
        tables.append(table)
    ok = all(r[4] for r in rows)
    if args.format == "json":
        doc = {
            "rows": [
                {"d": d, "dbar": n, "t_count": t, "formula": f, "match": m}
                for d, n, t, f, m in rows
            ],
            "all_match": ok,
        }
        if args.classes:
            doc["tables"] = [t.to_dict() for t in tables]
        _emit(args, json.dumps(doc))
    elif args.format == "csv":
        _emit(args, _csv(
            ["d", "dbar", "t_count", "formula", "status"],
            [(d, n, t, f, "MATCH" if m else "MISMATCH") for d, n, t, f, m in rows],
        ))
    else:
        lines = [f"{'d':>3} {'dbar':>5} {'T_d':>4} {'formula':>8}  status"]
        for d, n, t, f, m in rows:
            lines.append(f"{d:>3} {n:>5} {t:>4} {f:>8}  {'MATCH' if m else 'MISMATCH'}")
        lines.append(f"{len(rows)} dimensions, {'all match' if ok else 'MISMATCHES FOUND'}")
        _emit(args, "\n".join(lines))
    return 0 if ok else 1


# -- conjugator ----------------------------------------------------------------


def cmd_conjugator(args) -> int:
    p = args.p
    try:
        modnum.require_odd_prime(p, minimum=5)
    except ValueError as exc:
        raise UsageError(f"p: {exc}")
    entries = parse_matrix(args.F)
    a, b, c, d = (x % p for x in entries)
    if (a * d - b * c) % p != 1:
        raise UsageError(f"det(F) = {(a * d - b * c) % p} != 1 mod {p}")
    if (a + d) % p != p - 1:
        raise UsageError(f"trace {(a + d) % p} != -1 mod {p}")
    F = cg.SLMat(a, b, c, d, p)
    G = cg.conjugator_to_zauner(F, p)
    product = G @ F @ G.inverse()
    ok = product == cg.zauner(p) and G.det == 1
    if args.format == "json":
        _emit(args, json.dumps({
            "p": p, "F": F.tolist(), "G": G.tolist(),
            "GFGinv": product.tolist(), "verified": ok,
        }))
    elif args.format == "csv":
        _emit(args, _csv(["p", "F", "G", "GFGinv", "verified"], [
            (p, " ".join(map(str, F.entries)), " ".join(map(str, G.entries)),
             " ".join(map(str, product.entries)), ok)
        ]))
    else:
        _emit(args, "\n".join([
            f"F          = {F.tolist()} mod {p}",
            f"G          = {G.tolist()}",
            f"G F G^-1   = {product.tolist()}",
            f"Z          = {cg.zauner(p).tolist()}",
            "verified" if ok else "VERIFICATION FAILED",
        ]))
    return 0 if ok else 1


# -- fiducial ------------------------------------------------------------------


def cmd_fiducial(args) -> int:
    if args.d < 2:
        raise UsageError("dimension must be >= 2")
    try:
        report = fiducial.search_fiducial(args.d, args.eig_index, args.seed, args.restarts)
    except ValueError as exc:
        raise UsageError(str(exc))
    if args.format == "human":
        r = report
        _emit(args, "\n".join([
            f"d                   = {r.candidate.d}",
            f"space               = {r.candidate.space} (index {r.candidate.eigenvalue_index})",
            f"max overlap dev     = {r.max_overlap_deviation:.3e}",
            f"POVM completeness   = {r.povm_completeness_deviation:.3e}",
            f"eigenvector resid   = {r.eigenvector_residual}",
            "certified" if r.certified else "NOT CERTIFIED",
        ]))
    elif args.format == "csv":
        r = report.to_dict()
        _emit(args, _csv(
            ["d", "deviation", "completeness", "eig_residual", "seed", "restarts", "certified"],
            [[r[k] for k in ("d", "deviation", "completeness", "eig_residual", "seed",
                             "restarts", "certified")]],
        ))
    else:
        _emit(args, report.to_json())
    return 0 if report.certified else 1


# -- numtheory -----------------------------------------------------------------


def numtheory_row(p: int) -> dict:
    pair = modnum.legendre_pair_sum(p)
    succ = modnum.residue_successor_sum(p)
    succ_closed = modnum.residue_successor_sum_closed(p)
    n_formula = modnum.consecutive_residue_count(p)
    n_brute = modnum.consecutive_residue_count_brute(p)
    row = {
        "p": p, "pair_sum": pair, "successor_sum": succ,
        "successor_closed": succ_closed, "N_formula": n_formula, "N_brute": n_brute,
    }
    ok = pair == -1 and succ == -1 and succ_closed == -1 and n_formula == n_brute
    if p > 3:
        expected = p - 1 if p % 3 == 1 else p + 1
        res = set(modnum.residues(p))
        counts = {
            modnum.count_curve_points([g, 0, -3], p)
            for g in range(1, p) if g not in res
        }
        g0 = next(g for g in range(1, p) if g not in res)
        brute = modnum.count_curve_points_brute([g0, 0, -3], p)
        row.update(upsilon_expected=expected, upsilon_counts=sorted(counts), upsilon_brute=brute)
        ok = ok and counts == {expected} and brute == expected
    row["ok"] = ok
    return row


def cmd_numtheory(args) -> int:
    if args.p is not None:
        try:
            modnum.require_odd_prime(args.p)
        except ValueError as exc:
            raise UsageError(str(exc))
        primes = [args.p]
    else:
        if not 3 <= args.lo <= args.hi:
            raise UsageError(f"invalid range {args.lo}..{args.hi}")
        primes = modnum.odd_primes(args.lo, args.hi)
    rows = [numtheory_row(p) for p in primes]
    ok = all(r["ok"] for r in rows)
    cols = ["p", "pair_sum", "successor_sum", "successor_closed", "N_formula", "N_brute",
            "upsilon_expected", "upsilon_brute", "ok"]
    if args.format == "json":
        _emit(args, json.dumps({"rows": rows, "all_ok": ok}))
    elif args.format == "csv":
        _emit(args, _csv(cols, [[r.get(c, "") for c in cols] for r in rows]))
    else:
        lines = [" ".join(f"{c:>16}" for c in cols)]
        lines += [" ".join(f"{str(r.get(c, '-')):>16}" for c in cols) for r in rows]
        lines.append(f"{len(rows)} primes, {'all identities hold' if ok else 'FAILURES'}")
        _emit(args, "\n".join(lines))
    return 0 if ok else 1


# -- unitary / verify ----------------------------------------------------------


def _unitary_for(d: int, entries) -> "pauli_rep.np.ndarray":
    if d % 2:
        return pauli_rep.metaplectic_unitary(d, entries)
    return pauli_rep.intertwiner(d, entries)


def cmd_unitary(args) -> int:
    if args.d < 2:
        raise UsageError("dimension must be >= 2")
    if args.F is None:
        U = pauli_rep.zauner_unitary(args.d)
    else:
        try:
            U = _unitary_for(args.d, parse_matrix(args.F))
        except ValueError as exc:
            raise UsageError(str(exc))
    _emit(args, pauli_rep.matrix_to_json(U))
    return 0


def cmd_verify(args) -> int:
    try:
        U = pauli_rep.matrix_from_json(Path(args.file).read_text())
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(f"cannot read matrix: {exc}")
    d = U.shape[0]
    F = parse_matrix(args.F)
    unit = pauli_rep.unitarity_defect(U)
    dev = pauli_rep.verify_intertwining(U, F, d)
    ok = unit < args.tol and dev < args.tol
    if args.format == "json":
        _emit(args, json.dumps({"d": d, "F": list(F), "unitarity": unit,
                                "intertwining": dev, "ok": ok}))
    elif args.format == "csv":
        _emit(args, _csv(["d", "unitarity", "intertwining", "ok"], [(d, unit, dev, ok)]))
    else:
        _emit(args, f"d={d} unitarity defect {unit:.3e} intertwining deviation {dev:.3e} "
                    f"{'OK' if ok else 'FAILED'}")
    return 0 if ok else 1


# -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["human", "json", "csv"], default=None,
                        help="default: json for fiducial, human otherwise")
    common.add_argument("-o", "--output", help=f"also write output here (relative to ${OUTPUT_DIR_ENV} if set)")

    parser = argparse.ArgumentParser(prog="sicpovm", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tcount", parents=[common],
                       help="count trace -1 classes of SL(2, dbar) against the T_d formula",
                       description="CSV columns: d,dbar,t_count,formula,status")
    p.add_argument("--from", dest="lo", type=int, default=2)
    p.add_argument("--to", dest="hi", type=int, default=47)
    p.add_argument("--classes", action="store_true", help="include class tables (json only)")
    p.set_defaults(func=cmd_tcount)

    p = sub.add_parser("conjugator", parents=[common],
                       help="find G with G F G^-1 = Z in SL(2, p)",
                       description="CSV columns: p,F,G,GFGinv,verified")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("-F", required=True, help="row-major entries a,b,c,d")
    p.set_defaults(func=cmd_conjugator)

    p = sub.add_parser("fiducial", parents=[common],
                       help="search a Zauner eigenspace for a SIC fiducial",
                       description="CSV columns: d,deviation,completeness,eig_residual,"
                                   "seed,restarts,certified")
    p.add_argument("-d", type=int, required=True)
    p.add_argument("--eig-index", type=int, default=None,
                   help="eigenspace index (default: largest first)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=50)
    p.set_defaults(func=cmd_fiducial, default_format="json")

    p = sub.add_parser("numtheory", parents=[common],
                       help="check the Legendre-symbol identities for odd primes",
                       description="CSV columns: p,pair_sum,successor_sum,successor_closed,"
                                   "N_formula,N_brute,upsilon_expected,upsilon_brute,ok")
    p.add_argument("-p", type=int, default=None)
    p.add_argument("--from", dest="lo", type=int, default=3)
    p.add_argument("--to", dest="hi", type=int, default=199)
    p.set_defaults(func=cmd_numtheory)

    p = sub.add_parser("unitary", parents=[common],
                       help="emit a Clifford unitary as matrix JSON (default: Zauner)")
    p.add_argument("-d", type=int, required=True)
    p.add_argument("-F", default=None, help="row-major entries a,b,c,d")
    p.set_defaults(func=cmd_unitary)

    p = sub.add_parser("verify", parents=[common],
                       help="check a matrix JSON file for covariance under F",
                       description="CSV columns: d,unitarity,intertwining,ok")
    p.add_argument("file")
    p.add_argument("-F", required=True, help="row-major entries a,b,c,d")
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = getattr(args, "default_format", "human")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.exit(2, f"sicpovm {args.command}: error: {exc}\n")


if __name__ == "__main__":
    sys.exit(main())
