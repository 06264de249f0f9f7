"""Command-line front end.

Exit codes: 0 success, 1 a verification failed (reports are still written),
2 bad usage or invalid input.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import affine, fusion, oracle
from .affine import InvalidLevel, SizeBoundExceeded, check_size, enumerate_domains, validate_l
from .fusion import FusionTable, Kind
from .report import Report, jsonable
from .rootdata import UnsupportedRootSystem, build_root_datum, cache_dir, read_cache_file

SELECTORS = ("pr-product", "thm-pr", "bj", "socle", "propor", "strips", "oracle")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# serialization


def table_records(table: FusionTable):
    """Upper-triangle records (i <= j) sorted by (i, j, k)."""
    return sorted((i, j, k, c) for (i, j, k), c in table.constants.items() if i <= j)


def serialize_table(table: FusionTable, fmt: str = "json") -> bytes:
    if fmt == "json":
        doc = {
            "family": table.family,
            "rank": table.rank,
            "l": table.l,
            "kind": table.kind.value,
            "basis": [list(w) for w in table.basis],
            "constants": [{"i": i, "j": j, "k": k, "n": str(c)}
                          for i, j, k, c in table_records(table)],
        }
        return (json.dumps(doc, indent=2) + "\n").encode()
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i", "j", "k", "n"])
        for i, j, k, c in table_records(table):
            w.writerow([i, j, k, str(c)])
        return buf.getvalue().encode()
    raise ValueError(f"unknown format {fmt!r}")


def serialize_basis_csv(table: FusionTable) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["index"] + [f"w{k + 1}" for k in range(table.rank)])
    for idx, lam in enumerate(table.basis):
        w.writerow([idx, *lam])
    return buf.getvalue().encode()


def basis_path(path: Path) -> Path:
    return path.with_suffix(".basis.csv")


def _mirror(records) -> dict[tuple[int, int, int], Fraction]:
    out = {}
    for i, j, k, n in records:
        out[(i, j, k)] = out[(j, i, k)] = Fraction(n)
    return out


def parse_table_json(data: bytes | str) -> FusionTable:
    doc = json.loads(data)
    return FusionTable(
        kind=Kind(doc["kind"]),
        family=doc["family"],
        rank=doc["rank"],
        l=doc["l"],
        basis=tuple(tuple(w) for w in doc["basis"]),
        constants=_mirror((r["i"], r["j"], r["k"], r["n"]) for r in doc["constants"]),
    )


def parse_table_csv(data: bytes | str, basis: bytes | str, *, kind, family: str,
                    l: int) -> FusionTable:
    def text(x):
        return x.decode() if isinstance(x, bytes) else x

    rows = list(csv.DictReader(io.StringIO(text(data))))
    legend = list(csv.reader(io.StringIO(text(basis))))[1:]
    weights = tuple(tuple(int(c) for c in row[1:]) for row in legend)
    return FusionTable(
        kind=Kind(kind), family=family, rank=len(weights[0]), l=l, basis=weights,
        constants=_mirror((int(r["i"]), int(r["j"]), int(r["k"]), r["n"]) for r in rows),
    )


def _dump_json(obj) -> bytes:
    return (json.dumps(jsonable(obj), indent=2) + "\n").encode()


# ---------------------------------------------------------------------------
# commands


def _datum_doc(datum) -> dict:
    return {
        "family": datum.family,
        "rank": datum.rank,
        "cartan": [list(r) for r in datum.cartan],
        "positive_roots": [list(r) for r in datum.positive_roots],
        "highest_root": list(datum.highest_root),
        "rho": list(datum.rho),
        "coxeter_number": datum.coxeter_number,
        "weyl_order": datum.weyl_order,
        "cartan_det": datum.cartan_det,
        "index_of_connection": datum.index_of_connection,
    }


def _prbar_doc(datum, l: int) -> dict:
    doms = enumerate_domains(datum, l)
    elems = fusion.pr_basis(datum, l)
    return {
        "family": datum.family, "rank": datum.rank, "l": l,
        "basis": [list(w) for w in doms.Xhat],
        "elements": [
            {"lam": list(lam),
             "coords": [{"mu": list(mu), "c": str(c)} for mu, c in sorted(x.items())]}
            for lam, x in zip(doms.Xhat, elems)
        ],
    }


def _prbar_csv(doc: dict) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["lam", "mu", "c"])
    for e in doc["elements"]:
        for t in e["coords"]:
            w.writerow([" ".join(map(str, e["lam"])), " ".join(map(str, t["mu"])), t["c"]])
    return buf.getvalue().encode()


def run_verifications(datum, l: int, selectors) -> list[Report]:
    reports = []
    for sel in selectors:
        if sel == "pr-product":
            reports.append(fusion.check_all_pr_products(datum, l))
        elif sel == "thm-pr":
            reports.append(fusion.check_thm_pr_box(datum, l))
        elif sel == "bj":
            reports.append(fusion.check_bJ_codim(datum, l))
        elif sel == "socle":
            reports.append(fusion.check_socle(datum, l))
        elif sel == "propor":
            reports.append(fusion.check_propor(datum, l))
        elif sel == "strips":
            reports.append(affine.strip_complement_check(datum, l, 3 * l))
        elif sel == "oracle":
            for kind in Kind:
                reports.append(oracle.compare_tables(datum, l, kind))
                reports.append(oracle.check_homomorphism(datum, l, kind))
    return reports


def _cache_info(directory: Path | None) -> dict:
    if directory is None:
        return {"cache_dir": None, "enabled": False, "files": []}
    files = []
    if directory.is_dir():
        for path in sorted(directory.glob("*.mults")):
            name = path.stem
            family, rank = name[0], int(name[1:])
            files.append({"file": path.name, "family": family, "rank": rank,
                          "records": len(read_cache_file(path, rank)),
                          "bytes": path.stat().st_size})
    return {"cache_dir": str(directory), "enabled": True, "files": files}


# ---------------------------------------------------------------------------
# argument handling


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", choices=["A", "D", "E"])
    common.add_argument("--rank", type=int)
    common.add_argument("-l", "--level", dest="l", type=int)
    out = common.add_mutually_exclusive_group()
    out.add_argument("--json", metavar="PATH", help="write JSON to PATH")
    out.add_argument("--csv", metavar="PATH", help="write CSV to PATH")
    common.add_argument("--cache-dir", metavar="DIR",
                        help="multiplicity cache directory (empty string disables it)")
    common.add_argument("--size-bound", type=int, metavar="N",
                        help=f"maximum l^rank (default {affine.DEFAULT_SIZE_BOUND})")

    parser = argparse.ArgumentParser(prog="alcove", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("datum", parents=[common], help="root datum summary")
    sub.add_parser("domains", parents=[common], help="X, P_l, Xhat, Xbar, Xreg")
    sub.add_parser("fusion", parents=[common], help="Verlinde fusion table")
    sub.add_parser("vrplus", parents=[common], help="natural-action fusion table")
    sub.add_parser("prbar", parents=[common], help="basis of the projective ideal")
    v = sub.add_parser("verify", parents=[common], help="run identity checks")
    v.add_argument("selectors", nargs="*", metavar="CHECK",
                   help="any of: " + ", ".join([*SELECTORS, "all"]))
    sub.add_parser("cache-info", parents=[common], help="describe the multiplicity cache")
    return parser


@contextlib.contextmanager
def _settings(args):
    old_env = os.environ.get("ALCOVE_CACHE")
    old_bound = affine.DEFAULT_SIZE_BOUND
    try:
        if args.cache_dir is not None:
            os.environ["ALCOVE_CACHE"] = args.cache_dir
        if args.size_bound is not None:
            affine.DEFAULT_SIZE_BOUND = args.size_bound
        yield
    finally:
        affine.DEFAULT_SIZE_BOUND = old_bound
        if args.cache_dir is not None:
            if old_env is None:
                os.environ.pop("ALCOVE_CACHE", None)
            else:
                os.environ["ALCOVE_CACHE"] = old_env


def _need(args, *names):
    missing = [f"--{n}" if n != "l" else "-l" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command} requires " + ", ".join(missing))


def _emit(args, payload: bytes, csv_payload=None, stdout=None) -> None:
    stdout = stdout or sys.stdout
    if args.csv:
        if csv_payload is None:
            raise UsageError(f"{args.command} has no CSV output; use --json")
        path = Path(args.csv)
        for target, data in csv_payload(path):
            target.write_bytes(data)
    elif args.json:
        Path(args.json).write_bytes(payload)
    else:
        stdout.write(payload.decode())


def _execute(args) -> int:
    if args.command == "cache-info":
        _emit(args, _dump_json(_cache_info(cache_dir())))
        return 0
    _need(args, "family", "rank")
    datum = build_root_datum(args.family, args.rank)
    if args.command == "datum":
        if args.l is not None:
            validate_l(datum, args.l)
        _emit(args, _dump_json(_datum_doc(datum)))
        return 0
    _need(args, "l")
    l = args.l
    validate_l(datum, l)
    check_size(datum, l)
    if args.command == "domains":
        _emit(args, _dump_json(enumerate_domains(datum, l).to_json()))
        return 0
    if args.command in ("fusion", "vrplus"):
        kind = Kind.VR_MINUS if args.command == "fusion" else Kind.VR_PLUS
        table = fusion.build_table(datum, l, kind)
        _emit(args, serialize_table(table, "json"),
              lambda p: [(p, serialize_table(table, "csv")),
                         (basis_path(p), serialize_basis_csv(table))])
        return 0
    if args.command == "prbar":
        doc = _prbar_doc(datum, l)
        _emit(args, _dump_json(doc), lambda p: [(p, _prbar_csv(doc))])
        return 0
    if args.command == "verify":
        unknown = [s for s in args.selectors if s not in (*SELECTORS, "all")]
        if unknown:
            raise UsageError(f"unknown check {unknown[0]!r}; choose from "
                             + ", ".join([*SELECTORS, "all"]))
        if not args.selectors or "all" in args.selectors:
            selectors = SELECTORS
        else:
            selectors = tuple(dict.fromkeys(args.selectors))
        reports = run_verifications(datum, l, selectors)
        doc = {"family": datum.family, "rank": datum.rank, "l": l,
               "passed": all(r.passed for r in reports),
               "reports": [r.to_json() for r in reports]}
        if args.csv:
            raise UsageError("verify has no CSV output; use --json")
        if args.json:
            Path(args.json).write_bytes(_dump_json(doc))
        for r in reports:
            print(f"{'PASS' if r.passed else 'FAIL'} {r.name}", file=sys.stdout)
        return 0 if doc["passed"] else 1
    raise UsageError(f"unknown command {args.command}")


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        with _settings(args):
            return _execute(args)
    except (UsageError, InvalidLevel, SizeBoundExceeded, UnsupportedRootSystem) as exc:
        print(f"alcove: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
