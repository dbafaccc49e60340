"""Command-line front end.

    pearlcount invariant --genus 2 --d1 1 --d2 3 --name N --via both
    pearlcount diagrams --genus 2 --d1 1 --d2 1
    pearlcount series --genus 3 --d 1 --max-n 12
    pearlcount check quasimod --genus 2 --d 2 --max-n 8

Exit status: 0 success, 1 failed check or mismatch, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from . import checks, mult
from .diagrams import Kind, enumerate_diagrams
from .invariants import (
    InvariantQuery,
    d2g2_prefix,
    dg2_prefix,
    invariant_by_cover,
    invariant_by_diagrams,
    primitive_closed,
    quasimodularity_check,
    s_series_prefix,
    series_F,
)
from .qpoly import HalfLaurent

SUITES = ("oracle", "cover", "primitive", "specialize", "quasimod", "codegree", "series")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _text(v) -> str:
    return v.to_text() if isinstance(v, HalfLaurent) else str(v)


def _json(v):
    return v.to_json() if isinstance(v, HalfLaurent) else v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pearlcount", description="Tropical curve counts on abelian surfaces.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def common(sp, bidegree=True):
        sp.add_argument("--genus", type=int, required=bidegree)
        if bidegree:
            sp.add_argument("--d1", type=int, required=True)
            sp.add_argument("--d2", type=int, required=True)
        sp.add_argument("--fls", action="store_true", help="fixed linear system variant")
        sp.add_argument("--format", choices=("text", "json", "csv"), default=None)
        sp.add_argument("--out", help="write the output to this file")

    inv = sub.add_parser("invariant", help="compute one invariant")
    common(inv)
    inv.add_argument("--a", type=int, default=0)
    inv.add_argument("--name", choices=("M", "N", "Nprim", "BG", "R"), default="N")
    inv.add_argument("--via", choices=("diagrams", "cover", "both"), default="diagrams")

    dg = sub.add_parser("diagrams", help="list the diagrams of a genus and bidegree")
    common(dg)
    dg.add_argument("--multiplicity", help="m0, M0, mu, mu1, Upsilon, Upsilon1, omega, Omega, m_a:A, M_a:A, ...")

    se = sub.add_parser("series", help="coefficient prefix of a generating series")
    common(se, bidegree=False)
    se.add_argument("--series", choices=("F", "S", "DG2", "D2G2"), default="F")
    se.add_argument("--d", type=int, default=1)
    se.add_argument("--max-n", type=int, default=12)

    ch = sub.add_parser("check", help="run cross-check suites")
    ch.add_argument("suites", nargs="+", choices=SUITES)
    ch.add_argument("--genus", type=int, help="restrict to one genus")
    ch.add_argument("--d", type=int, default=2, help="d for the quasimodularity suite")
    ch.add_argument("--max-n", type=int, default=None)
    ch.add_argument("--codegree2", choices=("displayed", "corrected"), default="corrected")
    ch.add_argument("--format", choices=("text", "json", "csv"), default=None)
    ch.add_argument("--out")
    return p


def _kind(args) -> Kind:
    return Kind.FLS if getattr(args, "fls", False) else Kind.POINT


def _emit_rows(fmt: str, header: Sequence[str], rows: list[list], doc) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return buf.getvalue()
    return "".join(" ".join(str(c) for c in r) + "\n" for r in rows)


def cmd_invariant(args) -> tuple[str, int, str]:
    kind = _kind(args)
    q = InvariantQuery(args.genus, args.d1, args.d2, args.a, kind, args.name)
    results = {}
    if args.via in ("diagrams", "both"):
        results["diagrams"] = invariant_by_diagrams(q).value
    if args.via in ("cover", "both"):
        if q.name == "Nprim":
            # primitive curves do not see the divisibility of the class
            results["cover"] = primitive_closed(q.g, q.d1 * q.d2, "N_FLS" if kind is Kind.FLS else "N")
        else:
            results["cover"] = invariant_by_cover(q).value
    verdict = None
    if len(results) == 2:
        verdict = "MATCH" if results["diagrams"] == results["cover"] else "MISMATCH"
    fmt = args.format or "text"
    doc = {"genus": q.g, "d1": q.d1, "d2": q.d2, "a": q.a, "kind": kind.value, "name": q.name}
    doc.update({k: _json(v) for k, v in results.items()})
    if verdict:
        doc["verdict"] = verdict
    if fmt == "text":
        if len(results) == 1:
            out = _text(next(iter(results.values()))) + "\n"
        else:
            out = "".join(f"{k}: {_text(v)}\n" for k, v in results.items()) + f"verdict: {verdict}\n"
    elif fmt == "json":
        out = json.dumps(doc, indent=2) + "\n"
    else:
        rows = [[q.g, q.d1, q.d2, q.a, kind.value, q.name, k, _text(v)] for k, v in results.items()]
        out = _emit_rows("csv", ["genus", "d1", "d2", "a", "kind", "name", "via", "value"], rows, None)
    err = ""
    if verdict == "MISMATCH":
        err = f"mismatch: diagrams={_text(results['diagrams'])} cover={_text(results['cover'])}\n"
    return out, 1 if verdict == "MISMATCH" else 0, err


def cmd_diagrams(args) -> tuple[str, int, str]:
    kind = _kind(args)
    if args.genus < 2 or args.d1 < 0 or args.d2 < 1:
        raise UsageError("need --genus >= 2, --d1 >= 0, --d2 >= 1")
    ds = enumerate_diagrams(args.genus, args.d1, args.d2, kind)
    vals = None
    if args.multiplicity:
        try:
            vals = [mult.multiplicity(d, args.multiplicity) for d in ds]
        except (KeyError, ValueError) as exc:
            raise UsageError(f"bad --multiplicity {args.multiplicity!r}: {exc}") from None
    fmt = args.format or "json"
    if fmt == "json":
        recs = []
        for i, d in enumerate(ds):
            rec = d.to_dict()
            if vals is not None:
                rec["multiplicity"] = {"name": args.multiplicity, "value": _json(vals[i])}
            recs.append(rec)
        return json.dumps(recs, indent=2) + "\n", 0, ""
    header = ["index", "diagram"] + (["multiplicity"] if vals is not None else [])
    rows = [[i, str(d)] + ([_text(vals[i])] if vals is not None else []) for i, d in enumerate(ds)]
    return _emit_rows(fmt, header, rows, None), 0, ""


def cmd_series(args) -> tuple[str, int, str]:
    N = args.max_n
    if N < 1:
        raise UsageError("--max-n must be positive")
    if args.series == "F":
        if args.genus is None or args.genus < 2 or args.d < 1:
            raise UsageError("series F needs --genus >= 2 and --d >= 1")
        s = series_F(args.genus, args.d, N, _kind(args))
    else:
        s = {"S": s_series_prefix, "DG2": dg2_prefix, "D2G2": d2g2_prefix}[args.series](N)
    fmt = args.format or "text"
    rows = [[n, _text(s[n])] for n in range(1, N + 1)]
    doc = {"series": args.series, "coefficients": {str(n): _json(s[n]) for n in range(1, N + 1)}}
    return _emit_rows(fmt, ["n", "coefficient"], rows, doc), 0, ""


def _run_suite(name: str, args) -> list:
    gs = (args.genus,) if args.genus else None
    N = args.max_n
    if name == "oracle":
        return [checks.oracle_suite(gs or (2, 3))]
    if name == "cover":
        return [checks.cover_suite(gs or (2, 3)), checks.fls_cover_suite()]
    if name == "primitive":
        return [
            checks.primitive_suite(gs or (2, 3, 4), N or 8, Kind.POINT),
            checks.primitive_suite(gs or (2, 3, 4), N or 6, Kind.FLS),
        ]
    if name == "specialize":
        return [checks.specialize_suite(gs or (2, 3, 4), N or 8)]
    if name == "quasimod":
        if args.genus:
            return [quasimodularity_check(args.genus, args.d, N or 8)]
        return [checks.quasimod_suite(N=N or 8)]
    if name == "codegree":
        return [
            checks.regularity_suite(gs or (2, 3, 4, 5), N or 10),
            checks.codegree2_suite(gs or (4, 5, 6), N or 10, displayed=args.codegree2 == "displayed"),
        ]
    if name == "series":
        return [checks.series_suite(gs or (2, 3, 4), N or 12)]
    raise UsageError(f"unknown suite {name}")


def cmd_check(args) -> tuple[str, int, str]:
    reports = [r for s in args.suites for r in _run_suite(s, args)]
    failed = [r for r in reports if not r.passed]
    fmt = args.format or "text"
    rows = [[r.name, "PASS" if r.passed else "FAIL", r.checked, "" if r.passed else repr(r.first_failure)] for r in reports]
    doc = [
        {"suite": r.name, "passed": r.passed, "checked": r.checked, "first_failure": None if r.passed else repr(r.first_failure)}
        for r in reports
    ]
    if fmt == "text":
        out = "".join(r.line() + "\n" for r in reports)
    else:
        out = _emit_rows(fmt, ["suite", "verdict", "checked", "first_failure"], rows, doc)
    err = "".join(f"{r.name}: counterexample {r.first_failure!r}\n" for r in failed[:1])
    return out, 1 if failed else 0, err


COMMANDS = {"invariant": cmd_invariant, "diagrams": cmd_diagrams, "series": cmd_series, "check": cmd_check}


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        out, code, err = COMMANDS[args.command](args)
    except UsageError as exc:
        stderr.write(f"usage error: {exc}\n")
        return 2
    except ValueError as exc:
        stderr.write(f"usage error: {exc}\n")
        return 2
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        stdout.write(out)
    if err:
        stderr.write(err)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
