"""Command-line front end.

Usage examples:
  delpezzo-codes build deg6-a1 --q 4 --out deg6-a1_q4.json
  delpezzo-codes build deg4-d5 --q 3 --alpha 1 --beta 2 --format csv --out d5.csv
  delpezzo-codes analyze deg6-a1_q4.json
  delpezzo-codes verify --q 3,4,5 --jobs 4
  delpezzo-codes classgroup deg4-4a1

Exit codes: 0 success, 1 a verify cell failed, 2 bad family or field order,
3 malformed matrix file, 4 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Sequence

import numpy as np

from .code import BudgetExceeded, GeneratorMatrix, analyze_matrix, generator_matrix
from .families import (
    FAMILY_IDS,
    FamilyError,
    build_instance,
    expected_parameters,
    get_family,
)
from .gf import FieldError, make_field, prime_power
from .lattice import class_group_report

FORMAT_TAG = "delpezzo-codes/1"
DEFAULT_QS = (2, 3, 4, 5, 7, 8, 9)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_MALFORMED = 3
EXIT_BUDGET = 4


class MalformedBundle(ValueError):
    pass


# --- bundles ----------------------------------------------------------------------


def bundle_header(instance, G: GeneratorMatrix) -> dict:
    F = instance.field
    return {
        "format": FORMAT_TAG,
        "family": instance.family,
        "q": instance.q,
        "field": F.descriptor(),
        "k": G.k,
        "n": G.n,
        "columns": [col.describe() for col in instance.plan],
        "configuration": instance.configuration_summary(),
        "expected": instance.expected.as_dict(),
    }


def dump_bundle(header: dict, G: GeneratorMatrix, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({**header, "matrix": G.rows()}, sort_keys=True, separators=(",", ":")) + "\n"
    buf = io.StringIO()
    buf.write("# " + json.dumps(header, sort_keys=True, separators=(",", ":")) + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(G.rows())
    return buf.getvalue()


def parse_bundle(text: str) -> tuple[dict, GeneratorMatrix]:
    """Parse a JSON or CSV bundle and check it against its own header."""
    try:
        if text.lstrip().startswith("{"):
            data = json.loads(text)
            rows = data.pop("matrix")
            header = data
        else:
            first, _, body = text.partition("\n")
            if not first.startswith("# "):
                raise MalformedBundle("CSV bundle must start with a '# {header}' line")
            header = json.loads(first[2:])
            rows = [[int(x) for x in r] for r in csv.reader(io.StringIO(body)) if r]
    except (json.JSONDecodeError, KeyError, ValueError) as exc:
        raise MalformedBundle(f"cannot parse bundle: {exc}") from exc
    if header.get("format") != FORMAT_TAG:
        raise MalformedBundle(f"unknown format tag {header.get('format')!r}")
    try:
        desc = header["field"]
        F = make_field(int(desc["p"]), int(desc["e"]))
        n = int(header["n"])
    except (KeyError, TypeError, ValueError, FieldError) as exc:
        raise MalformedBundle(f"bad header: {exc}") from exc
    if list(desc["modulus"]) != list(F.modulus):
        raise MalformedBundle("field modulus does not match the canonical modulus")
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise MalformedBundle("matrix must be a list of rows")
    for i, r in enumerate(rows):
        if len(r) != n:
            raise MalformedBundle(f"row {i} has {len(r)} entries, header says n = {n}")
        if any(not isinstance(x, int) or not 0 <= x < F.order for x in r):
            raise MalformedBundle(f"row {i} has an entry outside 0..{F.order - 1}")
    arr = np.array(rows, dtype=np.int64).reshape(len(rows), n)
    return header, GeneratorMatrix(F, arr)


def report_for_bundle(header: dict, G: GeneratorMatrix, jobs: int = 1) -> dict:
    report = analyze_matrix(G, family=header.get("family"), expected=header.get("expected"), jobs=jobs)
    out = report.as_dict()
    if G.k != header.get("k"):
        out["notes"].append(f"matrix has {G.k} rows, header says k = {header.get('k')}")
    return out


# --- commands ----------------------------------------------------------------------


def _err(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


def cmd_build(args: argparse.Namespace) -> int:
    instance = build_instance(args.family, args.q, alpha=args.alpha, beta=args.beta, seed=args.seed)
    G = generator_matrix(instance)
    text = dump_bundle(bundle_header(instance, G), G, args.format)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {args.out} ({G.k}x{G.n} over F_{args.q})")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_analyze(args: argparse.Namespace) -> int:
    try:
        text = Path(args.file).read_text(encoding="utf-8")
    except OSError as exc:
        raise MalformedBundle(str(exc)) from exc
    header, G = parse_bundle(text)
    out = json.dumps(report_for_bundle(header, G, args.jobs), indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)
    return EXIT_OK


def verify_cell(family: str, q: int) -> dict:
    """Build and analyze one (family, q) pair against the stored expectations."""
    desc = get_family(family)
    if q in desc.excluded_q:
        return {"family": family, "q": q, "status": "SKIP", "reason": f"q in {sorted(desc.excluded_q)}"}
    expected = expected_parameters(family, q).as_dict()
    instance = build_instance(family, q)
    report = analyze_matrix(generator_matrix(instance), family=family, expected=expected)
    cg = class_group_report(desc.lattice).summary()
    cg_ok = all(cg[key] == val for key, val in desc.expected_report.items())
    ok = report.ok and cg_ok
    return {
        "family": family,
        "q": q,
        "status": "PASS" if ok else "FAIL",
        "n": report.n,
        "k": report.k_effective,
        "d_min": report.d_min,
        "expected": expected,
        "checks": {**report.bound_checks, "class_group": cg_ok},
    }


def _grid(cells: list[dict], qs: Sequence[int]) -> str:
    width = max(len(f) for f in FAMILY_IDS)
    lines = [" " * width + "".join(f"{'q=' + str(q):>7}" for q in qs)]
    by_key = {(c["family"], c["q"]): c["status"] for c in cells}
    for fam in FAMILY_IDS:
        lines.append(f"{fam:<{width}}" + "".join(f"{by_key[(fam, q)]:>7}" for q in qs))
    return "\n".join(lines)


def cmd_verify(args: argparse.Namespace) -> int:
    qs = args.q if args.q else list(DEFAULT_QS)
    for q in qs:
        prime_power(q)
    pairs = [(fam, q) for fam in FAMILY_IDS for q in qs]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            cells = list(pool.map(verify_cell, *zip(*pairs)))
    else:
        cells = [verify_cell(fam, q) for fam, q in pairs]
    print(_grid(cells, qs))
    failed = [c for c in cells if c["status"] == "FAIL"]
    for c in failed:
        bad = [name for name, ok in c["checks"].items() if not ok]
        print(f"FAIL {c['family']} q={c['q']}: (n,k,d)=({c['n']},{c['k']},{c['d_min']}) failed {', '.join(bad)}")
    if args.out:
        Path(args.out).write_text(json.dumps(cells, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_classgroup(args: argparse.Namespace) -> int:
    desc = get_family(args.family)
    summary = class_group_report(desc.lattice).summary()
    match = all(summary[key] == val for key, val in desc.expected_report.items())
    out = {"family": desc.id, "report": summary, "expected": desc.expected_report, "match": match}
    print(json.dumps(out, indent=2, sort_keys=True))
    return EXIT_OK


# --- parser ------------------------------------------------------------------------


def _q_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="delpezzo-codes", description="Anticanonical codes on singular del Pezzo surfaces.")
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build a generator matrix and export it")
    b.add_argument("family", help=f"one of {', '.join(FAMILY_IDS)}")
    b.add_argument("--q", type=int, required=True, help="field order")
    b.add_argument("--alpha", type=int, default=None, help="deg4-d5 parameter alpha, as an integer code (nonzero)")
    b.add_argument("--beta", type=int, default=None, help="deg4-d5 parameter beta, as an integer code")
    b.add_argument("--out", default=None, help="output path (stdout if omitted)")
    b.add_argument("--format", choices=("json", "csv"), default="json")
    b.add_argument("--seed", type=int, default=None, help="accepted for reproducibility records; the search is deterministic")
    b.set_defaults(func=cmd_build)

    a = sub.add_parser("analyze", help="compute n, k, d and the weight distribution of a matrix file")
    a.add_argument("file")
    a.add_argument("--out", default=None)
    a.add_argument("--jobs", type=int, default=1)
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="check every family against its expected parameters")
    v.add_argument("--q", type=_q_list, default=None, help="comma-separated field orders (default 2,3,4,5,7,8,9)")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--out", default=None, help="write the per-cell results as JSON")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("classgroup", help="print the class group report of a family")
    c.add_argument("family")
    c.set_defaults(func=cmd_classgroup)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FamilyError, FieldError) as exc:
        _err(str(exc))
        return EXIT_USAGE
    except MalformedBundle as exc:
        _err(str(exc))
        return EXIT_MALFORMED
    except BudgetExceeded as exc:
        _err(str(exc))
        return EXIT_BUDGET


if __name__ == "__main__":
    raise SystemExit(main())
