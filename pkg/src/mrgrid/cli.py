"""Command-line front end.

Subcommands: enumerate, classify, counterexample, construct, tp, lift.
Every run is deterministic given its seed: JSON output is canonical
(sorted keys) and CSV files use RFC 4180 quoting, so identical configs
produce byte-identical files.  The exit code is 0 exactly when every
verification performed by the run passed.

Syntax of the shared flags:
  --topo  MxN:a,b,h     e.g. 5x5:2,2,0  (h may be omitted, default 0)
  --field p^d[:hex]     e.g. 2^13, 13, 2^3:b  (hex packs the modulus
                        coefficients little-endian as a base-p integer)
  --seed / --trials / --jobs / --out

The environment variable MRGRID_CACHE may point at a directory used to
reuse pattern censuses between runs.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import re
import sys

from .errors import MrgridError
from .gf import make_field
from .codes import LinearCode, corrects, dual, is_mds, puncture
from .topology import (
    CORRECTABLE,
    PROVEN_UNCORRECTABLE,
    ErasurePattern,
    GridTopology,
    classify_patterns,
    counterexample_orbit,
    counterexample_pattern,
    emax_global,
    enumerate_regular_max,
    find_mr_code,
    is_regular,
    kernel_codeword,
    lift_extend,
    lift_puncture,
    max_pattern_size,
    pmds_block_code,
    add_global_redundancy,
    sample_mds_pair,
    tp_correctable_check,
)

CENSUS_COLUMNS = ["pattern_id", "cells", "regular", "verdict", "trials",
                  "certificate_ref", "seed"]


# ---------------------------------------------------------------------------
# argument parsing helpers
# ---------------------------------------------------------------------------

def parse_topology(text: str) -> GridTopology:
    m = re.fullmatch(r"(\d+)x(\d+):(\d+),(\d+)(?:,(\d+))?", text)
    if not m:
        raise argparse.ArgumentTypeError(
            f"topology must look like MxN:a,b,h, got {text!r}")
    g = [int(v) for v in m.groups(default="0")]
    try:
        return GridTopology(g[0], g[1], g[2], g[3], g[4])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def parse_field(text: str):
    m = re.fullmatch(r"(\d+)(?:\^(\d+))?(?::([0-9a-fA-F]+))?", text)
    if not m:
        raise argparse.ArgumentTypeError(
            f"field must look like p^d[:modulus-hex], got {text!r}")
    p = int(m.group(1))
    d = int(m.group(2) or 1)
    modulus = None
    if m.group(3):
        packed = int(m.group(3), 16)
        coeffs = []
        for _ in range(d + 1):
            coeffs.append(packed % p)
            packed //= p
        modulus = coeffs
    try:
        return make_field(p, d, modulus=modulus)
    except MrgridError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _write_json(path, obj):
    with open(path, "w") as fh:
        json.dump(obj, fh, sort_keys=True, indent=2)
        fh.write("\n")


def _element_json(field, code):
    return list(field.code_to_coeffs(code))


def _cells_json(pattern: ErasurePattern) -> str:
    return json.dumps([list(c) for c in pattern.cells], separators=(",", ":"))


def _census_cache_path(topo: GridTopology):
    root = os.environ.get("MRGRID_CACHE")
    if not root:
        return None
    os.makedirs(root, exist_ok=True)
    return os.path.join(
        root, f"census_{topo.m}x{topo.n}_{topo.a}_{topo.b}_{topo.h}.json")


def _load_or_enumerate(topo: GridTopology):
    """Regular maximal patterns, reusing the MRGRID_CACHE census if any."""
    cache = _census_cache_path(topo)
    if cache and os.path.exists(cache):
        with open(cache) as fh:
            data = json.load(fh)
        if data.get("topo") == list(topo.key()):
            return [ErasurePattern(topo.m, topo.n, b) for b in data["bits"]], True
    patterns = enumerate_regular_max(topo)
    if cache:
        _write_json(cache, {"topo": list(topo.key()),
                            "bits": [p.bits for p in patterns]})
    return patterns, False


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_enumerate(args) -> int:
    topo = args.topo
    patterns, cached = _load_or_enumerate(topo)
    os.makedirs(args.out, exist_ok=True)
    census = os.path.join(args.out, "census.csv")
    orbit = (counterexample_orbit()
             if (topo.m, topo.n, topo.a, topo.b) == (5, 5, 2, 2) else {})
    orbit_ids = []
    with open(census, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CENSUS_COLUMNS)
        for i, p in enumerate(patterns):
            if p.bits in orbit:
                orbit_ids.append(i)
            w.writerow([i, _cells_json(p), "true", "", "", "", args.seed])
    _write_json(os.path.join(args.out, "summary.json"), {
        "command": "enumerate",
        "topo": str(topo),
        "max_pattern_size": max_pattern_size(topo),
        "count": len(patterns),
        "scope": "patterns of exactly max_pattern_size",
        "counterexample_orbit_ids": orbit_ids,
        "from_cache": cached,
        "seed": args.seed,
    })
    print(f"{len(patterns)} regular patterns of size "
          f"{max_pattern_size(topo)} for {topo} -> {census}")
    if orbit_ids:
        print(f"{len(orbit_ids)} patterns flagged as counterexample "
              f"orbit members")
    return 0


def cmd_classify(args) -> int:
    topo = args.topo
    if topo.h != 0:
        print("classification runs on the h = 0 topology", file=sys.stderr)
        return 1
    if args.census:
        patterns = _read_census_patterns(args.census, topo)
    else:
        patterns, _ = _load_or_enumerate(topo)
    results = classify_patterns(topo, patterns, args.field,
                                trials=args.trials, seed=args.seed,
                                jobs=args.jobs, assume_regular=False)
    os.makedirs(args.out, exist_ok=True)
    out_csv = os.path.join(args.out, "verdicts.csv")
    orbit = (counterexample_orbit()
             if (topo.m, topo.n, topo.a, topo.b) == (5, 5, 2, 2) else {})
    counts = {}
    with open(out_csv, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CENSUS_COLUMNS)
        for i, (p, (status, trials)) in enumerate(zip(patterns, results)):
            counts[status] = counts.get(status, 0) + 1
            if status == CORRECTABLE:
                ref = f"trial:{trials - 1}"
            elif status == PROVEN_UNCORRECTABLE:
                ref = "kernel" if p.bits in orbit else "not-regular"
            else:
                ref = ""
            w.writerow([i, _cells_json(p), "true", status, trials, ref,
                        args.seed])
    _write_json(os.path.join(args.out, "summary.json"), {
        "command": "classify",
        "topo": str(topo),
        "field": args.field.to_dict(),
        "trials": args.trials,
        "seed": args.seed,
        "counts": counts,
        "patterns": len(patterns),
    })
    print(f"classified {len(patterns)} patterns for {topo}: {counts}")
    return 0


def _read_census_patterns(path, topo):
    out = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            cells = [tuple(c) for c in json.loads(row["cells"])]
            out.append(ErasurePattern.from_cells(topo.m, topo.n, cells))
    return out


def cmd_counterexample(args) -> int:
    topo = GridTopology(5, 5, 2, 2, 0)
    field = args.field
    pattern = counterexample_pattern()
    pairs = []
    all_ok = True
    for t in range(args.trials):
        col, row = sample_mds_pair(topo, field, args.seed, t)
        kernel, steps = kernel_codeword(col, row, trace=True)
        h_row, h_col = row.parity_check(), col.parity_check()
        rows_ok = all(not any(h_row.mul_vector(kernel.code_rows[r]))
                      for r in range(5))
        cols_ok = all(not any(h_col.mul_vector(kernel.column_codes(c)))
                      for c in range(5))
        support_ok = {(r + 1, c + 1) for r in range(5) for c in range(5)
                      if kernel.code_rows[r][c]} == set(pattern.cells)
        prod_corrects = corrects_product(col, row, pattern)
        ok = rows_ok and cols_ok and support_ok and not prod_corrects
        all_ok &= ok
        pairs.append({
            "pair": t,
            "col_gen": [_element_json(field, v)
                        for r in col.gen.code_rows for v in r],
            "row_gen": [_element_json(field, v)
                        for r in row.gen.code_rows for v in r],
            "kernel": [[_element_json(field, v) for v in r]
                       for r in kernel.code_rows],
            "steps": [{"label": lbl,
                       "grid": [[None if v is None else _element_json(field, v)
                                 for v in row_] for row_ in grid]}
                      for lbl, grid in steps],
            "rows_in_row_code": rows_ok,
            "cols_in_col_code": cols_ok,
            "support_matches_pattern": support_ok,
            "corrects": prod_corrects,   # must be false
        })
    os.makedirs(args.out, exist_ok=True)
    valid = sum(1 for p in pairs
                if p["rows_in_row_code"] and p["cols_in_col_code"]
                and p["support_matches_pattern"] and not p["corrects"])
    _write_json(os.path.join(args.out, "report.json"), {
        "command": "counterexample",
        "field": field.to_dict(),
        "seed": args.seed,
        "pattern": pattern.to_dict(),
        "pairs": pairs,
        "valid_pairs": valid,
        "all_ok": all_ok,
    })
    print(f"{len(pairs)} MDS pairs over {field}: "
          f"{valid} valid kernel witnesses")
    return 0 if all_ok else 1


def corrects_product(col, row, pattern):
    from .codes import product_code
    return corrects(product_code(col, row), pattern.to_indices(),
                    cross_check=False)


def cmd_construct(args) -> int:
    topo = args.topo
    field = args.field
    base_topo = GridTopology(topo.m, topo.n, topo.a, topo.b, 0)
    if args.base == "pmds":
        if topo.a != 0:
            print("the pmds base requires a = 0", file=sys.stderr)
            return 1
        base = pmds_block_code(topo.m, topo.n, topo.b, field)
    else:
        with open(args.base) as fh:
            base = LinearCode.from_dict(json.load(fh))
    expected_k = (topo.m - topo.a) * (topo.n - topo.b)
    checks = {"base_dimension": base.k == expected_k}
    patterns, _ = _load_or_enumerate(base_topo)
    statuses = classify_patterns(base_topo, patterns, field,
                                 trials=args.trials, seed=args.seed,
                                 assume_regular=True)
    emax0 = [p for p, (s, _) in zip(patterns, statuses) if s == CORRECTABLE]
    checks["base_is_mr"] = all(
        corrects(base, p.to_indices(), cross_check=False) for p in emax0)
    code = add_global_redundancy(base, topo.h)
    checks["dimension"] = code.k == expected_k - topo.h
    targets = emax_global(emax0, topo)
    matrix = []
    for p in targets:
        ok = corrects(code, p.to_indices(), cross_check=False)
        matrix.append({"cells": [list(c) for c in p.cells], "corrected": ok})
    checks["corrects_all"] = all(row["corrected"] for row in matrix)
    mds_rows = []
    for p in emax0:
        rest = puncture(code, p.to_indices())
        ok = (rest.n == topo.cells - len(p) and rest.k == code.k
              and is_mds(rest))
        mds_rows.append({"cells": [list(c) for c in p.cells], "mds": ok})
    checks["restrictions_mds"] = all(r["mds"] for r in mds_rows)
    os.makedirs(args.out, exist_ok=True)
    _write_json(os.path.join(args.out, "code.json"), code.to_dict())
    _write_json(os.path.join(args.out, "verification.json"), {
        "command": "construct",
        "topo": str(topo),
        "base": args.base,
        "field": field.to_dict(),
        "seed": args.seed,
        "dimension": code.k,
        "dimension_expected": expected_k - topo.h,
        "checks": checks,
        "pattern_matrix": matrix,
        "mds_restrictions": mds_rows,
    })
    ok = all(checks.values())
    print(f"construct {topo}: dim {code.k}, "
          f"{sum(r['corrected'] for r in matrix)}/{len(matrix)} patterns "
          f"corrected, checks {'pass' if ok else 'FAIL'}")
    return 0 if ok else 1


def cmd_tp(args) -> int:
    topo = args.topo
    if topo.h != 0:
        print("tp runs on the h = 0 topology", file=sys.stderr)
        return 1
    field = args.field
    patterns, _ = _load_or_enumerate(topo)
    statuses = classify_patterns(topo, patterns, field, trials=args.trials,
                                 seed=args.seed, assume_regular=True)
    emax0 = [p for p, (s, _) in zip(patterns, statuses) if s == CORRECTABLE]
    mr = find_mr_code(topo, field, trials=args.trials, seed=args.seed,
                      emax=emax0)
    if mr is not None:
        col, row = dual(mr.col_code), dual(mr.row_code)
    else:
        c0, r0 = sample_mds_pair(topo, field, args.seed, 0)
        col, row = dual(c0), dual(r0)
    report = tp_correctable_check(col, row, emax0)
    os.makedirs(args.out, exist_ok=True)
    out = report.to_dict()
    out.update({
        "command": "tp",
        "topo": str(topo),
        "field": field.to_dict(),
        "seed": args.seed,
        "dual_mr_certificate_found": mr is not None,
    })
    _write_json(os.path.join(args.out, "tp_report.json"), out)
    ok = report.subset_holds and (report.equality_holds or mr is None)
    print(f"tp {topo}: subset={report.subset_holds} "
          f"dual_is_mr={report.dual_is_mr} equality={report.equality_holds}")
    return 0 if ok else 1


def cmd_lift(args) -> int:
    with open(args.pattern) as fh:
        pattern = ErasurePattern.from_dict(json.load(fh))
    topo = args.topo if args.topo else GridTopology(
        pattern.m, pattern.n, 2, 2, 0)
    if args.mode == "extend":
        lifted = lift_extend(topo, pattern, args.delta, args.gamma,
                             pad_to_maximal=args.pad)
        target = GridTopology(topo.m + args.delta, topo.n + args.gamma,
                              topo.a, topo.b, 0)
    else:
        lifted = lift_puncture(topo, pattern, args.delta, args.gamma)
        target = GridTopology(topo.m + args.delta, topo.n + args.gamma,
                              topo.a + args.delta, topo.b + args.gamma, 0)
    regular = is_regular(target, lifted)
    os.makedirs(args.out, exist_ok=True)
    _write_json(os.path.join(args.out, "pattern.json"), lifted.to_dict())
    _write_json(os.path.join(args.out, "lift_report.json"), {
        "command": "lift",
        "mode": args.mode,
        "delta": args.delta,
        "gamma": args.gamma,
        "source_topo": str(topo),
        "target_topo": str(target),
        "cells": len(lifted),
        "regular": regular,
        "padded": args.pad and args.mode == "extend",
    })
    print(f"lift {args.mode} -> {target}: {len(lifted)} cells, "
          f"regular={regular}")
    return 0 if regular else 1


# ---------------------------------------------------------------------------
# wiring
# ---------------------------------------------------------------------------

def _add_common(sp, topo=True, field=True):
    if topo:
        sp.add_argument("--topo", type=parse_topology, required=True,
                        help="topology MxN:a,b,h")
    if field:
        sp.add_argument("--field", type=parse_field, default=None,
                        help="field p^d[:modulus-hex]")
    sp.add_argument("--trials", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--out", required=True, help="output directory")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="mrgrid",
        description="erasure-pattern workbench for grid-like topologies")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("enumerate",
                        help="list all maximal-size regular patterns")
    _add_common(sp, field=False)
    sp.set_defaults(fn=cmd_enumerate)

    sp = sub.add_parser("classify",
                        help="classify patterns as correctable or not")
    _add_common(sp)
    sp.add_argument("--census", help="census CSV to classify (default: "
                                     "enumerate fresh or reuse MRGRID_CACHE)")
    sp.set_defaults(fn=cmd_classify, default_field="2^13")

    sp = sub.add_parser("counterexample",
                        help="verify the 5x5 kernel construction on random "
                             "MDS pairs (--trials pairs)")
    _add_common(sp, topo=False)
    sp.set_defaults(fn=cmd_counterexample, default_field="2^3")

    sp = sub.add_parser("construct",
                        help="add global parities to an MR base code and "
                             "verify the corrected patterns")
    _add_common(sp)
    sp.add_argument("--base", default="pmds",
                    help="'pmds' or a code JSON file")
    sp.set_defaults(fn=cmd_construct, default_field="2^3")

    sp = sub.add_parser("tp", help="compare tensor-product correctable "
                                   "patterns with topology complements")
    _add_common(sp)
    sp.set_defaults(fn=cmd_tp, default_field="2^8")

    sp = sub.add_parser("lift", help="lift a pattern to a larger grid")
    sp.add_argument("--pattern", required=True, help="pattern JSON file")
    sp.add_argument("--mode", choices=["extend", "puncture"], required=True)
    sp.add_argument("--delta", type=int, default=0)
    sp.add_argument("--gamma", type=int, default=0)
    sp.add_argument("--pad", action="store_true",
                    help="pad an extend lift to maximal size")
    sp.add_argument("--topo", type=parse_topology, default=None,
                    help="source topology (default: pattern shape with a=b=2)")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", required=True)
    sp.set_defaults(fn=cmd_lift)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if hasattr(args, "field") and args.field is None:
        args.field = parse_field(getattr(args, "default_field", "2^13"))
    try:
        return args.fn(args)
    except MrgridError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
