"""Command-line surface.

Exit codes: 0 when everything passes (refusals and skips are not failures),
1 when any check fails or a finding is recorded, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .catalog import bundled_catalog, catalog_entry
from .derivations import verify_automorphism_correspondence
from .errors import PGroupsError
from .fullness import check_theorem43, is_full_wrt
from .groups import FiniteGroup, Subgroup, subgroup_closure
from .io import load_group_json
from .reports import Report, run_checks
from .structure import center, maximal_subgroups, omega, structure_profile


def _load_group(spec: str, max_order: int) -> tuple[str, FiniteGroup]:
    path = Path(spec)
    if path.suffix == ".json" or path.exists():
        return path.stem, load_group_json(path, max_order=max_order)
    entry = catalog_entry(spec)
    return entry.id, entry.build(max_order=max_order)


def _parse_module(G: FiniteGroup, spec: str) -> Subgroup:
    """Subgroup spec: "center", "omega1-center", or a generator index list."""
    if spec == "center":
        return center(G)
    if spec == "omega1-center":
        return omega(center(G), 1)
    try:
        gens = [int(tok) for tok in spec.split(",") if tok.strip() != ""]
    except ValueError:
        raise PGroupsError(f"bad --module spec {spec!r}: expected 'center', "
                           "'omega1-center', or comma-separated element indices")
    return subgroup_closure(G, gens)


def _emit(payload: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for key, value in payload.items():
            print(f"{key}: {json.dumps(value, sort_keys=True)}")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="pgroups",
        description="Derivation rings, fullness/exactness and non-inner "
                    "automorphism witnesses for finite p-groups.")
    parser.add_argument("--max-order", type=int, default=729,
                        help="refuse groups larger than this (default 729)")
    parser.add_argument("--jobs", type=int, default=1,
                        help="worker processes for batch runs")
    parser.add_argument("--json", action="store_true",
                        help="emit machine-readable JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="structure profile of a group")
    p.add_argument("group", help="catalog id or path to a group JSON file")

    p = sub.add_parser("derivations", help="derivation ring of (G, A)")
    p.add_argument("group")
    p.add_argument("--module", required=True,
                   help="'center', 'omega1-center', or element indices")

    p = sub.add_parser("fullness", help="fullness with respect to maximal subgroups")
    p.add_argument("group")
    p.add_argument("--wrt", type=int, default=None,
                   help="index into the maximal-subgroup list (default: all)")

    p = sub.add_parser("exactness", help="exactness/fullness equivalence for (G, A)")
    p.add_argument("group")
    p.add_argument("--module", required=True)

    p = sub.add_parser("berkovich", help="non-inner order-p automorphism search")
    p.add_argument("group")

    p = sub.add_parser("batch", help="run every check over the catalog")
    p.add_argument("--all", action="store_true", required=True)
    p.add_argument("--out", required=True, help="output directory for reports")
    p.add_argument("--timings", action="store_true",
                   help="record wall-clock timings (breaks byte-reproducibility)")

    p = sub.add_parser("catalog", help="catalog operations")
    p.add_argument("action", choices=["list"])

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0

    try:
        return _dispatch(args)
    except PGroupsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (KeyError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _dispatch(args) -> int:
    if args.command == "catalog":
        for entry in bundled_catalog():
            order = entry.presentation.order
            print(f"{entry.id:12s} order {order:4d}  {entry.description}")
        return 0

    if args.command == "batch":
        return _batch(args)

    gid, G = _load_group(args.group, args.max_order)

    if args.command == "analyze":
        _emit({"group": gid, "profile": structure_profile(G).to_json()}, args.json)
        return 0

    if args.command == "derivations":
        A = _parse_module(G, args.module)
        result = verify_automorphism_correspondence(G, A)
        payload = {"group": gid, "module": list(A.members),
                   "derivation_ring": {
                       "size": result["der_size"],
                       "aut_size": result["aut_size"],
                       "nilpotency_degree": result["nilpotency_degree"],
                       "adjoint_class": result["adjoint_class"],
                       "correspondence_verified": result["verified"],
                   }}
        _emit(payload, args.json)
        return 0 if result["verified"] else 1

    if args.command == "fullness":
        maxes = maximal_subgroups(G)
        if args.wrt is not None:
            if not 0 <= args.wrt < len(maxes):
                print(f"error: --wrt must be in [0, {len(maxes)})", file=sys.stderr)
                return 2
            maxes = [maxes[args.wrt]]
        results = [is_full_wrt(G, C).to_json() for C in maxes]
        _emit({"group": gid, "fullness": results}, args.json)
        return 0

    if args.command == "exactness":
        A = _parse_module(G, args.module)
        verdict = check_theorem43(G, A)
        _emit({"group": gid, "module": list(A.members),
               "theorem43": verdict.to_json()}, args.json)
        return 0 if verdict.agree else 1

    if args.command == "berkovich":
        report = run_checks(G, ["berkovich"], gid)
        entry = report.checks["berkovich"]
        if args.json:
            print(json.dumps(entry, sort_keys=True, indent=2))
        elif entry["verdict"] == "skipped":
            print(f"refused: {entry.get('reason', 'hypotheses not met')}")
        else:
            print(f"verdict: {entry['verdict']}")
            if "witness" in entry:
                w = entry["witness"]
                print(f"branch: {entry.get('branch')}")
                print(f"witness order: {w['order']}; checked against "
                      f"{w['certificate_size']} inner automorphisms")
        return 1 if report.failed else 0

    raise AssertionError(f"unhandled command {args.command}")


def _batch_worker(task):
    gid, include_timings = task
    entry = catalog_entry(gid)
    G = entry.build()
    report = run_checks(G, None, gid, include_timings=include_timings)
    return gid, report.dumps(), report.failed


def _batch(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    ids = [e.id for e in bundled_catalog()]
    tasks = [(gid, args.timings) for gid in ids]
    failed = False
    if args.jobs > 1:
        import multiprocessing as mp
        with mp.Pool(args.jobs) as pool:
            results = pool.map(_batch_worker, tasks)
    else:
        results = [_batch_worker(t) for t in tasks]
    for gid, text, bad in results:
        (out / f"{gid}.json").write_text(text, encoding="utf-8")
        failed |= bad
        if not args.json:
            status = "FAIL" if bad else "ok"
            print(f"{gid:12s} {status}")
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
