"""Command-line interface.

Verbs: cells, poset, homology, gamma, morse, table, check.  A system is
given either by family name (A5, B3, D6, E7, F4, H3, H4, I2(7), tF4, tE8,
pathext(A4,8)) or by a graph file via --file.  Exit status: 0 on success,
1 when a verification fails, 2 on usage errors, 3 when the cell budget is
exceeded.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import sys as _sys
from itertools import permutations

from . import complexes, families, morse
from .coxsys import GraphError, OrderedSystem, family, is_path_ended, parse_graph, reorder
from .invwords import Cell, canonical_word, descents, word_str
from .oracle import (UnsupportedSystem, eval_word, model_for, oracle_descents,
                     ranks_by_action_bfs)

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


def _load_system(args) -> OrderedSystem:
    if getattr(args, "file", None):
        with open(args.file, encoding="utf-8") as handle:
            graph = parse_graph(handle.read())
        sysm = OrderedSystem(graph, args.file)
    elif getattr(args, "system", None):
        sysm = family(args.system)
    else:
        raise GraphError("give a system name or --file")
    if getattr(args, "order", None):
        order = tuple(int(tok) for tok in args.order.split(","))
        sysm = reorder(sysm, order)
    return sysm


def _build(sysm: OrderedSystem, args) -> complexes.FacePoset:
    return complexes.build_complex(sysm, max_cells=args.max_cells)


def cmd_cells(args) -> int:
    sysm = _load_system(args)
    poset = _build(sysm, args)
    if args.json:
        doc = {"system": str(sysm),
               "cells": [{"canon": word_str(c.canon), "rank": c.rank}
                         for c in poset.cells()]}
        print(json.dumps(doc, separators=(",", ":"), sort_keys=True))
        return EXIT_OK
    print(f"system: {sysm} (n={sysm.n})")
    for r, level in enumerate(poset.by_rank):
        print(f"rank {r} ({len(level)} cells):")
        for c in level:
            print(f"  {word_str(c.canon)}")
    return EXIT_OK


def cmd_poset(args) -> int:
    sysm = _load_system(args)
    poset = _build(sysm, args)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as handle:
            handle.write(complexes.to_dot(poset))
        print(f"wrote {args.dot}")
    if args.json or not args.dot:
        print(complexes.to_json(poset))
    return EXIT_OK


def cmd_homology(args) -> int:
    sysm = _load_system(args)
    poset = _build(sysm, args)
    f = complexes.f_vector(poset)
    euler = complexes.reduced_euler(poset)
    betti = complexes.betti_gf2(poset)
    if args.json:
        print(json.dumps({"system": str(sysm), "f": f, "euler": euler, "betti": betti},
                         separators=(",", ":"), sort_keys=True))
        return EXIT_OK
    print(f"system: {sysm} (n={sysm.n})")
    print(f"cells: {len(poset)}")
    print(f"f-vector: {f}")
    print(f"reduced euler: {euler}")
    print(f"betti: {betti}")
    return EXIT_OK


def cmd_gamma(args) -> int:
    sysm = _load_system(args)
    poset = _build(sysm, args)
    gamma = sorted(morse.gamma_set(sysm, poset), key=lambda c: (c.rank, c.canon))
    print(f"system: {sysm} (n={sysm.n})")
    print(f"gamma cells: {len(gamma)}")
    for c in gamma:
        print(f"  {word_str(c.canon)} (rank {c.rank})")
    if is_path_ended(sysm):
        part = morse.partition_p123(sysm, poset)
        print(f"partition sizes: p1={len(part.p1)} p2={len(part.p2)} p3={len(part.p3)}")
    else:
        print(f"partition sizes: p1={len(poset) - len(gamma)} (system is not path ended)")
    return EXIT_OK


def cmd_morse(args) -> int:
    sysm = _load_system(args)
    poset = _build(sysm, args)
    try:
        matching = morse.build_gamma_matching(sysm, poset)
    except (morse.NoGammaMatching, RuntimeError) as exc:
        print(f"FAILED: {exc}")
        return EXIT_VERIFY
    report = morse.gamma_report(sysm, poset, matching)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as handle:
            handle.write(morse.matching_to_dot(poset, matching))
    if args.json:
        print(matching.to_json(acyclic=report.acyclic))
    else:
        print(f"system: {sysm} (n={sysm.n})")
        print(f"method: {matching.method}")
        print(report)
        for c in sorted(report.critical):
            print(f"  critical: {word_str(c.canon)} (dim {c.rank - 1})")
    return EXIT_OK if report.is_gamma_matching else EXIT_VERIFY


def cmd_table(args) -> int:
    def row_for(n: int):
        return families.betti_table(args.family, n, start=n)[0]

    if args.family.upper() not in families.FAMILY_MIN:
        raise ValueError(f"table supports families {sorted(families.FAMILY_MIN)}")
    lo = families.FAMILY_MIN[args.family.upper()]
    ns = list(range(lo, args.upto + 1))
    if args.threads > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=args.threads) as pool:
            rows = list(pool.map(row_for, ns))
    else:
        rows = [row_for(n) for n in ns]
    if args.json:
        doc = [{"family": r.family, "n": r.n, "expected": r.expected,
                "homology": r.homology, "critical": r.critical, "ok": r.ok}
               for r in rows]
        print(json.dumps(doc, separators=(",", ":"), sort_keys=True))
    else:
        print(f"{'system':>8} {'expected':>8} {'homology':>8} {'critical':>8}  ok")
        for r in rows:
            name = f"I2({r.n})" if r.family == "I2" else f"{r.family}{r.n}"
            print(f"{name:>8} {r.expected:>8} {r.homology:>8} {r.critical:>8}  "
                  f"{'yes' if r.ok else 'NO'}")
    return EXIT_OK if all(r.ok for r in rows) else EXIT_VERIFY


def _check_one(sysm: OrderedSystem, poset: complexes.FacePoset) -> list[tuple[str, bool, str]]:
    results: list[tuple[str, bool, str]] = []
    sim = complexes.check_simplicial(poset)
    results.append(("simplicial", sim.ok, f"{sim.checked} cells"))
    stranded = complexes.check_pure(poset)
    results.append(("pure top dimension", not stranded,
                    f"{len(stranded)} stranded cells" if stranded else ""))
    betti = complexes.betti_gf2(poset)
    euler = complexes.reduced_euler(poset)
    alt = sum(b if i % 2 else -b for i, b in enumerate(betti))
    results.append(("euler = alternating betti sum", alt == euler, f"{euler} vs {alt}"))
    if is_path_ended(sysm):
        part = morse.partition_p123(sysm, poset)
        patch = morse.check_patchwork(poset, part)
        results.append(("patchwork ideals", patch.ok, ""))
    if sysm.n >= 3:
        rec = families.check_recurrence(sysm)
        results.append(("recurrence", rec.ok, str(rec)))
    try:
        model = model_for(sysm)
    except UnsupportedSystem:
        model = None
    if model is not None:
        ok = True
        detail = ""
        ranks = ranks_by_action_bfs(model, sysm.n)
        seen: dict = {}
        for k in range(sysm.n + 1):
            for word in permutations(range(1, sysm.n + 1), k):
                ev = eval_word(word, model)
                cw = canonical_word(word, sysm.graph)
                if seen.setdefault(ev, cw) != cw:
                    ok, detail = False, f"{word}: move class vs model mismatch"
                    break
                if descents(Cell(cw), sysm.graph) != oracle_descents(ev, model):
                    ok, detail = False, f"{word}: descent sets disagree"
                    break
                if ranks[ev] != len(word):
                    ok, detail = False, f"{word}: rank {ranks[ev]} != length {len(word)}"
                    break
        results.append(("oracle equivalence", ok, detail))
    return results


def cmd_check(args) -> int:
    sysm = _load_system(args)
    poset = _build(sysm, args)
    results = _check_one(sysm, poset)
    print(f"system: {sysm} (n={sysm.n})")
    all_ok = True
    for name, ok, detail in results:
        status = "pass" if ok else "FAIL"
        suffix = f" ({detail})" if detail else ""
        print(f"  [{status}] {name}{suffix}")
        all_ok &= ok
    return EXIT_OK if all_ok else EXIT_VERIFY


def _add_system_args(sub, with_dot: bool = False) -> None:
    sub.add_argument("system", nargs="?", help="family name, e.g. A5 or I2(7)")
    sub.add_argument("--file", help="graph file instead of a family name")
    sub.add_argument("--order", help="relabel generators: comma list of old indices")
    sub.add_argument("--json", action="store_true")
    sub.add_argument("--max-cells", type=int, default=complexes.DEFAULT_MAX_CELLS)
    if with_dot:
        sub.add_argument("--dot", metavar="FILE", help="write a DOT diagram")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coxinv", description=__doc__)
    subs = parser.add_subparsers(dest="verb", required=True)
    for verb, fn, with_dot in (("cells", cmd_cells, False), ("poset", cmd_poset, True),
                               ("homology", cmd_homology, False), ("gamma", cmd_gamma, False),
                               ("morse", cmd_morse, True), ("check", cmd_check, False)):
        sub = subs.add_parser(verb)
        _add_system_args(sub, with_dot)
        sub.set_defaults(fn=fn)
    table = subs.add_parser("table")
    table.add_argument("--family", required=True, help="A, B, D, E, or I2")
    table.add_argument("--upto", type=int, required=True)
    table.add_argument("--threads", type=int, default=1)
    table.add_argument("--json", action="store_true")
    table.set_defaults(fn=cmd_table)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.fn(args)
    except complexes.CellLimitExceeded as exc:
        print(f"resource limit: {exc}", file=_sys.stderr)
        return EXIT_RESOURCE
    except (GraphError, ValueError) as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
