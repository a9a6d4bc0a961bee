"""The boolean involution complex: cell enumeration, face poset, homology.

Cells of rank r are the boolean involutions writable as injective words of
length r; the poset is graded by rank with the empty cell at the bottom.
Reduced Betti numbers are computed over GF(2) from the mod-2 boundary maps
of the augmented cell chain complex (the empty cell sits in dimension -1),
so the full Betti vector runs b(-1), b(0), ..., b(n-1).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .coxsys import OrderedSystem
from .gf2 import gf2_rank
from .invwords import Cell, Word, tables, word_str, _trace_forms

DEFAULT_MAX_CELLS = 2_000_000


class CellLimitExceeded(RuntimeError):
    """Enumeration aborted: the complex is larger than the cell budget."""


def enumerate_cells(sys: OrderedSystem, max_cells: int | None = DEFAULT_MAX_CELLS) -> list[Cell]:
    """All boolean involutions of the system, sorted by (rank, canonical word).

    Level-by-level search: every rank r+1 cell arises from a rank r cell by
    appending an unused letter (injective words stay reduced), so extending
    each cell by each absent letter and deduplicating by canonical form is
    exhaustive.
    """
    tb = tables(sys.graph)
    n = sys.n
    total = 1
    level: dict[Word, int] = {(): 0}  # canon -> support bitmask
    out = [Cell(())]
    while level:
        nxt: dict[Word, int] = {}
        for canon, supp in level.items():
            for s in range(1, n + 1):
                if (supp >> s) & 1:
                    continue
                cw = min(_trace_forms(canon + (s,), tb))
                if cw not in nxt:
                    nxt[cw] = supp | (1 << s)
        total += len(nxt)
        if max_cells is not None and total > max_cells:
            raise CellLimitExceeded(
                f"{sys} has more than {max_cells} cells; raise the limit to proceed")
        out.extend(Cell(w) for w in sorted(nxt))
        level = nxt
    return out


class FacePoset:
    """Graded face poset of the complex, with per-rank cell and facet tables."""

    def __init__(self, system: OrderedSystem, by_rank: list[list[Cell]],
                 facet_ids: list[list[tuple[int, ...]]]) -> None:
        self.system = system
        self.by_rank = by_rank
        self.facet_ids = facet_ids
        self._pos: dict[Word, tuple[int, int]] = {
            c.canon: (r, i) for r, cells in enumerate(by_rank) for i, c in enumerate(cells)}
        self._cofacet_ids: list[list[list[int]]] | None = None

    @property
    def top_rank(self) -> int:
        return len(self.by_rank) - 1

    def __len__(self) -> int:
        return sum(len(cells) for cells in self.by_rank)

    def __contains__(self, cell: Cell) -> bool:
        return cell.canon in self._pos

    def cells(self):
        for cells in self.by_rank:
            yield from cells

    def position(self, cell: Cell) -> tuple[int, int]:
        return self._pos[cell.canon]

    def facets_of(self, cell: Cell) -> list[Cell]:
        r, i = self._pos[cell.canon]
        return [self.by_rank[r - 1][j] for j in self.facet_ids[r][i]]

    def cofacet_ids(self) -> list[list[list[int]]]:
        """For each cell, the indices of the rank+1 cells covering it."""
        if self._cofacet_ids is None:
            up: list[list[list[int]]] = [
                [[] for _ in cells] for cells in self.by_rank]
            for r in range(1, len(self.by_rank)):
                for i, fids in enumerate(self.facet_ids[r]):
                    for j in fids:
                        up[r - 1][j].append(i)
            self._cofacet_ids = up
        return self._cofacet_ids

    def cofacets_of(self, cell: Cell) -> list[Cell]:
        r, i = self._pos[cell.canon]
        if r + 1 >= len(self.by_rank):
            return []
        return [self.by_rank[r + 1][j] for j in self.cofacet_ids()[r][i]]


def build_poset(cells: list[Cell], sys: OrderedSystem) -> FacePoset:
    """Wire up the cover relation of a complete, deduplicated cell set."""
    tb = tables(sys.graph)
    top = max((c.rank for c in cells), default=0)
    by_rank: list[list[Cell]] = [[] for _ in range(top + 1)]
    for c in cells:
        by_rank[c.rank].append(c)
    for level in by_rank:
        level.sort()
    pos: dict[Word, int] = {}
    facet_ids: list[list[tuple[int, ...]]] = [[() for _ in level] for level in by_rank]
    for r, level in enumerate(by_rank):
        if r >= 1:
            for i, c in enumerate(level):
                fids = set()
                for k in range(r):
                    sub = c.canon[:k] + c.canon[k + 1:]
                    fw = min(_trace_forms(sub, tb)) if sub else ()
                    j = pos.get(fw)
                    if j is None:
                        raise RuntimeError(
                            f"facet {fw} of {c.canon} missing: cell set is incomplete")
                    fids.add(j)
                facet_ids[r][i] = tuple(sorted(fids))
        pos = {c.canon: i for i, c in enumerate(level)}
    return FacePoset(sys, by_rank, facet_ids)


def build_complex(sys: OrderedSystem, max_cells: int | None = DEFAULT_MAX_CELLS) -> FacePoset:
    return build_poset(enumerate_cells(sys, max_cells), sys)


def f_vector(p: FacePoset) -> list[int]:
    """Cell counts by dimension, starting with f(-1) = 1 for the empty cell."""
    return [len(cells) for cells in p.by_rank]


def reduced_euler(p: FacePoset) -> int:
    """Alternating sum of the face counts in dimensions >= 0, minus one."""
    f = f_vector(p)
    return sum(cnt if r % 2 else -cnt for r, cnt in enumerate(f))


def boundary_rank(p: FacePoset, r: int) -> int:
    """GF(2) rank of the boundary map from rank r cells to rank r-1 cells."""
    if r < 1 or r > p.top_rank:
        return 0
    cols = []
    for fids in p.facet_ids[r]:
        row = 0
        for j in fids:
            row |= 1 << j
        cols.append(row)
    return gf2_rank(cols)


def betti_gf2(p: FacePoset) -> list[int]:
    """Reduced GF(2) Betti numbers [b(-1), b(0), ..., b(top-1)]."""
    top = p.top_rank
    dranks = [boundary_rank(p, r) for r in range(top + 2)]
    return [len(p.by_rank[r]) - dranks[r] - dranks[r + 1] for r in range(top + 1)]


def betti_number(p: FacePoset) -> int:
    """Number of top-dimensional spheres when the complex is a wedge: b(n-1)."""
    return betti_gf2(p)[-1]


@dataclass
class SimplicialReport:
    ok: bool
    checked: int
    failures: list[str] = field(default_factory=list)

    def __str__(self) -> str:
        if self.ok:
            return f"simplicial: ok ({self.checked} cells)"
        return "simplicial: FAIL " + "; ".join(self.failures[:3])


def check_simplicial(p: FacePoset, max_failures: int = 5) -> SimplicialReport:
    """Certify boolean lower intervals cell by cell.

    Every rank r cell must have exactly r distinct facets and exactly 2^r
    distinct cells below it; the lower cells are recomputed independently
    from the subwords of the canonical word.
    """
    tb = tables(p.system.graph)
    failures: list[str] = []
    checked = 0
    for r, level in enumerate(p.by_rank):
        for i, c in enumerate(level):
            checked += 1
            if r and len(p.facet_ids[r][i]) != r:
                failures.append(f"{c}: {len(p.facet_ids[r][i])} facets, want {r}")
            below = {min(_trace_forms(sub, tb)) if sub else ()
                     for sub in _subwords(c.canon)}
            if len(below) != 1 << r:
                failures.append(f"{c}: ideal has {len(below)} cells, want {1 << r}")
            if len(failures) >= max_failures:
                return SimplicialReport(False, checked, failures)
    return SimplicialReport(not failures, checked, failures)


def _subwords(word: Word):
    k = len(word)
    for mask in range(1 << k):
        yield tuple(word[i] for i in range(k) if (mask >> i) & 1)


def check_pure(p: FacePoset) -> list[Cell]:
    """Cells below top rank that are not covered by anything (should be none)."""
    up = p.cofacet_ids()
    stranded = []
    for r in range(p.top_rank):
        for i, lst in enumerate(up[r]):
            if not lst:
                stranded.append(p.by_rank[r][i])
    return stranded


def poset_isomorphism_by_canon(p: FacePoset, q: FacePoset) -> dict[Cell, Cell] | None:
    """Rank-preserving cover-preserving bijection matching canonical words.

    Returns the bijection when the two posets have identical canonical forms
    and identical facet wiring, else None.  This is the shape-equality test
    behind label-collapse invariance.
    """
    if len(p.by_rank) != len(q.by_rank):
        return None
    for lp, lq in zip(p.by_rank, q.by_rank):
        if [c.canon for c in lp] != [c.canon for c in lq]:
            return None
    if p.facet_ids != q.facet_ids:
        return None
    return {cp: cq for lp, lq in zip(p.by_rank, q.by_rank) for cp, cq in zip(lp, lq)}


# ---------------------------------------------------------------------------
# exports
# ---------------------------------------------------------------------------

def _global_ids(p: FacePoset) -> dict[Word, int]:
    ids = {}
    for cells in p.by_rank:
        for c in cells:
            ids[c.canon] = len(ids)
    return ids


def to_json(p: FacePoset) -> str:
    ids = _global_ids(p)
    cells = [{"canon": word_str(c.canon), "rank": c.rank} for c in p.cells()]
    covers = []
    for r in range(1, len(p.by_rank)):
        for i, fids in enumerate(p.facet_ids[r]):
            upper = ids[p.by_rank[r][i].canon]
            for j in fids:
                covers.append([upper, ids[p.by_rank[r - 1][j].canon]])
    doc = {
        "system": str(p.system),
        "cells": cells,
        "covers": covers,
        "f": f_vector(p),
        "euler": reduced_euler(p),
        "betti": betti_gf2(p),
    }
    return json.dumps(doc, indent=None, separators=(",", ":"), sort_keys=True)


def to_dot(p: FacePoset) -> str:
    """Hasse diagram in DOT, one layer per rank."""
    ids = _global_ids(p)
    lines = ["digraph hasse {", "  rankdir=BT;", "  node [shape=box];"]
    for r, cells in enumerate(p.by_rank):
        names = " ".join(f"c{ids[c.canon]};" for c in cells)
        lines.append(f"  {{ rank=same; {names} }}")
        for c in cells:
            lines.append(f'  c{ids[c.canon]} [label="{word_str(c.canon)}"];')
    for r in range(1, len(p.by_rank)):
        for i, fids in enumerate(p.facet_ids[r]):
            upper = ids[p.by_rank[r][i].canon]
            for j in fids:
                lines.append(f"  c{ids[p.by_rank[r - 1][j].canon]} -> c{upper};")
    lines.append("}")
    return "\n".join(lines) + "\n"
