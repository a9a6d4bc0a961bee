"""Acyclic matchings on the face poset and their verification.

A matching pairs cells along cover relations; reversing the matched edges
upward in the Hasse diagram must leave no directed cycle.  Because upward
edges raise rank by one and no two of them are consecutive, any directed
cycle alternates strictly between two adjacent ranks, so acyclicity is
checked level by level.

The layered construction pairs every cell not containing the top generator
with its toggle by that generator; the remaining cells (gamma_set: top
generator present but not a descent) split into a copy of the complex three
truncations down, shifted by a fixed three-letter suffix, and a copy of the
gamma set two truncations down, shifted by a two-letter suffix.  Matchings
are pulled back through those shifts recursively; small or non-qualifying
systems fall back to a deterministic backtracking search on the gamma
subposet.  Every constructed matching is re-verified before it is returned.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .complexes import FacePoset, build_complex
from .coxsys import OrderedSystem, is_path_ended, truncate
from .invwords import Cell, word_str, tables, _trace_forms, _is_descent


class PartitionMismatch(RuntimeError):
    """The three-part decomposition failed to tile the poset."""


class NoGammaMatching(RuntimeError):
    """The backtracking search exhausted all pairings."""


@dataclass
class Matching:
    """Involutive pairing along covers; unpaired cells are critical."""

    pairs: dict[Cell, Cell]
    critical: tuple[Cell, ...]
    method: str = ""

    @property
    def n_pairs(self) -> int:
        return len(self.pairs) // 2

    def pair_list(self) -> list[tuple[Cell, Cell]]:
        """Matched pairs as (lower, upper), sorted."""
        out = [(a, b) for a, b in self.pairs.items() if a.rank < b.rank]
        out.sort()
        return out

    def to_json(self, acyclic: bool | None = None) -> str:
        doc = {
            "pairs": [[word_str(a.canon), word_str(b.canon)] for a, b in self.pair_list()],
            "critical": [word_str(c.canon) for c in self.critical],
        }
        if acyclic is not None:
            doc["acyclic"] = acyclic
        return json.dumps(doc, separators=(",", ":"), sort_keys=True)


@dataclass
class MorseReport:
    """Outcome of matching verification; None means the aspect was not checked."""

    matched_pairs: int = 0
    critical: tuple[Cell, ...] = ()
    matching_ok: bool | None = None
    acyclic: bool | None = None
    critical_top_dimensional: bool | None = None
    critical_in_gamma: bool | None = None
    preserves_gamma: bool | None = None
    failure: str = ""
    cycle: list[Cell] | None = None

    @property
    def is_gamma_matching(self) -> bool:
        return bool(self.matching_ok and self.acyclic and self.critical_top_dimensional
                    and self.critical_in_gamma and self.preserves_gamma)

    def __str__(self) -> str:
        dims = sorted({c.rank - 1 for c in self.critical})
        lines = [f"matched pairs: {self.matched_pairs}",
                 f"critical: {len(self.critical)} cells, dims {dims}"]
        for label, val in (("matching", self.matching_ok), ("acyclic", self.acyclic),
                           ("critical top-dimensional", self.critical_top_dimensional),
                           ("critical inside gamma", self.critical_in_gamma),
                           ("preserves gamma", self.preserves_gamma)):
            if val is not None:
                lines.append(f"{label}: {'yes' if val else 'NO'}")
        if self.failure:
            lines.append(f"failure: {self.failure}")
        if self.cycle:
            lines.append("cycle: " + " > ".join(word_str(c.canon) for c in self.cycle))
        return "\n".join(lines)


def gamma_set(sys: OrderedSystem, poset: FacePoset) -> set[Cell]:
    """Cells containing the top generator with the top generator not a descent."""
    n = sys.n
    if n == 0:
        return set()
    tb = tables(sys.graph)
    return {c for c in poset.cells()
            if n in c.canon and not _is_descent(c.canon, n, tb)}


@dataclass
class GammaPartition:
    """Three-part tiling of the poset used by the layered matching.

    p1 covers the cells matched by toggling the top letter; p2 is the image
    of the full complex on the first n-3 generators under the suffix
    (n-2, n, n-1); p3 is the image of the gamma set on the first n-2
    generators under the suffix (n, n-1).  from_w3 and from_gamma_w2 are
    those two shift bijections.
    """

    p1: frozenset[Cell]
    p2: frozenset[Cell]
    p3: frozenset[Cell]
    from_w3: dict[Cell, Cell] = field(default_factory=dict)
    from_gamma_w2: dict[Cell, Cell] = field(default_factory=dict)


def partition_p123(sys: OrderedSystem, poset: FacePoset) -> GammaPartition:
    """Build and cross-check the three-part decomposition of a path-ended system."""
    n = sys.n
    if not is_path_ended(sys):
        raise ValueError(f"{sys} is not path ended")
    tb = tables(sys.graph)
    low3 = [c for c in poset.cells() if not c.support & {n - 2, n - 1, n}]
    from_w3 = {}
    for x in low3:
        img = Cell(min(_trace_forms(x.canon + (n - 2, n, n - 1), tb)))
        from_w3[x] = img
    low2_gamma = [c for c in poset.cells()
                  if not c.support & {n - 1, n}
                  and (n - 2) in c.canon and not _is_descent(c.canon, n - 2, tb)]
    from_gamma_w2 = {}
    for y in low2_gamma:
        from_gamma_w2[y] = Cell(min(_trace_forms(y.canon + (n, n - 1), tb)))
    p2 = frozenset(from_w3.values())
    p3 = frozenset(from_gamma_w2.values())
    if len(p2) != len(from_w3) or len(p3) != len(from_gamma_w2):
        raise PartitionMismatch("suffix shift is not injective")
    if p2 & p3:
        raise PartitionMismatch(f"p2 and p3 overlap in {len(p2 & p3)} cells")
    gamma = gamma_set(sys, poset)
    if p2 | p3 != gamma:
        raise PartitionMismatch(
            f"p2 u p3 has {len(p2 | p3)} cells but gamma has {len(gamma)}")
    p1 = frozenset(c for c in poset.cells() if c not in gamma)
    return GammaPartition(p1, p2, p3, from_w3, from_gamma_w2)


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

def verify_matching(poset: FacePoset, m: Matching) -> MorseReport:
    """Check involutivity and that every pair sits on a cover relation."""
    report = MorseReport()
    seen_pairs = 0
    for a, b in m.pairs.items():
        if m.pairs.get(b) != a:
            report.matching_ok = False
            report.failure = f"pair map is not involutive at {a}"
            return report
        if a == b or a.canon > b.canon:
            continue  # self-pairs count as critical; visit each pair once
        lo, hi = (a, b) if a.rank <= b.rank else (b, a)
        if hi.rank != lo.rank + 1 or lo not in poset.facets_of(hi):
            report.matching_ok = False
            report.failure = f"{a} and {b} are not in a cover relation"
            return report
        seen_pairs += 1
    critical = tuple(sorted(c for c in poset.cells()
                            if c not in m.pairs or m.pairs[c] == c))
    if set(critical) != set(m.critical):
        report.matching_ok = False
        report.failure = "declared critical set disagrees with unpaired cells"
        return report
    report.matching_ok = True
    report.matched_pairs = seen_pairs
    report.critical = critical
    return report


def find_cycle(poset: FacePoset, m: Matching) -> list[Cell] | None:
    """Directed cycle in the Hasse diagram with matched edges reversed, or None.

    Works level by level: nodes are matched pairs (lower at rank r, upper at
    rank r+1); pair P steps to pair Q when the lower cell of Q is a facet of
    the upper cell of P.  A directed cycle in the full graph exists exactly
    when one of these level graphs has a cycle.
    """
    up = {a: b for a, b in m.pairs.items() if a.rank < b.rank}
    by_level: dict[int, list[Cell]] = {}
    for a in up:
        by_level.setdefault(a.rank, []).append(a)
    for r, lowers in sorted(by_level.items()):
        lowers.sort()
        node_id = {a: i for i, a in enumerate(lowers)}
        succs: list[list[int]] = []
        for a in lowers:
            out = []
            for f in poset.facets_of(up[a]):
                if f != a:
                    j = node_id.get(f)
                    if j is not None:
                        out.append(j)
            succs.append(sorted(out))
        color = [0] * len(lowers)  # 0 new, 1 on stack, 2 done
        parent = [-1] * len(lowers)
        for start in range(len(lowers)):
            if color[start]:
                continue
            stack = [(start, iter(succs[start]))]
            color[start] = 1
            while stack:
                v, it = stack[-1]
                advanced = False
                for w in it:
                    if color[w] == 0:
                        color[w] = 1
                        parent[w] = v
                        stack.append((w, iter(succs[w])))
                        advanced = True
                        break
                    if color[w] == 1:
                        cells = []
                        x = v
                        while x != w:
                            cells.append(lowers[x])
                            x = parent[x]
                        cells.append(lowers[w])
                        cells.reverse()
                        cycle: list[Cell] = []
                        for a in cells:
                            cycle.extend((a, up[a]))
                        return cycle
                if not advanced:
                    color[v] = 2
                    stack.pop()
    return None


def verify_acyclic(poset: FacePoset, m: Matching) -> MorseReport:
    """Cycle detection on the matched Hasse diagram; certificate on failure."""
    report = verify_matching(poset, m)
    if not report.matching_ok:
        return report
    cycle = find_cycle(poset, m)
    report.acyclic = cycle is None
    report.cycle = cycle
    if cycle:
        report.failure = "directed cycle through " + word_str(cycle[0].canon)
    return report


def gamma_report(sys: OrderedSystem, poset: FacePoset, m: Matching,
                 gamma: set[Cell] | None = None) -> MorseReport:
    """Full verification of the four matching requirements."""
    report = verify_acyclic(poset, m)
    if not report.matching_ok:
        return report
    if gamma is None:
        gamma = gamma_set(sys, poset)
    top = poset.top_rank
    report.critical_top_dimensional = all(c.rank == top for c in report.critical)
    report.critical_in_gamma = all(c in gamma for c in report.critical)
    report.preserves_gamma = all((a in gamma) == (b in gamma) for a, b in m.pairs.items())
    return report


@dataclass
class PatchworkReport:
    p1_is_ideal: bool
    p12_is_ideal: bool
    violation: tuple[Cell, Cell] | None = None  # (facet outside, cell inside)

    @property
    def ok(self) -> bool:
        return self.p1_is_ideal and self.p12_is_ideal


def _is_order_ideal(poset: FacePoset, cells: frozenset[Cell]) -> tuple[Cell, Cell] | None:
    """First (facet, cell) pair violating downward closure, or None."""
    for c in sorted(cells):
        if c.rank == 0:
            continue
        for f in poset.facets_of(c):
            if f not in cells:
                return (f, c)
    return None


def check_patchwork(poset: FacePoset, partition: GammaPartition) -> PatchworkReport:
    """Verify that p1 and p1 u p2 are downward closed (patching hypothesis)."""
    v1 = _is_order_ideal(poset, partition.p1)
    v12 = _is_order_ideal(poset, frozenset(partition.p1 | partition.p2))
    return PatchworkReport(v1 is None, v12 is None, v1 or v12)


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def _toggle_pairs(poset: FacePoset, n: int) -> dict[Cell, Cell]:
    """Perfect matching on p1: pair each cell without the top letter with its
    extension by the top letter (whose top letter is then a descent)."""
    tb = tables(poset.system.graph)
    pairs: dict[Cell, Cell] = {}
    for c in poset.cells():
        if n not in c.canon:
            d = Cell(min(_trace_forms(c.canon + (n,), tb)))
            pairs[c] = d
            pairs[d] = c
    return pairs


def search_gamma_matching(sys: OrderedSystem, poset: FacePoset | None = None) -> Matching:
    """Deterministic backtracking matching with all critical cells top rank.

    The complement of the gamma set is paired completely by the top-letter
    toggle.  Inside the gamma set, cells are processed in (rank, word) order
    and each one below top rank is paired with its least available cover in
    the gamma set, backtracking whenever the partial matching closes a
    directed cycle.
    """
    if poset is None:
        poset = build_complex(sys)
    n = sys.n
    if n == 0:
        raise ValueError("the empty system has no top generator to match along")
    gamma = sorted(gamma_set(sys, poset), key=lambda c: (c.rank, c.canon))
    gamma_pos = {c: i for i, c in enumerate(gamma)}
    covers: list[list[int]] = []
    for c in gamma:
        ups = [gamma_pos[u] for u in poset.cofacets_of(c) if u in gamma_pos]
        covers.append(sorted(ups))
    must_match = [i for i, c in enumerate(gamma) if c.rank < n]

    matched: dict[int, int] = {}

    def has_cycle() -> bool:
        pairs = {gamma[a]: gamma[b] for a, b in matched.items()}
        probe = Matching(pairs, ())
        return find_cycle(poset, probe) is not None

    def extend(k: int) -> bool:
        while k < len(must_match) and must_match[k] in matched:
            k += 1
        if k == len(must_match):
            return not has_cycle()
        i = must_match[k]
        for j in covers[i]:
            if j in matched:
                continue
            matched[i] = j
            matched[j] = i
            if not has_cycle() and extend(k + 1):
                return True
            del matched[i]
            del matched[j]
        return False

    if not extend(0):
        raise NoGammaMatching(f"no acyclic matching with top-rank critical cells on {sys}")
    pairs = _toggle_pairs(poset, n)
    for a, b in matched.items():
        pairs[gamma[a]] = gamma[b]
    critical = tuple(sorted(c for c in poset.cells() if c not in pairs))
    return Matching(pairs, critical, method="search")


def build_gamma_matching(sys: OrderedSystem, poset: FacePoset | None = None) -> Matching:
    """Layered recursive matching for path-ended systems, search otherwise.

    The result is re-verified (matching, acyclicity, critical dimension and
    location) before being returned; a verification failure is a defect and
    raises RuntimeError.
    """
    if poset is None:
        poset = build_complex(sys)
    n = sys.n
    if is_path_ended(sys) and n >= 6:
        part = partition_p123(sys, poset)
        m3 = build_gamma_matching(truncate(sys, 3))
        m2 = build_gamma_matching(truncate(sys, 2))
        pairs = _toggle_pairs(poset, n)
        for a, b in m3.pairs.items():
            pairs[part.from_w3[a]] = part.from_w3[b]
        for a, b in m2.pairs.items():
            ga = part.from_gamma_w2.get(a)
            gb = part.from_gamma_w2.get(b)
            if ga is not None and gb is not None:
                pairs[ga] = gb
            elif ga is not None or gb is not None:
                raise PartitionMismatch("sub-matching pairs across the gamma boundary")
        critical = tuple(sorted(
            [part.from_w3[c] for c in m3.critical]
            + [part.from_gamma_w2[c] for c in m2.critical]))
        matching = Matching(pairs, critical, method="recursive")
    else:
        matching = search_gamma_matching(sys, poset)
    report = gamma_report(sys, poset, matching)
    if not report.is_gamma_matching:
        raise RuntimeError(f"constructed matching failed verification on {sys}: {report}")
    return matching


def matching_to_dot(poset: FacePoset, m: Matching) -> str:
    """Hasse diagram with matched edges drawn upward and highlighted."""
    ids = {}
    for c in poset.cells():
        ids[c.canon] = len(ids)
    up = {a: b for a, b in m.pairs.items() if a.rank < b.rank}
    critical = set(m.critical)
    lines = ["digraph matched_hasse {", "  rankdir=BT;", "  node [shape=box];"]
    for c in poset.cells():
        style = ' style=filled fillcolor="gold"' if c in critical else ""
        lines.append(f'  c{ids[c.canon]} [label="{word_str(c.canon)}"{style}];')
    for r in range(1, len(poset.by_rank)):
        for i, fids in enumerate(poset.facet_ids[r]):
            upper = poset.by_rank[r][i]
            for j in fids:
                lower = poset.by_rank[r - 1][j]
                if up.get(lower) == upper:
                    lines.append(
                        f"  c{ids[lower.canon]} -> c{ids[upper.canon]} [color=red penwidth=2];")
                else:
                    lines.append(f"  c{ids[upper.canon]} -> c{ids[lower.canon]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
