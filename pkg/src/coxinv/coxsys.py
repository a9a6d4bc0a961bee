"""Coxeter graphs, ordered generator systems, and the named families.

Generators are the integers 1..n; the generator order is always the index
order.  Edge labels are integers >= 2 (2 meaning "no edge", i.e. the
generators commute) or infinity.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

INF = math.inf

Label = float  # int >= 1 in practice, math.inf for unbounded order


class GraphError(ValueError):
    """Malformed Coxeter graph description."""


class InvalidLabel(GraphError):
    """Edge label outside {2, 3, ...} u {inf}."""


@dataclass(frozen=True)
class CoxeterGraph:
    """Symmetric label table m(i, j) on generators 1..n.

    m(i, i) = 1 and m(i, j) = m(j, i) >= 2 for i != j.  Stored as a full
    (n+1) x (n+1) tuple matrix; row/column 0 are unused padding.
    """

    n: int
    labels: tuple[tuple[Label, ...], ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError("generator count must be >= 0")
        if len(self.labels) != self.n + 1 or any(len(r) != self.n + 1 for r in self.labels):
            raise GraphError("label table has wrong shape")
        for i in range(1, self.n + 1):
            if self.labels[i][i] != 1:
                raise GraphError(f"m({i},{i}) must be 1")
            for j in range(i + 1, self.n + 1):
                if self.labels[i][j] != self.labels[j][i]:
                    raise GraphError(f"labels for ({i},{j}) are not symmetric")
                if self.labels[i][j] < 2:
                    raise InvalidLabel(f"m({i},{j}) = {self.labels[i][j]} < 2")

    @classmethod
    def from_edges(cls, n: int, edges: dict[tuple[int, int], Label] | None = None) -> CoxeterGraph:
        """Build a graph from {(i, j): m}; unspecified pairs default to m = 2."""
        table = [[2.0] * (n + 1) for _ in range(n + 1)]
        for i in range(n + 1):
            table[i][i] = 1
        for (i, j), m in (edges or {}).items():
            if not (1 <= i <= n and 1 <= j <= n) or i == j:
                raise GraphError(f"edge ({i},{j}) out of range for n={n}")
            table[i][j] = table[j][i] = m
        norm = tuple(tuple(int(x) if x != INF and float(x).is_integer() else x for x in row)
                     for row in table)
        return cls(n, norm)

    def m(self, i: int, j: int) -> Label:
        return self.labels[i][j]

    def edges(self) -> list[tuple[int, int, Label]]:
        """Pairs with m >= 3, i.e. the edges of the Coxeter graph, sorted."""
        return [(i, j, self.labels[i][j])
                for i in range(1, self.n + 1)
                for j in range(i + 1, self.n + 1)
                if self.labels[i][j] >= 3]

    def collapse(self) -> CoxeterGraph:
        """Replace every label >= 4 (including inf) by 4; keep 2s and 3s."""
        return CoxeterGraph.from_edges(
            self.n, {(i, j): (4 if m >= 4 else m) for i, j, m in self.edges()})

    def restrict(self, k: int) -> CoxeterGraph:
        """Induced graph on generators 1..k."""
        if not 0 <= k <= self.n:
            raise GraphError(f"cannot restrict {self.n} generators to {k}")
        return CoxeterGraph.from_edges(
            k, {(i, j): m for i, j, m in self.edges() if j <= k})

    def relabel(self, order: tuple[int, ...]) -> CoxeterGraph:
        """Rename generators so that new index p is the old generator order[p-1]."""
        if sorted(order) != list(range(1, self.n + 1)):
            raise GraphError(f"order {order} is not a permutation of 1..{self.n}")
        edges = {}
        inv = {old: new for new, old in enumerate(order, start=1)}
        for i, j, m in self.edges():
            a, b = inv[i], inv[j]
            edges[(min(a, b), max(a, b))] = m
        return CoxeterGraph.from_edges(self.n, edges)


@dataclass(frozen=True)
class OrderedSystem:
    """A Coxeter graph whose generators carry the total order 1 < 2 < ... < n."""

    graph: CoxeterGraph
    name: str = ""

    @property
    def n(self) -> int:
        return self.graph.n

    def m(self, i: int, j: int) -> Label:
        return self.graph.m(i, j)

    def __str__(self) -> str:
        return self.name or f"graph(n={self.n})"


def collapse_labels(g: CoxeterGraph) -> CoxeterGraph:
    return g.collapse()


def truncate(sys: OrderedSystem, k: int) -> OrderedSystem:
    """Remove the k largest generators, keeping the inherited order."""
    if k < 0 or k > sys.n:
        raise ValueError(f"cannot remove {k} of {sys.n} generators")
    if k == 0:
        return sys
    return OrderedSystem(sys.graph.restrict(sys.n - k), f"{sys.name}(-{k})" if sys.name else "")


def reorder(sys: OrderedSystem, order: tuple[int, ...]) -> OrderedSystem:
    """Reindex generators so the given old indices become 1, 2, ... in order."""
    return OrderedSystem(sys.graph.relabel(order),
                         f"{sys.name}@{','.join(map(str, order))}" if sys.name else "")


def is_path_ended(sys: OrderedSystem) -> bool:
    """True when the top two generators hang off the rest as a 3-labeled path.

    Requires n >= 3, m(n, n-1) = m(n-1, n-2) = 3, generator n commuting with
    everything below n-1, and generator n-1 commuting with everything below n-2.
    """
    n = sys.n
    if n < 3:
        return False
    if sys.m(n, n - 1) != 3 or sys.m(n - 1, n - 2) != 3:
        return False
    if any(sys.m(n, i) != 2 for i in range(1, n - 1)):
        return False
    if any(sys.m(n - 1, i) != 2 for i in range(1, n - 2)):
        return False
    return True


def is_path_extension(big: OrderedSystem, base_n: int) -> bool:
    """True when generators base_n+1..N form a path attached at generator base_n."""
    total = big.n
    if not 0 <= base_n <= total:
        raise ValueError(f"base size {base_n} out of range for n={total}")
    for j in range(base_n + 1, total + 1):
        for i in range(1, total + 1):
            if i == j:
                continue
            want = 3 if abs(i - j) == 1 else 2
            if big.m(i, j) != want:
                return False
    return True


# ---------------------------------------------------------------------------
# Named families.  Edge rules, for generators 1..n:
#   A:  (i, i+1) labeled 3
#   B:  (1, 2) labeled 4, then (i, i+1) labeled 3
#   H:  like B with the 4 replaced by 5 (n = 3 or 4)
#   D:  (1, 3), (2, 3) labeled 3, then (i, i+1) labeled 3 for i >= 3
#   E:  (1, 2), (2, 4), (3, 4) labeled 3, then (i, i+1) labeled 3 for i >= 4
#   F4: path 1-2-3-4 with m(2, 3) = 4
#   I2: single edge (1, 2) labeled m
# The affine presets tF4 and tE8 append one path vertex to the top generator.
# ---------------------------------------------------------------------------

def _path_edges(lo: int, n: int) -> dict[tuple[int, int], Label]:
    return {(i, i + 1): 3 for i in range(lo, n)}


def family_graph(letter: str, rank: int, m: Label | None = None) -> CoxeterGraph:
    letter = letter.upper()
    if letter == "A":
        if rank < 1:
            raise ValueError("type A needs rank >= 1")
        return CoxeterGraph.from_edges(rank, _path_edges(1, rank))
    if letter in ("B", "H"):
        lo, hi = (2, 99) if letter == "B" else (3, 4)
        if not lo <= rank <= hi:
            raise ValueError(f"type {letter} rank {rank} out of range")
        edges = _path_edges(2, rank)
        edges[(1, 2)] = 4 if letter == "B" else 5
        return CoxeterGraph.from_edges(rank, edges)
    if letter == "D":
        if rank < 2:
            raise ValueError("type D needs rank >= 2")
        edges = _path_edges(3, rank)
        if rank >= 3:
            edges[(1, 3)] = 3
            edges[(2, 3)] = 3
        return CoxeterGraph.from_edges(rank, edges)
    if letter == "E":
        if not 3 <= rank <= 8:
            raise ValueError("type E needs rank in 3..8")
        edges = {(1, 2): 3}
        if rank >= 4:
            edges[(2, 4)] = 3
            edges[(3, 4)] = 3
        edges.update(_path_edges(4, rank))
        return CoxeterGraph.from_edges(rank, edges)
    if letter == "F":
        if rank != 4:
            raise ValueError("type F needs rank 4")
        return CoxeterGraph.from_edges(4, {(1, 2): 3, (2, 3): 4, (3, 4): 3})
    if letter == "I2":
        if m is None or (m != INF and m < 3):
            raise ValueError("I2 needs an edge label m >= 3 (or inf)")
        return CoxeterGraph.from_edges(2, {(1, 2): m})
    raise ValueError(f"unknown family {letter!r}")


def path_extension_of(sys: OrderedSystem, target: int, name: str = "") -> OrderedSystem:
    """Attach a 3-labeled path at the top generator until there are target generators."""
    if target < sys.n:
        raise ValueError(f"target size {target} below current {sys.n}")
    edges = {(i, j): m for i, j, m in sys.graph.edges()}
    for v in range(sys.n + 1, target + 1):
        edges[(v - 1, v)] = 3
    g = CoxeterGraph.from_edges(target, edges)
    return OrderedSystem(g, name or f"pathext({sys.name},{target})")


_NAME_RE = re.compile(r"^([ABDEH])(\d+)$|^F4$|^I2\((\d+|inf)\)$", re.IGNORECASE)


def family(name: str) -> OrderedSystem:
    """Build a named system: A5, B3, D6, E7, F4, H3, I2(7), I2(inf), tF4, tE8,
    or pathext(<name>,<N>)."""
    name = name.strip()
    if name.lower() == "tf4":
        return path_extension_of(family("F4"), 5, "tF4")
    if name.lower() == "te8":
        return path_extension_of(family("E8"), 9, "tE8")
    ext = re.match(r"^pathext\((.+),\s*(\d+)\)$", name, re.IGNORECASE)
    if ext:
        return path_extension_of(family(ext.group(1)), int(ext.group(2)))
    mobj = _NAME_RE.match(name)
    if not mobj:
        raise ValueError(f"unrecognized system name {name!r}")
    if mobj.group(1):
        letter = mobj.group(1).upper()
        rank = int(mobj.group(2))
        return OrderedSystem(family_graph(letter, rank), f"{letter}{rank}")
    if name.upper() == "F4":
        return OrderedSystem(family_graph("F", 4), "F4")
    m: Label = INF if mobj.group(3) == "inf" else int(mobj.group(3))
    return OrderedSystem(family_graph("I2", 2, m), f"I2({mobj.group(3)})")


def parse_graph(text: str) -> CoxeterGraph:
    """Parse the text graph format.

    Line 1 is the generator count n.  Every further line is "i j m" with
    1-based generator indices and m an integer >= 2 or the token "inf".
    Omitted pairs mean m = 2; '#' starts a comment.
    """
    lines = []
    for raw in text.splitlines():
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            lines.append(stripped)
    if not lines:
        raise GraphError("empty graph description")
    try:
        n = int(lines[0])
    except ValueError:
        raise GraphError(f"first line must be the generator count, got {lines[0]!r}") from None
    if n < 0:
        raise GraphError("generator count must be >= 0")
    edges: dict[tuple[int, int], Label] = {}
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 3:
            raise GraphError(f"malformed line {line!r} (want: i j m)")
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"malformed indices in {line!r}") from None
        if parts[2] == "inf":
            m: Label = INF
        else:
            try:
                m = int(parts[2])
            except ValueError:
                raise GraphError(f"malformed label in {line!r}") from None
        if not (1 <= i <= n and 1 <= j <= n) or i == j:
            raise GraphError(f"indices out of range in {line!r}")
        if m < 2:
            raise InvalidLabel(f"label {m} < 2 in {line!r}")
        key = (min(i, j), max(i, j))
        if key in edges and edges[key] != m:
            raise GraphError(f"conflicting labels for pair {key}")
        edges[key] = m
    return CoxeterGraph.from_edges(n, edges)
