"""Injective-word calculus for boolean involutions.

A cell is represented by the lexicographically least word in its move class.
Two moves generate the class of an injective word:

  * commutation: adjacent letters s, t swap anywhere when m(s, t) = 2;
  * head swap:   the first two letters s, t swap when m(s, t) = 3.

Only the 2 / 3 / >=4 trichotomy of a label is ever consulted.  The move
class is a union of commutation classes (traces) connected by head swaps,
so the closure is explored trace-by-trace: each trace is stored by its own
lexicographic normal form and expanded through the head swaps applicable to
any of its linearizations.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .coxsys import CoxeterGraph

Word = tuple[int, ...]


class NotApplicable(ValueError):
    """Toggling a letter that is in the support but not a descent."""


@dataclass(frozen=True, order=True)
class Cell:
    """A boolean involution, keyed by its canonical word."""

    canon: Word

    @property
    def rank(self) -> int:
        return len(self.canon)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self.canon)

    def __str__(self) -> str:
        return word_str(self.canon)


def word_str(word: Word) -> str:
    """Render a word as "s1 s3 s2"; the empty word renders as "e"."""
    return " ".join(f"s{x}" for x in word) if word else "e"


def parse_word(text: str) -> Word:
    """Parse "s1 s3 s2" (or bare "1 3 2"); "e" and "" give the empty word."""
    text = text.strip()
    if text in ("", "e"):
        return ()
    letters = []
    for tok in text.split():
        tok = tok[1:] if tok.startswith("s") else tok
        try:
            letters.append(int(tok))
        except ValueError:
            raise ValueError(f"bad letter {tok!r} in word") from None
    return tuple(letters)


def _check_injective(word: Word) -> None:
    if len(set(word)) != len(word):
        raise ValueError(f"word {word} has repeated letters")


class MoveTables:
    """Bitmask form of the label trichotomy of one graph."""

    __slots__ = ("n", "commute", "braid")

    def __init__(self, g: CoxeterGraph) -> None:
        self.n = g.n
        self.commute = [0] * (g.n + 1)  # bit j set iff m(i, j) == 2
        self.braid = [0] * (g.n + 1)    # bit j set iff m(i, j) == 3
        for i in range(1, g.n + 1):
            for j in range(1, g.n + 1):
                if i == j:
                    continue
                m = g.m(i, j)
                if m == 2:
                    self.commute[i] |= 1 << j
                elif m == 3:
                    self.braid[i] |= 1 << j


_TABLES: dict[CoxeterGraph, MoveTables] = {}


def tables(g: CoxeterGraph) -> MoveTables:
    tb = _TABLES.get(g)
    if tb is None:
        tb = _TABLES[g] = MoveTables(g)
    return tb


def _lex_normal(word: Word, tb: MoveTables) -> Word:
    """Least linearization of the commutation class of word.

    Repeatedly take the smallest letter whose occurrence commutes with
    everything before it.
    """
    letters = list(word)
    commute = tb.commute
    out = []
    while letters:
        pref = 0
        best = 0
        best_at = -1
        for idx, x in enumerate(letters):
            if pref & ~commute[x] == 0 and (best_at < 0 or x < best):
                best, best_at = x, idx
            pref |= 1 << x
        out.append(best)
        del letters[best_at]
    return tuple(out)


def _trace_forms(word: Word, tb: MoveTables):
    """Yield the normal form of every commutation class in the move class."""
    commute = tb.commute
    braid = tb.braid
    start = _lex_normal(word, tb)
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        yield u
        if len(u) < 2:
            continue
        pref = 0
        for i, x in enumerate(u):
            if pref & ~commute[x] == 0:
                # x can lead; find the possible second letters y with m(x, y) = 3
                rest = u[:i] + u[i + 1:]
                bx = braid[x]
                pref2 = 0
                for j, y in enumerate(rest):
                    if (bx >> y) & 1 and pref2 & ~commute[y] == 0:
                        v = _lex_normal((y, x) + rest[:j] + rest[j + 1:], tb)
                        if v not in seen:
                            seen.add(v)
                            stack.append(v)
                    pref2 |= 1 << y
            pref |= 1 << x


def canonical_word(word: Word, g: CoxeterGraph) -> Word:
    """Lexicographically least member of the move class of an injective word."""
    _check_injective(word)
    return min(_trace_forms(word, tables(g)))


def canonical(word: Word, g: CoxeterGraph) -> Cell:
    """The cell of an injective word; equal cells mean equal involutions."""
    return Cell(canonical_word(word, g))


def move_closure(word: Word, g: CoxeterGraph) -> frozenset[Word]:
    """Full move class by word-level breadth-first closure.

    Exponential in the worst case; meant for small words and as an
    independent cross-check of the trace-based canonical form.
    """
    _check_injective(word)
    word = tuple(word)
    g_m = g.m
    seen = {word}
    stack = [word]
    while stack:
        u = stack.pop()
        for i in range(len(u) - 1):
            if g_m(u[i], u[i + 1]) == 2:
                v = u[:i] + (u[i + 1], u[i]) + u[i + 2:]
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        if len(u) >= 2 and g_m(u[0], u[1]) == 3:
            v = (u[1], u[0]) + u[2:]
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return frozenset(seen)


def _descent_mask(word: Word, tb: MoveTables) -> int:
    """Bitmask of letters in which some member of the move class ends.

    A trace has a linearization ending in x exactly when x commutes with
    every letter after it, so the ends of a trace are its maximal letters.
    """
    mask = 0
    for nf in _trace_forms(word, tb):
        suf = 0
        for x in reversed(nf):
            if suf & ~tb.commute[x] == 0:
                mask |= 1 << x
            suf |= 1 << x
    return mask


def _is_descent(word: Word, s: int, tb: MoveTables) -> bool:
    """Early-exit test for one letter of the descent set."""
    for nf in _trace_forms(word, tb):
        suf = 0
        for x in reversed(nf):
            if x == s:
                if suf & ~tb.commute[s] == 0:
                    return True
                break
            suf |= 1 << x
    return False


def descents(c: Cell | Word, g: CoxeterGraph) -> frozenset[int]:
    """Right descent set: letters in which some move-class member ends."""
    word = c.canon if isinstance(c, Cell) else tuple(c)
    mask = _descent_mask(word, tables(g))
    return frozenset(i for i in range(1, g.n + 1) if (mask >> i) & 1)


def toggle(c: Cell, s: int, g: CoxeterGraph) -> Cell:
    """Twisted right action of letter s on a cell.

    Appends s when absent (rank +1); strips a trailing s when s is a
    descent (rank -1); raises NotApplicable otherwise.  Self-inverse.
    """
    tb = tables(g)
    if s not in c.canon:
        return Cell(min(_trace_forms(c.canon + (s,), tb)))
    for nf in _trace_forms(c.canon, tb):
        suf = 0
        ok = False
        for x in reversed(nf):
            if x == s:
                ok = suf & ~tb.commute[s] == 0
                break
            suf |= 1 << x
        if ok:
            reduced = tuple(x for x in nf if x != s)
            return Cell(min(_trace_forms(reduced, tb)) if reduced else ())
    raise NotApplicable(f"letter {s} is in the support of {c} but not a descent")


def facets(c: Cell, g: CoxeterGraph) -> set[Cell]:
    """Codimension-one faces: drop each letter of the canonical word."""
    if c.rank == 0:
        raise ValueError("the empty cell has no facets")
    tb = tables(g)
    out = set()
    for i in range(c.rank):
        sub = c.canon[:i] + c.canon[i + 1:]
        out.add(Cell(min(_trace_forms(sub, tb)) if sub else ()))
    return out


def ideal(c: Cell, g: CoxeterGraph) -> set[Cell]:
    """All cells below c: the cells of the subwords of its canonical word."""
    tb = tables(g)
    out = {Cell(())}
    for r in range(1, c.rank + 1):
        for positions in combinations(range(c.rank), r):
            sub = tuple(c.canon[p] for p in positions)
            out.add(Cell(min(_trace_forms(sub, tb))))
    return out


def bruhat_leq(u: Cell, w: Cell, g: CoxeterGraph) -> bool:
    """Order test by subword extraction from the canonical word of w."""
    if u.rank > w.rank:
        return False
    if not u.support <= w.support:
        return False
    if u.rank == w.rank:
        return u == w
    tb = tables(g)
    for positions in combinations(range(w.rank), u.rank):
        sub = tuple(w.canon[p] for p in positions)
        if min(_trace_forms(sub, tb)) == u.canon:
            return True
    return False
