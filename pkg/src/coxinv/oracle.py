"""Exact group models for the classical types, used as test ground truth.

Supported systems are those whose graph equals a family preset of type A,
B, D, or I2; there is no model for types E, F, H (label collapse plus the
classical models already exercises every 2/3/>=4 code path).

Conventions, fixed here once:

  * A permutation w on 1..N is stored one-line as a tuple t with
    t[i-1] = w(i); products compose right factor first, (u*v)(i) = u(v(i)).
  * Signed permutations store the images of 1..n as signed integers, with
    w(-i) = -w(i) implicit.  Generator 1 is the sign change of position 1
    (type B) or the sign-changing swap of positions 1, 2 (type D, as
    generator 2); generator k >= 2 (type B) or k = 1, k >= 3 (type D) is an
    adjacent transposition.
  * Dihedral elements are (r, f): rotation index r mod m, reflection flag f.
"""

from __future__ import annotations

from .coxsys import INF, OrderedSystem, family_graph
from .invwords import Word


class UnsupportedSystem(ValueError):
    """No exact model is implemented for this system."""


class Model:
    """One group model: identity, generators, multiplication, length."""

    kind = "?"
    n_gens = 0

    def identity(self):
        raise NotImplementedError

    def gen(self, i: int):
        raise NotImplementedError

    def mult(self, u, v):
        raise NotImplementedError

    def length(self, w) -> int:
        raise NotImplementedError


class TypeAModel(Model):
    """Symmetric group on 1..n+1; generator i swaps i, i+1."""

    kind = "A"

    def __init__(self, n: int) -> None:
        self.n_gens = n
        self.size = n + 1

    def identity(self):
        return tuple(range(1, self.size + 1))

    def gen(self, i: int):
        e = list(range(1, self.size + 1))
        e[i - 1], e[i] = e[i], e[i - 1]
        return tuple(e)

    def mult(self, u, v):
        return tuple(u[x - 1] for x in v)

    def length(self, w) -> int:
        return sum(1 for i in range(self.size) for j in range(i + 1, self.size)
                   if w[i] > w[j])


class TypeBModel(Model):
    """Signed permutations of 1..n; generator 1 negates position 1."""

    kind = "B"

    def __init__(self, n: int) -> None:
        self.n = n
        self.n_gens = n

    def identity(self):
        return tuple(range(1, self.n + 1))

    def gen(self, i: int):
        e = list(range(1, self.n + 1))
        if i == 1:
            e[0] = -1
        else:
            e[i - 2], e[i - 1] = e[i - 1], e[i - 2]
        return tuple(e)

    def mult(self, u, v):
        return tuple(u[x - 1] if x > 0 else -u[-x - 1] for x in v)

    def length(self, w) -> int:
        n = self.n
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])
        neg = sum(1 for x in w if x < 0)
        nsp = sum(1 for i in range(n) for j in range(i + 1, n) if w[i] + w[j] < 0)
        return inv + neg + nsp


class TypeDModel(TypeBModel):
    """Even-signed permutations; generator 2 is the sign-changing swap."""

    kind = "D"

    def gen(self, i: int):
        e = list(range(1, self.n + 1))
        if i == 1:
            e[0], e[1] = e[1], e[0]
        elif i == 2:
            e[0], e[1] = -e[1], -e[0]
        else:
            e[i - 2], e[i - 1] = e[i - 1], e[i - 2]
        return tuple(e)

    def length(self, w) -> int:
        n = self.n
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])
        nsp = sum(1 for i in range(n) for j in range(i + 1, n) if w[i] + w[j] < 0)
        return inv + nsp


class DihedralModel(Model):
    """Dihedral group of order 2m; both generators are reflections."""

    kind = "I2"
    n_gens = 2

    def __init__(self, m: int) -> None:
        self.m = m

    def identity(self):
        return (0, 0)

    def gen(self, i: int):
        return (0, 1) if i == 1 else (1, 1)

    def mult(self, u, v):
        r1, f1 = u
        r2, f2 = v
        return ((r1 - r2 if f1 else r1 + r2) % self.m, f1 ^ f2)

    def length(self, w) -> int:
        r, f = w
        m = self.m
        if f == 0:
            return 2 * min(r % m, (m - r) % m)
        return 2 * min((m - r) % m, (r - 1) % m) + 1


def model_for(sys: OrderedSystem) -> Model:
    """Pick the exact model matching the system's graph, if any."""
    g = sys.graph
    n = g.n
    if n == 0:
        raise UnsupportedSystem("empty system")
    if n == 2:
        m = g.m(1, 2)
        if m == INF or m < 3:
            raise UnsupportedSystem(f"no dihedral model for m = {m}")
        return DihedralModel(int(m))
    if g == family_graph("A", n):
        return TypeAModel(n)
    if g == family_graph("B", n):
        return TypeBModel(n)
    if n >= 3 and g == family_graph("D", n):
        return TypeDModel(n)
    raise UnsupportedSystem(f"no exact model for {sys}")


def act(w, s: int, model: Model):
    """Twisted right action: w * s when s conjugates w to itself, else s w s."""
    sg = model.gen(s)
    tw = model.mult(model.mult(sg, w), sg)
    if tw == w:
        return model.mult(w, sg)
    return tw


def eval_word(word: Word, model: Model):
    """Left-to-right fold of the twisted action starting at the identity."""
    w = model.identity()
    for s in word:
        w = act(w, s, model)
    return w


def oracle_descents(w, model: Model) -> frozenset[int]:
    """Generators whose right multiplication drops the length."""
    lw = model.length(w)
    return frozenset(s for s in range(1, model.n_gens + 1)
                     if model.length(model.mult(w, model.gen(s))) < lw)


def ranks_by_action_bfs(model: Model, n_gens: int) -> dict:
    """Distance of every reachable involution from the identity under the
    twisted action; this is the minimal expression length."""
    dist = {model.identity(): 0}
    frontier = [model.identity()]
    while frontier:
        nxt = []
        for w in frontier:
            for s in range(1, n_gens + 1):
                v = act(w, s, model)
                if v not in dist:
                    dist[v] = dist[w] + 1
                    nxt.append(v)
        frontier = nxt
    return dist


def lengths_by_cayley_bfs(model: Model, n_gens: int) -> dict:
    """Exact Coxeter length of every group element, by Cayley graph BFS;
    cross-checks the closed-form length methods."""
    dist = {model.identity(): 0}
    frontier = [model.identity()]
    while frontier:
        nxt = []
        for w in frontier:
            for s in range(1, n_gens + 1):
                v = model.mult(w, model.gen(s))
                if v not in dist:
                    dist[v] = dist[w] + 1
                    nxt.append(v)
        frontier = nxt
    return dist
