import json
from itertools import permutations

import pytest

from coxinv.complexes import (CellLimitExceeded, betti_gf2, build_complex,
                              build_poset, check_pure, check_simplicial,
                              enumerate_cells, f_vector,
                              poset_isomorphism_by_canon, reduced_euler,
                              to_dot, to_json)
from coxinv.coxsys import OrderedSystem, family, truncate
from coxinv.gf2 import gf2_rank
from coxinv.invwords import canonical


def test_gf2_rank():
    assert gf2_rank([]) == 0
    assert gf2_rank([0b1, 0b10, 0b11]) == 2
    assert gf2_rank([0b111, 0b101, 0b010]) == 2
    assert gf2_rank([1 << 40, (1 << 40) | 1, 1]) == 2


def test_enumerate_small_complexes():
    a2 = enumerate_cells(family("A2"))
    assert [c.canon for c in a2] == [(), (1,), (2,), (1, 2)]
    b2 = enumerate_cells(family("B2"))
    assert [c.canon for c in b2] == [(), (1,), (2,), (1, 2), (2, 1)]
    a3 = enumerate_cells(family("A3"))
    assert len(a3) == 9


def test_enumeration_matches_exhaustive_word_scan():
    # every injective word, canonicalized, against the level-by-level search
    for name in ("A4", "B3", "D4", "I2(6)"):
        sysm = family(name)
        brute = {canonical(w, sysm.graph)
                 for k in range(sysm.n + 1)
                 for w in permutations(range(1, sysm.n + 1), k)}
        assert set(enumerate_cells(sysm)) == brute


def test_enumerate_respects_cell_limit():
    with pytest.raises(CellLimitExceeded):
        enumerate_cells(family("A5"), max_cells=10)


def test_empty_system():
    sysm = OrderedSystem(family("A1").graph.restrict(0), "empty")
    p = build_complex(sysm)
    assert len(p) == 1
    assert f_vector(p) == [1]
    assert reduced_euler(p) == -1
    assert betti_gf2(p) == [1]


def test_cover_structure():
    p = build_complex(family("A2"))
    top = p.by_rank[2][0]
    assert {c.canon for c in p.facets_of(top)} == {(1,), (2,)}
    pb = build_complex(family("B2"))
    for cell in pb.by_rank[2]:
        assert {c.canon for c in pb.facets_of(cell)} == {(1,), (2,)}
    for v in pb.by_rank[1]:
        assert len(pb.cofacets_of(v)) == 2


def test_build_poset_rejects_incomplete_cell_sets():
    sysm = family("B2")
    cells = [c for c in enumerate_cells(sysm) if c.canon != (1,)]
    with pytest.raises(RuntimeError):
        build_poset(cells, sysm)


def test_f_vectors_and_euler():
    assert f_vector(build_complex(family("A3"))) == [1, 3, 3, 2]
    assert reduced_euler(build_complex(family("A3"))) == 1
    assert f_vector(build_complex(family("B2"))) == [1, 2, 2]
    assert reduced_euler(build_complex(family("B2"))) == -1
    assert reduced_euler(build_complex(family("A1"))) == 0


def test_betti_hand_values():
    assert betti_gf2(build_complex(family("B2"))) == [0, 0, 1]
    assert betti_gf2(build_complex(family("A2"))) == [0, 0, 0]
    assert betti_gf2(build_complex(family("A3"))) == [0, 0, 0, 1]


def test_euler_equals_alternating_betti_sum():
    for name in ("A4", "B4", "D4", "E5", "F4", "I2(8)", "H3"):
        p = build_complex(family(name))
        betti = betti_gf2(p)
        alt = sum(b if i % 2 else -b for i, b in enumerate(betti))
        assert alt == reduced_euler(p)


def test_check_simplicial_passes():
    for name in ("D4", "F4", "B4", "tF4"):
        report = check_simplicial(build_complex(family(name)))
        assert report.ok, str(report)


def test_check_simplicial_flags_missing_cell():
    # drop one rank-1 cell: its former cofaces lose a facet
    sysm = family("A2")
    p = build_complex(sysm)
    p.by_rank[1] = [c for c in p.by_rank[1] if c.canon != (2,)]
    p.facet_ids[1] = p.facet_ids[1][:1]
    p.facet_ids[2] = [(0,)]
    broken = type(p)(sysm, p.by_rank, p.facet_ids)
    report = check_simplicial(broken)
    assert not report.ok


def test_check_pure():
    for name in ("A5", "D5", "F4"):
        assert check_pure(build_complex(family(name))) == []


def test_maximal_cells_have_full_support():
    for name in ("A4", "D4", "F4"):
        p = build_complex(family(name))
        for c in p.by_rank[-1]:
            assert c.support == frozenset(range(1, p.system.n + 1))


def test_collapse_invariance_of_the_complex():
    pairs = [("H3", "B3"), ("H4", "B4"), ("I2(5)", "I2(4)"), ("I2(inf)", "I2(4)")]
    for big, small in pairs:
        p = build_complex(family(big))
        q = build_complex(family(small))
        bij = poset_isomorphism_by_canon(p, q)
        assert bij is not None
        assert f_vector(p) == f_vector(q)
        assert betti_gf2(p) == betti_gf2(q)
        assert all(a.rank == b.rank for a, b in bij.items())
    assert poset_isomorphism_by_canon(
        build_complex(family("I2(3)")), build_complex(family("I2(4)"))) is None


def test_json_export():
    p = build_complex(family("B2"))
    doc = json.loads(to_json(p))
    assert doc["f"] == [1, 2, 2]
    assert doc["betti"] == [0, 0, 1]
    assert len(doc["cells"]) == 5
    assert sorted(doc["covers"]) == [[1, 0], [2, 0], [3, 1], [3, 2], [4, 1], [4, 2]]


def test_dot_export():
    text = to_dot(build_complex(family("A2")))
    assert text.startswith("digraph")
    assert '"s1 s2"' in text
    assert text.count("->") == 4


def test_truncation_posets_nest():
    sysm = family("D5")
    big = {c.canon for c in enumerate_cells(sysm)}
    small = {c.canon for c in enumerate_cells(truncate(sysm, 2))}
    assert small <= big
