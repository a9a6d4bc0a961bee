import json

import pytest

from coxinv.complexes import build_complex
from coxinv.coxsys import family, truncate
from coxinv.invwords import Cell, word_str
from coxinv.morse import (Matching, NoGammaMatching, build_gamma_matching,
                          check_patchwork, find_cycle, gamma_report, gamma_set,
                          partition_p123, search_gamma_matching, verify_acyclic,
                          verify_matching)


def matching_from_pairs(*couples):
    pairs = {}
    for a, b in couples:
        pairs[a] = b
        pairs[b] = a
    return pairs


def test_gamma_hand_values():
    a3 = family("A3")
    assert {c.canon for c in gamma_set(a3, build_complex(a3))} == {(1, 3, 2)}
    b2 = family("B2")
    assert {c.canon for c in gamma_set(b2, build_complex(b2))} == {(2, 1)}
    d4 = family("D4")
    assert {c.canon for c in gamma_set(d4, build_complex(d4))} == {
        (1, 4, 3), (2, 4, 3), (1, 4, 3, 2), (1, 2, 4, 3), (2, 4, 3, 1)}


def test_partition_a4():
    sysm = family("A4")
    part = partition_p123(sysm, build_complex(sysm))
    assert {c.canon for c in part.p2} == {(2, 4, 3), (1, 2, 4, 3)}
    assert part.p3 == frozenset()
    assert len(part.p1) == 18


def test_partition_d6_p3_matches_gamma_of_double_truncation():
    sysm = family("D6")
    poset = build_complex(sysm)
    part = partition_p123(sysm, poset)
    d4 = truncate(sysm, 2)
    gamma_d4 = gamma_set(d4, build_complex(d4))
    assert len(part.p3) == len(gamma_d4) == 5
    assert set(part.from_gamma_w2) == gamma_d4


def test_partition_tiles_the_poset():
    for name in ("A4", "A5", "B4", "D6", "E6"):
        sysm = family(name)
        poset = build_complex(sysm)
        part = partition_p123(sysm, poset)
        assert len(part.p1) + len(part.p2) + len(part.p3) == len(poset)
        gamma = gamma_set(sysm, poset)
        assert part.p2 <= gamma and part.p3 <= gamma
        assert part.p1 == {c for c in poset.cells()} - gamma
        # the suffix shifts move ranks up by exactly 3 and 2
        assert all(img.rank == x.rank + 3 for x, img in part.from_w3.items())
        assert all(img.rank == y.rank + 2 for y, img in part.from_gamma_w2.items())


def test_partition_requires_path_ended():
    sysm = family("D4")
    with pytest.raises(ValueError):
        partition_p123(sysm, build_complex(sysm))


def test_verify_matching_complete_toggle_pairs_on_a2():
    sysm = family("A2")
    poset = build_complex(sysm)
    cells = {c.canon: c for c in poset.cells()}
    m = Matching(matching_from_pairs((cells[()], cells[(2,)]),
                                     (cells[(1,)], cells[(1, 2)])), ())
    report = verify_matching(poset, m)
    assert report.matching_ok
    assert report.matched_pairs == 2
    assert report.critical == ()


def test_verify_matching_identity_makes_everything_critical():
    sysm = family("A2")
    poset = build_complex(sysm)
    m = Matching({}, tuple(sorted(poset.cells())))
    report = verify_matching(poset, m)
    assert report.matching_ok
    assert len(report.critical) == 4


def test_verify_matching_rejects_non_cover_pairs():
    sysm = family("A2")
    poset = build_complex(sysm)
    cells = {c.canon: c for c in poset.cells()}
    m = Matching(matching_from_pairs((cells[(1,)], cells[(2,)])), ())
    report = verify_matching(poset, m)
    assert report.matching_ok is False
    assert "cover" in report.failure


def test_verify_matching_rejects_wrong_critical_set():
    sysm = family("A2")
    poset = build_complex(sysm)
    m = Matching({}, ())
    report = verify_matching(poset, m)
    assert report.matching_ok is False


def brute_force_has_cycle(poset, m):
    """Independent cycle check: explicit digraph over all cells."""
    succ = {c: [] for c in poset.cells()}
    up = {a: b for a, b in m.pairs.items() if a.rank < b.rank}
    for r in range(1, len(poset.by_rank)):
        for upper in poset.by_rank[r]:
            for lower in poset.facets_of(upper):
                if up.get(lower) == upper:
                    succ[lower].append(upper)
                else:
                    succ[upper].append(lower)
    state = {c: 0 for c in succ}

    def dfs(v):
        state[v] = 1
        for w in succ[v]:
            if state[w] == 1 or (state[w] == 0 and dfs(w)):
                return True
        state[v] = 2
        return False

    return any(state[c] == 0 and dfs(c) for c in succ)


def test_acyclicity_detector_against_brute_force_on_b2():
    sysm = family("B2")
    poset = build_complex(sysm)
    cells = {c.canon: c for c in poset.cells()}
    cyclic = Matching(matching_from_pairs((cells[(1,)], cells[(1, 2)]),
                                          (cells[(2,)], cells[(2, 1)])), (cells[()],))
    report = verify_acyclic(poset, cyclic)
    assert report.acyclic is False
    assert brute_force_has_cycle(poset, cyclic)
    # the certificate is a genuine alternating cycle
    cyc = report.cycle
    assert len(cyc) >= 4 and len(cyc) % 2 == 0
    for i in range(0, len(cyc), 2):
        assert cyclic.pairs[cyc[i]] == cyc[i + 1]
        assert cyc[i] in poset.facets_of(cyc[i + 1])
        assert cyc[(i + 2) % len(cyc)] in poset.facets_of(cyc[i + 1])

    acyclic = Matching(matching_from_pairs((cells[(1,)], cells[(1, 2)]),
                                           (cells[()], cells[(2,)])), (cells[(2, 1)],))
    report = verify_acyclic(poset, acyclic)
    assert report.acyclic is True
    assert not brute_force_has_cycle(poset, acyclic)


def test_empty_matching_is_acyclic():
    poset = build_complex(family("A3"))
    m = Matching({}, tuple(sorted(poset.cells())))
    assert verify_acyclic(poset, m).acyclic


def test_detector_agrees_with_brute_force_on_all_b3_toggle_variants():
    sysm = family("B3")
    poset = build_complex(sysm)
    m = build_gamma_matching(sysm, poset)
    assert find_cycle(poset, m) is None
    assert not brute_force_has_cycle(poset, m)


def test_build_gamma_matching_counts(cache):
    for name, crit in (("A5", 1), ("D6", 2), ("B5", 2), ("E6", 0), ("E7", 1)):
        m = cache.matching(name)
        sysm = cache.system(name)
        assert len(m.critical) == crit, name
        assert all(c.rank == sysm.n for c in m.critical)


def test_critical_count_is_additive_for_recursive_builds(cache):
    for name in ("A6", "D6", "E6", "B6"):
        sysm = cache.system(name)
        total = len(cache.matching(name).critical)
        sub2 = build_gamma_matching(truncate(sysm, 2))
        sub3 = build_gamma_matching(truncate(sysm, 3))
        assert total == len(sub2.critical) + len(sub3.critical)


def test_recursive_build_used_above_five_generators(cache):
    assert cache.matching("D6").method == "recursive"
    assert cache.matching("A5").method == "search"


def test_search_results_on_base_systems():
    for name, crit in (("F4", 0), ("D4", 1), ("E5", 1), ("E4", 0)):
        sysm = family(name)
        poset = build_complex(sysm)
        m = search_gamma_matching(sysm, poset)
        assert len(m.critical) == crit, name
        report = gamma_report(sysm, poset, m)
        assert report.is_gamma_matching, name


def test_search_is_deterministic():
    sysm = family("D5")
    poset = build_complex(sysm)
    first = search_gamma_matching(sysm, poset)
    second = search_gamma_matching(sysm, poset)
    assert first.pairs == second.pairs
    assert first.critical == second.critical


def test_search_failure_raises(monkeypatch):
    import coxinv.morse as morse_mod
    sysm = family("B2")
    poset = build_complex(sysm)
    lonely = next(c for c in poset.cells() if c.canon == (1,))
    monkeypatch.setattr(morse_mod, "gamma_set", lambda s, p: {lonely})
    with pytest.raises(NoGammaMatching):
        morse_mod.search_gamma_matching(sysm, poset)


def test_gamma_report_flags_gamma_violations():
    sysm = family("A3")
    poset = build_complex(sysm)
    cells = {c.canon: c for c in poset.cells()}
    # pair the lone gamma cell across the boundary
    bad = Matching(matching_from_pairs((cells[(1, 3)], cells[(1, 3, 2)])),
                   tuple(sorted(c for c in poset.cells()
                                if c.canon not in ((1, 3), (1, 3, 2)))))
    report = gamma_report(sysm, poset, bad)
    assert report.matching_ok and report.acyclic
    assert report.preserves_gamma is False
    assert report.is_gamma_matching is False


def test_patchwork_passes_on_path_ended_systems():
    for name in ("A5", "D6", "B4", "E6"):
        sysm = family(name)
        poset = build_complex(sysm)
        report = check_patchwork(poset, partition_p123(sysm, poset))
        assert report.ok, name


def test_patchwork_negative_controls():
    from coxinv.morse import _is_order_ideal
    # the gamma set alone is never downward closed once nonempty: any facet
    # obtained by dropping the top letter leaves it
    sysm = family("A4")
    poset = build_complex(sysm)
    gamma = frozenset(gamma_set(sysm, poset))
    assert _is_order_ideal(poset, gamma) is not None
    # same for the two-letter-suffix part on its own
    a5 = family("A5")
    poset5 = build_complex(a5)
    part = partition_p123(a5, poset5)
    assert part.p3
    assert _is_order_ideal(poset5, part.p3) is not None


def test_matching_json_export(cache):
    m = cache.matching("B2")
    doc = json.loads(m.to_json(acyclic=True))
    assert doc["acyclic"] is True
    assert doc["critical"] == ["s2 s1"]
    assert ["e", "s2"] in doc["pairs"]


def test_matching_dot_export(cache):
    from coxinv.morse import matching_to_dot
    text = matching_to_dot(cache.poset("B2"), cache.matching("B2"))
    assert "digraph" in text and "gold" in text and "red" in text


def test_reports_render(cache):
    report = gamma_report(cache.system("A3"), cache.poset("A3"), cache.matching("A3"))
    text = str(report)
    assert "critical: 1 cells" in text and "acyclic: yes" in text
    assert word_str(Cell((1, 3, 2)).canon) == "s1 s3 s2"
