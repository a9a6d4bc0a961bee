from itertools import permutations

import pytest

from coxinv.coxsys import OrderedSystem, family
from coxinv.invwords import Cell, canonical_word, descents
from coxinv.oracle import (DihedralModel, TypeAModel, TypeBModel, TypeDModel,
                           UnsupportedSystem, act, eval_word,
                           lengths_by_cayley_bfs, model_for, oracle_descents,
                           ranks_by_action_bfs)


def injective_words(n):
    for k in range(n + 1):
        yield from permutations(range(1, n + 1), k)


def test_model_dispatch():
    assert isinstance(model_for(family("A4")), TypeAModel)
    assert isinstance(model_for(family("B3")), TypeBModel)
    assert isinstance(model_for(family("D4")), TypeDModel)
    assert isinstance(model_for(family("I2(6)")), DihedralModel)
    assert isinstance(model_for(family("B2")), DihedralModel)
    for name in ("F4", "H3", "E6", "I2(inf)"):
        with pytest.raises(UnsupportedSystem):
            model_for(family(name))
    with pytest.raises(UnsupportedSystem):
        model_for(OrderedSystem(family("A1").graph.restrict(0), "empty"))


def test_twisted_action_hand_values():
    model = model_for(family("A3"))
    assert act(model.identity(), 1, model) == (2, 1, 3, 4)
    assert act((2, 1, 3, 4), 2, model) == (3, 2, 1, 4)
    assert eval_word((1, 3, 2), model) == (3, 4, 1, 2)
    assert eval_word((), model) == model.identity()


def test_eval_merges_and_separates_rank_two_words():
    a2 = model_for(family("A2"))
    assert eval_word((1, 2), a2) == eval_word((2, 1), a2)
    b2 = model_for(family("B2"))
    assert eval_word((1, 2), b2) != eval_word((2, 1), b2)


def test_oracle_descent_hand_values():
    a3 = model_for(family("A3"))
    assert oracle_descents(a3.identity(), a3) == frozenset()
    assert oracle_descents(eval_word((1, 3, 2), a3), a3) == {2}
    b2 = model_for(family("B2"))
    assert oracle_descents(eval_word((2, 1), b2), b2) == {1}


def test_length_formulas_match_cayley_bfs():
    for name in ("A4", "B3", "B4", "D3", "D4", "I2(5)", "I2(6)"):
        sysm = family(name)
        model = model_for(sysm)
        for element, length in lengths_by_cayley_bfs(model, sysm.n).items():
            assert model.length(element) == length, (name, element)


def test_words_evaluate_to_involutions():
    for name in ("A4", "B4", "D4", "I2(7)"):
        sysm = family(name)
        model = model_for(sysm)
        for w in injective_words(sysm.n):
            ev = eval_word(w, model)
            assert model.mult(ev, ev) == model.identity()


def test_injective_words_are_minimal_length_expressions():
    # distance from the identity in the twisted-action graph equals word length
    for name in ("A4", "B4", "D4", "I2(5)"):
        sysm = family(name)
        model = model_for(sysm)
        ranks = ranks_by_action_bfs(model, sysm.n)
        for w in injective_words(sysm.n):
            assert ranks[eval_word(w, model)] == len(w), (name, w)


@pytest.mark.parametrize("name", ["A5", "B4", "D4", "I2(3)", "I2(7)"])
def test_word_calculus_agrees_with_model(name):
    sysm = family(name)
    model = model_for(sysm)
    canon_of_eval = {}
    for w in injective_words(sysm.n):
        ev = eval_word(w, model)
        cw = canonical_word(w, sysm.graph)
        assert canon_of_eval.setdefault(ev, cw) == cw, (name, w)
        assert descents(Cell(cw), sysm.graph) == oracle_descents(ev, model), (name, w)
    # distinct cells give distinct group elements
    assert len(canon_of_eval) == len(set(canon_of_eval.values()))
