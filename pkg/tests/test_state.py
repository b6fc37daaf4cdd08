import math

import pytest

from nsukit.semantics import accept_act, individual, pred, variable
from nsukit.state import (DialogueState, Distribution, QudEntry, StateError,
                          initial_state, max_qud_prior, render_distribution,
                          render_predicate_set, snapshot)


def test_distribution_validation():
    with pytest.raises(StateError):
        Distribution({})
    with pytest.raises(StateError):
        Distribution({"a": 0.5, "b": 0.6})
    with pytest.raises(StateError):
        Distribution({"a": 1.2, "b": -0.2})
    ok = Distribution({"a": 0.25, "b": 0.75})
    assert ok.prob("a") == 0.25
    assert ok.prob("missing") == 0.0
    assert ok.argmax() == "b"


def test_distribution_argmax_tie_breaks_deterministically():
    assert Distribution({"b": 0.5, "a": 0.5}).argmax() == "a"


def test_max_qud_prior_sizes_zero_and_one():
    assert max_qud_prior(0).map_probs() == {0: 1.0}
    assert max_qud_prior(1).map_probs() == {1: 1.0}
    with pytest.raises(StateError):
        max_qud_prior(-1)


def test_max_qud_prior_size_three_values():
    prior = max_qud_prior(3)
    assert prior.prob(1) == pytest.approx(0.0900, abs=1e-4)
    assert prior.prob(2) == pytest.approx(0.2447, abs=1e-4)
    assert prior.prob(3) == pytest.approx(0.6652, abs=1e-4)
    assert sum(p for _, p in prior.items()) == pytest.approx(1.0, abs=1e-12)


def test_max_qud_prior_ratio_is_e():
    for size in range(2, 7):
        prior = max_qud_prior(size)
        for i in range(1, size):
            assert prior.prob(i + 1) / prior.prob(i) == pytest.approx(
                math.e, abs=1e-9)
        probs = [prior.prob(i) for i in range(1, size + 1)]
        assert probs == sorted(probs)


def _entry(index=1):
    return QudEntry("Is it raining?", pred("raining", individual("E", index)))


def test_qud_entry_access_is_one_based():
    state = DialogueState(qud=(_entry(1), _entry(2)), max_qud=max_qud_prior(2))
    assert state.qud_size == 2
    assert state.qud_entry(1).q.render() == "raining(E_1)"
    assert state.qud_entry(2).q.render() == "raining(E_2)"
    with pytest.raises(StateError):
        state.qud_entry(0)
    with pytest.raises(StateError):
        state.qud_entry(3)
    assert state.max_qud_index() == 2
    assert state.max_qud_entry() is state.qud[1]


def test_fresh_variable_avoids_collisions():
    fec = frozenset({pred("friend", individual("IND", 1), variable(4))})
    state = DialogueState(qud=(QudEntry("u", pred("q", variable(2)), fec),),
                          max_qud=max_qud_prior(1),
                          new_fec=frozenset({pred("person", variable(7))}))
    fresh = state.fresh_variable()
    assert fresh.index == 8


def test_invariant_checks():
    good = initial_state()
    good.check_invariants()
    bad_facts = DialogueState(facts=frozenset({pred("p", variable(1))}))
    with pytest.raises(StateError):
        bad_facts.check_invariants()
    bad_support = DialogueState(max_qud=Distribution({5: 1.0}))
    with pytest.raises(StateError):
        bad_support.check_invariants()


def test_rendering_is_sorted_and_stable():
    dist = Distribution({accept_act(): 0.25,
                         accept_act(pred("p", individual("IND", 1))): 0.75})
    assert render_distribution(dist) == "Accept(p(IND_1))=0.7500; Accept()=0.2500"
    preds = {pred("b", individual("IND", 2)), pred("a", individual("IND", 1))}
    assert render_predicate_set(preds) == "{a(IND_1), b(IND_2)}"


def test_snapshot_is_byte_stable():
    state = DialogueState(
        u_a="Yes.", u_b="Are you going?",
        qud=(QudEntry("Are you going?", pred("going", individual("IND", 1))),),
        max_qud=max_qud_prior(1),
        facts=frozenset({pred("sunny", individual("E", 1))}))
    expected = (
        "u_a: Yes.\n"
        "u_b: Are you going?\n"
        "a_a: None=1.0000\n"
        "a_b: None=1.0000\n"
        "nsu_a: NoNsu=1.0000\n"
        "new_fec: {}\n"
        "facts: {sunny(E_1)}\n"
        "qud: size=1\n"
        "  [1] utt='Are you going?' q=going(IND_1) fec={}\n"
        "max_qud: 1=1.0000\n")
    assert snapshot(state) == expected
    assert snapshot(state) == snapshot(state)
