from dataclasses import replace

import pytest

from nsukit.bundled import data_path
from nsukit.engine import apply_rules, fire_stage, ground_and_fire
from nsukit.ruleset import (default_ruleset, load_rules, rule_ack,
                            rule_aff_ans, rule_ce_conf, rule_check_qu,
                            rule_facts_increment, rule_fec_update,
                            rule_prop_mod, rule_qud_downdate,
                            rule_qud_increment, rule_short_ans, rule_sluice)
from nsukit.scenarios import (RESOLUTION_SCENARIOS, ack_scenario,
                              aff_ans_scenario, ce_conf_scenario,
                              check_qu_scenario, prop_mod_scenario,
                              reject_scenario, reject_negative_scenario,
                              short_ans_scenario, sluice_ambiguous_scenario,
                              sluice_scenario)
from nsukit.semantics import (NO_ACT, accept_act, ask_act, assert_act,
                              constant, individual, parse_predicate, pred,
                              prop_rel, variable)
from nsukit.state import (DialogueState, Distribution, QudEntry,
                          max_qud_prior, render_distribution,
                          render_predicate_set)

RS = default_ruleset()


def resolve(state):
    return fire_stage(state, RS.resolution)


def acts(state):
    return {act.render(): p for act, p in state.a_a.items()}


# --- resolution rules -------------------------------------------------------

def test_ack_accepts_the_current_issue():
    out = resolve(ack_scenario())
    assert acts(out) == {"Accept()": 1.0}
    assert out.new_fec == frozenset()


def test_ack_silent_on_empty_qud():
    state = replace(ack_scenario(), qud=(), max_qud=max_qud_prior(0))
    assert acts(resolve(state)) == {"None": 1.0}


def test_ack_with_uncertain_class_keeps_probability():
    state = replace(ack_scenario(),
                    nsu_a=Distribution({"Ack": 0.75, "AffAns": 0.2, "CheckQu": 0.05}))
    out = resolve(state)
    assert out.a_a.prob(accept_act()) == pytest.approx(0.75)


def test_rep_ack_uses_the_same_rule():
    state = replace(ack_scenario(), nsu_a=Distribution.point("RepAck"))
    assert acts(resolve(state)) == {"Accept()": 1.0}


def test_aff_ans_asserts_the_polar_question():
    out = resolve(aff_ans_scenario())
    assert acts(out) == {"Assert(goingToParty(IND_2))": 1.0}
    assert out.new_fec == frozenset()


def test_aff_ans_copies_fec_verbatim():
    fec = frozenset({pred("city", individual("C", 1), constant("Columbus"))})
    state = aff_ans_scenario()
    entry = replace(state.qud[0], fec=fec)
    out = resolve(replace(state, qud=(entry,)))
    assert out.new_fec == fec


def test_rep_aff_ans_uses_the_same_rule():
    state = replace(aff_ans_scenario(), nsu_a=Distribution.point("RepAffAns"))
    assert acts(resolve(state)) == {"Assert(goingToParty(IND_2))": 1.0}


def test_aff_ans_silent_on_wh_question():
    state = aff_ans_scenario()
    entry = replace(state.qud[0], q=pred("goingToParty", variable(1)))
    out = resolve(replace(state, qud=(entry,)))
    assert acts(out) == {"None": 1.0}


def test_reject_negates_positive_question():
    out = resolve(reject_scenario())
    assert acts(out) == {"Assert(Neg(goingToParty)(IND_2))": 1.0}


def test_reject_keeps_negative_question_negative():
    out = resolve(reject_negative_scenario())
    assert acts(out) == {"Assert(Neg(leave)(IND_1))": 1.0}


def test_prop_mod_wraps_with_the_uttered_lexeme():
    out = resolve(prop_mod_scenario())
    assert acts(out) == {"Assert(PropRel_probably(goingToParty)(IND_2))": 1.0}
    clearly = replace(prop_mod_scenario(), u_a="Clearly.")
    assert acts(resolve(clearly)) == \
        {"Assert(PropRel_clearly(goingToParty)(IND_2))": 1.0}


def test_prop_mod_silent_on_non_polar_maxqud():
    state = prop_mod_scenario()
    entry = replace(state.qud[0], q=pred("goingToParty", variable(1)))
    out = resolve(replace(state, qud=(entry,)))
    assert acts(out) == {"None": 1.0}


def test_check_qu_asks_the_current_issue():
    out = resolve(check_qu_scenario())
    assert acts(out) == {"Ask(goingToParty(IND_1))": 1.0}


def test_check_qu_preserves_fec_and_needs_qud():
    fec = frozenset({pred("named", individual("IND", 1), constant("Paul"))})
    state = check_qu_scenario()
    entry = replace(state.qud[0], fec=fec)
    out = resolve(replace(state, qud=(entry,)))
    assert out.new_fec == fec
    empty = replace(check_qu_scenario(), qud=(), max_qud=max_qud_prior(0))
    assert acts(resolve(empty)) == {"None": 1.0}


def test_short_answer_substitutes_the_wh_variable():
    out = resolve(short_ans_scenario())
    assert acts(out) == {"Assert(organizingTheParty(Paul))": 1.0}
    assert render_predicate_set(out.new_fec) == "{friend(IND_2,Paul)}"


def test_short_answer_keeps_fec_without_the_variable():
    state = short_ans_scenario()
    extra = pred("today", individual("D", 1))
    entry = replace(state.qud[0], fec=state.qud[0].fec | {extra})
    out = resolve(replace(state, qud=(entry,)))
    assert extra in out.new_fec
    assert parse_predicate("friend(IND_2,Paul)") in out.new_fec


def test_short_answer_uses_annotated_answer_term():
    state = replace(short_ans_scenario(), answer_term=individual("T", 1))
    out = resolve(state)
    assert acts(out) == {"Assert(organizingTheParty(T_1))": 1.0}


def test_short_answer_needs_exactly_one_variable():
    state = short_ans_scenario()
    entry = replace(state.qud[0], q=pred("q", variable(1), variable(2)))
    out = resolve(replace(state, qud=(entry,)))
    assert acts(out) == {"None": 1.0}


def test_sluice_asks_about_the_focal_variable():
    out = resolve(sluice_scenario())
    assert acts(out) == {"Ask(named(X_1,X_2))": 1.0}
    assert render_predicate_set(out.new_fec) == "{friend(IND_2,X_1), person(X_1)}"


def test_sluice_with_two_fecs_splits_mass():
    out = resolve(sluice_ambiguous_scenario())
    assert out.a_a.prob(ask_act(pred("named", variable(1), variable(3)))) == \
        pytest.approx(0.5, abs=1e-9)
    assert out.a_a.prob(ask_act(pred("named", variable(2), variable(3)))) == \
        pytest.approx(0.5, abs=1e-9)


def test_sluice_silent_without_variable_or_fec_mention():
    state = sluice_scenario()
    polar = replace(state.qud[0], q=pred("comingToParty", individual("IND", 3)))
    assert acts(resolve(replace(state, qud=(polar,)))) == {"None": 1.0}
    no_mention = replace(state.qud[0], fec=frozenset())
    assert acts(resolve(replace(state, qud=(no_mention,)))) == {"None": 1.0}


def test_sluice_when_and_where_templates():
    state = replace(sluice_scenario(), u_a="When?")
    out = resolve(state)
    assert acts(out) == {"Ask(time(X_1,X_2))": 1.0}
    assert pred("temporal", variable(1)) in out.new_fec
    state = replace(sluice_scenario(), u_a="Where?")
    out = resolve(state)
    assert acts(out) == {"Ask(place(X_1,X_2))": 1.0}
    assert pred("location", variable(1)) in out.new_fec


def test_ce_confirmation_reading():
    out = resolve(ce_conf_scenario())
    assert acts(out) == {"Ask(named(IND_1,Paul))": 1.0}
    assert out.new_fec == frozenset()


def test_ce_silent_when_surface_matches_nothing():
    state = replace(ce_conf_scenario(), u_a="Mary?")
    assert acts(resolve(state)) == {"None": 1.0}


def test_ce_matches_inside_the_question_itself():
    state = ce_conf_scenario()
    entry = QudEntry("Is the party at nine?",
                     pred("partyAt", constant("nine")))
    out = resolve(replace(state, qud=(entry,), u_a="Nine?"))
    assert acts(out) == {"Ask(partyAt(nine))": 1.0}


def test_exactly_one_resolution_rule_fires_per_scenario():
    for name, build in RESOLUTION_SCENARIOS.items():
        state = build()
        firing = []
        for rule in RS.resolution:
            outcomes = ground_and_fire(rule, state)
            if any(es for es in outcomes if es):
                firing.append(rule.name)
        assert len(firing) == 1, (name, firing)


def test_golden_resolution_fixtures_are_reproduced():
    for name, build in RESOLUTION_SCENARIOS.items():
        out = resolve(build())
        got = "a_a: %s\nnew_fec: %s\n" % (
            render_distribution(out.a_a), render_predicate_set(out.new_fec))
        golden = data_path("golden", "resolution", "%s.txt" % name)
        assert got == golden.read_text(encoding="utf-8"), name


def test_disabling_reject_leaves_act_none():
    out = fire_stage(reject_scenario(), RS.without("reject").resolution)
    assert acts(out) == {"None": 1.0}


# --- update rules -----------------------------------------------------------

def _system_state(act, u_b="...", new_fec=frozenset(), **kwargs):
    return DialogueState(u_b=u_b, a_b=Distribution.point(act),
                         new_fec=frozenset(new_fec), **kwargs)


def test_qud_increment_on_ask_is_certain():
    q = pred("departTime", variable(1))
    state = _system_state(ask_act(q), u_b="What time?")
    out = apply_rules(state, [rule_qud_increment()])
    assert out.qud_size == 1
    assert out.qud[0].q == q
    assert out.qud[0].utt == "What time?"


def test_qud_increment_on_assert_appends_at_three_quarters():
    p = pred("sunny", individual("E", 1))
    state = _system_state(assert_act(p))
    rule = rule_qud_increment()
    outcomes = ground_and_fire(rule, state)
    probs = sorted(outcomes.values())
    assert probs == [pytest.approx(0.25), pytest.approx(0.75)]
    out = apply_rules(state, [rule])
    assert out.qud_size == 1  # most probable branch appends


def test_user_moves_never_increment_qud():
    p = pred("sunny", individual("E", 1))
    state = DialogueState(a_a=Distribution.point(assert_act(p)))
    out = apply_rules(state, [rule_qud_increment()])
    assert out.qud_size == 0


def test_fec_update_moves_only_shared_argument_predicates():
    q = pred("travelPlans", individual("C", 1), individual("C", 2))
    shared = pred("city", individual("C", 1), constant("Columbus"))
    unrelated = pred("weather", individual("E", 9))
    state = _system_state(ask_act(q), new_fec={shared, unrelated})
    out = apply_rules(state, [rule_qud_increment(), rule_fec_update()])
    assert out.qud[0].fec == frozenset({shared})


def test_qud_downdate_on_accept_compacts_and_reprioritizes():
    entries = tuple(QudEntry("u%d" % i, pred("q%d" % i, individual("IND", i)))
                    for i in (1, 2, 3))
    state = DialogueState(qud=entries, max_qud=max_qud_prior(3),
                          a_b=Distribution.point(accept_act(entries[2].q)))
    out = apply_rules(state, [rule_qud_downdate(), ])
    assert [e.utt for e in out.qud] == ["u1", "u2"]
    single = DialogueState(qud=entries[:1], max_qud=max_qud_prior(1),
                           a_b=Distribution.point(accept_act(entries[0].q)))
    out = apply_rules(single, [rule_qud_downdate()])
    assert out.qud == ()


def test_qud_untouched_without_accept():
    entries = (QudEntry("u", pred("q", individual("IND", 1))),)
    state = DialogueState(qud=entries, max_qud=max_qud_prior(1))
    out = apply_rules(state, RS.update)
    assert out.qud == entries


def test_facts_increment_plain_accept_inserts_content_and_fec():
    p = pred("travelPlans", individual("C", 1), individual("C", 2), individual("D", 1))
    fec = {pred("city", individual("C", 1), constant("Columbus")),
           pred("city", individual("C", 2), constant("Phoenix")),
           pred("date", individual("D", 1), constant("05-10"))}
    state = _system_state(accept_act(p), new_fec=fec)
    out = apply_rules(state, [rule_facts_increment()])
    assert out.facts == frozenset({p}) | fec


def test_facts_increment_stores_negative_predicates():
    p = pred("return", individual("C", 2), individual("C", 1), positive=False)
    state = _system_state(accept_act(p))
    out = apply_rules(state, [rule_facts_increment()])
    assert out.facts == frozenset({p})


def test_facts_increment_modality_probability():
    p = prop_rel("probably", pred("goingToParty", individual("IND", 2)))
    state = _system_state(accept_act(p))
    rule = rule_facts_increment({"probably": 0.75, "unlikely": 0.25})
    outcomes = ground_and_fire(rule, state)
    inserted = [prob for es, prob in outcomes.items() if es]
    assert inserted == [pytest.approx(0.75)]
    out = apply_rules(state, [rule])
    assert pred("goingToParty", individual("IND", 2)) in out.facts
    unlikely = _system_state(accept_act(
        prop_rel("unlikely", pred("goingToParty", individual("IND", 2)))))
    out = apply_rules(unlikely, [rule])
    assert out.facts == frozenset()  # 0.25 < no-change mass


def test_facts_never_gain_variables():
    p = pred("q", individual("IND", 1))
    state = _system_state(accept_act(p),
                          new_fec={pred("person", variable(1)), pred("ok", individual("E", 1))})
    out = apply_rules(state, [rule_facts_increment()])
    assert out.facts == frozenset({p, pred("ok", individual("E", 1))})
    out.check_invariants()


def test_bare_accept_resolves_against_maxqud():
    entry = QudEntry("I am going.", pred("going", individual("IND", 1)))
    state = DialogueState(qud=(entry,), max_qud=max_qud_prior(1),
                          a_a=Distribution.point(accept_act()))
    out = apply_rules(state, RS.update)
    assert entry.q in out.facts
    assert out.qud == ()
    assert out.max_qud.map_probs() == {0: 1.0}


def test_qud_size_change_per_turn_is_bounded():
    q = pred("departTime", variable(1))
    state = DialogueState()
    for act, expected_delta in ((ask_act(q), +1),
                                (accept_act(pred("p", individual("IND", 1))), -1),
                                (NO_ACT, 0)):
        before = state.qud_size
        state = apply_rules(replace(state, a_b=Distribution.point(act)), RS.update)
        assert state.qud_size - before == expected_delta


def test_rules_file_round_trip(tmp_path):
    default = load_rules()
    assert [r.name for r in default.resolution] == \
        ["ack", "affAns", "reject", "propMod", "checkQu", "shortAns",
         "sluice_who", "sluice_when", "sluice_where", "ce_conf"]
    assert [r.name for r in default.update] == \
        ["qud_increment", "fec_update", "facts_increment", "qud_downdate",
         "max_qud_update"]
    custom = tmp_path / "rules.json"
    custom.write_text(
        '{"resolution": [{"name": "ack", "kind": "ack"}],'
        ' "update": [{"name": "max_qud_update", "kind": "max_qud_update"}]}',
        encoding="utf-8")
    loaded = load_rules(custom)
    assert [r.name for r in loaded.rules()] == ["ack", "max_qud_update"]
    disabled = tmp_path / "disabled.json"
    disabled.write_text(
        '{"resolution": [{"name": "ack", "kind": "ack", "enabled": false}]}',
        encoding="utf-8")
    assert load_rules(disabled).rules() == ()
