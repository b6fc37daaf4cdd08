import pytest

from nsukit.semantics import (AlreadyModalizedError, DialogueAct, NO_ACT,
                              SemanticsError, accept_act, ask_act, assert_act,
                              constant, individual, neg, parse_act,
                              parse_predicate, parse_term, pred, prop_rel,
                              speaker_ref, strip_modality, substitute,
                              variable)


def test_term_rendering():
    assert individual("IND", 1).render() == "IND_1"
    assert individual("C", 2).render() == "C_2"
    assert variable(3).render() == "X_3"
    assert constant("Paul").render() == "Paul"
    assert speaker_ref("user").render() == "user"


def test_term_parsing_round_trip():
    for text in ("IND_1", "C_2", "T_1", "D_1", "X_7", "Paul", "user",
                 "system", "05-10", "18:00"):
        assert parse_term(text).render() == text
    assert parse_term("X_4").is_variable()
    assert not parse_term("IND_4").is_variable()


def test_neg_flips_positive_and_fixes_negative():
    p = pred("goingToParty", individual("IND", 2))
    negated = neg(p)
    assert negated.render() == "Neg(goingToParty)(IND_2)"
    already = pred("return", individual("C", 2), individual("C", 1), positive=False)
    assert neg(already) is already
    assert neg(neg(p)) == neg(p)


def test_prop_rel_wraps_and_round_trips():
    p = pred("goingToParty", individual("IND", 2))
    wrapped = prop_rel("probably", p)
    assert wrapped.render() == "PropRel_probably(goingToParty)(IND_2)"
    assert prop_rel("clearly", p) != wrapped
    assert strip_modality(wrapped) == p
    with pytest.raises(AlreadyModalizedError):
        prop_rel("clearly", wrapped)


def test_substitute_replaces_every_occurrence():
    x = variable(1)
    paul = constant("Paul")
    q = pred("organizingTheParty", x)
    assert substitute(q, x, paul).render() == "organizingTheParty(Paul)"
    fec = pred("friend", individual("IND", 2), x)
    assert substitute(fec, x, paul).render() == "friend(IND_2,Paul)"
    untouched = pred("city", individual("C", 1), constant("Columbus"))
    assert substitute(untouched, x, paul) == untouched
    twice = pred("knows", x, x)
    assert substitute(twice, x, paul).render() == "knows(Paul,Paul)"


def test_substitute_rejects_non_variable_target():
    with pytest.raises(SemanticsError):
        substitute(pred("p", constant("a")), constant("a"), constant("b"))


def test_polarity_and_variables():
    polar = pred("havePreferredAirline", speaker_ref("user"))
    assert polar.is_polar()
    open_q = pred("departTime", variable(1))
    assert not open_q.is_polar()
    assert open_q.variables() == (variable(1),)


def test_predicate_parse_render_round_trip():
    for text in ("goingToParty(IND_1)",
                 "travelPlans(C_1,C_2,D_1)",
                 "Neg(havePreferredAirline)(user)",
                 "Neg(return)(C_2,C_1)",
                 "PropRel_probably(goingToParty)(IND_2)",
                 "friend(IND_2,X_1)",
                 "named(X_1,X_3)",
                 "date(D_1,05-10)",
                 "time(T_2,18:00)",
                 "ready()"):
        assert parse_predicate(text).render() == text


def test_predicate_parse_rejects_garbage():
    for text in ("", "nope", "p(", "Neg(p", "p(a))b"):
        with pytest.raises(SemanticsError):
            parse_predicate(text)


def test_acts_render_and_parse():
    p = pred("goingToParty", individual("IND", 1))
    assert assert_act(p).render() == "Assert(goingToParty(IND_1))"
    assert ask_act(p).render() == "Ask(goingToParty(IND_1))"
    assert accept_act().render() == "Accept()"
    assert accept_act(p).render() == "Accept(goingToParty(IND_1))"
    assert NO_ACT.render() == "None"
    for text in ("Assert(goingToParty(IND_1))", "Ask(departTime(X_1))",
                 "Accept()", "Accept(travelPlans(C_1,C_2,D_1))",
                 "Ground()", "None"):
        assert parse_act(text).render() == text


def test_act_validation():
    with pytest.raises(SemanticsError):
        DialogueAct("Assert", None)
    with pytest.raises(SemanticsError):
        DialogueAct("Bogus", None)
    with pytest.raises(SemanticsError):
        parse_act("Shout(loudly)")
