"""Pre-built dialogue states for the worked resolution examples.

Each scenario is the pre-state of one resolution rule demonstration; the
golden fixtures under data/golden/ hold the expected act and FEC output.
"""

from __future__ import annotations

from nsukit.semantics import constant, individual, pred, variable
from nsukit.state import DialogueState, Distribution, QudEntry, max_qud_prior


def _single(utt: str, q, fec=frozenset(), nsu=None, u_a="", new_fec=frozenset()):
    return DialogueState(
        u_a=u_a,
        qud=(QudEntry(utt, q, frozenset(fec)),),
        max_qud=max_qud_prior(1),
        nsu_a=Distribution.point(nsu),
        new_fec=frozenset(new_fec),
    )


def ack_scenario() -> DialogueState:
    # B: I am going to the party.  A: OK.
    return _single("I am going to the party.",
                   pred("goingToParty", individual("IND", 1)),
                   nsu="Ack", u_a="OK.")


def aff_ans_scenario() -> DialogueState:
    # B: Are you going to the party?  A: Yes.
    return _single("Are you going to the party?",
                   pred("goingToParty", individual("IND", 2)),
                   nsu="AffAns", u_a="Yes.")


def reject_scenario() -> DialogueState:
    # B: Are you going to the party?  A: No.
    return _single("Are you going to the party?",
                   pred("goingToParty", individual("IND", 2)),
                   nsu="Reject", u_a="No.")


def reject_negative_scenario() -> DialogueState:
    # B: Did Paul not leave?  A: No.  (= Paul did not leave)
    return _single("Did Paul not leave?",
                   pred("leave", individual("IND", 1), positive=False),
                   nsu="Reject", u_a="No.")


def prop_mod_scenario() -> DialogueState:
    # B: Are you going to the party?  A: Probably.
    return _single("Are you going to the party?",
                   pred("goingToParty", individual("IND", 2)),
                   nsu="PropMod", u_a="Probably.")


def check_qu_scenario() -> DialogueState:
    # A: I am going to the party.  A: OK?
    return _single("I am going to the party.",
                   pred("goingToParty", individual("IND", 1)),
                   nsu="CheckQu", u_a="OK?")


def short_ans_scenario() -> DialogueState:
    # B: Who is your friend organizing the party?  A: Paul.
    return _single("Who is your friend organizing the party?",
                   pred("organizingTheParty", variable(1)),
                   fec={pred("friend", individual("IND", 2), variable(1))},
                   nsu="ShortAns", u_a="Paul.")


def sluice_scenario() -> DialogueState:
    # B: A friend is coming to the party.  A: Who?
    return _single("A friend is coming to the party.",
                   pred("comingToParty", variable(1)),
                   fec={pred("friend", individual("IND", 2), variable(1))},
                   nsu="Sluice", u_a="Who?")


def sluice_ambiguous_scenario() -> DialogueState:
    # B: A friend of mine is organizing a party for his girlfriend.  A: Who?
    return _single("A friend of mine is organizing a party for his girlfriend.",
                   pred("organizingPartyFor", variable(1), variable(2)),
                   fec={pred("friend", individual("IND", 1), variable(1)),
                        pred("girlfriend", variable(2), variable(1))},
                   nsu="Sluice", u_a="Who?")


def ce_conf_scenario() -> DialogueState:
    # A: Is Paul coming to the party?  B: Paul?
    return _single("Is Paul coming to the party?",
                   pred("comingToParty", individual("IND", 1)),
                   fec={pred("named", individual("IND", 1), constant("Paul"))},
                   nsu="CE", u_a="Paul?")


RESOLUTION_SCENARIOS = {
    "ack": ack_scenario,
    "aff_ans": aff_ans_scenario,
    "reject": reject_scenario,
    "reject_negative": reject_negative_scenario,
    "prop_mod": prop_mod_scenario,
    "check_qu": check_qu_scenario,
    "short_ans": short_ans_scenario,
    "sluice": sluice_scenario,
    "sluice_ambiguous": sluice_ambiguous_scenario,
    "ce_conf": ce_conf_scenario,
}
