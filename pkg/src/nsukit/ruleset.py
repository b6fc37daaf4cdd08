"""The concrete resolution and context-update rules.

Each factory returns a ProbRule; `load_rules` assembles the canonical
rule set from a declarative JSON file (name, kind, enable flag and
probability parameters per rule).  Update rules always run after the
resolution rules within a turn.

One deliberate divergence from the usual downdate formulation: removing
the MaxQUD element compacts the array instead of leaving a None hole, so
1-based index arithmetic stays sound.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path

from .config import Config, DEFAULT_CONFIG
from .engine import Branch, Effect, ProbRule
from .nlu import bare_fragment, default_answer_term, modal_lexeme, naive_words
from .semantics import (DialogueAct, Predicate, ask_act, assert_act, accept_act,
                        neg, pred, prop_rel, strip_modality, substitute)
from .state import DialogueState, QudEntry, max_qud_prior


def _entry(state: DialogueState, assignment) -> QudEntry | None:
    index = assignment.get("max_qud", 0)
    if index <= 0 or index > state.qud_size:
        return None
    return state.qud_entry(index)


def _polar_entry(state, assignment) -> QudEntry | None:
    entry = _entry(state, assignment)
    if entry is not None and entry.q.is_polar():
        return entry
    return None


def _one(effects) -> list:
    return [(tuple(effects), 1.0)]


def rule_ack() -> ProbRule:
    def cond(state, asg, env):
        return asg["nsu_a"] in ("Ack", "RepAck") and asg["max_qud"] > 0

    def effects(state, asg, env):
        return _one([Effect("a_a", accept_act())])

    return ProbRule("ack", (Branch(cond, effects),), reads=("nsu_a", "max_qud"))


def rule_aff_ans() -> ProbRule:
    def cond(state, asg, env):
        return (asg["nsu_a"] in ("AffAns", "RepAffAns")
                and _polar_entry(state, asg) is not None)

    def effects(state, asg, env):
        entry = _polar_entry(state, asg)
        return _one([Effect("a_a", assert_act(entry.q)),
                     Effect("new_fec", frozenset(entry.fec))])

    return ProbRule("affAns", (Branch(cond, effects),), reads=("nsu_a", "max_qud"))


def rule_reject() -> ProbRule:
    def cond_positive(state, asg, env):
        entry = _polar_entry(state, asg)
        return (asg["nsu_a"] == "Reject" and entry is not None
                and entry.q.positive)

    def cond_negative(state, asg, env):
        entry = _polar_entry(state, asg)
        return (asg["nsu_a"] == "Reject" and entry is not None
                and not entry.q.positive)

    def effects(state, asg, env):
        entry = _polar_entry(state, asg)
        return _one([Effect("a_a", assert_act(neg(entry.q))),
                     Effect("new_fec", frozenset(entry.fec))])

    # Negative questions keep their polarity: "No." to "Did Paul not leave?"
    # still means Paul did not leave.
    return ProbRule("reject",
                    (Branch(cond_positive, effects), Branch(cond_negative, effects)),
                    reads=("nsu_a", "max_qud"))


def rule_prop_mod(config: Config = DEFAULT_CONFIG) -> ProbRule:
    def cond(state, asg, env):
        entry = _polar_entry(state, asg)
        return (asg["nsu_a"] == "PropMod" and entry is not None
                and entry.q.modality is None
                and modal_lexeme(state.u_a, config) is not None)

    def effects(state, asg, env):
        entry = _polar_entry(state, asg)
        lexeme = modal_lexeme(state.u_a, config)
        return _one([Effect("a_a", assert_act(prop_rel(lexeme, entry.q))),
                     Effect("new_fec", frozenset(entry.fec))])

    return ProbRule("propMod", (Branch(cond, effects),), reads=("nsu_a", "max_qud"))


def rule_check_qu() -> ProbRule:
    def cond(state, asg, env):
        return (asg["nsu_a"] == "CheckQu"
                and _polar_entry(state, asg) is not None)

    def effects(state, asg, env):
        entry = _polar_entry(state, asg)
        return _one([Effect("a_a", ask_act(entry.q)),
                     Effect("new_fec", frozenset(entry.fec))])

    return ProbRule("checkQu", (Branch(cond, effects),), reads=("nsu_a", "max_qud"))


def rule_short_ans() -> ProbRule:
    def cond(state, asg, env):
        entry = _entry(state, asg)
        return (asg["nsu_a"] == "ShortAns" and entry is not None
                and len(entry.q.variables()) == 1)

    def effects(state, asg, env):
        entry = _entry(state, asg)
        x = entry.q.variables()[0]
        answer = state.answer_term or default_answer_term(state.u_a)
        resolved_fec = frozenset(substitute(p, x, answer) for p in entry.fec)
        return _one([
            Effect("a_a", assert_act(substitute(entry.q, x, answer))),
            Effect("new_fec", resolved_fec | state.new_fec),
        ])

    return ProbRule("shortAns", (Branch(cond, effects),), reads=("nsu_a", "max_qud"))


# Invented templates for the when/where variants: the queried property and
# the restrictor predicate added to the new FEC.
_SLUICE_TEMPLATES = {
    "who": ("named", "person"),
    "when": ("time", "temporal"),
    "where": ("place", "location"),
}


def rule_sluice(wh: str) -> ProbRule:
    if wh not in _SLUICE_TEMPLATES:
        raise ValueError("no sluice template for %r" % wh)
    query_name, restrictor = _SLUICE_TEMPLATES[wh]

    def quantify(state, asg):
        entry = _entry(state, asg)
        if entry is None:
            return []
        return [x for x in entry.q.variables()
                if any(x in p.args for p in entry.fec)]

    def cond(state, asg, env):
        return asg["nsu_a"] == "Sluice" and wh in naive_words(state.u_a)

    def effects(state, asg, x):
        entry = _entry(state, asg)
        fresh = state.fresh_variable()
        kept = frozenset(p for p in entry.fec if x in p.args)
        return _one([
            Effect("a_a", ask_act(pred(query_name, x, fresh))),
            Effect("new_fec", kept | {pred(restrictor, x)}),
        ])

    return ProbRule("sluice_%s" % wh, (Branch(cond, effects),),
                    reads=("nsu_a", "max_qud"), quantify=quantify)


def rule_ce_conf() -> ProbRule:
    def candidates(state, asg):
        entry = _entry(state, asg)
        fragment = bare_fragment(state.u_a)
        if entry is None or fragment is None:
            return []
        surface = fragment.lower()
        found = []
        for p in (entry.q, *sorted(entry.fec, key=Predicate.render)):
            if any(t.render().lower() == surface for t in p.args) and p not in found:
                found.append(p)
        return found

    def cond(state, asg, env):
        return asg["nsu_a"] == "CE"

    def effects(state, asg, p):
        return _one([Effect("a_a", ask_act(p)),
                     Effect("new_fec", frozenset())])

    return ProbRule("ce_conf", (Branch(cond, effects),),
                    reads=("nsu_a", "max_qud"), quantify=candidates)


# ---------------------------------------------------------------------------
# Context-update rules


def _act(assignment, var) -> DialogueAct | None:
    act = assignment.get(var)
    return act if isinstance(act, DialogueAct) else None


def rule_qud_increment(ask_prob: float = 1.0, assert_prob: float = 0.75) -> ProbRule:
    def cond_ask(state, asg, env):
        act = _act(asg, "a_b")
        return act is not None and act.kind == "Ask"

    def cond_assert(state, asg, env):
        act = _act(asg, "a_b")
        return act is not None and act.kind == "Assert"

    def _append(state, asg, prob):
        act = _act(asg, "a_b")
        entry = QudEntry(state.u_b, act.content, frozenset())
        return [((Effect("qud", state.qud + (entry,)),), prob)]

    return ProbRule("qud_increment", (
        Branch(cond_ask, lambda s, a, e: _append(s, a, ask_prob)),
        Branch(cond_assert, lambda s, a, e: _append(s, a, assert_prob)),
    ), reads=("a_b",))


def rule_fec_update() -> ProbRule:
    def cond(state, asg, env):
        act = _act(asg, "a_b")
        if act is None or act.kind not in ("Ask", "Assert") or not state.qud:
            return False
        last = state.qud[-1]
        if last.q != act.content:
            return False
        return bool(_shared(state.new_fec, act.content))

    def effects(state, asg, env):
        act = _act(asg, "a_b")
        last = state.qud[-1]
        updated = replace(last, fec=last.fec | _shared(state.new_fec, act.content))
        return _one([Effect("qud", state.qud[:-1] + (updated,))])

    return ProbRule("fec_update", (Branch(cond, effects),), reads=("a_b",))


def _shared(new_fec, content: Predicate) -> frozenset:
    args = set(content.args)
    return frozenset(p for p in new_fec if args & set(p.args))


def _accepted(state: DialogueState, assignment) -> Predicate | None:
    """Content of an Accept act this turn, the system side taking precedence.

    A bare Accept() resolves against the current MaxQUD element.
    """
    for var in ("a_b", "a_a"):
        act = _act(assignment, var)
        if act is None or act.kind != "Accept":
            continue
        if act.content is not None:
            return act.content
        index = state.max_qud.argmax()
        if 0 < index <= state.qud_size:
            return state.qud_entry(index).q
        return None
    return None


def rule_qud_downdate() -> ProbRule:
    def cond(state, asg, env):
        if _accepted(state, asg) is None:
            return False
        return 0 < state.max_qud.argmax() <= state.qud_size

    def effects(state, asg, env):
        index = state.max_qud.argmax()
        compacted = state.qud[:index - 1] + state.qud[index:]
        return _one([Effect("qud", compacted)])

    return ProbRule("qud_downdate", (Branch(cond, effects),), reads=("a_a", "a_b"))


def rule_max_qud_update() -> ProbRule:
    def cond(state, asg, env):
        return True

    def effects(state, asg, env):
        return _one([Effect("max_qud", max_qud_prior(state.qud_size))])

    return ProbRule("max_qud_update", (Branch(cond, effects),))


def rule_facts_increment(modality_probs: dict | None = None,
                         default_prob: float = 0.5) -> ProbRule:
    probs = dict(modality_probs or {})

    def _content(state, asg):
        return _accepted(state, asg)

    def cond_modal(state, asg, env):
        content = _content(state, asg)
        return content is not None and content.modality is not None

    def cond_negative(state, asg, env):
        content = _content(state, asg)
        return content is not None and content.modality is None and not content.positive

    def cond_plain(state, asg, env):
        content = _content(state, asg)
        return content is not None and content.modality is None and content.positive

    def _grounded_fec(state):
        return frozenset(p for p in state.new_fec if not p.variables())

    def effects_modal(state, asg, env):
        content = _content(state, asg)
        inserted = state.facts | {strip_modality(content)} | _grounded_fec(state)
        prob = probs.get(content.modality, default_prob)
        return [((Effect("facts", inserted),), prob)]

    def effects_plain(state, asg, env):
        content = _content(state, asg)
        inserted = state.facts | {content} | _grounded_fec(state)
        return _one([Effect("facts", inserted)])

    return ProbRule("facts_increment", (
        Branch(cond_modal, effects_modal),
        Branch(cond_negative, effects_plain),
        Branch(cond_plain, effects_plain),
    ), reads=("a_a", "a_b"))


# ---------------------------------------------------------------------------
# Rule set assembly


@dataclass(frozen=True)
class RuleSet:
    resolution: tuple[ProbRule, ...]
    update: tuple[ProbRule, ...]

    def rules(self) -> tuple[ProbRule, ...]:
        return self.resolution + self.update

    def without(self, name: str) -> "RuleSet":
        return RuleSet(tuple(r for r in self.resolution if r.name != name),
                       tuple(r for r in self.update if r.name != name))


def _build_rule(spec: dict, config: Config) -> ProbRule:
    kind = spec["kind"]
    if kind == "ack":
        return rule_ack()
    if kind == "aff_ans":
        return rule_aff_ans()
    if kind == "reject":
        return rule_reject()
    if kind == "prop_mod":
        return rule_prop_mod(config)
    if kind == "check_qu":
        return rule_check_qu()
    if kind == "short_ans":
        return rule_short_ans()
    if kind == "sluice":
        return rule_sluice(spec["wh"])
    if kind == "ce_conf":
        return rule_ce_conf()
    if kind == "qud_increment":
        return rule_qud_increment(spec.get("ask_prob", 1.0),
                                  spec.get("assert_prob", config.assert_insert_prob))
    if kind == "fec_update":
        return rule_fec_update()
    if kind == "qud_downdate":
        return rule_qud_downdate()
    if kind == "max_qud_update":
        return rule_max_qud_update()
    if kind == "facts_increment":
        return rule_facts_increment(
            spec.get("modality_probs", config.modality_probs),
            spec.get("modality_default_prob", config.modality_default_prob))
    raise ValueError("unknown rule kind %r" % kind)


def _rename(rule: ProbRule, name: str) -> ProbRule:
    return replace(rule, name=name)


def rules_from_spec(data: dict, config: Config = DEFAULT_CONFIG) -> RuleSet:
    resolution, update = [], []
    for section, bucket in (("resolution", resolution), ("update", update)):
        for spec in data.get(section, []):
            if not spec.get("enabled", True):
                continue
            if spec["kind"] == "sluice" and spec["wh"] != "who" \
                    and not config.sluice_when_where:
                continue
            bucket.append(_rename(_build_rule(spec, config), spec.get("name", spec["kind"])))
    return RuleSet(tuple(resolution), tuple(update))


def load_rules(path: str | Path | None = None,
               config: Config = DEFAULT_CONFIG) -> RuleSet:
    """Load a rule set from a JSON rules file (the bundled one by default)."""
    if path is None:
        text = resources.files("nsukit.data").joinpath("rules.json").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    return rules_from_spec(json.loads(text), config)


def default_ruleset(config: Config = DEFAULT_CONFIG) -> RuleSet:
    return load_rules(None, config)
