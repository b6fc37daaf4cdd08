"""Dialogue sessions: the per-turn update cycle and scripted replays.

A turn comes in two phases.  A user utterance is classified (unless the
script carries a gold class), the resolution rules derive its dialogue
act, a minimal action selection lets the system react (assertions get
accepted), and the context-update rules run.  System turns carry their
act annotation directly and only exercise the update rules.
"""

from __future__ import annotations

import itertools
import uuid
from dataclasses import dataclass, replace
from pathlib import Path

from .config import Config, DEFAULT_CONFIG
from .corpus import NO_NSU, NSU_CLASSES
from .detect import detect_nsu
from .engine import RuleTrace, apply_rules, fire_stage
from .features import extract
from .nlu import naive_tokenize, naive_words
from .ruleset import RuleSet, default_ruleset
from .semantics import (DialogueAct, NO_ACT, Term, accept_act, ground_act,
                        parse_act, parse_predicate, parse_term)
from .state import DialogueState, Distribution, initial_state, snapshot
from .tree import DecisionTree, predict


@dataclass(frozen=True)
class TurnRecord:
    speaker: str                      # "user" | "system"
    text: str
    traces: tuple[RuleTrace, ...]
    snapshot: str
    warning: str | None = None


def lexical_classify(text: str, config: Config = DEFAULT_CONFIG) -> str:
    """Word-list fallback used when no trained classifier is available."""
    words = naive_words(text)
    is_question = text.strip().endswith("?")
    if is_question:
        if any(w in config.wh_words for w in words):
            return "Sluice"
        if any(w in config.ack_words for w in words):
            return "CheckQu"
        return "CE"
    for word in words:
        if word in config.no_words:
            return "Reject"
        if word in config.yes_words:
            return "AffAns"
        if word in config.ack_words:
            return "Ack"
    if words and words[0] in config.modal_adverbs:
        return "PropMod"
    if words and words[0] in config.factual_adjectives:
        return "FactMod"
    return "ShortAns"


class Session:
    """One dialogue; owns its state, all mutation is serialized by the caller."""

    def __init__(self, ruleset: RuleSet | None = None,
                 config: Config = DEFAULT_CONFIG,
                 classifier: DecisionTree | None = None,
                 schema: str = "extended",
                 session_id: str | None = None):
        self.id = session_id or uuid.uuid4().hex[:12]
        self.config = config
        self.ruleset = ruleset or default_ruleset(config)
        self.classifier = classifier
        self.schema = schema
        self.state = initial_state()
        self.turn_log: list[TurnRecord] = []
        self._sid = itertools.count(1)

    # -- classification -----------------------------------------------------

    def _antecedent_text(self) -> str:
        entry = self.state.max_qud_entry()
        if entry is not None:
            return entry.utt
        return self.state.u_b

    def classify_pair(self, nsu_text: str, antecedent_text: str) -> Distribution:
        nsu = naive_tokenize(nsu_text, next(self._sid), "A")
        ant = naive_tokenize(antecedent_text or nsu_text, next(self._sid), "B")
        if self.classifier is not None:
            vector = extract(nsu, ant, self.schema, self.config)
            return Distribution(predict(self.classifier, vector.values))
        return Distribution.point(lexical_classify(nsu_text, self.config))

    def _nsu_distribution(self, text: str) -> Distribution:
        sentence = naive_tokenize(text, next(self._sid), "A")
        if not detect_nsu(sentence, self.config):
            return Distribution.point(NO_NSU)
        return self.classify_pair(text, self._antecedent_text())

    # -- turn cycle ----------------------------------------------------------

    def system_turn(self, text: str, act: DialogueAct = NO_ACT,
                    fec: frozenset = frozenset()) -> DialogueState:
        state = replace(self.state, u_b=text,
                        a_b=Distribution.point(act),
                        a_a=Distribution.point(NO_ACT),
                        nsu_a=Distribution.point(NO_NSU),
                        new_fec=frozenset(fec),
                        answer_term=None)
        traces: list[RuleTrace] = []
        state = apply_rules(state, self.ruleset.rules(), self.config.support_cap, traces)
        self.state = state
        self.turn_log.append(TurnRecord("system", text, tuple(traces), snapshot(state)))
        return state

    def user_turn(self, text: str, nsu_class: str | None = None,
                  act: DialogueAct | None = None,
                  answer: Term | None = None,
                  fec: frozenset = frozenset()) -> DialogueState:
        warning = None
        if nsu_class is not None:
            if nsu_class not in NSU_CLASSES + (NO_NSU,):
                raise ValueError("unknown NSU class %r" % nsu_class)
            nsu_dist = Distribution.point(nsu_class)
        elif act is not None:
            nsu_dist = Distribution.point(NO_NSU)
        else:
            nsu_dist = self._nsu_distribution(text)
            if nsu_dist.prob(NO_NSU) == 1.0:
                warning = "utterance is not an NSU and carries no semantics; act is None"

        state = replace(self.state, u_a=text,
                        a_a=Distribution.point(act if act is not None else NO_ACT),
                        a_b=Distribution.point(NO_ACT),
                        nsu_a=nsu_dist,
                        new_fec=frozenset(fec),
                        answer_term=answer)
        traces: list[RuleTrace] = []
        state = fire_stage(state, self.ruleset.resolution, self.config.support_cap, traces)
        state = self._select_system_action(state)
        state = apply_rules(state, self.ruleset.update, self.config.support_cap, traces)
        self.state = state
        self.turn_log.append(TurnRecord("user", text, tuple(traces), snapshot(state), warning))
        return state

    def _select_system_action(self, state: DialogueState) -> DialogueState:
        """Minimal reaction policy: accept assertions, ground questions."""
        top = state.a_a.argmax()
        if top.kind == "Assert":
            reaction = accept_act(top.content)
        elif top.kind == "Ask":
            reaction = ground_act()
        else:
            return state
        return replace(state, a_b=Distribution.point(reaction))


# ---------------------------------------------------------------------------
# Scripted transcripts


@dataclass(frozen=True)
class ScriptLine:
    speaker: str                     # "M" | "U"
    text: str
    act: DialogueAct | None = None
    nsu: str | None = None
    answer: Term | None = None
    fec: frozenset = frozenset()


class ScriptError(Exception):
    pass


def _parse_fec(text: str) -> frozenset:
    if not (text.startswith("{") and text.endswith("}")):
        raise ScriptError("fec annotation must be {p1;p2;...}: %r" % text)
    inner = text[1:-1].strip()
    if not inner:
        return frozenset()
    return frozenset(parse_predicate(p) for p in inner.split(";"))


def parse_script(text: str) -> list[ScriptLine]:
    lines = []
    for raw_no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if not stripped.startswith(("M:", "U:")):
            raise ScriptError("line %d: expected 'M:' or 'U:' prefix" % raw_no)
        speaker = stripped[0]
        rest = stripped[2:].strip()
        utterance, _, annotation = rest.partition("||")
        fields: dict = {"speaker": speaker, "text": utterance.strip()}
        for item in annotation.split():
            key, eq, value = item.partition("=")
            if not eq:
                raise ScriptError("line %d: bad annotation %r" % (raw_no, item))
            if key == "act":
                fields["act"] = parse_act(value)
            elif key == "nsu":
                fields["nsu"] = value
            elif key == "answer":
                fields["answer"] = parse_term(value)
            elif key == "fec":
                fields["fec"] = _parse_fec(value)
            else:
                raise ScriptError("line %d: unknown annotation key %r" % (raw_no, key))
        lines.append(ScriptLine(**fields))
    return lines


def load_script(path: str | Path) -> list[ScriptLine]:
    return parse_script(Path(path).read_text("utf-8"))


def replay(session: Session, script: list[ScriptLine]) -> list[str]:
    """Run a scripted transcript, returning one state snapshot per line."""
    snapshots = []
    for line in script:
        if line.speaker == "M":
            state = session.system_turn(line.text, line.act or NO_ACT, line.fec)
        else:
            state = session.user_turn(line.text, nsu_class=line.nsu,
                                      act=line.act, answer=line.answer,
                                      fec=line.fec)
        snapshots.append(snapshot(state))
    return snapshots
