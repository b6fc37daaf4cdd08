"""The dialogue state: QUD array, salience distribution, facts and acts."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

from .corpus import NO_NSU
from .semantics import DialogueAct, NO_ACT, Predicate, max_variable_index, variable

PROB_TOLERANCE = 1e-9


class StateError(Exception):
    pass


class Distribution:
    """Categorical distribution over hashable values; probabilities sum to 1."""

    def __init__(self, items: dict):
        if not items:
            raise StateError("distribution support must be non-empty")
        total = 0.0
        for value, prob in items.items():
            if prob < -PROB_TOLERANCE or prob > 1 + PROB_TOLERANCE:
                raise StateError("probability out of range: %r" % prob)
            total += prob
        if abs(total - 1.0) > PROB_TOLERANCE:
            raise StateError("probabilities sum to %r, not 1" % total)
        self._items = dict(items)

    @classmethod
    def point(cls, value) -> "Distribution":
        return cls({value: 1.0})

    def prob(self, value) -> float:
        return self._items.get(value, 0.0)

    def items(self):
        return self._items.items()

    def support(self):
        return list(self._items.keys())

    def argmax(self):
        # deterministic tie break: lowest render order among equal maxima
        ordered = sorted(self._items.items(), key=lambda kv: render_value(kv[0]))
        return max(ordered, key=lambda kv: kv[1])[0]

    def map_probs(self) -> dict:
        return dict(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Distribution):
            return NotImplemented
        if set(self._items) != set(other._items):
            return False
        return all(abs(p - other._items[v]) <= PROB_TOLERANCE
                   for v, p in self._items.items())

    def __repr__(self) -> str:
        return "Distribution(%r)" % (self._items,)


def render_value(value) -> str:
    if hasattr(value, "render"):
        return value.render()
    return str(value)


def render_distribution(dist: Distribution) -> str:
    entries = sorted(dist.items(), key=lambda kv: (-kv[1], render_value(kv[0])))
    return "; ".join("%s=%.4f" % (render_value(v), p) for v, p in entries)


def render_predicate_set(predicates: Iterable[Predicate]) -> str:
    return "{%s}" % ", ".join(sorted(p.render() for p in predicates))


@dataclass(frozen=True)
class QudEntry:
    utt: str
    q: Predicate
    fec: frozenset = frozenset()

    def render(self) -> str:
        return "utt=%r q=%s fec=%s" % (self.utt, self.q.render(),
                                       render_predicate_set(self.fec))


def max_qud_prior(size: int) -> Distribution:
    """Exponential recency prior over QUD indices; index 0 means empty."""
    if size < 0:
        raise StateError("qud size must be nonnegative")
    if size == 0:
        return Distribution.point(0)
    weights = {i: math.exp(i - size) for i in range(1, size + 1)}
    total = sum(weights.values())
    return Distribution({i: w / total for i, w in weights.items()})


@dataclass(frozen=True)
class DialogueState:
    u_a: str = ""
    u_b: str = ""
    a_a: Distribution = field(default_factory=lambda: Distribution.point(NO_ACT))
    a_b: Distribution = field(default_factory=lambda: Distribution.point(NO_ACT))
    nsu_a: Distribution = field(default_factory=lambda: Distribution.point(NO_NSU))
    new_fec: frozenset = frozenset()
    facts: frozenset = frozenset()
    qud: tuple[QudEntry, ...] = ()
    max_qud: Distribution = field(default_factory=lambda: Distribution.point(0))
    # NLU hint for the latest user utterance: the term its content denotes.
    answer_term: object = None

    @property
    def qud_size(self) -> int:
        return len(self.qud)

    def qud_entry(self, index: int) -> QudEntry:
        """1-based access mirroring the qud[i] notation."""
        if not 1 <= index <= len(self.qud):
            raise StateError("qud index %d out of range" % index)
        return self.qud[index - 1]

    def max_qud_index(self) -> int:
        return self.max_qud.argmax()

    def max_qud_entry(self) -> QudEntry | None:
        index = self.max_qud_index()
        return self.qud_entry(index) if index > 0 else None

    def fresh_variable(self):
        """A variable index that collides with nothing already in the state."""
        preds = list(self.new_fec) + list(self.facts)
        for entry in self.qud:
            preds.append(entry.q)
            preds.extend(entry.fec)
        for dist in (self.a_a, self.a_b):
            for act in dist.support():
                if isinstance(act, DialogueAct) and act.content is not None:
                    preds.append(act.content)
        return variable(max_variable_index(preds) + 1)

    def check_invariants(self) -> None:
        for dist in (self.a_a, self.a_b, self.nsu_a, self.max_qud):
            total = sum(p for _, p in dist.items())
            if abs(total - 1.0) > PROB_TOLERANCE:
                raise StateError("distribution does not sum to 1")
        for p in self.facts:
            if p.variables():
                raise StateError("facts contain a variable argument: %s" % p.render())
        for index in self.max_qud.support():
            if not 0 <= index <= len(self.qud):
                raise StateError("max_qud support outside the live qud")


def initial_state() -> DialogueState:
    return DialogueState()


def snapshot(state: DialogueState) -> str:
    """Byte-stable structured text form of the state, for golden-file tests."""
    lines = [
        "u_a: %s" % state.u_a,
        "u_b: %s" % state.u_b,
        "a_a: %s" % render_distribution(state.a_a),
        "a_b: %s" % render_distribution(state.a_b),
        "nsu_a: %s" % render_distribution(state.nsu_a),
        "new_fec: %s" % render_predicate_set(state.new_fec),
        "facts: %s" % render_predicate_set(state.facts),
        "qud: size=%d" % state.qud_size,
    ]
    for i, entry in enumerate(state.qud, start=1):
        lines.append("  [%d] %s" % (i, entry.render()))
    lines.append("max_qud: %s" % render_distribution(state.max_qud))
    return "\n".join(lines) + "\n"
