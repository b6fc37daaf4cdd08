"""First-order semantic terms, predicates and dialogue acts.

Predicates carry a polarity and an optional propositional-relation
modality; both render in the prefix style used throughout the toolkit:
``Neg(name)(args)`` and ``PropRel_lexeme(name)(args)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace

VARIABLE_KIND = "X"


class SemanticsError(Exception):
    pass


class AlreadyModalizedError(SemanticsError):
    pass


@dataclass(frozen=True, order=True)
class Term:
    kind: str       # "individual" | "variable" | "constant" | "speaker"
    label: str      # kind label (IND, C, T, ...), constant text, or user/system
    index: int = 0

    def render(self) -> str:
        if self.kind == "individual":
            return "%s_%d" % (self.label, self.index)
        if self.kind == "variable":
            return "X_%d" % self.index
        return self.label

    def is_variable(self) -> bool:
        return self.kind == "variable"


def individual(label: str, index: int) -> Term:
    if label == VARIABLE_KIND:
        raise SemanticsError("X is reserved for variables")
    return Term("individual", label, index)


def variable(index: int) -> Term:
    return Term("variable", VARIABLE_KIND, index)


def constant(text: str) -> Term:
    return Term("constant", text)


def speaker_ref(who: str) -> Term:
    if who not in ("user", "system"):
        raise SemanticsError("speaker ref must be user or system")
    return Term("speaker", who)


_TERM_RE = re.compile(r"^([A-Z][A-Z0-9]*)_(\d+)$")


def parse_term(text: str) -> Term:
    text = text.strip()
    if not text:
        raise SemanticsError("empty term")
    match = _TERM_RE.match(text)
    if match:
        label, index = match.group(1), int(match.group(2))
        if label == VARIABLE_KIND:
            return variable(index)
        return individual(label, index)
    if text in ("user", "system"):
        return speaker_ref(text)
    return constant(text)


@dataclass(frozen=True)
class Predicate:
    name: str
    args: tuple[Term, ...] = ()
    positive: bool = True
    modality: str | None = None

    def __post_init__(self):
        if not self.name:
            raise SemanticsError("predicate name must be non-empty")

    def render(self) -> str:
        args = ",".join(t.render() for t in self.args)
        core = self.name if self.positive else "Neg(%s)" % self.name
        if self.modality is not None:
            return "PropRel_%s(%s)(%s)" % (self.modality, core, args)
        if not self.positive:
            return "%s(%s)" % (core, args)
        return "%s(%s)" % (self.name, args)

    def variables(self) -> tuple[Term, ...]:
        seen = []
        for term in self.args:
            if term.is_variable() and term not in seen:
                seen.append(term)
        return tuple(seen)

    def is_polar(self) -> bool:
        """A polar (yes/no) question or proposition has no variable arguments."""
        return not self.variables()


def pred(name: str, *args: Term, positive: bool = True,
         modality: str | None = None) -> Predicate:
    return Predicate(name, tuple(args), positive, modality)


def neg(p: Predicate) -> Predicate:
    """Polarity-sensitive negation: negates positive p, fixes negative p."""
    if not p.positive:
        return p
    return replace(p, positive=False)


def prop_rel(lexeme: str, p: Predicate) -> Predicate:
    """Wrap p in the modality carried by a propositional-modifier lexeme."""
    if p.modality is not None:
        raise AlreadyModalizedError("predicate already carries modality %r" % p.modality)
    return replace(p, modality=lexeme)


def strip_modality(p: Predicate) -> Predicate:
    return replace(p, modality=None)


def substitute(p: Predicate, var: Term, term: Term) -> Predicate:
    """Replace every occurrence of a variable in the argument list."""
    if not var.is_variable():
        raise SemanticsError("substitution target must be a variable")
    return replace(p, args=tuple(term if a == var else a for a in p.args))


def max_variable_index(predicates) -> int:
    best = 0
    for p in predicates:
        for term in p.args:
            if term.is_variable() and term.index > best:
                best = term.index
    return best


_PRED_RE = re.compile(
    r"^(?:PropRel_(?P<mod>[A-Za-z][\w-]*)\()?"
    r"(?:Neg\((?P<neg>[A-Za-z]\w*)\)|(?P<name>[A-Za-z]\w*))"
    r"(?(mod)\))"
    r"\((?P<args>[^()]*)\)$"
)


def parse_predicate(text: str) -> Predicate:
    """Parse the rendered predicate syntax back into a Predicate."""
    text = text.strip()
    match = _PRED_RE.match(text)
    if not match:
        raise SemanticsError("cannot parse predicate %r" % text)
    name = match.group("neg") or match.group("name")
    positive = match.group("neg") is None
    args_text = match.group("args").strip()
    args = tuple(parse_term(a) for a in args_text.split(",")) if args_text else ()
    return Predicate(name, args, positive, match.group("mod"))


ACT_KINDS = ("Assert", "Ask", "Accept", "Ground", "None")


@dataclass(frozen=True)
class DialogueAct:
    kind: str
    content: Predicate | None = None

    def __post_init__(self):
        if self.kind not in ACT_KINDS:
            raise SemanticsError("unknown act kind %r" % self.kind)
        if self.kind in ("Assert", "Ask") and self.content is None:
            raise SemanticsError("%s requires a content predicate" % self.kind)
        if self.kind == "None" and self.content is not None:
            raise SemanticsError("None act carries no content")

    def render(self) -> str:
        if self.kind == "None":
            return "None"
        if self.content is None:
            return "%s()" % self.kind
        return "%s(%s)" % (self.kind, self.content.render())


NO_ACT = DialogueAct("None")


def assert_act(p: Predicate) -> DialogueAct:
    return DialogueAct("Assert", p)


def ask_act(p: Predicate) -> DialogueAct:
    return DialogueAct("Ask", p)


def accept_act(p: Predicate | None = None) -> DialogueAct:
    return DialogueAct("Accept", p)


def ground_act(p: Predicate | None = None) -> DialogueAct:
    return DialogueAct("Ground", p)


def parse_act(text: str) -> DialogueAct:
    text = text.strip()
    if text == "None":
        return NO_ACT
    for kind in ("Assert", "Ask", "Accept", "Ground"):
        if text.startswith(kind + "(") and text.endswith(")"):
            inner = text[len(kind) + 1:-1].strip()
            content = parse_predicate(inner) if inner else None
            return DialogueAct(kind, content)
    raise SemanticsError("cannot parse dialogue act %r" % text)
