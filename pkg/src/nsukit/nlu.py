"""Shallow text utilities standing in for a real NLU front end.

Live sessions receive raw text without gold tokens, so these helpers
produce untagged Sentence values good enough for the classifier and for
the lexical conditions of the resolution rules.
"""

from __future__ import annotations

import re

from .config import Config, DEFAULT_CONFIG
from .corpus import Sentence, Token, PUNCT, WORD
from .semantics import Term, constant

_TOKEN_RE = re.compile(r"[\w'.:-]+|[^\w\s]")


def naive_tokenize(text: str, sid: int = 1, speaker: str = "?") -> Sentence:
    tokens = []
    for piece in _TOKEN_RE.findall(text):
        if re.fullmatch(r"[^\w\s]+", piece):
            tokens.append(Token(piece, piece, "PUN", PUNCT))
        else:
            clean = piece.rstrip(".") if piece.endswith(".") and len(piece) > 1 else piece
            tokens.append(Token(piece, clean.lower(), "UNC", WORD))
    if not tokens:
        tokens.append(Token("...", "...", "PUN", PUNCT))
    return Sentence(sid, speaker, tuple(tokens))


def naive_words(text: str) -> list[str]:
    return [t.lemma for t in naive_tokenize(text).tokens if t.kind == WORD]


def default_answer_term(text: str) -> Term:
    """Constant built from the utterance's words; NLU annotations override it."""
    words = [t.surface.rstrip(".") for t in naive_tokenize(text).tokens
             if t.kind == WORD]
    words = [w for w in words if w]
    return constant("_".join(words) if words else text.strip())


def modal_lexeme(text: str, config: Config = DEFAULT_CONFIG) -> str | None:
    for word in naive_words(text):
        if word in config.modal_adverbs:
            return word
    return None


def bare_fragment(text: str) -> str | None:
    """The x of an utterance shaped like "x?"; None when it is not one."""
    stripped = text.strip()
    if not stripped.endswith("?"):
        return None
    fragment = stripped[:-1].strip().rstrip(".!,")
    if not fragment or "?" in fragment:
        return None
    return fragment
