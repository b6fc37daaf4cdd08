"""Heuristic NSU detection and antecedent selection over raw transcripts."""

from __future__ import annotations

from typing import Iterator

from .config import Config, DEFAULT_CONFIG, VERB_PREFIX, NOUN_PREFIX
from .corpus import Sentence, Transcript, WORD


def detect_nsu(sentence: Sentence, config: Config = DEFAULT_CONFIG) -> bool:
    """Decide whether a sentence looks like a non-sentential utterance.

    A candidate must be short but not degenerate, must carry real words,
    must not be a greeting and must not contain a verb in any form.
    """
    if sentence.word_count() >= config.detect_max_words:
        return False
    if sentence.char_count() < config.detect_min_chars:
        return False
    if not any(t.kind == WORD for t in sentence.tokens):
        return False
    if config.is_greeting_in(" ".join(w.lemma for w in sentence.words())):
        return False
    if any(t.pos.startswith(VERB_PREFIX) for t in sentence.words()):
        return False
    return True


def _clausal_form(sentence: Sentence) -> bool:
    # Cheap proxy for "a verb phrase and a noun phrase".
    tags = sentence.pos_tags()
    return (any(t.startswith(VERB_PREFIX) for t in tags)
            and any(t.startswith(NOUN_PREFIX) for t in tags))


def select_antecedent(sentence: Sentence, transcript: Transcript,
                      config: Config = DEFAULT_CONFIG) -> Sentence | None:
    """Pick the preceding utterance as antecedent when it is a safe bet.

    Requires a two-party transcript, an antecedent longer than the NSU and
    an antecedent with a complete clausal form.
    """
    if transcript.party_count != "two":
        return None
    prev = transcript.preceding(sentence.id)
    if prev is None:
        return None
    if prev.word_count() <= sentence.word_count():
        return None
    if not _clausal_form(prev):
        return None
    return prev


def extract_candidates(transcript: Transcript,
                       config: Config = DEFAULT_CONFIG) -> Iterator[tuple[Sentence, Sentence]]:
    """Yield (NSU, antecedent) pairs found by the detection heuristics."""
    for sentence in transcript.sentences:
        if not detect_nsu(sentence, config):
            continue
        antecedent = select_antecedent(sentence, transcript, config)
        if antecedent is not None:
            yield sentence, antecedent
