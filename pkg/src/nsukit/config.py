"""Toolkit configuration: word lists, thresholds and rule parameters.

Everything here can be overridden from a TOML file (see `load_config`),
so the lexical trigger lists are data, not code.
"""

from dataclasses import dataclass, field, fields, replace
from pathlib import Path
import sys

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib


# C5-style tag prefixes.
VERB_PREFIX = "V"
NOUN_PREFIX = "N"
PUNCT_PREFIX = "PU"
PREP_PREFIX = "PR"
CONTENT_PREFIXES = ("N", "V", "AJ", "AV")

# Constituent tag levels used by the phrase-level features.
CLAUSE_TAGS = frozenset({"S", "SQ", "SBAR", "SBARQ", "SINV"})
PHRASE_TAGS = frozenset(
    {"NP", "VP", "PP", "ADJP", "ADVP", "WHNP", "WHADVP", "WHPP", "CONJP", "INTJ", "PRT", "QP"}
)


def _words(*items: str) -> tuple[str, ...]:
    return tuple(items)


@dataclass(frozen=True)
class Config:
    # NSU detection heuristics.
    detect_max_words: int = 12
    detect_min_chars: int = 2
    greetings: tuple[str, ...] = _words(
        "hi", "hello", "hey", "goodbye", "bye",
        "good night", "good morning", "good evening",
    )

    # Lexical trigger lists.
    yes_words: tuple[str, ...] = _words("yes", "yep", "aye")
    no_words: tuple[str, ...] = _words("no", "not", "nay", "nope")
    ack_words: tuple[str, ...] = _words("right", "aha", "mhm", "yeah", "okay", "ok")
    modal_adverbs: tuple[str, ...] = _words(
        "absolutely", "clearly", "probably", "possibly", "certainly",
        "maybe", "perhaps", "definitely", "occasionally", "unlikely",
    )
    factual_adjectives: tuple[str, ...] = _words(
        "good", "amazing", "terrible", "brilliant", "wonderful",
        "great", "excellent", "awful", "lovely", "fantastic",
    )
    wh_words: tuple[str, ...] = _words("what", "which", "who", "where", "when", "how")
    conjunctions: tuple[str, ...] = _words("and", "or", "but", "nor", "so", "yet")
    non_closing_words: tuple[str, ...] = _words(
        "and", "or", "but", "the", "a", "an", "to", "of", "with", "because",
    )

    # Similarity feature parameters.
    repeat_cap: int = 3
    parallel_cap: int = 3
    repeat_last_window: int = 3
    align_match: int = 2
    align_mismatch: int = -1
    align_gap: int = -1

    # Rule engine parameters.
    assert_insert_prob: float = 0.75
    modality_probs: dict = field(default_factory=lambda: {
        "probably": 0.75,
        "unlikely": 0.25,
        "possibly": 0.5,
        "maybe": 0.5,
        "perhaps": 0.5,
        "occasionally": 0.5,
        "clearly": 0.9,
        "certainly": 0.9,
        "absolutely": 0.95,
        "definitely": 0.95,
    })
    modality_default_prob: float = 0.5
    support_cap: int = 512
    sluice_when_where: bool = True

    # Active-learning split ratios (train/dev/test).
    al_train_ratio: float = 0.5
    al_dev_ratio: float = 0.25

    def is_greeting_in(self, text: str) -> bool:
        padded = " %s " % " ".join(text.lower().split())
        return any(" %s " % g in padded for g in self.greetings)


DEFAULT_CONFIG = Config()

_LIST_FIELDS = {
    "greetings", "yes_words", "no_words", "ack_words", "modal_adverbs",
    "factual_adjectives", "wh_words", "conjunctions", "non_closing_words",
}


def load_config(path: str | Path) -> Config:
    """Read a TOML file and overlay it on the defaults.

    Unknown keys are rejected so typos in a config file do not silently
    fall back to defaults.
    """
    with open(path, "rb") as handle:
        raw = tomllib.load(handle)
    known = {f.name for f in fields(Config)}
    overrides = {}
    for key, value in raw.items():
        if key not in known:
            raise KeyError("unknown config key: %r" % key)
        if key in _LIST_FIELDS:
            value = tuple(str(v) for v in value)
        overrides[key] = value
    return replace(DEFAULT_CONFIG, **overrides)
