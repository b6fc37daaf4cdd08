"""Feature extraction for (NSU, antecedent) pairs.

Two schemas are supported: the 9-feature baseline and the 32-feature
extended set.  Extraction is total: pairs lacking syntax annotations get
the UNKNOWN value instead of an error.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable

from .align import lcs_length, local_alignment, longest_common_run
from .config import (CLAUSE_TAGS, Config, DEFAULT_CONFIG, PHRASE_TAGS, PREP_PREFIX)
from .corpus import PAUSE, PUNCT, Sentence, UNCLEAR, WORD

# Unknown feature value; serialized as "?" in CSV exports.
UNKNOWN = None

NONE_TAG = "None"

BASELINE_FEATURES = (
    "nsu_cont", "wh_nsu", "aff_neg", "lex",
    "ant_mood", "wh_ant", "finished",
    "repeat", "parallel",
)

EXTENDED_EXTRA_FEATURES = (
    "pos_1", "pos_2", "pos_3", "pos_4",
    "ending_punct", "has_pause", "has_unclear",
    "ant_sq", "ant_sbarq", "ant_sinv",
    "nsu_first_clause", "nsu_first_phrase", "nsu_first_word",
    "neg_correct",
    "ant_neg", "wh_inter",
    "same_who",
    "repeat_last", "abs_len", "cont_len", "local_all", "lcs", "lcs_pos",
)

EXTENDED_FEATURES = BASELINE_FEATURES + EXTENDED_EXTRA_FEATURES

NUMERIC_FEATURES = frozenset({
    "repeat", "parallel", "repeat_last", "abs_len", "cont_len",
    "local_all", "lcs", "lcs_pos",
})

BASELINE = "baseline"
EXTENDED = "extended"


def schema_features(schema: str) -> tuple[str, ...]:
    if schema == BASELINE:
        return BASELINE_FEATURES
    if schema == EXTENDED:
        return EXTENDED_FEATURES
    raise ValueError("unknown schema %r" % schema)


def feature_kind(name: str) -> str:
    return "numeric" if name in NUMERIC_FEATURES else "categorical"


@dataclass(frozen=True)
class FeatureVector:
    schema: str
    values: dict

    def __post_init__(self):
        expected = schema_features(self.schema)
        if tuple(self.values.keys()) != expected:
            raise ValueError("feature vector does not match %s schema" % self.schema)

    def __getitem__(self, name: str):
        return self.values[name]

    def restrict(self, schema: str) -> "FeatureVector":
        names = schema_features(schema)
        return FeatureVector(schema, {n: self.values[n] for n in names})


def _yes_no(flag: bool) -> str:
    return "yes" if flag else "no"


def _nsu_cont(nsu: Sentence) -> str:
    return "q" if nsu.ending_punct() == "?" else "p"


def _has_wh(sentence: Sentence, config: Config) -> bool:
    wh = set(config.wh_words)
    return any(lemma in wh for lemma in sentence.lemmas())


def _aff_neg(nsu: Sentence, config: Config) -> str:
    positive = set(config.yes_words) | set(config.ack_words)
    negative = set(config.no_words)
    for lemma in nsu.lemmas():
        if lemma in negative:
            return "no"
        if lemma in positive:
            return "yes"
    return "e"


def _lex(nsu: Sentence, config: Config) -> str:
    words = nsu.words()
    if not words:
        return "e"
    first = words[0]
    lemma = first.lemma.lower()
    if lemma in config.modal_adverbs:
        return "p_mod"
    if lemma in config.factual_adjectives:
        return "f_mod"
    if lemma in config.conjunctions or first.pos.startswith("CJ"):
        return "conj"
    if first.pos.startswith(PREP_PREFIX):
        return "mod"
    return "e"


def _ant_mood(ant: Sentence) -> str:
    if ant.ending_punct() == "?":
        return "n_decl"
    if ant.syntax is not None and any(
            tag in ("SQ", "SBARQ") for tag in ant.syntax.constituents):
        return "n_decl"
    return "decl"


def _finished(ant: Sentence, config: Config) -> str:
    if not ant.tokens:
        return "unf"
    last = ant.tokens[-1]
    if last.kind in (PAUSE, UNCLEAR):
        return "unf"
    if last.kind == WORD or last.surface not in (".", "?", "!"):
        return "unf"
    words = ant.words()
    if words and words[-1].lemma.lower() in config.non_closing_words:
        return "unf"
    return "fin"


def _repeat(nsu: Sentence, ant: Sentence, config: Config) -> int:
    common = set(nsu.content_lemmas()) & set(ant.content_lemmas())
    return min(len(common), config.repeat_cap)


def _parallel(nsu: Sentence, ant: Sentence, config: Config) -> int:
    # a lone shared tag is not a sequence; nearly every pair would match
    run = longest_common_run(nsu.pos_tags(), ant.pos_tags())
    if run < 2:
        return 0
    return min(run, config.parallel_cap)


def extract_baseline(nsu: Sentence, ant: Sentence,
                     config: Config = DEFAULT_CONFIG) -> FeatureVector:
    values = {
        "nsu_cont": _nsu_cont(nsu),
        "wh_nsu": _yes_no(_has_wh(nsu, config)),
        "aff_neg": _aff_neg(nsu, config),
        "lex": _lex(nsu, config),
        "ant_mood": _ant_mood(ant),
        "wh_ant": _yes_no(_has_wh(ant, config)),
        "finished": _finished(ant, config),
        "repeat": _repeat(nsu, ant, config),
        "parallel": _parallel(nsu, ant, config),
    }
    return FeatureVector(BASELINE, values)


def _first_tag(sentence: Sentence, level: frozenset[str] | None):
    if sentence.syntax is None:
        return UNKNOWN
    for tag in sentence.syntax.constituents:
        if level is None:
            if tag not in CLAUSE_TAGS and tag not in PHRASE_TAGS:
                return tag
        elif tag in level:
            return tag
    return NONE_TAG


def _neg_correct(nsu: Sentence, config: Config) -> str:
    negative = set(config.no_words)
    tokens = nsu.tokens
    for i, tok in enumerate(tokens):
        if tok.kind == WORD and tok.lemma.lower() in negative:
            rest = tokens[i + 1:]
            for j, nxt in enumerate(rest):
                if nxt.kind == PUNCT and nxt.surface == ",":
                    if any(t.kind == WORD for t in rest[j + 1:]):
                        return "yes"
                    break
                if nxt.kind == WORD:
                    break
            break
    return "no"


def _ant_neg(ant: Sentence):
    if ant.syntax is None:
        return UNKNOWN
    return _yes_no(any(rel == "neg" for rel, _, _ in ant.syntax.deps))


def _wh_inter(ant: Sentence, config: Config):
    if ant.syntax is None:
        return UNKNOWN
    wh = set(config.wh_words)
    words = ant.words()

    def lemma_at(index: int) -> str:
        # Dependency indices are 1-based over word tokens.
        if 1 <= index <= len(words):
            return words[index - 1].lemma.lower()
        return ""

    heads_with_subj = {head for rel, head, _ in ant.syntax.deps if rel == "nsubj"}
    for rel, head, dep in ant.syntax.deps:
        if rel == "dobj" and lemma_at(dep) in wh and head in heads_with_subj:
            return "yes"
    return "no"


def _same_who(nsu: Sentence, ant: Sentence) -> str:
    if nsu.speaker == "?" or ant.speaker == "?":
        return "unk"
    return "same" if nsu.speaker == ant.speaker else "diff"


def _repeat_last(nsu: Sentence, ant: Sentence, config: Config) -> int:
    tail = ant.lemmas()[-config.repeat_last_window:]
    return len(set(nsu.lemmas()) & set(tail))


def extract_extended(nsu: Sentence, ant: Sentence,
                     config: Config = DEFAULT_CONFIG) -> FeatureVector:
    base = extract_baseline(nsu, ant, config)
    tags = nsu.pos_tags()
    values = dict(base.values)
    for i in range(4):
        values["pos_%d" % (i + 1)] = tags[i] if i < len(tags) else NONE_TAG
    ending = ant.ending_punct()
    values["ending_punct"] = ending if ending in (".", "?", "!") else "e"
    values["has_pause"] = _yes_no(ant.has_pause())
    values["has_unclear"] = _yes_no(ant.has_unclear())
    for tag in ("sq", "sbarq", "sinv"):
        if ant.syntax is None:
            values["ant_%s" % tag] = UNKNOWN
        else:
            values["ant_%s" % tag] = _yes_no(tag.upper() in ant.syntax.constituents)
    values["nsu_first_clause"] = _first_tag(nsu, CLAUSE_TAGS)
    values["nsu_first_phrase"] = _first_tag(nsu, PHRASE_TAGS)
    values["nsu_first_word"] = _first_tag(nsu, None)
    values["neg_correct"] = _neg_correct(nsu, config)
    values["ant_neg"] = _ant_neg(ant)
    values["wh_inter"] = _wh_inter(ant, config)
    values["same_who"] = _same_who(nsu, ant)
    values["repeat_last"] = _repeat_last(nsu, ant, config)
    values["abs_len"] = nsu.word_count()
    values["cont_len"] = len(nsu.content_lemmas())
    values["local_all"] = local_alignment(
        nsu.text().lower(), ant.text().lower(),
        config.align_match, config.align_mismatch, config.align_gap)
    values["lcs"] = lcs_length(nsu.lemmas(), ant.lemmas())
    values["lcs_pos"] = lcs_length(nsu.pos_tags(), ant.pos_tags())
    return FeatureVector(EXTENDED, values)


def extract(nsu: Sentence, ant: Sentence, schema: str,
            config: Config = DEFAULT_CONFIG) -> FeatureVector:
    if schema == BASELINE:
        return extract_baseline(nsu, ant, config)
    if schema == EXTENDED:
        return extract_extended(nsu, ant, config)
    raise ValueError("unknown schema %r" % schema)


def matrix_to_csv(vectors: Iterable[FeatureVector], labels: Iterable[str]) -> str:
    """Export a feature matrix as CSV; unknown values become '?'."""
    vectors = list(vectors)
    labels = list(labels)
    if len(vectors) != len(labels):
        raise ValueError("feature/label count mismatch")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if vectors:
        names = schema_features(vectors[0].schema)
        writer.writerow(list(names) + ["label"])
        for vec, label in zip(vectors, labels):
            row = ["?" if vec.values[n] is UNKNOWN else vec.values[n] for n in names]
            writer.writerow(row + [label])
    return buf.getvalue()
