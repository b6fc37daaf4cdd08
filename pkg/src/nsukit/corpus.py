"""Dialogue corpus model: transcripts, tokens and labeled NSU records.

The transcript file format is line oriented UTF-8:

    #file <id> <two|multi>
    <sid> TAB <speaker> TAB token [token ...] [TAB SYN: tag ... dep(rel,h,d) ...]

where a token is ``surface|lemma|pos`` or one of the markers ``<pause>``
and ``<unclear>``.  NSU records live in a CSV with columns
``file_id,sentence_id,antecedent_id,label``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .config import PUNCT_PREFIX, CONTENT_PREFIXES

# The taxonomy: fifteen NSU classes plus the NoNsu sentinel used by the
# dialogue state for utterances that are not fragments at all.
NSU_CLASSES = (
    "Ack", "RepAck", "CE", "CheckQu", "Sluice", "Filler", "ShortAns",
    "AffAns", "Reject", "RepAffAns", "HelpReject", "PropMod", "FactMod",
    "BareModPh", "Conj",
)
NO_NSU = "NoNsu"
ALL_CLASSES = NSU_CLASSES + (NO_NSU,)

WORD = "word"
PAUSE = "pause"
UNCLEAR = "unclear"
PUNCT = "punctuation"


class CorpusError(Exception):
    pass


class MalformedFormatError(CorpusError):
    def __init__(self, message: str, line_no: int):
        super().__init__("line %d: %s" % (line_no, message))
        self.line_no = line_no


class DuplicateIdError(CorpusError):
    pass


class UnresolvableRecordError(CorpusError):
    pass


@dataclass(frozen=True)
class Token:
    surface: str
    lemma: str
    pos: str
    kind: str = ""  # derived from surface/pos when left empty

    def __post_init__(self):
        if not self.kind:
            if self.surface == "<pause>":
                derived = PAUSE
            elif self.surface == "<unclear>":
                derived = UNCLEAR
            elif self.pos.startswith(PUNCT_PREFIX):
                derived = PUNCT
            else:
                derived = WORD
            object.__setattr__(self, "kind", derived)

    def is_word(self) -> bool:
        return self.kind == WORD

    def is_content(self) -> bool:
        return self.kind == WORD and self.pos.startswith(CONTENT_PREFIXES)


PAUSE_TOKEN = Token("<pause>", "<pause>", "", PAUSE)
UNCLEAR_TOKEN = Token("<unclear>", "<unclear>", "", UNCLEAR)


@dataclass(frozen=True)
class Syntax:
    """Pre-computed annotation block: constituent tags and dependency triples."""

    constituents: tuple[str, ...] = ()
    deps: tuple[tuple[str, int, int], ...] = ()


@dataclass(frozen=True)
class Sentence:
    id: int
    speaker: str
    tokens: tuple[Token, ...]
    syntax: Syntax | None = None

    def words(self) -> list[Token]:
        return [t for t in self.tokens if t.kind == WORD]

    def word_count(self) -> int:
        return sum(1 for t in self.tokens if t.kind == WORD)

    def char_count(self) -> int:
        return sum(len(t.surface) for t in self.tokens if t.kind == WORD)

    def text(self) -> str:
        parts: list[str] = []
        for tok in self.tokens:
            if tok.kind == PUNCT and parts:
                parts[-1] += tok.surface
            else:
                parts.append(tok.surface)
        return " ".join(parts)

    def lemmas(self) -> list[str]:
        return [t.lemma.lower() for t in self.words()]

    def pos_tags(self) -> list[str]:
        return [t.pos for t in self.words()]

    def content_lemmas(self) -> list[str]:
        return [t.lemma.lower() for t in self.tokens if t.is_content()]

    def has_pause(self) -> bool:
        return any(t.kind == PAUSE for t in self.tokens)

    def has_unclear(self) -> bool:
        return any(t.kind == UNCLEAR for t in self.tokens)

    def ending_punct(self) -> str | None:
        for tok in reversed(self.tokens):
            if tok.kind == PUNCT:
                return tok.surface
            if tok.kind == WORD:
                return None
        return None


@dataclass(frozen=True)
class Transcript:
    file_id: str
    party_count: str  # "two" | "multi"
    sentences: tuple[Sentence, ...]
    _index: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self._index.update({s.id: i for i, s in enumerate(self.sentences)})

    def sentence(self, sid: int) -> Sentence:
        try:
            return self.sentences[self._index[sid]]
        except KeyError:
            raise UnresolvableRecordError(
                "sentence %d not in transcript %s" % (sid, self.file_id)) from None

    def preceding(self, sid: int) -> Sentence | None:
        pos = self._index.get(sid)
        if pos is None:
            raise UnresolvableRecordError(
                "sentence %d not in transcript %s" % (sid, self.file_id))
        return self.sentences[pos - 1] if pos > 0 else None


@dataclass(frozen=True)
class NsuRecord:
    file_id: str
    sentence_id: int
    antecedent_id: int
    label: str

    def __post_init__(self):
        if self.label not in NSU_CLASSES:
            raise CorpusError("invalid NSU class label: %r" % self.label)


def _parse_token(text: str, line_no: int) -> Token:
    if text == "<pause>":
        return PAUSE_TOKEN
    if text == "<unclear>":
        return UNCLEAR_TOKEN
    parts = text.split("|")
    if len(parts) != 3:
        raise MalformedFormatError("bad token %r" % text, line_no)
    surface, lemma, pos = parts
    if not surface:
        raise MalformedFormatError("empty surface in token %r" % text, line_no)
    kind = PUNCT if pos.startswith(PUNCT_PREFIX) else WORD
    if kind == WORD and not pos:
        raise MalformedFormatError("missing pos in token %r" % text, line_no)
    return Token(surface, lemma, pos, kind)


def _parse_syntax(block: str, line_no: int) -> Syntax:
    constituents: list[str] = []
    deps: list[tuple[str, int, int]] = []
    for item in block.split():
        if item.startswith("dep(") and item.endswith(")"):
            inner = item[4:-1].split(",")
            if len(inner) != 3:
                raise MalformedFormatError("bad dependency %r" % item, line_no)
            try:
                deps.append((inner[0], int(inner[1]), int(inner[2])))
            except ValueError:
                raise MalformedFormatError("bad dependency %r" % item, line_no) from None
        else:
            constituents.append(item)
    return Syntax(tuple(constituents), tuple(deps))


def load_transcript(source: bytes | str | io.IOBase) -> Transcript:
    """Parse a transcript stream, rejecting malformed lines and duplicate ids."""
    if isinstance(source, bytes):
        text = source.decode("utf-8")
    elif isinstance(source, str):
        text = source
    else:
        data = source.read()
        text = data.decode("utf-8") if isinstance(data, bytes) else data

    lines = text.splitlines()
    if not lines or not lines[0].startswith("#file "):
        raise MalformedFormatError("missing '#file' header", 1)
    header = lines[0].split()
    if len(header) != 3 or header[2] not in ("two", "multi"):
        raise MalformedFormatError("bad header %r" % lines[0], 1)
    file_id, party_count = header[1], header[2]

    sentences: list[Sentence] = []
    seen: set[int] = set()
    last_id = 0
    for line_no, line in enumerate(lines[1:], start=2):
        if not line.strip() or line.startswith("#"):
            continue
        fields_ = line.split("\t")
        if len(fields_) < 3:
            raise MalformedFormatError("expected id, speaker and tokens", line_no)
        try:
            sid = int(fields_[0])
        except ValueError:
            raise MalformedFormatError("bad sentence id %r" % fields_[0], line_no) from None
        if sid in seen:
            raise DuplicateIdError(
                "duplicate sentence id %d in %s (line %d)" % (sid, file_id, line_no))
        if sid <= last_id:
            raise MalformedFormatError("sentence ids must be strictly increasing", line_no)
        speaker = fields_[1]
        if not speaker:
            raise MalformedFormatError("empty speaker", line_no)
        tokens = tuple(_parse_token(t, line_no) for t in fields_[2].split())
        if not tokens:
            raise MalformedFormatError("empty token list", line_no)
        syntax = None
        if len(fields_) > 3:
            block = fields_[3]
            if not block.startswith("SYN:"):
                raise MalformedFormatError("unexpected trailing field %r" % block, line_no)
            syntax = _parse_syntax(block[4:], line_no)
        seen.add(sid)
        last_id = sid
        sentences.append(Sentence(sid, speaker, tokens, syntax))
    return Transcript(file_id, party_count, tuple(sentences))


def _serialize_token(tok: Token) -> str:
    if tok.kind in (PAUSE, UNCLEAR):
        return tok.surface
    return "%s|%s|%s" % (tok.surface, tok.lemma, tok.pos)


def serialize_transcript(transcript: Transcript) -> str:
    """Canonical text form; `load_transcript` round-trips through it byte for byte."""
    out = ["#file %s %s" % (transcript.file_id, transcript.party_count)]
    for sent in transcript.sentences:
        line = "%d\t%s\t%s" % (
            sent.id, sent.speaker, " ".join(_serialize_token(t) for t in sent.tokens))
        if sent.syntax is not None:
            items = list(sent.syntax.constituents)
            items += ["dep(%s,%d,%d)" % d for d in sent.syntax.deps]
            line += "\tSYN: %s" % " ".join(items)
        out.append(line)
    return "\n".join(out) + "\n"


def load_records(source: str | Path | io.IOBase) -> list[NsuRecord]:
    if isinstance(source, (str, Path)):
        handle = open(source, newline="", encoding="utf-8")
        close = True
    else:
        handle = source
        close = False
    try:
        records = []
        reader = csv.reader(handle)
        for row in reader:
            if not row or row[0] == "file_id":
                continue
            if len(row) != 4:
                raise CorpusError("bad record row: %r" % (row,))
            records.append(NsuRecord(row[0], int(row[1]), int(row[2]), row[3]))
        return records
    finally:
        if close:
            handle.close()


def serialize_records(records: Iterable[NsuRecord]) -> str:
    out = ["file_id,sentence_id,antecedent_id,label"]
    for rec in records:
        out.append("%s,%d,%d,%s" % (rec.file_id, rec.sentence_id, rec.antecedent_id, rec.label))
    return "\n".join(out) + "\n"


class CorpusStore:
    """Immutable set of transcripts addressed by file id."""

    def __init__(self, transcripts: Iterable[Transcript]):
        self._by_id: dict[str, Transcript] = {}
        for t in transcripts:
            if t.file_id in self._by_id:
                raise DuplicateIdError("duplicate file id %s" % t.file_id)
            self._by_id[t.file_id] = t

    @classmethod
    def from_dir(cls, directory: str | Path) -> "CorpusStore":
        directory = Path(directory)
        transcripts = []
        for path in sorted(directory.glob("*.txt")):
            with open(path, "rb") as handle:
                transcripts.append(load_transcript(handle.read()))
        return cls(transcripts)

    def __len__(self) -> int:
        return len(self._by_id)

    def __iter__(self):
        return iter(self._by_id.values())

    def transcript(self, file_id: str) -> Transcript:
        try:
            return self._by_id[file_id]
        except KeyError:
            raise UnresolvableRecordError("unknown transcript %s" % file_id) from None

    def resolve(self, record: NsuRecord) -> tuple[Sentence, Sentence]:
        """Return the (NSU, antecedent) sentence pair for a record."""
        transcript = self.transcript(record.file_id)
        return (transcript.sentence(record.sentence_id),
                transcript.sentence(record.antecedent_id))


def restrict_adjacent(records: Iterable[NsuRecord], store: CorpusStore) -> list[NsuRecord]:
    """Keep only records whose antecedent immediately precedes the NSU.

    Order preserving and idempotent; raises if a record does not resolve.
    """
    kept = []
    for rec in records:
        transcript = store.transcript(rec.file_id)
        transcript.sentence(rec.antecedent_id)
        prev = transcript.preceding(rec.sentence_id)
        if prev is not None and prev.id == rec.antecedent_id:
            kept.append(rec)
    return kept
