"""Synthetic dialogue corpus generator.

The licensed source corpus cannot be bundled, so the fixtures are built
from templated two-party dialogues covering all fifteen NSU classes.
Generation is deterministic under a seed and writes transcripts in the
canonical format plus a matching NSU record CSV.
"""

from __future__ import annotations

import random
from pathlib import Path

from .corpus import (NsuRecord, PAUSE_TOKEN, Sentence, Token, Transcript,
                     Syntax, serialize_records, serialize_transcript)

NAMES = ["Paul", "Mary", "John", "Sarah", "Peter", "Anna"]
PLACES = ["London", "Paris", "Oslo", "Rome", "Dublin", "Leeds"]
NOUNS = ["tape", "disk", "letter", "report", "ticket", "book",
         "printer", "screen", "party", "meeting"]
NUMBERS = ["three", "four", "five", "nine", "ten", "twenty"]
ACKS = ["Right", "Mhm", "Okay", "Aha", "Yeah"]
MODALS = ["Probably", "Possibly", "Certainly", "Maybe", "Definitely"]
FACTUALS = ["Wonderful", "Brilliant", "Terrible", "Amazing", "Lovely"]


def W(surface: str, pos: str, lemma: str | None = None) -> Token:
    return Token(surface, (lemma or surface).lower(), pos)


def P(mark: str) -> Token:
    return Token(mark, mark, "PUN")


def _noun(rng) -> Token:
    return W(rng.choice(NOUNS), "NN1")


def _name(rng) -> Token:
    return W(rng.choice(NAMES), "NP0")


def _place(rng) -> Token:
    return W(rng.choice(PLACES), "NP0")


def _number(rng) -> Token:
    return W(rng.choice(NUMBERS), "CRD")


# --- antecedent builders ---------------------------------------------------

def polar_question(rng) -> tuple[list[Token], Syntax | None]:
    noun = _noun(rng)
    kind = rng.randrange(3)
    if kind == 0:
        toks = [W("Are", "VBB", "be"), W("you", "PNP"), W("going", "VVG", "go"),
                W("to", "PRP"), W("the", "AT0"), noun, P("?")]
    elif kind == 1:
        toks = [W("Have", "VHB", "have"), W("you", "PNP"),
                W("finished", "VVN", "finish"), W("the", "AT0"), noun, P("?")]
    else:
        toks = [W("Did", "VDD", "do"), _name(rng), W("write", "VVI"),
                W("the", "AT0"), noun, P("?")]
    syntax = Syntax(("SQ", "NP", "VP")) if rng.random() < 0.6 else None
    return toks, syntax


def negative_polar_question(rng) -> tuple[list[Token], Syntax | None]:
    noun = _noun(rng)
    toks = [W("Are", "VBB", "be"), W("you", "PNP"), W("not", "XX0"),
            W("going", "VVG", "go"), W("to", "PRP"), W("the", "AT0"), noun, P("?")]
    syntax = Syntax(("SQ", "NP", "VP"), (("neg", 4, 3),))
    return toks, syntax


def wh_question(rng) -> tuple[list[Token], Syntax | None]:
    kind = rng.randrange(3)
    if kind == 0:
        toks = [W("What", "DTQ"), W("is", "VBZ", "be"), W("the", "AT0"),
                W("name", "NN1"), W("of", "PRF"), W("the", "AT0"), _noun(rng), P("?")]
    elif kind == 1:
        toks = [W("Who", "PNQ"), W("is", "VBZ", "be"),
                W("bringing", "VVG", "bring"), W("the", "AT0"), _noun(rng), P("?")]
    else:
        toks = [W("Where", "AVQ"), W("did", "VDD", "do"), _name(rng),
                W("put", "VVI"), W("the", "AT0"), _noun(rng), P("?")]
    syntax = Syntax(("SBARQ", "WHNP", "SQ")) if rng.random() < 0.6 else None
    return toks, syntax


def wh_embedded(rng) -> tuple[list[Token], Syntax | None]:
    # declarative with an embedded wh fragment; dobj/nsubj dependency pattern
    toks = [W("And", "CJC"), W("you", "PNP"), W("know", "VVB"),
            W("what", "DTQ"), W("the", "AT0"), W("voltage", "NN1"),
            W("is", "VBZ", "be"), P(".")]
    syntax = Syntax(("S", "NP", "VP"), (("dobj", 7, 4), ("nsubj", 7, 6)))
    return toks, syntax


def statement(rng) -> tuple[list[Token], Syntax | None]:
    kind = rng.randrange(4)
    if kind == 0:
        toks = [W("I", "PNP"), W("am", "VBB", "be"), W("going", "VVG", "go"),
                W("to", "PRP"), W("the", "AT0"), _noun(rng), P(".")]
    elif kind == 1:
        toks = [_name(rng), W("wrote", "VVD", "write"), W("the", "AT0"),
                _noun(rng), W("yesterday", "AV0"), P(".")]
    elif kind == 2:
        toks = [W("You", "PNP"), W("press", "VVB"), W("enter", "NN1"),
                W("to", "TO0"), W("move", "VVI"), W("the", "AT0"), _noun(rng), P(".")]
    else:
        toks = [W("I", "PNP"), W("shall", "VM0"), W("be", "VBI"),
                W("getting", "VVG", "get"), W("a", "AT0"), W("copy", "NN1"),
                W("of", "PRF"), W("this", "DT0"), _noun(rng), P(".")]
    syntax = Syntax(("S", "NP", "VP")) if rng.random() < 0.5 else None
    return toks, syntax


def indefinite_statement(rng) -> tuple[list[Token], Syntax | None]:
    kind = rng.randrange(2)
    if kind == 0:
        toks = [W("Someone", "PNI"), W("moved", "VVD", "move"), W("my", "DPS"),
                W("files", "NN2", "file"), W("yesterday", "AV0"), P(".")]
    else:
        toks = [W("A", "AT0"), W("friend", "NN1"), W("is", "VBZ", "be"),
                W("coming", "VVG", "come"), W("to", "PRP"), W("the", "AT0"),
                _noun(rng), P(".")]
    return toks, Syntax(("S", "NP", "VP"))


def unfinished_statement(rng) -> tuple[list[Token], Syntax | None]:
    toks = [W("It", "PNP"), W("would", "VM0"), W("include", "VVI"),
            W("places", "NN2", "place"), W("like", "PRP"), W("erm", "ITJ"),
            PAUSE_TOKEN]
    return toks, None


# --- per-class pair builders ------------------------------------------------

def _content_noun(tokens: list[Token]) -> Token | None:
    for tok in tokens:
        if tok.pos.startswith("NN"):
            return tok
    return None


def build_pair(label: str, rng) -> tuple[list[Token], Syntax | None,
                                         list[Token], Syntax | None, bool]:
    """Return (ant tokens, ant syntax, nsu tokens, nsu syntax, same_speaker)."""
    same_speaker = False
    nsu_syntax = None
    if label == "Ack":
        ant, ant_syn = statement(rng)
        nsu = [W(rng.choice(ACKS), "ITJ"), P(".")]
        nsu_syntax = Syntax(("INTJ", "UH")) if rng.random() < 0.4 else None
    elif label == "RepAck":
        ant, ant_syn = statement(rng)
        noun = _content_noun(ant) or _noun(rng)
        nsu = [Token(noun.surface.capitalize(), noun.lemma, noun.pos), P(".")]
        if rng.random() < 0.3:
            nsu = nsu[:1] + [P(","), W(rng.choice(ACKS).lower(), "ITJ")] + nsu[1:]
        nsu_syntax = Syntax(("NP", "NN")) if rng.random() < 0.4 else None
    elif label == "CE":
        ant, ant_syn = polar_question(rng) if rng.random() < 0.5 else statement(rng)
        noun = _content_noun(ant) or _noun(rng)
        nsu = [W("The", "AT0"), Token(noun.surface, noun.lemma, noun.pos), P("?")]
        nsu_syntax = Syntax(("NP", "NN")) if rng.random() < 0.4 else None
    elif label == "CheckQu":
        ant, ant_syn = statement(rng)
        nsu = [W(rng.choice(["Okay", "Right", "Yeah"]), "ITJ"), P("?")]
        same_speaker = True
    elif label == "Sluice":
        ant, ant_syn = indefinite_statement(rng)
        nsu = [W(rng.choice(["Who", "When", "Where", "What"]),
                 rng.choice(["PNQ", "AVQ"])), P("?")]
        nsu_syntax = Syntax(("SBARQ", "WHNP")) if rng.random() < 0.4 else None
    elif label == "Filler":
        ant, ant_syn = unfinished_statement(rng)
        nsu = [_place(rng), P(".")]
    elif label == "ShortAns":
        ant, ant_syn = wh_question(rng) if rng.random() < 0.8 else wh_embedded(rng)
        choice = rng.randrange(3)
        if choice == 0:
            nsu = [_number(rng), P(".")]
        elif choice == 1:
            nsu = [_name(rng), P(".")]
        else:
            nsu = [W("The", "AT0"), _noun(rng), P(".")]
        nsu_syntax = Syntax(("NP", "NN")) if rng.random() < 0.4 else None
    elif label == "AffAns":
        ant, ant_syn = polar_question(rng)
        nsu = [W("Yes", "ITJ"), P(".")]
        if rng.random() < 0.3:
            nsu = nsu[:1] + [P(","), W("please", "AV0")] + nsu[1:]
    elif label == "Reject":
        if rng.random() < 0.25:
            ant, ant_syn = negative_polar_question(rng)
        else:
            ant, ant_syn = polar_question(rng)
        nsu = [W("No", "ITJ"), P(".")]
        if rng.random() < 0.3:
            nsu = nsu[:1] + [P(","), W("not", "XX0"), W("yet", "AV0")] + nsu[1:]
    elif label == "RepAffAns":
        ant, ant_syn = polar_question(rng)
        noun = _content_noun(ant) or _noun(rng)
        nsu = [W("In", "PRP"), W("the", "AT0"),
               Token(noun.surface, noun.lemma, noun.pos), P(","),
               W("yes", "ITJ"), P(".")]
    elif label == "HelpReject":
        ant, ant_syn = polar_question(rng)
        nsu = [W("No", "ITJ"), P(","), W("the", "AT0"), _noun(rng), P(".")]
    elif label == "PropMod":
        ant, ant_syn = polar_question(rng)
        nsu = [W(rng.choice(MODALS), "AV0"), P(".")]
    elif label == "FactMod":
        ant, ant_syn = statement(rng)
        nsu = [W(rng.choice(FACTUALS), "AJ0"), P(".")]
    elif label == "BareModPh":
        ant, ant_syn = statement(rng)
        choice = rng.randrange(2)
        if choice == 0:
            nsu = [W("From", "PRP"), W("side", "NN1"), W("to", "PRP"),
                   W("side", "NN1"), P(".")]
        else:
            nsu = [W("On", "PRP"), W("the", "AT0"), W("left", "NN1"), P(".")]
        nsu_syntax = Syntax(("PP", "NP")) if rng.random() < 0.4 else None
    elif label == "Conj":
        ant, ant_syn = statement(rng)
        nsu = [W("And", "CJC"), W("other", "AJ0"), W("people", "NN0"), P(".")]
    else:
        raise ValueError("no template for %r" % label)
    return ant, ant_syn, nsu, nsu_syntax, same_speaker


FILLER_LINES = [
    [W("We", "PNP"), W("should", "VM0"), W("start", "VVI"),
     W("the", "AT0"), W("meeting", "NN1"), W("now", "AV0"), P(".")],
    [W("Let", "VVB"), W("me", "PNP"), W("check", "VVI"), W("the", "AT0"),
     W("schedule", "NN1"), P(".")],
    [W("The", "AT0"), W("weather", "NN1"), W("is", "VBZ", "be"),
     W("getting", "VVG", "get"), W("worse", "AJC", "bad"), P(".")],
    [W("hello", "ITJ"), W("there", "AV0"), P(".")],
]

CLASS_WEIGHTS = [
    ("Ack", 30), ("ShortAns", 14), ("AffAns", 11), ("RepAck", 8),
    ("CE", 7), ("Reject", 6), ("RepAffAns", 4), ("FactMod", 4),
    ("Sluice", 4), ("HelpReject", 3), ("Filler", 3), ("CheckQu", 3),
    ("BareModPh", 2), ("PropMod", 2), ("Conj", 1),
]

# Pairs that stay genuinely hard to tell apart; a small fraction of
# instances swaps surface forms so the corpus is not perfectly separable.
CONFUSABLE = {
    "RepAck": "RepAffAns", "RepAffAns": "RepAck",
    "Reject": "HelpReject", "HelpReject": "Reject",
    "Ack": "AffAns", "AffAns": "Ack",
}
CONFUSION_RATE = 0.04


def generate_corpus(seed: int = 7, files: int = 60,
                    pairs_per_file: tuple[int, int] = (5, 7)
                    ) -> tuple[list[Transcript], list[NsuRecord]]:
    rng = random.Random(seed)
    labels = [label for label, weight in CLASS_WEIGHTS for _ in range(weight)]
    transcripts, records = [], []
    for index in range(1, files + 1):
        file_id = "SYN%03d" % index
        sentences: list[Sentence] = []
        sid = 0
        speakers = ("A", "B")

        def add(tokens, syntax, speaker):
            nonlocal sid
            sid += 1
            sentences.append(Sentence(sid, speaker, tuple(tokens), syntax))
            return sid

        pair_count = rng.randint(*pairs_per_file)
        for _ in range(pair_count):
            if rng.random() < 0.25:
                add(list(rng.choice(FILLER_LINES)), None, rng.choice(speakers))
            label = rng.choice(labels)
            surface_label = label
            if label in CONFUSABLE and rng.random() < CONFUSION_RATE:
                surface_label = CONFUSABLE[label]
            ant, ant_syn, nsu, nsu_syn, same_speaker = build_pair(surface_label, rng)
            ant_speaker = rng.choice(speakers)
            nsu_speaker = ant_speaker if same_speaker else \
                ("B" if ant_speaker == "A" else "A")
            ant_id = add(ant, ant_syn, ant_speaker)
            nsu_id = add(nsu, nsu_syn, nsu_speaker)
            records.append(NsuRecord(file_id, nsu_id, ant_id, label))
        transcripts.append(Transcript(file_id, "two", tuple(sentences)))
    return transcripts, records


def write_corpus(out_dir: str | Path, seed: int = 7, files: int = 60) -> tuple[int, int]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    transcripts, records = generate_corpus(seed, files)
    for transcript in transcripts:
        path = out_dir / ("%s.txt" % transcript.file_id)
        path.write_text(serialize_transcript(transcript), encoding="utf-8")
    (out_dir / "records.csv").write_text(serialize_records(records), encoding="utf-8")
    return len(transcripts), len(records)
