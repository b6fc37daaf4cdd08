import pytest

from nsukit.bundled import bundled_corpus
from nsukit.corpus import PAUSE_TOKEN, Sentence, Syntax, Token, UNCLEAR_TOKEN


def sent(spec: str, sid: int = 1, speaker: str = "A",
         syntax: Syntax | None = None) -> Sentence:
    """Build a sentence from 'surface|lemma|pos' items and <pause>/<unclear>."""
    tokens = []
    for item in spec.split():
        if item == "<pause>":
            tokens.append(PAUSE_TOKEN)
        elif item == "<unclear>":
            tokens.append(UNCLEAR_TOKEN)
        else:
            surface, lemma, pos = item.split("|")
            tokens.append(Token(surface, lemma, pos))
    return Sentence(sid, speaker, tuple(tokens), syntax)


@pytest.fixture(scope="session")
def corpus():
    store, records = bundled_corpus()
    assert records, "bundled corpus must not be empty"
    return store, records
