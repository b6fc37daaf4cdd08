"""Access to the bundled fixtures: corpus, rules, scripts and goldens."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .corpus import CorpusStore, NsuRecord, load_records, load_transcript


def data_path(*parts: str) -> Path:
    base = resources.files("nsukit.data")
    for part in parts:
        base = base.joinpath(part)
    return Path(str(base))


def bundled_corpus() -> tuple[CorpusStore, list[NsuRecord]]:
    return load_corpus_dir(data_path("corpus"))


def load_corpus_dir(directory: str | Path) -> tuple[CorpusStore, list[NsuRecord]]:
    directory = Path(directory)
    transcripts = []
    for path in sorted(directory.glob("*.txt")):
        transcripts.append(load_transcript(path.read_bytes()))
    records_path = directory / "records.csv"
    records = load_records(records_path) if records_path.exists() else []
    return CorpusStore(transcripts), records
