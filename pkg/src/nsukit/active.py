"""Pool-based active learning with entropy sampling, plus self-training."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, replace
from typing import Callable, Iterable

from .config import Config, DEFAULT_CONFIG
from .evaluate import evaluate
from .features import FeatureVector
from .tree import Dataset, DecisionTree, TreeParams, dataset_from_vectors, predict, train_tree


class OracleAbort(Exception):
    """Raised by an oracle when the human cancels the annotation session."""


@dataclass(frozen=True)
class PoolInstance:
    features: FeatureVector
    provenance: tuple[str, int]  # (file_id, sentence_id)
    label: str | None = None     # None while unlabeled


@dataclass(frozen=True)
class CurvePoint:
    labeled_count: int
    accuracy: float
    precision: float
    recall: float
    f1: float


def prediction_entropy(dist: dict) -> float:
    return -sum(p * math.log2(p) for p in dist.values() if p > 0)


def entropy_sampling(model: DecisionTree, pool: list[PoolInstance],
                     k: int) -> list[PoolInstance]:
    """The k pool instances whose predicted class distribution has the
    highest entropy, sorted descending; ties keep pool order."""
    if k < 0:
        raise ValueError("sample size must be nonnegative")
    scored = [(prediction_entropy(predict(model, inst.features.values)), inst)
              for inst in pool]
    ranked = sorted(range(len(pool)), key=lambda i: -scored[i][0])
    return [scored[i][1] for i in ranked[:k]]


def _curve_point(train: Dataset, dev: Dataset, params: TreeParams) -> tuple[DecisionTree, CurvePoint]:
    model = train_tree(train, params)
    report = evaluate(model, dev)
    prec, rec, f1 = report.weighted
    return model, CurvePoint(len(train), report.accuracy, prec, rec, f1)


def al_loop(train: Dataset, dev: Dataset, pool: list[PoolInstance],
            oracle: Callable[[PoolInstance], str], budget: int, batch: int = 1,
            params: TreeParams = TreeParams()) -> tuple[Dataset, list[CurvePoint]]:
    """Iteratively query the oracle for the most informative pool instances.

    Each round trains on the current labeled data, records a dev-set
    curve point, queries `batch` instances chosen by entropy sampling and
    moves them (with their oracle labels) into the training data.  An
    OracleAbort ends the loop early with the partial results.
    """
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    if batch < 1:
        raise ValueError("batch must be >= 1")
    pool = list(pool)
    model, point = _curve_point(train, dev, params)
    curve = [point]
    added = 0
    while added < budget and pool:
        want = min(batch, budget - added)
        queried = entropy_sampling(model, pool, want)
        new_rows = []
        aborted = False
        for inst in queried:
            try:
                label = oracle(inst)
            except OracleAbort:
                aborted = True
                break
            pool.remove(inst)
            new_rows.append((dict(inst.features.values), label))
            added += 1
        if new_rows:
            train = train.with_rows(list(train.rows) + new_rows)
            model, point = _curve_point(train, dev, params)
            curve.append(point)
        if aborted:
            break
    return train, curve


def gold_oracle(instance: PoolInstance) -> str:
    """Oracle backed by the gold labels carried on the pool instances."""
    if instance.label is None:
        raise OracleAbort("no gold label available")
    return instance.label


def self_train(train: Dataset, pool: list[PoolInstance], strategy: tuple,
               rounds: int = 1, params: TreeParams = TreeParams()) -> Dataset:
    """Grow the training data with the model's own predictions.

    Strategies: ("most_confident", k), ("random", k, seed) and
    ("all_then_correct",), the last admitting everything in round one and
    re-labeling the admitted instances on later rounds.
    """
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    pool = list(pool)
    admitted: list[PoolInstance] = []
    base_rows = list(train.rows)
    predicted: dict[int, str] = {}  # id(inst) -> current predicted label

    for _ in range(rounds):
        rows = base_rows + [(dict(i.features.values), predicted[id(i)]) for i in admitted]
        model = train_tree(train.with_rows(rows), params)
        kind = strategy[0]
        if kind == "most_confident":
            k = strategy[1]
            scored = []
            for inst in pool:
                dist = predict(model, inst.features.values)
                scored.append((max(dist.values()), inst))
            ranked = sorted(range(len(pool)), key=lambda i: -scored[i][0])
            chosen = [scored[i][1] for i in ranked[:k]]
        elif kind == "random":
            k, seed = strategy[1], strategy[2]
            rng = random.Random(seed)
            chosen = rng.sample(pool, min(k, len(pool)))
        elif kind == "all_then_correct":
            chosen = list(pool)
        else:
            raise ValueError("unknown self-training strategy %r" % (strategy,))

        for inst in chosen:
            pool.remove(inst)
            admitted.append(inst)
        for inst in admitted:
            dist = predict(model, inst.features.values)
            label = max(sorted(dist.items()), key=lambda kv: kv[1])[0]
            if kind != "all_then_correct" and id(inst) in predicted:
                continue  # labels of earlier admissions stay fixed
            predicted[id(inst)] = label

    rows = base_rows + [(dict(i.features.values), predicted[id(i)]) for i in admitted]
    return train.with_rows(rows)


def _stratified_indices(labels: list[str], seed: int,
                        config: Config) -> tuple[list[int], list[int], list[int]]:
    groups: dict[str, list[int]] = {}
    for i, label in enumerate(labels):
        groups.setdefault(label, []).append(i)
    rng = random.Random(seed)
    train_idx, dev_idx, test_idx = [], [], []
    for label in sorted(groups):
        indices = groups[label]
        rng.shuffle(indices)
        n = len(indices)
        n_train = max(1, round(n * config.al_train_ratio))
        n_dev = max(1, round(n * config.al_dev_ratio)) if n > 2 else 0
        train_idx += indices[:n_train]
        dev_idx += indices[n_train:n_train + n_dev]
        test_idx += indices[n_train + n_dev:]
    return sorted(train_idx), sorted(dev_idx), sorted(test_idx)


def stratified_split(dataset: Dataset, seed: int,
                     config: Config = DEFAULT_CONFIG) -> tuple[Dataset, Dataset, Dataset]:
    """Seeded stratified train/dev/test split using the configured ratios."""
    parts = _stratified_indices(dataset.labels(), seed, config)
    pick = lambda idxs: dataset.with_rows([dataset.rows[i] for i in idxs])
    return tuple(pick(idxs) for idxs in parts)


def split_records(records: list, seed: int,
                  config: Config = DEFAULT_CONFIG) -> tuple[list, list, list]:
    """The same stratified split expressed over NSU records."""
    labels = [rec.label for rec in records]
    parts = _stratified_indices(labels, seed, config)
    return tuple([records[i] for i in idxs] for idxs in parts)


def pool_from_dataset(dataset: Dataset, schema_name: str,
                      provenance_prefix: str = "pool") -> list[PoolInstance]:
    """Turn labeled rows into a gold-labeled pool (labels become the oracle)."""
    instances = []
    for i, (values, label) in enumerate(dataset.rows):
        vec = FeatureVector(schema_name, dict(values))
        instances.append(PoolInstance(vec, (provenance_prefix, i), label))
    return instances


def pool_from_records(store, records, schema_name: str,
                      config: Config = DEFAULT_CONFIG) -> list[PoolInstance]:
    """Gold-labeled pool whose provenance points back into the corpus."""
    from .features import extract

    instances = []
    for rec in records:
        nsu, ant = store.resolve(rec)
        vec = extract(nsu, ant, schema_name, config)
        instances.append(PoolInstance(vec, (rec.file_id, rec.sentence_id), rec.label))
    return instances


def curve_to_csv(curve: Iterable[CurvePoint]) -> str:
    lines = ["labeled_count,accuracy,precision,recall,f1"]
    for point in curve:
        lines.append("%d,%.6f,%.6f,%.6f,%.6f" % (
            point.labeled_count, point.accuracy, point.precision,
            point.recall, point.f1))
    return "\n".join(lines) + "\n"
