"""Information-gain decision trees over mixed categorical/numeric features.

Categorical features split multiway on observed symbols; numeric features
split on midpoints between consecutive distinct values.  Unknown values
act as their own symbol during training and follow the majority-mass
child at prediction time.  Optional pessimistic pruning uses the
normal-approximation upper bound on the leaf error rate.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from statistics import NormalDist
from typing import Iterable

from .config import Config, DEFAULT_CONFIG
from .corpus import CorpusStore, NsuRecord
from .features import FeatureVector, extract, feature_kind, schema_features

UNKNOWN_SYMBOL = "?"

_EPS = 1e-12


class LearnError(Exception):
    pass


class EmptyDatasetError(LearnError):
    pass


class SchemaMismatchError(LearnError):
    pass


class UnknownFeatureError(LearnError):
    pass


@dataclass(frozen=True)
class Dataset:
    """Feature rows plus their class labels, tied to a named schema."""

    schema: tuple[tuple[str, str], ...]  # (feature name, "categorical" | "numeric")
    rows: tuple[tuple[dict, str], ...]

    def __post_init__(self):
        names = tuple(n for n, _ in self.schema)
        for values, _ in self.rows:
            if tuple(values.keys()) != names:
                raise SchemaMismatchError("row does not conform to schema")

    def __len__(self) -> int:
        return len(self.rows)

    def feature_names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.schema)

    def kind_of(self, feature: str) -> str:
        for name, kind in self.schema:
            if name == feature:
                return kind
        raise UnknownFeatureError(feature)

    def labels(self) -> list[str]:
        return [label for _, label in self.rows]

    def with_rows(self, rows: Iterable[tuple[dict, str]]) -> "Dataset":
        return Dataset(self.schema, tuple(rows))


def make_schema(schema_name: str) -> tuple[tuple[str, str], ...]:
    return tuple((name, feature_kind(name)) for name in schema_features(schema_name))


def dataset_from_vectors(vectors: Iterable[FeatureVector],
                         labels: Iterable[str]) -> Dataset:
    vectors = list(vectors)
    labels = list(labels)
    if not vectors:
        raise EmptyDatasetError("no feature vectors")
    schema = make_schema(vectors[0].schema)
    return Dataset(schema, tuple((dict(v.values), lab) for v, lab in zip(vectors, labels)))


def dataset_from_corpus(store: CorpusStore, records: Iterable[NsuRecord],
                        schema_name: str, config: Config = DEFAULT_CONFIG) -> Dataset:
    vectors, labels = [], []
    for rec in records:
        nsu, ant = store.resolve(rec)
        vectors.append(extract(nsu, ant, schema_name, config))
        labels.append(rec.label)
    return dataset_from_vectors(vectors, labels)


def entropy(probs: Iterable[float]) -> float:
    """Shannon entropy in bits of a probability distribution."""
    probs = list(probs)
    if any(p < 0 for p in probs):
        raise ValueError("negative probability")
    if abs(sum(probs) - 1.0) > 1e-9:
        raise ValueError("probabilities must sum to 1")
    return -sum(p * math.log2(p) for p in probs if p > 0)


def _count_entropy(counts: Counter) -> float:
    total = sum(counts.values())
    if total == 0:
        return 0.0
    return entropy(c / total for c in counts.values())


def _symbol(value) -> str:
    return UNKNOWN_SYMBOL if value is None else str(value)


def _categorical_gain(rows, feature: str) -> float:
    total = Counter(label for _, label in rows)
    groups: dict[str, Counter] = {}
    for values, label in rows:
        groups.setdefault(_symbol(values[feature]), Counter())[label] += 1
    n = len(rows)
    remainder = sum(
        sum(g.values()) / n * _count_entropy(g) for g in groups.values())
    return _count_entropy(total) - remainder


def _numeric_candidates(rows, feature: str) -> list[float]:
    known = sorted({values[feature] for values, _ in rows if values[feature] is not None})
    return [(a + b) / 2 for a, b in zip(known, known[1:])]


def _numeric_gain(rows, feature: str) -> tuple[float, float | None]:
    known = [(values[feature], label) for values, label in rows
             if values[feature] is not None]
    if len({v for v, _ in known}) < 2:
        return 0.0, None
    n = len(known)
    base = _count_entropy(Counter(label for _, label in known))
    known.sort(key=lambda pair: pair[0])
    left: Counter = Counter()
    right = Counter(label for _, label in known)
    best_gain, best_threshold = 0.0, None
    index = 0
    for threshold in _numeric_candidates(rows, feature):
        while index < n and known[index][0] <= threshold:
            left[known[index][1]] += 1
            right[known[index][1]] -= 1
            index += 1
        n_left = sum(left.values())
        remainder = (n_left / n) * _count_entropy(left) + \
                    ((n - n_left) / n) * _count_entropy(+right)
        gain = base - remainder
        if gain > best_gain + _EPS:
            best_gain, best_threshold = gain, threshold
    return best_gain, best_threshold


def info_gain(dataset: Dataset, feature: str) -> float:
    """Entropy of the label minus its conditional entropy given the feature."""
    if dataset.kind_of(feature) != "categorical":
        raise UnknownFeatureError("info_gain is defined on categorical features")
    if not dataset.rows:
        raise EmptyDatasetError("empty dataset")
    return _categorical_gain(dataset.rows, feature)


@dataclass(frozen=True)
class TreeParams:
    min_leaf: int = 2            # M: minimum instances per leaf
    confidence: float | None = 0.25  # C: pruning confidence, None disables pruning

    def __post_init__(self):
        if self.min_leaf < 1:
            raise ValueError("M must be >= 1")
        if self.confidence is not None and not 0 < self.confidence <= 1:
            raise ValueError("C must be in (0, 1]")


@dataclass
class Leaf:
    counts: Counter

    @property
    def dist(self) -> dict:
        total = sum(self.counts.values())
        return {label: c / total for label, c in sorted(self.counts.items())}

    def majority(self) -> str:
        return max(sorted(self.counts.items()), key=lambda kv: kv[1])[0]


@dataclass
class CatSplit:
    feature: str
    children: dict  # symbol -> node
    default: str    # symbol of the majority-mass child
    counts: Counter = field(default_factory=Counter)


@dataclass
class NumSplit:
    feature: str
    threshold: float
    left: "Node"
    right: "Node"
    default: str    # "left" | "right"
    counts: Counter = field(default_factory=Counter)


Node = Leaf | CatSplit | NumSplit


@dataclass(frozen=True)
class DecisionTree:
    schema: tuple[tuple[str, str], ...]
    root: Node
    params: TreeParams


def _grow(rows, schema, params: TreeParams) -> Node:
    counts = Counter(label for _, label in rows)
    if len(counts) == 1 or len(rows) < 2 * params.min_leaf:
        return Leaf(counts)

    best_gain, best_split = 0.0, None
    for name, kind in schema:
        if kind == "categorical":
            symbols = {_symbol(values[name]) for values, _ in rows}
            if len(symbols) < 2:
                continue
            gain = _categorical_gain(rows, name)
            split = ("cat", name, None)
        else:
            gain, threshold = _numeric_gain(rows, name)
            if threshold is None:
                continue
            split = ("num", name, threshold)
        if gain > best_gain + _EPS:
            best_gain, best_split = gain, split

    if best_split is None:
        return Leaf(counts)

    kind, name, threshold = best_split
    if kind == "cat":
        groups: dict[str, list] = {}
        for row in rows:
            groups.setdefault(_symbol(row[0][name]), []).append(row)
        default = max(sorted(groups), key=lambda s: len(groups[s]))
        children = {sym: _grow(groups[sym], schema, params) for sym in sorted(groups)}
        return CatSplit(name, children, default, counts)

    left_rows, right_rows, unknown_rows = [], [], []
    for row in rows:
        value = row[0][name]
        if value is None:
            unknown_rows.append(row)
        elif value <= threshold:
            left_rows.append(row)
        else:
            right_rows.append(row)
    default = "left" if len(left_rows) >= len(right_rows) else "right"
    (left_rows if default == "left" else right_rows).extend(unknown_rows)
    return NumSplit(name, threshold,
                    _grow(left_rows, schema, params),
                    _grow(right_rows, schema, params),
                    default, counts)


def _pessimistic_errors(counts: Counter, z: float) -> float:
    n = sum(counts.values())
    if n == 0:
        return 0.0
    e = n - max(counts.values())
    f = e / n
    upper = (f + z * z / (2 * n)
             + z * math.sqrt(f / n - f * f / n + z * z / (4 * n * n)))
    upper /= 1 + z * z / n
    return n * min(upper, 1.0)


def _subtree_errors(node: Node, z: float) -> float:
    if isinstance(node, Leaf):
        return _pessimistic_errors(node.counts, z)
    if isinstance(node, CatSplit):
        return sum(_subtree_errors(c, z) for c in node.children.values())
    return _subtree_errors(node.left, z) + _subtree_errors(node.right, z)


def _prune(node: Node, z: float) -> Node:
    if isinstance(node, Leaf):
        return node
    if isinstance(node, CatSplit):
        node.children = {s: _prune(c, z) for s, c in node.children.items()}
    else:
        node.left = _prune(node.left, z)
        node.right = _prune(node.right, z)
    if _pessimistic_errors(node.counts, z) <= _subtree_errors(node, z) + 1e-9:
        return Leaf(node.counts)
    return node


def train_tree(dataset: Dataset, params: TreeParams = TreeParams()) -> DecisionTree:
    """Greedy recursive construction choosing the maximum-gain split.

    Ties on gain go to the first feature in schema order, which makes
    training deterministic given the dataset order.
    """
    if not dataset.rows:
        raise EmptyDatasetError("cannot train on an empty dataset")
    root = _grow(list(dataset.rows), dataset.schema, params)
    if params.confidence is not None:
        # C = 1 degenerates to the raw error rate (z would be -inf)
        z = 0.0 if params.confidence >= 1 else NormalDist().inv_cdf(1 - params.confidence)
        root = _prune(root, z)
    return DecisionTree(dataset.schema, root, params)


def predict(tree: DecisionTree, vector: dict) -> dict:
    """Class distribution at the leaf the vector is routed to."""
    names = {name for name, _ in tree.schema}
    if set(vector.keys()) != names:
        raise SchemaMismatchError("vector does not conform to tree schema")
    node = tree.root
    while not isinstance(node, Leaf):
        if isinstance(node, CatSplit):
            symbol = _symbol(vector[node.feature])
            node = node.children.get(symbol) or node.children[node.default]
        else:
            value = vector[node.feature]
            if value is None:
                side = node.default
            else:
                side = "left" if value <= node.threshold else "right"
            node = node.left if side == "left" else node.right
    return node.dist


def predict_vector(tree: DecisionTree, vector: FeatureVector) -> dict:
    return predict(tree, vector.values)


def _serialize_node(node: Node, depth: int, out: list[str]) -> None:
    pad = "  " * depth
    if isinstance(node, Leaf):
        counts = " ".join("%s:%d" % (label, c) for label, c in sorted(node.counts.items()))
        out.append("%sleaf %s" % (pad, counts))
    elif isinstance(node, CatSplit):
        out.append("%scat %s default=%s" % (pad, node.feature, node.default))
        for symbol in sorted(node.children):
            out.append("%s  case %s" % (pad, symbol))
            _serialize_node(node.children[symbol], depth + 2, out)
    else:
        out.append("%snum %s %r default=%s"
                   % (pad, node.feature, node.threshold, node.default))
        out.append("%s  le" % pad)
        _serialize_node(node.left, depth + 2, out)
        out.append("%s  gt" % pad)
        _serialize_node(node.right, depth + 2, out)


def serialize_tree(tree: DecisionTree) -> str:
    header = ["nsutree 1"]
    header.append("schema " + ",".join("%s:%s" % (n, k) for n, k in tree.schema))
    confidence = "off" if tree.params.confidence is None else repr(tree.params.confidence)
    header.append("params M=%d C=%s" % (tree.params.min_leaf, confidence))
    body: list[str] = []
    _serialize_node(tree.root, 0, body)
    return "\n".join(header + body) + "\n"


def _parse_node(lines: list[str], pos: int, depth: int) -> tuple[Node, int]:
    pad = "  " * depth
    line = lines[pos]
    if not line.startswith(pad):
        raise LearnError("bad indentation at line %d" % (pos + 1))
    body = line[len(pad):]
    if body.startswith("leaf"):
        counts = Counter()
        for item in body[5:].split():
            label, _, count = item.rpartition(":")
            counts[label] = int(count)
        return Leaf(counts), pos + 1
    if body.startswith("cat "):
        _, feature, default = body.split()
        default = default.removeprefix("default=")
        children = {}
        pos += 1
        while pos < len(lines) and lines[pos].startswith(pad + "  case "):
            symbol = lines[pos][len(pad) + 7:]
            child, pos = _parse_node(lines, pos + 1, depth + 2)
            children[symbol] = child
        node = CatSplit(feature, children, default)
        node.counts = sum((c.counts if isinstance(c, Leaf) else c.counts
                           for c in children.values()), Counter())
        return node, pos
    if body.startswith("num "):
        _, feature, threshold, default = body.split()
        default = default.removeprefix("default=")
        if lines[pos + 1] != pad + "  le":
            raise LearnError("expected 'le' at line %d" % (pos + 2))
        left, nxt = _parse_node(lines, pos + 2, depth + 2)
        if lines[nxt] != pad + "  gt":
            raise LearnError("expected 'gt' at line %d" % (nxt + 1))
        right, nxt = _parse_node(lines, nxt + 1, depth + 2)
        node = NumSplit(feature, float(threshold), left, right, default)
        node.counts = (left.counts if isinstance(left, Leaf) else left.counts) + \
                      (right.counts if isinstance(right, Leaf) else right.counts)
        return node, nxt
    raise LearnError("unrecognized node line: %r" % line)


def load_tree(text: str) -> DecisionTree:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines or lines[0] != "nsutree 1":
        raise LearnError("not a serialized tree")
    schema = tuple(tuple(item.split(":")) for item in lines[1].removeprefix("schema ").split(","))
    m_part, c_part = lines[2].removeprefix("params ").split()
    min_leaf = int(m_part.removeprefix("M="))
    c_text = c_part.removeprefix("C=")
    confidence = None if c_text == "off" else float(c_text)
    root, _ = _parse_node(lines, 3, 0)
    return DecisionTree(schema, root, TreeParams(min_leaf, confidence))
