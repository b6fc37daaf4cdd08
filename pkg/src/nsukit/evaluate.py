"""Classification metrics, stratified cross-validation and the paired t-test."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .corpus import ALL_CLASSES
from .tree import Dataset, DecisionTree, TreeParams, predict, train_tree


@dataclass(frozen=True)
class EvalReport:
    labels: tuple[str, ...]
    confusion: tuple[tuple[int, ...], ...]  # confusion[actual][predicted]
    accuracy: float
    per_class: dict  # label -> (precision, recall, f1)
    weighted: tuple[float, float, float]

    @property
    def instance_count(self) -> int:
        return sum(sum(row) for row in self.confusion)


def argmax_label(dist: dict) -> str:
    return max(sorted(dist.items()), key=lambda kv: kv[1])[0]


def metrics(confusion, labels=None) -> EvalReport:
    """Accuracy, per-class precision/recall/F1 and their weighted averages.

    Ratios with a zero denominator are reported as 0 by convention.
    """
    size = len(confusion)
    if any(len(row) != size for row in confusion):
        raise ValueError("confusion matrix must be square")
    if any(cell < 0 for row in confusion for cell in row):
        raise ValueError("confusion matrix cells must be nonnegative")
    if labels is None:
        labels = tuple(str(i) for i in range(size))
    labels = tuple(labels)
    if len(labels) != size:
        raise ValueError("label count does not match matrix size")

    total = sum(sum(row) for row in confusion)
    correct = sum(confusion[i][i] for i in range(size))
    accuracy = correct / total if total else 0.0

    per_class = {}
    w_prec = w_rec = w_f1 = 0.0
    for i, label in enumerate(labels):
        tp = confusion[i][i]
        actual = sum(confusion[i])
        predicted = sum(confusion[r][i] for r in range(size))
        prec = tp / predicted if predicted else 0.0
        rec = tp / actual if actual else 0.0
        f1 = 2 * prec * rec / (prec + rec) if prec + rec else 0.0
        per_class[label] = (prec, rec, f1)
        w_prec += actual * prec
        w_rec += actual * rec
        w_f1 += actual * f1
    if total:
        weighted = (w_prec / total, w_rec / total, w_f1 / total)
    else:
        weighted = (0.0, 0.0, 0.0)
    return EvalReport(labels, tuple(tuple(row) for row in confusion),
                      accuracy, per_class, weighted)


def _label_universe(dataset: Dataset) -> tuple[str, ...]:
    seen = set(dataset.labels())
    if seen <= set(ALL_CLASSES):
        return ALL_CLASSES
    return tuple(sorted(seen))


def evaluate(tree: DecisionTree, dataset: Dataset, labels=None) -> EvalReport:
    labels = tuple(labels) if labels is not None else _label_universe(dataset)
    index = {label: i for i, label in enumerate(labels)}
    confusion = [[0] * len(labels) for _ in labels]
    for values, gold in dataset.rows:
        predicted = argmax_label(predict(tree, values))
        confusion[index[gold]][index[predicted]] += 1
    return metrics(confusion, labels)


def fold_assignment(dataset: Dataset, k: int, seed: int) -> list[list[int]]:
    """Stratified-by-class partition of row indices into k folds."""
    groups: dict[str, list[int]] = {}
    for i, (_, label) in enumerate(dataset.rows):
        groups.setdefault(label, []).append(i)
    rng = random.Random(seed)
    folds: list[list[int]] = [[] for _ in range(k)]
    next_fold = 0
    for label in sorted(groups):
        indices = groups[label]
        rng.shuffle(indices)
        for idx in indices:
            folds[next_fold].append(idx)
            next_fold = (next_fold + 1) % k
    return folds


@dataclass(frozen=True)
class CrossValResult:
    folds: tuple[EvalReport, ...]
    pooled: EvalReport

    @property
    def fold_accuracies(self) -> list[float]:
        return [r.accuracy for r in self.folds]


def cross_validate(dataset: Dataset, k: int, params: TreeParams = TreeParams(),
                   seed: int = 0) -> CrossValResult:
    if k < 2:
        raise ValueError("k must be >= 2")
    if len(dataset) < k:
        raise ValueError("dataset smaller than fold count")
    labels = _label_universe(dataset)
    index = {label: i for i, label in enumerate(labels)}
    assignment = fold_assignment(dataset, k, seed)
    reports = []
    pooled = [[0] * len(labels) for _ in labels]
    for fold in assignment:
        test_set = set(fold)
        train_rows = [row for i, row in enumerate(dataset.rows) if i not in test_set]
        tree = train_tree(dataset.with_rows(train_rows), params)
        confusion = [[0] * len(labels) for _ in labels]
        for i in fold:
            values, gold = dataset.rows[i]
            predicted = argmax_label(predict(tree, values))
            confusion[index[gold]][index[predicted]] += 1
            pooled[index[gold]][index[predicted]] += 1
        reports.append(metrics(confusion, labels))
    return CrossValResult(tuple(reports), metrics(pooled, labels))


# ---------------------------------------------------------------------------
# Student's t distribution (regularized incomplete beta, Lentz's algorithm)

def _betacf(a: float, b: float, x: float) -> float:
    tiny = 1e-300
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < tiny:
        d = tiny
    d = 1.0 / d
    h = d
    for m in range(1, 300):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-14:
            break
    return h


def _betai(a: float, b: float, x: float) -> float:
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    ln_front = (math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
                + a * math.log(x) + b * math.log(1.0 - x))
    front = math.exp(ln_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def t_two_tailed_p(t: float, df: int) -> float:
    """Two-tailed p-value of a t statistic with df degrees of freedom."""
    if df < 1:
        raise ValueError("degrees of freedom must be >= 1")
    if math.isinf(t):
        return 0.0
    return _betai(df / 2.0, 0.5, df / (df + t * t))


def paired_t_test(a: list[float], b: list[float]) -> tuple[float, float]:
    """Paired Student's t-test over two matched samples.

    Returns (t, p).  Degenerate cases: identical samples give (0, 1);
    constant nonzero differences give an infinite t with p = 0.
    """
    if len(a) != len(b):
        raise ValueError("samples must be paired")
    n = len(a)
    if n < 2:
        raise ValueError("need at least two pairs")
    deltas = [x - y for x, y in zip(a, b)]
    mean = sum(deltas) / n
    ss = sum((d - mean) ** 2 for d in deltas)
    if ss == 0.0:
        if mean == 0.0:
            return 0.0, 1.0
        return math.copysign(math.inf, mean), 0.0
    t = mean / math.sqrt(ss / (n * (n - 1)))
    return t, t_two_tailed_p(t, n - 1)


# ---------------------------------------------------------------------------
# Report rendering

def report_table(report: EvalReport, skip_empty: bool = True) -> str:
    lines = ["%-12s %9s %9s %9s" % ("Class", "Precision", "Recall", "F1")]
    for i, label in enumerate(report.labels):
        actual = sum(report.confusion[i])
        predicted = sum(row[i] for row in report.confusion)
        if skip_empty and actual == 0 and predicted == 0:
            continue
        prec, rec, f1 = report.per_class[label]
        lines.append("%-12s %9.3f %9.3f %9.3f" % (label, prec, rec, f1))
    prec, rec, f1 = report.weighted
    lines.append("%-12s %9.3f %9.3f %9.3f" % ("weighted avg", prec, rec, f1))
    lines.append("accuracy %.4f over %d instances" % (report.accuracy, report.instance_count))
    return "\n".join(lines)


def report_csv(report: EvalReport) -> str:
    lines = ["class,precision,recall,f1"]
    for label in report.labels:
        prec, rec, f1 = report.per_class[label]
        lines.append("%s,%.6f,%.6f,%.6f" % (label, prec, rec, f1))
    prec, rec, f1 = report.weighted
    lines.append("weighted,%.6f,%.6f,%.6f" % (prec, rec, f1))
    lines.append("accuracy,%.6f,," % report.accuracy)
    return "\n".join(lines) + "\n"
