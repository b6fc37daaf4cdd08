"""Command-line entry points: train, eval, crossval, tune, al, resolve, serve, synth."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .active import al_loop, curve_to_csv, gold_oracle, pool_from_records, \
    split_records
from .bundled import bundled_corpus, data_path, load_corpus_dir
from .config import Config, DEFAULT_CONFIG, load_config
from .corpus import CorpusError
from .evaluate import cross_validate, evaluate, paired_t_test, report_csv, report_table
from .features import BASELINE, EXTENDED
from .optimize import coordinate_ascent
from .ruleset import load_rules
from .session import Session, load_script, replay
from .tree import (EmptyDatasetError, TreeParams, dataset_from_corpus,
                   load_tree, serialize_tree, train_tree)


class CliError(Exception):
    pass


def _config(args) -> Config:
    if getattr(args, "config", None):
        return load_config(args.config)
    return DEFAULT_CONFIG


def _corpus(args, config):
    if getattr(args, "corpus", None):
        store, records = load_corpus_dir(args.corpus)
    else:
        store, records = bundled_corpus()
    if not records:
        raise CliError("corpus has no NSU records")
    return store, records


def _params(args) -> TreeParams:
    confidence = None if getattr(args, "no_prune", False) else args.c
    return TreeParams(min_leaf=args.m, confidence=confidence)


def _dataset(args, config):
    store, records = _corpus(args, config)
    try:
        return dataset_from_corpus(store, records, args.schema, config)
    except EmptyDatasetError as exc:
        raise CliError(str(exc)) from exc


def cmd_train(args) -> int:
    config = _config(args)
    dataset = _dataset(args, config)
    tree = train_tree(dataset, _params(args))
    Path(args.out).write_text(serialize_tree(tree), encoding="utf-8")
    print("trained %s model on %d instances -> %s" % (args.schema, len(dataset), args.out))
    return 0


def cmd_eval(args) -> int:
    config = _config(args)
    tree = load_tree(Path(args.model).read_text(encoding="utf-8"))
    schema_names = [name for name, _ in tree.schema]
    args.schema = EXTENDED if len(schema_names) > 9 else BASELINE
    dataset = _dataset(args, config)
    report = evaluate(tree, dataset)
    print(report_table(report))
    if args.csv:
        Path(args.csv).write_text(report_csv(report), encoding="utf-8")
        print("report CSV -> %s" % args.csv)
    return 0


def cmd_crossval(args) -> int:
    config = _config(args)
    dataset = _dataset(args, config)
    result = cross_validate(dataset, args.k, _params(args), args.seed)
    print("=== %d-fold cross-validation (%s schema, seed %d) ===" %
          (args.k, args.schema, args.seed))
    print(report_table(result.pooled))
    if args.csv:
        Path(args.csv).write_text(report_csv(result.pooled), encoding="utf-8")
        print("report CSV -> %s" % args.csv)
    if args.compare_schema:
        other = argparse.Namespace(**vars(args))
        other.schema = args.compare_schema
        other_ds = _dataset(other, config)
        other_result = cross_validate(other_ds, args.k, _params(args), args.seed)
        t, p = paired_t_test(result.fold_accuracies, other_result.fold_accuracies)
        print("--- paired t-test vs %s schema over %d folds ---"
              % (args.compare_schema, args.k))
        print("mean acc %.4f vs %.4f | t = %.4f, p = %.6f" % (
            sum(result.fold_accuracies) / args.k,
            sum(other_result.fold_accuracies) / args.k, t, p))
    return 0


def cmd_tune(args) -> int:
    config = _config(args)
    dataset = _dataset(args, config)

    def objective(x) -> float:
        c, m = x[0], x[1]
        if not 0 < c <= 1 or m < 1:
            return float("-inf")
        params = TreeParams(min_leaf=int(round(m)), confidence=c)
        return cross_validate(dataset, args.k, params, args.seed).pooled.accuracy

    trajectory: list = []
    best = coordinate_ascent(objective, [args.init_c, args.init_m],
                             deltas=[args.delta_c, args.delta_m],
                             mins=[args.min_step, args.min_step],
                             alpha=args.alpha, trace=trajectory)
    for point, score in trajectory:
        print("C=%.4f M=%.1f -> accuracy %.4f" % (point[0], point[1], score))
    print("best: C=%.4f M=%d accuracy %.4f" %
          (best[0], int(round(best[1])), objective(best)))
    return 0


def cmd_al(args) -> int:
    config = _config(args)
    store, records = _corpus(args, config)
    train_recs, dev_recs, pool_recs = split_records(records, args.seed, config)
    train = dataset_from_corpus(store, train_recs, args.schema, config)
    dev = dataset_from_corpus(store, dev_recs, args.schema, config)
    pool = pool_from_records(store, pool_recs, args.schema, config)
    final, curve = al_loop(train, dev, pool, gold_oracle,
                           budget=args.budget, batch=args.batch,
                           params=_params(args))
    csv_text = curve_to_csv(curve)
    if args.curve:
        Path(args.curve).write_text(csv_text, encoding="utf-8")
        print("learning curve -> %s" % args.curve)
    else:
        print(csv_text, end="")
    print("labeled %d instances; dev accuracy %.4f -> %.4f" % (
        curve[-1].labeled_count - curve[0].labeled_count,
        curve[0].accuracy, curve[-1].accuracy))
    return 0


def cmd_export(args) -> int:
    config = _config(args)
    store, records = _corpus(args, config)
    from .features import extract, matrix_to_csv

    vectors, labels = [], []
    for rec in records:
        nsu, ant = store.resolve(rec)
        vectors.append(extract(nsu, ant, args.schema, config))
        labels.append(rec.label)
    Path(args.out).write_text(matrix_to_csv(vectors, labels), encoding="utf-8")
    print("wrote %d feature rows (%s schema) -> %s" % (len(labels), args.schema, args.out))
    return 0


def cmd_resolve(args) -> int:
    config = _config(args)
    ruleset = load_rules(args.rules, config)
    script_path = args.script or data_path("scripts", "flightbooking.txt")
    script = load_script(script_path)
    session = Session(ruleset=ruleset, config=config)
    snapshots = replay(session, script)
    out_dir = Path(args.out) if args.out else None
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)
    for i, (line, snap) in enumerate(zip(script, snapshots), start=1):
        print("--- step %02d [%s] %s" % (i, line.speaker, line.text))
        print(snap, end="")
        if out_dir:
            (out_dir / ("step%02d.txt" % i)).write_text(snap, encoding="utf-8")
    if out_dir:
        print("snapshots -> %s" % out_dir)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    config = _config(args)
    ruleset = load_rules(args.rules, config) if args.rules else None
    app = create_app(config, ruleset, seed=args.seed, log_dir=args.log_dir)
    print("serving on http://%s:%d" % (args.host, args.port), flush=True)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def cmd_synth(args) -> int:
    from .synth import write_corpus

    n_files, n_records = write_corpus(args.out, seed=args.seed, files=args.files)
    print("wrote %d transcripts and %d records -> %s" % (n_files, n_records, args.out))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nsukit",
        description="Classify and resolve non-sentential utterances.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, schema=True, params=True):
        p.add_argument("--corpus", help="corpus directory (default: bundled fixtures)")
        p.add_argument("--config", help="TOML config file")
        if schema:
            p.add_argument("--schema", choices=[BASELINE, EXTENDED],
                           default=EXTENDED, help="feature schema")
        if params:
            p.add_argument("--m", type=int, default=2, help="min instances per leaf")
            p.add_argument("--c", type=float, default=0.25, help="pruning confidence")
            p.add_argument("--no-prune", action="store_true", help="disable pruning")

    p = sub.add_parser("train", help="train a decision tree and write the model file")
    common(p)
    p.add_argument("--out", required=True, help="model file path")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("eval", help="evaluate a model file on a corpus")
    common(p, schema=False, params=False)
    p.add_argument("--model", required=True)
    p.add_argument("--csv", help="write the report as CSV")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("crossval", help="stratified k-fold cross-validation")
    common(p)
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", help="write the pooled report as CSV")
    p.add_argument("--compare-schema", choices=[BASELINE, EXTENDED],
                   help="second schema to compare with a paired t-test")
    p.set_defaults(func=cmd_crossval)

    p = sub.add_parser("tune", help="coordinate-ascent search over C and M")
    common(p, params=False)
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--init-c", type=float, default=0.25)
    p.add_argument("--init-m", type=float, default=2.0)
    p.add_argument("--delta-c", type=float, default=0.2)
    p.add_argument("--delta-m", type=float, default=4.0)
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--min-step", type=float, default=1e-2)
    p.set_defaults(func=cmd_tune)

    p = sub.add_parser("al", help="active-learning loop against the gold oracle")
    common(p)
    p.add_argument("--budget", type=int, default=50)
    p.add_argument("--batch", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--curve", help="write the learning curve CSV here")
    p.set_defaults(func=cmd_al)

    p = sub.add_parser("export", help="write the feature matrix as CSV")
    common(p, params=False)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("resolve", help="replay a scripted transcript through the rules")
    p.add_argument("--script", help="script file (default: bundled walkthrough)")
    p.add_argument("--rules", help="rules JSON file (default: bundled)")
    p.add_argument("--config", help="TOML config file")
    p.add_argument("--out", help="directory for per-step snapshots")
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("serve", help="run the HTTP session/annotation service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8123)
    p.add_argument("--rules", help="rules JSON file")
    p.add_argument("--config", help="TOML config file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--log-dir", help="dump per-session turn logs here on shutdown")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("synth", help="regenerate the synthetic corpus")
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--files", type=int, default=60)
    p.set_defaults(func=cmd_synth)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, CorpusError, OSError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
