"""Command-line experiment runner.

Subcommands: augment (write the premise/statement pair file), run (train,
tune the decision threshold on validation, evaluate on test), sweep-k
(statement-subsampling experiment over k = 1..10), evaluate (score a
prediction file against gold labels). Configuration is a flat key = value
text file; command-line flags override file values. Every command is
deterministic given (config, seed): two runs produce byte-identical
artifacts.

Exit codes: 0 success, 2 input/schema problem, 3 scorer backend problem,
4 evaluation alignment problem.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import hashlib
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional, Sequence

from valuenli import aggregate, augment, corpus, metrics, statements
from valuenli.aggregate import AggregationMode, ThresholdConfig
from valuenli.errors import (
    AlignmentError,
    ConnectError,
    DataValueError,
    ProtocolError,
    ReadinessError,
    ValueNliError,
)
from valuenli.scorer import TrainConfig, connect_external, train_baseline

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_BACKEND = 3
EXIT_ALIGNMENT = 4

_BACKEND_ERRORS = (ConnectError, ProtocolError, ReadinessError)


@dataclass(frozen=True)
class ExperimentConfig:
    arguments_path: Optional[Path] = None
    labels_path: Optional[Path] = None
    statements_path: Optional[Path] = None
    split_dir: Optional[Path] = None
    source: str = "both"
    weighted_loss: bool = False
    scorer: str = "baseline"
    endpoint: Optional[str] = None
    mode: str = AggregationMode.BINARIZE_THEN_MEAN.value
    grid: tuple[float, ...] = aggregate.DEFAULT_GRID
    sample_k: Optional[int] = None
    sample_seed: Optional[int] = None  # defaults to seed; the k-sweep derives one per k
    seed: int = 0
    max_epochs: int = 5
    batch_size: int = 128
    patience: int = 10
    eval_every: int = 50
    learning_rate: float = 0.1
    out_dir: Path = field(default_factory=lambda: Path("out"))

    def train_config(self) -> TrainConfig:
        return TrainConfig(
            max_epochs=self.max_epochs,
            batch_size=self.batch_size,
            weighted_loss=self.weighted_loss,
            patience=self.patience,
            eval_every=self.eval_every,
            seed=self.seed,
            learning_rate=self.learning_rate,
        )

    def aggregation_mode(self) -> AggregationMode:
        try:
            return AggregationMode(self.mode)
        except ValueError:
            raise DataValueError(f"unknown aggregation mode {self.mode!r}") from None

    def run_name(self) -> str:
        parts = [self.scorer, self.source, "w" if self.weighted_loss else "uw"]
        if self.sample_k is not None:
            parts.append(f"k{self.sample_k}")
        return "-".join(parts)


_BOOL_VALUES = {
    "true": True,
    "false": False,
    "yes": True,
    "no": False,
    "1": True,
    "0": False,
}

_PATH_KEYS = {"arguments", "labels", "statements", "split_dir", "out"}
_CONFIG_KEYS = _PATH_KEYS | {
    "source",
    "weighted_loss",
    "scorer",
    "endpoint",
    "mode",
    "grid",
    "sample_k",
    "seed",
    "max_epochs",
    "batch_size",
    "patience",
    "eval_every",
    "learning_rate",
}


def parse_config_file(path) -> dict[str, str]:
    """Flat key = value lines; # starts a comment."""
    values = {}
    for number, raw in enumerate(
        Path(path).read_text(encoding="utf-8").splitlines(), start=1
    ):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise DataValueError(f"{path}:{number}: expected 'key = value'")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _CONFIG_KEYS:
            raise DataValueError(f"{path}:{number}: unknown config key {key!r}")
        values[key] = value
    return values


def _parse_bool(value: str, key: str) -> bool:
    try:
        return _BOOL_VALUES[value.lower()]
    except KeyError:
        raise DataValueError(f"config {key}: expected true/false, got {value!r}") from None


def build_config(args: argparse.Namespace) -> ExperimentConfig:
    values: dict[str, str] = {}
    base_dir = Path(".")
    if getattr(args, "config", None):
        config_path = Path(args.config)
        values = parse_config_file(config_path)
        base_dir = config_path.parent

    def path_of(key):
        if key not in values:
            return None
        return (base_dir / values[key]).resolve()

    config = ExperimentConfig(
        arguments_path=path_of("arguments"),
        labels_path=path_of("labels"),
        statements_path=path_of("statements"),
        split_dir=path_of("split_dir"),
    )
    if "out" in values:
        config = replace(config, out_dir=(base_dir / values["out"]).resolve())
    if "source" in values:
        config = replace(config, source=values["source"])
    if "weighted_loss" in values:
        config = replace(
            config, weighted_loss=_parse_bool(values["weighted_loss"], "weighted_loss")
        )
    if "scorer" in values:
        config = replace(config, scorer=values["scorer"])
    if "endpoint" in values:
        config = replace(config, endpoint=values["endpoint"])
    if "mode" in values:
        config = replace(config, mode=values["mode"])
    if "grid" in values:
        try:
            grid = tuple(float(v) for v in values["grid"].split(","))
        except ValueError:
            raise DataValueError(f"config grid: bad float in {values['grid']!r}") from None
        config = replace(config, grid=grid)
    for key, cast in (
        ("sample_k", int),
        ("seed", int),
        ("max_epochs", int),
        ("batch_size", int),
        ("patience", int),
        ("eval_every", int),
        ("learning_rate", float),
    ):
        if key in values:
            try:
                config = replace(config, **{key: cast(values[key])})
            except ValueError:
                raise DataValueError(
                    f"config {key}: expected {cast.__name__}, got {values[key]!r}"
                ) from None

    # Flag overrides.
    if getattr(args, "seed", None) is not None:
        config = replace(config, seed=args.seed)
    if getattr(args, "scorer", None):
        config = replace(config, scorer=args.scorer)
    if getattr(args, "endpoint", None):
        config = replace(config, endpoint=args.endpoint)
    if getattr(args, "source", None):
        config = replace(config, source=args.source)
    if getattr(args, "sample_k", None) is not None:
        config = replace(config, sample_k=args.sample_k)
    if getattr(args, "out", None):
        config = replace(config, out_dir=Path(args.out))

    if config.scorer not in ("baseline", "external"):
        raise DataValueError(f"scorer must be baseline or external, got {config.scorer!r}")
    if config.source not in ("annotation", "survey", "both"):
        raise DataValueError(
            f"source must be annotation, survey or both, got {config.source!r}"
        )
    if config.sample_k is not None and config.sample_k < 1:
        raise DataValueError("sample_k must be >= 1")
    return config


def derive_seed(seed: int, tag: str) -> int:
    """Deterministic child seed for independent sub-experiments."""
    digest = hashlib.blake2b(f"{seed}:{tag}".encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def _require(path: Optional[Path], what: str) -> Path:
    if path is None:
        raise DataValueError(f"config is missing the {what} path")
    if not Path(path).exists():
        raise FileNotFoundError(f"{what} file not found: {path}")
    return Path(path)


def _load_bank(config: ExperimentConfig) -> statements.StatementBank:
    bank = statements.load_statements(_require(config.statements_path, "statements"))
    bank = statements.filter_by_source(bank, config.source)
    if config.sample_k is not None:
        seed = config.sample_seed if config.sample_seed is not None else config.seed
        bank = statements.sample_statements(bank, config.sample_k, seed)
    return bank


def _load_corpus(config: ExperimentConfig, need_labels: bool):
    arguments = corpus.parse_arguments(_require(config.arguments_path, "arguments"))
    labels = None
    if config.labels_path is not None or need_labels:
        labels = corpus.parse_labels(_require(config.labels_path, "labels"))
    return arguments, labels


def _split(config: ExperimentConfig, arguments) -> corpus.DatasetSplit:
    ids = [arg.id for arg in arguments]
    if config.split_dir is not None:
        split = corpus.read_split_files(config.split_dir)
        corpus.check_split_covers(split, ids)
        return split
    return corpus.split_dataset(ids, corpus.DEFAULT_FRACTIONS, config.seed)


def cmd_augment(config: ExperimentConfig) -> int:
    arguments, labels = _load_corpus(config, need_labels=False)
    bank = _load_bank(config)
    config.out_dir.mkdir(parents=True, exist_ok=True)
    pairs_path = config.out_dir / "pairs.tsv"

    balance = {augment.Gold.ENTAILMENT: 0, augment.Gold.NOT_ENTAILMENT: 0, None: 0}

    def counted():
        for instance in augment.generate_pairs(arguments, bank, labels):
            balance[instance.gold] += 1
            yield instance

    written = augment.write_pairs(counted(), pairs_path)
    expected = augment.pair_count(len(arguments), bank)
    print(f"statements: {len(bank)}")
    print(f"arguments: {len(arguments)}")
    print(f"pairs written: {written} (expected {expected}) -> {pairs_path}")
    if labels is not None:
        total = max(written, 1)
        n_entail = balance[augment.Gold.ENTAILMENT]
        print(
            f"gold balance: entailment {n_entail} ({n_entail / total:.4f}), "
            f"not-entailment {balance[augment.Gold.NOT_ENTAILMENT]}"
        )
    return EXIT_OK


def _train_scorer(config, train_args, val_args, labels, bank):
    if config.scorer == "external":
        if not config.endpoint:
            raise DataValueError("scorer=external requires an endpoint")
        config.out_dir.mkdir(parents=True, exist_ok=True)
        train_path = config.out_dir / "pairs.train.tsv"
        val_path = config.out_dir / "pairs.validation.tsv"
        augment.write_pairs(augment.generate_pairs(train_args, bank, labels), train_path)
        augment.write_pairs(augment.generate_pairs(val_args, bank, labels), val_path)
        scorer = connect_external(config.endpoint)
        hyperparams = {
            "max_epochs": config.max_epochs,
            "batch_size": config.batch_size,
            "weighted_loss": config.weighted_loss,
            "patience": config.patience,
            "eval_every": config.eval_every,
            "seed": config.seed,
            "learning_rate": config.learning_rate,
        }
        best = scorer.train(str(train_path), str(val_path), hyperparams)
        print(f"external training done, best validation loss {best:.6f}")
        return scorer
    scorer = train_baseline(
        augment.generate_pairs(train_args, bank, labels),
        config.train_config(),
        augment.generate_pairs(val_args, bank, labels),
    )
    history = scorer.history
    print(
        f"baseline training done: {history.steps_run} steps, best validation "
        f"loss {history.best_val_loss:.6f} at step {history.best_step}"
        + (" (early stop)" if history.stopped_early else "")
    )
    return scorer


def run_experiment(config: ExperimentConfig, scorer=None):
    """Full pipeline: train (unless a scorer is injected), tune the decision
    threshold on validation, evaluate the test split.

    Returns (threshold search, test report, 1-baseline report, predictions,
    test labels).
    """
    arguments, labels = _load_corpus(config, need_labels=True)
    bank = _load_bank(config)
    bank.require_full_coverage()
    split = _split(config, arguments)

    train_args = corpus.select(arguments, split.train)
    val_args = corpus.select(arguments, split.validation)
    test_args = corpus.select(arguments, split.test)
    owned_scorer = None
    if scorer is None:
        scorer = owned_scorer = _train_scorer(config, train_args, val_args, labels, bank)

    try:
        mode = config.aggregation_mode()
        val_means = {}
        for arg in val_args:
            for category, mean in aggregate.category_means(
                arg.premise, bank, scorer, mode
            ).items():
                val_means[(arg.id, category)] = mean
        val_ids = {arg.id for arg in val_args}
        search = aggregate.tune_threshold(
            val_means, [row for row in labels if row.argument_id in val_ids], config.grid
        )

        threshold_config = ThresholdConfig(
            grid=tuple(config.grid), chosen=search.chosen, mode=mode
        )
        predictions = [
            corpus.ValueLabels(
                arg.id,
                tuple(
                    aggregate.predict_argument(arg.premise, bank, scorer, threshold_config)
                ),
            )
            for arg in test_args
        ]
    finally:
        if owned_scorer is not None and hasattr(owned_scorer, "close"):
            owned_scorer.close()
    test_ids = {arg.id for arg in test_args}
    test_labels = [row for row in labels if row.argument_id in test_ids]
    report = metrics.evaluate_labels(predictions, test_labels)
    baseline_report = metrics.one_baseline(test_labels)
    return search, report, baseline_report, predictions, test_labels


def cmd_run(config: ExperimentConfig) -> int:
    search, report, baseline_report, predictions, _ = run_experiment(config)
    config.out_dir.mkdir(parents=True, exist_ok=True)

    corpus.write_labels(predictions, config.out_dir / "predictions.tsv")
    metrics.write_report(
        [(config.run_name(), report), ("1-Baseline", baseline_report)],
        config.out_dir / "report.tsv",
    )
    print("threshold search (threshold -> validation macro F1):")
    for threshold, score in search.table:
        print(f"  {threshold:.1f}\t{score:.4f}")
    print(f"chosen threshold: {search.chosen:.1f}")
    print(f"test macro F1 (own): {report.macro_own:.4f}")
    print(f"test macro F1 (official): {report.macro_official:.4f}")
    print(f"artifacts in {config.out_dir}")
    return EXIT_OK


def _sweep_one(config: ExperimentConfig, k: int):
    # Split and training keep the base seed; only the statement draw varies
    # per k, with an independent derived stream.
    run_config = replace(
        config, sample_k=k, sample_seed=derive_seed(config.seed, f"k={k}")
    )
    search, report, _, _, _ = run_experiment(run_config)
    return (
        k,
        20 * k,
        search.chosen,
        report.macro_own,
        report.macro_official,
    )


def cmd_sweep_k(config: ExperimentConfig, jobs: int = 1, k_max: int = 10) -> int:
    ks = list(range(1, k_max + 1))
    if jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_sweep_one, [config] * len(ks), ks))
    else:
        rows = [_sweep_one(config, k) for k in ks]
    rows.sort(key=lambda row: row[0])

    config.out_dir.mkdir(parents=True, exist_ok=True)
    sweep_path = config.out_dir / "sweep.tsv"
    with open(sweep_path, "w", encoding="utf-8", newline="\n") as out:
        out.write("k\tstatements\tthreshold\tmacro_own\tmacro_official\n")
        for k, n_statements, threshold, own, official in rows:
            out.write(
                f"{k}\t{n_statements}\t{threshold:.1f}\t{own:.4f}\t{official:.4f}\n"
            )
    plot_path = config.out_dir / "sweep_plot.tsv"
    with open(plot_path, "w", encoding="utf-8", newline="\n") as out:
        out.write("series\tk\tmacro_f1\n")
        for k, _, _, own, _ in rows:
            out.write(f"own\t{k}\t{own:.4f}\n")
        for k, _, _, _, official in rows:
            out.write(f"official\t{k}\t{official:.4f}\n")

    for k, n_statements, threshold, own, official in rows:
        print(f"k={k}: statements={n_statements} threshold={threshold:.1f} "
              f"own={own:.4f} official={official:.4f}")
    print(f"wrote {sweep_path} and {plot_path}")
    return EXIT_OK


def cmd_evaluate(preds_path, golds_path, out_dir: Path) -> int:
    preds = corpus.parse_labels(_require(Path(preds_path), "predictions"))
    golds = corpus.parse_labels(_require(Path(golds_path), "gold labels"))
    report = metrics.evaluate_labels(preds, golds)
    baseline_report = metrics.one_baseline(golds)
    rows = [("predictions", report), ("1-Baseline", baseline_report)]
    out_dir.mkdir(parents=True, exist_ok=True)
    metrics.write_report(rows, out_dir / "report.tsv")
    sys.stdout.write(metrics.render_report(rows))
    print(f"macro F1 (own): {report.macro_own:.4f}")
    print(f"macro F1 (official): {report.macro_official:.4f}")
    return EXIT_OK


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="flat key = value experiment config file")
    parser.add_argument("--seed", type=int, help="seed override")
    parser.add_argument(
        "--scorer", choices=("baseline", "external"), help="scorer backend"
    )
    parser.add_argument(
        "--endpoint", help="external scorer endpoint: HOST:PORT or stdio:COMMAND"
    )
    parser.add_argument(
        "--source", choices=("annotation", "survey", "both"), help="statement sources"
    )
    parser.add_argument(
        "--sample-k", type=int, dest="sample_k",
        help="sample k statements per category (with replacement)",
    )
    parser.add_argument("--out", help="output directory for artifacts")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="valuenli",
        description="Detect human values in arguments by pairing premises with "
        "definitional statements in an entailment setup.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_augment = sub.add_parser("augment", help="write the premise/statement pair file")
    _add_common_flags(p_augment)

    p_run = sub.add_parser("run", help="train, tune threshold, evaluate test split")
    _add_common_flags(p_run)

    p_sweep = sub.add_parser(
        "sweep-k", help="run the k = 1..10 statement-sampling sweep"
    )
    _add_common_flags(p_sweep)
    p_sweep.add_argument("--jobs", type=int, default=1, help="parallel sweep runs")
    p_sweep.add_argument(
        "--k-max", type=int, default=10, dest="k_max", help="largest k to sweep"
    )

    p_eval = sub.add_parser("evaluate", help="score predictions against gold labels")
    p_eval.add_argument("preds", help="predictions file (labels.tsv schema)")
    p_eval.add_argument("golds", help="gold labels file")
    p_eval.add_argument("--out", help="output directory for report.tsv")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "evaluate":
            return cmd_evaluate(args.preds, args.golds, Path(args.out or "out"))
        config = build_config(args)
        if args.command == "augment":
            return cmd_augment(config)
        if args.command == "run":
            return cmd_run(config)
        if args.command == "sweep-k":
            return cmd_sweep_k(config, jobs=args.jobs, k_max=args.k_max)
        raise DataValueError(f"unknown command {args.command!r}")
    except _BACKEND_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BACKEND
    except AlignmentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ALIGNMENT
    except (ValueNliError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
