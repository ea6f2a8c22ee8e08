"""CLI commands: config handling, exit codes, artifacts, determinism."""

import pytest

from conftest import (
    ConstantScorer,
    build_reference_shaped_bank,
    labels_for,
    write_fixture_files,
)

from valuenli import cli
from valuenli.categories import CATEGORIES
from valuenli.cli import ExperimentConfig, build_config, parse_config_file, run_experiment
from valuenli.corpus import parse_labels, write_labels
from valuenli.errors import DataValueError
from valuenli.metrics import one_baseline
from valuenli.statements import write_statements


def write_config(path, **values):
    lines = ["# test config"]
    for key, value in values.items():
        lines.append(f"{key} = {value}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


@pytest.fixture
def fixture_dir(tmp_path):
    paths, fx = write_fixture_files(tmp_path, n_arguments=60, statements_per_category=2)
    return tmp_path, paths, fx


class TestConfig:
    def test_parse_and_resolve_paths(self, fixture_dir):
        tmp_path, paths, _ = fixture_dir
        config_path = write_config(
            tmp_path / "exp.cfg",
            arguments="arguments.tsv",
            labels="labels.tsv",
            statements="statements.tsv",
            seed=3,
            weighted_loss="true",
            max_epochs=7,
        )
        values = parse_config_file(config_path)
        assert values["seed"] == "3"
        args = cli.build_parser().parse_args(["run", "--config", str(config_path)])
        config = build_config(args)
        assert config.arguments_path == paths["arguments"].resolve()
        assert config.seed == 3
        assert config.weighted_loss is True
        assert config.max_epochs == 7

    def test_flag_overrides_file(self, fixture_dir):
        tmp_path, _, _ = fixture_dir
        config_path = write_config(
            tmp_path / "exp.cfg",
            arguments="arguments.tsv",
            labels="labels.tsv",
            statements="statements.tsv",
            seed=3,
            source="survey",
        )
        args = cli.build_parser().parse_args(
            ["run", "--config", str(config_path), "--seed", "9", "--source", "annotation"]
        )
        config = build_config(args)
        assert config.seed == 9
        assert config.source == "annotation"

    def test_unknown_key_rejected(self, tmp_path):
        config_path = write_config(tmp_path / "exp.cfg", sample_q=3)
        with pytest.raises(DataValueError, match="sample_q"):
            parse_config_file(config_path)


class TestAugmentCommand:
    def test_ten_by_twelve_demo(self, tmp_path):
        # 10 arguments x 12 statements -> 120 pairs.
        paths, fx = write_fixture_files(tmp_path, n_arguments=10, statements_per_category=2)
        twelve = [s for s in fx.bank if s.category.index < 6]
        write_statements(type(fx.bank)(twelve), paths["statements"])
        config_path = write_config(
            tmp_path / "exp.cfg",
            arguments="arguments.tsv",
            statements="statements.tsv",
            out="out",
        )
        code = cli.main(["augment", "--config", str(config_path)])
        assert code == 0
        pairs_text = (tmp_path / "out" / "pairs.tsv").read_text()
        assert pairs_text.count("\n") == 121  # header + 120 pairs

    def test_labeled_summary(self, tmp_path, capsys):
        write_fixture_files(tmp_path, n_arguments=10, statements_per_category=2)
        config_path = write_config(
            tmp_path / "exp.cfg",
            arguments="arguments.tsv",
            labels="labels.tsv",
            statements="statements.tsv",
            out="out",
        )
        assert cli.main(["augment", "--config", str(config_path)]) == 0
        out = capsys.readouterr().out
        assert "pairs written: 400" in out
        assert "gold balance" in out

    def test_source_filter_reports_annotation_count(self, tmp_path, capsys):
        paths, _ = write_fixture_files(tmp_path, n_arguments=4)
        write_statements(build_reference_shaped_bank(), paths["statements"])
        config_path = write_config(
            tmp_path / "exp.cfg",
            arguments="arguments.tsv",
            labels="labels.tsv",
            statements="statements.tsv",
            source="annotation",
            out="out",
        )
        assert cli.main(["augment", "--config", str(config_path)]) == 0
        assert "statements: 294" in capsys.readouterr().out

    def test_missing_labels_file_names_path(self, tmp_path, capsys):
        write_fixture_files(tmp_path, n_arguments=4)
        (tmp_path / "labels.tsv").unlink()
        config_path = write_config(
            tmp_path / "exp.cfg",
            arguments="arguments.tsv",
            labels="labels.tsv",
            statements="statements.tsv",
            out="out",
        )
        code = cli.main(["augment", "--config", str(config_path)])
        assert code == 2
        assert "labels.tsv" in capsys.readouterr().err


def run_config(tmp_path, **extra):
    values = dict(
        arguments="arguments.tsv",
        labels="labels.tsv",
        statements="statements.tsv",
        out="out",
        seed=1,
        max_epochs=20,
    )
    values.update(extra)
    return write_config(tmp_path / "exp.cfg", **values)


class TestRunCommand:
    def test_end_to_end_and_determinism(self, fixture_dir):
        tmp_path, _, _ = fixture_dir
        config_path = run_config(tmp_path)
        assert cli.main(["run", "--config", str(config_path)]) == 0
        out_dir = tmp_path / "out"
        first_report = (out_dir / "report.tsv").read_bytes()
        first_preds = (out_dir / "predictions.tsv").read_bytes()
        lines = first_report.decode().strip().split("\n")
        assert len(lines) == 3  # header + run row + 1-Baseline row
        assert lines[1].split("\t")[0] == "baseline-both-uw"

        assert cli.main(["run", "--config", str(config_path)]) == 0
        assert (out_dir / "report.tsv").read_bytes() == first_report
        assert (out_dir / "predictions.tsv").read_bytes() == first_preds

    def test_predictions_parse_as_labels(self, fixture_dir):
        tmp_path, _, _ = fixture_dir
        config_path = run_config(tmp_path)
        assert cli.main(["run", "--config", str(config_path)]) == 0
        rows = parse_labels(tmp_path / "out" / "predictions.tsv")
        assert rows and all(len(row.labels) == 20 for row in rows)

    def test_constant_one_scorer_matches_one_baseline(self, fixture_dir):
        tmp_path, paths, _ = fixture_dir
        config = ExperimentConfig(
            arguments_path=paths["arguments"],
            labels_path=paths["labels"],
            statements_path=paths["statements"],
            seed=1,
        )
        _, report, _, _, test_labels = run_experiment(config, scorer=ConstantScorer(1.0))
        expected = one_baseline(test_labels)
        assert report.macro_own == expected.macro_own
        assert report.macro_official == expected.macro_official
        assert report.per_category == expected.per_category

    def test_external_unreachable_exits_3(self, fixture_dir, capsys):
        tmp_path, _, _ = fixture_dir
        config_path = run_config(tmp_path, scorer="external", endpoint="127.0.0.1:9")
        code = cli.main(["run", "--config", str(config_path)])
        assert code == 3
        assert "error" in capsys.readouterr().err


class TestSweepCommand:
    def test_mechanics(self, fixture_dir, monkeypatch):
        tmp_path, _, _ = fixture_dir
        sampled_sizes = []
        import valuenli.statements as statements_module

        original = statements_module.sample_statements

        def recording(bank, k, seed):
            sampled = original(bank, k, seed)
            sampled_sizes.append(len(sampled))
            return sampled

        monkeypatch.setattr(cli, "statements", statements_module)
        monkeypatch.setattr(statements_module, "sample_statements", recording)

        config_path = run_config(tmp_path, max_epochs=5)
        assert cli.main(["sweep-k", "--config", str(config_path), "--k-max", "2"]) == 0
        sweep = (tmp_path / "out" / "sweep.tsv").read_text().strip().split("\n")
        assert sweep[0].split("\t") == [
            "k", "statements", "threshold", "macro_own", "macro_official",
        ]
        assert len(sweep) == 3
        assert sweep[1].split("\t")[:2] == ["1", "20"]
        assert sweep[2].split("\t")[:2] == ["2", "40"]
        assert sampled_sizes == [20, 40]
        assert (tmp_path / "out" / "sweep_plot.tsv").exists()

    def test_deterministic(self, fixture_dir):
        tmp_path, _, _ = fixture_dir
        config_path = run_config(tmp_path, max_epochs=5)
        assert cli.main(["sweep-k", "--config", str(config_path), "--k-max", "2"]) == 0
        first = (tmp_path / "out" / "sweep.tsv").read_bytes()
        assert cli.main(["sweep-k", "--config", str(config_path), "--k-max", "2"]) == 0
        assert (tmp_path / "out" / "sweep.tsv").read_bytes() == first


class TestEvaluateCommand:
    def test_perfect_predictions(self, tmp_path, capsys):
        # Every category carries at least one positive, so perfect
        # predictions reach F1 = 1 everywhere despite the 0/0 -> 0 rule.
        golds = [labels_for(f"A{i}", (i % 20,)) for i in range(20)]
        golds_path = tmp_path / "golds.tsv"
        write_labels(golds, golds_path)
        code = cli.main(
            ["evaluate", str(golds_path), str(golds_path), "--out", str(tmp_path / "out")]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "macro F1 (own): 1.0000" in out
        assert (tmp_path / "out" / "report.tsv").exists()

    def test_all_ones_matches_one_baseline(self, tmp_path, capsys):
        golds = [labels_for(f"A{i}", (i % 3,)) for i in range(9)]
        preds = [labels_for(f"A{i}", tuple(range(20))) for i in range(9)]
        golds_path = tmp_path / "golds.tsv"
        preds_path = tmp_path / "preds.tsv"
        write_labels(golds, golds_path)
        write_labels(preds, preds_path)
        assert cli.main(["evaluate", str(preds_path), str(golds_path)]) == 0
        out_lines = capsys.readouterr().out.strip().split("\n")
        table = [line.split("\t") for line in out_lines if "\t" in line]
        assert table[1][1:] == table[2][1:]  # predictions row == 1-Baseline row

    def test_alignment_error_exits_4(self, tmp_path, capsys):
        write_labels([labels_for("A1")], tmp_path / "golds.tsv")
        write_labels([labels_for("B1")], tmp_path / "preds.tsv")
        code = cli.main(
            ["evaluate", str(tmp_path / "preds.tsv"), str(tmp_path / "golds.tsv")]
        )
        assert code == 4
