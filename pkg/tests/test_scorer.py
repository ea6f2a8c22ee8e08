"""Baseline scorer training, label weighting and binarization."""

import re

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from valuenli.augment import Gold, NliInstance, generate_pairs
from valuenli.categories import category_for
from valuenli.errors import DataValueError, EmptyInputError, ReadinessError
from valuenli.scorer import (
    BaselineScorer,
    TrainConfig,
    binarize,
    compute_label_weights,
    train_baseline,
)
from valuenli.synthetic import make_separable_fixture


class TestLabelWeights:
    def test_balanced(self):
        weights = compute_label_weights(50, 50)
        assert (weights.w_entail, weights.w_not) == (1.0, 1.0)

    def test_imbalanced(self):
        weights = compute_label_weights(10, 90)
        assert weights.w_entail == pytest.approx(1.8, rel=1e-12)
        assert weights.w_not == pytest.approx(0.2, rel=1e-12)

    def test_degenerate(self):
        assert compute_label_weights(0, 128) == compute_label_weights(0, 128)
        weights = compute_label_weights(0, 128)
        assert (weights.w_entail, weights.w_not) == (0.0, 2.0)
        weights = compute_label_weights(7, 0)
        assert (weights.w_entail, weights.w_not) == (2.0, 0.0)

    def test_empty_batch(self):
        with pytest.raises(EmptyInputError):
            compute_label_weights(0, 0)

    def test_negative(self):
        with pytest.raises(DataValueError):
            compute_label_weights(-1, 5)

    @given(
        n_entail=st.integers(min_value=1, max_value=10**6),
        n_not=st.integers(min_value=1, max_value=10**6),
    )
    def test_inverse_proportionality_identity(self, n_entail, n_not):
        weights = compute_label_weights(n_entail, n_not)
        assert weights.w_entail * n_entail == pytest.approx(
            weights.w_not * n_not, rel=1e-9
        )
        assert weights.w_entail + weights.w_not == pytest.approx(2.0, rel=1e-12)


class TestBinarize:
    def test_above(self):
        assert binarize(0.7, 0.5) == 1

    def test_equal_is_zero(self):
        assert binarize(0.5, 0.5) == 0

    def test_zero_cut(self):
        assert binarize(0.0, 0.0) == 0
        assert binarize(0.01, 0.0) == 1

    def test_bad_cut(self):
        with pytest.raises(DataValueError):
            binarize(0.5, 1.5)

    @given(score=st.floats(0, 1), cuts=st.lists(st.floats(0, 1), min_size=2, max_size=6))
    def test_monotone_in_cut(self, score, cuts):
        ordered = sorted(cuts)
        bits = [binarize(score, cut) for cut in ordered]
        assert bits == sorted(bits, reverse=True)


def fixture_instances(n_arguments=120, seed=0):
    """Labeled pair streams for train/validation/held-out slices."""
    fx = make_separable_fixture(n_arguments=n_arguments, seed=seed)
    n_train = int(n_arguments * 0.6)
    n_val = int(n_arguments * 0.2)
    slices = (
        fx.arguments[:n_train],
        fx.arguments[n_train : n_train + n_val],
        fx.arguments[n_train + n_val :],
    )
    return [list(generate_pairs(args, fx.bank, fx.labels)) for args in slices]


def overlap_oracle(instances, cut=None):
    """Independent nearest-threshold classifier on raw token overlap."""

    def overlap(instance):
        premise = set(re.findall(r"[a-z0-9']+", instance.premise.lower()))
        hypothesis = set(re.findall(r"[a-z0-9']+", instance.hypothesis.lower()))
        return len(premise & hypothesis) / len(premise | hypothesis)

    values = [(overlap(i), i.gold is Gold.ENTAILMENT) for i in instances]
    if cut is None:
        entail = [v for v, positive in values if positive]
        other = [v for v, positive in values if not positive]
        cut = (min(entail) + max(other)) / 2.0
    accuracy = sum((v > cut) == positive for v, positive in values) / len(values)
    return cut, accuracy


class TestTrainBaseline:
    def test_separable_fixture_accuracy(self):
        train, val, held_out = fixture_instances()
        # The oracle proves the fixture is separable on the overlap feature
        # alone before the trained model is held to the same bar.
        cut, train_accuracy = overlap_oracle(train)
        assert train_accuracy >= 0.95
        _, oracle_accuracy = overlap_oracle(held_out, cut=cut)
        assert oracle_accuracy >= 0.95

        scorer = train_baseline(train, TrainConfig(seed=1, max_epochs=20), val)
        predictions = scorer.score_batch([(i.premise, i.hypothesis) for i in held_out])
        correct = sum(
            (score > 0.5) == (instance.gold is Gold.ENTAILMENT)
            for score, instance in zip(predictions, held_out)
        )
        assert correct / len(held_out) >= 0.95

    def test_weighted_training_also_separates(self):
        train, val, held_out = fixture_instances()
        scorer = train_baseline(
            train, TrainConfig(seed=1, max_epochs=20, weighted_loss=True), val
        )
        predictions = scorer.score_batch([(i.premise, i.hypothesis) for i in held_out])
        correct = sum(
            (score > 0.5) == (instance.gold is Gold.ENTAILMENT)
            for score, instance in zip(predictions, held_out)
        )
        assert correct / len(held_out) >= 0.95

    def test_bitwise_deterministic(self):
        train, val, _ = fixture_instances(n_arguments=40)
        config = TrainConfig(seed=77, weighted_loss=True)
        a = train_baseline(train, config, val)
        b = train_baseline(train, config, val)
        assert np.array_equal(a.params, b.params)
        assert a.history.evaluations == b.history.evaluations

    def test_score_repeatable_and_overlap_sensitive(self):
        train, val, _ = fixture_instances(n_arguments=40)
        scorer = train_baseline(train, TrainConfig(seed=3), val)
        text = train[0].hypothesis
        same = scorer.score(text, text)
        assert same == scorer.score(text, text)
        unrelated = scorer.score(text, "It is important to discuss cabbages entirely")
        assert same >= unrelated

    def test_untrained_scorer(self):
        with pytest.raises(ReadinessError):
            BaselineScorer().score("a premise", "a hypothesis")

    def test_empty_train_stream(self):
        _, val, _ = fixture_instances(n_arguments=40)
        with pytest.raises(EmptyInputError):
            train_baseline([], TrainConfig(), val)

    def test_unlabeled_instance_rejected(self):
        bad = NliInstance("A1", "S1", category_for("Face"), "p", "h", gold=None)
        with pytest.raises(DataValueError):
            train_baseline([bad], TrainConfig(), [bad])

    def test_degenerate_features_still_train(self):
        hedonism = category_for("Hedonism")
        same = [
            NliInstance(f"A{i}", "S1", hedonism, "same text", "same text",
                        Gold.ENTAILMENT if i % 2 == 0 else Gold.NOT_ENTAILMENT)
            for i in range(8)
        ]
        scorer = train_baseline(same, TrainConfig(max_epochs=1), same)
        assert 0.0 <= scorer.score("same text", "same text") <= 1.0


def inverted_validation_sets():
    """Train set rewards overlap; validation punishes it (strictly rising loss)."""
    hedonism = category_for("Hedonism")
    train = []
    val = []
    for i in range(8):
        entail = i % 2 == 0
        premise = f"shared words group {i % 2}"
        hypothesis = "shared words group 0" if entail else "nothing in common at all"
        train.append(
            NliInstance(f"A{i}", f"S{i}", hedonism, premise, hypothesis,
                        Gold.ENTAILMENT if entail else Gold.NOT_ENTAILMENT)
        )
        val.append(
            NliInstance(f"V{i}", f"S{i}", hedonism, premise, hypothesis,
                        Gold.NOT_ENTAILMENT if entail else Gold.ENTAILMENT)
        )
    return train, val


class TestEarlyStopping:
    def test_patience_one_stops_at_second_evaluation(self):
        train, val = inverted_validation_sets()
        config = TrainConfig(
            max_epochs=10, batch_size=8, patience=1, eval_every=1, seed=5,
            learning_rate=0.5,
        )
        scorer = train_baseline(train, config, val)
        history = scorer.history
        assert len(history.evaluations) == 2
        assert history.stopped_early
        assert history.best_step == 1
        losses = [point.val_loss for point in history.evaluations]
        assert losses[1] > losses[0]

        # The returned parameters are the step-1 parameters: a fresh run
        # stopped after exactly one step must match bitwise.
        one_step = TrainConfig(
            max_epochs=1, batch_size=8, patience=1, eval_every=1, seed=5,
            learning_rate=0.5,
        )
        reference = train_baseline(train, one_step, val)
        assert np.array_equal(scorer.params, reference.params)

    def test_final_step_is_evaluated(self):
        train, val = fixture_instances(n_arguments=20)[0:2]
        config = TrainConfig(max_epochs=1, batch_size=4, eval_every=1000, seed=2)
        scorer = train_baseline(train, config, val)
        assert len(scorer.history.evaluations) == 1
        assert scorer.history.evaluations[0].step == scorer.history.steps_run

    def test_validation_required(self):
        train, _ = inverted_validation_sets()
        with pytest.raises(EmptyInputError):
            train_baseline(train, TrainConfig(), [])
