"""End-to-end CLI flow: build -> train -> eval."""

import csv

import numpy as np

from skattrainer.cli import main
from skattrainer.evaluate import unknown_mask
from skattrainer.examples import ExampleSet, build_examples


def test_build_train_eval(records, corpus_path, tmp_path):
    examples_path = tmp_path / "examples.npz"
    weights_path = tmp_path / "net.skatnet"
    csv_path = tmp_path / "metrics.csv"

    assert main([
        "build", "--records", str(corpus_path), "--out", str(examples_path),
    ]) == 0
    assert ExampleSet.load(examples_path).features.shape[1] == 1128

    assert main([
        "train", "--examples", str(examples_path), "--kind", "suit",
        "--epochs", "1", "--out", str(weights_path),
    ]) == 0
    assert weights_path.read_bytes()[:8] == b"SKATNET1"

    assert main([
        "eval", "--examples", str(examples_path), "--weights", str(weights_path),
        "--holdout", "--out", str(csv_path),
    ]) == 0
    with open(csv_path) as fh:
        rows = list(csv.DictReader(fh))
    assert rows
    for row in rows:
        assert 0.0 <= float(row["accuracy"]) <= 1.0
        assert float(row["log_probability"]) <= 0.0


def test_unknown_mask_counts(records):
    """At the first decision point a defender cannot see 22 cards (the
    two other hands and the skat).  The soloist sees their 10-card hand
    plus the original skat, which can overlap the hand after the
    discard, leaving 20-22 concealed cards."""
    examples = build_examples(records[:1])
    feats = examples.features.astype(np.float32)
    mask = unknown_mask(feats)
    for i in np.where(np.arange(len(examples)) < 3)[0]:
        n = int(mask[i].sum())
        if examples.roles[i] == 0:
            assert 20 <= n <= 22
        else:
            assert n == 22
