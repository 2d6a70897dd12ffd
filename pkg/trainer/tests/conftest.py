"""Shared fixtures: a small self-play record corpus from the engine CLI.

The trainer talks to the engine only through the ``skatpimc`` CLI and
the record/weight file formats.  The engine's library is imported in
tests purely as the conformance reference.
"""

import subprocess

import pytest


@pytest.fixture(scope="session")
def corpus_path(tmp_path_factory):
    path = tmp_path_factory.mktemp("corpus") / "games.rec"
    subprocess.run(
        [
            "skatpimc", "gen-data",
            "--games", "12",
            "--seed", "7",
            "--samples", "2",
            "--state-cap", "4",
            "--out", str(path),
        ],
        check=True,
    )
    return path


@pytest.fixture(scope="session")
def records(corpus_path):
    from skattrainer.records import read_records

    return read_records(corpus_path)


@pytest.fixture(scope="session")
def engine_records(corpus_path):
    from skatpimc.recordio import read_records

    return read_records(corpus_path)
