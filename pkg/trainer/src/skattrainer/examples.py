"""Training-example construction from game records.

One example per (decision point, viewer) for tricks 1-8.  The target is
the full 32-card configuration: every card's location in the original
deal (seat 0-2 hand or skat), with already-played cards keeping their
original-location label.  Targets therefore stay constant over a game
while the features evolve with the replay.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .features import FEATURE_SIZE, MAX_ENCODED_TRICK, extract_features
from .records import Record, Replay


@dataclass(frozen=True)
class ExampleSet:
    """Flat example arrays plus per-example metadata for splitting."""

    features: np.ndarray  # (n, 1128) uint8 {0,1}
    targets: np.ndarray  # (n, 32) uint8 location labels 0-3
    tricks: np.ndarray  # (n,) uint8 trick number 1-8
    roles: np.ndarray  # (n,) uint8 0 = soloist viewer, 1 = defender
    games: np.ndarray  # (n,) uint32 source-game index

    def __len__(self) -> int:
        return len(self.features)

    def save(self, path: str | Path) -> None:
        np.savez_compressed(
            path, features=self.features, targets=self.targets,
            tricks=self.tricks, roles=self.roles, games=self.games,
        )

    @staticmethod
    def load(path: str | Path) -> "ExampleSet":
        data = np.load(path)
        return ExampleSet(
            features=data["features"], targets=data["targets"],
            tricks=data["tricks"], roles=data["roles"], games=data["games"],
        )


def build_examples(records: list[Record], kind: str | None = None) -> ExampleSet:
    feats, targs, tricks, roles, games = [], [], [], [], []
    for game_idx, record in enumerate(records):
        if kind is not None and record.decl.kind != kind:
            continue
        target = np.array(record.locations, dtype=np.uint8)
        replay = Replay(record)
        for seat, card in record.moves:
            if replay.trick_number > MAX_ENCODED_TRICK:
                break
            for viewer in range(3):
                fv = extract_features(replay, viewer)
                feats.append(fv.astype(np.uint8))
                targs.append(target)
                tricks.append(replay.trick_number)
                roles.append(0 if viewer == record.soloist else 1)
                games.append(game_idx)
            replay.play(seat, card)
    if not feats:
        return ExampleSet(
            features=np.zeros((0, FEATURE_SIZE), dtype=np.uint8),
            targets=np.zeros((0, 32), dtype=np.uint8),
            tricks=np.zeros(0, dtype=np.uint8),
            roles=np.zeros(0, dtype=np.uint8),
            games=np.zeros(0, dtype=np.uint32),
        )
    return ExampleSet(
        features=np.stack(feats),
        targets=np.stack(targs),
        tricks=np.array(tricks, dtype=np.uint8),
        roles=np.array(roles, dtype=np.uint8),
        games=np.array(games, dtype=np.uint32),
    )


def split_by_game(
    examples: ExampleSet, validation_fraction: float = 0.1, seed: int = 0
) -> tuple[np.ndarray, np.ndarray]:
    """(train_idx, val_idx) with whole games kept on one side to avoid
    leakage between correlated positions."""
    games = np.unique(examples.games)
    rng = np.random.default_rng(seed)
    rng.shuffle(games)
    n_val = max(1, int(round(len(games) * validation_fraction)))
    val_games = set(games[:n_val].tolist())
    is_val = np.array([g in val_games for g in examples.games])
    idx = np.arange(len(examples))
    return idx[~is_val], idx[is_val]
