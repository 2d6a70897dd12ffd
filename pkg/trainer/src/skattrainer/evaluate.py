"""Holdout evaluation: unknown-card accuracy per trick and viewer role.

A card is "unknown" to the viewer when its location is not already
visible: it is not in the viewer's remaining hand, not in a skat known
to the viewer, and not yet played by anyone.  Accuracy is the fraction
of unknown cards whose argmax predicted location matches the true one;
log-probability is the mean per-card log of the probability assigned to
the true location.  A uniform predictor scores 25% accuracy and
``-ln 4`` log-probability.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import torch

from .examples import ExampleSet
from .features import HISTORY_SIZE, OFF_HAND, OFF_PLAYED, OFF_SKAT
from .model import LocationNet

ROLE_NAMES = ("soloist", "defender")


@dataclass(frozen=True)
class Cell:
    trick: int
    role: str
    n_positions: int
    n_unknown: int
    accuracy: float
    log_probability: float


def unknown_mask(features: np.ndarray) -> np.ndarray:
    """(n, 32) bool: cards whose location the viewer cannot see."""
    state = features[:, HISTORY_SIZE:]
    visible = state[:, OFF_HAND : OFF_HAND + 32] + state[:, OFF_SKAT : OFF_SKAT + 32]
    for k in range(3):
        off = OFF_PLAYED + 32 * k
        visible = visible + state[:, off : off + 32]
    return visible == 0


def evaluate(
    model: LocationNet,
    examples: ExampleSet,
    idx: np.ndarray | None = None,
    bdi: bool = False,
    batch_size: int = 4096,
) -> list[Cell]:
    from .features import zero_cardplay_cues

    if idx is None:
        idx = np.arange(len(examples))
    feats = examples.features[idx].astype(np.float32)
    if bdi:
        feats = np.stack([zero_cardplay_cues(f) for f in feats])
    targets = examples.targets[idx]
    tricks = examples.tricks[idx]
    roles = examples.roles[idx]
    mask = unknown_mask(feats)

    model.eval()
    probs = np.empty((len(feats), 32, 4), dtype=np.float32)
    with torch.no_grad():
        for i in range(0, len(feats), batch_size):
            logits = model(torch.from_numpy(feats[i : i + batch_size]))
            probs[i : i + batch_size] = torch.softmax(logits, dim=-1).numpy()

    correct = probs.argmax(axis=-1) == targets
    true_logp = np.log(
        np.maximum(np.take_along_axis(probs, targets[:, :, None].astype(np.int64), -1)[..., 0], 1e-30)
    )

    cells = []
    for trick in sorted(np.unique(tricks).tolist()):
        for role, name in enumerate(ROLE_NAMES):
            sel = (tricks == trick) & (roles == role)
            m = mask[sel]
            if m.sum() == 0:
                continue
            cells.append(
                Cell(
                    trick=int(trick),
                    role=name,
                    n_positions=int(sel.sum()),
                    n_unknown=int(m.sum()),
                    accuracy=float(correct[sel][m].mean()),
                    log_probability=float(true_logp[sel][m].mean()),
                )
            )
    return cells


def write_csv(cells: list[Cell], path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["trick", "role", "n_positions", "n_unknown", "accuracy", "log_probability"]
        )
        for c in cells:
            writer.writerow(
                [c.trick, c.role, c.n_positions, c.n_unknown,
                 f"{c.accuracy:.6f}", f"{c.log_probability:.6f}"]
            )
