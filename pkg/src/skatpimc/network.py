"""Dense inference network: feature vector -> 32x4 card-location matrix.

Architecture: the 768-value history block passes through a 4-layer tower
(768->512->256->128->32); its 32-value summary is concatenated with the
360-value state block and fed through the trunk (392->1024->1024->512)
and an output layer (512->128).  The 128 logits reshape to 32 rows of 4
and a per-row softmax yields the location matrix.  Hidden layers use
ELU; inference is deterministic (no dropout).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .features import FeatureVector

TOWER_SHAPE = (768, 512, 256, 128, 32)
TRUNK_SHAPE = (392, 1024, 1024, 512, 128)  # last layer is the linear output

NUM_LOCATIONS = 4


def elu(x: np.ndarray) -> np.ndarray:
    return np.where(x > 0, x, np.expm1(np.minimum(x, 0.0)))


def _check_chain(layers: tuple, shape: tuple[int, ...], name: str):
    if len(layers) != len(shape) - 1:
        raise ValueError(f"{name}: expected {len(shape) - 1} layers")
    for i, (w, b) in enumerate(layers):
        want = (shape[i + 1], shape[i])
        if w.shape != want or b.shape != (shape[i + 1],):
            raise ValueError(
                f"{name} layer {i}: got {w.shape}/{b.shape}, want {want}"
            )


@dataclass(frozen=True)
class NetworkWeights:
    """Immutable weight set; layers are (weight, bias) float32 pairs."""

    tower: tuple[tuple[np.ndarray, np.ndarray], ...]
    trunk: tuple[tuple[np.ndarray, np.ndarray], ...]

    def __post_init__(self):
        _check_chain(self.tower, TOWER_SHAPE, "tower")
        _check_chain(self.trunk, TRUNK_SHAPE, "trunk")

    @staticmethod
    def zeros() -> "NetworkWeights":
        def chain(shape):
            return tuple(
                (
                    np.zeros((shape[i + 1], shape[i]), dtype=np.float32),
                    np.zeros(shape[i + 1], dtype=np.float32),
                )
                for i in range(len(shape) - 1)
            )

        return NetworkWeights(tower=chain(TOWER_SHAPE), trunk=chain(TRUNK_SHAPE))

    @staticmethod
    def random(rng: np.random.Generator, scale: float = 0.05) -> "NetworkWeights":
        def chain(shape):
            return tuple(
                (
                    rng.normal(0.0, scale, (shape[i + 1], shape[i])).astype(
                        np.float32
                    ),
                    np.zeros(shape[i + 1], dtype=np.float32),
                )
                for i in range(len(shape) - 1)
            )

        return NetworkWeights(tower=chain(TOWER_SHAPE), trunk=chain(TRUNK_SHAPE))

    def all_layers(self) -> list[tuple[np.ndarray, np.ndarray]]:
        return list(self.tower) + list(self.trunk)


def _row_softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=-1, keepdims=True)
    e = np.exp(shifted, dtype=np.float64)
    return e / e.sum(axis=-1, keepdims=True)


def forward(weights: NetworkWeights, features: FeatureVector) -> np.ndarray:
    """Row-stochastic (32, 4) location matrix for one observation."""
    return forward_batch(
        weights,
        features.history_block[None, :],
        features.state_block[None, :],
    )[0]


def forward_batch(
    weights: NetworkWeights,
    history: np.ndarray,
    state: np.ndarray,
) -> np.ndarray:
    """(n, 32, 4) location matrices for stacked feature blocks."""
    x = history.astype(np.float32, copy=False)
    for w, b in weights.tower:
        x = elu(x @ w.T + b)
    x = np.concatenate([x, state.astype(np.float32, copy=False)], axis=1)
    *hidden, (w_out, b_out) = weights.trunk
    for w, b in hidden:
        x = elu(x @ w.T + b)
    logits = x @ w_out.T + b_out
    return _row_softmax(logits.reshape(-1, 32, NUM_LOCATIONS))
