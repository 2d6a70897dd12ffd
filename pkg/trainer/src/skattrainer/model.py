"""The card-location network and its training hyper-parameters.

Architecture: the 768-value history block passes through a 4-layer
tower (768->512->256->128->32); the 32-value summary is concatenated
with the 360-value state block and fed through the trunk
(392->1024->1024->512->128).  The 128 outputs are 32 four-way logits,
one head per card.  Hidden layers use ELU; dropout (keep probability
0.8) applies to hidden layers 2-4, i.e. the trunk's hidden layers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import torch
from torch import nn

from .weightfile import TOWER_SHAPE, TRUNK_SHAPE


@dataclass(frozen=True)
class TrainConfig:
    batch_size: int = 32
    learning_rate: float = 1e-4
    decay_rate: float = 0.96
    decay_batches: int = 10_000_000
    dropout_keep: float = 0.8
    validation_fraction: float = 0.1
    max_epochs: int = 200
    patience: int = 5  # early-stopping epochs without validation improvement
    seed: int = 0


class LocationNet(nn.Module):
    def __init__(self, dropout_keep: float = 0.8):
        super().__init__()
        self.tower = nn.ModuleList(
            nn.Linear(TOWER_SHAPE[i], TOWER_SHAPE[i + 1])
            for i in range(len(TOWER_SHAPE) - 1)
        )
        self.trunk = nn.ModuleList(
            nn.Linear(TRUNK_SHAPE[i], TRUNK_SHAPE[i + 1])
            for i in range(len(TRUNK_SHAPE) - 1)
        )
        self.drop = nn.Dropout(p=1.0 - dropout_keep)
        self.act = nn.ELU()

    def forward(self, features: torch.Tensor) -> torch.Tensor:
        """features (n, 1128) -> logits (n, 32, 4)."""
        history, state = features[:, :768], features[:, 768:]
        x = history
        for layer in self.tower:
            x = self.act(layer(x))
        x = torch.cat([x, state], dim=1)
        *hidden, out = self.trunk
        for layer in hidden:
            x = self.drop(self.act(layer(x)))
        return out(x).view(-1, 32, 4)

    def export_layers(self) -> list[tuple[np.ndarray, np.ndarray]]:
        """(weight, bias) float32 pairs in weight-file order."""
        layers = []
        for layer in list(self.tower) + list(self.trunk):
            layers.append((
                layer.weight.detach().cpu().numpy().astype(np.float32),
                layer.bias.detach().cpu().numpy().astype(np.float32),
            ))
        return layers

    def load_layers(self, layers: list[tuple[np.ndarray, np.ndarray]]):
        modules = list(self.tower) + list(self.trunk)
        if len(layers) != len(modules):
            raise ValueError("layer count mismatch")
        with torch.no_grad():
            for module, (w, b) in zip(modules, layers):
                module.weight.copy_(torch.from_numpy(np.ascontiguousarray(w)))
                module.bias.copy_(torch.from_numpy(np.ascontiguousarray(b)))


def mean_head_cross_entropy(
    logits: torch.Tensor, targets: torch.Tensor
) -> torch.Tensor:
    """Mean over the 32 card heads of 4-class cross-entropy."""
    return nn.functional.cross_entropy(
        logits.reshape(-1, 4), targets.reshape(-1).long()
    )
