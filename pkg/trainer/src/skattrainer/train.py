"""Training loop: ADAM, batch 32, early stopping on validation loss."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import torch

from .examples import ExampleSet, split_by_game
from .features import zero_cardplay_cues
from .model import LocationNet, TrainConfig, mean_head_cross_entropy


class DivergenceError(RuntimeError):
    """Loss became non-finite; carries the offending step."""

    def __init__(self, step: int):
        super().__init__(f"non-finite training loss at batch {step}")
        self.step = step


@dataclass
class TrainResult:
    model: LocationNet
    train_losses: list[float]  # per epoch
    val_losses: list[float]  # per epoch
    initial_loss: float  # before the first update
    best_epoch: int


def _to_tensors(examples: ExampleSet, idx: np.ndarray, bdi: bool):
    feats = examples.features[idx].astype(np.float32)
    if bdi:
        feats = np.stack([zero_cardplay_cues(f) for f in feats])
    x = torch.from_numpy(feats)
    y = torch.from_numpy(examples.targets[idx].astype(np.int64))
    return x, y


def _epoch_loss(model: LocationNet, x, y, batch_size: int) -> float:
    model.eval()
    total = 0.0
    with torch.no_grad():
        for i in range(0, len(x), batch_size):
            logits = model(x[i : i + batch_size])
            loss = mean_head_cross_entropy(logits, y[i : i + batch_size])
            total += float(loss) * len(x[i : i + batch_size])
    return total / len(x)


def train(
    examples: ExampleSet,
    config: TrainConfig = TrainConfig(),
    bdi: bool = False,
    log=lambda msg: None,
) -> TrainResult:
    torch.manual_seed(config.seed)
    train_idx, val_idx = split_by_game(
        examples, config.validation_fraction, seed=config.seed
    )
    x_tr, y_tr = _to_tensors(examples, train_idx, bdi)
    x_va, y_va = _to_tensors(examples, val_idx, bdi)

    model = LocationNet(dropout_keep=config.dropout_keep)
    opt = torch.optim.Adam(model.parameters(), lr=config.learning_rate)

    initial_loss = _epoch_loss(model, x_va, y_va, 4096)
    log(f"initial validation loss {initial_loss:.4f} (ln 4 = {np.log(4):.4f})")

    best_state = {k: v.clone() for k, v in model.state_dict().items()}
    best_val = float("inf")
    best_epoch = -1
    train_losses: list[float] = []
    val_losses: list[float] = []
    step = 0
    rng = np.random.default_rng(config.seed)

    for epoch in range(config.max_epochs):
        model.train()
        order = rng.permutation(len(x_tr))
        running = 0.0
        for i in range(0, len(order), config.batch_size):
            batch = order[i : i + config.batch_size]
            opt.zero_grad()
            loss = mean_head_cross_entropy(model(x_tr[batch]), y_tr[batch])
            if not torch.isfinite(loss):
                raise DivergenceError(step)
            loss.backward()
            opt.step()
            running += float(loss.detach()) * len(batch)
            step += 1
            if step % config.decay_batches == 0:
                for group in opt.param_groups:
                    group["lr"] *= config.decay_rate
        train_loss = running / len(order)
        val_loss = _epoch_loss(model, x_va, y_va, 4096)
        train_losses.append(train_loss)
        val_losses.append(val_loss)
        log(
            f"epoch {epoch}: train {train_loss:.4f} val {val_loss:.4f}"
            + (" *" if val_loss < best_val else "")
        )
        if val_loss < best_val:
            best_val = val_loss
            best_epoch = epoch
            best_state = {k: v.clone() for k, v in model.state_dict().items()}
        elif epoch - best_epoch >= config.patience:
            log(f"early stop at epoch {epoch} (best {best_epoch})")
            break

    model.load_state_dict(best_state)
    model.eval()
    return TrainResult(
        model=model,
        train_losses=train_losses,
        val_losses=val_losses,
        initial_loss=initial_loss,
        best_epoch=best_epoch,
    )
