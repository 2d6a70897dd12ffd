"""Bit-exact binary weight files, one network per game kind.

Layout (all integers little-endian):

* 8-byte magic ``SKATNET1``
* 8-byte game-kind tag, ASCII padded with NUL (``suit``/``grand``/``null``)
* uint32 layer count
* per layer: uint32 rows, uint32 cols (the weight matrix is rows x cols;
  the bias length is rows)
* payload: per layer, the weight matrix row-major then the bias, as
  float32 little-endian -- history tower layers first, then the trunk.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .network import TOWER_SHAPE, NetworkWeights
from .rules import GameKind

MAGIC = b"SKATNET1"
TAG_LEN = 8
N_TOWER_LAYERS = len(TOWER_SHAPE) - 1


class WeightFileError(ValueError):
    pass


def _kind_tag(kind: GameKind) -> bytes:
    return kind.value.encode("ascii").ljust(TAG_LEN, b"\0")


def save_weights(weights: NetworkWeights, path: str | Path, kind: GameKind) -> None:
    layers = weights.all_layers()
    header = [MAGIC, _kind_tag(kind), struct.pack("<I", len(layers))]
    for w, _ in layers:
        header.append(struct.pack("<II", w.shape[0], w.shape[1]))
    payload = bytearray()
    for w, b in layers:
        payload += np.ascontiguousarray(w, dtype="<f4").tobytes()
        payload += np.ascontiguousarray(b, dtype="<f4").tobytes()
    Path(path).write_bytes(b"".join(header) + bytes(payload))


def load_weights(
    path: str | Path, kind: GameKind | None = None
) -> tuple[NetworkWeights, GameKind]:
    """Load a weight file; `kind`, when given, must match the file tag."""
    data = Path(path).read_bytes()
    if data[:8] != MAGIC:
        raise WeightFileError(f"{path}: bad magic {data[:8]!r}")
    tag = data[8 : 8 + TAG_LEN].rstrip(b"\0").decode("ascii", "replace")
    try:
        file_kind = GameKind(tag)
    except ValueError:
        raise WeightFileError(f"{path}: unknown game-kind tag {tag!r}") from None
    if kind is not None and file_kind is not kind:
        raise WeightFileError(
            f"{path}: game-kind tag is {file_kind.value!r}, expected {kind.value!r}"
        )
    off = 8 + TAG_LEN
    (n_layers,) = struct.unpack_from("<I", data, off)
    off += 4
    shapes = []
    for _ in range(n_layers):
        rows, cols = struct.unpack_from("<II", data, off)
        shapes.append((rows, cols))
        off += 8
    expected = sum(rows * cols + rows for rows, cols in shapes) * 4
    actual = len(data) - off
    if actual != expected:
        raise WeightFileError(
            f"{path}: payload is {actual} bytes, shape table requires {expected}"
        )
    layers = []
    for rows, cols in shapes:
        w = np.frombuffer(data, dtype="<f4", count=rows * cols, offset=off)
        off += rows * cols * 4
        b = np.frombuffer(data, dtype="<f4", count=rows, offset=off)
        off += rows * 4
        layers.append((w.reshape(rows, cols).copy(), b.copy()))
    weights = NetworkWeights(
        tower=tuple(layers[:N_TOWER_LAYERS]),
        trunk=tuple(layers[N_TOWER_LAYERS:]),
    )
    return weights, file_kind
