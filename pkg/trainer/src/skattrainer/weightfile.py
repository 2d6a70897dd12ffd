"""Writer/reader for the engine's binary weight-file format.

Layout: 8-byte magic ``SKATNET1``; 8-byte NUL-padded ASCII game-kind
tag; uint32 layer count; per layer uint32 rows, cols; payload of
float32 little-endian parameters, per layer the weight matrix
(row-major) then the bias, history-tower layers first then the trunk.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

MAGIC = b"SKATNET1"
TAG_LEN = 8

TOWER_SHAPE = (768, 512, 256, 128, 32)
TRUNK_SHAPE = (392, 1024, 1024, 512, 128)


def save_weights(
    layers: list[tuple[np.ndarray, np.ndarray]], path: str | Path, kind: str
) -> None:
    """`layers` are (weight, bias) pairs, tower first then trunk."""
    header = [
        MAGIC,
        kind.encode("ascii").ljust(TAG_LEN, b"\0"),
        struct.pack("<I", len(layers)),
    ]
    for w, _ in layers:
        header.append(struct.pack("<II", w.shape[0], w.shape[1]))
    payload = bytearray()
    for w, b in layers:
        payload += np.ascontiguousarray(w, dtype="<f4").tobytes()
        payload += np.ascontiguousarray(b, dtype="<f4").tobytes()
    Path(path).write_bytes(b"".join(header) + bytes(payload))


def load_weights(path: str | Path) -> tuple[list[tuple[np.ndarray, np.ndarray]], str]:
    data = Path(path).read_bytes()
    if data[:8] != MAGIC:
        raise ValueError(f"{path}: bad magic {data[:8]!r}")
    kind = data[8 : 8 + TAG_LEN].rstrip(b"\0").decode("ascii")
    off = 8 + TAG_LEN
    (n_layers,) = struct.unpack_from("<I", data, off)
    off += 4
    shapes = []
    for _ in range(n_layers):
        rows, cols = struct.unpack_from("<II", data, off)
        shapes.append((rows, cols))
        off += 8
    layers = []
    for rows, cols in shapes:
        w = np.frombuffer(data, dtype="<f4", count=rows * cols, offset=off)
        off += rows * cols * 4
        b = np.frombuffer(data, dtype="<f4", count=rows, offset=off)
        off += rows * 4
        layers.append((w.reshape(rows, cols).copy(), b.copy()))
    if off != len(data):
        raise ValueError(f"{path}: trailing bytes")
    return layers, kind
