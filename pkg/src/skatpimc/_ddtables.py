"""Precomputed lookup tables for the double-dummy solver kernels.

Mode encoding shared by all kernels:
    0..3  suit game with that trump suit
    4     grand
    5     null

All tables are plain numpy arrays so the numba kernels can close over
them as globals.
"""

from __future__ import annotations

import numpy as np

from .cards import NULL_STRENGTH, RJ, RANK_POINTS

NUM_MODES = 6
TRUMP_CLASS = 4

PTS = np.array([RANK_POINTS[c & 7] for c in range(32)], dtype=np.int64)

EFF = np.zeros((NUM_MODES, 32), dtype=np.int64)  # effective suit class
STR = np.zeros((NUM_MODES, 32), dtype=np.int64)  # strength within class

for mode in range(NUM_MODES):
    for card in range(32):
        suit, rank = card >> 3, card & 7
        if mode == 5:  # null
            EFF[mode, card] = suit
            STR[mode, card] = NULL_STRENGTH[rank]
        elif rank == RJ or (mode < 4 and suit == mode):
            EFF[mode, card] = TRUMP_CLASS
            STR[mode, card] = 100 + suit if rank == RJ else rank
        else:
            EFF[mode, card] = suit
            STR[mode, card] = rank

CLASS_MASK = np.zeros((NUM_MODES, 5), dtype=np.int64)
for mode in range(NUM_MODES):
    for card in range(32):
        CLASS_MASK[mode, EFF[mode, card]] |= 1 << card

# Static move ordering: suit/grand try high trumps then high side cards,
# null tries low cards first.
MOVE_ORDER = np.zeros((NUM_MODES, 32), dtype=np.int64)
for mode in range(NUM_MODES):
    if mode == 5:
        key = lambda c: (STR[mode, c], c)
    else:
        key = lambda c: (-int(EFF[mode, c] == TRUMP_CLASS), -int(STR[mode, c]), c)
    MOVE_ORDER[mode] = np.array(sorted(range(32), key=key), dtype=np.int64)

# Per-class descending strength order (padded with -1) and each card's
# position in it; used by the rank-equivalence reduction.
CLS_ORDER = np.full((NUM_MODES, 5, 12), -1, dtype=np.int64)
CARD_POS = np.zeros((NUM_MODES, 32), dtype=np.int64)
for mode in range(NUM_MODES):
    for cls in range(5):
        members = [c for c in range(32) if EFF[mode, c] == cls]
        members.sort(key=lambda c: -STR[mode, c])
        for i, c in enumerate(members):
            CLS_ORDER[mode, cls, i] = c
            CARD_POS[mode, c] = i
