"""Feature encoding for training examples.

Re-implements the engine's observation encoding from its specification;
the test suite holds it to bit-for-bit agreement with the engine on a
shared conformance corpus.  The state block is 360 values (hand, skat,
played cards, lead cards, sloughed cards, voids, bid type/magnitude,
current trick, soloist, trump); the history block is 768 values
(24 moves x 32 one-hot).  All values are {0,1} float32.
"""

from __future__ import annotations

import numpy as np

from .records import TRUMP_CLASS, Replay, effective_suit

STATE_SIZE = 360
HISTORY_SIZE = 768
FEATURE_SIZE = STATE_SIZE + HISTORY_SIZE

MAX_ENCODED_TRICK = 8
MAX_HISTORY_MOVES = 24

OFF_HAND = 0
OFF_SKAT = 32
OFF_PLAYED = 64
OFF_LEAD = 160
OFF_SLOUGHED = 224
OFF_VOIDS = 288
OFF_BID_TYPE = 298
OFF_BID_MAG = 310
OFF_CURRENT_TRICK = 320
OFF_SOLOIST = 352
OFF_TRUMP = 355

BID_TYPE_BASES = (9, 10, 11, 12, 24, 23)
BID_MAG_BOUNDS = (24, 36, 48, 72)


def bid_magnitude_bucket(bid: int) -> int | None:
    if bid < 18:
        return None
    for i, bound in enumerate(BID_MAG_BOUNDS):
        if bid <= bound:
            return i
    return len(BID_MAG_BOUNDS)


def bid_type_slot(bid: int) -> int | None:
    if bid < 18:
        return None
    best = None
    for i, base in enumerate(BID_TYPE_BASES):
        if bid % base == 0 and (best is None or base > BID_TYPE_BASES[best]):
            best = i
    return best


def extract_features(replay: Replay, viewer: int) -> np.ndarray:
    """(1128,) float32: history block then state block, as the network
    input layout expects.  Raises ValueError past trick 8."""
    if replay.trick_number > MAX_ENCODED_TRICK:
        raise ValueError(f"trick {replay.trick_number} past encoding horizon")
    record = replay.record
    decl = record.decl

    state = np.zeros(STATE_SIZE, dtype=np.float32)
    history = np.zeros(HISTORY_SIZE, dtype=np.float32)

    own_played = set(replay.played_by_seat[viewer])
    for c in record.hand(viewer):
        if c not in own_played:
            state[OFF_HAND + c] = 1.0
    if viewer == record.soloist:
        for c in record.original_skat:
            state[OFF_SKAT + c] = 1.0

    rel = [(viewer + k) % 3 for k in range(3)]
    opponents = rel[1:]
    for k, seat in enumerate(rel):
        for c in replay.played_by_seat[seat]:
            state[OFF_PLAYED + 32 * k + c] = 1.0

    all_tricks = list(replay.tricks)
    if replay.current_cards:
        all_tricks.append((replay.current_leader, replay.current_cards))
    for leader, cards in all_tricks:
        led = effective_suit(cards[0], decl)
        for i, card in enumerate(cards):
            seat = (leader + i) % 3
            if seat == viewer:
                continue
            opp = opponents.index(seat)
            if i == 0:
                state[OFF_LEAD + 32 * opp + card] = 1.0
            else:
                cls = effective_suit(card, decl)
                if cls != led and cls != TRUMP_CLASS:
                    state[OFF_SLOUGHED + 32 * opp + card] = 1.0

    for opp, seat in enumerate(opponents):
        for cls in replay.voids[seat]:
            state[OFF_VOIDS + 5 * opp + cls] = 1.0
        slot = bid_type_slot(record.bids[seat])
        if slot is not None:
            state[OFF_BID_TYPE + 6 * opp + slot] = 1.0
        bucket = bid_magnitude_bucket(record.bids[seat])
        if bucket is not None:
            state[OFF_BID_MAG + 5 * opp + bucket] = 1.0

    for card in replay.current_cards:
        state[OFF_CURRENT_TRICK + card] = 1.0

    state[OFF_SOLOIST + (record.soloist - viewer) % 3] = 1.0
    if decl.kind == "suit":
        state[OFF_TRUMP + decl.trump_suit] = 1.0
    elif decl.kind == "grand":
        state[OFF_TRUMP + 4] = 1.0

    # history: every card played so far, in play order
    order = []
    for leader, cards in all_tricks:
        order.extend(cards)
    for slot, card in enumerate(order[:MAX_HISTORY_MOVES]):
        history[32 * slot + card] = 1.0

    return np.concatenate([history, state])


def zero_cardplay_cues(features: np.ndarray) -> np.ndarray:
    """The declaration-only (BDI) view: history block and current-trick
    plane zeroed."""
    out = features.copy()
    out[:HISTORY_SIZE] = 0.0
    off = HISTORY_SIZE + OFF_CURRENT_TRICK
    out[off:off + 32] = 0.0
    return out
