"""Observation encoding for the card-location inference network.

The state block is 360 values: Player Hand (32), Skat (32), Played Cards
(96 = 3 seats), Lead Cards (64 = 2 opponents), Sloughed Cards (64),
Void Suits (10 = 2 x 5), Max Bid Type (12 = 2 x 6), Max Bid Magnitude
(10 = 2 x 5), Current Trick (32), Soloist (3), Trump Suit (5).  The
history block is 768 values: 24 moves x 32 one-hot in play order,
zero-padded for moves not yet made.

All seat-indexed planes are ordered relative to the viewer (viewer,
next seat, seat after that); opponent planes cover the two non-viewer
seats in that order.  Everything is {0,1}-valued float32.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cards import iter_cards
from .rules import TRUMP_CLASS, GameDecl, GameKind, effective_suit
from .state import Observation

STATE_SIZE = 360
HISTORY_SIZE = 768
FEATURE_SIZE = STATE_SIZE + HISTORY_SIZE

MAX_ENCODED_TRICK = 8  # later tricks are not encoded (tiny information sets)
MAX_HISTORY_MOVES = 24

# state-block offsets, in layout order
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

# bid-type slots: one per declarable game, recognized by divisibility
BID_TYPE_BASES = (9, 10, 11, 12, 24, 23)  # D, H, S, C, grand, null
# magnitude bucket upper bounds; the last bucket is open-ended
BID_MAG_BOUNDS = (24, 36, 48, 72)


class HorizonError(ValueError):
    """Raised for observations past the encodable trick horizon."""


@dataclass(frozen=True)
class FeatureVector:
    """Network input: fixed state block plus move-history block."""

    state_block: np.ndarray  # (360,) float32
    history_block: np.ndarray  # (768,) float32

    def concat(self) -> np.ndarray:
        return np.concatenate([self.history_block, self.state_block])


def bid_magnitude_bucket(bid: int) -> int | None:
    """Bucket index 0..4 for a held bid, None for a passed player."""
    if bid < 18:
        return None
    for i, bound in enumerate(BID_MAG_BOUNDS):
        if bid <= bound:
            return i
    return len(BID_MAG_BOUNDS)


def bid_type_slot(bid: int) -> int | None:
    """Game slot guessed from the largest base value dividing the bid."""
    if bid < 18:
        return None
    best = None
    for i, base in enumerate(BID_TYPE_BASES):
        if bid % base == 0 and (best is None or base > BID_TYPE_BASES[best]):
            best = i
    return best


def _trick_led_class(trick_cards: list[int], decl: GameDecl) -> int:
    return effective_suit(trick_cards[0], decl)


def extract_features(obs: Observation) -> FeatureVector:
    """Deterministic encoding of everything the viewer can see."""
    if obs.trick_number > MAX_ENCODED_TRICK:
        raise HorizonError(
            f"trick {obs.trick_number} is past the encoding horizon "
            f"({MAX_ENCODED_TRICK})"
        )

    state = np.zeros(STATE_SIZE, dtype=np.float32)
    history = np.zeros(HISTORY_SIZE, dtype=np.float32)

    for c in iter_cards(obs.own_hand_now()):
        state[OFF_HAND + c] = 1.0
    if obs.known_skat is not None:
        skat = obs.original_skat if obs.original_skat is not None else obs.known_skat
        for c in iter_cards(skat):
            state[OFF_SKAT + c] = 1.0

    rel = [(obs.viewer + k) % 3 for k in range(3)]
    opponents = rel[1:]

    for k, seat in enumerate(rel):
        for c in iter_cards(obs.played_by(seat)):
            state[OFF_PLAYED + 32 * k + c] = 1.0

    for trick in obs.tricks:
        if not trick.cards:
            continue
        led = _trick_led_class(trick.cards, obs.decl)
        for i, card in enumerate(trick.cards):
            seat = trick.seat_of_play(i)
            if seat == obs.viewer:
                continue
            opp = opponents.index(seat)
            if i == 0:
                state[OFF_LEAD + 32 * opp + card] = 1.0
            else:
                cls = effective_suit(card, obs.decl)
                if cls != led and cls != TRUMP_CLASS:
                    state[OFF_SLOUGHED + 32 * opp + card] = 1.0

    for opp, seat in enumerate(opponents):
        for cls in obs.void_constraints[seat]:
            state[OFF_VOIDS + 5 * opp + cls] = 1.0
        slot = bid_type_slot(obs.bids[seat])
        if slot is not None:
            state[OFF_BID_TYPE + 6 * opp + slot] = 1.0
        bucket = bid_magnitude_bucket(obs.bids[seat])
        if bucket is not None:
            state[OFF_BID_MAG + 5 * opp + bucket] = 1.0

    for card in obs.current_trick.cards:
        state[OFF_CURRENT_TRICK + card] = 1.0

    state[OFF_SOLOIST + (obs.soloist - obs.viewer) % 3] = 1.0

    if obs.decl.kind is GameKind.SUIT:
        state[OFF_TRUMP + obs.decl.trump_suit] = 1.0
    elif obs.decl.kind is GameKind.GRAND:
        state[OFF_TRUMP + 4] = 1.0
    # null: all-zero trump plane

    for slot, (_, card) in enumerate(obs.moves()[:MAX_HISTORY_MOVES]):
        history[32 * slot + card] = 1.0

    return FeatureVector(state_block=state, history_block=history)


def without_cardplay_cues(features: FeatureVector) -> FeatureVector:
    """The reduced view used by the declaration-only inference variant:
    move history and current-trick planes zeroed."""
    state = features.state_block.copy()
    state[OFF_CURRENT_TRICK:OFF_CURRENT_TRICK + 32] = 0.0
    return FeatureVector(
        state_block=state,
        history_block=np.zeros(HISTORY_SIZE, dtype=np.float32),
    )
