"""Deal generation, a scripted declarer heuristic, and game playout.

The heuristic is deliberately simple: it exists to produce legal, varied
game records (bids, declaration, discard) for self-play corpora and test
harnesses, not to bid competitively.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .cards import (
    JACKS_MASK,
    NULL_STRENGTH,
    card_points,
    iter_cards,
    mask_of,
    popcount,
    rank_of,
    suit_mask,
    suit_of,
)
from .rules import (
    NUM_SEATS,
    GameDecl,
    GameKind,
    matador_count,
)
from .state import Deal, GameState, Observation

# standard ascending bid ladder (up to the values our heuristic can reach)
BID_LADDER = tuple(
    sorted(
        {b * m for b in (9, 10, 11, 12) for m in range(2, 11)}
        | {24 * m for m in range(2, 8)}
        | {23, 35, 46, 59}
    )
)


def random_deal(rng: np.random.Generator) -> Deal:
    order = rng.permutation(32)
    return Deal(
        hands=(
            mask_of(order[:10].tolist()),
            mask_of(order[10:20].tolist()),
            mask_of(order[20:30].tolist()),
        ),
        skat=mask_of(order[30:].tolist()),
    )


def _suit_score(hand: int, trump: int) -> float:
    trumps = popcount(hand & (JACKS_MASK | suit_mask(trump)))
    aces = sum(1 for c in iter_cards(hand) if rank_of(c) == 6 and suit_of(c) != trump)
    tens = sum(1 for c in iter_cards(hand) if rank_of(c) == 5 and suit_of(c) != trump)
    return 2.0 * trumps + 1.5 * aces + 0.75 * tens


def _grand_score(hand: int) -> float:
    jacks = popcount(hand & JACKS_MASK)
    aces = sum(1 for c in iter_cards(hand) if rank_of(c) == 6)
    tens = sum(1 for c in iter_cards(hand) if rank_of(c) == 5)
    return 3.0 * jacks + 2.5 * aces + 1.25 * tens


def _null_score(hand: int) -> float:
    # low cards are safe; high cards in short suits are liabilities
    risk = 0.0
    for suit in range(4):
        cards = [c for c in iter_cards(hand & suit_mask(suit))]
        strengths = sorted(NULL_STRENGTH[rank_of(c)] for c in cards)
        for i, s in enumerate(strengths):
            # covered high cards (enough lower cards beneath) are safer
            risk += max(0, s - 2 * i - 1)
    return 14.0 - risk


def best_declaration(hand: int) -> tuple[GameDecl, float]:
    """Highest-scoring declaration for a 10 or 12 card set."""
    options: list[tuple[float, GameDecl]] = []
    for trump in range(4):
        options.append((_suit_score(hand, trump), GameDecl(GameKind.SUIT, trump)))
    options.append((_grand_score(hand) - 4.0, GameDecl(GameKind.GRAND)))
    options.append((_null_score(hand) - 2.0, GameDecl(GameKind.NULL)))
    score, decl = max(options, key=lambda t: (t[0], -t[1].base_value))
    return decl, score


def _bid_for(hand: int, decl: GameDecl) -> int:
    if decl.kind is GameKind.NULL:
        value = 23
    else:
        value = decl.base_value * (matador_count(decl, hand) + 1)
    candidates = [b for b in BID_LADDER if b <= value]
    return candidates[-1] if candidates else 0


def _discard(cards12: int, decl: GameDecl) -> int:
    """Two cards the soloist banks in the skat."""

    def risk(card: int) -> tuple:
        if decl.kind is GameKind.NULL:
            return (NULL_STRENGTH[rank_of(card)],)
        if (decl.trump_mask() >> card) & 1:
            return (-1, 0)  # never discard trump
        length = popcount(cards12 & suit_mask(suit_of(card)))
        is_ace = rank_of(card) == 6
        # bank points from short side suits, keep aces
        return (0 if is_ace else 1, -card_points(card) + length)

    ranked = sorted(iter_cards(cards12), key=risk, reverse=True)
    return mask_of(ranked[:2])


@dataclass(frozen=True)
class Setup:
    """Pre-cardplay context produced by the scripted declarer."""

    deal: Deal  # post-discard hands and skat
    decl: GameDecl
    soloist: int
    bids: tuple[int, int, int]
    original_skat: int


def scripted_setup(dealt: Deal, original_skat: int | None = None) -> Setup:
    """Run the scripted bidding/declaration/discard over dealt hands.

    `dealt` holds the pre-pickup 10-card hands; its skat is the face-down
    skat the soloist will pick up.
    """
    skat0 = dealt.skat if original_skat is None else original_skat
    prefs = [best_declaration(dealt.hands[s]) for s in range(NUM_SEATS)]
    scores = [p[1] for p in prefs]
    soloist = int(np.argmax(scores))
    bids = [0, 0, 0]
    for seat in range(NUM_SEATS):
        if scores[seat] >= 6.0 or seat == soloist:
            bids[seat] = _bid_for(dealt.hands[seat], prefs[seat][0])
    cards12 = dealt.hands[soloist] | skat0
    decl, _ = best_declaration(cards12)
    skat = _discard(cards12, decl)
    hands = list(dealt.hands)
    hands[soloist] = cards12 & ~skat
    return Setup(
        deal=Deal(hands=(hands[0], hands[1], hands[2]), skat=skat),
        decl=decl,
        soloist=soloist,
        bids=tuple(bids),
        original_skat=skat0,
    )


Policy = Callable[[Observation], int]


def random_policy(rng: np.random.Generator) -> Policy:
    def pick(obs: Observation) -> int:
        from .rules import legal_moves

        legal = legal_moves(obs.own_hand_now(), obs.current_trick, obs.decl)
        choices = list(iter_cards(legal))
        return choices[rng.integers(len(choices))]

    return pick


def play_out(
    setup: Setup,
    policies: list[Policy],
    stop_after_tricks: int | None = None,
) -> GameState:
    """Play a game (or a prefix) with one policy per seat."""
    state = GameState(setup.deal, setup.decl, setup.soloist)
    while not state.is_over:
        if stop_after_tricks is not None and state.trick_number > stop_after_tricks:
            break
        seat = state.to_move
        obs = Observation.from_game(
            state, seat, bids=setup.bids, original_skat=setup.original_skat
        )
        state.play(policies[seat](obs))
    return state


def random_game(rng: np.random.Generator, stop_after_tricks: int | None = None):
    """Random-legal-move playout of a random scripted setup."""
    setup = scripted_setup(random_deal(rng))
    policy = random_policy(rng)
    state = play_out(setup, [policy] * 3, stop_after_tricks)
    return setup, state
