"""Skat rules core: legality, trick resolution, game values, outcomes.

All functions are pure and operate on int cards / mask card-sets from
:mod:`skatpimc.cards`.  This module is the ground truth that the solver,
deal enumeration, and the self-play harness all consult.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .cards import (
    JACKS_MASK,
    NULL_STRENGTH,
    RJ,
    iter_cards,
    popcount,
    rank_of,
    set_points,
    suit_mask,
    suit_of,
)

NUM_SEATS = 3
TRICKS_PER_GAME = 10
TOTAL_CARD_POINTS = 120

# effective-suit class id for trump (jacks + trump suit in suit games)
TRUMP_CLASS = 4


class GameKind(Enum):
    SUIT = "suit"
    GRAND = "grand"
    NULL = "null"


SUIT_BASE_VALUES = (9, 10, 11, 12)  # diamonds, hearts, spades, clubs
GRAND_BASE_VALUE = 24
NULL_VALUE = 23


@dataclass(frozen=True)
class GameDecl:
    """Declared contract: suit game (with trump suit), grand, or null."""

    kind: GameKind
    trump_suit: int | None = None  # only for SUIT

    def __post_init__(self):
        if self.kind is GameKind.SUIT:
            if self.trump_suit not in (0, 1, 2, 3):
                raise ValueError("suit game needs a trump suit 0..3")
        elif self.trump_suit is not None:
            raise ValueError(f"{self.kind.value} game carries no trump suit")

    @property
    def base_value(self) -> int:
        if self.kind is GameKind.SUIT:
            return SUIT_BASE_VALUES[self.trump_suit]
        if self.kind is GameKind.GRAND:
            return GRAND_BASE_VALUE
        return NULL_VALUE

    def trump_mask(self) -> int:
        if self.kind is GameKind.SUIT:
            return JACKS_MASK | suit_mask(self.trump_suit)
        if self.kind is GameKind.GRAND:
            return JACKS_MASK
        return 0

    def __str__(self) -> str:
        if self.kind is GameKind.SUIT:
            return f"suit-{'DHSC'[self.trump_suit]}"
        return self.kind.value


@dataclass
class TrickRecord:
    """One trick: leading seat plus the cards in play order (up to 3)."""

    leader: int
    cards: list[int]

    def seat_of_play(self, i: int) -> int:
        return (self.leader + i) % NUM_SEATS

    @property
    def complete(self) -> bool:
        return len(self.cards) == 3


def effective_suit(card: int, decl: GameDecl) -> int:
    """Follow-suit class: 0..3 natural suit, 4 trump (jacks included)."""
    if decl.kind is not GameKind.NULL:
        if rank_of(card) == RJ:
            return TRUMP_CLASS
        if decl.kind is GameKind.SUIT and suit_of(card) == decl.trump_suit:
            return TRUMP_CLASS
    return suit_of(card)


def card_strength(card: int, decl: GameDecl) -> int:
    """Strength within the card's effective suit; higher beats lower."""
    if decl.kind is GameKind.NULL:
        return NULL_STRENGTH[rank_of(card)]
    if rank_of(card) == RJ:
        return 100 + suit_of(card)  # jack order D<H<S<C, above all suit cards
    return rank_of(card)  # rank codes already ascend 7<8<9<Q<K<10<A


def effective_suit_mask(suit_class: int, decl: GameDecl) -> int:
    mask = 0
    for card in range(32):
        if effective_suit(card, decl) == suit_class:
            mask |= 1 << card
    return mask


def legal_moves(hand: int, trick: TrickRecord, decl: GameDecl) -> int:
    """Subset of `hand` legal to play given the trick so far.

    Leading: anything.  Following: must follow the led effective suit if
    possible, otherwise anything.
    """
    if hand == 0:
        raise ValueError("empty hand")
    if not trick.cards:
        return hand
    led = effective_suit(trick.cards[0], decl)
    following = hand & effective_suit_mask(led, decl)
    return following if following else hand


def trick_winner(trick: TrickRecord, decl: GameDecl) -> int:
    """Seat that wins a complete trick."""
    if not trick.complete:
        raise ValueError("trick incomplete")
    led = effective_suit(trick.cards[0], decl)
    best_i = 0
    for i in (1, 2):
        card = trick.cards[i]
        cls = effective_suit(card, decl)
        best = trick.cards[best_i]
        best_cls = effective_suit(best, decl)
        if cls == best_cls:
            if card_strength(card, decl) > card_strength(best, decl):
                best_i = i
        elif cls == TRUMP_CLASS:  # trump beats the led suit
            best_i = i
    return trick.seat_of_play(best_i)


def matador_count(decl: GameDecl, soloist_cards: int) -> int:
    """With/against count: unbroken run of top trumps held or missing.

    `soloist_cards` is the soloist's 12-card set (hand plus skat).
    """
    if decl.kind is GameKind.NULL:
        raise ValueError("null games have no matadors")
    order = sorted(
        iter_cards(decl.trump_mask()),
        key=lambda c: card_strength(c, decl),
        reverse=True,
    )
    has_top = bool(soloist_cards >> order[0] & 1)
    run = 0
    for card in order:
        if bool(soloist_cards >> card & 1) == has_top:
            run += 1
        else:
            break
    return run


def game_value(
    decl: GameDecl, soloist_cards: int, schneider: bool = False, schwarz: bool = False
) -> int:
    """Base value times multiplier (matadors + 1 + schneider + schwarz)."""
    if decl.kind is GameKind.NULL:
        return NULL_VALUE
    multiplier = matador_count(decl, soloist_cards) + 1 + int(schneider) + int(schwarz)
    return decl.base_value * multiplier


@dataclass(frozen=True)
class GameOutcome:
    won: bool
    schneider: bool
    schwarz: bool


def game_outcome(
    decl: GameDecl, soloist_card_points: int, soloist_tricks_won: int
) -> GameOutcome:
    """Outcome of a finished game (skat points already counted for soloist)."""
    if not 0 <= soloist_card_points <= TOTAL_CARD_POINTS:
        raise ValueError("card points out of range")
    if not 0 <= soloist_tricks_won <= TRICKS_PER_GAME:
        raise ValueError("trick count out of range")
    if decl.kind is GameKind.NULL:
        won = soloist_tricks_won == 0
        return GameOutcome(won=won, schneider=False, schwarz=False)
    won = soloist_card_points >= 61
    defender_points = TOTAL_CARD_POINTS - soloist_card_points
    losing_points = defender_points if won else soloist_card_points
    schneider = losing_points <= 30
    if won:
        schwarz = soloist_tricks_won == TRICKS_PER_GAME
    else:
        schwarz = soloist_tricks_won == 0
    return GameOutcome(won=won, schneider=schneider, schwarz=schwarz)


def tournament_points(value: int, outcome: GameOutcome) -> tuple[int, int, int]:
    """Extended Seeger-Fabian scores (soloist, defender, defender).

    Win: soloist gets value + 50.  Loss: soloist gets -(2*value + 50) and
    each defender gets +40.
    """
    if outcome.won:
        return (value + 50, 0, 0)
    return (-(2 * value + 50), 40, 40)


def score_game(
    decl: GameDecl, soloist_cards: int, outcome: GameOutcome
) -> tuple[int, int, int]:
    """Tournament points with the game value derived from the outcome flags."""
    if decl.kind is GameKind.NULL:
        value = NULL_VALUE
    else:
        value = game_value(decl, soloist_cards, outcome.schneider, outcome.schwarz)
    return tournament_points(value, outcome)


def full_deck_points() -> int:
    return set_points((1 << 32) - 1)


def hand_size_ok(hands: tuple[int, int, int], skat: int) -> bool:
    union = hands[0] | hands[1] | hands[2] | skat
    total = popcount(hands[0]) + popcount(hands[1]) + popcount(hands[2]) + popcount(skat)
    return union == (1 << 32) - 1 and total == 32
