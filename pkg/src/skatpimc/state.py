"""Deals, game playout state, and per-seat observations.

A :class:`Deal` is the assignment of all 32 cards to the four locations
(three hands plus the skat) at the start of cardplay, i.e. after the
soloist's discard.  :class:`GameState` replays cardplay under the rules
core, and :class:`Observation` captures everything a single seat knows.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import cards
from .cards import DECK_MASK, card_points, popcount
from .rules import (
    NUM_SEATS,
    TRICKS_PER_GAME,
    GameDecl,
    GameKind,
    GameOutcome,
    TrickRecord,
    effective_suit,
    game_outcome,
    legal_moves,
    trick_winner,
)

# location codes: 0,1,2 = hands, 3 = skat
LOC_SKAT = 3
NUM_LOCATIONS = 4


@dataclass(frozen=True)
class Deal:
    """Full card assignment: three 10-card hands plus the 2-card skat."""

    hands: tuple[int, int, int]
    skat: int

    def __post_init__(self):
        union = self.hands[0] | self.hands[1] | self.hands[2] | self.skat
        total = sum(popcount(h) for h in self.hands) + popcount(self.skat)
        if union != DECK_MASK or total != 32:
            raise ValueError("hands and skat must partition the deck")

    def location_of(self, card: int) -> int:
        for seat in range(NUM_SEATS):
            if self.hands[seat] >> card & 1:
                return seat
        return LOC_SKAT

    def location_vector(self) -> list[int]:
        return [self.location_of(c) for c in range(32)]

    @staticmethod
    def from_locations(locs) -> "Deal":
        hands = [0, 0, 0]
        skat = 0
        for card, loc in enumerate(locs):
            if loc == LOC_SKAT:
                skat |= 1 << card
            else:
                hands[loc] |= 1 << card
        return Deal(hands=(hands[0], hands[1], hands[2]), skat=skat)


class IllegalMoveError(Exception):
    pass


class GameState:
    """Mutable cardplay state: replays moves and tallies the outcome."""

    def __init__(self, deal: Deal, decl: GameDecl, soloist: int):
        self.deal = deal
        self.decl = decl
        self.soloist = soloist
        self.hands = list(deal.hands)
        self.tricks: list[TrickRecord] = []  # completed tricks
        self.current_trick = TrickRecord(leader=0, cards=[])
        self.soloist_points = 0  # captured in tricks; skat added at scoring
        self.soloist_tricks = 0
        self.defender_tricks = 0

    @property
    def to_move(self) -> int:
        return self.current_trick.seat_of_play(len(self.current_trick.cards))

    @property
    def trick_number(self) -> int:
        """1-based number of the trick currently being played."""
        return len(self.tricks) + 1

    @property
    def is_over(self) -> bool:
        return len(self.tricks) == TRICKS_PER_GAME

    def legal(self) -> int:
        return legal_moves(self.hands[self.to_move], self.current_trick, self.decl)

    def play(self, card: int) -> None:
        seat = self.to_move
        if not (self.legal() >> card & 1):
            raise IllegalMoveError(
                f"seat {seat} cannot play {cards.card_name(card)} "
                f"in trick {self.trick_number}"
            )
        self.hands[seat] &= ~(1 << card)
        self.current_trick.cards.append(card)
        if self.current_trick.complete:
            winner = trick_winner(self.current_trick, self.decl)
            points = sum(card_points(c) for c in self.current_trick.cards)
            if winner == self.soloist:
                self.soloist_points += points
                self.soloist_tricks += 1
            else:
                self.defender_tricks += 1
            self.tricks.append(self.current_trick)
            self.current_trick = TrickRecord(leader=winner, cards=[])

    def all_tricks(self) -> list[TrickRecord]:
        """Completed tricks plus the current partial one (if non-empty)."""
        if self.current_trick.cards:
            return self.tricks + [self.current_trick]
        return list(self.tricks)

    def moves(self) -> list[tuple[int, int]]:
        """Flat (seat, card) move list in play order."""
        out = []
        for trick in self.all_tricks():
            for i, card in enumerate(trick.cards):
                out.append((trick.seat_of_play(i), card))
        return out

    def final_soloist_points(self) -> int:
        """Soloist card points including the skat (game must be over)."""
        if not self.is_over:
            raise ValueError("game not finished")
        return self.soloist_points + cards.set_points(self.deal.skat)

    def outcome(self) -> GameOutcome:
        return game_outcome(self.decl, self.final_soloist_points(), self.soloist_tricks)


def derive_voids(tricks: list[TrickRecord], decl: GameDecl) -> tuple[frozenset, ...]:
    """Effective suits each seat has proven void by failing to follow."""
    voids: list[set[int]] = [set(), set(), set()]
    for trick in tricks:
        if not trick.cards:
            continue
        led = effective_suit(trick.cards[0], decl)
        for i, card in enumerate(trick.cards[1:], start=1):
            if effective_suit(card, decl) != led:
                voids[trick.seat_of_play(i)].add(led)
    return tuple(frozenset(v) for v in voids)


@dataclass(frozen=True)
class Observation:
    """Everything one seat knows about the game at a decision point."""

    viewer: int
    own_initial_hand: int
    decl: GameDecl
    soloist: int
    bids: tuple[int, int, int]  # per-seat max bid, 0 = passed
    tricks: tuple[TrickRecord, ...]  # completed tricks + partial current
    known_skat: int | None = None  # set iff viewer is the soloist
    original_skat: int | None = None  # pre-discard skat, soloist only
    void_constraints: tuple[frozenset, ...] = field(default=None)

    def __post_init__(self):
        if (self.known_skat is not None) != (self.viewer == self.soloist):
            raise ValueError("known_skat present iff viewer is soloist")
        if self.void_constraints is None:
            object.__setattr__(
                self, "void_constraints", derive_voids(list(self.tricks), self.decl)
            )

    @staticmethod
    def from_game(
        state: GameState,
        viewer: int,
        bids: tuple[int, int, int] = (0, 0, 0),
        original_skat: int | None = None,
    ) -> "Observation":
        know_skat = viewer == state.soloist
        return Observation(
            viewer=viewer,
            own_initial_hand=state.deal.hands[viewer],
            decl=state.decl,
            soloist=state.soloist,
            bids=bids,
            tricks=tuple(
                TrickRecord(t.leader, list(t.cards)) for t in state.all_tricks()
            ),
            known_skat=state.deal.skat if know_skat else None,
            original_skat=original_skat if know_skat else None,
        )

    def moves(self) -> list[tuple[int, int]]:
        out = []
        for trick in self.tricks:
            for i, card in enumerate(trick.cards):
                out.append((trick.seat_of_play(i), card))
        return out

    @property
    def current_trick(self) -> TrickRecord:
        """The incomplete trick on the table (empty if between tricks)."""
        if self.tricks and not self.tricks[-1].complete:
            return self.tricks[-1]
        leader = 0
        if self.tricks:
            leader = trick_winner(self.tricks[-1], self.decl)
        return TrickRecord(leader=leader, cards=[])

    @property
    def trick_number(self) -> int:
        n = len(self.tricks)
        if self.tricks and not self.tricks[-1].complete:
            return n
        return n + 1

    def played_by(self, seat: int) -> int:
        mask = 0
        for s, card in self.moves():
            if s == seat:
                mask |= 1 << card
        return mask

    def played_all(self) -> int:
        mask = 0
        for _, card in self.moves():
            mask |= 1 << card
        return mask

    def own_hand_now(self) -> int:
        return self.own_initial_hand & ~self.played_all()

    def to_move(self) -> int:
        trick = self.current_trick
        return trick.seat_of_play(len(trick.cards))

    def captured_soloist_points(self) -> int:
        """Soloist points from completed tricks (public knowledge)."""
        pts = 0
        for trick in self.tricks:
            if trick.complete and trick_winner(trick, self.decl) == self.soloist:
                pts += sum(card_points(c) for c in trick.cards)
        return pts

    def tricks_won(self) -> tuple[int, int]:
        """(soloist, defenders) completed-trick counts."""
        solo = sum(
            1
            for t in self.tricks
            if t.complete and trick_winner(t, self.decl) == self.soloist
        )
        total = sum(1 for t in self.tricks if t.complete)
        return solo, total - solo
