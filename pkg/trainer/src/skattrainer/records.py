"""Reader for the engine's text game-record format.

A record looks like::

    deal 01230123...          32 chars: location of each card index
                              (0-2 = hand of that seat, 3 = skat)
    soloist 1
    decl suit-C               suit-D/H/S/C, grand, or null
    bids 18 0 48              per-seat max bid, 0 = passed
    skat0 7D JH               the pre-discard skat the soloist picked up
    move 0 AH                 seat, card -- in play order
    ...
    outcome won=1 points=82 solo_tricks=7 def_tricks=3

Cards are indexed ``suit * 8 + rank`` with suits D,H,S,C = 0..3 and
ranks ascending 7,8,9,Q,K,10,A,J; names are rank then suit ("JC").
This module re-implements just enough of the rules (effective suits,
trick winners) to replay a record into per-decision observations; it
trusts the engine to have validated legality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

RANK_NAMES = "789QKTAJ"
SUIT_NAMES = "DHSC"
TRUMP_CLASS = 4
NULL_STRENGTH = (0, 1, 2, 5, 6, 3, 7, 4)  # rank code -> strength under null


def parse_card(name: str) -> int:
    return SUIT_NAMES.index(name[1]) * 8 + RANK_NAMES.index(name[0])


def card_name(card: int) -> str:
    return RANK_NAMES[card % 8] + SUIT_NAMES[card // 8]


@dataclass(frozen=True)
class Decl:
    kind: str  # "suit" | "grand" | "null"
    trump_suit: int | None = None

    @staticmethod
    def parse(token: str) -> "Decl":
        if token in ("grand", "null"):
            return Decl(token)
        if token.startswith("suit-"):
            return Decl("suit", SUIT_NAMES.index(token[5]))
        raise ValueError(f"bad declaration {token!r}")


def effective_suit(card: int, decl: Decl) -> int:
    if decl.kind != "null":
        if card % 8 == 7:  # jack
            return TRUMP_CLASS
        if decl.kind == "suit" and card // 8 == decl.trump_suit:
            return TRUMP_CLASS
    return card // 8


def card_strength(card: int, decl: Decl) -> int:
    if decl.kind == "null":
        return NULL_STRENGTH[card % 8]
    if card % 8 == 7:
        return 100 + card // 8
    return card % 8


def trick_winner(leader: int, cards: list[int], decl: Decl) -> int:
    best = 0
    led = effective_suit(cards[0], decl)
    for i in (1, 2):
        cls = effective_suit(cards[i], decl)
        bcls = effective_suit(cards[best], decl)
        if cls == bcls:
            if card_strength(cards[i], decl) > card_strength(cards[best], decl):
                best = i
        elif cls == TRUMP_CLASS:
            best = i
    return (leader + best) % 3


@dataclass(frozen=True)
class Record:
    locations: tuple[int, ...]  # per card: 0-2 hand, 3 skat
    soloist: int
    decl: Decl
    bids: tuple[int, int, int]
    original_skat: tuple[int, int]
    moves: tuple[tuple[int, int], ...]  # (seat, card)

    def hand(self, seat: int) -> list[int]:
        return [c for c in range(32) if self.locations[c] == seat]

    def skat(self) -> list[int]:
        return [c for c in range(32) if self.locations[c] == 3]


def parse_record(text: str) -> Record:
    fields: dict[str, str] = {}
    moves: list[tuple[int, int]] = []
    for raw in text.strip().splitlines():
        parts = raw.split(None, 1)
        if not parts:
            continue
        key, rest = parts[0], parts[1] if len(parts) > 1 else ""
        if key == "move":
            seat_s, card_s = rest.split()
            moves.append((int(seat_s), parse_card(card_s)))
        elif key != "outcome":
            fields[key] = rest
    locations = tuple(int(ch) for ch in fields["deal"])
    if len(locations) != 32:
        raise ValueError("deal must hold 32 location digits")
    skat0 = tuple(parse_card(t) for t in fields["skat0"].split())
    return Record(
        locations=locations,
        soloist=int(fields["soloist"]),
        decl=Decl.parse(fields["decl"]),
        bids=tuple(int(b) for b in fields["bids"].split()),
        original_skat=skat0,
        moves=tuple(moves),
    )


def read_records(path: str | Path) -> list[Record]:
    out = []
    for block in Path(path).read_text().split("\n\n"):
        if block.strip():
            out.append(parse_record(block))
    return out


@dataclass
class Replay:
    """Incremental replay exposing everything a viewer can observe."""

    record: Record
    tricks: list[tuple[int, list[int]]] = field(default_factory=list)
    current_leader: int = 0
    current_cards: list[int] = field(default_factory=list)
    played_by_seat: list[list[int]] = field(
        default_factory=lambda: [[], [], []]
    )
    voids: list[set[int]] = field(default_factory=lambda: [set(), set(), set()])

    @property
    def trick_number(self) -> int:
        return len(self.tricks) + 1

    @property
    def to_move(self) -> int:
        return (self.current_leader + len(self.current_cards)) % 3

    def play(self, seat: int, card: int) -> None:
        if seat != self.to_move:
            raise ValueError(f"seat {seat} out of turn")
        if self.current_cards:
            led = effective_suit(self.current_cards[0], self.record.decl)
            if effective_suit(card, self.record.decl) != led:
                self.voids[seat].add(led)
        self.current_cards.append(card)
        self.played_by_seat[seat].append(card)
        if len(self.current_cards) == 3:
            winner = trick_winner(
                self.current_leader, self.current_cards, self.record.decl
            )
            self.tricks.append((self.current_leader, self.current_cards))
            self.current_leader = winner
            self.current_cards = []
