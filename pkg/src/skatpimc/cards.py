"""Card and card-set primitives for the 32-card Skat deck.

Cards are plain ints 0..31 and card sets are 32-bit masks; everything that
iterates millions of deals goes through these, so no wrapper objects.

Index layout (fixed, used by feature planes and weight files):
    suit = index // 8   with  0=diamonds, 1=hearts, 2=spades, 3=clubs
    rank = index % 8    in ascending non-trump strength: 7,8,9,Q,K,10,A,J
"""

from __future__ import annotations

from typing import Iterator

NUM_CARDS = 32
NUM_SUITS = 4
NUM_RANKS = 8

SUIT_CHARS = "DHSC"
RANK_CHARS = "789QKTAJ"

DECK_MASK = (1 << NUM_CARDS) - 1

# rank codes
R7, R8, R9, RQ, RK, RT, RA, RJ = range(8)

# card points: A=11, 10=10, K=4, Q=3, J=2, 9/8/7=0
RANK_POINTS = (0, 0, 0, 3, 4, 10, 11, 2)

# all four jacks (rank code 7 in every suit)
JACKS_MASK = sum(1 << (8 * s + RJ) for s in range(NUM_SUITS))

# strength of a rank in null games: A>K>Q>J>10>9>8>7
NULL_STRENGTH = (0, 1, 2, 5, 6, 3, 7, 4)  # indexed by rank code


def suit_of(card: int) -> int:
    return card >> 3


def rank_of(card: int) -> int:
    return card & 7


def card_points(card: int) -> int:
    """Card points of a single card (deck total is 120)."""
    return RANK_POINTS[card & 7]


def make_card(suit: int, rank: int) -> int:
    return (suit << 3) | rank


def card_name(card: int) -> str:
    """Canonical text name, rank then suit: 'JC', '7D', 'TH', 'AS'."""
    return RANK_CHARS[card & 7] + SUIT_CHARS[card >> 3]


def parse_card(name: str) -> int:
    name = name.strip().upper()
    if len(name) != 2 or name[0] not in RANK_CHARS or name[1] not in SUIT_CHARS:
        raise ValueError(f"bad card name: {name!r}")
    return make_card(SUIT_CHARS.index(name[1]), RANK_CHARS.index(name[0]))


def suit_mask(suit: int) -> int:
    return 0xFF << (8 * suit)


def popcount(mask: int) -> int:
    return mask.bit_count()


def iter_cards(mask: int) -> Iterator[int]:
    """Yield card indices of a set in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def cards_of(mask: int) -> list[int]:
    return list(iter_cards(mask))


def mask_of(cards) -> int:
    m = 0
    for c in cards:
        m |= 1 << c
    return m


def set_points(mask: int) -> int:
    """Total card points of a set."""
    return sum(RANK_POINTS[c & 7] for c in iter_cards(mask))


def format_cards(mask: int) -> str:
    return " ".join(card_name(c) for c in iter_cards(mask))


def parse_cards(text: str) -> int:
    text = text.strip()
    if not text:
        return 0
    return mask_of(parse_card(tok) for tok in text.split())
