import numpy as np
import pytest

from skatpimc.cards import DECK_MASK, cards_of, mask_of, parse_cards
from skatpimc.rules import GameDecl, GameKind
from skatpimc.state import Deal


def make_deal(h0: str, h1: str, h2: str, skat: str) -> Deal:
    return Deal(
        hands=(parse_cards(h0), parse_cards(h1), parse_cards(h2)),
        skat=parse_cards(skat),
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


ALL_DECLS = [
    GameDecl(GameKind.SUIT, 0),
    GameDecl(GameKind.SUIT, 1),
    GameDecl(GameKind.SUIT, 2),
    GameDecl(GameKind.SUIT, 3),
    GameDecl(GameKind.GRAND),
    GameDecl(GameKind.NULL),
]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
