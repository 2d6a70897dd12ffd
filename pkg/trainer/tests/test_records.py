"""Record parsing and replay against the engine's own reader."""

import numpy as np

from skattrainer.records import (
    Decl,
    Replay,
    card_name,
    card_strength,
    effective_suit,
    parse_card,
    trick_winner,
)


def test_card_name_round_trip():
    for c in range(32):
        assert parse_card(card_name(c)) == c


def test_parse_matches_engine(records, engine_records):
    assert len(records) == len(engine_records) > 0
    for mine, theirs in zip(records, engine_records):
        assert mine.locations == tuple(theirs.deal.location_vector())
        assert mine.soloist == theirs.soloist
        assert mine.bids == theirs.bids
        assert mine.moves == theirs.moves
        skat_mask = sum(1 << c for c in mine.original_skat)
        assert skat_mask == theirs.original_skat
        assert mine.decl.kind == theirs.decl.kind.value
        if mine.decl.kind == "suit":
            assert mine.decl.trump_suit == theirs.decl.trump_suit


def test_trick_winners_match_engine(records, engine_records):
    from skatpimc.rules import trick_winner as engine_winner

    for mine, theirs in zip(records, engine_records):
        replay = Replay(mine)
        state = theirs.replay()
        for seat, card in mine.moves:
            replay.play(seat, card)
        engine_tricks = [t for t in state.all_tricks() if len(t.cards) == 3]
        assert len(replay.tricks) == len(engine_tricks)
        for (leader, cards), trick in zip(replay.tricks, engine_tricks):
            assert leader == trick.leader
            assert cards == list(trick.cards)
            assert trick_winner(leader, cards, mine.decl) == engine_winner(
                trick, theirs.decl
            )


def test_voids_match_engine(records, engine_records):
    from skatpimc.state import Observation

    for mine, theirs in zip(records, engine_records):
        replay = Replay(mine)
        for i, (seat, card) in enumerate(mine.moves):
            replay.play(seat, card)
            obs = Observation.from_game(
                theirs.replay(i + 1), viewer=0, bids=theirs.bids,
                original_skat=theirs.original_skat,
            )
            for s in range(3):
                assert replay.voids[s] == set(obs.void_constraints[s])


def test_effective_suit_matches_engine(records, engine_records):
    from skatpimc.rules import effective_suit as engine_effective

    for mine, theirs in zip(records, engine_records):
        for c in range(32):
            assert effective_suit(c, mine.decl) == engine_effective(c, theirs.decl)


def test_null_strength_ordering():
    decl = Decl("null")
    # 10 sorts between 9 and Q under null; jack between 10 and Q
    names = ["7D", "8D", "9D", "TD", "JD", "QD", "KD", "AD"]
    strengths = [card_strength(parse_card(n), decl) for n in names]
    assert strengths == sorted(strengths)
    assert np.all(np.diff(strengths) > 0)
