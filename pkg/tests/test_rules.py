"""Rules-core unit tests: points, legality, trick resolution, scoring."""

import numpy as np
import pytest

from skatpimc.cards import (
    DECK_MASK,
    card_name,
    card_points,
    cards_of,
    parse_card,
    parse_cards,
)
from skatpimc.rules import (
    GameDecl,
    GameKind,
    GameOutcome,
    TrickRecord,
    game_outcome,
    game_value,
    legal_moves,
    matador_count,
    tournament_points,
    trick_winner,
)

SUIT_C = GameDecl(GameKind.SUIT, 3)
SUIT_D = GameDecl(GameKind.SUIT, 0)
GRAND = GameDecl(GameKind.GRAND)
NULL = GameDecl(GameKind.NULL)


class TestCardPoints:
    def test_jack_clubs(self):
        assert card_points(parse_card("JC")) == 2

    def test_seven_diamonds(self):
        assert card_points(parse_card("7D")) == 0

    def test_deck_total_is_120(self):
        assert sum(card_points(c) for c in range(32)) == 120

    @pytest.mark.parametrize(
        "name,pts", [("AD", 11), ("TH", 10), ("KS", 4), ("QC", 3), ("9D", 0)]
    )
    def test_rank_values(self, name, pts):
        assert card_points(parse_card(name)) == pts


class TestLegalMoves:
    def test_must_follow_hearts(self):
        hand = parse_cards("AH 7H 8C")
        trick = TrickRecord(leader=0, cards=[parse_card("KH")])
        assert legal_moves(hand, trick, SUIT_C) == parse_cards("AH 7H")

    def test_jacks_are_trump_in_grand(self):
        hand = parse_cards("JS 9D")
        trick = TrickRecord(leader=0, cards=[parse_card("JH")])
        assert legal_moves(hand, trick, GRAND) == parse_cards("JS")

    def test_void_in_null_plays_anything(self):
        hand = parse_cards("9D 8S")
        trick = TrickRecord(leader=0, cards=[parse_card("KH")])
        assert legal_moves(hand, trick, NULL) == hand

    def test_leading_plays_anything(self):
        hand = parse_cards("AH 7D JC")
        assert legal_moves(hand, TrickRecord(0, []), SUIT_C) == hand

    def test_jack_follows_trump_suit_not_printed_suit(self):
        # clubs led in a clubs game: the heart jack is a legal follow
        hand = parse_cards("JH AD")
        trick = TrickRecord(leader=0, cards=[parse_card("AC")])
        assert legal_moves(hand, trick, SUIT_C) == parse_cards("JH")

    def test_empty_hand_rejected(self):
        with pytest.raises(ValueError):
            legal_moves(0, TrickRecord(0, []), SUIT_C)


class TestTrickWinner:
    def test_ace_wins_led_suit(self):
        trick = TrickRecord(0, [parse_card(c) for c in ("AH", "TH", "KH")])
        assert trick_winner(trick, SUIT_C) == 0

    def test_any_trump_beats_nontrump(self):
        trick = TrickRecord(1, [parse_card(c) for c in ("AH", "7C", "KH")])
        assert trick_winner(trick, SUIT_C) == 2

    def test_club_jack_highest_in_grand(self):
        trick = TrickRecord(2, [parse_card(c) for c in ("JH", "JD", "JC")])
        assert trick_winner(trick, GRAND) == 1

    def test_null_king_beats_ten(self):
        trick = TrickRecord(0, [parse_card(c) for c in ("TH", "KH", "9H")])
        assert trick_winner(trick, NULL) == 1

    def test_suit_game_ten_beats_king(self):
        trick = TrickRecord(0, [parse_card(c) for c in ("TH", "KH", "9H")])
        assert trick_winner(trick, SUIT_C) == 0

    def test_offsuit_cannot_win(self):
        trick = TrickRecord(0, [parse_card(c) for c in ("7H", "AS", "AD")])
        assert trick_winner(trick, NULL) == 0

    def test_incomplete_trick_rejected(self):
        with pytest.raises(ValueError):
            trick_winner(TrickRecord(0, [parse_card("AH")]), SUIT_C)


class TestMatadors:
    def test_with_two_grand(self):
        cards = parse_cards("JC JS AD TD KD QD 9D 8D 7D AH TH KH")
        assert matador_count(GRAND, cards) == 2

    def test_against_one(self):
        cards = parse_cards("JS AD TD KD QD 9D 8D 7D AH TH KH QH")
        assert matador_count(SUIT_D, cards) == 1

    def test_all_eleven_trumps(self):
        cards = parse_cards("JC JS JH JD AC TC KC QC 9C 8C 7C AD")
        assert matador_count(SUIT_C, cards) == 11

    def test_null_has_no_matadors(self):
        with pytest.raises(ValueError):
            matador_count(NULL, parse_cards("JC JS JH JD AC TC KC QC 9C 8C 7C AD"))


class TestGameValue:
    def test_clubs_with_one(self):
        cards = parse_cards("JC AD TD KD QD 9D 8D 7D AH TH KH QH")  # with 1 (no JS)
        assert game_value(SUIT_C, cards) == 24

    def test_grand_with_four_schneider(self):
        cards = parse_cards("JC JS JH JD AC TC KC QC 9C 8C 7C AD")
        assert game_value(GRAND, cards, schneider=True) == 144

    def test_null_fixed(self):
        assert game_value(NULL, 0) == 23


class TestOutcomeAndScoring:
    def test_61_wins(self):
        out = game_outcome(SUIT_C, 61, 5)
        assert out.won and not out.schneider

    def test_null_lost_with_a_trick(self):
        assert not game_outcome(NULL, 0, 1).won

    def test_null_won(self):
        assert game_outcome(NULL, 17, 0).won

    def test_schwarz_implies_schneider(self):
        out = game_outcome(GRAND, 120, 10)
        assert out.won and out.schneider and out.schwarz

    def test_soloist_schneidered(self):
        out = game_outcome(SUIT_C, 28, 2)
        assert not out.won and out.schneider and not out.schwarz

    def test_tournament_points_win(self):
        assert tournament_points(24, GameOutcome(True, False, False)) == (74, 0, 0)

    def test_tournament_points_loss(self):
        assert tournament_points(24, GameOutcome(False, False, False)) == (-98, 40, 40)

    def test_tournament_points_null_win(self):
        assert tournament_points(23, GameOutcome(True, False, False)) == (73, 0, 0)
