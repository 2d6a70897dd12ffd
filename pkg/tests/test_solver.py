"""Double-dummy solver tests.

Oracle strategy: the production search (alpha-beta + transposition table
+ rank-equivalence + zero-window probing) is checked for exact equality
against a plain unpruned minimax on random endgames, and each switch is
toggled independently on the same positions.
"""

import numpy as np
import pytest

from skatpimc.cards import parse_cards, set_points
from skatpimc.rules import GameDecl, GameKind, TrickRecord
from skatpimc.selfplay import random_game
from skatpimc.solver import (
    PerfectState,
    Solver,
    minimax_reference,
    solve,
)
ALL_KIND_DECLS = (
    GameDecl(GameKind.SUIT, 3),
    GameDecl(GameKind.GRAND),
    GameDecl(GameKind.NULL),
)


def endgame_state(seed, tricks_played, decl=None):
    """A random trick-boundary endgame; `decl` overrides the played game
    (any declaration is a legal context for the remaining hands)."""
    rng = np.random.default_rng(seed)
    setup, st = random_game(rng, stop_after_tricks=tricks_played)
    return PerfectState(
        hands=tuple(st.hands),
        decl=decl or setup.decl,
        soloist=setup.soloist,
        trick=st.current_trick,
        soloist_points=st.soloist_points,
        skat_points=set_points(st.deal.skat),
        soloist_tricks=st.soloist_tricks,
        defender_tricks=st.defender_tricks,
    )


class TestSpecExamples:
    def test_forced_last_trick(self):
        # one card each: the single line's arithmetic is the value
        hands = (parse_cards("AC"), parse_cards("TC"), parse_cards("KC"))
        state = PerfectState(
            hands=hands,
            decl=GameDecl(GameKind.SUIT, 3),
            soloist=0,
            trick=TrickRecord(leader=0, cards=[]),
            soloist_points=50,
            skat_points=0,
        )
        # AC wins over TC and KC: 11 + 10 + 4 = 25 to the soloist
        assert solve(state).soloist_points == 75

    def test_four_trick_endgames_match_reference(self):
        for seed in range(12):
            state = endgame_state(seed, tricks_played=6)
            assert solve(state).scalar() == minimax_reference(state).scalar()

    def test_all_trumps_and_masters_sweep(self):
        # soloist holds every trump; defenders never take a trick
        hands = (
            parse_cards("JC JS JH JD AC TC KC QC 9C 8C"),
            parse_cards("AS TS KS QS 9S 8S 7S AH TH KH"),
            parse_cards("AD TD KD QD 9D 8D 7D QH 9H 8H"),
        )
        state = PerfectState(
            hands=hands,
            decl=GameDecl(GameKind.SUIT, 3),
            soloist=0,
            trick=TrickRecord(leader=0, cards=[]),
            skat_points=set_points(parse_cards("7C 7H")),
        )
        assert solve(state).soloist_points == 120

    def test_single_legal_move_equals_solve(self):
        state = endgame_state(3, tricks_played=8)
        solver = Solver()
        legal = state.legal()
        moves = [c for c in range(32) if (legal >> c) & 1]
        if len(moves) == 1:
            assert (
                solver.perfect_info_val(state, moves[0]).scalar()
                == solver.solve(state).scalar()
            )
        # forced situations are also exercised inside every endgame solve

    def test_two_trick_children_bracket_solve(self):
        for seed in range(8):
            state = endgame_state(seed + 50, tricks_played=8)
            solver = Solver()
            legal = state.legal()
            child = [
                solver.perfect_info_val(state, c).scalar()
                for c in range(32)
                if (legal >> c) & 1
            ]
            want = max(child) if state.to_move == state.soloist else min(child)
            assert solver.solve(state).scalar() == want

    def test_null_forced_winning_card_loses_game(self):
        # soloist on lead with only the highest club left: must win the trick
        state = PerfectState(
            hands=(parse_cards("AC"), parse_cards("KC"), parse_cards("QC")),
            decl=GameDecl(GameKind.NULL),
            soloist=0,
            trick=TrickRecord(leader=0, cards=[]),
        )
        assert solve(state).null_win is False


class TestOracleEquivalence:
    @pytest.mark.parametrize("decl", ALL_KIND_DECLS, ids=lambda d: d.kind.name)
    def test_endgames_match_plain_minimax(self, decl):
        for seed in range(20):
            tricks_played = 5 + seed % 4  # 2..5 tricks remaining
            state = endgame_state(seed, tricks_played, decl=decl)
            assert solve(state).scalar() == minimax_reference(state).scalar(), seed

    @pytest.mark.parametrize(
        "flags",
        [
            {"use_tt": False},
            {"use_ab": False},
            {"use_equiv": False},
            {"use_tt": False, "use_ab": False, "use_equiv": False},
        ],
        ids=lambda f: "-".join(sorted(f)),
    )
    def test_switches_do_not_change_values(self, flags):
        for seed in range(6):
            state = endgame_state(seed + 30, tricks_played=6)
            assert (
                Solver(**flags).solve(state).scalar()
                == Solver().solve(state).scalar()
            )


class TestInvariants:
    def test_value_bounds(self):
        for seed in range(10):
            state = endgame_state(seed, tricks_played=4 + seed % 5)
            if state.decl.kind is GameKind.NULL:
                continue
            value = solve(state).soloist_points
            floor = state.soloist_points + state.skat_points
            ceiling = floor + sum(set_points(h) for h in state.hands)
            ceiling += sum(set_points(1 << c) for c in state.trick.cards)
            assert floor <= value <= ceiling

    def test_zero_sum_along_principal_variation(self):
        for seed in range(6):
            state = endgame_state(seed + 70, tricks_played=6)
            if state.decl.kind is GameKind.NULL:
                continue
            solver = Solver()
            value = solver.solve(state).soloist_points
            cur = state
            for move in solver.principal_variation(state):
                cur = cur.apply(move)
            assert cur.is_terminal()
            total = cur.soloist_points + cur.skat_points
            assert total == value
            # defenders hold the complement of the 120 deck points
            assert 0 <= 120 - total <= 120

    def test_principal_variation_is_legal_and_complete(self):
        state = endgame_state(9, tricks_played=7)
        pv = Solver().principal_variation(state)
        n_cards = sum(bin(h).count("1") for h in state.hands)
        assert len(pv) == n_cards
