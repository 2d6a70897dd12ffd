"""Perfect-information Skat solver: exact values of fully revealed deals.

Suit and grand games are solved for soloist card points (0..120, skat and
already-captured points included); null games for a win flag.  The search
itself lives in the numba kernels of :mod:`skatpimc._solvercore`; this
module owns the state/value types and the oracle-checkable switches.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from . import _solvercore as core
from .cards import iter_cards, popcount, set_points
from .rules import GameDecl, GameKind, TrickRecord, legal_moves, trick_winner
from .state import Deal, Observation


def decl_mode(decl: GameDecl) -> int:
    if decl.kind is GameKind.SUIT:
        return decl.trump_suit
    if decl.kind is GameKind.GRAND:
        return 4
    return 5


@dataclass(frozen=True)
class PerfectState:
    """A fully revealed mid-game position."""

    hands: tuple[int, int, int]  # remaining cards
    decl: GameDecl
    soloist: int
    trick: TrickRecord  # current partial trick
    soloist_points: int = 0  # captured so far, excluding skat
    skat_points: int = 0  # added to the soloist at game end
    soloist_tricks: int = 0
    defender_tricks: int = 0

    def __post_init__(self):
        sizes = sorted(popcount(h) for h in self.hands)
        if sizes[-1] - sizes[0] > 1:
            raise ValueError("hand sizes inconsistent with a trick position")

    @staticmethod
    def from_deal(deal: Deal, decl: GameDecl, soloist: int) -> "PerfectState":
        return PerfectState(
            hands=deal.hands,
            decl=decl,
            soloist=soloist,
            trick=TrickRecord(leader=0, cards=[]),
            skat_points=set_points(deal.skat),
        )

    @property
    def to_move(self) -> int:
        return self.trick.seat_of_play(len(self.trick.cards))

    def legal(self) -> int:
        return legal_moves(self.hands[self.to_move], self.trick, self.decl)

    def is_terminal(self) -> bool:
        return all(h == 0 for h in self.hands)

    def apply(self, move: int) -> "PerfectState":
        if not (self.legal() >> move) & 1:
            raise ValueError("illegal move")
        hands = list(self.hands)
        hands[self.to_move] &= ~(1 << move)
        cards = self.trick.cards + [move]
        if len(cards) < 3:
            return replace(
                self,
                hands=tuple(hands),
                trick=TrickRecord(self.trick.leader, cards),
            )
        done = TrickRecord(self.trick.leader, cards)
        winner = trick_winner(done, self.decl)
        pts = sum(set_points(1 << c) for c in cards)
        solo = winner == self.soloist
        return replace(
            self,
            hands=tuple(hands),
            trick=TrickRecord(winner, []),
            soloist_points=self.soloist_points + (pts if solo else 0),
            soloist_tricks=self.soloist_tricks + int(solo),
            defender_tricks=self.defender_tricks + int(not solo),
        )


@dataclass(frozen=True)
class SolveValue:
    """Soloist card points (suit/grand) or null win flag."""

    soloist_points: int | None = None
    null_win: bool | None = None

    def scalar(self) -> int:
        return self.soloist_points if self.null_win is None else int(self.null_win)


class Solver:
    """One single-threaded solver instance with its own transposition table."""

    def __init__(self, tt_bits: int = core.TT_BITS_DEFAULT,
                 use_tt: bool = True, use_ab: bool = True, use_equiv: bool = True):
        self.use_tt = use_tt
        self.use_ab = use_ab
        self.use_equiv = use_equiv
        self._tt = core._new_tt(tt_bits if use_tt else 4)
        self._tt_decl: tuple | None = None

    def _prepare(self, state: PerfectState):
        # the table is only valid for one (decl, soloist) context
        ctx = (decl_mode(state.decl), state.soloist)
        if self._tt_decl != ctx:
            for arr in self._tt[:3]:
                arr.fill(0)
            self._tt[3].fill(core.HI_INIT)
            self._tt[4].fill(-1)
            self._tt[5].fill(0)
            self._tt_decl = ctx

    def _raw(self, state: PerfectState) -> int:
        self._prepare(state)
        mode = decl_mode(state.decl)
        cards = state.trick.cards
        t0 = cards[0] if len(cards) >= 1 else -1
        t1 = cards[1] if len(cards) >= 2 else -1
        rem = core._rem_points(
            state.hands[0], state.hands[1], state.hands[2], t0, t1, len(cards)
        )
        # null: a trick already taken by the soloist decides the game
        if mode == 5 and state.soloist_tricks > 0:
            return 0
        if self.use_ab:
            # zero-window probing needs pruning; it is the production path
            guess = core._playout_guess(
                state.hands[0], state.hands[1], state.hands[2],
                state.soloist, state.trick.leader, t0, t1, len(cards), mode,
            )
            future = core._exact_value(
                state.hands[0], state.hands[1], state.hands[2],
                state.soloist, state.trick.leader, t0, t1, len(cards),
                mode, rem, guess,
                self.use_equiv, self.use_tt, *self._tt,
            )
        else:
            depth = sum(popcount(h) for h in state.hands) + len(cards)
            future = core._search(
                state.hands[0], state.hands[1], state.hands[2],
                state.soloist, state.trick.leader, t0, t1, len(cards),
                mode, rem, depth, -1000, 1000,
                False, self.use_equiv, self.use_tt, *self._tt,
            )
        return int(future)

    def solve(self, state: PerfectState) -> SolveValue:
        mode = decl_mode(state.decl)
        future = self._raw(state)
        if mode == 5:
            return SolveValue(null_win=bool(future) and state.soloist_tricks == 0)
        return SolveValue(
            soloist_points=state.soloist_points + state.skat_points + future
        )

    def perfect_info_val(self, state: PerfectState, move: int) -> SolveValue:
        return self.solve(state.apply(move))

    def principal_variation(self, state: PerfectState) -> list[int]:
        """A solver-optimal line (ties broken by lowest card index)."""
        pv = []
        cur = state
        while not cur.is_terminal():
            soloist_turn = cur.to_move == cur.soloist
            best_move, best_val = None, None
            for move in iter_cards(cur.legal()):
                val = self.solve(cur.apply(move)).scalar()
                if best_val is None or (val > best_val if soloist_turn else val < best_val):
                    best_move, best_val = move, val
            pv.append(best_move)
            cur = cur.apply(best_move)
        return pv


def solve(state: PerfectState, **kwargs) -> SolveValue:
    return Solver(**kwargs).solve(state)


def perfect_info_val(state: PerfectState, move: int, **kwargs) -> SolveValue:
    return Solver(**kwargs).perfect_info_val(state, move)


def minimax_reference(state: PerfectState) -> SolveValue:
    """Plain unpruned minimax; the oracle the fast solver is checked against."""
    mode = decl_mode(state.decl)
    cards = state.trick.cards
    t0 = cards[0] if len(cards) >= 1 else -1
    t1 = cards[1] if len(cards) >= 2 else -1
    future = int(
        core._minimax_plain(
            state.hands[0], state.hands[1], state.hands[2],
            state.soloist, state.trick.leader, t0, t1, len(cards), mode,
        )
    )
    if mode == 5:
        return SolveValue(null_win=bool(future) and state.soloist_tricks == 0)
    return SolveValue(soloist_points=state.soloist_points + state.skat_points + future)


class _BatchTables:
    """Per-worker transposition tables reused across batch calls.

    Entries are valid for one (mode, soloist) context; the tables are
    cleared on context change and kept otherwise, so successive calls
    within one game share all previously solved positions."""

    def __init__(self):
        self.arrays = None
        self.ctx = None
        self.bits = None

    def get(self, mode: int, soloist: int, tt_bits: int):
        from numba import get_num_threads

        nw = get_num_threads()
        ctx = (mode, soloist)
        if (
            self.arrays is None
            or self.bits != tt_bits
            or self.arrays[0].shape[0] != nw
        ):
            size = 1 << tt_bits
            self.arrays = (
                np.zeros((nw, size), dtype=np.uint64),
                np.zeros((nw, size), dtype=np.uint64),
                np.zeros((nw, size), dtype=np.int16),
                np.full((nw, size), core.HI_INIT, dtype=np.int16),
                np.full((nw, size), -1, dtype=np.int16),
                np.zeros((nw, 464), dtype=np.int64),
            )
            self.bits = tt_bits
        elif self.ctx != ctx:
            a = self.arrays
            a[0].fill(0)
            a[1].fill(0)
            a[2].fill(0)
            a[3].fill(core.HI_INIT)
            a[4].fill(-1)
            a[5].fill(0)
        self.ctx = ctx
        return self.arrays

    def clear(self):
        self.arrays = None
        self.ctx = None


_batch_tables = _BatchTables()


def batch_move_values(
    deals_remaining: np.ndarray,
    decl: GameDecl,
    soloist: int,
    trick: TrickRecord,
    moves: list[int],
    tt_bits: int = core.TT_BITS_DEFAULT,
    reuse_tables: bool = True,
) -> np.ndarray:
    """Exact per-move values for many deals at once (parallel kernel).

    `deals_remaining` is (n, 3) int64 remaining-hand masks; returns
    (n, len(moves)) future soloist points (or null-win flags).
    """
    cards = trick.cards
    t0 = cards[0] if len(cards) >= 1 else -1
    t1 = cards[1] if len(cards) >= 2 else -1
    if not reuse_tables:
        _batch_tables.clear()
    tables = _batch_tables.get(decl_mode(decl), soloist, tt_bits)
    return core.batch_move_values(
        deals_remaining.astype(np.int64),
        soloist,
        trick.leader,
        t0,
        t1,
        len(cards),
        decl_mode(decl),
        np.asarray(moves, dtype=np.int64),
        *tables,
    )
