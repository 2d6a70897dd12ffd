"""Solve perfect-information endgames exactly and verify against an
unpruned minimax.

The solver (alpha-beta with MTD(f) zero-window probing, a transposition
table at trick boundaries, and rank-equivalence move reduction) returns
soloist card points for suit/grand and soloist trick count for null.
The reference below is a direct game-tree walk with no pruning.
"""

import time

import numpy as np

from skatpimc.cards import format_cards, mask_of, set_points
from skatpimc.rules import GameDecl, GameKind, TrickRecord
from skatpimc.solver import PerfectState, Solver, minimax_reference

rng = np.random.default_rng(3)
solver = Solver()

for kind, trump in ((GameKind.SUIT, 2), (GameKind.GRAND, None), (GameKind.NULL, None)):
    decl = GameDecl(kind, trump)
    # build a random 4-trick endgame
    cards = [int(c) for c in rng.permutation(32)]
    hands = tuple(mask_of(cards[4 * s : 4 * s + 4]) for s in range(3))
    skat = mask_of(cards[12:14])
    state = PerfectState(
        hands=hands, decl=decl, soloist=0,
        trick=TrickRecord(leader=int(rng.integers(3)), cards=[]),
        soloist_points=40, skat_points=set_points(skat),
        soloist_tricks=3, defender_tricks=2,
    )
    t0 = time.perf_counter()
    value = solver.solve(state)
    dt = time.perf_counter() - t0
    ref = minimax_reference(state)
    unit = "(1 = soloist wins)" if kind is GameKind.NULL else "points"
    print(f"{kind.value:5s}: hands "
          f"{' | '.join(format_cards(h) for h in hands)}")
    print(f"       solver {value.scalar()} {unit} in {dt*1e3:.1f} ms, "
          f"reference {ref.scalar()} -> "
          f"{'agree' if value.scalar() == ref.scalar() else 'MISMATCH'}")
    assert value.scalar() == ref.scalar()

# principal variation for the last state
pv = solver.principal_variation(state)
from skatpimc.cards import card_name
print(f"\nprincipal variation ({state.decl.kind.value}): "
      + " ".join(card_name(c) for c in pv))
