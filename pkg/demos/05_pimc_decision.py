"""One PIMC decision, fully unpacked.

The player samples determinized deals from its posterior over the
information set, solves each sampled deal exactly for every legal move,
and picks the move with the best sampled mean (soloist maximizes card
points, defenders minimize).  This runs at a reduced sample budget so
the demo finishes quickly; the first call also pays the solver's JIT
compilation cost.
"""

import time

import numpy as np

from skatpimc.cards import card_name
from skatpimc.pimc import PlayerConfig, PlayerKind, build_distribution, move_values
from skatpimc.selfplay import random_deal, scripted_setup
from skatpimc.state import GameState, Observation

rng = np.random.default_rng(21)
setup = scripted_setup(random_deal(rng))
state = GameState(setup.deal, setup.decl, setup.soloist)
rng2 = np.random.default_rng(2)
while state.trick_number <= 4:
    legal = state.legal()
    state.play(int(rng2.choice([c for c in range(32) if legal >> c & 1])))

viewer = state.to_move
obs = Observation.from_game(
    state, viewer, bids=setup.bids,
    original_skat=setup.original_skat if viewer == setup.soloist else None,
)
role = "soloist" if viewer == setup.soloist else "defender"
config = PlayerConfig(kind=PlayerKind.NI, n_samples=20, state_cap=100_000, seed=0)

deals, p = build_distribution(obs, config)
print(f"{role} to move at trick {obs.trick_number} "
      f"({setup.decl.kind.value} game)")
print(f"posterior support: {len(deals):,} deals (uniform under NI)")

t0 = time.perf_counter()
mv = move_values(obs, config)
dt = time.perf_counter() - t0
print(f"\nsampled {config.n_samples} deals, solved each for every legal move "
      f"({dt:.1f} s incl. JIT):")
order = np.argsort(mv.means)[::-1]
for i in order:
    print(f"  {card_name(mv.moves[i])}: mean {mv.means[i]:6.2f}")

from skatpimc.pimc import choose_move

best = choose_move(obs, config)
print(f"\n{role} plays {card_name(best)} "
      f"({'max' if role == 'soloist' else 'min'} sampled mean, "
      f"lowest card index on ties)")
