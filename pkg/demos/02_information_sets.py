"""Count and enumerate the deals consistent with one seat's observation.

At trick one a defender who has seen only their own ten cards faces
42,678,636 possible arrangements of the hidden cards; the soloist, who
also knows the skat, faces 184,756.  Constraints accumulated during
play (voids revealed by failing to follow suit) shrink the set, and the
enumeration supports O(1) unranking so uniform samples never need a
full sweep.
"""

import time

import numpy as np

from skatpimc.dealenum import InfoSet
from skatpimc.selfplay import random_deal, scripted_setup
from skatpimc.state import GameState, Observation

rng = np.random.default_rng(0)
setup = scripted_setup(random_deal(rng))
state = GameState(setup.deal, setup.decl, setup.soloist)

defender = next(s for s in range(3) if s != setup.soloist)
for viewer, label in ((defender, "defender"), (setup.soloist, "soloist")):
    obs = Observation.from_game(state, viewer, bids=setup.bids,
                                original_skat=setup.original_skat)
    t0 = time.perf_counter()
    info = InfoSet(obs)
    n = info.count()
    dt = time.perf_counter() - t0
    print(f"{label} at trick 1: {n:,} consistent deals ({dt*1e3:.1f} ms)")

# play half the game and watch the set shrink
rng2 = np.random.default_rng(1)
while state.trick_number <= 5:
    legal = state.legal()
    state.play(int(rng2.choice([c for c in range(32) if legal >> c & 1])))

obs = Observation.from_game(state, defender, bids=setup.bids)
info = InfoSet(obs)
print(f"\ndefender at trick {obs.trick_number}: {info.count():,} deals")
print(f"void constraints now: {[sorted(v) for v in obs.void_constraints]}")

# unranking: sample three deals uniformly and verify consistency
from skatpimc.dealenum import consistent

for deal in info.sample_uniform(3, seed=9):
    assert deal.hands[defender] == obs.own_initial_hand
    assert consistent(deal, obs)
print("three uniform samples drawn by unranking, all consistent")
