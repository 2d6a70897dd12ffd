"""Weight an information set by a card-location network.

A (32 cards x 4 locations) row-stochastic matrix L assigns each hidden
card a probability of sitting in each seat's hand or the skat.  A deal's
weight is the product of its cards' entries; normalizing over the
information set gives the posterior used to bias PIMC sampling.  With
all-zero weights the network is exactly uniform and the posterior
collapses to the uniform distribution.
"""

import numpy as np

from skatpimc.dealenum import InfoSet
from skatpimc.features import extract_features
from skatpimc.network import NetworkWeights, forward
from skatpimc.selfplay import random_deal, scripted_setup
from skatpimc.state import GameState, Observation

rng = np.random.default_rng(12)
setup = scripted_setup(random_deal(rng))
state = GameState(setup.deal, setup.decl, setup.soloist)
rng2 = np.random.default_rng(5)
while state.trick_number <= 6:  # play to trick 7 for a small info set
    legal = state.legal()
    state.play(int(rng2.choice([c for c in range(32) if legal >> c & 1])))

defender = next(s for s in range(3) if s != setup.soloist)
obs = Observation.from_game(state, defender, bids=setup.bids)
info = InfoSet(obs)
print(f"defender info set at trick {obs.trick_number}: {info.count():,} deals")

features = extract_features(obs)

zero = NetworkWeights.zeros()
L0 = forward(zero, features)
assert np.allclose(L0, 0.25)
print("zero weights -> L is uniform 0.25 everywhere")

rand = NetworkWeights.random(np.random.default_rng(99))
L1 = forward(rand, features)
print(f"random weights -> row sums {L1.sum(axis=1).min():.6f}.."
      f"{L1.sum(axis=1).max():.6f} (row-stochastic)")

p0 = info.posterior_all(L0)
p1 = info.posterior_all(L1)
print(f"posterior under zero weights: min {p0.min():.3e} max {p0.max():.3e} "
      f"(uniform = {1/info.count():.3e})")
print(f"posterior under random weights: min {p1.min():.3e} max {p1.max():.3e}")

ratio = info.true_state_ratio(L1, state.deal)
print(f"true-state ratio of the random network here: {ratio:.3f} "
      f"(1.0 = no better than uniform)")
