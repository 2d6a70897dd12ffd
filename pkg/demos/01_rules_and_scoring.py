"""Deal a hand, run the scripted declarer, and play a full random game.

Shows the card model (suit*8+rank indexing, rank-then-suit names), the
trick mechanics for the declared game, and the 120-point conservation
between soloist and defenders.
"""

import numpy as np

from skatpimc.cards import card_points, format_cards, set_points
from skatpimc.rules import trick_winner
from skatpimc.selfplay import random_deal, scripted_setup
from skatpimc.state import GameState

rng = np.random.default_rng(42)
setup = scripted_setup(random_deal(rng))

print(f"declaration: {setup.decl}")
print(f"soloist: seat {setup.soloist}, bids {setup.bids}")
for seat in range(3):
    print(f"  seat {seat}: {format_cards(setup.deal.hands[seat])}")
print(f"  skat:   {format_cards(setup.deal.skat)} "
      f"({set_points(setup.deal.skat)} points)")

state = GameState(setup.deal, setup.decl, setup.soloist)
rng2 = np.random.default_rng(7)
while not state.is_over:
    legal = state.legal()
    cards = [c for c in range(32) if legal >> c & 1]
    state.play(int(rng2.choice(cards)))

soloist_trick_pts = 0
defender_trick_pts = 0
for t in state.all_tricks():
    winner = trick_winner(t, setup.decl)
    pts = sum(card_points(c) for c in t.cards)
    side = "soloist" if winner == setup.soloist else "defense"
    print(f"trick {format_cards(sum(1 << c for c in t.cards)):>14s} "
          f"-> seat {winner} ({side}, {pts:2d} pts)")
    if winner == setup.soloist:
        soloist_trick_pts += pts
    else:
        defender_trick_pts += pts

skat_pts = set_points(setup.deal.skat)
total = soloist_trick_pts + defender_trick_pts + skat_pts
print(f"\nsoloist {soloist_trick_pts} + defense {defender_trick_pts} "
      f"+ skat {skat_pts} = {total}  (always 120)")
print(f"final soloist points (incl. skat): {state.final_soloist_points()}")
print(f"outcome: {state.outcome()}")
assert total == 120
