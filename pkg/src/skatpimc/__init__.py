"""Skat cardplay engine: PIMC search guided by card-location inference.

The engine plays the cardplay phase of Skat with perfect-information
Monte-Carlo search: it enumerates or samples the deals consistent with a
player's observation, optionally reweights them with a learned
card-location network, solves each sampled deal exactly with a
double-dummy solver, and plays the move with the best average value.

Main entry points:

* :mod:`skatpimc.rules` / :mod:`skatpimc.state` -- game rules, scoring,
  game state, and per-player observations.
* :mod:`skatpimc.dealenum` -- information-set counting, enumeration,
  ranking/unranking, and weighted distributions.
* :mod:`skatpimc.solver` -- exact double-dummy solver.
* :mod:`skatpimc.pimc` -- move selection (:func:`~skatpimc.pimc.choose_move`).
* :mod:`skatpimc.evaluation` -- TSSR measurement, matches, tournaments.
* :mod:`skatpimc.recordio` / :mod:`skatpimc.weightio` -- text game
  records and binary network weight files.
* :mod:`skatpimc.cli` -- the ``skatpimc`` command.
"""

__version__ = "0.1.0"
