"""Perfect-information Monte-Carlo move selection with state inference.

A player builds a probability distribution over the deals consistent
with its observation (uniform, or weighted by the inference network),
samples deals from it with replacement, solves every legal move exactly
in each sampled deal, and plays the move with the best mean value for
its side.  Three variants differ only in the distribution:

* NI   -- no inference: uniform over the information set.
* BDI  -- bidding/declaration inference: network weights computed from
          the observation with all cardplay cues removed.
* BDCI -- full inference: network weights from the complete observation.

Information sets larger than ``state_cap`` are first reduced to a
uniform random subset of that size, which is then weighted.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .cards import iter_cards, set_points
from .dealenum import InfoSet
from .features import HorizonError, extract_features, without_cardplay_cues
from .inference import weight_distribution
from .network import NetworkWeights, forward
from .rules import NUM_SEATS, GameKind, legal_moves
from .solver import batch_move_values
from .state import Deal, Observation

WIN_THRESHOLD = 61  # minimum soloist card points for a suit/grand win
STATE_CAP_DEFAULT = 2_000_000


class PlayerKind(enum.Enum):
    NI = "ni"
    BDI = "bdi"
    BDCI = "bdci"


class Objective(enum.Enum):
    POINTS = "points"
    WIN_PROB = "win_prob"


@dataclass(frozen=True)
class PlayerConfig:
    """One PIMC player: inference variant plus search budget."""

    kind: PlayerKind
    n_samples: int = 160
    state_cap: int = STATE_CAP_DEFAULT
    seed: int = 0
    objective: Objective = Objective.POINTS
    weights: NetworkWeights | None = None  # required for BDI/BDCI

    def __post_init__(self):
        if self.n_samples < 1:
            raise ValueError("n_samples must be >= 1")
        if self.state_cap < self.n_samples:
            raise ValueError("state_cap must be >= n_samples")


@dataclass(frozen=True)
class MoveValues:
    """Per-move evaluation summary; every move sees every sampled deal."""

    moves: tuple[int, ...]  # ascending card indices
    totals: np.ndarray  # accumulated value v[m] over the samples
    n_samples: int

    @property
    def means(self) -> np.ndarray:
        return self.totals / self.n_samples


def legal_card_list(obs: Observation) -> list[int]:
    """The viewer's legal moves, ascending by card index."""
    mask = legal_moves(obs.own_hand_now(), obs.current_trick, obs.decl)
    return list(iter_cards(mask))


def build_distribution(
    obs: Observation, config: PlayerConfig
) -> tuple[list[Deal], np.ndarray]:
    """Consistent deals plus their normalized selection probabilities."""
    infoset = InfoSet(obs)
    if infoset.count() > config.state_cap:
        deals = infoset.sample_uniform(config.state_cap, config.seed)
    else:
        deals = list(infoset.enumerate())
    if config.kind is PlayerKind.NI:
        return deals, np.full(len(deals), 1.0 / len(deals))
    L = _location_matrix(obs, config)
    if L is None:  # past the encoding horizon: tiny sets, uniform is fine
        return deals, np.full(len(deals), 1.0 / len(deals))
    return deals, weight_distribution(L, deals)


def _location_matrix(obs: Observation, config: PlayerConfig) -> np.ndarray | None:
    if config.weights is None:
        raise ValueError(f"{config.kind.name} requires network weights")
    try:
        features = extract_features(obs)
    except HorizonError:
        return None
    if config.kind is PlayerKind.BDI:
        features = without_cardplay_cues(features)
    return forward(config.weights, features)


def _objective_values(
    obs: Observation,
    deals: list[Deal],
    moves: list[int],
    objective: Objective,
) -> np.ndarray:
    """(n_deals, n_moves) value of each move from the soloist's side."""
    played = [obs.played_by(seat) for seat in range(NUM_SEATS)]
    remaining = np.array(
        [[d.hands[s] & ~played[s] for s in range(NUM_SEATS)] for d in deals],
        dtype=np.int64,
    )
    raw = batch_move_values(
        remaining, obs.decl, obs.soloist, obs.current_trick, moves
    ).astype(np.float64)

    if obs.decl.kind is GameKind.NULL:
        # raw is a takes-no-future-trick flag; a trick already taken loses
        if obs.tricks_won()[0] > 0:
            raw[:] = 0.0
        return raw

    captured = obs.captured_soloist_points()
    skat = np.array([set_points(d.skat) for d in deals], dtype=np.float64)
    total = captured + skat[:, None] + raw
    if objective is Objective.WIN_PROB:
        return (total >= WIN_THRESHOLD).astype(np.float64)
    return total


def _effective_objective(obs: Observation, config: PlayerConfig) -> Objective:
    if obs.decl.kind is GameKind.NULL:
        return Objective.WIN_PROB
    return config.objective


def sample_indices(p: np.ndarray, n: int, rng: np.random.Generator) -> np.ndarray:
    """n deal indices drawn with replacement from the distribution."""
    return rng.choice(len(p), size=n, replace=True, p=p)


def move_values(obs: Observation, config: PlayerConfig) -> MoveValues:
    """Sampled per-move values over ``n_samples`` deals (with replacement)."""
    moves = legal_card_list(obs)
    if not moves:
        raise ValueError("no legal moves")
    deals, p = build_distribution(obs, config)
    rng = np.random.default_rng(config.seed)
    idx = sample_indices(p, config.n_samples, rng)
    uniq, counts = np.unique(idx, return_counts=True)
    vals = _objective_values(
        obs, [deals[i] for i in uniq], moves, _effective_objective(obs, config)
    )
    return MoveValues(
        moves=tuple(moves),
        totals=counts.astype(np.float64) @ vals,
        n_samples=config.n_samples,
    )


def exact_move_values(obs: Observation, config: PlayerConfig) -> MoveValues:
    """Full weighted enumeration: v[m] = sum_s p[s] * value(s, m)."""
    moves = legal_card_list(obs)
    if not moves:
        raise ValueError("no legal moves")
    deals, p = build_distribution(obs, config)
    vals = _objective_values(obs, deals, moves, _effective_objective(obs, config))
    return MoveValues(moves=tuple(moves), totals=p @ vals, n_samples=1)


def choose_move(obs: Observation, config: PlayerConfig, exact: bool = False) -> int:
    """Best move for the viewer's side; ties go to the lowest card index."""
    moves = legal_card_list(obs)
    if not moves:
        raise ValueError("no legal moves")
    if len(moves) == 1:
        return moves[0]
    mv = exact_move_values(obs, config) if exact else move_values(obs, config)
    side = 1.0 if obs.viewer == obs.soloist else -1.0
    return mv.moves[int(np.argmax(side * mv.totals))]
