"""True-state selection ratio (TSSR) and the paired-match tournament.

TSSR measures how much more likely a method is to sample the true deal
than uniform random sampling: ``tssr = p(true deal | observation) * n``
where n is the information-set size.  The uniform method scores exactly
1, a perfect oracle scores n, and no method can beat the oracle.

Tournaments pair two player configurations on pre-declared game records.
Each match plays the same deal twice with the soloist/defender role
assignment reversed, scoring both games with tournament points.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np
from scipy import stats

from .dealenum import InfoSet, consistent
from .pimc import PlayerConfig, PlayerKind, _location_matrix, choose_move
from .rules import GameKind, game_value, score_game
from .selfplay import Setup, random_deal, random_game, scripted_setup
from .state import Deal, GameState, Observation

ORACLE = "oracle"  # method sentinel: always selects the true deal


class Role(enum.Enum):
    SOLOIST = "soloist"
    DEFENDER = "defender"


@dataclass(frozen=True)
class TssrSample:
    trick: int  # 1..8
    role: Role
    game_kind: GameKind
    tssr: float
    n_states: int


def tssr(
    obs: Observation, true_deal: Deal, method: PlayerConfig | str
) -> TssrSample:
    """One TSSR measurement, computed directly from the normalized
    deal distribution (never by Monte-Carlo)."""
    if not consistent(true_deal, obs):
        raise ValueError("true_deal is inconsistent with the observation")
    info = InfoSet(obs)
    n = info.count()
    role = Role.SOLOIST if obs.viewer == obs.soloist else Role.DEFENDER

    if method == ORACLE:
        value = float(n)
    elif method.kind is PlayerKind.NI:
        value = 1.0
    else:
        L = _location_matrix(obs, method)
        value = 1.0 if L is None else info.true_state_ratio(L, true_deal)

    return TssrSample(
        trick=obs.trick_number,
        role=role,
        game_kind=obs.decl.kind,
        tssr=value,
        n_states=n,
    )


def collect_tssr(
    n_games: int,
    method: PlayerConfig | str,
    seed: int,
    tricks: range = range(1, 9),
) -> list[TssrSample]:
    """TSSR samples from random self-play games, one soloist and one
    defender observation per listed trick."""
    out: list[TssrSample] = []
    rng = np.random.default_rng(seed)
    for _ in range(n_games):
        setup, state = random_game(rng)
        moves = [card for _, card in state.moves()]
        for trick in tricks:
            prefix = GameState(setup.deal, setup.decl, setup.soloist)
            for card in moves[: 3 * (trick - 1)]:
                prefix.play(card)
            for viewer in (setup.soloist, (setup.soloist + 1) % 3):
                obs = Observation.from_game(
                    prefix, viewer, bids=setup.bids,
                    original_skat=setup.original_skat
                    if viewer == setup.soloist else None,
                )
                out.append(tssr(obs, setup.deal, method))
    return out


# -- tournament harness ----------------------------------------------------


@dataclass(frozen=True)
class GameSummary:
    kind: GameKind
    value: int  # game value used for scoring
    soloist_side: str  # "A" or "B"
    soloist_won: bool
    points_a: int
    points_b: int


@dataclass(frozen=True)
class MatchResult:
    """Two games on one record with the role assignment reversed."""

    games: tuple[GameSummary, GameSummary]

    @property
    def points_a(self) -> int:
        return sum(g.points_a for g in self.games)

    @property
    def points_b(self) -> int:
        return sum(g.points_b for g in self.games)


def _move_seed(entropy: tuple[int, ...]) -> int:
    return int(np.random.SeedSequence(entropy).generate_state(1)[0])


def play_game(
    setup: Setup,
    seat_configs: list[PlayerConfig],
    seed_entropy: tuple[int, ...] = (0,),
) -> GameState:
    """Cardplay a record to the end, one PIMC config per seat.

    Every decision gets its own seed derived from (seed_entropy, move
    index), so replays are bit-identical."""
    state = GameState(setup.deal, setup.decl, setup.soloist)
    move_idx = 0
    while not state.is_over:
        seat = state.to_move
        obs = Observation.from_game(
            state, seat, bids=setup.bids,
            original_skat=setup.original_skat if seat == setup.soloist else None,
        )
        cfg = replace(seat_configs[seat], seed=_move_seed(seed_entropy + (move_idx,)))
        state.play(choose_move(obs, cfg))
        move_idx += 1
    return state


def run_match(
    setup: Setup,
    config_a: PlayerConfig,
    config_b: PlayerConfig,
    match_id: int = 0,
    base_seed: int = 0,
) -> MatchResult:
    """Play the record twice: A as soloist vs two B defenders, then the
    roles reversed.  The configured player controlling both defender
    seats is credited with both defender awards."""
    games = []
    soloist_cards = setup.deal.hands[setup.soloist] | setup.deal.skat
    for game_idx, side in enumerate(("A", "B")):
        solo_cfg = config_a if side == "A" else config_b
        def_cfg = config_b if side == "A" else config_a
        seat_configs = [def_cfg] * 3
        seat_configs[setup.soloist] = solo_cfg
        state = play_game(setup, seat_configs, (base_seed, match_id, game_idx))
        outcome = state.outcome()
        pts = score_game(setup.decl, soloist_cards, outcome)
        solo_pts, def_pts = pts[0], pts[1] + pts[2]
        value = (
            23 if setup.decl.kind is GameKind.NULL
            else game_value(setup.decl, soloist_cards,
                            outcome.schneider, outcome.schwarz)
        )
        games.append(
            GameSummary(
                kind=setup.decl.kind,
                value=value,
                soloist_side=side,
                soloist_won=outcome.won,
                points_a=solo_pts if side == "A" else def_pts,
                points_b=def_pts if side == "A" else solo_pts,
            )
        )
    return MatchResult(games=(games[0], games[1]))


@dataclass(frozen=True)
class TournamentSummary:
    n_matches: int
    mean_a: float
    mean_b: float
    std_a: float
    std_b: float
    delta: float  # mean per-game points, A minus B
    se_delta: float
    welch_p: float  # two-sided Welch test on per-game points
    soloist_wins: dict  # kind -> (soloist wins, games as soloist), both sides

    @property
    def n_games(self) -> int:
        return 2 * self.n_matches

    def rows(self) -> list[dict]:
        """Machine-readable summary, one row per statistic cell."""
        out = [
            {
                "cell": "overall",
                "n_games": self.n_games,
                "mean_a": self.mean_a,
                "mean_b": self.mean_b,
                "std_a": self.std_a,
                "std_b": self.std_b,
                "delta": self.delta,
                "se_delta": self.se_delta,
                "welch_p": self.welch_p,
            }
        ]
        for kind, (wins, games) in sorted(
            self.soloist_wins.items(), key=lambda kv: kv[0].name
        ):
            out.append(
                {
                    "cell": f"soloist_win_{kind.name.lower()}",
                    "n_games": games,
                    "wins": wins,
                    "win_pct": 100.0 * wins / games if games else math.nan,
                }
            )
        return out


def run_tournament(
    records: list[Setup],
    config_a: PlayerConfig,
    config_b: PlayerConfig,
    n_matches: int,
    base_seed: int = 0,
) -> TournamentSummary:
    if not records:
        raise ValueError("empty record list")
    pts_a: list[int] = []
    pts_b: list[int] = []
    wins: dict[GameKind, list[int]] = {}
    for m in range(n_matches):
        result = run_match(
            records[m % len(records)], config_a, config_b,
            match_id=m, base_seed=base_seed,
        )
        for g in result.games:
            pts_a.append(g.points_a)
            pts_b.append(g.points_b)
            tally = wins.setdefault(g.kind, [0, 0])
            tally[0] += int(g.soloist_won)
            tally[1] += 1
    a = np.array(pts_a, dtype=np.float64)
    b = np.array(pts_b, dtype=np.float64)
    n = len(a)
    var_a = a.var(ddof=1) if n > 1 else 0.0
    var_b = b.var(ddof=1) if n > 1 else 0.0
    se = math.sqrt(var_a / n + var_b / n)
    if se > 0:
        welch_p = float(stats.ttest_ind(a, b, equal_var=False).pvalue)
    else:
        welch_p = 1.0
    return TournamentSummary(
        n_matches=n_matches,
        mean_a=float(a.mean()),
        mean_b=float(b.mean()),
        std_a=float(math.sqrt(var_a)),
        std_b=float(math.sqrt(var_b)),
        delta=float(a.mean() - b.mean()),
        se_delta=se,
        welch_p=welch_p,
        soloist_wins={k: (v[0], v[1]) for k, v in wins.items()},
    )


def generate_records(
    n: int, seed: int, kind: GameKind | None = None
) -> list[Setup]:
    """Scripted-declarer records for tournaments, optionally filtered to
    one game kind."""
    rng = np.random.default_rng(seed)
    out: list[Setup] = []
    while len(out) < n:
        setup = scripted_setup(random_deal(rng))
        if kind is None or setup.decl.kind is kind:
            out.append(setup)
    return out
