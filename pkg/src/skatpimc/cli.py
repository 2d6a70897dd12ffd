"""Command-line surface.

Subcommands::

    solve       exact perfect-information value of a record prefix
    play-move   chosen card and per-move values for the seat to move
    tssr        true-state selection ratio table over self-play games
    tournament  paired-match comparison of two player configurations
    gen-data    self-play corpus generation (game record files)
    count       information-set size for a record prefix

Every subcommand accepts ``--seed`` and is bit-reproducible given it.
"""

from __future__ import annotations

import argparse
import csv
import sys
from collections import defaultdict

import numpy as np

from .cards import card_name, set_points
from .dealenum import count_deals
from .evaluation import (
    ORACLE,
    collect_tssr,
    generate_records,
    play_game,
    run_tournament,
)
from .pimc import (
    Objective,
    PlayerConfig,
    PlayerKind,
    move_values,
)
from .recordio import (
    GameRecord,
    read_records,
    record_from_game,
    serialize_records,
    write_records,
)
from .rules import GameKind
from .selfplay import random_deal, scripted_setup
from .solver import PerfectState, Solver
from .state import Observation
from .weightio import load_weights

PLAYER_CHOICES = ("ni", "bdi", "bdci")


def _add_player_flags(p: argparse.ArgumentParser, suffix: str = ""):
    p.add_argument(f"--player{suffix}", choices=PLAYER_CHOICES, default="ni",
                   help="inference variant")
    p.add_argument(f"--weights{suffix}", metavar="PATH",
                   help="network weight file (required for bdi/bdci)")


def _player_config(args, suffix: str = "", kind: GameKind | None = None) -> PlayerConfig:
    name = getattr(args, f"player{suffix}".replace("-", "_"))
    weights_path = getattr(args, f"weights{suffix}".replace("-", "_"))
    weights = None
    if name in ("bdi", "bdci"):
        if weights_path is None:
            raise SystemExit(f"--player{suffix} {name} requires --weights{suffix}")
        weights, _ = load_weights(weights_path, kind)
    elif weights_path:
        weights, _ = load_weights(weights_path, kind)
    return PlayerConfig(
        kind=PlayerKind(name),
        n_samples=args.samples,
        state_cap=args.state_cap,
        seed=args.seed,
        objective=Objective(args.objective),
        weights=weights,
    )


def _load_prefix(args) -> tuple[GameRecord, int]:
    records = read_records(args.record)
    if not records:
        raise SystemExit(f"{args.record}: no records")
    record = records[args.index]
    n_moves = len(record.moves) if args.moves is None else args.moves
    return record, n_moves


def _observation(record: GameRecord, n_moves: int, viewer: int) -> Observation:
    state = record.replay(n_moves)
    setup = record.setup()
    return Observation.from_game(
        state, viewer, bids=setup.bids,
        original_skat=setup.original_skat if viewer == setup.soloist else None,
    )


def _out_stream(args):
    return open(args.out, "w", newline="") if args.out else sys.stdout


def cmd_solve(args) -> int:
    record, n_moves = _load_prefix(args)
    state = record.replay(n_moves)
    ps = PerfectState(
        hands=tuple(state.hands),
        decl=record.decl,
        soloist=record.soloist,
        trick=state.current_trick,
        soloist_points=state.soloist_points,
        skat_points=set_points(record.deal.skat),
        soloist_tricks=state.soloist_tricks,
        defender_tricks=state.defender_tricks,
    )
    value = Solver().solve(ps)
    if value.null_win is not None:
        print(f"null_win {int(value.null_win)}")
    else:
        print(f"soloist_points {value.soloist_points}")
    return 0


def cmd_play_move(args) -> int:
    record, n_moves = _load_prefix(args)
    state = record.replay(n_moves)
    viewer = state.to_move
    obs = _observation(record, n_moves, viewer)
    config = _player_config(args, kind=record.decl.kind)
    mv = move_values(obs, config)
    side = 1.0 if viewer == record.soloist else -1.0
    card = mv.moves[int(np.argmax(side * mv.totals))]
    print(f"move {card_name(card)}")
    for m, mean in zip(mv.moves, mv.means):
        print(f"value {card_name(m)} {mean:.4f}")
    return 0


def cmd_count(args) -> int:
    record, n_moves = _load_prefix(args)
    state = record.replay(n_moves)
    viewer = state.to_move if args.viewer is None else args.viewer
    obs = _observation(record, n_moves, viewer)
    print(count_deals(obs))
    return 0


def cmd_tssr(args) -> int:
    if args.player == "oracle":
        method = ORACLE
    else:
        method = _player_config(args)
    samples = collect_tssr(args.games, method, seed=args.seed)
    cells = defaultdict(list)
    for s in samples:
        cells[(s.trick, s.role.value, s.game_kind.value)].append(s)
    stream = _out_stream(args)
    writer = csv.writer(stream)
    writer.writerow(["trick", "role", "kind", "n", "mean_tssr", "mean_states"])
    for (trick, role, kind), group in sorted(cells.items()):
        writer.writerow([
            trick, role, kind, len(group),
            float(np.mean([s.tssr for s in group])),
            float(np.mean([s.n_states for s in group])),
        ])
    if stream is not sys.stdout:
        stream.close()
    return 0


def cmd_tournament(args) -> int:
    kind = GameKind(args.kind) if args.kind else None
    if args.records:
        records = [r.setup() for r in read_records(args.records)]
        if kind:
            records = [r for r in records if r.decl.kind is kind]
        if not records:
            raise SystemExit("no usable records")
    else:
        records = generate_records(args.matches, seed=args.seed, kind=kind)
    config_a = _player_config(args, suffix="-a", kind=kind)
    config_b = _player_config(args, suffix="-b", kind=kind)
    summary = run_tournament(
        records, config_a, config_b, n_matches=args.matches, base_seed=args.seed
    )
    stream = _out_stream(args)
    rows = summary.rows()
    keys = sorted({k for row in rows for k in row})
    writer = csv.DictWriter(stream, fieldnames=keys)
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    if stream is not sys.stdout:
        stream.close()
    print(
        f"delta {summary.delta:.3f} se {summary.se_delta:.3f} "
        f"welch_p {summary.welch_p:.4f}",
        file=sys.stderr,
    )
    return 0


def cmd_gen_data(args) -> int:
    kind = GameKind(args.kind) if args.kind else None
    config = _player_config(args)
    rng = np.random.default_rng(args.seed)
    records = []
    attempt = 0
    while len(records) < args.games:
        setup = scripted_setup(random_deal(rng))
        attempt += 1
        if kind and setup.decl.kind is not kind:
            continue
        state = play_game(setup, [config] * 3, (args.seed, attempt))
        records.append(record_from_game(setup, state))
    if args.out:
        write_records(records, args.out)
        print(f"wrote {len(records)} records to {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(serialize_records(records))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="skatpimc")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, prefix=False, player=False):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", metavar="CSV", default=None)
        if prefix:
            p.add_argument("record", help="game record file")
            p.add_argument("--index", type=int, default=0,
                           help="record number within the file")
            p.add_argument("--moves", type=int, default=None,
                           help="prefix length (default: all moves)")
        if player:
            p.add_argument("--samples", type=int, default=160)
            p.add_argument("--state-cap", type=int, default=2_000_000)
            p.add_argument("--objective", choices=("points", "win_prob"),
                           default="points")

    p = sub.add_parser("solve", help="perfect-information value of a prefix")
    common(p, prefix=True)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("play-move", help="choose a card for the seat to move")
    common(p, prefix=True, player=True)
    _add_player_flags(p)
    p.set_defaults(func=cmd_play_move)

    p = sub.add_parser("count", help="information-set size of a prefix")
    common(p, prefix=True)
    p.add_argument("--viewer", type=int, default=None, choices=(0, 1, 2))
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("tssr", help="true-state selection ratio table")
    common(p, player=True)
    p.add_argument("--player", choices=PLAYER_CHOICES + ("oracle",),
                   default="ni")
    p.add_argument("--weights", metavar="PATH")
    p.add_argument("--games", type=int, default=100)
    p.set_defaults(func=cmd_tssr)

    p = sub.add_parser("tournament", help="paired-match player comparison")
    common(p, player=True)
    _add_player_flags(p, "-a")
    _add_player_flags(p, "-b")
    p.add_argument("--matches", type=int, default=100)
    p.add_argument("--records", metavar="PATH", default=None)
    p.add_argument("--kind", choices=("suit", "grand", "null"), default=None)
    p.set_defaults(func=cmd_tournament)

    p = sub.add_parser("gen-data", help="self-play corpus generation")
    common(p, player=True)
    _add_player_flags(p)
    p.add_argument("--games", type=int, default=100)
    p.add_argument("--kind", choices=("suit", "grand", "null"), default=None)
    p.set_defaults(func=cmd_gen_data)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
