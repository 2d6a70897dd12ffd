"""Command-line interface: gen / build / train / eval.

``gen`` shells out to the engine's ``skatpimc gen-data`` command; the
other commands work purely from the text records, example archives, and
binary weight files.
"""

from __future__ import annotations

import argparse
import subprocess
import sys

import numpy as np

from .examples import ExampleSet, build_examples, split_by_game
from .model import LocationNet, TrainConfig
from .records import read_records
from .weightfile import load_weights, save_weights

KINDS = ("suit", "grand", "null")


def cmd_gen(args) -> int:
    cmd = [
        "skatpimc", "gen-data",
        "--games", str(args.games),
        "--seed", str(args.seed),
        "--out", args.out,
    ]
    if args.kind:
        cmd += ["--kind", args.kind]
    if args.samples is not None:
        cmd += ["--samples", str(args.samples)]
    if args.state_cap is not None:
        cmd += ["--state-cap", str(args.state_cap)]
    result = subprocess.run(cmd)
    return result.returncode


def cmd_build(args) -> int:
    records = read_records(args.records)
    examples = build_examples(records, kind=args.kind)
    examples.save(args.out)
    print(f"{len(examples)} examples from {len(records)} records -> {args.out}")
    return 0


def cmd_train(args) -> int:
    from .train import train

    examples = ExampleSet.load(args.examples)
    if len(examples) == 0:
        print("no examples", file=sys.stderr)
        return 1
    config = TrainConfig(
        batch_size=args.batch_size,
        learning_rate=args.learning_rate,
        max_epochs=args.epochs,
        patience=args.patience,
        seed=args.seed,
    )
    result = train(examples, config, bdi=args.bdi, log=print)
    save_weights(result.model.export_layers(), args.out, args.kind)
    print(f"best epoch {result.best_epoch} "
          f"val loss {min(result.val_losses):.4f} -> {args.out}")
    return 0


def cmd_eval(args) -> int:
    from .evaluate import evaluate, write_csv

    examples = ExampleSet.load(args.examples)
    layers, kind = load_weights(args.weights)
    model = LocationNet()
    model.load_layers(layers)
    if args.holdout:
        _, idx = split_by_game(examples, seed=args.seed)
    else:
        idx = np.arange(len(examples))
    cells = evaluate(model, examples, idx=idx, bdi=args.bdi)
    write_csv(cells, args.out)
    for c in cells:
        print(f"trick {c.trick} {c.role:8s}: acc {c.accuracy:.3f} "
              f"logp {c.log_probability:.3f} ({c.n_unknown} cards)")
    print(f"kind {kind} -> {args.out}")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="skattrainer",
        description="Train card-location networks from game records.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate self-play records via the engine")
    p.add_argument("--games", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--kind", choices=KINDS)
    p.add_argument("--samples", type=int)
    p.add_argument("--state-cap", type=int)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("build", help="build a training-example archive from records")
    p.add_argument("--records", required=True)
    p.add_argument("--kind", choices=KINDS)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("train", help="train a network and export a weight file")
    p.add_argument("--examples", required=True)
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--bdi", action="store_true",
                   help="train on declaration-only inputs (cardplay cues zeroed)")
    p.add_argument("--batch-size", type=int, default=32)
    p.add_argument("--learning-rate", type=float, default=1e-4)
    p.add_argument("--epochs", type=int, default=200)
    p.add_argument("--patience", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("eval", help="evaluate a weight file on an example archive")
    p.add_argument("--examples", required=True)
    p.add_argument("--weights", required=True)
    p.add_argument("--bdi", action="store_true")
    p.add_argument("--holdout", action="store_true",
                   help="restrict to the validation split used in training")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_eval)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
