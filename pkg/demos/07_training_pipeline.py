"""End-to-end training pipeline on a tiny corpus.

Generates a handful of self-play records with the engine CLI, builds
training examples (one per decision point and viewer), trains the
card-location network for a couple of epochs, and exports a weight file
the engine can load for BDCI play.  Real runs use thousands of games;
this is just the plumbing at demo scale.
"""

import subprocess
import tempfile
from pathlib import Path


workdir = Path(tempfile.mkdtemp(prefix="skat-demo-"))
records_path = workdir / "games.rec"
examples_path = workdir / "examples.npz"
weights_path = workdir / "net.skatnet"

print("1. generating 8 self-play games (engine CLI, tiny search budget)...", flush=True)
subprocess.run(
    ["skatpimc", "gen-data", "--games", "8", "--seed", "123",
     "--samples", "2", "--state-cap", "4", "--out", str(records_path)],
    check=True,
)

print("2. building training examples...", flush=True)
subprocess.run(
    ["skattrainer", "build", "--records", str(records_path),
     "--out", str(examples_path)],
    check=True,
)

print("3. training for 2 epochs...", flush=True)
subprocess.run(
    ["skattrainer", "train", "--examples", str(examples_path),
     "--kind", "suit", "--epochs", "2", "--out", str(weights_path)],
    check=True,
)

print("4. evaluating on the holdout split...", flush=True)
subprocess.run(
    ["skattrainer", "eval", "--examples", str(examples_path),
     "--weights", str(weights_path), "--holdout",
     "--out", str(workdir / "metrics.csv")],
    check=True,
)

print("5. loading the weight file back into the engine...", flush=True)
from skatpimc.rules import GameKind
from skatpimc.weightio import load_weights

weights, kind = load_weights(weights_path)
print(f"   engine loaded a {kind.value} network "
      f"({sum(w.size + b.size for w, b in weights.all_layers()):,} parameters)")
print(f"\nartifacts in {workdir}")
