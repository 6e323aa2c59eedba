#!/usr/bin/env python3
"""Run a bundled exemplar and summarize its population dynamics.

Usage:
  python3 scripts/run_exemplar.py predator_prey [--seed 7] [--ticks 120]
                                  [--csv out.csv] [--svg out.svg]
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from ecoloom.analysis import count_cycle_peaks
from ecoloom.compiler import compile_model
from ecoloom.engine import run
from ecoloom.exemplars import ExemplarId, load_exemplar
from ecoloom.series import render_svg


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("exemplar", choices=[e.value for e in ExemplarId])
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--ticks", type=int, default=None)
    parser.add_argument("--csv", type=Path, default=None)
    parser.add_argument("--svg", type=Path, default=None)
    args = parser.parse_args()

    model, config = load_exemplar(args.exemplar)
    if args.seed is not None:
        config = replace(config, rng_seed=args.seed)
    if args.ticks is not None:
        config = replace(config, max_ticks=args.ticks)

    series = run(compile_model(model), config)
    print(f"{model.name}: seed {config.rng_seed}, {config.max_ticks} ticks")
    for cid, name in zip(series.component_ids, series.component_names):
        values = series.values(cid)
        print(
            f"  {name:<14} start {values[0]:>8.0f}  min {min(values):>8.0f}"
            f"  max {max(values):>8.0f}  final {values[-1]:>8.0f}"
            f"  cycle peaks {count_cycle_peaks(values)}"
        )
    if args.csv:
        args.csv.write_text(series.to_csv(), "utf-8")
        print(f"wrote {args.csv}")
    if args.svg:
        args.svg.write_text(render_svg(series), "utf-8")
        print(f"wrote {args.svg}")


if __name__ == "__main__":
    main()
