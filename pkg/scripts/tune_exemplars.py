#!/usr/bin/env python3
"""Sweep seeds over the exemplars and report signature-shape pass rates.

Usage:
  python3 scripts/tune_exemplars.py [exemplar ...] [--seeds N] [--verbose]

Each exemplar must show its characteristic dynamics for at least 80% of
seeds 1..N (default 20). Run this after changing exemplar parameters.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import replace
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from ecoloom.analysis import exclusion_tick, is_capped_growth, is_cyclic, is_logistic
from ecoloom.compiler import compile_model
from ecoloom.engine import run
from ecoloom.exemplars import ExemplarId, load_exemplar


def check(exemplar_id: str, seed: int, verbose: bool) -> tuple[bool, float]:
    model, config = load_exemplar(exemplar_id)
    program = compile_model(model)
    t0 = time.perf_counter()
    series = run(program, replace(config, rng_seed=seed))
    elapsed = time.perf_counter() - t0
    if exemplar_id == "predator_prey":
        ok = is_cyclic(series.values("sheep"))
    elif exemplar_id == "logistic_growth":
        ok = is_logistic(series.values("rabbit"))
    elif exemplar_id == "exponential_growth":
        totals = [sum(r.counts.values()) for r in series.records]
        ok = is_capped_growth(totals, 25_000) and totals[-1] >= 25_000
    else:
        ticks = [exclusion_tick(series.values(cid)) for cid in ("rabbit", "marmot")]
        ok = any(t is not None for t in ticks)
    if verbose:
        peek = {cid: [int(v) for v in series.values(cid)[::10]] for cid in series.component_ids}
        print(f"  seed {seed:2d}: {'PASS' if ok else 'FAIL'} ({elapsed:.2f}s) {peek}")
    return ok, elapsed


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("exemplars", nargs="*", default=None)
    parser.add_argument("--seeds", type=int, default=20)
    parser.add_argument("--verbose", action="store_true")
    args = parser.parse_args()
    names = args.exemplars or [e.value for e in ExemplarId]

    failures = 0
    for name in names:
        results = []
        slowest = 0.0
        for seed in range(1, args.seeds + 1):
            ok, elapsed = check(name, seed, args.verbose)
            results.append(ok)
            slowest = max(slowest, elapsed)
        rate = sum(results) / len(results)
        status = "OK " if rate >= 0.8 else "LOW"
        print(f"{status} {name}: {sum(results)}/{len(results)} seeds pass (slowest {slowest:.2f}s)")
        if rate < 0.8:
            failures += 1
    sys.exit(1 if failures else 0)


if __name__ == "__main__":
    main()
