"""Sweep the associativity oracle over degree triples and models, with timings.

    python3 scripts/assoc_sweep.py --trials 3 --max-total 4
"""
import argparse
import itertools
import time
from dataclasses import dataclass

from surface_shuffle.lambda_ops import parse_model
from surface_shuffle.testkit import MAX_ORACLE_DEGREE, run_assoc_trials


@dataclass
class SweepConfig:
    models: tuple = ("affine", "surface:rW=2")
    trials: int = 3
    seed: int = 0
    max_total: int = 4


def degree_triples(max_total: int):
    for t in itertools.product(range(0, max_total + 1), repeat=3):
        if 1 <= sum(t) <= max_total and min(t) >= 1:
            yield t


def sweep(cfg: SweepConfig):
    rows = []
    for name in cfg.models:
        model = parse_model(name)
        for degrees in degree_triples(cfg.max_total):
            start = time.perf_counter()
            results = run_assoc_trials(model, degrees, cfg.seed, cfg.trials)
            elapsed = time.perf_counter() - start
            passed = sum(r.passed for r in results)
            rows.append((name, degrees, passed, len(results), elapsed))
            print(f"{name:<14} {','.join(map(str, degrees)):<7} {passed}/{len(results)} pass  {elapsed:7.2f}s",
                  flush=True)
    return rows


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--models", nargs="+", default=list(SweepConfig.models))
    p.add_argument("--trials", type=int, default=SweepConfig.trials)
    p.add_argument("--seed", type=int, default=SweepConfig.seed)
    p.add_argument("--max-total", type=int, default=SweepConfig.max_total,
                   help=f"largest total degree (the oracle refuses above {MAX_ORACLE_DEGREE})")
    a = p.parse_args()
    rows = sweep(SweepConfig(tuple(a.models), a.trials, a.seed, a.max_total))
    failed = [r for r in rows if r[2] != r[3]]
    print(f"{len(rows)} cells, {len(failed)} with failures")
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()
