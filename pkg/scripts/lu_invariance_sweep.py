"""Worst local-unitary drift per (N, M) over Haar trials."""
import argparse
import time
from dataclasses import dataclass

from luent.lu import invariance_suite, random_state


@dataclass(frozen=True)
class Config:
    dims: tuple[int, ...] = (2, 3, 4, 5, 6)
    parties: tuple[int, ...] = (2, 3, 4)
    trials: int = 1000
    seed: int = 0


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dims", type=int, nargs="+", default=list(Config.dims))
    ap.add_argument("--parties", type=int, nargs="+", default=list(Config.parties))
    ap.add_argument("--trials", type=int, default=Config.trials)
    ap.add_argument("--seed", type=int, default=Config.seed)
    args = ap.parse_args(argv)
    cfg = Config(tuple(args.dims), tuple(args.parties), args.trials, args.seed)
    print(f"{'N':>2} {'M':>2}  {'worst drift':<12}{'quantity':<12}seconds")
    for n in cfg.dims:
        for m in cfg.parties:
            t0 = time.perf_counter()
            rep = invariance_suite(random_state(n, m, cfg.seed), cfg.trials, cfg.seed)
            key = max(rep.max_drift, key=rep.max_drift.get)
            print(f"{n:>2} {m:>2}  {rep.worst:<12.3e}{key:<12}{time.perf_counter() - t0:.2f}")


if __name__ == "__main__":
    main()
