"""Sweep random rank-two states and tabulate criterion verdicts against PPT."""
import argparse
from collections import Counter
from dataclasses import dataclass

import numpy as np

from luent.lu import haar_unitary
from luent.separability import RankTwoMixedState, separability_check
from luent.state import PureBipartiteState


@dataclass(frozen=True)
class Config:
    dims: tuple[int, ...] = (2, 3, 4)
    states: int = 500
    seed: int = 0


def unit(rng, n):
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)


def families(rng, n):
    u = haar_unitary(n * n, rng)
    a1, a2 = u[:, 0].reshape(n, n), u[:, 1].reshape(n, n)
    yield "haar", RankTwoMixedState(rng.uniform(0.01, 0.99), PureBipartiteState(n, a1), PureBipartiteState(n, a2))
    vs = [np.kron(unit(rng, n), unit(rng, n)) for _ in range(2)]
    w = rng.uniform(0.05, 0.95)
    yield "product-mixture", RankTwoMixedState.mixture([w, 1 - w], vs)


def run(cfg: Config) -> Counter:
    rng = np.random.default_rng(cfg.seed)
    tally = Counter()
    for n in cfg.dims:
        for _ in range(cfg.states):
            for fam, rho in families(rng, n):
                v = separability_check(rho, with_ppt=True)
                tally[(n, fam, v.separable, v.violated, v.ppt_agrees)] += 1
    return tally


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dims", type=int, nargs="+", default=list(Config.dims))
    ap.add_argument("--states", type=int, default=Config.states)
    ap.add_argument("--seed", type=int, default=Config.seed)
    args = ap.parse_args(argv)
    tally = run(Config(tuple(args.dims), args.states, args.seed))
    print(f"{'N':>2}  {'family':<16}{'separable':<11}{'violated':<24}{'ppt agrees':<11}count")
    for (n, fam, sep, why, agree), count in sorted(tally.items(), key=str):
        print(f"{n:>2}  {fam:<16}{str(sep):<11}{why:<24}{str(agree):<11}{count}")
    disagree = sum(c for k, c in tally.items() if k[4] is False)
    print(f"disagreements: {disagree}")


if __name__ == "__main__":
    main()
