"""Compare B1/B2 conventions for the N=3 trigonometric eigenvalue formula.

The printed form leaves two readings open: which coefficients play c1 and
c0, and whether B2 adds B1 or B1^2.  Each candidate is scored against
numpy's eigendecomposition on random states.
"""
import argparse
import itertools
import math
from dataclasses import dataclass

import numpy as np

from luent.invariants import invariant_vector
from luent.lu import random_state
from luent.spectrum import char_poly_coeffs


@dataclass(frozen=True)
class Config:
    states: int = 1000
    seed: int = 0


def candidate(inv, coeff_map, square_b1):
    cp = char_poly_coeffs(inv)
    c1, c0 = cp[coeff_map[0]], cp[coeff_map[1]]
    b1 = 2 - 9 * c1 + 27 * c0
    b2 = abs(4 * (3 * c1 - 1) ** 3 + (b1**2 if square_b1 else b1))
    phi = math.atan2(math.sqrt(b2), b1)
    r = math.sqrt(max(1 - 1.5 * (inv[0] ** 2 - inv[1]), 0.0))
    c, s = math.cos(phi / 3), math.sin(phi / 3)
    lam = (1 / 3 + 2 / 3 * c * r, 1 / 3 - (c + math.sqrt(3) * s) * r / 3, 1 / 3 - (c - math.sqrt(3) * s) * r / 3)
    return np.sort(lam)[::-1]


def run(cfg: Config) -> dict:
    rng = np.random.default_rng(cfg.seed)
    states = [random_state(3, 2, rng).as_bipartite() for _ in range(cfg.states)]
    refs = [np.linalg.eigvalsh(s.amplitudes @ s.amplitudes.conj().T)[::-1] for s in states]
    invs = [invariant_vector(s) for s in states]
    results = {}
    # coefficient index pairs (c1, c0): keys of the cubic's coefficients
    for coeff_map, square_b1 in itertools.product([(1, 0), (0, 1)], [True, False]):
        worst = max(float(np.max(np.abs(candidate(i, coeff_map, square_b1) - r))) for i, r in zip(invs, refs))
        results[(coeff_map, square_b1)] = worst
    return results


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--states", type=int, default=Config.states)
    ap.add_argument("--seed", type=int, default=Config.seed)
    args = ap.parse_args(argv)
    results = run(Config(args.states, args.seed))
    print(f"{'c1,c0 keys':<12}{'B2 term':<10}max |error|")
    for (coeff_map, square_b1), worst in sorted(results.items(), key=lambda kv: kv[1]):
        print(f"{str(coeff_map):<12}{'B1^2' if square_b1 else 'B1':<10}{worst:.3e}")


if __name__ == "__main__":
    main()
