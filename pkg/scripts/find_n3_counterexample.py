"""Grid search of the N=3 Schmidt simplex for concurrence/EoF order reversals.

Prints the pair with the largest reversal margin: C(x) < C(y) but E(x) > E(y).
"""
import argparse
from dataclasses import dataclass

import numpy as np

from luent.spectrum import SchmidtSpectrum, concurrence_from_spectrum, entanglement_of_formation


@dataclass(frozen=True)
class Config:
    steps: int = 60


def simplex_grid(steps: int):
    for i in range(steps + 1):
        for j in range(steps + 1 - i):
            lam = np.array([i, j, steps - i - j]) / steps
            if lam[0] >= lam[1] >= lam[2]:
                yield tuple(lam)


def search(cfg: Config):
    pts = list(simplex_grid(cfg.steps))
    c = np.array([concurrence_from_spectrum(SchmidtSpectrum(p)) for p in pts])
    e = np.array([entanglement_of_formation(SchmidtSpectrum(p)) for p in pts])
    # margin of a reversal: min(C(y) - C(x), E(x) - E(y)) over ordered pairs
    margin = np.minimum(c[None, :] - c[:, None], e[:, None] - e[None, :])
    i, j = np.unravel_index(np.argmax(margin), margin.shape)
    return pts[i], pts[j], float(margin[i, j]), int(np.sum(margin > 0))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--steps", type=int, default=Config.steps)
    args = ap.parse_args(argv)
    x, y, margin, count = search(Config(args.steps))
    for name, lam in (("x", x), ("y", y)):
        s = SchmidtSpectrum(lam)
        print(f"{name} = {np.round(lam, 4).tolist()}  C = {concurrence_from_spectrum(s):.6f}  E = {entanglement_of_formation(s):.6f}")
    print(f"reversal margin {margin:.4f}; {count} reversed pairs on the grid")


if __name__ == "__main__":
    main()
