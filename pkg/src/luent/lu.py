"""Haar-random local unitaries and the invariance test engine.

All randomness flows through ``numpy.random.Generator`` (PCG64).  Trial ``t``
of a run seeded with ``seed`` uses ``SeedSequence([seed, t])``, so results do
not depend on the order in which trials are evaluated.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .concurrence import concurrence_multipartite, concurrence_tripartite
from .errors import IncompatibleParams, ShapeMismatch
from .invariants import all_bipartition_invariants, invariant_vector, tripartite_invariants
from .state import PureBipartiteState, PureMultipartiteState, as_multipartite

UNITARY_TOL = 1e-12


def rng_for(seed: int | None, trial: int | None = None) -> np.random.Generator:
    if trial is None:
        return np.random.default_rng(seed)
    return np.random.default_rng(np.random.SeedSequence([seed, trial]))


def _generator(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def haar_unitary(n: int, seed=None) -> np.ndarray:
    """Haar-distributed n x n unitary: QR of a complex Ginibre matrix, phases fixed by diag(R)."""
    if n < 1:
        raise IncompatibleParams(f"unitary size must be >= 1, got {n}")
    rng = _generator(seed)
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_state(n: int, m: int = 2, seed=None) -> PureMultipartiteState:
    """Haar-random pure state of m parties with local dimension n."""
    rng = _generator(seed)
    size = n**m
    v = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    return PureMultipartiteState(m, n, v / np.linalg.norm(v))


def random_product_state(n: int, m: int = 2, seed=None) -> PureMultipartiteState:
    rng = _generator(seed)
    t = np.ones((), dtype=np.complex128)
    for _ in range(m):
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        t = np.multiply.outer(t, v / np.linalg.norm(v))
    return PureMultipartiteState.from_tensor(t / np.linalg.norm(t))


@dataclass(frozen=True)
class LocalUnitaryTuple:
    factors: tuple[np.ndarray, ...] = field(repr=False)

    def __post_init__(self):
        facs = tuple(np.asarray(u, dtype=np.complex128) for u in self.factors)
        for k, u in enumerate(facs):
            if u.ndim != 2 or u.shape[0] != u.shape[1]:
                raise ShapeMismatch(f"factor {k} is not square: {u.shape}")
            err = float(np.max(np.abs(u @ u.conj().T - np.eye(u.shape[0]))))
            if err > UNITARY_TOL:
                raise ShapeMismatch(f"factor {k} is not unitary (max |UU^H - I| = {err:.3g})")
        object.__setattr__(self, "factors", facs)

    @classmethod
    def haar(cls, n: int, m: int, seed=None) -> LocalUnitaryTuple:
        rng = _generator(seed)
        return cls(tuple(haar_unitary(n, rng) for _ in range(m)))

    @classmethod
    def identity(cls, n: int, m: int) -> LocalUnitaryTuple:
        return cls(tuple(np.eye(n, dtype=np.complex128) for _ in range(m)))

    def __matmul__(self, other: LocalUnitaryTuple) -> LocalUnitaryTuple:
        """Factorwise product; applying ``self`` then ``other`` equals applying ``self @ other``."""
        return LocalUnitaryTuple(tuple(a @ b for a, b in zip(self.factors, other.factors)))


def apply_local(state, lus: LocalUnitaryTuple | Sequence[np.ndarray]):
    """a_{i1..iM} -> sum_j a_{j1..jM} U1[j1, i1] ... UM[jM, iM].

    Returns the same state type it was given.
    """
    if not isinstance(lus, LocalUnitaryTuple):
        lus = LocalUnitaryTuple(tuple(lus))
    multi = as_multipartite(state)
    if len(lus.factors) != multi.parties:
        raise ShapeMismatch(f"{len(lus.factors)} factors for {multi.parties} parties")
    t = multi.tensor
    for axis, u in enumerate(lus.factors):
        if u.shape != (multi.dim, multi.dim):
            raise ShapeMismatch(f"factor {axis} has shape {u.shape}, need {(multi.dim,) * 2}")
        t = np.moveaxis(np.tensordot(t, u, axes=([axis], [0])), -1, axis)
    out = PureMultipartiteState.from_tensor(t)
    if isinstance(state, PureBipartiteState):
        return out.as_bipartite()
    return out


def declared_invariants(state) -> dict[str, float]:
    """Every LU-invariant quantity the package defines for this state shape."""
    state = as_multipartite(state)
    out: dict[str, float] = {}
    if state.parties == 2:
        for alpha, v in enumerate(invariant_vector(state.as_bipartite()).values):
            out[f"I_{alpha}"] = v
    if state.parties == 3:
        for k, v in enumerate(tripartite_invariants(state)):
            out[f"I3_{k}"] = v
        out["C_N^3"] = concurrence_tripartite(state, minors=False).value
    for part, v in all_bipartition_invariants(state).items():
        out[f"I_{part}"] = v
    out["C_N^M"] = concurrence_multipartite(state, minors=False).value
    return out


@dataclass
class InvarianceReport:
    trials: int
    seed: int
    max_drift: dict[str, float]

    @property
    def worst(self) -> float:
        return max(self.max_drift.values(), default=0.0)

    def passed(self, tol: float = 1e-9) -> bool:
        return self.worst <= tol


def invariance_suite(state, trials: int, seed: int = 0) -> InvarianceReport:
    """Apply ``trials`` Haar-random local unitary tuples and record max drift per quantity."""
    if trials < 1:
        raise IncompatibleParams(f"trials must be >= 1, got {trials}")
    state = as_multipartite(state)
    base = declared_invariants(state)
    drift = dict.fromkeys(base, 0.0)
    for t in range(trials):
        lus = LocalUnitaryTuple.haar(state.dim, state.parties, rng_for(seed, t))
        after = declared_invariants(apply_local(state, lus))
        for key, v in after.items():
            drift[key] = max(drift[key], abs(v - base[key]))
    return InvarianceReport(trials, seed, drift)
