"""Generalized concurrence of pure states, each value computed two ways.

The invariant route uses ``I_0**2 - I_p`` for each split p, evaluated as
sum_{i != j} L_i L_j over the split's Schmidt spectrum so near-product states
keep full accuracy (a plain difference of two O(1) trace powers leaves ~1e-16
noise, i.e. ~1e-8 after the square root).  The minor route sums squared 2x2
minors of the coefficient tensor over every ordered index tuple.  The two are
algebraically equal and are cross-checked on every call.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import IncompatibleParams, InternalNumericalError, WrongPartyCount
from .invariants import (
    bipartition_matrix,
    purity_deficit,
)
from .state import as_bipartite, as_multipartite, bipartitions

CLAMP = 1e-12
ROUTE_TOL = 1e-9


@dataclass(frozen=True)
class ConcurrenceReport:
    value: float
    route_invariant: float
    route_minors: float | None
    discrepancy: float | None

    def as_dict(self) -> dict:
        return {
            "value": self.value,
            "route_invariant": self.route_invariant,
            "route_minors": self.route_minors,
            "discrepancy": self.discrepancy,
        }


def _sqrt_radicand(r: float, what: str) -> float:
    if r < -CLAMP:
        raise InternalNumericalError(f"{what}: negative radicand {r:.3g}")
    return math.sqrt(max(r, 0.0))


def _report(inv: float, minors: float | None) -> ConcurrenceReport:
    if minors is None:
        return ConcurrenceReport(inv, inv, None, None)
    gap = abs(inv - minors)
    if gap > ROUTE_TOL:
        raise InternalNumericalError(
            f"concurrence routes disagree: invariant {inv!r} vs minors {minors!r}"
        )
    return ConcurrenceReport(inv, inv, minors, gap)


def minor_sum(a: np.ndarray) -> float:
    """sum over all i, j, k, m of |a_ik a_jm - a_im a_jk|**2 for a matrix a."""
    a = np.asarray(a)
    minors = np.einsum("ik,jm->ijkm", a, a) - np.einsum("im,jk->ijkm", a, a)
    return float(np.sum(np.abs(minors) ** 2))


def concurrence_bipartite(state, minors: bool = True) -> ConcurrenceReport:
    """C_N = sqrt(N/(N-1) * (I_0**2 - I_1)) for two N-level systems."""
    state = as_bipartite(state)
    n = state.dim
    inv = _sqrt_radicand(n / (n - 1) * purity_deficit(state), "C_N")
    mnr = None
    if minors:
        mnr = _sqrt_radicand(n / (2 * (n - 1)) * minor_sum(state.amplitudes), "C_N minors")
    return _report(inv, mnr)


def _tripartite_minor_sums(a: np.ndarray) -> tuple[float, float, float]:
    # axes of every term: i j k p q m
    base = np.einsum("ijk,pqm->ijkpqm", a, a)
    swap_third = np.einsum("ijm,pqk->ijkpqm", a, a)
    swap_second = np.einsum("iqk,pjm->ijkpqm", a, a)
    swap_first = np.einsum("pjk,iqm->ijkpqm", a, a)
    return tuple(
        float(np.sum(np.abs(base - other) ** 2))
        for other in (swap_third, swap_second, swap_first)
    )


def concurrence_tripartite(state, minors: bool = True) -> ConcurrenceReport:
    """C_N^3 = sqrt(N/(3(N-1)) * (3 I_0**2 - I_1 - I_2 - I_3))."""
    state = as_multipartite(state)
    if state.parties != 3:
        raise WrongPartyCount(f"need 3 parties, got {state.parties}")
    n = state.dim
    # I_1, I_2, I_3 exchange the third, second, first sub-index
    deficit = sum(purity_deficit(state, (k,)) for k in (2, 1, 0))
    inv = _sqrt_radicand(n / (3 * (n - 1)) * deficit, "C_N^3")
    mnr = None
    if minors:
        total = sum(_tripartite_minor_sums(state.tensor))
        mnr = _sqrt_radicand(n / (6 * (n - 1)) * total, "C_N^3 minors")
    return _report(inv, mnr)


def concurrence_multipartite(state, minors: bool = True) -> ConcurrenceReport:
    """C_N^M over all d = 2**(M-1) - 1 canonical bipartitions.

    For M >= 4 the value can exceed 1 (e.g. absolutely maximally entangled
    states), so no upper bound is enforced.
    """
    state = as_multipartite(state)
    n, m = state.dim, state.parties
    parts = list(bipartitions(m))
    d = len(parts)
    deficit = sum(purity_deficit(state, p) for p in parts)
    inv = _sqrt_radicand(n / (d * (n - 1)) * deficit, "C_N^M")
    mnr = None
    if minors:
        total = sum(minor_sum(bipartition_matrix(state, p)) for p in parts)
        mnr = _sqrt_radicand(n / (2 * d * (n - 1)) * total, "C_N^M minors")
    return _report(inv, mnr)


def two_qubit_concurrence(state) -> float:
    """2 |a_11 a_22 - a_12 a_21| for N = 2."""
    a = as_bipartite(state).amplitudes
    if a.shape != (2, 2):
        raise IncompatibleParams(f"two-qubit formula needs N=2, got N={a.shape[0]}")
    return 2 * abs(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0])
