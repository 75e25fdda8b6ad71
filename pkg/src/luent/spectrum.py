"""Schmidt spectra, entanglement of formation and the eigenvalue polynomial.

The eigenvalues L_i of rho_0 = A A^H satisfy sum_k (-L)^k c_k = 0 where the
leading coefficients are polynomials in the trace invariants I_alpha:

    c_N     = 1
    c_{N-1} = I_0
    c_{N-2} = (I_0^2 - I_1) / 2
    c_{N-3} = (I_0^3 + 2 I_2 - 3 I_0 I_1) / 6
    c_{N-4} = (I_0^4 - 6 I_0^2 I_1 + 8 I_0 I_2 + 3 I_1^2 - 6 I_3) / 24

i.e. c_k is the elementary symmetric polynomial e_{N-k} of the spectrum.
For N = 3 the cubic is solved in closed form (see eigenvalues_n3_closed_form).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ClosedFormMismatch, EigenFailure, IncompatibleParams, StateError
from .invariants import InvariantVector
from .state import as_bipartite

SPEC_TOL = 1e-10
MISMATCH_TOL = 1e-6


@dataclass(frozen=True)
class SchmidtSpectrum:
    values: tuple[float, ...]

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 1 or vals.size == 0:
            raise StateError("spectrum must be a nonempty vector")
        if np.any(vals < -SPEC_TOL):
            raise StateError(f"negative Schmidt weight {vals.min():.3g}")
        if abs(vals.sum() - 1.0) > SPEC_TOL:
            raise StateError(f"Schmidt weights sum to {vals.sum()!r}, expected 1")
        vals = np.sort(np.clip(vals, 0.0, None))[::-1]
        object.__setattr__(self, "values", tuple(float(v) for v in vals))

    def __len__(self) -> int:
        return len(self.values)

    def as_array(self) -> np.ndarray:
        return np.array(self.values)


def schmidt_spectrum(state) -> SchmidtSpectrum:
    """Eigenvalues of A A^H, descending, clamped at 0."""
    a = as_bipartite(state).amplitudes
    try:
        lam = np.linalg.eigvalsh(a @ a.conj().T)
    except np.linalg.LinAlgError as exc:
        raise EigenFailure(str(exc)) from exc
    return SchmidtSpectrum(tuple(lam))


def entanglement_of_formation(spec: SchmidtSpectrum) -> float:
    """-sum L_i log2 L_i with 0 log 0 = 0."""
    lam = spec.as_array()
    lam = lam[lam > 0]
    return float(max(-np.sum(lam * np.log2(lam)), 0.0))


def eof_of_state(state) -> float:
    return entanglement_of_formation(schmidt_spectrum(state))


@dataclass(frozen=True)
class CharPolyCoeffs:
    """Coefficients c_k for k in {N-1, ..., max(0, N-4)}; c_N = 1 is implicit."""

    dim: int
    c: dict[int, float]

    def __getitem__(self, k: int) -> float:
        if k == self.dim:
            return 1.0
        return self.c[k]


def char_poly_coeffs(inv: InvariantVector) -> CharPolyCoeffs:
    n = inv.dim
    if n < 2:
        raise IncompatibleParams(f"need N >= 2, got {n}")
    i = list(inv.values) + [0.0] * (4 - n) if n < 4 else list(inv.values)
    i0, i1, i2, i3 = i[:4]
    formulas = {
        n - 1: i0,
        n - 2: (i0**2 - i1) / 2,
        n - 3: (i0**3 + 2 * i2 - 3 * i0 * i1) / 6,
        n - 4: (i0**4 - 6 * i0**2 * i1 + 8 * i0 * i2 + 3 * i1**2 - 6 * i3) / 24,
    }
    return CharPolyCoeffs(n, {k: v for k, v in formulas.items() if k >= 0})


@dataclass(frozen=True)
class ClosedFormN3:
    lambdas: tuple[float, float, float]
    C3: float
    phi: float

    @property
    def sorted(self) -> tuple[float, float, float]:
        return tuple(sorted(self.lambdas, reverse=True))


def eigenvalues_n3_closed_form(inv: InvariantVector, reference=None) -> ClosedFormN3:
    """Trigonometric roots of the N = 3 eigenvalue cubic.

    With c2 = I_0, c1 = c_{N-2}, c0 = c_{N-3} the spectrum solves
    L^3 - c2 L^2 + c1 L - c0 = 0 and

        L1 = 1/3 + (2/3) cos(phi/3) r
        L2 = 1/3 - (1/3) (cos(phi/3) + sqrt(3) sin(phi/3)) r
        L3 = 1/3 - (1/3) (cos(phi/3) - sqrt(3) sin(phi/3)) r

    where r = sqrt(1 - C_3^2), C_3^2 = (3/2)(I_0^2 - I_1),
    B1 = 2 - 9 c1 + 27 c0, B2 = |4 (3 c1 - 1)^3 + B1^2| and
    phi = atan2(sqrt(B2), B1) in [0, pi].  L1 >= L3 >= L2.

    ``reference`` (a SchmidtSpectrum or array) triggers a consistency check
    that raises ClosedFormMismatch beyond 1e-6.
    """
    if inv.dim != 3:
        raise IncompatibleParams(f"closed form needs N=3, got N={inv.dim}")
    coeffs = char_poly_coeffs(inv)
    c1, c0 = coeffs[1], coeffs[0]
    c3_sq = 1.5 * (inv[0] ** 2 - inv[1])
    C3 = math.sqrt(min(max(c3_sq, 0.0), 1.0))
    if abs(C3 - 1.0) <= SPEC_TOL:
        lambdas = (1 / 3, 1 / 3, 1 / 3)
        phi = 0.0
    else:
        r = math.sqrt(1.0 - C3**2)
        b1 = 2 - 9 * c1 + 27 * c0
        b2 = abs(4 * (3 * c1 - 1) ** 3 + b1**2)
        phi = math.atan2(math.sqrt(b2), b1)
        cos3, sin3 = math.cos(phi / 3), math.sin(phi / 3)
        lambdas = (
            1 / 3 + 2 / 3 * cos3 * r,
            1 / 3 - 1 / 3 * (cos3 + math.sqrt(3) * sin3) * r,
            1 / 3 - 1 / 3 * (cos3 - math.sqrt(3) * sin3) * r,
        )
    out = ClosedFormN3(lambdas, C3, phi)
    if reference is not None:
        ref = np.sort(np.asarray(getattr(reference, "values", reference), dtype=float))[::-1]
        err = float(np.max(np.abs(np.array(out.sorted) - ref)))
        if err > MISMATCH_TOL:
            raise ClosedFormMismatch(f"closed form differs from eigendecomposition by {err:.3g}")
    return out


def concurrence_from_spectrum(spec: SchmidtSpectrum) -> float:
    """C_N = sqrt(N/(N-1) * sum_{i != j} L_i L_j) for a spectrum of length N."""
    lam = spec.as_array()
    n = lam.size
    pairs = float(lam.sum() ** 2 - np.dot(lam, lam))
    return math.sqrt(max(n / (n - 1) * pairs, 0.0))
