"""Separability of rank-two mixed states of two N-level systems.

rho = p |E1><E1| + (1 - p) |E2><E2| with orthonormal E1, E2 (coefficient
matrices a1, a2).  The vector E1 + lam E2 is a product vector iff every 2x2
minor of a1 + lam a2 vanishes, i.e. for every index tuple (i, j, k, l)

    alpha lam^2 + beta lam + gamma = 0

with alpha = a2_ij a2_kl - a2_il a2_kj, gamma the same minor of a1 and beta
the mixed terms.  rho is separable iff

  (1) gamma = e^{i theta} (1 - 1/p) alpha for one real theta and all tuples,
  (2) beta_ij^kl alpha_mn^kl = alpha_ij^kl beta_mn^kl for all tuples,
  (3) for roots mu1, mu2 of a pivot quadratic (alpha != 0), z = mu2 - mu1 != 0,
      z = e^{i theta} conj(z) and mu2 (1 + |mu1|^2) / (z - mu1 mu2 conj(z))
      is real and lies in [0, 1].

The partial-transpose test is kept alongside as an independent check.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateAlpha,
    DegenerateRoots,
    DimMismatch,
    EigenFailure,
    IncompatibleParams,
    NotOrthogonal,
    StateError,
)
from .state import TOL, PureBipartiteState, as_bipartite

EPS_DEG = 1e-10
EPS_PROP = 1e-8
ORTHO_TOL = 1e-9
# tuples whose |alpha| is below this fraction of the pivot are too noisy to re-solve
PIVOT_FLOOR = 1e-3
PPT_DECISIVE_MAX_N = 3

VIOLATIONS = (
    "none",
    "theta_nonexistent",
    "proportionality_failed",
    "root_condition_failed",
    "degenerate_alpha",
    "degenerate_roots",
)


@dataclass(frozen=True)
class RankTwoMixedState:
    p: float
    E1: PureBipartiteState
    E2: PureBipartiteState

    def __post_init__(self):
        if not 0.0 < self.p < 1.0:
            raise IncompatibleParams(f"p must lie in (0, 1), got {self.p!r}")
        e1, e2 = as_bipartite(self.E1), as_bipartite(self.E2)
        if e1.dim != e2.dim:
            raise DimMismatch(f"eigenvectors have dims {e1.dim} and {e2.dim}")
        overlap = abs(np.vdot(e2.amplitudes, e1.amplitudes))
        if overlap > ORTHO_TOL:
            raise NotOrthogonal(f"|<E1|E2>| = {overlap:.3g} exceeds {ORTHO_TOL}")
        object.__setattr__(self, "E1", e1)
        object.__setattr__(self, "E2", e2)

    @property
    def dim(self) -> int:
        return self.E1.dim

    @property
    def q(self) -> float:
        return 1.0 - self.p

    def density_matrix(self) -> np.ndarray:
        v1 = self.E1.amplitudes.reshape(-1)
        v2 = self.E2.amplitudes.reshape(-1)
        return self.p * np.outer(v1, v1.conj()) + self.q * np.outer(v2, v2.conj())

    def swapped(self) -> RankTwoMixedState:
        return RankTwoMixedState(self.q, self.E2, self.E1)

    @classmethod
    def from_density(cls, rho: np.ndarray, rank_tol: float = 1e-9) -> RankTwoMixedState:
        """Eigendecompose a rank-two density matrix on C^N (x) C^N."""
        rho = np.asarray(rho, dtype=np.complex128)
        d = rho.shape[0]
        n = int(round(np.sqrt(d)))
        if rho.shape != (d, d) or n * n != d:
            raise DimMismatch(f"density matrix shape {rho.shape} is not N^2 x N^2")
        w, v = np.linalg.eigh((rho + rho.conj().T) / 2)
        w = w / w.sum()
        if np.sum(w > rank_tol) != 2:
            raise StateError(f"density matrix has rank {int(np.sum(w > rank_tol))}, not 2")
        # eigh sorts ascending: the two largest come last
        p, q = w[-1], w[-2]
        e1 = PureBipartiteState(n, v[:, -1].reshape(n, n))
        e2 = PureBipartiteState(n, v[:, -2].reshape(n, n))
        return cls(float(p / (p + q)), e1, e2)

    @classmethod
    def mixture(cls, weights, vectors) -> RankTwoMixedState:
        """Rank-two state sum_k w_k |v_k><v_k| from unnormalized kets, eigendecomposed."""
        rho = sum(
            w * np.outer(np.ravel(v), np.ravel(v).conj()) / np.vdot(np.ravel(v), np.ravel(v)).real
            for w, v in zip(weights, vectors)
        )
        return cls.from_density(rho / np.trace(rho).real)


@dataclass(frozen=True)
class MinorTensors:
    """alpha, beta, gamma indexed [i, j, k, l] as alpha_ij^kl etc."""

    alpha: np.ndarray = field(repr=False)
    beta: np.ndarray = field(repr=False)
    gamma: np.ndarray = field(repr=False)


def _minor(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    # x_ij y_kl - x_il y_kj
    return np.einsum("ij,kl->ijkl", x, y) - np.einsum("il,kj->ijkl", x, y)


def minor_tensors(rho: RankTwoMixedState) -> MinorTensors:
    a1, a2 = rho.E1.amplitudes, rho.E2.amplitudes
    if a1.shape != a2.shape:
        raise DimMismatch(f"eigenvector shapes differ: {a1.shape} vs {a2.shape}")
    alpha = _minor(a2, a2)
    gamma = _minor(a1, a1)
    beta = _minor(a1, a2) + _minor(a2, a1)
    return MinorTensors(alpha, beta, gamma)


@dataclass(frozen=True)
class SeparabilityVerdict:
    """Outcome of the rank-two test.

    ``separable`` is None when the verdict is indeterminate.  ``method`` is
    "criterion" when the three conditions decided, "product_eigenvectors"
    when both eigenvectors are product vectors, "ppt_fallback" when a
    degenerate case was settled by the partial transpose, or "indeterminate".
    """

    separable: bool | None
    violated: str = "none"
    theta: float | None = None
    mixing_value: float | None = None
    method: str = "criterion"
    ppt_agrees: bool | None = None
    ppt_min_eigenvalue: float | None = None

    def as_dict(self) -> dict:
        return {
            "separable": self.separable,
            "violated": self.violated,
            "theta": self.theta,
            "mixing_value": self.mixing_value,
            "method": self.method,
            "ppt_agrees": self.ppt_agrees,
            "ppt_min_eigenvalue": self.ppt_min_eigenvalue,
        }


def partial_transpose(rho: np.ndarray, n: int) -> np.ndarray:
    """Transpose the second factor of an operator on C^n (x) C^n."""
    t = np.asarray(rho).reshape(n, n, n, n)
    return t.transpose(0, 3, 2, 1).reshape(n * n, n * n)


def ppt_check(rho: RankTwoMixedState) -> tuple[bool, float]:
    """(is_ppt, smallest eigenvalue of the partial transpose)."""
    pt = partial_transpose(rho.density_matrix(), rho.dim)
    try:
        lo = float(np.linalg.eigvalsh((pt + pt.conj().T) / 2)[0])
    except np.linalg.LinAlgError as exc:
        raise EigenFailure(str(exc)) from exc
    return lo >= -TOL.psd, lo


def _double_root(a: complex, b: complex, c: complex) -> bool:
    # tested on the discriminant: root separation only resolves to sqrt(eps)
    return abs(b * b - 4 * a * c) <= EPS_DEG * (abs(b) ** 2 + abs(4 * a * c))


def _quadratic_roots(a: complex, b: complex, c: complex) -> tuple[complex, complex]:
    disc = cmath.sqrt(b * b - 4 * a * c)
    # pick the sign that avoids cancellation, recover the other root from the product
    s = -b - disc if abs(-b - disc) >= abs(-b + disc) else -b + disc
    if s == 0:
        return 0j, 0j
    r1 = s / (2 * a)
    r2 = (2 * c) / s
    return r1, r2


def _root_condition(mu1: complex, mu2: complex, theta: float) -> tuple[bool, float | None]:
    """Evaluate condition (3) for both root orderings; return (ok, expression value)."""
    best = None
    for m1, m2 in ((mu1, mu2), (mu2, mu1)):
        z = m2 - m1
        zc = z.conjugate()
        if abs(z - cmath.exp(1j * theta) * zc) > EPS_PROP * abs(z):
            return False, None
        w = m2 * (1 + abs(m1) ** 2) / (z - m1 * m2 * zc)
        scale = max(1.0, abs(w))
        if abs(w.imag) <= EPS_PROP * scale and -EPS_PROP <= w.real <= 1 + EPS_PROP:
            return True, float(w.real)
        if best is None:
            best = w
    return False, None if best is None else float(best.real)


def _criterion(rho: RankTwoMixedState, mt: MinorTensors) -> SeparabilityVerdict:
    alpha, beta, gamma = mt.alpha, mt.beta, mt.gamma
    n = rho.dim
    factor = 1.0 - 1.0 / rho.p
    piv = np.unravel_index(np.argmax(np.abs(alpha)), alpha.shape)
    a_piv = alpha[piv]

    theta = cmath.phase(gamma[piv] / (factor * a_piv)) if gamma[piv] != 0 else 0.0
    rot = cmath.exp(1j * theta) * factor
    scale = max(np.max(np.abs(gamma)), abs(factor) * np.max(np.abs(alpha)))
    if np.max(np.abs(gamma - rot * alpha)) > EPS_PROP * scale:
        return SeparabilityVerdict(False, "theta_nonexistent", theta=theta)

    # beta_ij^kl alpha_mn^kl - alpha_ij^kl beta_mn^kl for every (ij, mn, kl)
    b = beta.transpose(2, 3, 0, 1).reshape(n * n, n * n)
    a = alpha.transpose(2, 3, 0, 1).reshape(n * n, n * n)
    cross = b[:, :, None] * a[:, None, :] - a[:, :, None] * b[:, None, :]
    pscale = max(np.max(np.abs(beta)) * np.max(np.abs(alpha)), EPS_DEG)
    if np.max(np.abs(cross)) > EPS_PROP * pscale:
        return SeparabilityVerdict(False, "proportionality_failed", theta=theta)

    if _double_root(a_piv, beta[piv], gamma[piv]):
        raise DegenerateRoots(f"double root at pivot {tuple(int(i) for i in piv)}")
    mu1, mu2 = _quadratic_roots(a_piv, beta[piv], gamma[piv])
    ok, value = _root_condition(mu1, mu2, theta)

    # every other well-conditioned tuple must give the same verdict
    others = np.argwhere(np.abs(alpha) > max(EPS_DEG, PIVOT_FLOOR * abs(a_piv)))
    for idx in map(tuple, others):
        if _double_root(alpha[idx], beta[idx], gamma[idx]):
            continue
        r1, r2 = _quadratic_roots(alpha[idx], beta[idx], gamma[idx])
        if _root_condition(r1, r2, theta)[0] != ok:
            return SeparabilityVerdict(False, "root_condition_failed", theta=theta, mixing_value=value)

    if not ok:
        return SeparabilityVerdict(False, "root_condition_failed", theta=theta, mixing_value=value)
    return SeparabilityVerdict(True, "none", theta=theta, mixing_value=value)


def _fallback(rho: RankTwoMixedState, reason: str) -> SeparabilityVerdict:
    if rho.dim <= PPT_DECISIVE_MAX_N:
        is_ppt, lo = ppt_check(rho)
        return SeparabilityVerdict(
            is_ppt, reason, method="ppt_fallback", ppt_agrees=True, ppt_min_eigenvalue=lo
        )
    return SeparabilityVerdict(None, reason, method="indeterminate")


def separability_check(
    rho: RankTwoMixedState, with_ppt: bool = False, strict: bool = False
) -> SeparabilityVerdict:
    """Decide separability of a rank-two state from its two eigenvectors.

    Degenerate inputs (every alpha minor zero, or a double root) raise
    DegenerateAlpha / DegenerateRoots when ``strict``; otherwise they fall back
    to the partial-transpose test for N <= 3 and are indeterminate above.
    If alpha vanishes but gamma does not, the roles of E1 and E2 are swapped.
    """
    mt = minor_tensors(rho)
    if np.max(np.abs(mt.alpha)) <= EPS_DEG:
        if np.max(np.abs(mt.gamma)) > EPS_DEG:
            return separability_check(rho.swapped(), with_ppt=with_ppt, strict=strict)
        if strict:
            raise DegenerateAlpha("both eigenvectors are product vectors")
        # both eigenvectors are product vectors, so rho is a mixture of product states
        verdict = SeparabilityVerdict(True, "none", method="product_eigenvectors")
    else:
        try:
            verdict = _criterion(rho, mt)
        except DegenerateRoots:
            if strict:
                raise
            verdict = _fallback(rho, "degenerate_roots")
    if with_ppt and verdict.method != "ppt_fallback":
        is_ppt, lo = ppt_check(rho)
        agrees = None if verdict.separable is None else (is_ppt == verdict.separable)
        verdict = SeparabilityVerdict(
            verdict.separable,
            verdict.violated,
            verdict.theta,
            verdict.mixing_value,
            verdict.method,
            agrees,
            lo,
        )
    return verdict
