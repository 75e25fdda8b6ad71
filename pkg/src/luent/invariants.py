"""Local-unitary invariants built from trace powers of reduced states.

For a bipartite state with coefficient matrix ``A`` the invariants are
``I_alpha = Tr[(A A^H)^(alpha+1)]``, alpha = 0..N-1.  For M parties each
canonical bipartition (left | right) contributes the biquadratic invariant
``I_p = Tr[(A_p A_p^H)^2]``, where ``A_p`` is the coefficient tensor
flattened to a (left indices) x (right indices) matrix.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AlphaOutOfRange, InternalNumericalError, WrongPartyCount
from .state import (
    Bipartition,
    PureBipartiteState,
    party_subset,
    as_bipartite,
    as_multipartite,
    bipartitions,
)

IMAG_TOL = 1e-12


def _real(z: complex, what: str) -> float:
    if abs(z.imag) > IMAG_TOL:
        raise InternalNumericalError(f"{what} has imaginary residue {z.imag:.3g}")
    return float(z.real)


@dataclass(frozen=True)
class InvariantVector:
    values: tuple[float, ...]

    def __getitem__(self, alpha: int) -> float:
        return self.values[alpha]

    def __len__(self) -> int:
        return len(self.values)

    @property
    def dim(self) -> int:
        return len(self.values)


def _gram(state: PureBipartiteState) -> np.ndarray:
    a = state.amplitudes
    return a @ a.conj().T


def invariant_I(state, alpha: int) -> float:
    """Tr[(A A^H)^(alpha+1)] for 0 <= alpha <= N-1."""
    state = as_bipartite(state)
    if not 0 <= alpha <= state.dim - 1:
        raise AlphaOutOfRange(f"alpha must lie in [0, {state.dim - 1}], got {alpha}")
    rho = _gram(state)
    power = np.linalg.matrix_power(rho, alpha + 1)
    return _real(complex(np.trace(power)), f"I_{alpha}")


def invariant_vector(state) -> InvariantVector:
    state = as_bipartite(state)
    rho = _gram(state)
    vals = []
    power = rho
    for alpha in range(state.dim):
        if alpha:
            power = power @ rho
        vals.append(_real(complex(np.trace(power)), f"I_{alpha}"))
    return InvariantVector(tuple(vals))


def tripartite_invariants(state) -> tuple[float, float, float, float]:
    """(I0, I1, I2, I3) for three parties, as the literal index sums.

    I1, I2 and I3 exchange the third, second and first sub-index
    respectively, i.e. they are the purities of the reduced states of
    parties 2, 1 and 0.
    """
    state = as_multipartite(state)
    if state.parties != 3:
        raise WrongPartyCount(f"need 3 parties, got {state.parties}")
    a = state.tensor
    c = a.conj()
    i0 = np.einsum("ijk,ijk->", a, c)
    i1 = np.einsum("ijk,ijm,pqm,pqk->", a, c, a, c, optimize=True)
    i2 = np.einsum("ikj,imj,pmq,pkq->", a, c, a, c, optimize=True)
    i3 = np.einsum("kij,mij,mpq,kpq->", a, c, a, c, optimize=True)
    return tuple(_real(complex(z), f"I_{n}") for n, z in enumerate((i0, i1, i2, i3)))


def bipartition_matrix(state, part) -> np.ndarray:
    """Coefficient tensor reshaped to (joint index of ``part``) x (joint index of the rest)."""
    state = as_multipartite(state)
    left = party_subset(part, state.parties)
    right = [k for k in range(state.parties) if k not in left]
    t = np.transpose(state.tensor, list(left) + right)
    return t.reshape(state.dim ** len(left), -1)


def bipartition_invariant(state, part: Bipartition) -> float:
    """I_p = sum a_{ab} a*_{ab'} a_{a'b'} a*_{a'b}, evaluated as Tr[(A_p A_p^H)^2]."""
    a = bipartition_matrix(state, part)
    g = a @ a.conj().T
    return _real(complex(np.einsum("ij,ji->", g, g)), f"I_{part}")


def all_bipartition_invariants(state) -> dict[Bipartition, float]:
    state = as_multipartite(state)
    return {p: bipartition_invariant(state, p) for p in bipartitions(state.parties)}


def _pair_sum(lam: np.ndarray) -> float:
    """sum_{i != j} lam_i lam_j without cancellation (all terms nonnegative)."""
    lam = np.sort(lam)
    before = np.concatenate(([0.0], np.cumsum(lam)[:-1]))
    return float(2 * np.dot(lam, before))


def purity_deficit(state, part=(0,)) -> float:
    """I_0**2 - I_p for the split ``part`` | rest.

    Evaluated as sum_{i != j} L_i L_j over the squared singular values L of
    the flattened coefficient matrix, which equals I_0**2 - I_p exactly but
    keeps full relative accuracy when the state is nearly a product.
    """
    s = np.linalg.svd(bipartition_matrix(state, part), compute_uv=False)
    return _pair_sum(s**2)
