"""Pure-state containers, partial traces and named reference states.

Amplitudes are stored as complex128 arrays.  A multipartite state of ``M``
parties with local dimension ``N`` keeps a flat vector of length ``N**M`` in
row-major order, party 0 slowest, so ``amplitudes.reshape((N,) * M)`` gives
the coefficient tensor ``a[i1, ..., iM]``.  Parties are numbered from 0.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    BadPartition,
    BadShape,
    IncompatibleParams,
    NonFinite,
    NotNormalized,
    StateError,
)


@dataclass(frozen=True)
class Tolerances:
    norm: float = 1e-9  # relative deviation of sum |a|^2 from 1
    herm: float = 1e-10  # max entrywise |rho - rho^dagger|
    psd: float = 1e-9  # most negative eigenvalue tolerated


TOL = Tolerances()


def _frozen(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, dtype=np.complex128, copy=True)
    out.setflags(write=False)
    return out


def _check_amplitudes(amps: np.ndarray) -> None:
    if not np.all(np.isfinite(amps)):
        raise NonFinite("amplitudes contain NaN or Inf")
    norm = float(np.vdot(amps, amps).real)
    if abs(norm - 1.0) > TOL.norm:
        raise NotNormalized(f"sum |a|^2 = {norm!r}, expected 1 within {TOL.norm}")


@dataclass(frozen=True)
class PureMultipartiteState:
    parties: int
    dim: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        if int(self.parties) != self.parties or self.parties < 2:
            raise BadShape(f"need at least 2 parties, got {self.parties}")
        if int(self.dim) != self.dim or self.dim < 2:
            raise BadShape(f"local dimension must be >= 2, got {self.dim}")
        amps = np.asarray(self.amplitudes)
        if amps.ndim != 1 or amps.size != self.dim**self.parties:
            raise BadShape(
                f"expected {self.dim ** self.parties} amplitudes for "
                f"N={self.dim}, M={self.parties}, got shape {amps.shape}"
            )
        amps = _frozen(amps)
        _check_amplitudes(amps)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_tensor(cls, tensor) -> PureMultipartiteState:
        t = np.asarray(tensor, dtype=np.complex128)
        if t.ndim < 2 or len(set(t.shape)) != 1:
            raise BadShape(f"tensor must be (N,)*M with M >= 2, got shape {t.shape}")
        return cls(t.ndim, t.shape[0], t.reshape(-1))

    @property
    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape((self.dim,) * self.parties)

    def as_bipartite(self) -> PureBipartiteState:
        if self.parties != 2:
            raise IncompatibleParams(f"state has {self.parties} parties, not 2")
        return PureBipartiteState(self.dim, self.amplitudes.reshape(self.dim, self.dim))

    def norm2(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)


@dataclass(frozen=True)
class PureBipartiteState:
    """Two N-level systems with coefficient matrix ``A[i, j] = a_ij``."""

    dim: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 2:
            raise BadShape(f"local dimension must be >= 2, got {self.dim}")
        amps = np.asarray(self.amplitudes)
        if amps.shape != (self.dim, self.dim):
            raise BadShape(f"expected {self.dim}x{self.dim} matrix, got shape {amps.shape}")
        amps = _frozen(amps)
        _check_amplitudes(amps.reshape(-1))
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_matrix(cls, a) -> PureBipartiteState:
        a = np.asarray(a, dtype=np.complex128)
        if a.ndim != 2:
            raise BadShape(f"expected a square matrix, got shape {a.shape}")
        return cls(a.shape[0], a)

    @property
    def parties(self) -> int:
        return 2

    @property
    def tensor(self) -> np.ndarray:
        return self.amplitudes

    def as_multipartite(self) -> PureMultipartiteState:
        return PureMultipartiteState(2, self.dim, self.amplitudes.reshape(-1))

    def as_bipartite(self) -> PureBipartiteState:
        return self


def as_multipartite(state) -> PureMultipartiteState:
    if isinstance(state, PureBipartiteState):
        return state.as_multipartite()
    if isinstance(state, PureMultipartiteState):
        return state
    raise TypeError(f"not a pure state: {type(state).__name__}")


def as_bipartite(state) -> PureBipartiteState:
    if isinstance(state, (PureBipartiteState, PureMultipartiteState)):
        return state.as_bipartite()
    raise TypeError(f"not a pure state: {type(state).__name__}")


def validate(state) -> None:
    """Re-check every invariant of ``state``; raise a StateError on failure."""
    if isinstance(state, PureBipartiteState):
        PureBipartiteState(state.dim, state.amplitudes)
    elif isinstance(state, PureMultipartiteState):
        PureMultipartiteState(state.parties, state.dim, state.amplitudes)
    else:
        raise StateError(f"not a pure state: {type(state).__name__}")


@dataclass(frozen=True)
class ReducedDensity:
    dim: int
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.complex128)
        if m.shape != (self.dim, self.dim):
            raise BadShape(f"expected {self.dim}x{self.dim} matrix, got {m.shape}")
        herm = float(np.max(np.abs(m - m.conj().T)))
        if herm > TOL.herm:
            raise StateError(f"density matrix not Hermitian (max |rho - rho^H| = {herm:.3g})")
        tr = np.trace(m).real
        if abs(tr - 1.0) > TOL.norm:
            raise StateError(f"density matrix trace {tr!r} != 1")
        lo = float(np.linalg.eigvalsh(m)[0])
        if lo < -TOL.psd:
            raise StateError(f"density matrix has eigenvalue {lo:.3g} < 0")
        object.__setattr__(self, "matrix", _frozen(m))

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)[::-1]

    def purity(self) -> float:
        return float(np.einsum("ij,ji->", self.matrix, self.matrix).real)


@dataclass(frozen=True, order=True)
class Bipartition:
    """Canonical split of ``parties`` parties: ``left`` always contains party 0."""

    parties: int
    left: tuple[int, ...]

    def __post_init__(self):
        left = tuple(self.left)
        if left != tuple(sorted(set(left))):
            raise BadPartition(f"party indices must be sorted and unique: {left}")
        if not left or len(left) >= self.parties:
            raise BadPartition(f"{left} is not a nonempty proper subset of {self.parties} parties")
        if left[0] != 0:
            raise BadPartition(f"{left} is not canonical (must contain party 0)")
        if left[-1] >= self.parties:
            raise BadPartition(f"party index {left[-1]} out of range for {self.parties} parties")
        object.__setattr__(self, "left", left)

    @property
    def right(self) -> tuple[int, ...]:
        return tuple(k for k in range(self.parties) if k not in self.left)

    def __str__(self) -> str:
        return "".join(map(str, self.left)) + "|" + "".join(map(str, self.right))


def bipartitions(parties: int) -> Iterator[Bipartition]:
    """All 2**(M-1) - 1 canonical bipartitions, smaller left blocks first."""
    if parties < 2:
        raise BadPartition(f"need at least 2 parties, got {parties}")
    for size in range(0, parties - 1):
        for rest in combinations(range(1, parties), size):
            yield Bipartition(parties, (0, *rest))


def party_subset(part, parties: int) -> tuple[int, ...]:
    if isinstance(part, Bipartition):
        if part.parties != parties:
            raise BadPartition(f"partition is for {part.parties} parties, state has {parties}")
        return part.left
    sub = tuple(int(k) for k in part)
    if sub != tuple(sorted(set(sub))) or not sub or len(sub) >= parties:
        raise BadPartition(f"{sub} is not a sorted nonempty proper subset of {parties} parties")
    if sub[0] < 0 or sub[-1] >= parties:
        raise BadPartition(f"party indices {sub} out of range for {parties} parties")
    return sub


def reduced_density(state: PureBipartiteState) -> ReducedDensity:
    """rho_0 = A A^dagger, the state of the first party."""
    a = state.amplitudes
    return ReducedDensity(state.dim, a @ a.conj().T)


def reduced_density_subset(state, part: Bipartition | Sequence[int]) -> ReducedDensity:
    """Reduced state of the parties in ``part`` (the rest are traced out).

    ``part`` is a canonical :class:`Bipartition` or any sorted nonempty proper
    subset of party indices.
    """
    state = as_multipartite(state)
    keep = party_subset(part, state.parties)
    m = state.parties
    # einsum labels: kets use letters a.., bras reuse them for traced parties
    ket = [chr(ord("a") + k) for k in range(m)]
    bra = [chr(ord("A") + k) if k in keep else ket[k] for k in range(m)]
    out = [ket[k] for k in keep] + [bra[k] for k in keep]
    expr = f"{''.join(ket)},{''.join(bra)}->{''.join(out)}"
    t = state.tensor
    rho = np.einsum(expr, t, t.conj())
    d = state.dim ** len(keep)
    return ReducedDensity(d, rho.reshape(d, d))


NAMED_KINDS = ("product", "max_entangled", "bell", "ghz", "paper_5_6_example")


def make_named(kind: str, N: int = 2, M: int = 2) -> PureMultipartiteState:
    """Reference states used throughout the tests and the CLI.

    ``paper_5_6_example`` is a Bell pair on parties 0,1 times ``|+>`` on
    party 2 (N=2, M=3).  Its three-party concurrence evaluates to sqrt(2/3)
    by both routes, not the sqrt(5/6) quoted alongside this example.
    """
    kind = kind.replace("-", "_")
    if N < 2 or M < 2:
        raise IncompatibleParams(f"need N >= 2 and M >= 2, got N={N}, M={M}")
    t = np.zeros((N,) * M, dtype=np.complex128)
    if kind == "product":
        t[(0,) * M] = 1.0
    elif kind in ("max_entangled", "bell", "ghz"):
        if kind in ("max_entangled", "bell") and M != 2:
            raise IncompatibleParams(f"{kind} is a two-party state, got M={M}")
        if kind == "bell" and N != 2:
            raise IncompatibleParams(f"bell needs N=2, got N={N}")
        for i in range(N):
            t[(i,) * M] = 1 / np.sqrt(N)
    elif kind == "paper_5_6_example":
        if (N, M) != (2, 3):
            raise IncompatibleParams(f"paper_5_6_example needs N=2, M=3, got N={N}, M={M}")
        for idx in [(0, 0, 0), (1, 1, 1), (0, 0, 1), (1, 1, 0)]:
            t[idx] = 0.5
    else:
        raise IncompatibleParams(f"unknown kind {kind!r}; choose from {NAMED_KINDS}")
    return PureMultipartiteState.from_tensor(t)


def product_state(factors: Sequence[np.ndarray]) -> PureMultipartiteState:
    """Normalized tensor product of single-party vectors."""
    vecs = [np.asarray(v, dtype=np.complex128) for v in factors]
    t = vecs[0]
    for v in vecs[1:]:
        t = np.multiply.outer(t, v)
    return PureMultipartiteState.from_tensor(t / np.linalg.norm(t))


def to_json_dict(state) -> dict:
    state = as_multipartite(state)
    return {
        "parties": state.parties,
        "dim": state.dim,
        "amplitudes": [{"re": float(z.real), "im": float(z.imag)} for z in state.amplitudes],
    }


def from_json_dict(obj, where: str = "state") -> PureMultipartiteState:
    """Parse the state-file object; errors name the offending field."""
    if not isinstance(obj, dict):
        raise BadShape(f"{where}: expected an object")
    for key in ("parties", "dim", "amplitudes"):
        if key not in obj:
            raise BadShape(f"{where}: missing field {key!r}")
    parties, dim = obj["parties"], obj["dim"]
    for key, val in (("parties", parties), ("dim", dim)):
        if not isinstance(val, int) or isinstance(val, bool):
            raise BadShape(f"{where}.{key}: expected an integer, got {val!r}")
    amps = obj["amplitudes"]
    if not isinstance(amps, list):
        raise BadShape(f"{where}.amplitudes: expected an array")
    vals = np.empty(len(amps), dtype=np.complex128)
    for k, entry in enumerate(amps):
        if not isinstance(entry, dict) or set(entry) - {"re", "im"} or "re" not in entry:
            raise BadShape(f"{where}.amplitudes[{k}]: expected {{'re': float, 'im': float}}")
        re, im = entry["re"], entry.get("im", 0.0)
        for name, x in (("re", re), ("im", im)):
            if not isinstance(x, (int, float)) or isinstance(x, bool):
                raise BadShape(f"{where}.amplitudes[{k}].{name}: expected a number, got {x!r}")
        vals[k] = complex(re, im)
    try:
        return PureMultipartiteState(parties, dim, vals)
    except StateError as exc:
        raise type(exc)(f"{where}: {exc}") from None
