"""Local-unitary invariants, generalized concurrence and rank-two separability."""

__version__ = "0.1.0"

from .concurrence import (
    ConcurrenceReport,
    concurrence_bipartite,
    concurrence_multipartite,
    concurrence_tripartite,
)
from .invariants import (
    InvariantVector,
    bipartition_invariant,
    invariant_I,
    invariant_vector,
    tripartite_invariants,
)
from .lu import LocalUnitaryTuple, apply_local, haar_unitary, invariance_suite, random_state
from .separability import RankTwoMixedState, ppt_check, separability_check
from .spectrum import (
    char_poly_coeffs,
    eigenvalues_n3_closed_form,
    entanglement_of_formation,
    eof_of_state,
    schmidt_spectrum,
)
from .state import (
    Bipartition,
    PureBipartiteState,
    PureMultipartiteState,
    bipartitions,
    make_named,
    reduced_density,
    reduced_density_subset,
    validate,
)

__all__ = [
    "Bipartition",
    "ConcurrenceReport",
    "InvariantVector",
    "LocalUnitaryTuple",
    "PureBipartiteState",
    "PureMultipartiteState",
    "RankTwoMixedState",
    "apply_local",
    "bipartition_invariant",
    "bipartitions",
    "char_poly_coeffs",
    "concurrence_bipartite",
    "concurrence_multipartite",
    "concurrence_tripartite",
    "eigenvalues_n3_closed_form",
    "entanglement_of_formation",
    "eof_of_state",
    "haar_unitary",
    "invariance_suite",
    "invariant_I",
    "invariant_vector",
    "make_named",
    "ppt_check",
    "random_state",
    "reduced_density",
    "reduced_density_subset",
    "schmidt_spectrum",
    "separability_check",
    "tripartite_invariants",
    "validate",
]
