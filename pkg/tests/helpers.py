import numpy as np
from hypothesis import strategies as st

from luent.state import PureBipartiteState, PureMultipartiteState


def rand_complex(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def rand_unit(rng, n):
    v = rand_complex(rng, n)
    return v / np.linalg.norm(v)


def finite_floats(bound=1.0):
    return st.floats(-bound, bound, allow_nan=False, allow_infinity=False)


@st.composite
def pure_states(draw, dims=(2, 3), parties=(2, 3)):
    """Normalized pure states from arbitrary (nonzero) complex amplitudes."""
    n = draw(st.sampled_from(dims))
    m = draw(st.sampled_from(parties))
    size = n**m
    re = draw(st.lists(finite_floats(), min_size=size, max_size=size))
    im = draw(st.lists(finite_floats(), min_size=size, max_size=size))
    v = np.array(re) + 1j * np.array(im)
    norm = np.linalg.norm(v)
    if norm < 1e-3:
        v = np.zeros(size, dtype=complex)
        v[0] = 1.0
        norm = 1.0
    return PureMultipartiteState(m, n, v / norm)


@st.composite
def bipartite_states(draw, dims=(2, 3, 4)):
    s = draw(pure_states(dims=dims, parties=(2,)))
    return s.as_bipartite()


def bipartite(matrix):
    return PureBipartiteState.from_matrix(np.asarray(matrix, dtype=complex))
