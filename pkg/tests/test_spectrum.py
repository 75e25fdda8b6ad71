import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import bipartite_states
from luent.errors import ClosedFormMismatch, IncompatibleParams, StateError
from luent.invariants import InvariantVector, invariant_vector
from luent.lu import random_product_state, random_state
from luent.spectrum import (
    SchmidtSpectrum,
    char_poly_coeffs,
    concurrence_from_spectrum,
    eigenvalues_n3_closed_form,
    entanglement_of_formation,
    eof_of_state,
    schmidt_spectrum,
)
from luent.state import PureBipartiteState, make_named
from oracles import elementary_symmetric, entropy_bits


def diag_state(lam):
    return PureBipartiteState.from_matrix(np.diag(np.sqrt(np.asarray(lam, dtype=float))))


def test_bell_spectrum(bell):
    assert schmidt_spectrum(bell).values == pytest.approx((0.5, 0.5), abs=1e-15)


def test_product_spectrum(rng):
    vals = schmidt_spectrum(random_product_state(4, 2, rng)).values
    assert vals[0] == pytest.approx(1, abs=1e-12)
    assert vals[1:] == pytest.approx((0, 0, 0), abs=1e-12)


def test_spectrum_matches_svd(rng):
    s = random_state(4, 2, rng).as_bipartite()
    sv = np.linalg.svd(s.amplitudes, compute_uv=False)
    assert np.allclose(schmidt_spectrum(s).values, sv**2, atol=1e-10, rtol=0)


def test_spectrum_validation():
    with pytest.raises(StateError):
        SchmidtSpectrum((0.7, 0.7))
    with pytest.raises(StateError):
        SchmidtSpectrum((1.1, -0.1))
    assert SchmidtSpectrum((1.0, -1e-12)).values == (1.0, 0.0)


@pytest.mark.parametrize(
    "lam, expected",
    [((1, 0, 0), 0.0), ((0.5, 0.5), 1.0), ((0.25,) * 4, 2.0), ((1 / 3,) * 3, math.log2(3))],
)
def test_eof_values(lam, expected):
    assert entanglement_of_formation(SchmidtSpectrum(lam)) == pytest.approx(expected, abs=1e-14)


def test_eof_of_named_states(bell):
    assert eof_of_state(bell) == pytest.approx(1, abs=1e-14)
    assert eof_of_state(make_named("product", 3, 2)) == 0.0
    assert eof_of_state(make_named("max_entangled", 3, 2)) == pytest.approx(1.584962500721156, abs=1e-12)


@given(bipartite_states())
@settings(max_examples=60, deadline=None)
def test_eof_range_and_oracle(state):
    spec = schmidt_spectrum(state)
    e = entanglement_of_formation(spec)
    assert -1e-12 <= e <= math.log2(state.dim) + 1e-12
    assert e == pytest.approx(entropy_bits(spec.values), abs=1e-12)


def test_char_poly_two_equal_weights():
    # e_2(1/2, 1/2, 0) = 1/4 and e_3 = 0
    cp = char_poly_coeffs(invariant_vector(diag_state([0.5, 0.5, 0])))
    assert cp[1] == pytest.approx(0.25, abs=1e-15)
    assert cp[0] == pytest.approx(0.0, abs=1e-15)
    assert cp[2] == pytest.approx(1.0, abs=1e-15)
    assert cp[3] == 1.0


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_char_poly_is_elementary_symmetric(rng, n):
    s = random_state(n, 2, rng).as_bipartite()
    lam = schmidt_spectrum(s).values
    cp = char_poly_coeffs(invariant_vector(s))
    assert set(cp.c) == {k for k in (n - 1, n - 2, n - 3, n - 4) if k >= 0}
    for k, v in cp.c.items():
        assert v == pytest.approx(elementary_symmetric(lam, n - k), abs=1e-8)


def test_char_poly_roots_are_spectrum(rng):
    s = random_state(4, 2, rng).as_bipartite()
    cp = char_poly_coeffs(invariant_vector(s))
    # all coefficients are known for N = 4: sum_k (-L)^k c_k
    poly = [cp[k] * (-1) ** k for k in range(4, -1, -1)]
    roots = np.sort(np.roots(poly).real)[::-1]
    assert np.allclose(roots, schmidt_spectrum(s).values, atol=1e-8)


def test_closed_form_product():
    cf = eigenvalues_n3_closed_form(invariant_vector(make_named("product", 3, 2)))
    assert cf.lambdas == pytest.approx((1, 0, 0), abs=1e-10)
    assert cf.C3 == pytest.approx(0, abs=1e-10)


def test_closed_form_max_entangled():
    cf = eigenvalues_n3_closed_form(invariant_vector(make_named("max_entangled", 3, 2)))
    assert cf.lambdas == pytest.approx((1 / 3,) * 3, abs=1e-10)


def test_closed_form_random(rng):
    for _ in range(100):
        s = random_state(3, 2, rng).as_bipartite()
        ref = schmidt_spectrum(s)
        cf = eigenvalues_n3_closed_form(invariant_vector(s), reference=ref)
        assert cf.sorted == pytest.approx(ref.values, abs=1e-8)
        assert sum(cf.lambdas) == pytest.approx(1, abs=1e-10)
        # L1 is always the largest, L2 the smallest
        assert cf.lambdas[0] >= cf.lambdas[2] - 1e-12 >= cf.lambdas[1] - 2e-12


def test_closed_form_two_weights():
    cf = eigenvalues_n3_closed_form(invariant_vector(diag_state([0.7, 0.3, 0])))
    assert cf.sorted == pytest.approx((0.7, 0.3, 0.0), abs=1e-10)


def test_closed_form_mismatch_raised():
    inv = invariant_vector(diag_state([0.6, 0.3, 0.1]))
    with pytest.raises(ClosedFormMismatch):
        eigenvalues_n3_closed_form(inv, reference=[0.5, 0.3, 0.2])


def test_closed_form_needs_n3(bell):
    with pytest.raises(IncompatibleParams):
        eigenvalues_n3_closed_form(invariant_vector(bell))


def test_concurrence_zero_and_one_imply_eof():
    for n in range(2, 7):
        prod = SchmidtSpectrum((1.0,) + (0.0,) * (n - 1))
        assert concurrence_from_spectrum(prod) == 0
        assert entanglement_of_formation(prod) == 0
        flat = SchmidtSpectrum((1 / n,) * n)
        assert concurrence_from_spectrum(flat) == pytest.approx(1, abs=1e-12)
        assert entanglement_of_formation(flat) == pytest.approx(math.log2(n), abs=1e-12)


@given(st.integers(2, 6), st.floats(0.5, 1.0), st.floats(0.5, 1.0))
@settings(max_examples=100, deadline=None)
def test_two_weight_eof_increases_with_concurrence(n, x, y):
    def pair(lam):
        s = SchmidtSpectrum((lam, 1 - lam) + (0.0,) * (n - 2))
        return concurrence_from_spectrum(s), entanglement_of_formation(s)

    (c1, e1), (c2, e2) = pair(x), pair(y)
    if c1 < c2 - 1e-9:
        assert e1 < e2


def test_n3_not_monotone_concrete_pair():
    # (0.7, 0.15, 0.15) is less concurrent than (1/2, 1/2, 0) but more entropic
    s1 = SchmidtSpectrum((0.7, 0.15, 0.15))
    s2 = SchmidtSpectrum((0.5, 0.5, 0.0))
    assert concurrence_from_spectrum(s1) < concurrence_from_spectrum(s2)
    assert entanglement_of_formation(s1) > entanglement_of_formation(s2)


def test_invariant_vector_wrapper_dim():
    assert InvariantVector((1.0, 0.5, 0.25)).dim == 3
