import numpy as np
import pytest

from helpers import bipartite, rand_unit
from luent.errors import DegenerateAlpha, DegenerateRoots, DimMismatch, IncompatibleParams, NotOrthogonal
from luent.lu import haar_unitary
from luent.separability import (
    RankTwoMixedState,
    minor_tensors,
    partial_transpose,
    ppt_check,
    separability_check,
)
from luent.state import PureBipartiteState
from oracles import partial_transpose_loops

S2 = 1 / np.sqrt(2)
PHI_PLUS = bipartite([[S2, 0], [0, S2]])
PSI_PLUS = bipartite([[0, S2], [S2, 0]])
E00 = bipartite([[1, 0], [0, 0]])
E01 = bipartite([[0, 1], [0, 0]])
E11 = bipartite([[0, 0], [0, 1]])


def product_pair_mixture(rng, n, w):
    v1 = np.kron(rand_unit(rng, n), rand_unit(rng, n))
    v2 = np.kron(rand_unit(rng, n), rand_unit(rng, n))
    return RankTwoMixedState.mixture([w, 1 - w], [v1, v2])


def haar_pair(rng, n, p):
    u = haar_unitary(n * n, rng)
    return RankTwoMixedState(p, PureBipartiteState(n, u[:, 0].reshape(n, n)), PureBipartiteState(n, u[:, 1].reshape(n, n)))


def test_state_validation():
    with pytest.raises(IncompatibleParams):
        RankTwoMixedState(1.2, PHI_PLUS, PSI_PLUS)
    with pytest.raises(IncompatibleParams):
        RankTwoMixedState(0.0, PHI_PLUS, PSI_PLUS)
    with pytest.raises(NotOrthogonal):
        RankTwoMixedState(0.5, PHI_PLUS, E00)
    with pytest.raises(DimMismatch):
        RankTwoMixedState(0.5, PHI_PLUS, PureBipartiteState(3, np.diag([0, 0, 1])))


def test_density_matrix_trace_and_rank():
    rho = RankTwoMixedState(0.3, PHI_PLUS, PSI_PLUS).density_matrix()
    assert np.trace(rho).real == pytest.approx(1)
    assert np.linalg.matrix_rank(rho) == 2


def test_minors_vanish_for_product_eigenvectors():
    mt = minor_tensors(RankTwoMixedState(0.3, E00, E11))
    assert np.all(mt.alpha == 0) and np.all(mt.gamma == 0)


def test_minors_of_two_bell_states():
    # gamma_00^11 = a1_00 a1_11 - a1_01 a1_10 = 1/2, alpha_00^11 = 0 - (1/sqrt2)^2 = -1/2
    mt = minor_tensors(RankTwoMixedState(0.5, PHI_PLUS, PSI_PLUS))
    assert mt.gamma[0, 0, 1, 1] == pytest.approx(0.5, abs=1e-15)
    assert mt.alpha[0, 0, 1, 1] == pytest.approx(-0.5, abs=1e-15)


def test_minor_antisymmetry_exact(rng):
    mt = minor_tensors(haar_pair(rng, 3, 0.4))
    for t in (mt.alpha, mt.beta, mt.gamma):
        assert np.array_equal(t, -t.transpose(0, 3, 2, 1))


def test_orthogonal_product_mixture_separable():
    v = separability_check(RankTwoMixedState(0.3, E00, E11), with_ppt=True)
    assert v.separable is True and v.violated == "none"
    assert v.ppt_agrees is True


def test_two_bell_equal_mixture_is_separable():
    # (Phi+ + Psi+)/2 = (|++><++| + |--><--|)/2
    v = separability_check(RankTwoMixedState(0.5, PHI_PLUS, PSI_PLUS), with_ppt=True)
    assert v.separable is True and v.method == "criterion"
    assert v.mixing_value == pytest.approx(0.5, abs=1e-12)
    assert v.ppt_agrees is True


@pytest.mark.parametrize("p", [0.2, 0.7, 0.9])
def test_two_bell_unequal_mixture_entangled(p):
    v = separability_check(RankTwoMixedState(p, PHI_PLUS, PSI_PLUS), with_ppt=True)
    assert v.separable is False
    assert v.ppt_agrees is True and v.ppt_min_eigenvalue < -0.1


def test_bell_with_product_entangled():
    v = separability_check(RankTwoMixedState(0.9, PHI_PLUS, E01), with_ppt=True)
    assert v.separable is False and v.ppt_agrees is True


def test_ppt_values():
    ok, lo = ppt_check(RankTwoMixedState(0.5, E00, E11))
    assert ok and lo >= 0
    ok, lo = ppt_check(RankTwoMixedState(0.99, PHI_PLUS, E01))
    assert not ok and lo < -0.4


def test_partial_transpose_matches_loops(rng):
    r = haar_pair(rng, 3, 0.35)
    rho = r.density_matrix()
    assert np.array_equal(partial_transpose(rho, 3), partial_transpose_loops(rho, 3))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_product_pair_mixtures_separable(rng, n):
    for _ in range(30):
        r = product_pair_mixture(rng, n, rng.uniform(0.05, 0.95))
        v = separability_check(r, with_ppt=True)
        assert v.separable is True, v
        assert 0 <= v.mixing_value <= 1
        assert v.ppt_agrees is True


@pytest.mark.parametrize("n", [2, 3])
def test_random_pairs_entangled(rng, n):
    for _ in range(30):
        v = separability_check(haar_pair(rng, n, rng.uniform(0.05, 0.95)), with_ppt=True)
        assert v.separable is False and v.ppt_agrees is True


def test_theta_tuned_states_reach_root_condition(rng):
    for _ in range(30):
        u = haar_unitary(4, rng)
        a1, a2 = u[:, 0].reshape(2, 2), u[:, 1].reshape(2, 2)
        d1, d2 = abs(np.linalg.det(a1)), abs(np.linalg.det(a2))
        r = RankTwoMixedState(d2 / (d1 + d2), PureBipartiteState(2, a1), PureBipartiteState(2, a2))
        v = separability_check(r, with_ppt=True)
        assert v.violated == "root_condition_failed"
        assert v.ppt_agrees is True


def test_mixing_value_weights_complement(rng):
    """The two root orderings give weights w and 1 - w of the product decomposition."""
    r = product_pair_mixture(rng, 2, 0.3)
    v = separability_check(r)
    assert v.separable
    assert 0 < v.mixing_value < 1


def test_swap_when_alpha_vanishes():
    # E2 product, E1 entangled: alpha == 0 but gamma != 0
    v = separability_check(RankTwoMixedState(0.6, PHI_PLUS, E01), with_ppt=True)
    assert v.separable is False and v.method == "criterion"
    assert v.ppt_agrees is True


def test_strict_degenerate_alpha():
    with pytest.raises(DegenerateAlpha):
        separability_check(RankTwoMixedState(0.3, E00, E11), strict=True)


def tangent_pencil(n, phi=np.pi / 3):
    """Rank-two state whose range touches the product vectors at one point only.

    span{I/sqrt2, |0><1|} (embedded in n x n) meets the product set only at
    |0><1|; rotating the basis by phi puts the double root at mu = cot(phi),
    and p = 1 / (1 + mu^2) makes |mu|^2 = q/p so that conditions (1) and (2) hold.
    """
    eye = np.zeros((n, n), dtype=complex)
    eye[0, 0] = eye[1, 1] = 1 / np.sqrt(2)
    nil = np.zeros((n, n), dtype=complex)
    nil[0, 1] = 1
    e1 = np.cos(phi) * eye + np.sin(phi) * nil
    e2 = -np.sin(phi) * eye + np.cos(phi) * nil
    mu = 1 / np.tan(phi)
    return RankTwoMixedState(1 / (1 + mu**2), PureBipartiteState(n, e1), PureBipartiteState(n, e2))


def test_double_root_falls_back_to_ppt():
    r = tangent_pencil(2)
    with pytest.raises(DegenerateRoots):
        separability_check(r, strict=True)
    v = separability_check(r)
    assert v.method == "ppt_fallback" and v.violated == "degenerate_roots"
    # a single product vector in the range cannot carry a rank-two state
    assert v.separable is False


def test_indeterminate_above_three_on_double_root():
    v = separability_check(tangent_pencil(4))
    assert v.separable is None and v.method == "indeterminate"


def test_entangled_verdict_lu_invariant(rng):
    for _ in range(100):
        r = haar_pair(rng, 2, rng.uniform(0.05, 0.95))
        u = haar_unitary(2, rng)
        rot = [PureBipartiteState(2, u @ e.amplitudes @ u.T) for e in (r.E1, r.E2)]
        assert separability_check(RankTwoMixedState(r.p, *rot)).separable == separability_check(r).separable


def test_separable_verdict_lu_invariant(rng):
    for _ in range(30):
        r = product_pair_mixture(rng, 3, rng.uniform(0.1, 0.9))
        u = haar_unitary(3, rng)
        rot = [PureBipartiteState(3, u @ e.amplitudes @ u.T) for e in (r.E1, r.E2)]
        assert separability_check(RankTwoMixedState(r.p, *rot)).separable is True


def test_separable_implies_ppt_any_dim(rng):
    for n in (2, 3, 4, 5):
        r = product_pair_mixture(rng, n, 0.4)
        assert separability_check(r).separable
        assert ppt_check(r)[0]
