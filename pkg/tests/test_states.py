import math

import numpy as np
import pytest

from petzmi.errors import InvalidInputError
from petzmi.linalg import partial_trace_factors
from petzmi.states import (
    BipartiteState,
    DensityOperator,
    Pmf,
    cc_state,
    copy_cc_state,
    pure_bipartite,
    purify,
    random_bipartite,
    random_density,
    tensor_states,
)


def test_density_validation_trace():
    with pytest.raises(InvalidInputError, match="trace"):
        DensityOperator(np.diag([0.6, 0.6]))


def test_density_validation_negativity():
    with pytest.raises(InvalidInputError, match="negative"):
        DensityOperator(np.diag([1.5, -0.5]))


def test_density_validation_hermiticity():
    with pytest.raises(InvalidInputError, match="Hermitian"):
        DensityOperator([[0.5, 0.5], [0.0, 0.5]])


def test_marginals_of_product():
    a = random_density(2, 1)
    b = random_density(3, 2)
    rho = BipartiteState(np.kron(a.matrix, b.matrix), 2, 3)
    assert np.allclose(rho.marginal_a.matrix, a.matrix, atol=1e-12)
    assert np.allclose(rho.marginal_b.matrix, b.matrix, atol=1e-12)


def test_pure_state_normalizes():
    rho = pure_bipartite([1.0, 0.0, 0.0, 1.0], 2, 2)  # unnormalized Bell vector
    assert rho.is_pure()
    assert rho.trace() == pytest.approx(1.0)
    assert np.allclose(rho.marginal_a.matrix, np.eye(2) / 2, atol=1e-12)


def test_cc_state_diagonal_roundtrip():
    table = np.array([[0.1, 0.2], [0.3, 0.4]])
    rho = cc_state(Pmf(table))
    back = rho.diagonal_pmf_or_none()
    assert back is not None
    assert np.allclose(back.table, table)


def test_copy_cc_marginals():
    rho = copy_cc_state([0.2, 0.8])
    assert np.allclose(rho.marginal_a.matrix, np.diag([0.2, 0.8]))
    assert np.allclose(rho.marginal_b.matrix, np.diag([0.2, 0.8]))


def test_random_density_is_reproducible():
    a = random_density(4, 11)
    b = random_density(4, 11)
    assert np.allclose(a.matrix, b.matrix)


def test_purify_recovers_state():
    rho = random_density(3, 5, rank=2)
    psi, d_c = purify(rho)
    assert d_c == 2
    full = np.outer(psi, psi.conj())
    reduced = partial_trace_factors(full, [3, d_c], [0])
    assert np.allclose(reduced, rho.matrix, atol=1e-10)


def test_tensor_states_regroups_marginals():
    rho = random_bipartite(2, 2, 3)
    tau = random_bipartite(2, 2, 4)
    joint = tensor_states(rho, tau)
    assert joint.d_a == 4 and joint.d_b == 4
    expected_a = np.kron(rho.marginal_a.matrix, tau.marginal_a.matrix)
    assert np.allclose(joint.marginal_a.matrix, expected_a, atol=1e-10)


def test_pmf_rejects_negative():
    with pytest.raises(InvalidInputError):
        Pmf(np.array([[1.2, -0.2], [0.0, 0.0]]))


def test_pmf_marginals_sum():
    pmf = Pmf(np.array([[0.1, 0.2], [0.3, 0.4]]))
    assert pmf.marginal_x.sum() == pytest.approx(1.0)
    assert math.isclose(pmf.marginal_y[1], 0.6)
