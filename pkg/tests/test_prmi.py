import math

import numpy as np
import pytest

from petzmi.classical import rmi_down_down as classical_dd
from petzmi.divergences import petz_divergence, renyi_entropy
from petzmi.errors import UnsupportedRegimeError
from petzmi.linalg import tensor_product, trace_distance
from petzmi.prmi import (
    FixedPointConfig,
    fixed_point_map,
    gen_prmi_down,
    prmi,
    prmi_closed_form,
    prmi_down_down,
    prmi_up_down,
    prmi_up_up,
)
from petzmi.states import (
    BipartiteState,
    Pmf,
    cc_state,
    copy_cc_state,
    pure_bipartite,
    random_bipartite,
    random_density,
    tensor_states,
)

PURE_02 = pure_bipartite([math.sqrt(0.2), 0, 0, math.sqrt(0.8)], 2, 2)
CC_02 = copy_cc_state([0.2, 0.8])


def test_up_up_equals_divergence_to_marginal_product(qubit_pair):
    rho = qubit_pair
    ref = tensor_product(rho.marginal_a, rho.marginal_b).matrix
    for alpha in (0.4, 1.0, 1.7):
        assert prmi_up_up(alpha, rho).value == pytest.approx(
            petz_divergence(alpha, rho, ref).value, abs=1e-12
        )


def test_gen_down_minimizer_is_optimal(qubit_pair):
    # the closed-form tau must beat nearby perturbations
    rho = qubit_pair
    alpha = 0.7
    sigma = rho.marginal_a
    value, tau = gen_prmi_down(alpha, rho, sigma)
    rng = np.random.default_rng(0)
    for _ in range(20):
        other = random_density(rho.d_b, rng)
        ref = tensor_product(sigma, other).matrix
        assert petz_divergence(alpha, rho, ref).value >= value - 1e-10
    ref = tensor_product(sigma, tau).matrix
    assert petz_divergence(alpha, rho, ref).value == pytest.approx(value, abs=1e-10)


@pytest.mark.parametrize("alpha", [0.55, 0.7, 0.9, 1.0, 1.3, 1.8, 2.0])
def test_solver_matches_pure_closed_form(alpha):
    sol = prmi_down_down(alpha, PURE_02)
    assert sol.value == pytest.approx(prmi_closed_form(alpha, PURE_02, "dd"), abs=1e-9)
    assert sol.certified


@pytest.mark.parametrize("alpha", [0.55, 0.7, 0.9, 1.0, 1.3, 1.8, 2.0])
def test_solver_matches_copy_cc_closed_form(alpha):
    sol = prmi_down_down(alpha, CC_02)
    assert sol.value == pytest.approx(prmi_closed_form(alpha, CC_02, "dd"), abs=1e-9)


def test_pure_closed_form_minimizer_is_marginal_power():
    # optimizers sigma ~ rho_A^(1/(2 alpha - 1)) for pure states
    alpha = 0.8
    sol = prmi_down_down(alpha, PURE_02)
    from petzmi.linalg import power_on_support

    expected = power_on_support(PURE_02.marginal_a, 1 / (2 * alpha - 1))
    expected = expected.matrix / np.real(np.trace(expected.matrix))
    assert trace_distance(sol.sigma_a, expected) < 1e-8


def test_alpha_one_returns_mutual_information(qubit_pair):
    sol = prmi_down_down(1.0, qubit_pair)
    assert sol.certified
    assert trace_distance(sol.sigma_a, qubit_pair.marginal_a) < 1e-12
    # matches the relative entropy to the marginal product
    assert sol.value == pytest.approx(prmi_up_up(1.0, qubit_pair).value, abs=1e-12)


def test_monotone_ordering_of_variants(qubit_pair):
    for alpha in (0.6, 0.8, 1.5, 2.0):
        uu = prmi_up_up(alpha, qubit_pair).value
        ud = prmi_up_down(alpha, qubit_pair).as_float()
        dd = prmi_down_down(alpha, qubit_pair).value
        assert dd <= ud + 1e-10
        assert ud <= uu + 1e-10


def test_objective_trace_monotone(qubit_pair):
    sol = prmi_down_down(0.8, qubit_pair)
    diffs = np.diff(sol.objective_trace)
    assert np.all(diffs <= 1e-11)
    assert sol.residual <= 1e-11


def test_fixed_point_of_solution(qubit_pair):
    sol = prmi_down_down(0.75, qubit_pair)
    mapped = fixed_point_map(0.75, qubit_pair, sol.sigma_a)
    assert trace_distance(mapped, sol.sigma_a) < 1e-10


def test_restarts_agree(qubit_pair):
    config = FixedPointConfig(restarts=8, seed=5)
    baseline = prmi_down_down(0.9, qubit_pair)
    multi = prmi_down_down(0.9, qubit_pair, config)
    assert multi.value == pytest.approx(baseline.value, abs=1e-9)
    assert multi.certified


def test_cc_state_agrees_with_classical():
    pmf = Pmf(np.array([[0.35, 0.15], [0.05, 0.45]]))
    rho = cc_state(pmf)
    for alpha in (0.6, 0.8, 1.2, 2.0):
        sol = prmi_down_down(alpha, rho)
        cval, _, _ = classical_dd(alpha, pmf)
        assert sol.value == pytest.approx(cval, abs=1e-9)


def test_small_alpha_cc_uses_classical_path():
    pmf = Pmf(np.array([[0.35, 0.15], [0.05, 0.45]]))
    sol = prmi_down_down(0.3, cc_state(pmf))
    cval, _, _ = classical_dd(0.3, pmf)
    assert sol.value == pytest.approx(cval, abs=1e-9)
    assert sol.certified


def test_small_alpha_generic_state_uses_search(qubit_pair):
    sol = prmi_down_down(0.4, qubit_pair)
    # search result can only overestimate; it must still sit below the
    # singly minimized variant
    assert sol.value <= prmi_up_down(0.4, qubit_pair).as_float() + 1e-6
    assert not sol.certified


def test_alpha_above_two_rejected(qubit_pair):
    with pytest.raises(UnsupportedRegimeError):
        prmi_down_down(2.3, qubit_pair)


def test_additivity_on_tensor_products():
    rho = random_bipartite(2, 2, 8)
    tau = random_bipartite(2, 2, 9)
    joint = tensor_states(rho, tau)
    for alpha in (0.7, 1.4):
        lhs = prmi_down_down(alpha, joint).value
        rhs = prmi_down_down(alpha, rho).value + prmi_down_down(alpha, tau).value
        assert lhs == pytest.approx(rhs, abs=1e-8)


def test_product_state_gives_zero():
    a = random_density(2, 1)
    b = random_density(2, 2)
    rho = BipartiteState(np.kron(a.matrix, b.matrix), 2, 2)
    for alpha in (0.6, 1.0, 1.8):
        assert prmi_down_down(alpha, rho).value == pytest.approx(0.0, abs=1e-9)


def test_dispatch_names(qubit_pair):
    assert prmi(1.0, qubit_pair, "uu").value == pytest.approx(
        prmi(1.0, qubit_pair, "dd").value, abs=1e-12
    )


def test_pure_closed_forms_all_variants():
    # spot values frozen from the defining entropy formulas at p = 0.2
    h = lambda a: renyi_entropy(a, PURE_02.marginal_a)
    assert prmi_closed_form(0.75, PURE_02, "uu") == pytest.approx(2 * h(1.5), abs=1e-12)
    assert prmi_closed_form(0.75, PURE_02, "ud") == pytest.approx(2 * h(5 / 3), abs=1e-12)
    assert prmi_closed_form(0.75, PURE_02, "dd") == pytest.approx(2 * h(2.0), abs=1e-12)
    assert prmi_closed_form(0.25, PURE_02, "dd") == pytest.approx(
        (4 / 3) * (-math.log(0.8)), abs=1e-12
    )
