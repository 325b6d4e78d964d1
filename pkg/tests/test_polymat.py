import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from psmcond.polymat import NEG_INF_DEGREE, PolyMatrix, block_poly, degree, eval_derivative, eval_poly

from helpers import crandn, random_poly


def naive_eval(P, z):
    return sum(c * z**i for i, c in enumerate(P.coeffs))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def test_zero_polynomial_evaluates_to_zero():
    Z = PolyMatrix.zeros(3, 2)
    assert np.array_equal(eval_poly(Z, 1.7 - 2j), np.zeros((3, 2)))
    assert degree(Z) == NEG_INF_DEGREE
    assert Z.is_zero()


def test_example_system_matrix_at_one():
    P = PolyMatrix([[[-1, 1, 0], [0, 1, 0], [-1, 0, 1]], [[1, 0, 0], [0, 0, 0], [0, 0, 0]]])
    assert np.array_equal(P(1), [[0, 1, 0], [0, 1, 0], [-1, 0, 1]])


def test_horner_matches_naive_sum(rng):
    P = random_poly(rng, 3, 3, 4)
    z = complex(*rng.standard_normal(2))
    ref = naive_eval(P, z)
    assert np.linalg.norm(eval_poly(P, z) - ref) <= 1e-13 * np.linalg.norm(ref)


def test_derivative_simple_cases():
    lin = PolyMatrix([[[-1.0]], [[1.0]]])
    assert eval_derivative(lin, 3.3 + 1j) == pytest.approx(np.array([[1.0]]))
    const = PolyMatrix.constant(np.ones((2, 2)))
    assert np.array_equal(eval_derivative(const, 5.0), np.zeros((2, 2)))


def test_derivative_matches_central_difference(rng):
    P = random_poly(rng, 3, 4, 3)
    z = complex(*rng.standard_normal(2))
    h = 1e-6
    fd = (P(z + h) - P(z - h)) / (2 * h)
    assert np.max(np.abs(eval_derivative(P, z) - fd)) <= 1e-7
    assert np.allclose(P.derivative()(z), eval_derivative(P, z))


def test_degree_ignores_trailing_zeros():
    M = np.eye(2)
    P = PolyMatrix([M, np.zeros((2, 2)), np.zeros((2, 2))])
    assert degree(P) == 0
    assert len(P) == 3
    assert len(P.normalize()) == 1
    assert degree(PolyMatrix([[[-1]], [[1]]])) == 1


def test_trailing_zeros_do_not_change_values(rng):
    P = random_poly(rng, 2, 2, 2)
    Q = PolyMatrix(list(P.coeffs) + [np.zeros((2, 2))] * 3)
    z = 0.3 - 1.1j
    assert np.allclose(P(z), Q(z), rtol=1e-15, atol=0)
    assert np.allclose(eval_derivative(P, z), eval_derivative(Q, z), rtol=1e-15, atol=0)
    assert P == Q


def test_coefficients_are_read_only(rng):
    P = random_poly(rng, 2, 2, 1)
    with pytest.raises(ValueError):
        P.coeffs[0, 0, 0] = 1.0


def test_mismatched_coefficients_rejected():
    with pytest.raises(ValueError):
        PolyMatrix([np.eye(2), np.eye(3)])


def test_json_round_trip(rng):
    P = random_poly(rng, 2, 3, 2)
    data = json.loads(json.dumps(P.to_dict()))
    assert data["rows"] == 2 and data["cols"] == 3
    assert data["coeffs"][0][0][0] == [P.coeffs[0, 0, 0].real, P.coeffs[0, 0, 0].imag]
    assert PolyMatrix.from_dict(data) == P


def test_block_poly_pads_missing_degrees():
    a = PolyMatrix([[[1.0]], [[2.0]]])
    b = PolyMatrix([[[3.0]]])
    P = block_poly([[a, b], [b, a]])
    assert len(P) == 2
    assert np.array_equal(P.coeff(1), [[2, 0], [0, 2]])


@settings(max_examples=40, deadline=None)
@given(
    seed=st.integers(0, 2**32 - 1),
    alpha=st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
    beta=st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
)
def test_eval_is_linear(seed, alpha, beta):
    rng = np.random.default_rng(seed)
    P = random_poly(rng, 3, 2, 3)
    Q = random_poly(rng, 3, 2, 1)
    z = complex(*rng.standard_normal(2))
    lhs = eval_poly(alpha * P + beta * Q, z)
    rhs = alpha * eval_poly(P, z) + beta * eval_poly(Q, z)
    scale = abs(alpha) * np.linalg.norm(P(z)) + abs(beta) * np.linalg.norm(Q(z)) + 1e-300
    assert np.linalg.norm(lhs - rhs) <= 1e-12 * scale


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), deg=st.integers(0, 6))
def test_horner_equals_naive_property(seed, deg):
    rng = np.random.default_rng(seed)
    P = PolyMatrix([crandn(rng, 2, 2) for _ in range(deg + 1)])
    z = complex(*rng.standard_normal(2))
    ref = naive_eval(P, z)
    assert np.linalg.norm(P(z) - ref) <= 1e-12 * max(np.linalg.norm(ref), sum(P.coeff_norms()) * max(1, abs(z)) ** deg)
