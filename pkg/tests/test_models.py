import math

import numpy as np
import pytest

from psmcond.condition import p_from_weights, weight_scheme_uniform
from psmcond.eigensolve import system_zeros
from psmcond.errors import InvalidSpec, PoleOrSingular
from psmcond.models import (
    MODEL_NAMES,
    ModelSpec,
    build,
    data_only_weights,
    damped_vibration,
    loaded_string,
    string_matrices,
    vibration_data,
)
from psmcond.psm import transfer_eval

PHI = (1 + math.sqrt(5)) / 2


@pytest.mark.parametrize("name", MODEL_NAMES)
def test_every_model_builds_with_defaults(name):
    S = build(ModelSpec(name))
    S.check_regular()


@pytest.mark.parametrize(
    "name, params",
    [
        ("nope", {}),
        ("damped_vibration_rep1", {"n": 0}),
        ("damped_vibration_rep1", {"k": 1.5}),
        ("loaded_string_rep2", {"m": 0}),
        ("loaded_string_rep4", {"k": -1}),
        ("example52", {"alpha": 0}),
    ],
)
def test_invalid_specs(name, params):
    with pytest.raises(InvalidSpec):
        ModelSpec(name, params)


def test_string_matrices_small():
    K, M = string_matrices(2)
    assert np.allclose(K, [[4, -2], [-2, 2]])
    assert np.allclose(M, np.array([[4, 1], [1, 2]]) / 12)


def test_damped_representations_share_transfer_function():
    n, k = 5, 3
    S1, S3 = damped_vibration(n, k, 4, 1), damped_vibration(n, k, 4, 3)
    data = vibration_data(n, k, 4)
    for z in (0.3 + 1.1j, -2.0, 4.0 - 0.5j):
        ref = -data["K"] + z * data["M"] + z**2 * sum(
            C / (om - z) for C, om in zip(data["C"], data["omega"])
        )
        for S in (S1, S3):
            assert np.linalg.norm(transfer_eval(S, z) - ref) <= 1e-10 * np.linalg.norm(ref)


def test_damped_data_is_seeded():
    a, b, c = (vibration_data(4, 2, s) for s in (1, 1, 2))
    assert np.array_equal(a["K"], b["K"]) and not np.array_equal(a["K"], c["K"])


def test_data_only_weight_p_values():
    p1 = p_from_weights(data_only_weights(ModelSpec("damped_vibration_rep1")))
    assert p1 == pytest.approx([1.0, math.sqrt(2)])
    p3 = p_from_weights(data_only_weights(ModelSpec("damped_vibration_rep3")))
    assert p3 == pytest.approx([PHI, 1.0, 0.0])
    with pytest.raises(InvalidSpec):
        data_only_weights(ModelSpec("example52"))


def test_uniform_weight_p_values_rep3():
    S = damped_vibration(4, 2, 0, 3)
    assert p_from_weights(weight_scheme_uniform(S)) == pytest.approx([2.0, PHI, 1.0])


def test_loaded_string_pole_and_transfer():
    n, k, m = 6, 3.0, 2.0
    S = loaded_string(n, k, m, 4)
    with pytest.raises(PoleOrSingular):
        transfer_eval(S, k / m)
    K, M = string_matrices(n)
    z = 0.7 + 0.2j
    ref = K - z * M
    ref[-1, -1] += k * z / (z - k / m)
    assert np.allclose(transfer_eval(S, z), ref, rtol=1e-13)


def test_loaded_string_largest_eigenvalue_is_simple_and_minimal():
    (z,) = system_zeros(loaded_string(10, 1.0, 1.0, 2), target="largest")
    assert z.simple and z.minimal
    assert z.lambda0.real > 1000 and abs(z.lambda0.imag) < 1e-8 * z.lambda0.real


def test_example52_single_zero_at_alpha():
    (z,) = system_zeros(build(ModelSpec("example52", {"alpha": 5.0, "beta": 10.0, "k": 5})))
    assert z.lambda0 == pytest.approx(5.0, abs=1e-10)


def test_spec_round_trip():
    spec = ModelSpec("loaded_string_rep2", {"k": 10.0})
    assert spec.to_dict() == {"name": "loaded_string_rep2", "params": {"n": 10, "k": 10.0, "m": 1.0}}
