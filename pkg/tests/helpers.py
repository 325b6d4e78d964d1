"""Random instance generators shared by the test modules."""

import numpy as np

from psmcond.eigensolve import system_zeros
from psmcond.polymat import PolyMatrix
from psmcond.psm import PolySystemMatrix


def crandn(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_poly(rng, rows, cols, deg):
    return PolyMatrix([crandn(rng, rows, cols) for _ in range(deg + 1)])


def random_psm(rng, n=None, p=None, degrees=None):
    """Random complex system matrix with n, p <= 6 and block degrees <= 3."""
    n = n or int(rng.integers(1, 7))
    p = p or int(rng.integers(1, 7))
    if degrees is None:
        degrees = rng.integers(0, 4, size=4)
        degrees[0] = max(degrees[0], 1)
    dA, dB, dC, dD = (int(x) for x in degrees)
    return PolySystemMatrix(
        random_poly(rng, n, n, dA),
        random_poly(rng, n, p, dB),
        random_poly(rng, p, n, dC),
        random_poly(rng, p, p, dD),
    )


def random_instances(count, seed=0, target=0.0, require=lambda S, z: True):
    """Yield ``(S, zero)`` pairs: a random system and its simple minimal zero nearest ``target``."""
    rng = np.random.default_rng(seed)
    found = 0
    while found < count:
        S = random_psm(rng)
        (z,) = system_zeros(S, target=target)
        if z.simple and z.minimal and require(S, z):
            found += 1
            yield S, z
