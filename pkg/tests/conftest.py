import os
import random
import sys

import pytest

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from exact_linalg import ExactMatrix, det  # noqa: E402
from hermitian_lattice import HermLattice, HermSpace, standard_lattice  # noqa: E402
from lattice_config import load_settings, reset_settings  # noqa: E402
from quadratic_ring import KElem, make_ring  # noqa: E402


@pytest.fixture(autouse=True)
def clean_settings(monkeypatch):
    """Every test starts from the shipped configuration."""
    for name in ('LATTICE_CONFIG', 'LATTICE_LOG_LEVEL', 'LATTICE_THREADS', 'LATTICE_PRETTY'):
        monkeypatch.delenv(name, raising=False)
    reset_settings()
    yield
    reset_settings()


@pytest.fixture
def rng():
    return random.Random(load_settings().seed)


@pytest.fixture
def trials():
    return load_settings().trials


def random_integral(rng, ring, bound=4):
    """A random element of O_k with small coordinates."""
    v = rng.randint(-bound, bound)
    parity = (v * ring.discriminant) % 2
    u = 2 * rng.randint(-bound, bound) + parity
    return KElem(ring, u, v)


def random_hermitian(rng, ring, n, bound=3):
    """A random nonsingular integral hermitian Gram matrix."""
    while True:
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            rows[i][i] = rng.choice([x for x in range(-bound, bound + 1) if x])
            for j in range(i + 1, n):
                x = random_integral(rng, ring, 2)
                rows[i][j] = x
                rows[j][i] = x.conjugate()
        m = ExactMatrix(rows, ring)
        if det(m) != 0:
            return m


def random_unimodular_free(rng, ring, n, bound=2):
    """A random nonsingular integral basis matrix."""
    while True:
        m = ExactMatrix([[random_integral(rng, ring, bound) for _ in range(n)] for _ in range(n)], ring)
        if det(m) != 0:
            return m


def random_unimodular(rng, ring, n, steps=6):
    """A product of elementary matrices, so the determinant is a unit."""
    m = ExactMatrix.identity(n, ring)
    if n < 2:
        return m
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        rows = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
        rows[i][j] = random_integral(rng, ring, 2)
        m = m * ExactMatrix(rows, ring)
    return m


def random_lattice(rng, ring, n):
    gram = random_hermitian(rng, ring, n)
    return HermLattice(HermSpace(ring, gram), random_unimodular_free(rng, ring, n))


@pytest.fixture
def eisenstein():
    return make_ring(-3)


@pytest.fixture
def gaussian():
    return make_ring(-4)


@pytest.fixture
def e_lattice(eisenstein):
    """[[3, pi], [-pi, 0]] over the Eisenstein integers."""
    pi = KElem(eisenstein, 0, 2)
    return standard_lattice(eisenstein, ExactMatrix([[3, pi], [-pi, 0]], eisenstein))


@pytest.fixture
def b2_lattice(gaussian):
    """[[2, 1+i], [1-i, 2]] over the Gaussian integers."""
    pi = KElem(gaussian, 2, 1)
    return standard_lattice(gaussian, ExactMatrix([[2, pi], [pi.conjugate(), 2]], gaussian))
