"""Seeded random inputs for tests and the self-test command.

Symplectic maps are drawn as ``U1 . S(r) . U2`` with U1, U2 Haar unitaries and
S(r) a diagonal squeeze. Every symplectic map of C^d factors this way, and
``Z_g`` then has singular values ``tanh r_j``, so the rates are picked to
respect a requested bound on ``||Z_g||``.
"""

import numpy as np
from scipy.stats import unitary_group

from .linspace import RealLinearMap, SymAntilinear, compose
from .symalg import PolyVector, monomial_basis


def rng_of(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_vector(d, rng, scale=1.0):
    rng = rng_of(rng)
    return scale * (rng.normal(size=d) + 1j * rng.normal(size=d)) / np.sqrt(2)


def random_in_ball(d, rng, radius=1.0):
    """Uniform sample from the complex ball of the given radius."""
    rng = rng_of(rng)
    v = random_vector(d, rng)
    r = radius * rng.uniform() ** (1.0 / (2 * d))
    return r * v / np.linalg.norm(v)


def random_unitary(d, rng):
    rng = rng_of(rng)
    if d == 1:
        return np.exp(2j * np.pi * rng.uniform()) * np.ones((1, 1))
    return unitary_group.rvs(d, random_state=rng)


def random_symmetric(n, rng, norm=None):
    """Complex symmetric matrix; rescaled to the given spectral norm if requested."""
    rng = rng_of(rng)
    M = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    M = M + M.T
    if norm is not None:
        M *= norm / np.linalg.norm(M, 2)
    return M


def random_sym_antilinear(n, rng, max_norm=0.5):
    """Symmetric antilinear Z with ||Z|| drawn uniformly from [0, max_norm]."""
    rng = rng_of(rng)
    return SymAntilinear(random_symmetric(n, rng, norm=max_norm * rng.uniform()))


def random_symplectic(d, rng, max_z=0.6):
    """Random symplectic g with ||Z_g|| <= max_z."""
    rng = rng_of(rng)
    r = np.arctanh(max_z * rng.uniform(size=d))
    U1 = RealLinearMap.linear(random_unitary(d, rng))
    U2 = RealLinearMap.linear(random_unitary(d, rng))
    return compose(U1, compose(RealLinearMap.squeeze(r), U2))


def random_antisymplectic(d, rng, max_z=0.6):
    """Conjugation composed with a random symplectic."""
    return compose(RealLinearMap.conjugation(d), random_symplectic(d, rng, max_z))


def random_poly(d, N, rng, max_degree=None):
    """Random polynomial with coefficients of size ~ 1/sqrt(alpha!)."""
    rng = rng_of(rng)
    b = monomial_basis(d, N)
    c = (rng.normal(size=b.size) + 1j * rng.normal(size=b.size)) / np.sqrt(b.factorial)
    if max_degree is not None:
        c[b.degree > max_degree] = 0
    return PolyVector(b, c)
