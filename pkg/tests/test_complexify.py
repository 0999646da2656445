import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from boskernel import randgen
from boskernel.complexify import (
    conj_star,
    conj_vector,
    doubled_basis,
    inject1,
    inject1_poly,
    inject2,
    inject2_poly,
    minus,
    minus_poly,
    plus,
    plus_poly,
    preferred_quadratic,
    star_table,
)
from boskernel.gaussian import gaussian_table, quadratic_of
from boskernel.linspace import inner
from boskernel.symalg import DualTable, PolyVector, canonical_inner, poly_product

seeds = st.integers(0, 2**32 - 1)


def test_plus_of_basis_vector():
    assert np.array_equal(plus([1, 0]), [1, 0, 0, 0])
    assert np.array_equal(minus([1j, 0]), [0, 0, -1j, 0])


def test_plus_minus_inner_products(rng):
    x, y = randgen.random_vector(3, rng), randgen.random_vector(3, rng)
    assert abs(inner(plus(x), plus(y)) - inner(x, y)) < 1e-14
    assert abs(inner(minus(x), minus(y)) - np.conj(inner(x, y))) < 1e-14
    assert inner(plus(x), minus(y)) == 0


def test_conjugation_swaps_blocks(rng):
    v = randgen.random_vector(2, rng)
    assert np.allclose(conj_vector(plus(v)), minus(v))
    assert np.allclose(conj_vector(conj_vector(plus(v) + minus(2 * v))), plus(v) + minus(2 * v))


def test_poly_lifts_examples():
    one = PolyVector.one(2, 3)
    assert plus_poly(one).allclose(PolyVector.one(4, 3))
    got = minus_poly(PolyVector.monomial(2, 3, (1, 0), 1j))
    assert got.allclose(PolyVector.monomial(4, 3, (0, 0, 1, 0), -1j))
    assert inject1_poly(one).allclose(PolyVector.one(4, 3))


def test_inject_product_and_orthogonality(rng):
    e1 = PolyVector.monomial(1, 2, (1,))
    prod = poly_product(inject1_poly(e1), inject2_poly(e1))
    assert prod.allclose(PolyVector.monomial(2, 2, (1, 1)))
    x, y = randgen.random_vector(2, rng), randgen.random_vector(2, rng)
    assert inner(inject1(x), inject2(y)) == 0


def test_star_table_examples(rng):
    b = doubled_basis(2, 4)
    u = DualTable(b, rng.normal(size=b.size) + 1j * rng.normal(size=b.size))
    assert star_table(star_table(u)).max_abs_diff(u) == 0
    single = DualTable.from_dict(4, 4, {(1, 0, 0, 2): 2 + 1j})
    assert star_table(single)[(0, 2, 1, 0)] == 2 - 1j
    G = gaussian_table(preferred_quadratic(2), 6)
    assert star_table(G).max_abs_diff(G) == 0


def test_preferred_quadratic(rng):
    Z = preferred_quadratic(2)
    assert np.array_equal(Z.M, Z.M.T)
    v = randgen.random_vector(2, rng)
    assert np.allclose(Z(plus(v)), minus(v))
    x, y = randgen.random_vector(2, rng), randgen.random_vector(2, rng)
    xp = plus_poly(PolyVector(PolyVector.zero(2, 1).basis, np.r_[0, x]), 2)
    ym = minus_poly(PolyVector(PolyVector.zero(2, 1).basis, np.r_[0, y]), 2)
    zeta = quadratic_of(Z)
    assert abs(zeta(poly_product(xp, ym)) - inner(x, y)) < 1e-14


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(1, 3), st.integers(0, 6))
def test_lifts_are_isometric(seed, d, N):
    rng = np.random.default_rng(seed)
    psi, phi = randgen.random_poly(d, N, rng), randgen.random_poly(d, N, rng)
    ref = canonical_inner(psi, phi)
    assert abs(canonical_inner(plus_poly(psi), plus_poly(phi)) - ref) < 1e-12
    assert abs(canonical_inner(minus_poly(psi), minus_poly(phi)) - np.conj(ref)) < 1e-12
    assert abs(canonical_inner(inject2_poly(psi), inject2_poly(phi)) - ref) < 1e-12


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(1, 2))
def test_conj_star_is_antilinear_algebra_involution(seed, d):
    rng = np.random.default_rng(seed)
    N = 6
    b = doubled_basis(d, N)

    def rand_low():
        c = rng.normal(size=b.size) + 1j * rng.normal(size=b.size)
        return PolyVector(b, np.where(b.degree <= N // 2, c, 0))

    s, t = rand_low(), rand_low()
    assert conj_star(conj_star(s)).allclose(s)
    assert conj_star(1j * s).allclose(-1j * conj_star(s))
    assert conj_star(poly_product(s, t)).allclose(poly_product(conj_star(s), conj_star(t)), 1e-12)
