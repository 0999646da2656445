import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boskernel import randgen
from boskernel.exceptions import DimensionMismatch, TruncationOverflow
from boskernel.symalg import (
    DualTable,
    PolyVector,
    annihilator,
    canonical_inner,
    coherent,
    creator,
    creator_matrix,
    annihilator_matrix,
    dual_annihilator,
    dual_creator,
    dual_number_apply,
    embed,
    functional_product,
    inner_permanent_oracle,
    monomial_basis,
    number_apply,
    poly_product,
    product_of_vectors,
)

seeds = st.integers(0, 2**32 - 1)
E1 = [1, 0]
E2 = [0, 1]


def mono(alpha, N=6, c=1.0):
    return PolyVector.monomial(len(alpha), N, alpha, c)


def random_table(d, N, rng):
    b = monomial_basis(d, N)
    return DualTable(b, rng.normal(size=b.size) + 1j * rng.normal(size=b.size))


class TestMonomialBasis:
    def test_sizes_and_order(self):
        b = monomial_basis(3, 4)
        assert b.size == math.comb(3 + 4, 4)
        assert list(b.degree) == sorted(b.degree)
        assert b.prefix(1) == 4

    def test_index_round_trip(self):
        b = monomial_basis(2, 5)
        for i, alpha in enumerate(b.exps):
            assert b.index(alpha) == i
        assert list(b.locate(b.exps[::-1])) == list(range(b.size))[::-1]

    def test_out_of_range_index(self):
        with pytest.raises(KeyError):
            monomial_basis(2, 3).index((2, 2))

    def test_shift_tables(self):
        b = monomial_basis(2, 3)
        i = b.index((1, 0))
        assert b.upper[1, i] == b.index((1, 1))
        assert b.lower[0, i] == b.index((0, 0))
        assert b.lower[1, i] == -1
        assert b.upper[0, b.index((3, 0))] == -1


def test_canonical_inner_examples():
    assert canonical_inner(mono((2, 0)), mono((2, 0))) == 2
    assert canonical_inner(mono((1, 1)), mono((1, 1))) == 1
    assert canonical_inner(mono((0, 0)), mono((0, 0))) == 1
    assert canonical_inner(mono((1, 0)), mono((0, 1))) == 0


def test_canonical_inner_mismatch():
    with pytest.raises(DimensionMismatch):
        canonical_inner(mono((1, 0)), mono((1, 0, 0)))
    with pytest.raises(DimensionMismatch):
        canonical_inner(mono((1, 0), N=3), mono((1, 0), N=4))


def test_permanent_oracle_examples():
    assert inner_permanent_oracle([[1]], [[1j]]) == 1j
    assert inner_permanent_oracle([E1, E1], [E1, E1]) == 2
    assert inner_permanent_oracle([E1, E2], [E2, E1]) == 1
    with pytest.raises(DimensionMismatch):
        inner_permanent_oracle([E1], [E1, E2])


def test_creator_annihilator_examples():
    one = PolyVector.one(2, 4)
    assert creator(E1, one).allclose(mono((1, 0), N=4))
    assert annihilator(E1, mono((2, 0), N=4)).allclose(mono((1, 0), N=4, c=2))
    assert annihilator([1j], mono((1,), N=3)).allclose(mono((0,), N=3, c=-1j))


def test_creator_overflow_policy():
    top = mono((3, 0), N=3)
    with pytest.raises(TruncationOverflow):
        creator(E1, top)
    assert creator(E1, top, overflow="drop").allclose(PolyVector.zero(2, 3))


def test_dual_operator_examples():
    N = 5
    e1 = embed(mono((1, 0), N=N))
    one = embed(PolyVector.one(2, N))
    assert dual_annihilator(E1, e1).max_abs_diff(embed(PolyVector.one(2, N - 1))) == 0
    assert dual_creator(E1, one).max_abs_diff(e1) == 0
    assert np.abs(dual_annihilator(E1, one).values).max() == 0
    assert np.abs(dual_annihilator(E2, one).values).max() == 0


def test_embed_examples():
    assert embed(PolyVector.one(2, 3))[(0, 0)] == 1
    assert embed(mono((2, 0), N=3))[(2, 0)] == 2
    assert embed(mono((1, 0), N=3))[(0, 0)] == 0


def test_table_is_antilinear(rng):
    Phi = random_table(2, 4, rng)
    psi = randgen.random_poly(2, 4, rng)
    assert np.isclose(Phi(2j * psi), -2j * Phi(psi))


def test_functional_product_examples(rng):
    one = embed(PolyVector.one(2, 4))
    assert functional_product(one, one).max_abs_diff(one) == 0
    e1 = embed(mono((1, 0), N=4))
    assert functional_product(e1, e1)[(2, 0)] == 2
    A, B = random_table(2, 5, rng), random_table(2, 5, rng)
    assert functional_product(A, B).max_abs_diff(functional_product(B, A)) < 1e-12


def test_functional_product_binomial_oracle(rng):
    A, B = random_table(2, 5, rng), random_table(2, 5, rng)
    P = functional_product(A, B)
    b = A.basis
    for alpha in b.exps:
        want = 0j
        for beta in b.exps:
            if np.all(beta <= alpha):
                w = math.prod(math.comb(int(a), int(c)) for a, c in zip(alpha, beta))
                want += w * A[beta] * B[tuple(alpha - beta)]
        assert abs(P[alpha] - want) < 1e-10


def test_functional_product_associative(rng):
    A, B, C = (random_table(3, 4, rng) for _ in range(3))
    lhs = functional_product(functional_product(A, B), C)
    rhs = functional_product(A, functional_product(B, C))
    assert lhs.max_abs_diff(rhs) < 1e-12


def test_number_examples():
    assert number_apply(PolyVector.one(2, 4)).allclose(PolyVector.zero(2, 4))
    assert number_apply(mono((1, 1))).allclose(mono((1, 1), c=2))
    assert number_apply(mono((3, 0))).allclose(mono((3, 0), c=3))
    t = embed(mono((2, 1)))
    assert dual_number_apply(t).max_abs_diff(3 * t) == 0


def test_coherent_examples():
    assert coherent([0, 0], 5).allclose(PolyVector.one(2, 5))
    c = coherent([1], 20)
    assert abs(canonical_inner(c, c) - math.e) < 1e-12
    assert coherent([1, 2], 4)[(1, 1)] == 2


def test_poly_product_is_monomial_shift():
    p = mono((1, 0), N=4, c=2) + mono((0, 1), N=4)
    q = mono((1, 1), N=4, c=1j)
    r = poly_product(p, q)
    assert r.allclose(mono((2, 1), N=4, c=2j) + mono((1, 2), N=4, c=1j))
    with pytest.raises(TruncationOverflow):
        poly_product(mono((2, 2), N=4), mono((1, 0), N=4))


def test_matrices_match_operators(rng):
    v = randgen.random_vector(2, rng)
    N = 5
    psi = randgen.random_poly(2, N, rng, max_degree=N - 1)
    assert np.allclose(creator_matrix(v, N) @ psi.coeffs, creator(v, psi).coeffs, atol=1e-13)
    assert np.allclose(annihilator_matrix(v, N) @ psi.coeffs, annihilator(v, psi).coeffs, atol=1e-13)


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 3), st.integers(2, 7))
def test_creator_annihilator_adjoint(seed, d, N):
    rng = np.random.default_rng(seed)
    v = randgen.random_vector(d, rng)
    psi = randgen.random_poly(d, N, rng)
    phi = randgen.random_poly(d, N, rng, max_degree=N - 1)
    lhs = canonical_inner(psi, creator(v, phi))
    rhs = canonical_inner(annihilator(v, psi), phi)
    assert abs(lhs - rhs) < 1e-12 * max(1.0, abs(lhs))


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 3), st.integers(3, 7))
def test_ccr(seed, d, N):
    rng = np.random.default_rng(seed)
    x, y = randgen.random_vector(d, rng), randgen.random_vector(d, rng)
    phi = randgen.random_poly(d, N, rng, max_degree=N - 2)
    mixed = annihilator(x, creator(y, phi)) - creator(y, annihilator(x, phi))
    assert np.abs(mixed.coeffs - np.vdot(x, y) * phi.coeffs).max() < 1e-12
    aa = annihilator(x, annihilator(y, phi)) - annihilator(y, annihilator(x, phi))
    cc = creator(x, creator(y, phi)) - creator(y, creator(x, phi))
    assert np.abs(aa.coeffs).max() < 1e-12 and np.abs(cc.coeffs).max() < 1e-12


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(1, 3), st.integers(1, 5))
def test_annihilators_recover_inner_product(seed, d, n):
    rng = np.random.default_rng(seed)
    vs = [randgen.random_vector(d, rng) for _ in range(n)]
    phi = randgen.random_poly(d, n, rng)
    phi = PolyVector(phi.basis, np.where(phi.basis.degree == n, phi.coeffs, 0))
    out = phi
    for v in vs:
        out = annihilator(v, out)
    want = canonical_inner(product_of_vectors(vs, n), phi)
    assert abs(out[(0,) * d] - want) < 1e-10 * max(1.0, abs(want))


@settings(max_examples=20, deadline=None)
@given(seeds, st.integers(1, 3))
def test_creator_injective(seed, d):
    rng = np.random.default_rng(seed)
    N = 5
    C = creator_matrix(randgen.random_vector(d, rng), N)[:, : monomial_basis(d, N - 1).size]
    assert np.linalg.matrix_rank(C) == C.shape[1]


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(1, 3))
def test_embed_intertwines(seed, d):
    rng = np.random.default_rng(seed)
    N = 6
    v = randgen.random_vector(d, rng)
    phi = randgen.random_poly(d, N, rng, max_degree=N - 1)
    assert embed(creator(v, phi)).max_abs_diff(dual_creator(v, embed(phi))) < 1e-12
    lhs = embed(annihilator(v, phi)).truncate(N - 1)
    assert lhs.max_abs_diff(dual_annihilator(v, embed(phi))) < 1e-12


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(1, 6))
def test_permanent_matches_canonical_inner(seed, n):
    rng = np.random.default_rng(seed)
    d = int(rng.integers(1, 4))
    xs = [randgen.random_vector(d, rng) for _ in range(n)]
    ys = [randgen.random_vector(d, rng) for _ in range(n)]
    direct = canonical_inner(product_of_vectors(xs, n), product_of_vectors(ys, n))
    assert abs(direct - inner_permanent_oracle(xs, ys)) < 1e-10
