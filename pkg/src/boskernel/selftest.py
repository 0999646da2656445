"""Seeded invariant suite behind ``boskernel selftest``."""

from __future__ import annotations

import math

import numpy as np

from . import randgen
from .complexify import minus_poly, plus_poly
from .gaussian import (
    gaussian_norm_sq_closed,
    gaussian_norm_sq_series,
    gaussian_norm_tail_bound,
    gaussian_series,
    gaussian_table,
    hs_norm,
    quadratic_norm,
    quadratic_of,
)
from .kernelcalc import Kernel, adjoint_kernel, identity_kernel, number_kernel
from .linspace import SymAntilinear, apply, compose, inner, omega
from .metaplectic import (
    anti_kernel,
    coherent_element_closed,
    coherent_element_truncated,
    coherent_tail_bound,
    field_operator,
    metaplectic_Z,
    metaplectic_kernel,
    pack,
    uniqueness_check,
    verify_anti_intertwine,
    verify_intertwine,
)
from .symalg import (
    annihilator,
    canonical_inner,
    creator,
    inner_permanent_oracle,
    monomial_basis,
    poly_product,
    product_of_vectors,
)

# uniqueness builds a dense constraint matrix; skip it above this many unknowns
_UNIQUENESS_LIMIT = 1200


def run(d: int, N: int, seed: int, tol: float = 1e-10, force_fail: bool = False) -> list[dict]:
    rng = np.random.default_rng(seed)
    results = []

    def record(name, fn, threshold):
        try:
            value = fn()
        except Exception as exc:  # noqa: BLE001 - any failure is a failed invariant
            results.append({"name": name, "pass": False, "error": f"{type(exc).__name__}: {exc}"})
            return
        if isinstance(value, bool):
            results.append({"name": name, "pass": value})
        else:
            value = float(value)
            results.append({"name": name, "residual": value, "threshold": threshold,
                            "pass": bool(value <= threshold)})

    x, y = randgen.random_vector(d, rng), randgen.random_vector(d, rng)

    record("inner_omega_relation",
           lambda: abs(inner(x, y) - (omega(x, 1j * y) + 1j * omega(x, y))), 1e-13)

    S, T = randgen.random_symplectic(d, rng), randgen.random_symplectic(d, rng)
    record("compose_apply",
           lambda: np.abs(apply(compose(S, T), x) - apply(S, apply(T, x))).max(), 1e-12)

    psi = randgen.random_poly(d, N, rng, max_degree=N - 1)
    phi = randgen.random_poly(d, N, rng, max_degree=N - 1)

    def adjointness():
        return abs(canonical_inner(psi, creator(x, phi)) - canonical_inner(annihilator(x, psi), phi))

    record("creator_annihilator_adjoint", adjointness, 1e-12)

    def ccr():
        lhs = annihilator(x, creator(y, phi)) - creator(y, annihilator(x, phi))
        return np.abs(lhs.coeffs - inner(x, y) * phi.coeffs).max()

    record("ccr_mixed", ccr, 1e-12)

    def permanent():
        n = min(N, 4)
        xs = [randgen.random_vector(d, rng) for _ in range(n)]
        ys = [randgen.random_vector(d, rng) for _ in range(n)]
        direct = canonical_inner(product_of_vectors(xs, N), product_of_vectors(ys, N))
        return abs(direct - inner_permanent_oracle(xs, ys))

    record("inner_permanent", permanent, 1e-10)

    def identity_pairing():
        u = identity_kernel(d, 2 * N)
        a = randgen.random_poly(d, N, rng)
        b = randgen.random_poly(d, N, rng)
        theta = poly_product(plus_poly(a, 2 * N), minus_poly(b, 2 * N))
        return abs(u.table(theta) - canonical_inner(a, b))

    record("identity_kernel", identity_pairing, tol)

    def number_diagonal():
        u = number_kernel(d, N)
        worst = 0.0
        for ab, val in zip(u.table.basis.exps, u.table.values):
            alpha, beta = ab[:d], ab[d:]
            want = sum(alpha) * math.prod(map(math.factorial, alpha)) if list(alpha) == list(beta) else 0
            worst = max(worst, abs(val - want))
        return worst

    record("number_kernel", number_diagonal, 1e-12)

    Zr = randgen.random_sym_antilinear(d, rng, 0.5)
    record("gaussian_recursion_vs_series",
           lambda: gaussian_table(Zr, N).max_abs_diff(gaussian_series(Zr, N)), 1e-12)
    Nn = max(N, 16)

    def gaussian_norm():
        closed = gaussian_norm_sq_closed(Zr)
        gap = abs(gaussian_norm_sq_series(Zr, Nn) - closed)
        # tail bound is exact-arithmetic; leave room for rounding in the series sum
        return gap - gaussian_norm_tail_bound(Zr, Nn) - 32 * np.finfo(float).eps * closed

    record("gaussian_norm", gaussian_norm, 0.0)
    record("hs_quadratic_norm",
           lambda: abs(hs_norm(Zr) - math.sqrt(2) * quadratic_norm(quadratic_of(Zr))), 1e-12)

    def field_ccr():
        F1, F2 = field_operator(x, N), field_operator(y, N)
        comm = F1 @ F2 - F2 @ F1
        n = monomial_basis(d, N - 2).size
        return np.abs(comm[:n, :n] - 1j * omega(x, y) * np.eye(n)).max()

    record("field_ccr", field_ccr, 1e-12)

    g = randgen.random_symplectic(d, rng, 0.6)
    p = pack(g, "symplectic", tol)
    if force_fail:
        Z = metaplectic_Z(p)
        M = np.array(Z.M)
        M[0, -1] += 1e-3
        u = Kernel(gaussian_table(SymAntilinear(M), N, tol=1.0))
        record("metaplectic_Z_symmetry", lambda: SymAntilinear(M).symmetry_residual(), tol)
    else:
        u = metaplectic_kernel(p, N)
        record("metaplectic_Z_symmetry", lambda: metaplectic_Z(p).symmetry_residual(), tol)

    record("metaplectic_intertwine", lambda: verify_intertwine(p, u), 1e-9)
    record("metaplectic_vacuum",
           lambda: np.abs(u.block(N, 0)[:, 0] - gaussian_table(p.Z_ginv, N).values).max(), 1e-10)
    record("metaplectic_adjoint",
           lambda: adjoint_kernel(u).max_abs_diff(metaplectic_kernel(pack(p.ginv), N)), 1e-10)
    if monomial_basis(2 * d, N).size <= _UNIQUENESS_LIMIT:
        record("metaplectic_uniqueness", lambda: uniqueness_check(p, N), None)

    def coherent_formula():
        # the tail bound is only trustworthy at a generous truncation; keep the kernel small
        dc, Nc = min(d, 2), 20
        pc = p if dc == d else pack(randgen.random_symplectic(dc, rng, 0.6), "symplectic", tol)
        xs, ys = randgen.random_in_ball(dc, rng), randgen.random_in_ball(dc, rng)
        diff = abs(coherent_element_closed(pc, xs, ys) - coherent_element_truncated(pc, xs, ys, Nc))
        return diff - max(1e-8, coherent_tail_bound(xs, ys, Nc))

    record("coherent_formula", coherent_formula, 0.0)

    ga = randgen.random_antisymplectic(d, rng, 0.6)
    pa = pack(ga, "antisymplectic", tol)
    record("anti_intertwine", lambda: verify_anti_intertwine(pa, anti_kernel(pa, N)), 1e-9)
    return results
