"""Quadratics, Gaussian functionals e^Z and their norms.

A symmetric antilinear Z with matrix M corresponds to the quadratic with
``zeta(e_j e_k) = <e_k | Z e_j> = M[k, j]``. The Gaussian ``e^Z = sum zeta^n/n!``
is tabulated through the annihilator recursion ``a(e_j) e^Z = (Z e_j) e^Z``,
which on monomials reads

    G[alpha + delta_j] = sum_k M[k, j] * alpha_k * G[alpha - delta_k].

This is the hafnian recursion: ``G[alpha]`` is the hafnian of M with rows and
columns repeated according to alpha.
"""

from __future__ import annotations

import math

import numpy as np

from .exceptions import NormTooLarge, NotSymmetric
from .linspace import DEFAULT_TOL, SymAntilinear
from .symalg import DualTable, dual_norm_sq, functional_product, monomial_basis


def quadratic_of(Z: SymAntilinear, N: int = 2, tol: float = DEFAULT_TOL) -> DualTable:
    Z.check_symmetric(tol)
    n = Z.dim
    b = monomial_basis(n, max(N, 2))
    vals = np.zeros(b.size, dtype=complex)
    for j in range(n):
        for k in range(j, n):
            alpha = [0] * n
            alpha[j] += 1
            alpha[k] += 1
            vals[b.index(alpha)] = Z.M[k, j]
    table = DualTable(b, vals)
    return table if N >= 2 else table.truncate(N)


def z_of_quadratic(zeta: DualTable, tol: float = DEFAULT_TOL) -> SymAntilinear:
    b = zeta.basis
    if b.N < 2:
        raise ValueError("table does not reach degree 2")
    off = np.abs(zeta.values[b.degree != 2])
    if off.size and off.max() > tol:
        raise NotSymmetric("table is not concentrated in degree 2")
    n = b.nvars
    M = np.zeros((n, n), dtype=complex)
    for j in range(n):
        for k in range(j, n):
            alpha = [0] * n
            alpha[j] += 1
            alpha[k] += 1
            M[j, k] = M[k, j] = zeta[alpha]
    return SymAntilinear(M)


def degree_one_functional(w, N: int) -> DualTable:
    """The functional <.|w> restricted to degree one."""
    w = np.asarray(w, dtype=complex)
    b = monomial_basis(w.shape[0], N)
    vals = np.zeros(b.size, dtype=complex)
    if N >= 1:
        vals[b.shell(1)] = w
    return DualTable(b, vals)


def gaussian_table(Z: SymAntilinear, N: int, tol: float = DEFAULT_TOL) -> DualTable:
    """Evaluation table of e^Z on monomials up to degree N."""
    Z.check_symmetric(tol)
    M = Z.M
    b = monomial_basis(Z.dim, N)
    G = np.zeros(b.size, dtype=complex)
    G[0] = 1.0
    exps = b.exps
    for n in range(1, N + 1):
        sl = b.shell(n)
        gam = np.arange(sl.start, sl.stop)
        j = np.argmax(exps[gam] > 0, axis=1)
        a_idx = b.lower[j, gam]
        acc = np.zeros(gam.size, dtype=complex)
        for k in range(b.nvars):
            ak = exps[a_idx, k]
            ok = ak > 0
            if not ok.any():
                continue
            acc[ok] += M[k, j[ok]] * ak[ok] * G[b.lower[k, a_idx[ok]]]
        G[gam] = acc
    return DualTable(b, G)


def gaussian_series(Z: SymAntilinear, N: int) -> DualTable:
    """e^Z by summing zeta^n / n! with the functional product (slow; an oracle)."""
    zeta = quadratic_of(Z, N)
    b = zeta.basis
    term = DualTable(b, (b.degree == 0).astype(complex))
    total = term
    for n in range(1, N // 2 + 1):
        term = functional_product(term, zeta) * (1.0 / n)
        total = total + term
    return total


def _check_norm(Z: SymAntilinear) -> float:
    nz = Z.norm()
    if nz >= 1.0:
        raise NormTooLarge(f"operator norm {nz:.6g} is not below 1")
    return nz


def gaussian_norm_sq_closed(Z: SymAntilinear, tol: float = DEFAULT_TOL) -> float:
    """<e^Z|e^Z> = det(I - Z^2)^{-1/2}, where Z^2 has matrix M conj(M)."""
    Z.check_symmetric(tol)
    _check_norm(Z)
    det = np.linalg.det(np.eye(Z.dim) - Z.M @ np.conj(Z.M))
    if abs(det.imag) > tol or det.real <= 0:
        raise NotSymmetric(f"det(I - Z^2) = {det} is not real positive")
    return float(det.real ** -0.5)


def gaussian_norm_sq_series(Z: SymAntilinear, N: int) -> float:
    return dual_norm_sq(gaussian_table(Z, N))


def gaussian_norm_tail_bound(Z: SymAntilinear, N: int) -> float:
    """Upper bound on the part of <e^Z|e^Z> above degree N.

    In a Takagi basis the degree-2n contribution is the t^n coefficient of
    prod_j (1 - s_j^2 t)^{-1/2}; every coefficient grows with each s_j, so
    replacing all singular values by the largest one gives the majorant
    (1 - q t)^{-k/2}, whose tail is summed as a geometric series.
    """
    q = _check_norm(Z) ** 2
    k = Z.dim
    if q == 0.0:
        return 0.0
    n0 = N // 2 + 1
    h = k / 2.0
    log_c = n0 * math.log(q) + math.lgamma(n0 + h) - math.lgamma(h) - math.lgamma(n0 + 1)
    rho = q * max(1.0, (n0 + h) / (n0 + 1))
    if rho >= 1.0:
        return math.inf
    return math.exp(log_c) / (1.0 - rho)


def hs_norm(Z: SymAntilinear) -> float:
    return float(np.linalg.norm(Z.M, "fro"))


def quadratic_norm(zeta: DualTable) -> float:
    return math.sqrt(dual_norm_sq(zeta))
