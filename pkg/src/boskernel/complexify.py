"""The complexification V_C = V+ (+) V- and the doubled space V (+) V.

Both are realized as C^{2d}. In V_C the first d coordinates are the V+ block
and the last d the V- block, with orthonormal basis ``e+_j = plus(e_j)`` and
``e-_j = minus(e_j)``. Since ``v -> v-`` is antilinear, ``minus(v)`` stores
``conj(v)``; with that choice a vector ``(a, b)`` of C^{2d} is
``a+ + (conj b)-``, the canonical conjugation is ``(a, b) -> (conj b, conj a)``
and every Gram matrix in sight is the identity.

A monomial over 2d variables with exponent ``(alpha, beta)`` is
``e+^alpha e-^beta`` (or ``e1^alpha e2^beta`` in S(V (+) V)).
"""

from __future__ import annotations

import numpy as np

from .exceptions import DimensionMismatch
from .linspace import SymAntilinear, as_vector
from .symalg import DualTable, MonomialBasis, PolyVector, monomial_basis


def plus(v) -> np.ndarray:
    v = as_vector(v)
    return np.concatenate([v, np.zeros_like(v)])


def minus(v) -> np.ndarray:
    v = as_vector(v)
    return np.concatenate([np.zeros_like(v), np.conj(v)])


def inject1(v) -> np.ndarray:
    v = as_vector(v)
    return np.concatenate([v, np.zeros_like(v)])


def inject2(v) -> np.ndarray:
    v = as_vector(v)
    return np.concatenate([np.zeros_like(v), v])


def conj_vector(w) -> np.ndarray:
    """Canonical conjugation on V_C; swaps the blocks."""
    w = as_vector(w)
    d = _half(w.shape[0])
    return np.conj(np.concatenate([w[d:], w[:d]]))


def _half(n: int) -> int:
    if n % 2:
        raise DimensionMismatch(f"doubled space must have even dimension, got {n}")
    return n // 2


def split_index(alpha_beta) -> tuple[tuple[int, ...], tuple[int, ...]]:
    ab = tuple(int(a) for a in alpha_beta)
    d = _half(len(ab))
    return ab[:d], ab[d:]


def doubled_basis(d: int, N: int) -> MonomialBasis:
    return monomial_basis(2 * d, N)


def doubled_index(basis: MonomialBasis, alpha, beta) -> int:
    return basis.index(tuple(alpha) + tuple(beta))


def _lift(psi: PolyVector, N: int | None, second: bool) -> tuple[MonomialBasis, np.ndarray]:
    d = psi.nvars
    N = psi.N if N is None else N
    if N < psi.N:
        psi = psi.retruncate(N)
    big = doubled_basis(d, N)
    small = psi.basis
    zeros = np.zeros_like(small.exps)
    exps = np.hstack([zeros, small.exps] if second else [small.exps, zeros])
    out = np.zeros(big.size, dtype=complex)
    out[big.locate(exps)] = psi.coeffs
    return big, out


def plus_poly(psi: PolyVector, N: int | None = None) -> PolyVector:
    """Linear algebra isomorphism SV -> S(V+), e^alpha -> e+^alpha."""
    b, c = _lift(psi, N, second=False)
    return PolyVector(b, c)


def minus_poly(psi: PolyVector, N: int | None = None) -> PolyVector:
    """Antilinear algebra isomorphism SV -> S(V-), conjugating coefficients."""
    b, c = _lift(psi, N, second=True)
    return PolyVector(b, np.conj(c))


def inject1_poly(psi: PolyVector, N: int | None = None) -> PolyVector:
    b, c = _lift(psi, N, second=False)
    return PolyVector(b, c)


def inject2_poly(psi: PolyVector, N: int | None = None) -> PolyVector:
    b, c = _lift(psi, N, second=True)
    return PolyVector(b, c)


def plus_table(Phi: DualTable, N: int | None = None) -> DualTable:
    """Phi+ on SV_C: Phi[alpha] at (alpha, 0), zero elsewhere."""
    b, c = _lift(PolyVector(Phi.basis, Phi.values), N, second=False)
    return DualTable(b, c)


def minus_table(Phi: DualTable, N: int | None = None) -> DualTable:
    """Phi- on SV_C: conj(Phi[beta]) at (0, beta), zero elsewhere."""
    b, c = _lift(PolyVector(Phi.basis, Phi.values), N, second=True)
    return DualTable(b, np.conj(c))


def swap_permutation(basis: MonomialBasis) -> np.ndarray:
    """Index of (beta, alpha) for every (alpha, beta)."""
    d = _half(basis.nvars)
    swapped = np.hstack([basis.exps[:, d:], basis.exps[:, :d]])
    return basis.locate(swapped)


def conj_star(theta: PolyVector) -> PolyVector:
    """Involution e+^alpha e-^beta -> e+^beta e-^alpha, conjugating coefficients."""
    perm = swap_permutation(theta.basis)
    out = np.empty_like(theta.coeffs)
    out[perm] = np.conj(theta.coeffs)
    return PolyVector(theta.basis, out)


def star_table(u: DualTable) -> DualTable:
    """u*(theta) = conj(u(theta*)), i.e. u*[(alpha, beta)] = conj(u[(beta, alpha)])."""
    perm = swap_permutation(u.basis)
    return DualTable(u.basis, np.conj(u.values[perm]))


def preferred_quadratic(d: int) -> SymAntilinear:
    """Canonical conjugation of V_C as a symmetric antilinear operator: block swap."""
    I = np.eye(d)
    Z = np.zeros((d, d))
    return SymAntilinear(np.block([[Z, I], [I, Z]]))
