"""Kernels of linear and antilinear maps SV -> SV'.

A linear ``U`` has kernel ``u`` in SV_C' with ``[U phi](psi) = u(psi+ phi-)``.
On monomials this is ``u[(alpha, beta)] = [U e^beta](e^alpha)``: since
``(e^alpha)+ = e+^alpha`` and ``(e^beta)- = e-^beta`` no weights enter, and
the kernel table *is* the matrix of U in the monomial basis.

An antilinear ``U`` has kernel ``u`` in S(V (+) V)' with
``[U phi](psi) = u(phi1 psi2)``, so ``u[(alpha, beta)] = [U e^alpha](e^beta)``.

A kernel table of total degree N covers every pair with ``|alpha| + |beta| <= N``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .complexify import (
    doubled_basis,
    inject1,
    inject2,
    minus,
    minus_table,
    plus,
    plus_table,
    preferred_quadratic,
    split_index,
    star_table,
)
from .exceptions import DimensionMismatch, TruncationOverflow
from .gaussian import gaussian_table, quadratic_of
from .symalg import (
    DualTable,
    PolyVector,
    dual_annihilator,
    dual_creator,
    functional_product,
    monomial_basis,
)


@dataclass(frozen=True, eq=False)
class Kernel:
    """Kernel of a linear map SV -> SV', a table over V_C."""

    table: DualTable

    def __post_init__(self):
        if self.table.nvars % 2:
            raise DimensionMismatch("kernel table must live on an even number of variables")

    @property
    def d(self) -> int:
        return self.table.nvars // 2

    @property
    def N(self) -> int:
        return self.table.N

    def entry(self, alpha, beta) -> complex:
        return self.table[tuple(alpha) + tuple(beta)]

    def block(self, n_out: int, n_in: int) -> np.ndarray:
        """Dense matrix [alpha, beta] over |alpha| <= n_out, |beta| <= n_in."""
        return _block(self.table, n_out, n_in)

    def max_abs_diff(self, other: "Kernel") -> float:
        return self.table.max_abs_diff(other.table)


@dataclass(frozen=True, eq=False)
class AntiKernel:
    """Kernel of an antilinear map SV -> SV', a table over V (+) V."""

    table: DualTable

    def __post_init__(self):
        if self.table.nvars % 2:
            raise DimensionMismatch("kernel table must live on an even number of variables")

    @property
    def d(self) -> int:
        return self.table.nvars // 2

    @property
    def N(self) -> int:
        return self.table.N

    def entry(self, alpha, beta) -> complex:
        return self.table[tuple(alpha) + tuple(beta)]

    def block(self, n_in: int, n_out: int) -> np.ndarray:
        """Dense matrix [alpha, beta] = [U e^alpha](e^beta)."""
        return _block(self.table, n_in, n_out)

    def max_abs_diff(self, other: "AntiKernel") -> float:
        return self.table.max_abs_diff(other.table)


def _block(table: DualTable, n1: int, n2: int) -> np.ndarray:
    if n1 + n2 > table.N:
        raise TruncationOverflow(f"block {n1}+{n2} exceeds kernel degree {table.N}")
    d = table.nvars // 2
    b1 = monomial_basis(d, n1)
    b2 = monomial_basis(d, n2)
    ex = np.hstack([np.repeat(b1.exps, b2.size, axis=0), np.tile(b2.exps, (b1.size, 1))])
    idx = table.basis.locate(ex)
    return table.values[idx].reshape(b1.size, b2.size)


def _indexed_entries(table: DualTable) -> dict:
    out = {}
    for i, ab in enumerate(table.basis.exps):
        out[split_index(ab)] = complex(table.values[i])
    return out


# -- the kernel isomorphism --------------------------------------------------


def apply_kernel(u: Kernel, phi: PolyVector) -> DualTable:
    """U phi as a table, [U phi][alpha] = sum_beta phi[beta] u[(alpha, beta)].

    The result is exact up to degree ``u.N - phi.N``.
    """
    if phi.nvars != u.d:
        raise DimensionMismatch(f"kernel over d={u.d} applied to polynomial over d={phi.nvars}")
    if phi.N > u.N:
        raise TruncationOverflow(f"polynomial degree {phi.N} exceeds kernel degree {u.N}")
    n_out = u.N - phi.N
    E = u.block(n_out, phi.N)
    return DualTable(monomial_basis(u.d, n_out), E @ phi.coeffs)


def matrix_of_kernel(u: Kernel) -> dict:
    """All matrix elements {(alpha, beta): [U e^beta](e^alpha)}."""
    return _indexed_entries(u.table)


def kernel_of_matrix(entries: dict, d: int, N: int) -> Kernel:
    """Inverse of :func:`matrix_of_kernel`; missing pairs are zero."""
    b = doubled_basis(d, N)
    vals = np.zeros(b.size, dtype=complex)
    for (alpha, beta), val in entries.items():
        if len(alpha) != d or len(beta) != d:
            raise DimensionMismatch(f"index {(alpha, beta)} does not match d={d}")
        vals[b.index(tuple(alpha) + tuple(beta))] = val
    return Kernel(DualTable(b, vals))


def kernel_of_block(E: np.ndarray, d: int, n_out: int, n_in: int, N: int | None = None) -> Kernel:
    """Kernel from a dense matrix over |alpha| <= n_out, |beta| <= n_in."""
    N = n_out + n_in if N is None else N
    b1 = monomial_basis(d, n_out)
    b2 = monomial_basis(d, n_in)
    E = np.asarray(E, dtype=complex)
    if E.shape != (b1.size, b2.size):
        raise DimensionMismatch(f"block shape {E.shape} does not match ({b1.size}, {b2.size})")
    b = doubled_basis(d, N)
    vals = np.zeros(b.size, dtype=complex)
    ex = np.hstack([np.repeat(b1.exps, b2.size, axis=0), np.tile(b2.exps, (b1.size, 1))])
    keep = ex.sum(axis=1) <= N
    vals[b.locate(ex[keep])] = E.reshape(-1)[keep]
    return Kernel(DualTable(b, vals))


def adjoint_kernel(u: Kernel) -> Kernel:
    return Kernel(star_table(u.table))


# -- products with creators and annihilators ---------------------------------


def compose_creator_left(v, u: Kernel) -> Kernel:
    """Kernel of c(v) U."""
    return Kernel(dual_creator(plus(v), u.table))


def compose_annihilator_left(v, u: Kernel) -> Kernel:
    """Kernel of a(v) U; loses the top degree."""
    return Kernel(dual_annihilator(plus(v), u.table))


def compose_creator_right(u: Kernel, v) -> Kernel:
    """Kernel of U c(v); loses the top degree."""
    return Kernel(dual_annihilator(minus(v), u.table))


def compose_annihilator_right(u: Kernel, v) -> Kernel:
    """Kernel of U a(v)."""
    return Kernel(dual_creator(minus(v), u.table))


# -- examples ----------------------------------------------------------------


def identity_kernel(d: int, N: int) -> Kernel:
    return Kernel(gaussian_table(preferred_quadratic(d), N))


def number_kernel(d: int, N: int) -> Kernel:
    zeta = quadratic_of(preferred_quadratic(d), N)
    return Kernel(functional_product(zeta, identity_kernel(d, N).table))


def creator_kernel(v, N: int) -> Kernel:
    d = np.asarray(v).shape[0]
    return compose_creator_left(v, identity_kernel(d, N))


def annihilator_kernel(v, N: int) -> Kernel:
    d = np.asarray(v).shape[0]
    return compose_annihilator_right(identity_kernel(d, N), v)


def rank_one(Psi: DualTable, Phi: DualTable) -> Kernel:
    """Kernel Psi+ Phi- of the operator phi -> conj(Phi(phi)) Psi."""
    if Psi.nvars != Phi.nvars:
        raise DimensionMismatch("functionals over different spaces")
    N = min(Psi.N, Phi.N)
    return Kernel(functional_product(plus_table(Psi.truncate(N)), minus_table(Phi.truncate(N))))


# -- antilinear maps ---------------------------------------------------------


def apply_antikernel(u: AntiKernel, phi: PolyVector) -> DualTable:
    """[U phi][beta] = sum_alpha conj(phi[alpha]) u[(alpha, beta)]."""
    if phi.nvars != u.d:
        raise DimensionMismatch(f"kernel over d={u.d} applied to polynomial over d={phi.nvars}")
    if phi.N > u.N:
        raise TruncationOverflow(f"polynomial degree {phi.N} exceeds kernel degree {u.N}")
    n_out = u.N - phi.N
    E = u.block(phi.N, n_out)
    return DualTable(monomial_basis(u.d, n_out), E.T @ np.conj(phi.coeffs))


def anti_compose_creator_right(u: AntiKernel, v) -> AntiKernel:
    """Kernel of U c(v): a(v1) u. Loses the top degree."""
    return AntiKernel(dual_annihilator(inject1(v), u.table))


def anti_compose_annihilator_right(u: AntiKernel, v) -> AntiKernel:
    """Kernel of U a(v): c(v1) u."""
    return AntiKernel(dual_creator(inject1(v), u.table))


def anti_compose_creator_left(v, u: AntiKernel) -> AntiKernel:
    """Kernel of c(v) U: c(v2) u."""
    return AntiKernel(dual_creator(inject2(v), u.table))


def anti_compose_annihilator_left(v, u: AntiKernel) -> AntiKernel:
    """Kernel of a(v) U: a(v2) u. Loses the top degree."""
    return AntiKernel(dual_annihilator(inject2(v), u.table))
