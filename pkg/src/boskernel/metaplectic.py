"""Metaplectic kernels for symplectic and antisymplectic automorphisms of V.

For symplectic g the weak metaplectic operator U_g has Gaussian kernel
``u_g = e^Z`` on V_C, where the antilinear Z is fixed by

    Z(v+) = (C_g^{-1} v)- + (Z_{g^-1} v)+
    Z(v-) = (C_{g^-1}^{-1} v)+ + (Z_g v)-

Matrix of Z. With the storage convention of :mod:`boskernel.complexify`, a
vector ``(a, b)`` of C^{2d} is ``a+ + (conj b)-`` and Z acts as ``M conj(.)``.
Put ``v+ = (v, 0)`` into the first rule: ``M conj(v+) = (M11 conj v, M21 conj v)``
must equal ``(Z_{g^-1} v, conj(C_g^{-1} v))``, so ``M11 = Z_{g^-1}`` (its
matrix) and ``M21 = conj(C_g^{-1})``. Put ``v- = (0, conj v)`` into the second:
``(M12 v, M22 v) = (C_{g^-1}^{-1} v, conj(Z_g conj v))`` gives
``M12 = C_{g^-1}^{-1}`` and ``M22 = conj(Z_g)``. Symmetry of M is the
statement ``C_{g^-1} = C_g^dagger``, which holds for every symplectic g.

For antisymplectic g the kernel lives on V (+) V, coordinates ``(v1, v2)``
both stored linearly, and

    Z(v1) = (Z_g v)1 + (A_{g^-1}^{-1} v)2
    Z(v2) = (A_g^{-1} v)1 + (Z_{g^-1} v)2

An antilinear map ``w -> P conj(w)`` is recorded by its matrix P, so the
blocks are ``[[Z_g, A_g^{-1}], [A_{g^-1}^{-1}, Z_{g^-1}]]`` read as matrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .complexify import inject1, inject2, minus, plus
from .exceptions import NotSymmetric, NotSymplectic, SingularMap
from .gaussian import gaussian_table
from .kernelcalc import (
    AntiKernel,
    Kernel,
    anti_compose_annihilator_left,
    anti_compose_annihilator_right,
    anti_compose_creator_left,
    anti_compose_creator_right,
    compose_annihilator_left,
    compose_annihilator_right,
    compose_creator_left,
    compose_creator_right,
)
from .linspace import (
    DEFAULT_TOL,
    RealLinearMap,
    SymAntilinear,
    basis_vector,
    compose,
    identity_residuals,
    invert,
    omega_residual,
    z_of,
)
from .symalg import annihilator_matrix, creator_matrix, monomial_basis

SYMPLECTIC = "symplectic"
ANTISYMPLECTIC = "antisymplectic"


@dataclass(frozen=True, eq=False)
class SymplecticPack:
    """A symplectic or antisymplectic g together with its derived operators."""

    g: RealLinearMap
    kind: str
    ginv: RealLinearMap
    C_g: np.ndarray
    A_g: np.ndarray
    C_g_inv: np.ndarray | None
    Z_g: SymAntilinear
    Z_ginv: SymAntilinear
    omega_residual: float
    identity_residuals: dict

    @property
    def d(self) -> int:
        return self.g.dim


def _check_kind(kind: str) -> None:
    if kind not in (SYMPLECTIC, ANTISYMPLECTIC):
        raise ValueError(f"kind must be {SYMPLECTIC!r} or {ANTISYMPLECTIC!r}, not {kind!r}")


def pack(g: RealLinearMap, kind: str = SYMPLECTIC, tol: float = DEFAULT_TOL) -> SymplecticPack:
    _check_kind(kind)
    res = omega_residual(g, +1 if kind == SYMPLECTIC else -1)
    if res > tol:
        raise NotSymplectic(f"map is not {kind}: Omega residual {res:.3e}")
    ginv = invert(g)
    Zg = z_of(g, kind, tol)
    Zi = z_of(ginv, kind, tol)
    for name, Z in (("Z_g", Zg), ("Z_{g^-1}", Zi)):
        if Z.norm() >= 1.0:
            raise NotSymplectic(f"{name} has operator norm {Z.norm():.6g} >= 1")
    if kind == SYMPLECTIC:
        ids = identity_residuals(g, tol)
        worst = max(ids.values())
        if worst > tol:
            raise NotSymplectic(f"structural identities fail (residual {worst:.3e})")
        C_inv = np.linalg.inv(g.C)
    else:
        ids = {}
        C_inv = None
    return SymplecticPack(g, kind, ginv, g.C, g.A, C_inv, Zg, Zi, res, ids)


def metaplectic_Z(p: SymplecticPack, tol: float = DEFAULT_TOL) -> SymAntilinear:
    """The symmetric antilinear Z on V_C with u_g = e^Z."""
    if p.kind != SYMPLECTIC:
        raise ValueError("metaplectic_Z needs a symplectic pack; use anti_Z")
    C_ginv_inv = np.linalg.inv(p.ginv.C)
    M = np.block([
        [p.Z_ginv.M, C_ginv_inv],
        [np.conj(p.C_g_inv), np.conj(p.Z_g.M)],
    ])
    Z = SymAntilinear(M)
    res = Z.symmetry_residual()
    if res > tol * max(1.0, np.abs(M).max()):
        raise NotSymmetric(f"metaplectic Z is not symmetric (residual {res:.3e})")
    _recheck_rules(p, Z, tol)
    return Z


def _recheck_rules(p: SymplecticPack, Z: SymAntilinear, tol: float) -> None:
    rng = np.random.default_rng(0)
    d = p.d
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    C_ginv_inv = np.linalg.inv(p.ginv.C)
    r1 = Z(plus(v)) - (minus(p.C_g_inv @ v) + plus(p.Z_ginv(v)))
    r2 = Z(minus(v)) - (plus(C_ginv_inv @ v) + minus(p.Z_g(v)))
    worst = max(np.abs(r1).max(), np.abs(r2).max())
    if worst > tol * max(1.0, np.abs(Z.M).max()) * (1 + np.abs(v).max()):
        raise NotSymmetric(f"metaplectic Z violates its defining rules (residual {worst:.3e})")


def metaplectic_kernel(p: SymplecticPack, N: int) -> Kernel:
    """Unnormalized kernel u_g = e^Z, with vacuum expectation u_g[(0, 0)] = 1."""
    return Kernel(gaussian_table(metaplectic_Z(p), N))


def shale_constant(p: SymplecticPack) -> float:
    """det(I - Z_g^2)^{1/4}, the factor that makes U_g unitary."""
    M = p.Z_g.M
    det = np.linalg.det(np.eye(p.d) - M @ np.conj(M))
    return float(det.real ** 0.25)


anti_shale_constant = shale_constant


# -- intertwining ------------------------------------------------------------


def _Av(p: SymplecticPack, v) -> np.ndarray:
    return p.A_g @ np.conj(v)


def _Cv(p: SymplecticPack, v) -> np.ndarray:
    return p.C_g @ v


def intertwine_residuals(p: SymplecticPack, u: Kernel, v) -> tuple[float, float]:
    """Kernel-level residuals of

        a(v-) u = c((C_g v)+) u + a((A_g v)+) u
        c(v-) u = c((A_g v)+) u + a((C_g v)+) u

    over all doubled indices of degree <= N - 1.
    """
    Cv, Av = _Cv(p, v), _Av(p, v)
    lhs1 = compose_creator_right(u, v).table
    rhs1 = compose_creator_left(Cv, u).table + compose_annihilator_left(Av, u).table
    lhs2 = compose_annihilator_right(u, v).table
    rhs2 = compose_creator_left(Av, u).table + compose_annihilator_left(Cv, u).table
    return lhs1.max_abs_diff(rhs1), lhs2.max_abs_diff(rhs2)


def operator_intertwine_residual(p: SymplecticPack, u: Kernel, v) -> float:
    """Residual of U c(v) = {c(C_g v) + a(A_g v)} U and U a(v) = {c(A_g v) + a(C_g v)} U.

    Computed with dense operator matrices on SV and their antiduals on SV',
    independently of the kernel-side rules.
    """
    if u.N < 2:
        return 0.0
    n_out = (u.N - 2) // 2
    n_in = u.N - 2 - n_out
    E = u.block(n_out + 1, n_in + 1)
    ro = monomial_basis(p.d, n_out).size
    ci = monomial_basis(p.d, n_in).size
    Cv, Av = _Cv(p, v), _Av(p, v)

    def dual_c(w):
        return annihilator_matrix(w, n_out + 1).conj().T

    def dual_a(w):
        return creator_matrix(w, n_out + 1).conj().T

    lhs1 = E @ creator_matrix(v, n_in + 1)
    rhs1 = (dual_c(Cv) + dual_a(Av)) @ E
    lhs2 = E @ annihilator_matrix(v, n_in + 1)
    rhs2 = (dual_c(Av) + dual_a(Cv)) @ E
    r1 = np.abs(lhs1 - rhs1)[:ro, :ci].max()
    r2 = np.abs(lhs2 - rhs2)[:ro, :ci].max()
    return float(max(r1, r2))


def verify_intertwine(p: SymplecticPack, u: Kernel, v=None) -> float:
    """Largest intertwining residual, kernel- and operator-level.

    With ``v=None`` every real basis vector e_j, i e_j is tried.
    """
    vs = _test_vectors(p.d) if v is None else [np.asarray(v, dtype=complex)]
    worst = 0.0
    for w in vs:
        worst = max(worst, *intertwine_residuals(p, u, w), operator_intertwine_residual(p, u, w))
    return float(worst)


def _test_vectors(d: int) -> list[np.ndarray]:
    es = [basis_vector(d, j) for j in range(d)]
    return es + [1j * e for e in es]


# -- coherent states ---------------------------------------------------------


def coherent_element_closed(p: SymplecticPack, x, y) -> complex:
    """<e^x | U_g e^y> in closed form (unnormalized U_g)."""
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    cross = np.vdot(p.C_g_inv @ x, y)
    left = np.vdot(x, p.Z_ginv(x))
    right = np.vdot(p.Z_g(y), y)
    return complex(np.exp(0.5 * (2 * cross + left + right)))


def coherent_element_truncated(p: SymplecticPack, x, y, N: int, u: Kernel | None = None) -> complex:
    """<e^x | U_g e^y> with both coherent vectors truncated at degree N."""
    from .symalg import coherent

    if u is None:
        u = metaplectic_kernel(p, 2 * N)
    cx, cy = coherent(x, N), coherent(y, N)
    return complex(np.vdot(cx.coeffs, u.block(N, N) @ cy.coeffs))


def coherent_tail_bound(x, y, N: int) -> float:
    """exp(|x||y|) (|x||y|)^{N+1} / (N+1)!."""
    t = float(np.linalg.norm(x) * np.linalg.norm(y))
    if t == 0.0:
        return 0.0
    return math.exp(t + (N + 1) * math.log(t) - math.lgamma(N + 2))


# -- uniqueness --------------------------------------------------------------


def _dual_creator_matrix(w, basis) -> np.ndarray:
    out = np.zeros((basis.size, basis.size), dtype=complex)
    for j in range(basis.nvars):
        if w[j] == 0:
            continue
        ok = np.nonzero(basis.lower[j] >= 0)[0]
        out[ok, basis.lower[j, ok]] += w[j] * basis.exps[ok, j]
    return out


def _dual_annihilator_matrix(w, basis) -> np.ndarray:
    n = basis.prefix(basis.N - 1)
    out = np.zeros((n, basis.size), dtype=complex)
    rows = np.arange(n)
    for j in range(basis.nvars):
        if w[j] == 0:
            continue
        out[rows, basis.upper[j, :n]] += np.conj(w[j])
    return out


def constraint_matrix(p: SymplecticPack, N: int) -> np.ndarray:
    """Linear conditions the two intertwining families impose on a kernel table."""
    basis = monomial_basis(2 * p.d, N)
    n = basis.prefix(N - 1)

    def Dc(w):
        return _dual_creator_matrix(w, basis)[:n]

    def Da(w):
        return _dual_annihilator_matrix(w, basis)

    blocks = []
    for v in _test_vectors(p.d):
        Cv, Av = _Cv(p, v), _Av(p, v)
        if p.kind == SYMPLECTIC:
            blocks.append(Da(minus(v)) - Dc(plus(Cv)) - Da(plus(Av)))
            blocks.append(Dc(minus(v)) - Dc(plus(Av)) - Da(plus(Cv)))
        else:
            blocks.append(Da(inject1(v)) - Da(inject2(Cv)) - Dc(inject2(Av)))
            blocks.append(Dc(inject1(v)) - Da(inject2(Av)) - Dc(inject2(Cv)))
    return np.vstack(blocks)


def solution_dimension(p: SymplecticPack, N: int, rtol: float = 1e-9) -> int:
    K = constraint_matrix(p, N)
    s = np.linalg.svd(K, compute_uv=False)
    rank = int(np.sum(s > rtol * s.max())) if s.size else 0
    return K.shape[1] - rank


def uniqueness_check(p: SymplecticPack, N: int, rtol: float = 1e-9) -> bool:
    """True when the kernels intertwining g up to degree N form a single line."""
    return solution_dimension(p, N, rtol) == 1


# -- field operators ---------------------------------------------------------


def field_operator(v, N: int) -> np.ndarray:
    """Matrix of (c(v) + a(v)) / sqrt(2) on degree <= N; exact below degree N."""
    return (creator_matrix(v, N) + annihilator_matrix(v, N)) / math.sqrt(2.0)


# -- scaled isometry ---------------------------------------------------------


def image_gram(u: Kernel, n: int, skip_top: int = 0) -> np.ndarray:
    """B[beta, beta'] = <U e^beta | U e^beta'> for |beta| <= n, from kernel columns.

    The sum runs over |alpha| <= u.N - n - skip_top.
    """
    n_out = u.N - n - skip_top
    E = u.block(n_out, n)
    w = 1.0 / monomial_basis(u.d, n_out).factorial
    return E.conj().T @ (w[:, None] * E)


def anti_image_gram(u: AntiKernel, n: int, skip_top: int = 0) -> np.ndarray:
    """B[alpha, alpha'] = <U e^alpha | U e^alpha'> for the antilinear U."""
    n_out = u.N - n - skip_top
    E = u.block(n, n_out)
    w = 1.0 / monomial_basis(u.d, n_out).factorial
    return E.conj() @ (w[:, None] * E.T)


def _orthonormal_deviation(B: np.ndarray, scale: float, d: int, n: int) -> float:
    s = 1.0 / np.sqrt(monomial_basis(d, n).factorial)
    D = scale * (s[:, None] * B * s[None, :]) - np.eye(B.shape[0])
    return float(np.abs(D).max())


def isometry_report(p: SymplecticPack, u: Kernel | AntiKernel, n: int) -> dict:
    """Compare the image Gram matrix on degree <= n with a multiple of the canonical one.

    Deviations are measured in the orthonormal basis e^alpha / sqrt(alpha!).
    ``tail`` is the change caused by the last two alpha-shells included, an
    estimate of the truncation error.
    """
    gram_fn = image_gram if isinstance(u, Kernel) else anti_image_gram
    B = gram_fn(u, n)
    B_short = gram_fn(u, n, skip_top=2)
    c = shale_constant(p) ** 2
    s = 1.0 / np.sqrt(monomial_basis(p.d, n).factorial)
    tail = float(np.abs(s[:, None] * (B - B_short) * s[None, :]).max() * c)
    b11 = B[0, 0].real
    return {
        "closed_scale": 1.0 / c,
        "vacuum_norm_sq": b11,
        "shale_deviation": _orthonormal_deviation(B, c, p.d, n),
        "form_deviation": _orthonormal_deviation(B, 1.0 / b11, p.d, n),
        "tail": tail,
    }


# -- antisymplectic ----------------------------------------------------------


def anti_Z(p: SymplecticPack, tol: float = DEFAULT_TOL) -> SymAntilinear:
    """The symmetric antilinear Z on V (+) V with anti-kernel e^Z."""
    if p.kind != ANTISYMPLECTIC:
        raise ValueError("anti_Z needs an antisymplectic pack")
    Ag_inv = _antilinear_inverse(p.A_g)
    Aginv_inv = _antilinear_inverse(p.ginv.A)
    M = np.block([[p.Z_g.M, Ag_inv], [Aginv_inv, p.Z_ginv.M]])
    Z = SymAntilinear(M)
    res = Z.symmetry_residual()
    if res > tol * max(1.0, np.abs(M).max()):
        raise NotSymmetric(f"antisymplectic Z is not symmetric (residual {res:.3e})")
    rng = np.random.default_rng(0)
    v = rng.normal(size=p.d) + 1j * rng.normal(size=p.d)
    r1 = Z(inject1(v)) - (inject1(p.Z_g(v)) + inject2(Aginv_inv @ np.conj(v)))
    r2 = Z(inject2(v)) - (inject1(Ag_inv @ np.conj(v)) + inject2(p.Z_ginv(v)))
    worst = max(np.abs(r1).max(), np.abs(r2).max())
    if worst > tol * max(1.0, np.abs(M).max()) * (1 + np.abs(v).max()):
        raise NotSymmetric(f"antisymplectic Z violates its defining rules (residual {worst:.3e})")
    return Z


def _antilinear_inverse(A: np.ndarray) -> np.ndarray:
    """Matrix of the inverse of w -> A conj(w), which is w -> conj(A^{-1}) conj(w)."""
    if np.linalg.cond(A) > 1e12:
        raise SingularMap("antilinear part is not invertible")
    return np.conj(np.linalg.inv(A))


def anti_kernel(p: SymplecticPack, N: int) -> AntiKernel:
    return AntiKernel(gaussian_table(anti_Z(p), N))


def anti_intertwine_residuals(p: SymplecticPack, u: AntiKernel, v) -> tuple[float, float]:
    """Residuals of U c(v) = {a(C_g v) + c(A_g v)} U and U a(v) = {a(A_g v) + c(C_g v)} U."""
    Cv, Av = _Cv(p, v), _Av(p, v)
    lhs1 = anti_compose_creator_right(u, v).table
    rhs1 = anti_compose_annihilator_left(Cv, u).table + anti_compose_creator_left(Av, u).table
    lhs2 = anti_compose_annihilator_right(u, v).table
    rhs2 = anti_compose_annihilator_left(Av, u).table + anti_compose_creator_left(Cv, u).table
    return lhs1.max_abs_diff(rhs1), lhs2.max_abs_diff(rhs2)


def verify_anti_intertwine(p: SymplecticPack, u: AntiKernel, v=None) -> float:
    vs = _test_vectors(p.d) if v is None else [np.asarray(v, dtype=complex)]
    return float(max(max(anti_intertwine_residuals(p, u, w)) for w in vs))


def compose_maps(*maps: RealLinearMap) -> RealLinearMap:
    out = maps[0]
    for m in maps[1:]:
        out = compose(out, m)
    return out
