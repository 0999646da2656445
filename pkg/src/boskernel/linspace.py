"""The one-particle space V = C^d.

Vectors are plain complex numpy arrays in a fixed orthonormal basis. A
real-linear operator is stored as a pair ``(C, A)`` acting by
``v -> C v + A conj(v)``; an antilinear operator is the special case ``C = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import DimensionMismatch, NotSymmetric, SingularMap

DEFAULT_TOL = 1e-10


def as_vector(x) -> np.ndarray:
    v = np.asarray(x, dtype=complex)
    if v.ndim != 1 or v.size == 0:
        raise DimensionMismatch(f"expected a non-empty 1-d vector, got shape {v.shape}")
    return v


def _same_dim(x: np.ndarray, y: np.ndarray) -> None:
    if x.shape != y.shape:
        raise DimensionMismatch(f"dimension mismatch: {x.shape} vs {y.shape}")


def inner(x, y) -> complex:
    """Inner product, antilinear in the first slot."""
    x, y = as_vector(x), as_vector(y)
    _same_dim(x, y)
    return complex(np.vdot(x, y))


def omega(x, y) -> float:
    """Symplectic form Im<x|y>."""
    return inner(x, y).imag


def basis_vector(d: int, j: int) -> np.ndarray:
    e = np.zeros(d, dtype=complex)
    e[j] = 1.0
    return e


def real_basis(d: int) -> list[np.ndarray]:
    """The 2d real basis e_1..e_d, i e_1..i e_d."""
    es = [basis_vector(d, j) for j in range(d)]
    return es + [1j * e for e in es]


@dataclass(frozen=True, eq=False)
class RealLinearMap:
    C: np.ndarray
    A: np.ndarray

    def __post_init__(self):
        C = np.array(self.C, dtype=complex)
        A = np.array(self.A, dtype=complex)
        if C.ndim != 2 or C.shape[0] != C.shape[1] or C.shape != A.shape:
            raise DimensionMismatch(f"bad block shapes {C.shape}, {A.shape}")
        C.setflags(write=False)
        A.setflags(write=False)
        object.__setattr__(self, "C", C)
        object.__setattr__(self, "A", A)

    @property
    def dim(self) -> int:
        return self.C.shape[0]

    @classmethod
    def identity(cls, d: int) -> "RealLinearMap":
        return cls(np.eye(d), np.zeros((d, d)))

    @classmethod
    def conjugation(cls, d: int) -> "RealLinearMap":
        return cls(np.zeros((d, d)), np.eye(d))

    @classmethod
    def linear(cls, C) -> "RealLinearMap":
        C = np.asarray(C, dtype=complex)
        return cls(C, np.zeros_like(C))

    @classmethod
    def antilinear(cls, A) -> "RealLinearMap":
        A = np.asarray(A, dtype=complex)
        return cls(np.zeros_like(A), A)

    @classmethod
    def squeeze(cls, r) -> "RealLinearMap":
        """Diagonal squeeze v -> cosh(r) v + sinh(r) conj(v), one rate per mode."""
        r = np.atleast_1d(np.asarray(r, dtype=float))
        return cls(np.diag(np.cosh(r)), np.diag(np.sinh(r)))

    def __call__(self, v) -> np.ndarray:
        return apply(self, v)

    def realify(self) -> np.ndarray:
        """Real 2d x 2d matrix acting on (Re v, Im v)."""
        Cr, Ci = self.C.real, self.C.imag
        Ar, Ai = self.A.real, self.A.imag
        return np.block([[Cr + Ar, Ai - Ci], [Ci + Ai, Cr - Ar]])

    @classmethod
    def from_real(cls, R) -> "RealLinearMap":
        R = np.asarray(R, dtype=float)
        d = R.shape[0] // 2
        P, Q = R[:d, :d], R[:d, d:]
        S, T = R[d:, :d], R[d:, d:]
        return cls(0.5 * ((P + T) + 1j * (S - Q)), 0.5 * ((P - T) + 1j * (S + Q)))

    def close_to(self, other: "RealLinearMap", tol: float = DEFAULT_TOL) -> bool:
        return bool(
            np.max(np.abs(self.C - other.C), initial=0.0) <= tol
            and np.max(np.abs(self.A - other.A), initial=0.0) <= tol
        )


def apply(T: RealLinearMap, v) -> np.ndarray:
    v = as_vector(v)
    if v.shape[0] != T.dim:
        raise DimensionMismatch(f"map of dim {T.dim} applied to vector of dim {v.shape[0]}")
    return T.C @ v + T.A @ np.conj(v)


def compose(S: RealLinearMap, T: RealLinearMap) -> RealLinearMap:
    """The map v -> S(T(v))."""
    if S.dim != T.dim:
        raise DimensionMismatch(f"cannot compose maps of dims {S.dim} and {T.dim}")
    return RealLinearMap(
        S.C @ T.C + S.A @ np.conj(T.A),
        S.C @ T.A + S.A @ np.conj(T.C),
    )


def invert(T: RealLinearMap) -> RealLinearMap:
    R = T.realify()
    if np.linalg.cond(R) > 1e12:
        raise SingularMap("real-linear map is singular")
    return RealLinearMap.from_real(np.linalg.inv(R))


def _omega_matrix(d: int) -> np.ndarray:
    # Omega(x, y) = u^T W w in (Re, Im) coordinates
    I = np.eye(d)
    Z = np.zeros((d, d))
    return np.block([[Z, I], [-I, Z]])


def omega_residual(g: RealLinearMap, sign: int = 1) -> float:
    """max |Omega(g e_a, g e_b) - sign * Omega(e_a, e_b)| over the real basis."""
    R = g.realify()
    W = _omega_matrix(g.dim)
    return float(np.max(np.abs(R.T @ W @ R - sign * W)))


def is_symplectic(g: RealLinearMap, tol: float = DEFAULT_TOL) -> bool:
    return omega_residual(g, +1) <= tol


def is_antisymplectic(g: RealLinearMap, tol: float = DEFAULT_TOL) -> bool:
    return omega_residual(g, -1) <= tol


@dataclass(frozen=True, eq=False)
class SymAntilinear:
    """Antilinear operator v -> M conj(v) with M symmetric."""

    M: np.ndarray

    def __post_init__(self):
        M = np.array(self.M, dtype=complex)
        if M.ndim == 0:
            M = M.reshape(1, 1)
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise DimensionMismatch(f"expected a square matrix, got {M.shape}")
        M.setflags(write=False)
        object.__setattr__(self, "M", M)

    @property
    def dim(self) -> int:
        return self.M.shape[0]

    @classmethod
    def zero(cls, n: int) -> "SymAntilinear":
        return cls(np.zeros((n, n)))

    def __call__(self, v) -> np.ndarray:
        v = as_vector(v)
        if v.shape[0] != self.dim:
            raise DimensionMismatch(f"operator of dim {self.dim} applied to dim {v.shape[0]}")
        return self.M @ np.conj(v)

    def symmetry_residual(self) -> float:
        return float(np.max(np.abs(self.M - self.M.T), initial=0.0))

    def check_symmetric(self, tol: float = DEFAULT_TOL) -> "SymAntilinear":
        res = self.symmetry_residual()
        if res > tol:
            raise NotSymmetric(f"antilinear operator is not symmetric (residual {res:.3e})")
        return self

    def norm(self) -> float:
        """Operator norm, the largest singular value of M."""
        return float(np.linalg.norm(self.M, 2))

    def as_map(self) -> RealLinearMap:
        return RealLinearMap.antilinear(self.M)


def split(g: RealLinearMap) -> tuple[np.ndarray, np.ndarray]:
    """Complex-linear and antilinear parts (g - JgJ)/2 and (g + JgJ)/2 as matrices."""
    return g.C, g.A


def _linear_inverse(C: np.ndarray, what: str) -> np.ndarray:
    if np.linalg.cond(C) > 1e12:
        raise SingularMap(f"{what} is not invertible")
    return np.linalg.inv(C)


def z_of(g: RealLinearMap, kind: str = "symplectic", tol: float = DEFAULT_TOL) -> SymAntilinear:
    """Z_g = C_g^{-1} A_g for symplectic g, A_g^{-1} C_g for antisymplectic g.

    Raises NotSymmetric if the ratio is not symmetric, which happens exactly
    when g does not have the stated kind.
    """
    if kind == "symplectic":
        M = _linear_inverse(g.C, "complex-linear part C_g") @ g.A
    elif kind == "antisymplectic":
        # A_g^{-1} is antilinear with matrix conj(A^{-1})
        M = np.conj(_linear_inverse(g.A, "antilinear part A_g") @ g.C)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return SymAntilinear(M).check_symmetric(tol)


def identity_residuals(g: RealLinearMap, tol: float = DEFAULT_TOL) -> dict[str, float]:
    """Residuals of the two structural identities for symplectic g.

    ``C_{g^-1}^{-1} = Z_{g^-1} A_g + C_g`` and ``Z_{g^-1} C_g = -C_g Z_g``.
    """
    ginv = invert(g)
    Zg = z_of(g, "symplectic", tol)
    Zi = z_of(ginv, "symplectic", tol)
    lhs1 = _linear_inverse(ginv.C, "C_{g^-1}")
    rhs1 = compose(Zi.as_map(), RealLinearMap.antilinear(g.A))
    res1 = max(
        float(np.max(np.abs(lhs1 - rhs1.C - g.C))),
        float(np.max(np.abs(rhs1.A))),
    )
    left = compose(Zi.as_map(), RealLinearMap.linear(g.C))
    right = compose(RealLinearMap.linear(g.C), Zg.as_map())
    res2 = float(np.max(np.abs(left.A + right.A)))
    return {"inverse_identity": res1, "anticommute_identity": res2}
