"""Truncated symmetric algebra SV and its full antidual.

Everything lives on a :class:`MonomialBasis`: the monomials ``e^alpha`` with
``|alpha| <= N`` in graded-lexicographic order. A :class:`PolyVector` holds
the coefficients of a polynomial in that basis; a :class:`DualTable` holds the
values ``Phi(e^alpha)`` of an antilinear functional. Because the order is
graded, the basis for truncation ``N - 1`` is a prefix of the basis for ``N``.

The canonical inner product is diagonal on monomials:
``<e^alpha | e^beta> = delta * alpha!``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .exceptions import DimensionMismatch, TruncationOverflow
from .linspace import as_vector

# workspace truncation cap; kernel tables run to twice that
MAX_TRUNCATION = 30
MAX_TABLE_DEGREE = 2 * MAX_TRUNCATION


def _exponents_of_degree(nvars: int, n: int) -> list[tuple[int, ...]]:
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), n):
        alpha = [0] * nvars
        for j in combo:
            alpha[j] += 1
        out.append(tuple(alpha))
    # combinations come out lexicographically in the variable labels, which is
    # reverse-lex in the exponents: (2,0), (1,1), (0,2)
    return out


class MonomialBasis:
    """Monomials in ``nvars`` variables up to total degree ``N``.

    Use :func:`monomial_basis` to get a cached instance.
    """

    def __init__(self, nvars: int, N: int):
        if nvars < 1:
            raise ValueError("need at least one variable")
        if not 0 <= N <= MAX_TABLE_DEGREE:
            raise ValueError(f"table degree must be in [0, {MAX_TABLE_DEGREE}], got {N}")
        self.nvars = nvars
        self.N = N
        exps = []
        offsets = [0]
        for n in range(N + 1):
            shell = _exponents_of_degree(nvars, n)
            exps.extend(shell)
            offsets.append(offsets[-1] + len(shell))
        self.exps = np.array(exps, dtype=np.int64).reshape(-1, nvars)
        self.exps.setflags(write=False)
        self.offsets = np.array(offsets, dtype=np.int64)
        self.degree = self.exps.sum(axis=1)
        self.size = self.exps.shape[0]

        self._radix = (N + 1) ** np.arange(nvars, dtype=np.int64)
        keys = self.exps @ self._radix
        self._order = np.argsort(keys, kind="stable")
        self._sorted_keys = keys[self._order]

        fact = np.array([float(math.factorial(k)) for k in range(N + 1)])
        self.factorial = np.prod(fact[self.exps], axis=1)

        lower = np.full((nvars, self.size), -1, dtype=np.int64)
        upper = np.full((nvars, self.size), -1, dtype=np.int64)
        for j in range(nvars):
            delta = np.zeros(nvars, dtype=np.int64)
            delta[j] = 1
            ok = self.exps[:, j] > 0
            lower[j, ok] = self.locate(self.exps[ok] - delta)
            ok = self.degree < N
            upper[j, ok] = self.locate(self.exps[ok] + delta)
        self.lower = lower
        self.upper = upper

    def __repr__(self) -> str:
        return f"MonomialBasis(nvars={self.nvars}, N={self.N}, size={self.size})"

    def shell(self, n: int) -> slice:
        return slice(int(self.offsets[n]), int(self.offsets[n + 1]))

    def prefix(self, n: int) -> int:
        """Number of monomials of degree <= n."""
        return int(self.offsets[min(n, self.N) + 1])

    def locate(self, alphas) -> np.ndarray:
        """Flat indices of an array of exponent rows (all must be in range)."""
        alphas = np.asarray(alphas, dtype=np.int64).reshape(-1, self.nvars)
        if alphas.size and (alphas.min() < 0 or alphas.sum(axis=1).max() > self.N):
            raise KeyError("multi-index outside the truncated basis")
        keys = alphas @ self._radix
        pos = np.searchsorted(self._sorted_keys, keys)
        return self._order[pos]

    def index(self, alpha) -> int:
        alpha = tuple(int(a) for a in alpha)
        if len(alpha) != self.nvars:
            raise DimensionMismatch(f"multi-index {alpha} has wrong length for {self.nvars} variables")
        return int(self.locate([alpha])[0])

    def restrict(self, N: int) -> "MonomialBasis":
        return monomial_basis(self.nvars, N)


@lru_cache(maxsize=64)
def monomial_basis(nvars: int, N: int) -> MonomialBasis:
    return MonomialBasis(nvars, N)


def _frozen(arr) -> np.ndarray:
    a = np.array(arr, dtype=complex)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class PolyVector:
    """A polynomial sum_alpha coeffs[alpha] e^alpha in truncated SV."""

    basis: MonomialBasis
    coeffs: np.ndarray

    def __post_init__(self):
        c = _frozen(self.coeffs)
        if c.shape != (self.basis.size,):
            raise DimensionMismatch(f"coefficient array {c.shape} does not match {self.basis}")
        object.__setattr__(self, "coeffs", c)

    @property
    def N(self) -> int:
        return self.basis.N

    @property
    def nvars(self) -> int:
        return self.basis.nvars

    @classmethod
    def zero(cls, nvars: int, N: int) -> "PolyVector":
        b = monomial_basis(nvars, N)
        return cls(b, np.zeros(b.size))

    @classmethod
    def one(cls, nvars: int, N: int) -> "PolyVector":
        return cls.monomial(nvars, N, (0,) * nvars)

    @classmethod
    def monomial(cls, nvars: int, N: int, alpha, coeff: complex = 1.0) -> "PolyVector":
        b = monomial_basis(nvars, N)
        c = np.zeros(b.size, dtype=complex)
        c[b.index(alpha)] = coeff
        return cls(b, c)

    @classmethod
    def from_dict(cls, nvars: int, N: int, terms: dict) -> "PolyVector":
        b = monomial_basis(nvars, N)
        c = np.zeros(b.size, dtype=complex)
        for alpha, val in terms.items():
            c[b.index(alpha)] += val
        return cls(b, c)

    def __getitem__(self, alpha) -> complex:
        return complex(self.coeffs[self.basis.index(alpha)])

    def __add__(self, other: "PolyVector") -> "PolyVector":
        _check_compatible(self.basis, other.basis)
        return PolyVector(self.basis, self.coeffs + other.coeffs)

    def __sub__(self, other: "PolyVector") -> "PolyVector":
        _check_compatible(self.basis, other.basis)
        return PolyVector(self.basis, self.coeffs - other.coeffs)

    def __mul__(self, scalar) -> "PolyVector":
        return PolyVector(self.basis, complex(scalar) * self.coeffs)

    __rmul__ = __mul__

    def max_degree(self) -> int:
        nz = np.nonzero(self.coeffs)[0]
        return int(self.basis.degree[nz].max()) if nz.size else -1

    def retruncate(self, N: int) -> "PolyVector":
        """Same polynomial on a different truncation; dropping is an error."""
        b = self.basis.restrict(N)
        if N < self.N:
            if np.any(self.coeffs[b.size:] != 0):
                raise TruncationOverflow(f"polynomial has terms above degree {N}")
            return PolyVector(b, self.coeffs[: b.size])
        c = np.zeros(b.size, dtype=complex)
        c[: self.basis.size] = self.coeffs
        return PolyVector(b, c)

    def allclose(self, other: "PolyVector", tol: float = 1e-12) -> bool:
        _check_compatible(self.basis, other.basis)
        return bool(np.max(np.abs(self.coeffs - other.coeffs), initial=0.0) <= tol)


@dataclass(frozen=True, eq=False)
class DualTable:
    """An antilinear functional on truncated SV, stored as values[alpha] = Phi(e^alpha)."""

    basis: MonomialBasis
    values: np.ndarray

    def __post_init__(self):
        v = _frozen(self.values)
        if v.shape != (self.basis.size,):
            raise DimensionMismatch(f"value array {v.shape} does not match {self.basis}")
        object.__setattr__(self, "values", v)

    @property
    def N(self) -> int:
        return self.basis.N

    @property
    def nvars(self) -> int:
        return self.basis.nvars

    @classmethod
    def zero(cls, nvars: int, N: int) -> "DualTable":
        b = monomial_basis(nvars, N)
        return cls(b, np.zeros(b.size))

    @classmethod
    def from_dict(cls, nvars: int, N: int, entries: dict) -> "DualTable":
        b = monomial_basis(nvars, N)
        v = np.zeros(b.size, dtype=complex)
        for alpha, val in entries.items():
            v[b.index(alpha)] += val
        return cls(b, v)

    def __getitem__(self, alpha) -> complex:
        return complex(self.values[self.basis.index(alpha)])

    def __call__(self, psi: PolyVector) -> complex:
        """Evaluate on a polynomial, antilinearly."""
        n = min(self.basis.size, psi.basis.size)
        _check_vars(self.basis, psi.basis)
        if psi.basis.size > n and np.any(psi.coeffs[n:] != 0):
            raise TruncationOverflow("polynomial exceeds the table's truncation")
        return complex(np.vdot(psi.coeffs[:n], self.values[:n]))

    def __add__(self, other: "DualTable") -> "DualTable":
        a, b = _common(self, other)
        return DualTable(a.basis, a.values + b.values)

    def __sub__(self, other: "DualTable") -> "DualTable":
        a, b = _common(self, other)
        return DualTable(a.basis, a.values - b.values)

    def __mul__(self, scalar) -> "DualTable":
        return DualTable(self.basis, complex(scalar) * self.values)

    __rmul__ = __mul__

    def __neg__(self) -> "DualTable":
        return DualTable(self.basis, -self.values)

    def truncate(self, N: int) -> "DualTable":
        if N > self.N:
            raise TruncationOverflow(f"cannot extend a table from degree {self.N} to {N}")
        b = self.basis.restrict(N)
        return DualTable(b, self.values[: b.size])

    def max_abs_diff(self, other: "DualTable") -> float:
        a, b = _common(self, other)
        return float(np.max(np.abs(a.values - b.values), initial=0.0))


def _check_vars(a: MonomialBasis, b: MonomialBasis) -> None:
    if a.nvars != b.nvars:
        raise DimensionMismatch(f"spaces of dimension {a.nvars} and {b.nvars}")


def _check_compatible(a: MonomialBasis, b: MonomialBasis) -> None:
    _check_vars(a, b)
    if a.N != b.N:
        raise DimensionMismatch(f"truncations {a.N} and {b.N} differ")


def _common(x: DualTable, y: DualTable) -> tuple[DualTable, DualTable]:
    """Restrict two tables to their common truncation."""
    _check_vars(x.basis, y.basis)
    N = min(x.N, y.N)
    return x.truncate(N), y.truncate(N)


def _vec(v, nvars: int) -> np.ndarray:
    v = as_vector(v)
    if v.shape[0] != nvars:
        raise DimensionMismatch(f"vector of dim {v.shape[0]} on a space with {nvars} variables")
    return v


# -- polynomials -------------------------------------------------------------


def canonical_inner(psi: PolyVector, phi: PolyVector) -> complex:
    _check_compatible(psi.basis, phi.basis)
    return complex(np.sum(np.conj(psi.coeffs) * phi.coeffs * psi.basis.factorial))


def canonical_norm(psi: PolyVector) -> float:
    return float(np.sqrt(canonical_inner(psi, psi).real))


def gram(basis: MonomialBasis) -> np.ndarray:
    """Canonical Gram matrix diag(alpha!) on the monomial basis."""
    return np.diag(basis.factorial)


def creator(v, psi: PolyVector, overflow: str = "error") -> PolyVector:
    """Multiplication by the vector v.

    ``overflow="drop"`` silently discards the top-degree image instead of
    raising :class:`TruncationOverflow`.
    """
    b = psi.basis
    v = _vec(v, b.nvars)
    top = b.shell(b.N)
    if overflow == "error":
        if np.any(psi.coeffs[top] != 0) and np.any(v != 0):
            raise TruncationOverflow(f"creator would exceed truncation degree {b.N}")
    elif overflow != "drop":
        raise ValueError(f"overflow must be 'error' or 'drop', not {overflow!r}")
    out = np.zeros(b.size, dtype=complex)
    for j in range(b.nvars):
        if v[j] == 0:
            continue
        ok = b.upper[j] >= 0
        out[b.upper[j, ok]] += v[j] * psi.coeffs[ok]
    return PolyVector(b, out)


def annihilator(v, psi: PolyVector) -> PolyVector:
    """The derivation a(v), antilinear in v."""
    b = psi.basis
    v = _vec(v, b.nvars)
    out = np.zeros(b.size, dtype=complex)
    for j in range(b.nvars):
        if v[j] == 0:
            continue
        ok = b.lower[j] >= 0
        out[b.lower[j, ok]] += np.conj(v[j]) * b.exps[ok, j] * psi.coeffs[ok]
    return PolyVector(b, out)


def poly_product(p: PolyVector, q: PolyVector, overflow: str = "error") -> PolyVector:
    """Algebra product in SV, e^alpha e^beta = e^(alpha + beta)."""
    _check_compatible(p.basis, q.basis)
    b = p.basis
    if overflow not in ("error", "drop"):
        raise ValueError(f"overflow must be 'error' or 'drop', not {overflow!r}")
    if overflow == "error" and p.max_degree() + q.max_degree() > b.N:
        raise TruncationOverflow(f"product exceeds truncation degree {b.N}")
    f, g = p.coeffs, q.coeffs
    if np.count_nonzero(g) < np.count_nonzero(f):
        f, g = g, f
    out = np.zeros(b.size, dtype=complex)
    for i in np.nonzero(f)[0]:
        tgt = _shift_indices(b, b.exps[i])
        out[tgt] += f[i] * g[: tgt.size]
    return PolyVector(b, out)


def product_of_vectors(vectors, N: int) -> PolyVector:
    """Expand v_1 v_2 ... v_n in the monomial basis."""
    vectors = [as_vector(v) for v in vectors]
    if not vectors:
        raise ValueError("need the dimension; pass at least one vector")
    d = vectors[0].shape[0]
    if len(vectors) > N:
        raise TruncationOverflow(f"product of {len(vectors)} vectors exceeds degree {N}")
    psi = PolyVector.one(d, N)
    for v in vectors:
        psi = creator(v, psi)
    return psi


def inner_permanent_oracle(xs, ys) -> complex:
    """<x_1...x_n | y_1...y_n> as an explicit sum over permutations (n <= 8)."""
    xs = [as_vector(x) for x in xs]
    ys = [as_vector(y) for y in ys]
    if len(xs) != len(ys):
        raise DimensionMismatch(f"{len(xs)} factors against {len(ys)}")
    n = len(xs)
    if n > 8:
        raise ValueError("permutation oracle is limited to n <= 8")
    G = np.array([[np.vdot(x, y) for y in ys] for x in xs], dtype=complex).reshape(n, n)
    total = 0j
    for p in itertools.permutations(range(n)):
        term = 1 + 0j
        for j in range(n):
            term *= G[j, p[j]]
        total += term
    return complex(total)


def number_apply(psi: PolyVector) -> PolyVector:
    return PolyVector(psi.basis, psi.basis.degree * psi.coeffs)


def coherent(x, N: int) -> PolyVector:
    """Truncated exponential e^x = sum_{n<=N} x^n / n!."""
    x = as_vector(x)
    b = monomial_basis(x.shape[0], N)
    powers = np.prod(x[np.newaxis, :] ** b.exps, axis=1)
    return PolyVector(b, powers / b.factorial)


# -- the antidual ------------------------------------------------------------


def embed(phi: PolyVector) -> DualTable:
    """phi -> <.|phi>."""
    return DualTable(phi.basis, phi.basis.factorial * phi.coeffs)


def dual_creator(v, Phi: DualTable) -> DualTable:
    """[c(v) Phi](psi) = Phi(a(v) psi). Keeps the truncation."""
    b = Phi.basis
    v = _vec(v, b.nvars)
    out = np.zeros(b.size, dtype=complex)
    for j in range(b.nvars):
        if v[j] == 0:
            continue
        ok = b.lower[j] >= 0
        out[ok] += v[j] * b.exps[ok, j] * Phi.values[b.lower[j, ok]]
    return DualTable(b, out)


def dual_annihilator(v, Phi: DualTable) -> DualTable:
    """[a(v) Phi](psi) = Phi(c(v) psi).

    The result is only known below the top degree, so it comes back on the
    truncation ``N - 1``.
    """
    b = Phi.basis
    if b.N == 0:
        raise TruncationOverflow("dual annihilator needs a table of degree >= 1")
    v = _vec(v, b.nvars)
    nb = b.restrict(b.N - 1)
    out = np.zeros(nb.size, dtype=complex)
    for j in range(b.nvars):
        if v[j] == 0:
            continue
        out += np.conj(v[j]) * Phi.values[b.upper[j, : nb.size]]
    return DualTable(nb, out)


def _shift_indices(b: MonomialBasis, beta: np.ndarray) -> np.ndarray:
    """Indices of gamma + beta for every gamma of degree <= N - |beta|."""
    n = b.prefix(b.N - int(beta.sum()))
    return b.locate(b.exps[:n] + beta)


def functional_product(Phi: DualTable, Psi: DualTable) -> DualTable:
    """Product induced by the coproduct: binomial convolution of the tables."""
    Phi, Psi = _common(Phi, Psi)
    b = Phi.basis
    # in divided-power form the product is plain truncated polynomial multiplication
    f = Phi.values / b.factorial
    g = Psi.values / b.factorial
    if np.count_nonzero(g) < np.count_nonzero(f):
        f, g = g, f
    out = np.zeros(b.size, dtype=complex)
    for i in np.nonzero(f)[0]:
        beta = b.exps[i]
        tgt = _shift_indices(b, beta)
        out[tgt] += f[i] * g[: tgt.size]
    return DualTable(b, out * b.factorial)


def dual_number_apply(Phi: DualTable) -> DualTable:
    return DualTable(Phi.basis, Phi.basis.degree * Phi.values)


def dual_norm_sq(Phi: DualTable) -> float:
    """Canonical norm squared of the functional, sum |Phi[alpha]|^2 / alpha!."""
    return float(np.sum(np.abs(Phi.values) ** 2 / Phi.basis.factorial))


def dual_inner(Phi: DualTable, Psi: DualTable) -> complex:
    """Canonical pairing <Phi|Psi> of two functionals represented by polynomials."""
    Phi, Psi = _common(Phi, Psi)
    return complex(np.sum(np.conj(Phi.values) * Psi.values / Phi.basis.factorial))


# -- dense matrices on coefficient vectors -----------------------------------


def creator_matrix(v, N: int) -> np.ndarray:
    """Matrix of c(v) on coefficient vectors of degree <= N, top image dropped."""
    v = as_vector(v)
    b = monomial_basis(v.shape[0], N)
    out = np.zeros((b.size, b.size), dtype=complex)
    for j in range(b.nvars):
        ok = np.nonzero(b.upper[j] >= 0)[0]
        out[b.upper[j, ok], ok] += v[j]
    return out


def annihilator_matrix(v, N: int) -> np.ndarray:
    """Matrix of a(v) on coefficient vectors of degree <= N."""
    v = as_vector(v)
    b = monomial_basis(v.shape[0], N)
    out = np.zeros((b.size, b.size), dtype=complex)
    for j in range(b.nvars):
        ok = np.nonzero(b.lower[j] >= 0)[0]
        out[b.lower[j, ok], ok] += np.conj(v[j]) * b.exps[ok, j]
    return out
