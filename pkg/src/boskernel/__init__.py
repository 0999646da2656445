"""Truncated symmetric-algebra kernels for (anti)metaplectic operators on boson Fock space.

The modules build on each other in this order: ``linspace`` (the one-particle
space and real-linear maps), ``symalg`` (truncated polynomials and their
antidual), ``complexify`` (the doubled space carrying kernels), ``gaussian``
(exponentials of quadratics), ``kernelcalc`` (kernel tables and how creators
and annihilators act on them), and ``metaplectic``.
"""

from .exceptions import (
    BosKernelError,
    DimensionMismatch,
    NormTooLarge,
    NotSymmetric,
    NotSymplectic,
    SingularMap,
    TruncationOverflow,
)
from .gaussian import gaussian_norm_sq_closed, gaussian_table, quadratic_of
from .kernelcalc import AntiKernel, Kernel, apply_antikernel, apply_kernel
from .linspace import RealLinearMap, SymAntilinear, compose, inner, invert, omega
from .metaplectic import (
    anti_kernel,
    coherent_element_closed,
    metaplectic_kernel,
    pack,
    shale_constant,
)
from .symalg import DualTable, PolyVector, canonical_inner, monomial_basis

__version__ = "0.1.0"
