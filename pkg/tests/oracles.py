"""Independent oracles used by the test-suite.

Nothing here goes through the kernel machinery: operators are built as dense
matrices in the orthonormal number basis |n> = e^n / sqrt(n!) and compared
with kernel tables through <e^a | X e^b> = sqrt(a! b!) <a|X|b>.
"""

import itertools
import math

import numpy as np
from scipy.linalg import expm


def ladder(levels):
    """Annihilation operator a on span{|0>, ..., |levels-1>}."""
    return np.diag(np.sqrt(np.arange(1, levels)), k=1).astype(complex)


def squeeze_generator(levels, sign):
    """sign * (a^2 - a_dag^2) / 2, anti-Hermitian."""
    a = ladder(levels)
    ad = a.conj().T
    return sign * 0.5 * (a @ a - ad @ ad)


def squeeze_oracle(r, sign, block, levels=160):
    """Matrix elements <e^a | exp(r H) e^b> for a, b <= block, in the monomial normalization."""
    U = expm(r * squeeze_generator(levels, sign))
    f = np.sqrt([math.factorial(k) for k in range(block + 1)])
    return f[:, None] * U[: block + 1, : block + 1] * f[None, :]


def calibrate_squeeze_sign(kernel_block_fn, r=0.01, block=6):
    """Pick the generator sign that matches the normalized kernel at small r."""
    target = kernel_block_fn(r)
    errs = {s: np.abs(squeeze_oracle(r, s, block) - target).max() for s in (+1, -1)}
    return min(errs, key=errs.get), errs


def gaussian_series_by_pairings(M, alpha):
    """e^Z[alpha] as a hafnian: sum over perfect matchings of the repeated index list."""
    idx = [j for j, a in enumerate(alpha) for _ in range(a)]
    n = len(idx)
    if n % 2:
        return 0.0
    total = 0j
    for match in _matchings(list(range(n))):
        term = 1 + 0j
        for i, j in match:
            term *= M[idx[i], idx[j]]
        total += term
    return total


def _matchings(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for k in range(len(rest)):
        pair = (first, rest[k])
        for m in _matchings(rest[:k] + rest[k + 1:]):
            yield [pair] + m


def all_multi_indices(d, N):
    for n in range(N + 1):
        for combo in itertools.combinations_with_replacement(range(d), n):
            alpha = [0] * d
            for j in combo:
                alpha[j] += 1
            yield tuple(alpha)
