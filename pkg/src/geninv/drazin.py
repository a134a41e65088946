"""Index, Drazin and group inverses, the core-nilpotent split, and the
canonical projectors.

The Drazin inverse is computed from Moore-Penrose inverses of powers:
a^D = a^k (a^(2k+1))^+ a^k with k the index of a. Ranks and pseudoinverses
of powers use cutoffs referenced to sigma_max(a)**power: a computed power
of a numerically nilpotent matrix is noise at that level, never exactly
zero, and a relative cutoff would mistake the noise for signal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .factor import pinv, pinv_scaled, rank_scaled, svd
from .kernel import DEFAULT_TOL, Tolerance, mat_pow

__all__ = [
    "IndexTooLargeError",
    "CoreNilpotent",
    "index",
    "drazin",
    "group_inverse",
    "core_nilpotent",
    "projectors",
    "spectral_projector",
]


class IndexTooLargeError(ValueError):
    """The group inverse needs index(a) <= 1."""


@dataclass(frozen=True)
class CoreNilpotent:
    """Split a = core + nilpotent with core of index <= 1, parts annihilating."""

    core: np.ndarray
    nilpotent: np.ndarray
    index: int


def _require_square(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=np.complex128)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"square matrix required, got {a.shape}")
    return a


def _two_norm(a: np.ndarray) -> float:
    s = svd(a).s
    return float(s[0]) if len(s) else 0.0


def index(a: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> int:
    """Smallest k >= 0 with rank(a^k) = rank(a^(k+1))."""
    a = _require_square(a)
    n = a.shape[0]
    smax = _two_norm(a)
    prev_rank = n
    power = np.eye(n, dtype=np.complex128)
    for k in range(n + 1):
        power = power @ a
        r = rank_scaled(power, smax ** (k + 1), tol)
        if r == prev_rank:
            return k
        prev_rank = r
    return n


def _drazin_with_index(a: np.ndarray, k: int, tol: Tolerance) -> np.ndarray:
    n = a.shape[0]
    smax = _two_norm(a)
    ak = mat_pow(a, k)
    if rank_scaled(ak, smax ** k, tol) == 0:
        return np.zeros((n, n), dtype=np.complex128)
    x = pinv_scaled(mat_pow(a, 2 * k + 1), smax ** (2 * k + 1), tol)
    return ak @ x @ ak


def drazin(a: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Drazin inverse a^k (a^(2k+1))^+ a^k with k = index(a)."""
    a = _require_square(a)
    return _drazin_with_index(a, index(a, tol), tol)


def group_inverse(a: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Drazin inverse restricted to index <= 1."""
    a = _require_square(a)
    k = index(a, tol)
    if k > 1:
        raise IndexTooLargeError(f"group inverse needs index <= 1, got {k}")
    return _drazin_with_index(a, k, tol)


def core_nilpotent(a: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> CoreNilpotent:
    """core = a a^D a; nilpotent = a - core."""
    a = _require_square(a)
    k = index(a, tol)
    core = a @ _drazin_with_index(a, k, tol) @ a
    return CoreNilpotent(core=core, nilpotent=a - core, index=k)


def projectors(a: np.ndarray, tol: Tolerance = DEFAULT_TOL):
    """Orthogonal projectors (a a^+, a^+ a) onto the column spaces of a, a*."""
    x = pinv(a, tol)
    return a @ x, x @ a


def spectral_projector(a: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """a a^D: the oblique projector onto R(a^k) along N(a^k)."""
    a = _require_square(a)
    return a @ drazin(a, tol)
