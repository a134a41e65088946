"""Dense complex matrices and the single comparison tolerance policy.

Matrices are plain 2-D complex128 numpy arrays. Every function here and in
the rest of the package is pure: inputs are never mutated and results are
fresh arrays, so everything is safe to call concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "DimensionMismatchError",
    "PreconditionError",
    "InternalCheckError",
    "Tolerance",
    "DEFAULT_TOL",
    "cmatrix",
    "conj_transpose",
    "matmul",
    "mat_pow",
    "fro_norm",
    "diff_norm",
    "eq_scale",
    "approx_eq",
]


class DimensionMismatchError(ValueError):
    """Operands have incompatible shapes."""


class PreconditionError(ValueError):
    """An operation was called outside its stated precondition."""


class InternalCheckError(RuntimeError):
    """A cross-check that must always pass has failed."""


@dataclass(frozen=True)
class Tolerance:
    """Comparison policy threaded through every residual test.

    eq_abs   - absolute entrywise floor for matrix equality
    eq_rel   - relative Frobenius factor for matrix equality
    rank_rel - singular-value cutoff factor; None selects the
               dimension-dependent default eps * max(m, n) * 64
    """

    eq_abs: float = 1e-10
    eq_rel: float = 1e-9
    rank_rel: float | None = None

    def __post_init__(self) -> None:
        if self.eq_abs <= 0.0 or self.eq_rel <= 0.0:
            raise ValueError("tolerance fields must be strictly positive")
        if self.rank_rel is not None and self.rank_rel <= 0.0:
            raise ValueError("tolerance fields must be strictly positive")

    def rank_cutoff(self, m: int, n: int) -> float:
        """Cutoff factor applied to the largest singular value."""
        if self.rank_rel is not None:
            return self.rank_rel
        return float(np.finfo(np.float64).eps) * max(m, n) * 64.0


DEFAULT_TOL = Tolerance()


def cmatrix(data) -> np.ndarray:
    """Coerce `data` to a 2-D complex128 array with at least one entry."""
    a = np.array(data, dtype=np.complex128)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={a.ndim}")
    if a.shape[0] < 1 or a.shape[1] < 1:
        raise ValueError(f"matrix must be at least 1x1, got {a.shape}")
    return a


def conj_transpose(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return a.conj().T


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product with an explicit shape check."""
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatchError(
            f"cannot multiply {a.shape} by {b.shape}"
        )
    return a @ b


def mat_pow(a: np.ndarray, k: int) -> np.ndarray:
    """k-th power of a square matrix; a**0 is the identity."""
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatchError(f"power of non-square matrix {a.shape}")
    return np.linalg.matrix_power(a, k)


def fro_norm(a: np.ndarray) -> float:
    """Frobenius norm."""
    return float(np.linalg.norm(a))


def diff_norm(a: np.ndarray, b: np.ndarray) -> float:
    """Frobenius norm of a - b."""
    if a.shape != b.shape:
        raise DimensionMismatchError(f"shape mismatch {a.shape} vs {b.shape}")
    return float(np.linalg.norm(a - b))


def eq_scale(a: np.ndarray, b: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> float:
    """Threshold under which a and b count as equal."""
    return tol.eq_abs + tol.eq_rel * (1.0 + fro_norm(a) + fro_norm(b))


def approx_eq(a: np.ndarray, b: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff ||a - b||_F <= eq_abs + eq_rel * (1 + ||a||_F + ||b||_F)."""
    return diff_norm(a, b) <= eq_scale(a, b, tol)
