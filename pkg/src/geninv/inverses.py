"""Composite generalized inverses: DMP, MPD, CMP, MPDMP, core-EP and CCE,
plus the closed forms used as cross-checks.

Each inverse is built by direct composition of Moore-Penrose and Drazin
products; block closed forms are only consulted to cross-validate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .drazin import core_nilpotent, drazin, index
from .factor import hs_decompose, hs_derived, numerical_rank, pinv, pinv_scaled, svd
from .kernel import DEFAULT_TOL, Tolerance, approx_eq, conj_transpose, mat_pow

__all__ = [
    "ClosedFormMismatchError",
    "InverseReport",
    "dmp",
    "mpd",
    "cmp_inverse",
    "mpdmp",
    "core_ep_inverse",
    "cce_inverse",
    "mpdmp_pinv",
    "greville_forms",
    "inverse_report",
]


class ClosedFormMismatchError(RuntimeError):
    """Direct computation and block closed form disagree (never expected)."""


@dataclass(frozen=True)
class InverseReport:
    """All generalized inverses of one matrix plus index/rank metadata."""

    mp: np.ndarray
    drazin: np.ndarray
    dmp: np.ndarray
    mpd: np.ndarray
    cmp: np.ndarray
    mpdmp: np.ndarray
    core_ep: np.ndarray
    cce: np.ndarray
    index: int
    rank: int


def dmp(a: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """a^D a a^+."""
    return drazin(a, tol) @ a @ pinv(a, tol)


def mpd(a: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """a^+ a a^D."""
    return pinv(a, tol) @ a @ drazin(a, tol)


def cmp_inverse(a: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """a^+ core(a) a^+."""
    p = pinv(a, tol)
    return p @ core_nilpotent(a, tol).core @ p


def mpdmp(a: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """a^+ a^D a^+."""
    p = pinv(a, tol)
    return p @ drazin(a, tol) @ p


def _two_norm(a: np.ndarray) -> float:
    s = svd(a).s
    return float(s[0]) if len(s) else 0.0


def core_ep_inverse(a: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """a^D a^k (a^k)^+ with k = index(a) exactly."""
    a = np.asarray(a, dtype=np.complex128)
    k = index(a, tol)
    ak = mat_pow(a, k)
    return drazin(a, tol) @ ak @ pinv_scaled(ak, _two_norm(a) ** k, tol)


def cce_inverse(a: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """a^+ a (core-EP inverse) a a^+."""
    p = pinv(a, tol)
    return p @ a @ core_ep_inverse(a, tol) @ a @ p


def mpdmp_pinv(a: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Moore-Penrose inverse of the MPDMP matrix, cross-checked against the
    block closed form U [[st^+ Q, st^+ P], [0, 0]] U*."""
    x = pinv(mpdmp(a, tol), tol)
    h = hs_decompose(a, tol)
    der = hs_derived(h, tol)
    st_pinv = pinv(der.sigma_tilde, tol)
    n = h.u.shape[0]
    block = np.zeros((n, n), dtype=np.complex128)
    block[: h.r, :] = np.hstack([st_pinv @ h.q, st_pinv @ h.p])
    closed = h.u @ block @ conj_transpose(h.u)
    if not approx_eq(x, closed, tol):
        raise ClosedFormMismatchError(
            "MPDMP pseudoinverse disagrees with its block closed form"
        )
    return x


def greville_forms(a: np.ndarray, tol: Tolerance = DEFAULT_TOL):
    """DMP and MPD from Moore-Penrose inverses of powers:
    (a^k (a^(2k+1))^+ a^(k+1) a^+,  a^+ a^(k+1) (a^(2k+1))^+ a^k)."""
    a = np.asarray(a, dtype=np.complex128)
    k = index(a, tol)
    p = pinv(a, tol)
    t = pinv_scaled(mat_pow(a, 2 * k + 1), _two_norm(a) ** (2 * k + 1), tol)
    ak = mat_pow(a, k)
    ak1 = mat_pow(a, k + 1)
    return ak @ t @ ak1 @ p, p @ ak1 @ t @ ak


def inverse_report(a: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> InverseReport:
    """Compute every inverse of a square matrix in one pass."""
    return InverseReport(
        mp=pinv(a, tol),
        drazin=drazin(a, tol),
        dmp=dmp(a, tol),
        mpd=mpd(a, tol),
        cmp=cmp_inverse(a, tol),
        mpdmp=mpdmp(a, tol),
        core_ep=core_ep_inverse(a, tol),
        cce=cce_inverse(a, tol),
        index=index(a, tol),
        rank=numerical_rank(a, tol),
    )
