"""Matrix class predicates (EP, core-EP, k-EP) and the EP-ness criteria for
the composite inverses, each available both as a direct residual test and
through conditions on the unitary block factorization.

Every boolean is a residual comparison under the shared Tolerance, and the
raw residual is reported next to it so near-threshold calls can be audited.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .drazin import core_nilpotent, drazin, index
from .factor import HSDecomp, hs_decompose, hs_derived, pinv
from .inverses import cmp_inverse, dmp, mpd
from .kernel import (
    DEFAULT_TOL,
    InternalCheckError,
    PreconditionError,
    Tolerance,
    approx_eq,
    conj_transpose,
    diff_norm,
    mat_pow,
)

__all__ = [
    "ClassReport",
    "is_ep",
    "is_core_ep",
    "is_k_ep",
    "core_ep_block_conditions",
    "core_ep_equiv_report",
    "cmp_ep_criterion",
    "mpdmp_ep_criterion",
    "cce_ep_criterion",
    "mpdmp_ep_consequences",
    "dmp_pinv_commute_criterion",
    "wqrt_criterion",
]

CORE_EP_CONDITION_LABELS = (
    "defining_commutation",
    "mpdmp_is_drazin_cubed",
    "mpdmp_dmp_is_drazin_fourth",
    "mpdmp_commutes_with_matrix",
    "mpdmp_commutes_with_core",
    "mpdmp_commutes_with_drazin",
    "mpdmp_drazin_is_dmp_fourth",
)


@dataclass(frozen=True)
class ClassReport:
    """Class predicates plus the full set of equivalent core-EP conditions.

    core_ep_conditions holds the seven labeled booleans; block_conditions
    the labeled (a), (b), (c) factorization tests (empty for the zero
    matrix, which has no block factorization). Disagreements between any
    condition and is_core_ep are listed in flags, never hidden.
    """

    is_ep: bool
    is_core_ep: bool
    is_k_ep: bool
    core_ep_conditions: dict[str, bool]
    block_conditions: dict[str, bool]
    residuals: dict[str, float]
    flags: tuple[str, ...] = field(default=())


def _require_square(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=np.complex128)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"square matrix required, got {a.shape}")
    return a


def is_ep(a: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff a commutes with its Moore-Penrose inverse."""
    a = _require_square(a)
    x = pinv(a, tol)
    return approx_eq(a @ x, x @ a, tol)


def is_core_ep(a: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff a^+ commutes with the core part of a."""
    a = _require_square(a)
    x = pinv(a, tol)
    core = core_nilpotent(a, tol).core
    return approx_eq(x @ core, core @ x, tol)


def is_k_ep(a: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff a^k commutes with a^+, k = index(a)."""
    a = _require_square(a)
    k = index(a, tol)
    ak = mat_pow(a, k)
    x = pinv(a, tol)
    return approx_eq(ak @ x, x @ ak, tol)


def core_ep_block_conditions(h: HSDecomp, tol: Tolerance = DEFAULT_TOL):
    """Residual tests of (a) Q* qhat = (SQ)^D, (b) P* qhat = 0,
    (c) (SQ)^D S P = 0; their conjunction characterizes core-EP."""
    core_d = drazin(h.core, tol)
    qhat = h.q @ core_d
    zero_rp = np.zeros((h.p.shape[1], h.r), dtype=np.complex128)
    zero_rp2 = np.zeros((h.r, h.p.shape[1]), dtype=np.complex128)
    cond_a = approx_eq(conj_transpose(h.q) @ qhat, core_d, tol)
    cond_b = approx_eq(conj_transpose(h.p) @ qhat, zero_rp, tol)
    cond_c = approx_eq(core_d @ h.sigma_mat @ h.p, zero_rp2, tol)
    return cond_a, cond_b, cond_c


def core_ep_equiv_report(a: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> ClassReport:
    """Evaluate every equivalent core-EP condition and flag disagreements."""
    a = _require_square(a)
    x = pinv(a, tol)
    d = drazin(a, tol)
    core = a @ d @ a
    m = x @ d @ x
    g = dmp(a, tol)
    d3 = d @ d @ d
    d4 = d3 @ d

    pairs = {
        "defining_commutation": (x @ core, core @ x),
        "mpdmp_is_drazin_cubed": (m, d3),
        "mpdmp_dmp_is_drazin_fourth": (m @ g, d4),
        "mpdmp_commutes_with_matrix": (m @ a, a @ m),
        "mpdmp_commutes_with_core": (m @ core, core @ m),
        "mpdmp_commutes_with_drazin": (m @ d, d @ m),
        "mpdmp_drazin_is_dmp_fourth": (m @ d, mat_pow(g, 4)),
    }
    conditions = {}
    residuals = {}
    for label, (lhs, rhs) in pairs.items():
        conditions[label] = approx_eq(lhs, rhs, tol)
        residuals[label] = diff_norm(lhs, rhs)

    core_ep = conditions["defining_commutation"]
    flags = [
        f"{label} disagrees with the defining core-EP test"
        for label in CORE_EP_CONDITION_LABELS
        if conditions[label] != core_ep
    ]

    block = {}
    if np.any(a != 0):
        ca, cb, cc = core_ep_block_conditions(hs_decompose(a, tol), tol)
        block = {"a": ca, "b": cb, "c": cc}
        if (ca and cb and cc) != core_ep:
            flags.append("block conditions disagree with the defining core-EP test")

    return ClassReport(
        is_ep=is_ep(a, tol),
        is_core_ep=core_ep,
        is_k_ep=is_k_ep(a, tol),
        core_ep_conditions=conditions,
        block_conditions=block,
        residuals=residuals,
        flags=tuple(flags),
    )


def cmp_ep_criterion(h: HSDecomp, tol: Tolerance = DEFAULT_TOL) -> bool:
    """CMP inverse is EP iff Q* delta Q = qhat^+ qhat and delta P = 0.

    A third block condition is implied by these two (delta is an
    orthogonal projector), so only the two are tested.
    """
    der = hs_derived(h, tol)
    qhat_pinv = pinv(der.qhat, tol)
    lhs = conj_transpose(h.q) @ der.delta @ h.q
    rhs = qhat_pinv @ der.qhat
    zero_p = np.zeros_like(h.p)
    return approx_eq(lhs, rhs, tol) and approx_eq(der.delta @ h.p, zero_p, tol)


def mpdmp_ep_criterion(h: HSDecomp, tol: Tolerance = DEFAULT_TOL) -> bool:
    """MPDMP matrix is EP iff Q* delta_hat Q = st^+ st and delta_hat P = 0."""
    der = hs_derived(h, tol)
    st_pinv = pinv(der.sigma_tilde, tol)
    lhs = conj_transpose(h.q) @ der.delta_hat @ h.q
    rhs = st_pinv @ der.sigma_tilde
    zero_p = np.zeros_like(h.p)
    return approx_eq(lhs, rhs, tol) and approx_eq(der.delta_hat @ h.p, zero_p, tol)


def cce_ep_criterion(h: HSDecomp, tol: Tolerance = DEFAULT_TOL) -> bool:
    """CCE inverse is EP iff Q* delta_tilde Q = qtilde^+ qtilde and
    delta_tilde P = 0; a positive result also implies that delta_tilde
    commutes with PP* and QQ* and equals Q qtilde^+ qtilde Q*."""
    der = hs_derived(h, tol)
    qt_pinv = pinv(der.qtilde, tol)
    lhs = conj_transpose(h.q) @ der.delta_tilde @ h.q
    rhs = qt_pinv @ der.qtilde
    zero_p = np.zeros_like(h.p)
    holds = approx_eq(lhs, rhs, tol) and approx_eq(der.delta_tilde @ h.p, zero_p, tol)
    if holds:
        pp = h.p @ conj_transpose(h.p)
        qq = h.q @ conj_transpose(h.q)
        dt = der.delta_tilde
        checks = [
            approx_eq(pp @ dt, dt @ pp, tol),
            approx_eq(qq @ dt, dt @ qq, tol),
            approx_eq(dt, h.q @ qt_pinv @ der.qtilde @ conj_transpose(h.q), tol),
        ]
        if not all(checks):
            raise InternalCheckError(
                "CCE EP-criterion consequences failed on a positive result"
            )
    return holds


def mpdmp_ep_consequences(h: HSDecomp, tol: Tolerance = DEFAULT_TOL):
    """Residuals of [PP*, delta_hat], [QQ*, delta_hat] and
    delta_hat - Q st^+ st Q*; requires mpdmp_ep_criterion(h)."""
    if not mpdmp_ep_criterion(h, tol):
        raise PreconditionError("MPDMP EP criterion does not hold")
    der = hs_derived(h, tol)
    st_pinv = pinv(der.sigma_tilde, tol)
    pp = h.p @ conj_transpose(h.p)
    qq = h.q @ conj_transpose(h.q)
    dh = der.delta_hat
    return (
        diff_norm(pp @ dh, dh @ pp),
        diff_norm(qq @ dh, dh @ qq),
        diff_norm(dh, h.q @ st_pinv @ der.sigma_tilde @ conj_transpose(h.q)),
    )


def dmp_pinv_commute_criterion(h: HSDecomp, tol: Tolerance = DEFAULT_TOL) -> bool:
    """(DMP inverse)^+ commutes with a^D iff (SQ)^D is EP and (SQ)^D S P = 0.

    The second condition cannot be shortened to Q S P = 0: (SQ)^D has
    index at most 1 but SQ itself need not, so (SQ)^D S P = 0 is strictly
    weaker and is the one that matches the direct commutation test.
    """
    core_d = drazin(h.core, tol)
    zero_p = np.zeros_like(h.p)
    return is_ep(core_d, tol) and approx_eq(core_d @ h.sigma_mat @ h.p, zero_p, tol)


def wqrt_criterion(a: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> bool:
    """CMP inverse is EP iff (MPD)(CMP)^+ = (CMP)^+(DMP)."""
    a = _require_square(a)
    if not np.any(a != 0):
        raise PreconditionError("criterion requires a nonzero matrix")
    c_pinv = pinv(cmp_inverse(a, tol), tol)
    return approx_eq(mpd(a, tol) @ c_pinv, c_pinv @ dmp(a, tol), tol)
