"""Generalized matrix inverses and their verification toolkit.

Computes the Moore-Penrose, group, Drazin, DMP, MPD, CMP, MPDMP, core-EP
and CCE inverses of dense complex matrices, classifies matrices (EP,
core-EP, k-EP), evaluates the induced binary relations, and mechanically
checks the identities connecting all of these over fixtures and seeded
random ensembles, with an exact rational oracle for small inputs.
"""

from .kernel import (
    DEFAULT_TOL,
    DimensionMismatchError,
    InternalCheckError,
    PreconditionError,
    Tolerance,
    approx_eq,
    cmatrix,
    conj_transpose,
    diff_norm,
    eq_scale,
    fro_norm,
    mat_pow,
    matmul,
)
from .factor import (
    HSDecomp,
    HSDerived,
    SVDResult,
    SvdConvergenceError,
    ZeroMatrixError,
    hs_decompose,
    hs_derived,
    hs_reconstruct,
    numerical_rank,
    pinv,
    pinv_scaled,
    rank_scaled,
    svd,
)
from .drazin import (
    CoreNilpotent,
    IndexTooLargeError,
    core_nilpotent,
    drazin,
    group_inverse,
    index,
    projectors,
    spectral_projector,
)
from .inverses import (
    ClosedFormMismatchError,
    InverseReport,
    cce_inverse,
    cmp_inverse,
    core_ep_inverse,
    dmp,
    greville_forms,
    inverse_report,
    mpd,
    mpdmp,
    mpdmp_pinv,
)
from .classify import (
    ClassReport,
    cce_ep_criterion,
    cmp_ep_criterion,
    core_ep_block_conditions,
    core_ep_equiv_report,
    dmp_pinv_commute_criterion,
    is_core_ep,
    is_ep,
    is_k_ep,
    mpdmp_ep_consequences,
    mpdmp_ep_criterion,
    wqrt_criterion,
)
from .orders import (
    OrderKind,
    OrderReport,
    core_upper_bound_check,
    dmp_order_characterizations,
    leq,
    mpd_order_characterizations,
)
from .ensembles import EnsembleSpec, InvalidSpecError, gen, idempotent_core_samples
from .verify import (
    UnknownSuiteError,
    UnknownSystemError,
    VerificationReport,
    SUITE_IDS,
    SYSTEM_IDS,
    run_suite,
    solution_family,
    verify_system,
)

__version__ = "0.1.0"
