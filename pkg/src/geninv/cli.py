"""Command-line front end: matrix I/O, inverse computation, classification,
relation testing, and suite running, with JSON reports on stdout.

Exit codes: 0 ok, 2 malformed input, 3 precondition failure, 4 shape
mismatch, 5 unknown identifier.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from .classify import core_ep_equiv_report
from .drazin import (
    IndexTooLargeError,
    core_nilpotent,
    drazin,
    group_inverse,
    index,
)
from .ensembles import EnsembleSpec, InvalidSpecError, KINDS
from .factor import (
    ZeroMatrixError,
    hs_decompose,
    hs_derived,
    hs_reconstruct,
    numerical_rank,
    pinv,
    pinv_scaled,
    svd,
)
from .inverses import cce_inverse, cmp_inverse, core_ep_inverse, dmp, mpd, mpdmp
from .kernel import (
    DEFAULT_TOL,
    DimensionMismatchError,
    PreconditionError,
    Tolerance,
    conj_transpose,
    diff_norm,
    fro_norm,
    mat_pow,
)
from .orders import OrderKind, leq
from .verify import UnknownSuiteError, run_suite

__all__ = ["MatrixFileError", "matrix_to_obj", "matrix_from_obj",
           "load_matrix", "save_matrix", "main"]

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_SHAPE = 4
EXIT_UNKNOWN_ID = 5


class MatrixFileError(ValueError):
    """The matrix file is malformed."""


def matrix_to_obj(a: np.ndarray) -> dict:
    """MatrixFile object: explicit [re, im] pairs, row-major."""
    a = np.asarray(a, dtype=np.complex128)
    return {
        "rows": int(a.shape[0]),
        "cols": int(a.shape[1]),
        "data": [[[float(x.real), float(x.imag)] for x in row] for row in a],
    }


def matrix_from_obj(obj) -> np.ndarray:
    if not isinstance(obj, dict):
        raise MatrixFileError("matrix object must be a JSON object")
    try:
        rows, cols, data = obj["rows"], obj["cols"], obj["data"]
    except (KeyError, TypeError) as exc:
        raise MatrixFileError(f"missing matrix field: {exc}") from exc
    if not isinstance(rows, int) or not isinstance(cols, int) or rows < 1 or cols < 0:
        raise MatrixFileError(f"bad dimensions rows={rows!r} cols={cols!r}")
    if not isinstance(data, list) or len(data) != rows:
        raise MatrixFileError("data does not match declared row count")
    out = np.zeros((rows, cols), dtype=np.complex128)
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != cols:
            raise MatrixFileError(f"row {i} does not match declared column count")
        for j, pair in enumerate(row):
            if (not isinstance(pair, list) or len(pair) != 2
                    or not all(isinstance(x, (int, float)) for x in pair)):
                raise MatrixFileError(f"entry ({i},{j}) is not a [re, im] pair")
            re, im = float(pair[0]), float(pair[1])
            if not (math.isfinite(re) and math.isfinite(im)):
                raise MatrixFileError(f"entry ({i},{j}) is not finite")
            out[i, j] = complex(re, im)
    return out


def load_matrix(path: str) -> np.ndarray:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise MatrixFileError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise MatrixFileError(f"{path} is not valid JSON: {exc}") from exc
    return matrix_from_obj(obj)


def save_matrix(path: str, a: np.ndarray) -> None:
    with open(path, "w") as fh:
        json.dump(matrix_to_obj(a), fh)
        fh.write("\n")


def _dump(obj, pretty: bool) -> None:
    print(json.dumps(obj, indent=2 if pretty else None))


def _tolerance(args) -> Tolerance:
    return Tolerance(
        eq_abs=args.tol_abs if args.tol_abs is not None else DEFAULT_TOL.eq_abs,
        eq_rel=args.tol_rel if args.tol_rel is not None else DEFAULT_TOL.eq_rel,
    )


def _require_square_input(a: np.ndarray) -> None:
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatchError(f"square matrix required, got {a.shape}")


def _penrose_residuals(a, x):
    return {
        "axa_eq_a": diff_norm(a @ x @ a, a),
        "xax_eq_x": diff_norm(x @ a @ x, x),
        "ax_hermitian": fro_norm(conj_transpose(a @ x) - a @ x),
        "xa_hermitian": fro_norm(conj_transpose(x @ a) - x @ a),
    }


def _drazin_residuals(a, x, k):
    ak = mat_pow(a, k)
    return {
        "power_identity": diff_norm(mat_pow(a, k + 1) @ x, ak),
        "xax_eq_x": diff_norm(x @ a @ x, x),
        "commutes": diff_norm(a @ x, x @ a),
    }


def _compute_residuals(which, a, x, tol):
    if which == "mp":
        return _penrose_residuals(a, x)
    p = pinv(a, tol)
    d = drazin(a, tol)
    k = index(a, tol)
    if which in ("drazin", "group"):
        return _drazin_residuals(a, x, k)
    if which == "dmp":
        ak = mat_pow(a, k)
        return {
            "xax_eq_x": diff_norm(x @ a @ x, x),
            "xa_eq_drazin_a": diff_norm(x @ a, d @ a),
            "power_mp": diff_norm(ak @ x, ak @ p),
        }
    if which == "mpd":
        ak = mat_pow(a, k)
        return {
            "xax_eq_x": diff_norm(x @ a @ x, x),
            "ax_eq_a_drazin": diff_norm(a @ x, a @ d),
            "mp_power": diff_norm(x @ ak, p @ ak),
        }
    if which == "cmp":
        core = core_nilpotent(a, tol).core
        return {
            "xax_eq_x": diff_norm(x @ a @ x, x),
            "ax_eq_core_mp": diff_norm(a @ x, core @ p),
            "xa_eq_mp_core": diff_norm(x @ a, p @ core),
        }
    if which == "mpdmp":
        return {
            "x_a3_x_eq_x": diff_norm(x @ mat_pow(a, 3) @ x, x),
            "ax_eq_d_mp": diff_norm(a @ x, d @ p),
            "xa_eq_mp_d": diff_norm(x @ a, p @ d),
        }
    if which == "core-ep":
        ak = mat_pow(a, k)
        smax = svd(a).s[0] if a.size else 0.0
        proj = ak @ pinv_scaled(ak, float(smax) ** k, tol)
        xs = conj_transpose(x)
        return {
            "xax_eq_x": diff_norm(x @ a @ x, x),
            "range": diff_norm(proj @ x, x),
            "range_star": diff_norm(proj @ xs, xs),
        }
    if which == "cce":
        return {"xax_eq_x": diff_norm(x @ a @ x, x)}
    raise ValueError(which)


_WHICH_FUNCS = {
    "mp": pinv,
    "group": group_inverse,
    "drazin": drazin,
    "dmp": dmp,
    "mpd": mpd,
    "cmp": cmp_inverse,
    "mpdmp": mpdmp,
    "core-ep": core_ep_inverse,
    "cce": cce_inverse,
}


def cmd_compute(args) -> int:
    tol = _tolerance(args)
    a = load_matrix(args.input)
    if args.which != "mp":
        _require_square_input(a)
    x = _WHICH_FUNCS[args.which](a, tol)
    sidecar = {
        "which": args.which,
        "residuals": _compute_residuals(args.which, a, x, tol),
    }
    if a.shape[0] == a.shape[1]:
        sidecar["index"] = index(a, tol)
        sidecar["rank"] = numerical_rank(a, tol)
    if args.output:
        save_matrix(args.output, x)
        _dump(sidecar, args.pretty)
    else:
        _dump({"matrix": matrix_to_obj(x), **sidecar}, args.pretty)
    return EXIT_OK


def cmd_classify(args) -> int:
    tol = _tolerance(args)
    a = load_matrix(args.input)
    _require_square_input(a)
    rep = core_ep_equiv_report(a, tol)
    _dump({
        "rank": numerical_rank(a, tol),
        "index": index(a, tol),
        "is_ep": rep.is_ep,
        "is_core_ep": rep.is_core_ep,
        "is_k_ep": rep.is_k_ep,
        "core_ep_conditions": rep.core_ep_conditions,
        "block_conditions": rep.block_conditions,
        "residuals": rep.residuals,
        "flags": list(rep.flags),
    }, args.pretty)
    return EXIT_OK


def cmd_order(args) -> int:
    tol = _tolerance(args)
    a = load_matrix(args.a)
    b = load_matrix(args.b)
    kinds = list(OrderKind) if args.relation == "all" else [OrderKind(args.relation)]
    out = {}
    for kind in kinds:
        rep = leq(a, b, kind, tol)
        out[kind.value] = {
            "holds": rep.holds,
            "left_residual": rep.left_residual,
            "right_residual": rep.right_residual,
        }
    _dump(out, args.pretty)
    return EXIT_OK


def _parse_class(text: str):
    name, _, param = text.partition(":")
    if name not in KINDS:
        raise InvalidSpecError(f"unknown class {name!r}")
    rank = index_val = None
    if name == "fixed_rank":
        rank = int(param) if param else None
    elif name == "fixed_index":
        index_val = int(param) if param else None
    elif param:
        raise InvalidSpecError(f"class {name!r} takes no parameter")
    return name, rank, index_val


def cmd_verify(args) -> int:
    tol = _tolerance(args)
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get("GENINV_SEED", "0"))
    kind, rank, index_val = _parse_class(args.matrix_class)
    try:
        spec = EnsembleSpec(size=args.size, count=args.count, seed=seed,
                            kind=kind, rank=rank, index=index_val)
    except InvalidSpecError as exc:
        raise PreconditionError(str(exc)) from exc
    report = run_suite(args.suite, spec, tol)
    _dump(report.to_dict(), args.pretty)
    return EXIT_OK if report.passed else 1


def cmd_hs(args) -> int:
    tol = _tolerance(args)
    a = load_matrix(args.input)
    _require_square_input(a)
    h = hs_decompose(a, tol)
    der = hs_derived(h, tol)
    outdir = Path(args.output or ".")
    outdir.mkdir(parents=True, exist_ok=True)
    blocks = {
        "U": h.u,
        "Sigma": h.sigma_mat,
        "Q": h.q,
        "P": h.p,
        "Qhat": der.qhat,
        "SigmaTilde": der.sigma_tilde,
        "QTilde": der.qtilde,
        "Delta": der.delta,
        "DeltaHat": der.delta_hat,
        "DeltaTilde": der.delta_tilde,
    }
    files = {}
    for name, block in blocks.items():
        path = outdir / f"{name}.json"
        save_matrix(str(path), block)
        files[name] = str(path)
    eye_r = np.eye(h.r, dtype=np.complex128)
    _dump({
        "rank": h.r,
        "files": files,
        "residuals": {
            "reconstruction": diff_norm(hs_reconstruct(h), a),
            "qq_pp_identity": fro_norm(
                h.q @ conj_transpose(h.q) + h.p @ conj_transpose(h.p) - eye_r),
        },
    }, args.pretty)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="geninv",
        description="Generalized matrix inverses, matrix class tests, "
                    "relation orders, and identity-verification suites.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--tol-abs", type=float, default=None,
                       help="absolute equality floor (default 1e-10)")
        p.add_argument("--tol-rel", type=float, default=None,
                       help="relative equality factor (default 1e-9)")
        p.add_argument("--pretty", action="store_true",
                       help="indent the JSON output")

    p = sub.add_parser("compute", help="compute one generalized inverse")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--which", required=True, choices=sorted(_WHICH_FUNCS))
    p.add_argument("--output", "-o", default=None,
                   help="write the inverse here; residuals go to stdout")
    add_common(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("classify", help="matrix class report")
    p.add_argument("--input", "-i", required=True)
    add_common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("order", help="test the binary relations for a pair")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--relation", default="all",
                   choices=["drazin", "dmp", "mpd", "cmp", "all"])
    add_common(p)
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("verify", help="run an identity suite over an ensemble")
    p.add_argument("--suite", required=True)
    p.add_argument("--size", type=int, default=5)
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--seed", type=int, default=None,
                   help="default 0, or GENINV_SEED if set")
    p.add_argument("--class", dest="matrix_class", default="generic",
                   help="sample class; fixed_rank:R and fixed_index:K "
                        "take a parameter")
    add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("hs", help="write the block factorization and "
                                  "derived blocks as matrix files")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--output", "-o", default=None, help="output directory")
    add_common(p)
    p.set_defaults(func=cmd_hs)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MatrixFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (PreconditionError, IndexTooLargeError, ZeroMatrixError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except DimensionMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SHAPE
    except (UnknownSuiteError, InvalidSpecError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN_ID


if __name__ == "__main__":
    sys.exit(main())
