import numpy as np
import pytest

from geninv import (
    Tolerance,
    ZeroMatrixError,
    approx_eq,
    conj_transpose,
    diff_norm,
    fro_norm,
    hs_decompose,
    hs_derived,
    hs_reconstruct,
    is_core_ep,
    numerical_rank,
    pinv,
    svd,
)
from geninv.drazin import drazin
from geninv.ensembles import EnsembleSpec, gen

from conftest import random_complex


def test_svd_diagonal():
    res = svd(np.diag([3.0, 1.0]).astype(complex))
    assert np.allclose(res.s, [3.0, 1.0])
    # columns defined up to phase; reconstruction is the contract
    assert np.allclose(res.reconstruct(), np.diag([3.0, 1.0]), atol=1e-12)


def test_svd_zero():
    res = svd(np.zeros((2, 3), dtype=complex))
    assert np.array_equal(res.s, [0.0, 0.0])
    assert np.allclose(res.reconstruct(), 0.0)


def test_svd_fixture_reconstruction(a1):
    res = svd(a1)
    assert diff_norm(res.reconstruct(), a1) <= 1e-10 * (1 + fro_norm(a1))
    assert res.s[2] <= 1e-12 * res.s[0]


def test_svd_invariants_random(rng):
    for _ in range(60):
        m, n = rng.integers(1, 9, 2)
        a = random_complex(rng, m, n)
        if rng.random() < 0.3:  # rank-deficient case
            r = int(rng.integers(0, min(m, n) + 1))
            a = (random_complex(rng, m, r) @ random_complex(rng, r, n)
                 if r else np.zeros((m, n), dtype=complex))
        res = svd(a)
        assert np.all(np.diff(res.s) <= 1e-12)
        assert np.all(res.s >= 0.0)
        assert diff_norm(res.reconstruct(), a) <= 1e-9 * (1 + fro_norm(a))
        assert fro_norm(conj_transpose(res.u) @ res.u - np.eye(m)) <= 1e-9
        assert fro_norm(conj_transpose(res.v) @ res.v - np.eye(n)) <= 1e-9


def test_svd_matches_reference_singular_values(rng):
    for _ in range(25):
        a = random_complex(rng, 6, 4)
        mine = svd(a).s
        ref = np.linalg.svd(a, compute_uv=False)
        assert np.allclose(mine, ref, atol=1e-10 * (1 + ref[0]))


def test_numerical_rank_examples(a1, a3):
    assert numerical_rank(a1) == 2
    assert numerical_rank(np.eye(5, dtype=complex)) == 5
    assert numerical_rank(a3) == 2
    assert numerical_rank(np.zeros((3, 3), dtype=complex)) == 0


def test_pinv_fixture_values(a1, a2):
    assert np.allclose(pinv(a1), [[0.5, -0.25, 0], [0, 0, 0], [0, 0.5, 0]], atol=1e-12)
    assert np.allclose(pinv(a2), [[1, 0, 0], [0, 0, 0], [-1, 1, 0]], atol=1e-12)
    assert np.array_equal(pinv(np.zeros((3, 2), dtype=complex)),
                          np.zeros((2, 3), dtype=complex))


def test_pinv_penrose_residuals(rng):
    for _ in range(80):
        m, n = rng.integers(1, 9, 2)
        a = random_complex(rng, m, n)
        x = pinv(a)
        bound = 1e-8 * (1 + fro_norm(a))
        assert diff_norm(a @ x @ a, a) <= bound
        assert diff_norm(x @ a @ x, x) <= bound
        assert fro_norm(conj_transpose(a @ x) - a @ x) <= bound
        assert fro_norm(conj_transpose(x @ a) - x @ a) <= bound


def test_hs_decompose_fixture(a1, a3):
    h = hs_decompose(a1)
    assert h.r == 2
    assert diff_norm(hs_reconstruct(h), a1) <= 1e-10 * (1 + fro_norm(a1))
    h3 = hs_decompose(a3)
    eye2 = np.eye(2, dtype=complex)
    gram = h3.q @ conj_transpose(h3.q) + h3.p @ conj_transpose(h3.p)
    assert fro_norm(gram - eye2) <= 1e-10


def test_hs_decompose_unitary(rng):
    q, _ = np.linalg.qr(random_complex(rng, 4, 4))
    h = hs_decompose(q)
    assert h.r == 4
    assert h.p.shape == (4, 0)
    assert np.allclose(h.sigma, 1.0, atol=1e-12)
    assert fro_norm(h.q @ conj_transpose(h.q) - np.eye(4)) <= 1e-10


def test_hs_decompose_errors():
    with pytest.raises(ZeroMatrixError):
        hs_decompose(np.zeros((3, 3), dtype=complex))
    with pytest.raises(ValueError):
        hs_decompose(np.ones((2, 3), dtype=complex))


def test_hs_reconstruct_random(rng):
    for _ in range(40):
        n = int(rng.integers(1, 8))
        a = random_complex(rng, n, n)
        h = hs_decompose(a)
        assert diff_norm(hs_reconstruct(h), a) <= 1e-9 * (1 + fro_norm(a))
        gram = h.q @ conj_transpose(h.q) + h.p @ conj_transpose(h.p)
        assert fro_norm(gram - np.eye(h.r)) <= 1e-9


def _block_form(h, top_left, top_right):
    n = h.u.shape[0]
    out = np.zeros((n, n), dtype=complex)
    out[: h.r, : h.r] = top_left
    out[: h.r, h.r :] = top_right
    return h.u @ out @ conj_transpose(h.u)


def test_block_forms_of_pinv_and_drazin(rng):
    for _ in range(40):
        n = int(rng.integers(2, 7))
        a = random_complex(rng, n, n)
        if rng.random() < 0.5:
            r = int(rng.integers(1, n + 1))
            a = random_complex(rng, n, r) @ random_complex(rng, r, n)
        h = hs_decompose(a)
        sig_inv = np.diag(1.0 / h.sigma).astype(complex)
        mp_block = np.zeros((n, n), dtype=complex)
        mp_block[:, : h.r] = np.vstack([conj_transpose(h.q) @ sig_inv,
                                        conj_transpose(h.p) @ sig_inv])
        assert approx_eq(pinv(a), h.u @ mp_block @ conj_transpose(h.u))
        core_d = drazin(h.core)
        d_form = _block_form(h, core_d, core_d @ core_d @ h.sigma_mat @ h.p)
        assert approx_eq(drazin(a), d_form)


def test_hs_derived_projectors(a1, rng):
    for a in [a1, random_complex(rng, 5, 5),
              random_complex(rng, 5, 2) @ random_complex(rng, 2, 5)]:
        der = hs_derived(hs_decompose(a))
        for proj in (der.delta, der.delta_hat, der.delta_tilde):
            assert fro_norm(proj - conj_transpose(proj)) <= 1e-10 * (1 + fro_norm(proj))
            assert approx_eq(proj @ proj, proj)


def test_hs_derived_nonsingular_core(rng):
    a = random_complex(rng, 4, 4) + 3 * np.eye(4)
    h = hs_decompose(a)
    der = hs_derived(h)
    core_inv = np.linalg.inv(h.core)
    assert approx_eq(der.qhat, h.q @ core_inv)
    assert approx_eq(der.delta, np.eye(h.r, dtype=complex))


def test_block_conditions_conjunction_tracks_core_ep(a1, a3, rng):
    # no single block vanishing is equivalent to core-EP on its own
    # (a3 has P* qhat = 0 yet is not core-EP); the conjunction is
    from geninv import core_ep_block_conditions, is_core_ep as _ce

    samples = [a1, a3, random_complex(rng, 4, 4) + 3 * np.eye(4)]
    samples += gen(EnsembleSpec(size=4, count=10, seed=6, kind="core_ep"))
    for a in samples:
        conds = core_ep_block_conditions(hs_decompose(a))
        assert all(conds) == _ce(a)
    assert not is_core_ep(a3)
    der = hs_derived(hs_decompose(a3))
    assert fro_norm(conj_transpose(hs_decompose(a3).p) @ der.qhat) <= 1e-9


def test_projector_annihilates_coupling_when_it_kills_p(rng):
    # whenever delta P vanishes, P* delta Q must vanish too
    samples = [np.diag([2.0, 0.0]).astype(complex),
               random_complex(rng, 4, 4) + 3 * np.eye(4)]
    samples += gen(EnsembleSpec(size=4, count=10, seed=5, kind="ep"))
    triggered = 0
    for a in samples:
        h = hs_decompose(a)
        der = hs_derived(h)
        if fro_norm(der.delta @ h.p) <= 1e-10:
            triggered += 1
            assert fro_norm(conj_transpose(h.p) @ der.delta @ h.q) <= 1e-9
    assert triggered >= 3


def test_rank_cutoff_override(a1):
    # an absurdly large cutoff factor collapses everything to rank zero
    loose = Tolerance(rank_rel=10.0)
    assert numerical_rank(a1, loose) == 0


def test_svd_iteration_budget(rng):
    from geninv import SvdConvergenceError

    a = random_complex(rng, 4, 4)
    with pytest.raises(SvdConvergenceError):
        svd(a, max_sweeps=0)
