import numpy as np
import pytest

from dscat.curve import CurveParams, CurvePoint, PathSpec, base_point, canonical_paths
from dscat.errors import DomainError, StepLimitExceeded
from dscat.monodromy import direct_loop_holonomy
from dscat.transport import (
    DEFAULT_CONFIG,
    IntegratorConfig,
    alpha_matrix,
    integrate_frame,
    reference_frame,
    scalar_ode_residual,
)


def test_alpha_matrix_at_base():
    alpha = alpha_matrix(base_point(+1), 1.0)
    assert np.allclose(alpha, np.array([[1, -1], [1, -1]]))


def test_alpha_matrix_structure():
    rng = np.random.default_rng(3)
    for _ in range(10):
        w = complex(rng.normal(), rng.normal())
        if abs(w) < 0.1:
            continue
        c = float(rng.normal())
        alpha = alpha_matrix(CurvePoint(0.3 + 0.2j, w), c)
        assert alpha[0, 0] + alpha[1, 1] == 0  # exactly trace free
        det = alpha[0, 0] * alpha[1, 1] - alpha[0, 1] * alpha[1, 0]
        assert abs(det) < 1e-14 * max(1.0, abs(c) ** 2)


def test_alpha_rejects_zero_w():
    with pytest.raises(DomainError):
        alpha_matrix(CurvePoint(0.5j, 0j), 1.0)


def test_tiny_c_keeps_frame_constant():
    params = CurveParams(2.0, 1e-14)
    paths = canonical_paths(params)
    state = integrate_frame(paths.c2, params)
    assert np.max(np.abs(state.F - np.eye(2))) < 1e-12


def test_det_preserved_along_path():
    params = CurveParams(2.0, 1.0)
    paths = canonical_paths(params)
    worst = 0.0

    def capture(z, y):
        nonlocal worst
        det = y[0] * y[3] - y[1] * y[2]
        worst = max(worst, abs(det - 1.0))

    state = integrate_frame(paths.c2, params, on_step=capture)
    det_end = state.F[0, 0] * state.F[1, 1] - state.F[0, 1] * state.F[1, 0]
    assert abs(det_end - 1.0) < 1e-9
    assert worst < 1e-9


def test_self_convergence_against_fixed_step():
    params = CurveParams(2.0, -7.6119)
    paths = canonical_paths(params)
    adaptive = integrate_frame(paths.c1, params).F
    reference = reference_frame(paths.c1, params, n_steps=20_000).F
    scale = max(1.0, float(np.max(np.abs(adaptive))))
    assert float(np.max(np.abs(adaptive - reference))) / scale < 1e-8


def test_right_equivariance():
    params = CurveParams(2.0, -1.0)
    paths = canonical_paths(params)
    C = np.array([[2.0, 1.0j], [0.5, 1.0]], dtype=complex)
    C /= np.sqrt(np.linalg.det(C))
    plain = integrate_frame(paths.c1, params).F
    seeded = integrate_frame(paths.c1, params, F0=C).F
    scale = max(1.0, float(np.max(np.abs(seeded))))
    assert float(np.max(np.abs(seeded - plain @ C))) / scale < 1e-8


def test_homotopy_invariance_of_monodromy():
    params = CurveParams(2.0, -1.0)
    paths = canonical_paths(params)
    direct = direct_loop_holonomy(paths.gamma2, params)
    alternative = PathSpec(
        base_point(+1),
        (0j, 1.2 + 1.3j, 4.0 + 0.4j, 4.0 + 0j, 1.8 - 1.1j, 0j),
        closed=True,
    )
    other = direct_loop_holonomy(alternative, params)
    assert float(np.max(np.abs(direct - other))) < 1e-7


def test_scalar_ode_residuals():
    paths = canonical_paths(CurveParams(2.0, 1.0))
    assert scalar_ode_residual(paths.c2, CurveParams(2.0, 1.0), 50) < 1e-8
    assert scalar_ode_residual(paths.c1, CurveParams(2.0, -1.0), 50) < 1e-8


def test_scalar_ode_residual_vanishing_c():
    params = CurveParams(2.0, 1e-14)
    paths = canonical_paths(params)
    assert scalar_ode_residual(paths.c1, params, 20) < 1e-16


def test_step_limit():
    params = CurveParams(2.0, 1.0)
    paths = canonical_paths(params)
    cfg = IntegratorConfig(rel_tol=1e-13, abs_tol=1e-15, max_steps=5)
    with pytest.raises(StepLimitExceeded):
        integrate_frame(paths.gamma1, params, cfg=cfg)


def test_initial_frame_must_be_unimodular():
    params = CurveParams(2.0, 1.0)
    paths = canonical_paths(params)
    with pytest.raises(DomainError):
        integrate_frame(paths.c1, params, F0=np.diag([2.0, 2.0]).astype(complex))


def test_config_validation():
    with pytest.raises(DomainError):
        IntegratorConfig(rel_tol=0.0)
    assert DEFAULT_CONFIG.rel_tol == 1e-10
    assert DEFAULT_CONFIG.abs_tol == 1e-12
