"""Unit tests for the dense linear-algebra and quadrature primitives."""
from __future__ import annotations

import numpy as np
import pytest

from vcavity.errors import (
    DegenerateKernelError,
    IllConditionedWarning,
    NoKernelError,
    SingularMatrixError,
    ToleranceNotMetError,
)
from vcavity.linalg import (
    condition_estimate,
    hermitian_report,
    integrate_exp_kernel,
    null_space_1d,
    solve_linear,
)


def _random_complex(rng, n):
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def test_solve_linear_matches_direct_solve(rng):
    a = _random_complex(rng, 7) + 5.0 * np.eye(7)
    b = rng.standard_normal(7) + 1j * rng.standard_normal(7)
    x = solve_linear(a, b)
    assert np.allclose(a @ x, b, atol=1e-12 * np.linalg.norm(b))
    assert np.allclose(x, np.linalg.solve(a, b))


def test_solve_linear_rejects_singular_matrix():
    a = np.array([[1.0, 2.0], [2.0, 4.0]], dtype=complex)
    with pytest.raises(SingularMatrixError):
        solve_linear(a, np.array([1.0, 0.0]))


def test_solve_linear_rejects_nonsquare():
    with pytest.raises(ValueError):
        solve_linear(np.ones((2, 3)), np.ones(2))


def test_solve_linear_warns_when_ill_conditioned():
    # cond ~ 1e14 exceeds the cap; the solution is still returned
    a = np.diag([1.0, 1e-14]).astype(complex)
    b = np.array([1.0, 1e-14])
    with pytest.warns(IllConditionedWarning):
        x = solve_linear(a, b)
    assert np.allclose(x, [1.0, 1.0])


def test_condition_estimate_diagonal():
    a = np.diag([1.0, 10.0, 1e-3]).astype(complex)
    est = condition_estimate(a)
    assert abs(est / 1e4 - 1.0) < 0.05


def test_null_space_recovers_planted_kernel(rng):
    v = rng.standard_normal(9) + 1j * rng.standard_normal(9)
    v /= np.linalg.norm(v)
    m = _random_complex(rng, 9) + 3.0 * np.eye(9)
    a = m @ (np.eye(9) - np.outer(v, v.conj()))
    k = null_space_1d(a)
    assert np.linalg.norm(a @ k) < 1e-10
    assert abs(abs(np.vdot(v, k)) - 1.0) < 1e-10


def test_null_space_phase_convention(rng):
    v = rng.standard_normal(5) + 1j * rng.standard_normal(5)
    v /= np.linalg.norm(v)
    a = np.eye(5) - np.outer(v, v.conj())
    k = null_space_1d(a)
    top = k[np.argmax(np.abs(k))]
    assert abs(top.imag) < 1e-14
    assert top.real > 0.0


def test_null_space_requires_a_kernel():
    with pytest.raises(NoKernelError):
        null_space_1d(np.eye(4))


def test_null_space_rejects_degenerate_kernel():
    with pytest.raises(DegenerateKernelError):
        null_space_1d(np.diag([1.0, 1.0, 0.0, 0.0]))


def test_integrate_exp_kernel_oscillatory_scalar():
    # int_0^inf e^{-(2 - 3i) tau} dtau = 1 / (2 - 3i)
    val = integrate_exp_kernel(lambda tau: np.exp(3j * tau), 2.0)
    assert abs(val - 1.0 / (2.0 - 3.0j)) < 1e-10


def test_integrate_exp_kernel_matrix_valued():
    def f(tau):
        return np.array([[np.exp(1j * tau), 1.0], [0.0, np.exp(-0.5 * tau)]])

    val = integrate_exp_kernel(f, 1.0)
    want = np.array([[1.0 / (1.0 - 1.0j), 1.0], [0.0, 1.0 / 1.5]])
    assert np.max(np.abs(val - want)) < 1e-10


def test_integrate_exp_kernel_reports_quadrature_info():
    val, info = integrate_exp_kernel(lambda tau: np.exp(5j * tau), 4.0,
                                     full_output=True)
    assert abs(val - 1.0 / (4.0 - 5.0j)) < 1e-10
    assert info.tau_max == 10.0
    assert info.panels >= 2
    assert info.tail_bound < 1e-15


def test_integrate_exp_kernel_needs_decay():
    with pytest.raises(ValueError):
        integrate_exp_kernel(lambda tau: 1.0, -1.0)
    with pytest.raises(ValueError):
        integrate_exp_kernel(lambda tau: 1.0, 2j)


def test_integrate_exp_kernel_panel_limit():
    with pytest.raises(ToleranceNotMetError):
        integrate_exp_kernel(lambda tau: np.exp(1000j * tau), 1.0,
                             panel_limit=4)


def test_hermitian_report_fields():
    m = np.array([[0.5, 0.1j], [0.0, 0.6]], dtype=complex)
    rep = hermitian_report(m)
    assert abs(rep.trace_deviation - 0.1) < 1e-15
    assert abs(rep.max_asymmetry - 0.1) < 1e-15
    herm = 0.5 * (m + m.conj().T)
    assert abs(rep.min_eigenvalue - np.linalg.eigvalsh(herm)[0]) < 1e-15


def test_hermitian_report_clean_density_matrix():
    rho = np.diag([0.2, 0.3, 0.5]).astype(complex)
    rep = hermitian_report(rho)
    assert rep.max_asymmetry == 0.0
    assert rep.trace_deviation < 1e-15
    assert rep.min_eigenvalue >= 0.2 - 1e-15
