"""Dense complex linear algebra and quadrature primitives.

Everything here is dimension-agnostic and knows nothing about the physical
model; the rest of the package builds on these few routines so that solver
behaviour (tolerances, failure modes, phase conventions) is fixed in one
place.  Backed by LAPACK via numpy/scipy.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateKernelError,
    IllConditionedWarning,
    NoKernelError,
    SingularMatrixError,
    ToleranceNotMetError,
)

__all__ = [
    "CONDITION_CAP",
    "HermitianCheckReport",
    "QuadratureInfo",
    "condition_estimate",
    "hermitian_report",
    "integrate_exp_kernel",
    "null_space_1d",
    "solve_linear",
]

#: Condition-number cap above which solve_linear attaches an advisory warning.
CONDITION_CAP = 1e12

# 15-point Gauss-Legendre rule reused by every quadrature panel.
_GAUSS_X, _GAUSS_W = np.polynomial.legendre.leggauss(15)


def condition_estimate(a, iters: int = 50) -> float:
    """Estimate the 2-norm condition number of a square matrix.

    Power iteration on A^H A gives the largest singular value; inverse
    iteration through an LU factorisation gives the smallest.  Deterministic
    start vector, 50 iterations by default — an estimate, not a guarantee,
    but ample for deciding whether to warn.
    """
    from scipy.linalg import lu_factor, lu_solve

    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    # Fixed, mildly irregular start vector so repeated calls are identical.
    v = np.cos(np.arange(n) + 0.3) + 0.1j * np.sin(2.0 * np.arange(n) + 0.7)
    v /= np.linalg.norm(v)
    for _ in range(iters):
        v = a.conj().T @ (a @ v)
        nv = np.linalg.norm(v)
        if nv == 0.0:
            return np.inf
        v /= nv
    sigma_max = np.sqrt(np.linalg.norm(a.conj().T @ (a @ v)))

    try:
        lu, piv = lu_factor(a)
    except ValueError:
        return np.inf
    w = np.sin(np.arange(n) + 1.1) - 0.2j * np.cos(3.0 * np.arange(n))
    w /= np.linalg.norm(w)
    for _ in range(iters):
        # (A^H A)^{-1} w  =  A^{-1} A^{-H} w
        w = lu_solve((lu, piv), lu_solve((lu, piv), w, trans=2))
        nw = np.linalg.norm(w)
        if not np.isfinite(nw) or nw == 0.0:
            return np.inf
        w /= nw
    inv_norm_sq = np.linalg.norm(
        lu_solve((lu, piv), lu_solve((lu, piv), w, trans=2))
    )
    sigma_min = 1.0 / np.sqrt(inv_norm_sq) if inv_norm_sq > 0 else 0.0
    if sigma_min == 0.0:
        return np.inf
    return float(sigma_max / sigma_min)


def solve_linear(a, b, rtol: float = 1e-10):
    """Solve the dense square system a @ x = b.

    Always computes the true residual; one step of iterative refinement is
    attempted before giving up.  If the condition estimate exceeds
    CONDITION_CAP an IllConditionedWarning is attached and the (possibly
    inaccurate) solution is still returned, matching LAPACK convention that
    ill-conditioning is the caller's problem to interpret.

    Raises SingularMatrixError for rank-deficient systems or when the
    residual cannot be brought under ``rtol * ||b||``.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("solve_linear expects a square matrix")
    try:
        x = np.linalg.solve(a, b)
    except np.linalg.LinAlgError as exc:
        raise SingularMatrixError(str(exc)) from exc

    bnorm = np.linalg.norm(b)
    floor = max(bnorm, np.finfo(float).tiny)
    residual = np.linalg.norm(a @ x - b)
    if residual > rtol * floor:
        # One refinement step fixes most marginal cases cheaply.
        x = x + np.linalg.solve(a, b - a @ x)
        residual = np.linalg.norm(a @ x - b)

    cond = condition_estimate(a)
    if cond > CONDITION_CAP:
        warnings.warn(
            f"condition estimate {cond:.3e} exceeds {CONDITION_CAP:.1e}; "
            "solution may be inaccurate",
            IllConditionedWarning,
            stacklevel=2,
        )
        return x
    if residual > rtol * floor:
        raise SingularMatrixError(
            f"residual {residual:.3e} above {rtol:.1e} * ||b|| with "
            f"condition estimate {cond:.3e}"
        )
    return x


def null_space_1d(a, rel_tol: float = 1e-8):
    """Return the one-dimensional numerical null space of a square matrix.

    The kernel vector is the right singular vector of the smallest singular
    value, which must fall below ``rel_tol * sigma_max`` while the
    second-smallest stays above it.  Phase convention: the entry of largest
    modulus is made real and positive, so results are reproducible across
    LAPACK builds.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("null_space_1d expects a square matrix")
    _, s, vh = np.linalg.svd(a)
    scale = s[0] if s[0] > 0.0 else 1.0
    if s[-1] > rel_tol * scale:
        raise NoKernelError(
            f"smallest singular value {s[-1]:.3e} above {rel_tol:.1e} * {scale:.3e}"
        )
    if len(s) > 1 and s[-2] <= rel_tol * scale:
        raise DegenerateKernelError(
            f"second singular value {s[-2]:.3e} also below threshold"
        )
    v = vh[-1].conj()
    k = int(np.argmax(np.abs(v)))
    phase = v[k] / abs(v[k])
    return v / phase


@dataclass(frozen=True)
class QuadratureInfo:
    """Bookkeeping attached to an adaptive quadrature result."""

    panels: int
    tail_bound: float
    tau_max: float


def integrate_exp_kernel(
    f,
    decay: complex,
    abs_tol: float = 1e-10,
    panel_limit: int = 2**20,
    full_output: bool = False,
):
    """Integrate ``exp(-decay * tau) * f(tau)`` over tau in [0, inf).

    ``f`` maps a float to a complex matrix (or scalar array) of fixed shape
    and must stay bounded; ``Re(decay) > 0`` supplies the convergence.  The
    integral is truncated at ``tau_max = 40 / Re(decay)`` — the neglected
    tail is bounded by ``sup||f|| * exp(-40) / Re(decay)`` and reported in
    ``QuadratureInfo`` — and evaluated by adaptive composite Gauss-Legendre
    on dyadically refined panels.  Tolerance is absolute, per entry.

    Raises ToleranceNotMetError once ``panel_limit`` panels are in play.
    """
    decay = complex(decay)
    if decay.real <= 0.0:
        raise ValueError("integrate_exp_kernel requires Re(decay) > 0")
    tau_max = 40.0 / decay.real

    sup_norm = 0.0

    def panel(a: float, b: float):
        nonlocal sup_norm
        mid = 0.5 * (a + b)
        half = 0.5 * (b - a)
        acc = None
        for xg, wg in zip(_GAUSS_X, _GAUSS_W):
            tau = mid + half * xg
            val = np.asarray(f(tau), dtype=complex)
            sup_norm = max(sup_norm, float(np.max(np.abs(val))))
            term = (wg * np.exp(-decay * tau)) * val
            acc = term if acc is None else acc + term
        return half * acc

    whole = panel(0.0, tau_max)
    stack = [(0.0, tau_max, whole)]
    npanels = 1
    result = np.zeros_like(whole)
    while stack:
        a, b, estimate = stack.pop()
        mid = 0.5 * (a + b)
        left = panel(a, mid)
        right = panel(mid, b)
        npanels += 1
        err = float(np.max(np.abs(estimate - (left + right))))
        if err <= abs_tol * (b - a) / tau_max or (b - a) < 1e-14 * tau_max:
            result = result + left + right
            continue
        if npanels >= panel_limit:
            raise ToleranceNotMetError(
                f"panel limit {panel_limit} reached at interval [{a:.3e}, {b:.3e}]"
            )
        stack.append((a, mid, left))
        stack.append((mid, b, right))

    tail = sup_norm * np.exp(-decay.real * tau_max) / decay.real
    if full_output:
        return result, QuadratureInfo(panels=npanels, tail_bound=tail, tau_max=tau_max)
    return result


@dataclass(frozen=True)
class HermitianCheckReport:
    """Hermiticity / positivity / normalisation diagnostics of a matrix."""

    max_asymmetry: float
    min_eigenvalue: float
    trace_deviation: float


def hermitian_report(m) -> HermitianCheckReport:
    """Report max |M - M^H| entrywise, min eig of (M + M^H)/2 and |tr M - 1|."""
    m = np.asarray(m, dtype=complex)
    asym = float(np.max(np.abs(m - m.conj().T)))
    herm = 0.5 * (m + m.conj().T)
    min_eig = float(np.linalg.eigvalsh(herm)[0])
    trace_dev = float(abs(np.trace(m) - 1.0))
    return HermitianCheckReport(asym, min_eig, trace_dev)
