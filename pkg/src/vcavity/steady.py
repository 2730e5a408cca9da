"""Steady states of the reduced and full master equations."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateKernelError, NonPositiveStateError
from .linalg import hermitian_report, null_space_1d
from .model import (
    FullLiouvillian,
    ReducedLiouvillian,
    SystemParams,
    atom_marginal,
    dressed_scalars,
    reduced_liouvillian,
    unvec,
    vec,
)

__all__ = [
    "FullSteadyState",
    "PopulationSweep",
    "SteadyState",
    "default_delta_grid",
    "full_steady_state",
    "steady_state",
    "steady_state_for",
    "sweep_populations",
]


@dataclass(frozen=True)
class SteadyState:
    """Steady density matrix of the reduced model plus solve diagnostics."""

    rho: np.ndarray
    residual: float
    params: SystemParams

    @property
    def populations(self):
        return np.real(np.diag(self.rho))


def _kernel_state(matrix):
    """Trace-normalised density matrix spanning the generator's kernel."""
    v = null_space_1d(matrix)
    rho = unvec(v)
    tr = np.trace(rho)
    if abs(tr) < 1e-6:
        raise DegenerateKernelError(
            f"kernel vector is traceless (|tr| = {abs(tr):.3e}); not a state"
        )
    rho = rho / tr
    residual = float(np.linalg.norm(matrix @ vec(rho)))
    report = hermitian_report(rho)
    if report.min_eigenvalue < -1e-8:
        raise NonPositiveStateError(
            f"minimum eigenvalue {report.min_eigenvalue:.3e} below -1e-8"
        )
    return rho, residual


def steady_state(liouv: ReducedLiouvillian) -> SteadyState:
    """Unique steady state of a reduced Liouvillian.

    The kernel is found by SVD and normalised to unit trace; positivity is
    enforced only up to -1e-8 on the minimum eigenvalue, anything worse
    raising NonPositiveStateError rather than being silently clipped.
    """
    rho, residual = _kernel_state(liouv.matrix)
    rho.setflags(write=False)
    return SteadyState(rho=rho, residual=residual, params=liouv.params)


def steady_state_for(p: SystemParams, variant: str = "corrected") -> SteadyState:
    """Convenience wrapper: build the reduced generator and solve it."""
    return steady_state(reduced_liouvillian(p, variant=variant))


@dataclass(frozen=True)
class FullSteadyState:
    """Steady state of the full atom + cavity model."""

    rho: np.ndarray
    atom: np.ndarray
    mean_photons: float
    residual: float
    n_max: int


def full_steady_state(liouv: FullLiouvillian) -> FullSteadyState:
    rho, residual = _kernel_state(liouv.matrix)
    atom = atom_marginal(rho, liouv.n_max)
    nc = liouv.n_max + 1
    n_op = np.kron(np.eye(3), np.diag(np.arange(nc, dtype=float)))
    mean_photons = float(np.real(np.trace(n_op @ rho)))
    return FullSteadyState(
        rho=rho, atom=atom, mean_photons=mean_photons,
        residual=residual, n_max=liouv.n_max,
    )


@dataclass(frozen=True)
class PopulationSweep:
    """Bare-basis steady-state observables on a cavity-detuning grid.

    Failed points keep their grid slot as NaN rows and are listed in
    ``failures`` as (index, exception-name) pairs; a sweep never aborts on a
    single bad point.
    """

    detunings: np.ndarray
    rho00: np.ndarray
    rho11: np.ndarray
    rho22: np.ndarray
    rho10: np.ndarray
    rho20: np.ndarray
    rho21: np.ndarray
    residuals: np.ndarray
    params: SystemParams
    failures: list = field(default_factory=list)


def default_delta_grid(p: SystemParams, n: int = 801, span: float = 4.0):
    """Symmetric detuning grid covering ``span`` generalised Rabi widths."""
    w_r = dressed_scalars(p).omega_R
    return np.linspace(-span * w_r, span * w_r, n)


def sweep_populations(
    p: SystemParams,
    delta_grid,
    variant: str = "corrected",
    threads: int = 1,
) -> PopulationSweep:
    """Solve the reduced steady state at every detuning of ``delta_grid``."""
    delta_grid = np.asarray(delta_grid, dtype=float)
    n = delta_grid.size
    out = {name: np.full(n, np.nan) for name in ("p0", "p1", "p2", "res")}
    coh = {name: np.full(n, np.nan, dtype=complex) for name in ("c10", "c20", "c21")}
    failures: list = []

    def solve_one(i):
        ss = steady_state_for(p.with_delta(delta_grid[i]), variant=variant)
        return i, ss

    def record(i, ss):
        out["p0"][i], out["p1"][i], out["p2"][i] = ss.populations
        coh["c10"][i] = ss.rho[1, 0]
        coh["c20"][i] = ss.rho[2, 0]
        coh["c21"][i] = ss.rho[2, 1]
        out["res"][i] = ss.residual

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            def guarded(i):
                try:
                    return solve_one(i)
                except Exception as exc:  # recorded per point below
                    return i, exc
            for i, result in pool.map(guarded, range(n)):
                if isinstance(result, Exception):
                    failures.append((i, type(result).__name__))
                else:
                    record(i, result)
    else:
        for i in range(n):
            try:
                _, ss = solve_one(i)
            except Exception as exc:
                failures.append((i, type(exc).__name__))
                continue
            record(i, ss)

    return PopulationSweep(
        detunings=delta_grid,
        rho00=out["p0"], rho11=out["p1"], rho22=out["p2"],
        rho10=coh["c10"], rho20=coh["c20"], rho21=coh["c21"],
        residuals=out["res"], params=p, failures=failures,
    )
