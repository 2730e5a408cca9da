"""Dressed-state basis, cavity-modified transition rates and populations.

The drive mixes the bare levels into dressed states ``|a>, |b>, |c>`` with
energies ``-omega_R, 0, +omega_R``.  In the secular (high-field) regime the
populations obey closed rate equations whose rates pick up cavity Lorentzian
factors

    R(x) = kappa**2 / (kappa**2 + (delta + x)**2)
    I(x) = kappa  * (delta + x) / (kappa**2 + (delta + x)**2)

evaluated at the dressed transition frequencies ``0, +-omega_R, +-2 omega_R``.
Tuning the cavity to a lower (negative-frequency) dressed sideband enhances
decay *into* the higher dressed level, which is what produces population
accumulation and, eventually, probe gain.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import SecularValidityWarning, SingularRateMatrixError, VCavityError
from .model import DressedScalars, SystemParams, atom_hamiltonian, dressed_scalars
from .steady import SteadyState

__all__ = [
    "DressedBasis",
    "DressedPopulations",
    "SecularRates",
    "TransitionRates",
    "dressed_basis",
    "dressed_populations_exact",
    "dressed_populations_rate_eq",
    "secular_rates",
    "transition_rates",
]


@dataclass(frozen=True)
class DressedBasis:
    """Columns of ``vectors`` are |a>, |b>, |c> in the bare basis."""

    vectors: np.ndarray
    eigenvalues: np.ndarray
    scalars: DressedScalars


def dressed_basis(p: SystemParams) -> DressedBasis:
    """Closed-form dressed basis, verified against the Hamiltonian.

    The coefficient formulas are exact; as a guard against sign/ordering
    slips the assembled basis is checked to diagonalise H to 1e-8 (times the
    energy scale) and to be unitary, aborting on mismatch.
    """
    ds = dressed_scalars(p)
    eta, eps = ds.eta, ds.epsilon
    v = np.array(
        [
            [2.0 * eta, eps, 2.0 * eta],
            [-(1.0 + eps) / 2.0, 2.0 * eta, (1.0 - eps) / 2.0],
            [-(1.0 - eps) / 2.0, -2.0 * eta, (1.0 + eps) / 2.0],
        ],
        dtype=complex,
    )
    evals = np.array([-ds.omega_R, 0.0, ds.omega_R])
    h = atom_hamiltonian(p)
    scale = max(ds.omega_R, 1.0)
    defect = np.max(np.abs(h @ v - v @ np.diag(evals))) / scale
    ortho = np.max(np.abs(v.conj().T @ v - np.eye(3)))
    if defect > 1e-8 or ortho > 1e-8:
        raise VCavityError(
            f"dressed basis failed verification (defect {defect:.3e}, "
            f"orthonormality {ortho:.3e})"
        )
    v.setflags(write=False)
    return DressedBasis(vectors=v, eigenvalues=evals, scalars=ds)


def _lorentz_r(p: SystemParams, x: float) -> float:
    return p.kappa**2 / (p.kappa**2 + (p.delta + x) ** 2)


def _lorentz_i(p: SystemParams, x: float) -> float:
    return p.kappa * (p.delta + x) / (p.kappa**2 + (p.delta + x) ** 2)


@dataclass(frozen=True)
class TransitionRates:
    """Incoherent population-transfer rates between dressed levels.

    ``R_xy`` moves population from ``|x>`` to ``|y>``.  ``R_ba`` and ``R_bc``
    carry no cavity contribution at all; the others split into a free-space
    part and a cavity part weighted by the Lorentzian at the transition
    frequency.  ``secular_advisory`` flags parameter sets where
    ``omega_R < 10 max(gamma, gamma_c)`` and the rate picture is marginal.
    """

    R_ab: float
    R_ba: float
    R_ac: float
    R_ca: float
    R_bc: float
    R_cb: float
    secular_advisory: bool


def transition_rates(p: SystemParams) -> TransitionRates:
    ds = dressed_scalars(p)
    e2 = ds.epsilon**2
    h2 = ds.eta**2
    g, gc = p.gamma, p.gamma_c
    w_r = ds.omega_R

    free_b_down = 0.5 * g * (1.0 - e2) ** 2            # b -> a and b -> c
    free_up = 0.5 * g * (1.0 + e2) * e2                # a -> b and c -> b
    free_across = 0.25 * g * (1.0 - e2 * e2)           # a <-> c

    advisory = w_r < 10.0 * max(g, gc)
    if advisory:
        warnings.warn(
            f"omega_R = {w_r:g} is not much larger than max(gamma, gamma_c) = "
            f"{max(g, gc):g}; secular rates are marginal",
            SecularValidityWarning,
            stacklevel=2,
        )

    return TransitionRates(
        R_ab=free_up + gc * e2 * _lorentz_r(p, w_r),
        R_ba=free_b_down,
        R_ac=free_across + 4.0 * gc * h2 * _lorentz_r(p, 2.0 * w_r),
        R_ca=free_across + 4.0 * gc * h2 * _lorentz_r(p, -2.0 * w_r),
        R_bc=free_b_down,
        R_cb=free_up + gc * e2 * _lorentz_r(p, -w_r),
        secular_advisory=advisory,
    )


@dataclass(frozen=True)
class DressedPopulations:
    p_aa: float
    p_bb: float
    p_cc: float
    source: str
    secular_advisory: bool = False


def dressed_populations_rate_eq(rates: TransitionRates) -> DressedPopulations:
    """Stationary point of the dressed rate equations (closed form).

    Eliminating ``p_bb = 1 - p_aa - p_cc`` leaves a 2x2 system whose exact
    solution is the quotient below; it is the kernel of the 3x3 rate matrix,
    which the test suite verifies against an SVD solve on random rates.
    """
    r = rates
    den = (r.R_ab + r.R_ac + r.R_ba) * (r.R_ca + r.R_cb + r.R_bc) - (
        r.R_ca - r.R_ba
    ) * (r.R_ac - r.R_bc)
    if abs(den) < 1e-14:
        raise SingularRateMatrixError(f"rate-equation denominator {den:.3e}")
    p_aa = (r.R_ba * (r.R_ca + r.R_cb + r.R_bc) + r.R_bc * (r.R_ca - r.R_ba)) / den
    p_cc = (r.R_ba * (r.R_ac - r.R_bc) + r.R_bc * (r.R_ab + r.R_ac + r.R_ba)) / den
    return DressedPopulations(
        p_aa=float(p_aa),
        p_bb=float(1.0 - p_aa - p_cc),
        p_cc=float(p_cc),
        source="rate-equation",
        secular_advisory=rates.secular_advisory,
    )


def dressed_populations_exact(ss: SteadyState, basis: DressedBasis | None = None) -> DressedPopulations:
    """Dressed populations of a numerically exact steady state."""
    if basis is None:
        basis = dressed_basis(ss.params)
    v = basis.vectors
    diag = np.real(np.diag(v.conj().T @ ss.rho @ v))
    return DressedPopulations(
        p_aa=float(diag[0]), p_bb=float(diag[1]), p_cc=float(diag[2]),
        source="exact",
    )


@dataclass(frozen=True)
class SecularRates:
    """Decay constants and shifts of the secular spectral components.

    Gamma_1a/b and Gamma_2a/b govern the central component, Gamma_3a/b with
    shifts Omega_3/4 and the cross term Gamma_4 the inner sidebands, Gamma_5
    with shift Omega_5 the outer ones.  Gamma_4 is always <= 0.  The
    published Gamma_5 carries a stray inner ``4 eta**2`` factor that breaks
    the delta -> -delta symmetry of the outer linewidth; the "corrected"
    variant drops it.
    """

    Gamma_1a: float
    Gamma_1b: float
    Gamma_2a: float
    Gamma_2b: float
    Gamma_3a: float
    Gamma_3b: float
    Gamma_4: float
    Gamma_5: float
    Omega_3: float
    Omega_4: float
    Omega_5: float
    variant: str


def secular_rates(p: SystemParams, variant: str = "corrected") -> SecularRates:
    ds = dressed_scalars(p)
    e2 = ds.epsilon**2
    h2 = ds.eta**2
    g, gc = p.gamma, p.gamma_c
    w_r = ds.omega_R

    def r(x):
        return _lorentz_r(p, x)

    def i(x):
        return _lorentz_i(p, x)

    gamma_1_free = 0.25 * g * (3.0 - 2.0 * e2 + 3.0 * e2 * e2)
    gamma_2_free = 0.5 * g * (1.0 - e2) * (3.0 * e2 - 1.0)
    gamma_3_free = 0.25 * g * (3.0 + e2 - 2.0 * e2 * e2)

    if variant == "corrected":
        outer_bracket = 4.0 * h2 * (r(2.0 * w_r) + r(-2.0 * w_r))
    elif variant == "paper-exact":
        outer_bracket = 4.0 * h2 * (r(2.0 * w_r) + 4.0 * h2 * r(-2.0 * w_r))
    else:
        raise ValueError(f"unknown secular variant {variant!r}")

    return SecularRates(
        Gamma_1a=gamma_1_free + gc * (e2 * r(w_r) + 4.0 * h2 * r(2.0 * w_r)),
        Gamma_1b=gamma_1_free + gc * (e2 * r(-w_r) + 4.0 * h2 * r(-2.0 * w_r)),
        Gamma_2a=gamma_2_free + 4.0 * gc * h2 * r(-2.0 * w_r),
        Gamma_2b=gamma_2_free + 4.0 * gc * h2 * r(2.0 * w_r),
        Gamma_3a=gamma_3_free
        + 0.5 * gc * (4.0 * h2 * r(0.0) + e2 * r(w_r) + 4.0 * h2 * r(2.0 * w_r)),
        Gamma_3b=gamma_3_free
        + 0.5 * gc * (4.0 * h2 * r(0.0) + e2 * r(-w_r) + 4.0 * h2 * r(-2.0 * w_r)),
        Gamma_4=-0.5 * g * e2 * (1.0 - e2),
        Gamma_5=0.25 * g * (3.0 + e2 * e2)
        + 0.5 * gc * (16.0 * h2 * r(0.0) + e2 * (r(w_r) + r(-w_r)) + outer_bracket),
        Omega_3=w_r + 0.5 * gc * (4.0 * h2 * i(0.0) + e2 * i(w_r) + 4.0 * h2 * i(2.0 * w_r)),
        Omega_4=w_r + 0.5 * gc * (4.0 * h2 * i(0.0) + e2 * i(-w_r) + 4.0 * h2 * i(-2.0 * w_r)),
        Omega_5=2.0 * w_r
        + 0.5 * gc * (e2 * (i(w_r) - i(-w_r)) + 4.0 * h2 * (i(2.0 * w_r) - i(-2.0 * w_r))),
        variant=variant,
    )
