"""Dressed-basis, transition-rate and secular-constant tests."""
from __future__ import annotations

import warnings
from fractions import Fraction

import numpy as np
import pytest

from vcavity import (
    SystemParams,
    TransitionRates,
    atom_hamiltonian,
    dressed_basis,
    dressed_populations_exact,
    dressed_populations_rate_eq,
    dressed_scalars,
    secular_rates,
    steady_state_for,
    transition_rates,
)
from vcavity.errors import SecularValidityWarning, SingularRateMatrixError

# deep-secular frame set used for the pinned rate values below
_PINNED = SystemParams(gamma=1.0, g=20.0, kappa=100.0, omega21=200.0, rabi=50.0)


def _quiet_rates(p):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SecularValidityWarning)
        return transition_rates(p)


def test_dressed_basis_diagonalises_hamiltonian(rng):
    for _ in range(50):
        p = SystemParams(omega21=float(10.0 ** rng.uniform(-1, 3)),
                         rabi=float(10.0 ** rng.uniform(-1, 3)))
        basis = dressed_basis(p)
        v = basis.vectors
        h = atom_hamiltonian(p)
        assert np.max(np.abs(v.conj().T @ v - np.eye(3))) < 1e-12
        recon = v @ np.diag(basis.eigenvalues) @ v.conj().T
        assert np.max(np.abs(recon - h)) < 1e-10 * max(basis.scalars.omega_R, 1.0)


def test_dressed_energies_ordering():
    basis = dressed_basis(SystemParams(omega21=10.0, rabi=100.0))
    w_r = basis.scalars.omega_R
    assert np.allclose(basis.eigenvalues, [-w_r, 0.0, w_r])


def test_middle_state_decouples_from_drive():
    # |b> has no weight change under the drive: its bare-excited components
    # are equal and opposite
    basis = dressed_basis(SystemParams(omega21=30.0, rabi=20.0))
    b = basis.vectors[:, 1]
    assert abs(b[1] + b[2]) < 1e-14


def test_central_secular_rate_exact_value():
    """Gamma_3a at the pinned frame set is the rational 3179/1260."""
    sr = secular_rates(_PINNED)
    want = float(Fraction(3179, 1260))
    assert abs(sr.Gamma_3a - want) < 1e-12


def test_secular_rate_argument_swap_identity():
    # moving the cavity to the upper outer sideband reproduces the
    # delta = 0 inner value with the roles of the two branches swapped
    w_r = dressed_scalars(_PINNED).omega_R
    at_outer = secular_rates(_PINNED.with_delta(2.0 * w_r))
    at_zero = secular_rates(_PINNED)
    assert abs(at_outer.Gamma_3b - at_zero.Gamma_3a) < 1e-12


def test_secular_rates_pinned_values():
    # regression pins at the sideband-tuned frames (six digits)
    w_r = dressed_scalars(_PINNED).omega_R
    inner = secular_rates(_PINNED.with_delta(w_r))
    outer = secular_rates(_PINNED.with_delta(2.0 * w_r))
    assert abs(inner.Gamma_3a - 1.388041) < 1e-6
    assert abs(inner.Gamma_3b - 3.894444) < 1e-6
    assert abs(outer.Gamma_3a - 1.000257) < 1e-6


def test_secular_variants_differ_only_in_outer_linewidth():
    p = _PINNED.with_delta(-100.0)
    a = secular_rates(p, variant="corrected")
    b = secular_rates(p, variant="paper-exact")
    for name in ("Gamma_1a", "Gamma_1b", "Gamma_2a", "Gamma_2b",
                 "Gamma_3a", "Gamma_3b", "Gamma_4",
                 "Omega_3", "Omega_4", "Omega_5"):
        assert getattr(a, name) == getattr(b, name)
    assert a.Gamma_5 != b.Gamma_5
    with pytest.raises(ValueError):
        secular_rates(p, variant="nope")


def test_corrected_outer_linewidth_is_detuning_symmetric():
    # Gamma_5(delta) == Gamma_5(-delta) holds for the corrected variant and
    # fails for the published one (its stray inner factor breaks mirror
    # symmetry)
    for delta in (60.0, 123.0, 250.0):
        up = secular_rates(_PINNED.with_delta(delta))
        dn = secular_rates(_PINNED.with_delta(-delta))
        assert abs(up.Gamma_5 - dn.Gamma_5) < 1e-12
        up_p = secular_rates(_PINNED.with_delta(delta), variant="paper-exact")
        dn_p = secular_rates(_PINNED.with_delta(-delta), variant="paper-exact")
        assert abs(up_p.Gamma_5 - dn_p.Gamma_5) > 1e-3


def test_cross_damping_is_nonpositive():
    for rabi in (5.0, 50.0, 500.0):
        sr = secular_rates(SystemParams(omega21=100.0, rabi=rabi))
        assert sr.Gamma_4 <= 0.0


def test_transition_rate_mirror_symmetry():
    # flipping the cavity detuning swaps each rate with its mirror partner
    for delta in (0.0, 45.0, 122.5, 300.0):
        up = _quiet_rates(_PINNED.with_delta(delta))
        dn = _quiet_rates(_PINNED.with_delta(-delta))
        assert abs(up.R_ab - dn.R_cb) < 1e-12
        assert abs(up.R_ac - dn.R_ca) < 1e-12
        assert up.R_ba == up.R_bc  # no cavity term at all on these


def test_rate_populations_match_kernel_of_rate_matrix(rng):
    """Closed-form stationary populations vs an SVD kernel solve."""
    for _ in range(200):
        vals = 10.0 ** rng.uniform(-2.0, 1.0, size=6)
        rates = TransitionRates(*vals, secular_advisory=False)
        pops = dressed_populations_rate_eq(rates)
        assert pops.p_aa >= 0.0 and pops.p_bb >= 0.0 and pops.p_cc >= 0.0
        assert abs(pops.p_aa + pops.p_bb + pops.p_cc - 1.0) < 1e-12

        r = rates
        m = np.array([
            [-(r.R_ab + r.R_ac), r.R_ba, r.R_ca],
            [r.R_ab, -(r.R_ba + r.R_bc), r.R_cb],
            [r.R_ac, r.R_bc, -(r.R_ca + r.R_cb)],
        ])
        _, _, vh = np.linalg.svd(m)
        k = vh[-1].real
        k /= k.sum()
        assert np.max(np.abs(np.array([pops.p_aa, pops.p_bb, pops.p_cc]) - k)) < 1e-10


def test_rate_populations_reject_degenerate_system():
    rates = TransitionRates(0.0, 0.0, 0.0, 0.0, 0.0, 0.0, secular_advisory=False)
    with pytest.raises(SingularRateMatrixError):
        dressed_populations_rate_eq(rates)


def test_exact_and_rate_populations_agree_in_secular_regime():
    p = SystemParams(omega21=200.0, rabi=200.0, delta=300.0)
    exact = dressed_populations_exact(steady_state_for(p))
    rate = dressed_populations_rate_eq(_quiet_rates(p))
    for name in ("p_aa", "p_bb", "p_cc"):
        assert abs(getattr(exact, name) - getattr(rate, name)) < 5e-3
    assert exact.source == "exact"
    assert rate.source == "rate-equation"


def test_middle_state_hoards_at_large_splitting():
    # R_b-out ~ (1 - eps^2)^2 collapses as eps -> 1, so |b> hoards population
    # when the splitting dominates the drive; strong driving empties it
    big_split = dressed_populations_rate_eq(_quiet_rates(_PINNED))
    assert big_split.p_bb > big_split.p_aa and big_split.p_bb > big_split.p_cc
    strong_drive = dressed_populations_rate_eq(
        _quiet_rates(SystemParams(omega21=10.0, rabi=100.0)))
    assert strong_drive.p_bb < strong_drive.p_aa


def test_secular_advisory_warns_for_weak_drive():
    with pytest.warns(SecularValidityWarning):
        rates = transition_rates(SystemParams(omega21=10.0, rabi=20.0))
    assert rates.secular_advisory
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        rates = transition_rates(SystemParams(omega21=200.0, rabi=200.0))
    assert not rates.secular_advisory
