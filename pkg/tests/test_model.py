"""Model assembly tests: dressing scalars, the filtered lowering operator
and its quadrature oracle, and the reduced / full Liouvillians."""
from __future__ import annotations

import numpy as np
import pytest

from vcavity import (
    SystemParams,
    atom_hamiltonian,
    dressed_scalars,
    filter_coefficients,
    filtered_lowering_closed,
    filtered_lowering_oracle,
    full_liouvillian,
    lowering_operator,
    reduced_liouvillian,
)
from vcavity.errors import (
    BadCavityWarning,
    DegenerateDressingError,
    DimensionTooLargeError,
)
from vcavity.linalg import null_space_1d
from vcavity.model import (
    _filter_table,
    assemble_filtered_lowering,
    atom_marginal,
    commutator_superop,
    left_mult,
    right_mult,
    sandwich,
    unvec,
    vec,
)

_NO_CAVITY = SystemParams(g=0.0)


# ---------------------------------------------------------------------------
# vectorisation convention
# ---------------------------------------------------------------------------

def test_vec_unvec_roundtrip(rng):
    rho = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    assert np.array_equal(unvec(vec(rho)), rho)
    assert vec(rho)[3 * 1 + 2] == rho[1, 2]


def test_multiplication_superoperators(rng):
    a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    b = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    rho = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    assert np.allclose(unvec(left_mult(a) @ vec(rho)), a @ rho)
    assert np.allclose(unvec(right_mult(b) @ vec(rho)), rho @ b)
    assert np.allclose(unvec(sandwich(a, b) @ vec(rho)), a @ rho @ b)
    comm = unvec(commutator_superop(a) @ vec(rho))
    assert np.allclose(comm, -1j * (a @ rho - rho @ a))


# ---------------------------------------------------------------------------
# dressing scalars and the bare Hamiltonian
# ---------------------------------------------------------------------------

def test_mixing_identity_over_parameter_space(rng):
    # epsilon^2 + 8 eta^2 == 1 for any splitting/drive combination
    for _ in range(500):
        w21 = 10.0 ** rng.uniform(-2, 3)
        rabi = 10.0 ** rng.uniform(-2, 3)
        sc = dressed_scalars(SystemParams(omega21=w21, rabi=rabi))
        assert abs(sc.epsilon**2 + 8.0 * sc.eta**2 - 1.0) < 1e-14
        assert sc.omega_R > 0.0


def test_degenerate_dressing_raises():
    with pytest.raises(DegenerateDressingError):
        dressed_scalars(SystemParams(omega21=0.0, rabi=0.0))


def test_hamiltonian_spectrum_is_symmetric_triplet():
    p = SystemParams(omega21=200.0, rabi=50.0)
    w_r = dressed_scalars(p).omega_R
    evals = np.linalg.eigvalsh(atom_hamiltonian(p))
    assert np.allclose(evals, [-w_r, 0.0, w_r], atol=1e-12 * w_r)


def test_hamiltonian_is_real_symmetric():
    h = atom_hamiltonian(SystemParams(omega21=7.0, rabi=3.0))
    assert np.max(np.abs(h.imag)) == 0.0
    assert np.array_equal(h, h.T)


def test_lowering_operator_entries():
    d = lowering_operator()
    want = np.zeros((3, 3))
    want[0, 1] = want[0, 2] = 1.0
    assert np.array_equal(d, want)


# ---------------------------------------------------------------------------
# filtered lowering operator
# ---------------------------------------------------------------------------

def test_corrected_table_satisfies_flat_limit_row_sums(rng):
    # with all five filter factors -> 1 the operator must collapse to D,
    # i.e. row sums (00,11,22,10,01,20,02,21,12) = (0,0,0,0,1,0,1,0,0)
    want = np.array([0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 1.0, 0.0, 0.0])
    for _ in range(100):
        eta = rng.uniform(0.0, 1.0 / np.sqrt(8.0))
        eps = np.sqrt(1.0 - 8.0 * eta**2)
        sums = _filter_table(eta, eps, "corrected").sum(axis=1)
        assert np.max(np.abs(sums - want)) < 1e-12


def test_published_row_six_breaks_flat_limit(rng):
    # the uncorrected row 6 sums to 8 eta^2 + eps instead of 1
    for _ in range(50):
        eta = rng.uniform(0.05, 1.0 / np.sqrt(8.0) - 0.01)
        eps = np.sqrt(1.0 - 8.0 * eta**2)
        row6 = _filter_table(eta, eps, "paper-exact").sum(axis=1)[6]
        assert abs(row6 - (8.0 * eta**2 + eps)) < 1e-12
        assert abs(row6 - 1.0) > 1e-4


def test_table_variants_differ_only_in_row_six():
    sc = dressed_scalars(SystemParams(omega21=200.0, rabi=50.0))
    diff = (_filter_table(sc.eta, sc.epsilon, "corrected")
            - _filter_table(sc.eta, sc.epsilon, "paper-exact"))
    nz = np.argwhere(np.abs(diff) > 0.0)
    assert {tuple(ij) for ij in nz} == {(6, 1), (6, 2)}
    with pytest.raises(ValueError):
        _filter_table(sc.eta, sc.epsilon, "made-up")


def test_flat_cavity_limit_reduces_to_bare_lowering():
    p = SystemParams(kappa=1e9, omega21=200.0, rabi=50.0, g=0.0)
    s = filtered_lowering_closed(p)
    assert np.max(np.abs(s - lowering_operator())) < 1e-5


def test_undriven_filter_is_a_pair_of_lorentzians():
    # with the drive off the Heisenberg dyads rotate at -+omega21/2 only
    p = SystemParams(g=20.0, kappa=100.0, omega21=10.0, rabi=0.0)
    for s in (filtered_lowering_closed(p), filtered_lowering_oracle(p)):
        k, w = p.kappa, p.omega21
        assert abs(s[0, 1] - k / (k + 0.5j * w)) < 1e-9
        assert abs(s[0, 2] - k / (k - 0.5j * w)) < 1e-9
        rest = s.copy()
        rest[0, 1] = rest[0, 2] = 0.0
        assert np.max(np.abs(rest)) < 1e-12


def test_closed_form_matches_quadrature_oracle():
    p = SystemParams(kappa=100.0, omega21=200.0, rabi=50.0)
    closed = filtered_lowering_closed(p)
    oracle = filtered_lowering_oracle(p)
    assert np.max(np.abs(closed - oracle)) < 1e-8


def test_assemble_accepts_bare_coefficient_sequence():
    p = SystemParams(omega21=30.0, rabi=12.0, delta=40.0)
    coeffs = filter_coefficients(p)
    assert coeffs.source == "closed-corrected"
    assert np.array_equal(assemble_filtered_lowering(coeffs),
                          assemble_filtered_lowering(coeffs.values))


# ---------------------------------------------------------------------------
# reduced Liouvillian
# ---------------------------------------------------------------------------

def test_reduced_generator_preserves_trace():
    for delta in (0.0, 150.0, -80.0):
        l_mat = reduced_liouvillian(SystemParams(delta=delta)).matrix
        # d(tr rho)/dt = sum of the three diagonal rows acting on any rho
        assert np.max(np.abs(l_mat[0] + l_mat[4] + l_mat[8])) < 1e-12


def test_reduced_generator_preserves_hermiticity(rng):
    l_mat = reduced_liouvillian(SystemParams(omega21=200.0, rabi=100.0,
                                             delta=77.0)).matrix
    m = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    rho = m + m.conj().T
    out = unvec(l_mat @ vec(rho))
    assert np.max(np.abs(out - out.conj().T)) < 1e-12


def test_reduced_generator_is_stable():
    l_mat = reduced_liouvillian(SystemParams(omega21=10.0, rabi=10.0)).matrix
    evals = np.linalg.eigvals(l_mat)
    nonzero = evals[np.abs(evals) > 1e-10]
    assert len(nonzero) == 8
    assert np.max(nonzero.real) < -1e-2


def test_undriven_uncoupled_atom_decays_to_ground():
    # gamma_c = 0 and rabi = 0: the kernel is vec(|0><0|)
    l_mat = reduced_liouvillian(SystemParams(g=0.0, rabi=0.0)).matrix
    k = null_space_1d(l_mat)
    want = np.zeros(9)
    want[0] = 1.0
    assert np.max(np.abs(k - want)) < 1e-12


def test_uncoupled_limit_is_free_space_optical_bloch():
    """g = 0 must reproduce the standard driven V-atom Lindblad generator,
    assembled here entry by entry without the superoperator helpers."""
    p = SystemParams(g=0.0, omega21=20.0, rabi=15.0)
    h = atom_hamiltonian(p)
    a01 = np.zeros((3, 3), dtype=complex)
    a01[0, 1] = 1.0
    a02 = np.zeros((3, 3), dtype=complex)
    a02[0, 2] = 1.0

    def action(rho):
        out = -1j * (h @ rho - rho @ h)
        for l_op in (a01, a02):
            ldl = l_op.conj().T @ l_op
            out = out + p.gamma * (l_op @ rho @ l_op.conj().T
                                   - 0.5 * (ldl @ rho + rho @ ldl))
        return out

    fixture = np.zeros((9, 9), dtype=complex)
    for i in range(3):
        for j in range(3):
            e = np.zeros((3, 3), dtype=complex)
            e[i, j] = 1.0
            fixture[:, 3 * i + j] = action(e).reshape(-1)

    got = reduced_liouvillian(p).matrix
    assert np.max(np.abs(got - fixture)) < 1e-13


def test_injected_filter_matrix_is_used():
    p = SystemParams(omega21=200.0, rabi=50.0)
    oracle = filtered_lowering_oracle(p)
    li = reduced_liouvillian(p, s_matrix=oracle)
    assert li.s_source == "injected"
    closed = reduced_liouvillian(p)
    assert np.max(np.abs(li.matrix - closed.matrix)) < 1e-6


def test_warns_outside_overdamped_regime():
    with pytest.warns(BadCavityWarning):
        reduced_liouvillian(SystemParams(g=50.0, kappa=100.0))


# ---------------------------------------------------------------------------
# full model
# ---------------------------------------------------------------------------

def test_full_liouvillian_dimensions():
    li = full_liouvillian(SystemParams(), n_max=3)
    assert li.dim == 12
    assert li.matrix.shape == (144, 144)
    assert li.n_max == 3


def test_full_liouvillian_truncation_bounds():
    with pytest.raises(DimensionTooLargeError):
        full_liouvillian(SystemParams(), n_max=21)
    with pytest.raises(DimensionTooLargeError):
        full_liouvillian(SystemParams(), n_max=-1)


def test_full_generator_preserves_trace():
    li = full_liouvillian(SystemParams(omega21=10.0, rabi=10.0), n_max=2)
    diag_rows = li.matrix[[i * li.dim + i for i in range(li.dim)]]
    assert np.max(np.abs(diag_rows.sum(axis=0))) < 1e-10


def test_atom_marginal_of_product_state(rng):
    m = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    rho_atom = m @ m.conj().T
    rho_atom /= np.trace(rho_atom)
    pops = np.array([0.7, 0.2, 0.1])
    rho_cavity = np.diag(pops).astype(complex)
    joint = np.kron(rho_atom, rho_cavity)
    assert np.allclose(atom_marginal(joint, n_max=2), rho_atom, atol=1e-14)


# ---------------------------------------------------------------------------
# parameters
# ---------------------------------------------------------------------------

def test_cavity_induced_rate():
    assert SystemParams(g=20.0, kappa=100.0).gamma_c == 8.0
    assert _NO_CAVITY.gamma_c == 0.0


def test_parameter_validation():
    with pytest.raises(ValueError):
        SystemParams(gamma=0.0)
    with pytest.raises(ValueError):
        SystemParams(kappa=-1.0)
    with pytest.raises(ValueError):
        SystemParams(g=-5.0)
    with pytest.raises(ValueError):
        SystemParams(rabi=-2.0)


def test_with_delta_returns_updated_copy():
    p = SystemParams()
    q = p.with_delta(123.0)
    assert q.delta == 123.0 and p.delta == 0.0
    assert q.omega21 == p.omega21
