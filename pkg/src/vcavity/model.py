"""Model assembly for a coherently driven V-type three-level atom in a lossy cavity.

Basis ordering and conventions, fixed here and assumed everywhere else:

* Atomic basis ``{|0>, |1>, |2>}`` with ``|0>`` the ground state and
  ``|1>, |2>`` the excited doublet split by ``omega21``.  ``A_lk = |l><k|``.
* The drive is tuned halfway between the excited levels, so in the rotating
  frame the atomic Hamiltonian is
  ``H = -(omega21/2) A_11 + (omega21/2) A_22 + rabi * (A_01 + A_10 + A_02 + A_20)``
  with eigenvalues ``{-omega_R, 0, +omega_R}``,
  ``omega_R = sqrt(omega21**2 + 8 rabi**2) / 2``.
* Density matrices are vectorised row-major (C order):
  ``vec(rho)[3*i + j] = rho[i, j]`` and ``vec(A rho B) = kron(A, B.T) vec(rho)``.
  All superoperators in the package are built through the helpers below so the
  convention lives in exactly one place.
* Cavity field damping enters as ``kappa * (2 a rho a+ - a+ a rho - rho a+ a)``,
  i.e. ``kappa`` is the half width of the cavity line.  Eliminating the cavity
  adiabatically (overdamped limit ``kappa >> g >> gamma``) leaves the reduced
  atomic generator with cavity-induced rate ``gamma_c = 2 g**2 / kappa`` and a
  frequency-filtered lowering operator in place of the bare ``D = A_01 + A_02``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace

import numpy as np

from .errors import (
    BadCavityWarning,
    DegenerateDressingError,
    DimensionTooLargeError,
)
from .linalg import integrate_exp_kernel

__all__ = [
    "FilterCoefficients",
    "FullLiouvillian",
    "DressedScalars",
    "ReducedLiouvillian",
    "SystemParams",
    "assemble_filtered_lowering",
    "atom_hamiltonian",
    "commutator_superop",
    "dissipator",
    "dressed_scalars",
    "filter_coefficients",
    "filtered_lowering_closed",
    "filtered_lowering_oracle",
    "full_liouvillian",
    "left_mult",
    "lowering_operator",
    "reduced_liouvillian",
    "right_mult",
    "sandwich",
    "unvec",
    "vec",
]

#: Hard cap on the photon-number truncation of the full model.
MAX_PHOTONS = 20

# Dyad basis used for the filtered lowering operator, in the order the nine
# filter coefficients are stored: diagonal dyads first, then the six
# off-diagonal ones.
_DYADS = [(0, 0), (1, 1), (2, 2), (1, 0), (0, 1), (2, 0), (0, 2), (2, 1), (1, 2)]


# ---------------------------------------------------------------------------
# vectorisation convention (row-major)
# ---------------------------------------------------------------------------

def vec(rho):
    """Row-major vectorisation: vec(rho)[n*i + j] = rho[i, j]."""
    rho = np.asarray(rho)
    return rho.reshape(-1)


def unvec(v):
    """Inverse of :func:`vec` for square matrices."""
    v = np.asarray(v)
    n = int(round(np.sqrt(v.size)))
    if n * n != v.size:
        raise ValueError("unvec expects a square-size vector")
    return v.reshape(n, n)


def left_mult(a):
    """Superoperator for rho -> a @ rho."""
    a = np.asarray(a, dtype=complex)
    return np.kron(a, np.eye(a.shape[0]))


def right_mult(b):
    """Superoperator for rho -> rho @ b."""
    b = np.asarray(b, dtype=complex)
    return np.kron(np.eye(b.shape[0]), b.T)


def sandwich(a, b):
    """Superoperator for rho -> a @ rho @ b."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    return np.kron(a, b.T)


def commutator_superop(h):
    """Superoperator for rho -> -i [h, rho]."""
    return -1j * (left_mult(h) - right_mult(h))


def dissipator(l_op):
    """Lindblad dissipator  rho -> L rho L+ - (L+L rho + rho L+L)/2."""
    l_op = np.asarray(l_op, dtype=complex)
    ldl = l_op.conj().T @ l_op
    return sandwich(l_op, l_op.conj().T) - 0.5 * (left_mult(ldl) + right_mult(ldl))


# ---------------------------------------------------------------------------
# parameters and dressed scalars
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SystemParams:
    """Physical parameters, all in units of the spontaneous rate gamma = 1.

    gamma    : spontaneous emission rate of each excited level
    g        : atom-cavity coupling (same for both transitions)
    kappa    : cavity half width
    omega21  : excited-doublet splitting
    rabi     : drive Rabi frequency (same for both transitions)
    delta    : cavity detuning from the drive
    """

    gamma: float = 1.0
    g: float = 20.0
    kappa: float = 100.0
    omega21: float = 10.0
    rabi: float = 100.0
    delta: float = 0.0

    def __post_init__(self):
        if self.gamma <= 0.0:
            raise ValueError("gamma must be positive")
        if self.kappa <= 0.0:
            raise ValueError("kappa must be positive")
        if self.g < 0.0 or self.rabi < 0.0:
            raise ValueError("g and rabi must be non-negative")

    @property
    def gamma_c(self) -> float:
        """Cavity-induced emission rate 2 g**2 / kappa."""
        return 2.0 * self.g**2 / self.kappa

    @property
    def laser_detuning(self) -> float:
        """Detuning of the upper excited level from the drive (= omega21 / 2)."""
        return 0.5 * self.omega21

    @property
    def in_bad_cavity_limit(self) -> bool:
        """True when kappa >= 3 g and g >= 3 gamma (rough overdamped check)."""
        return self.kappa >= 3.0 * self.g and self.g >= 3.0 * self.gamma

    def with_delta(self, delta: float) -> "SystemParams":
        return replace(self, delta=float(delta))


@dataclass(frozen=True)
class DressedScalars:
    """Generalised Rabi frequency and the two mixing parameters.

    omega_R = sqrt(omega21**2 + 8 rabi**2) / 2,  eta = rabi / (2 omega_R),
    epsilon = omega21 / (2 omega_R);  epsilon**2 + 8 eta**2 == 1.
    """

    omega_R: float
    eta: float
    epsilon: float


def dressed_scalars(p: SystemParams) -> DressedScalars:
    omega_R = 0.5 * np.sqrt(p.omega21**2 + 8.0 * p.rabi**2)
    if omega_R == 0.0:
        raise DegenerateDressingError("omega21 = rabi = 0 leaves no dressed splitting")
    return DressedScalars(
        omega_R=float(omega_R),
        eta=float(p.rabi / (2.0 * omega_R)),
        epsilon=float(p.omega21 / (2.0 * omega_R)),
    )


def lowering_operator():
    """Combined lowering operator D = A_01 + A_02."""
    d = np.zeros((3, 3), dtype=complex)
    d[0, 1] = 1.0
    d[0, 2] = 1.0
    return d


def atom_hamiltonian(p: SystemParams):
    """Rotating-frame atomic Hamiltonian (symmetric drive, real 3x3)."""
    w = 0.5 * p.omega21
    r = p.rabi
    return np.array(
        [[0.0, r, r], [r, -w, 0.0], [r, 0.0, w]],
        dtype=complex,
    )


# ---------------------------------------------------------------------------
# frequency-filtered lowering operator
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FilterCoefficients:
    """Expansion of the filtered lowering operator on the nine atomic dyads.

    ``values[i]`` multiplies the dyad ``A_lk`` with (l, k) the i-th entry of
    the order (00, 11, 22, 10, 01, 20, 02, 21, 12).  ``source`` records which
    table variant (or the quadrature oracle) produced them.
    """

    values: np.ndarray
    source: str


def _filter_table(eta: float, eps: float, variant: str):
    """9 x 5 real table multiplying the five cavity Lorentzian factors.

    Column order pairs with factors at dressed detunings
    (0, -omega_R, +omega_R, -2 omega_R, +2 omega_R).  The published form of
    row 6 fails the flat-cavity limit (its row sum is 8 eta**2 + eps, not 1);
    the "corrected" variant replaces its two inner entries by the
    eps -> -eps mirror of row 4, which restores the limit.
    """
    e2 = eps * eps
    h2 = eta * eta
    table = np.array(
        [
            [0.0, 2 * eta * e2, -2 * eta * e2, 8 * eta**3, -8 * eta**3],
            [-2 * eta * eps, eta * eps * (1 - eps), eta * eps * (1 + eps),
             -eta * (1 - e2) / 2, eta * (1 - e2) / 2],
            [2 * eta * eps, -eta * eps * (1 + eps), -eta * eps * (1 - eps),
             -eta * (1 - e2) / 2, eta * (1 - e2) / 2],
            [4 * h2, 4 * h2 * eps, -4 * h2 * eps,
             -2 * h2 * (1 + eps), -2 * h2 * (1 - eps)],
            [4 * h2, e2 * (1 - eps) / 2, e2 * (1 + eps) / 2,
             2 * h2 * (1 - eps), 2 * h2 * (1 + eps)],
            [4 * h2, -4 * h2 * eps, 4 * h2 * eps,
             -2 * h2 * (1 - eps), -2 * h2 * (1 + eps)],
            [4 * h2, eps * (1 + eps) / 2, eps * (1 - eps) / 2,
             2 * h2 * (1 + eps), 2 * h2 * (1 - eps)],
            [0.0, -eta * eps * (1 - eps), -eta * eps * (1 + eps),
             -eta * (1 - eps) ** 2 / 2, eta * (1 + eps) ** 2 / 2],
            [0.0, eta * eps * (1 + eps), eta * eps * (1 - eps),
             -eta * (1 + eps) ** 2 / 2, eta * (1 - eps) ** 2 / 2],
        ]
    )
    if variant == "corrected":
        table[6, 1] = e2 * (1 + eps) / 2
        table[6, 2] = e2 * (1 - eps) / 2
    elif variant != "paper-exact":
        raise ValueError(f"unknown filter variant {variant!r}")
    return table


def filter_coefficients(p: SystemParams, variant: str = "corrected") -> FilterCoefficients:
    """Closed-form dyad coefficients of the filtered lowering operator."""
    ds = dressed_scalars(p)
    kappa, delta, w_r = p.kappa, p.delta, ds.omega_R
    factors = kappa / (kappa + 1j * (delta + np.array(
        [0.0, -w_r, w_r, -2.0 * w_r, 2.0 * w_r]
    )))
    table = _filter_table(ds.eta, ds.epsilon, variant)
    return FilterCoefficients(values=table @ factors, source=f"closed-{variant}")


def assemble_filtered_lowering(coeffs):
    """Assemble the 3x3 filtered lowering operator from dyad coefficients.

    Accepts a :class:`FilterCoefficients` or a bare length-9 sequence in the
    same dyad order.
    """
    values = coeffs.values if isinstance(coeffs, FilterCoefficients) else coeffs
    s = np.zeros((3, 3), dtype=complex)
    for c, (l, k) in zip(values, _DYADS):
        s[l, k] += c
    return s


def filtered_lowering_closed(p: SystemParams, variant: str = "corrected"):
    """Filtered lowering operator from the closed-form coefficient table."""
    return assemble_filtered_lowering(filter_coefficients(p, variant))


def filtered_lowering_oracle(p: SystemParams, abs_tol: float = 1e-10, full_output=False):
    """Filtered lowering operator by direct quadrature.

    Evaluates ``kappa * int_0^inf exp(-(kappa + i delta) tau) Dtilde(-tau) dtau``
    with ``Dtilde(-tau) = exp(-i H tau) D exp(+i H tau)`` obtained from a
    numerical eigendecomposition of H — deliberately independent of the
    closed-form coefficient table, which it is used to validate.
    """
    h = atom_hamiltonian(p)
    evals, u = np.linalg.eigh(h)
    d_rot = u.conj().T @ lowering_operator() @ u
    freq = evals[:, None] - evals[None, :]

    def integrand(tau):
        return u @ (d_rot * np.exp(-1j * freq * tau)) @ u.conj().T

    out = integrate_exp_kernel(
        integrand, p.kappa + 1j * p.delta, abs_tol=abs_tol, full_output=full_output
    )
    if full_output:
        return p.kappa * out[0], out[1]
    return p.kappa * out


# ---------------------------------------------------------------------------
# Liouvillians
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReducedLiouvillian:
    """9x9 generator of the reduced (cavity-eliminated) master equation."""

    matrix: np.ndarray
    params: SystemParams
    s_source: str


def _warn_if_not_overdamped(p: SystemParams):
    if p.g > 0.0 and not p.in_bad_cavity_limit:
        warnings.warn(
            f"kappa={p.kappa:g}, g={p.g:g}, gamma={p.gamma:g} violate "
            "kappa >= 3g >= 9 gamma; the cavity elimination is uncontrolled here",
            BadCavityWarning,
            stacklevel=3,
        )


def reduced_liouvillian(
    p: SystemParams,
    variant: str = "corrected",
    s_matrix=None,
) -> ReducedLiouvillian:
    """Reduced master-equation generator for the driven three-level atom.

    rho' = -i[H, rho]
           + (gamma_c/2) (D rho S+ + S rho D+ - D+S rho - rho S+D)
           + gamma (D[A_01] + D[A_02]) rho

    with S the filtered lowering operator.  ``s_matrix`` may inject a
    precomputed S (e.g. the quadrature oracle); otherwise the closed form of
    the requested variant is used.  The cavity term is trace- and
    hermiticity-preserving for any S.
    """
    _warn_if_not_overdamped(p)
    if s_matrix is None:
        s = filtered_lowering_closed(p, variant)
        source = f"closed-{variant}"
    else:
        s = np.asarray(s_matrix, dtype=complex)
        source = "injected"

    h = atom_hamiltonian(p)
    d = lowering_operator()
    s_dag = s.conj().T
    d_dag = d.conj().T

    l_mat = commutator_superop(h)
    l_mat = l_mat + 0.5 * p.gamma_c * (
        sandwich(d, s_dag)
        + sandwich(s, d_dag)
        - left_mult(d_dag @ s)
        - right_mult(s_dag @ d)
    )
    a01 = np.zeros((3, 3), dtype=complex)
    a01[0, 1] = 1.0
    a02 = np.zeros((3, 3), dtype=complex)
    a02[0, 2] = 1.0
    l_mat = l_mat + p.gamma * (dissipator(a01) + dissipator(a02))
    l_mat.setflags(write=False)
    return ReducedLiouvillian(matrix=l_mat, params=p, s_source=source)


@dataclass(frozen=True)
class FullLiouvillian:
    """Generator of the full atom + single-mode-cavity master equation."""

    matrix: np.ndarray
    params: SystemParams
    n_max: int

    @property
    def dim(self) -> int:
        return 3 * (self.n_max + 1)


def full_liouvillian(p: SystemParams, n_max: int) -> FullLiouvillian:
    """Full model with the cavity kept: used as the oracle for the reduction.

    Joint space is atom (x) cavity with ``n_max + 1`` Fock states.  The drive
    acts on the atom exactly as in the reduced model; the cavity couples both
    transitions with strength g and is damped at (energy) rate ``2 kappa``.
    """
    if n_max < 0 or n_max > MAX_PHOTONS:
        raise DimensionTooLargeError(
            f"n_max = {n_max} outside supported range [0, {MAX_PHOTONS}]"
        )
    nc = n_max + 1
    i_at = np.eye(3, dtype=complex)
    i_cv = np.eye(nc, dtype=complex)
    a_op = np.diag(np.sqrt(np.arange(1, nc, dtype=float)), k=1).astype(complex)

    def dyad(l, k):
        m = np.zeros((3, 3), dtype=complex)
        m[l, k] = 1.0
        return m

    h = np.kron(atom_hamiltonian(p), i_cv)
    h = h + p.delta * np.kron(i_at, a_op.conj().T @ a_op)
    h = h + p.g * (
        np.kron(dyad(0, 1), a_op.conj().T)
        + np.kron(dyad(1, 0), a_op)
        + np.kron(dyad(0, 2), a_op.conj().T)
        + np.kron(dyad(2, 0), a_op)
    )

    l_mat = commutator_superop(h)
    l_mat = l_mat + p.gamma * (
        dissipator(np.kron(dyad(0, 1), i_cv)) + dissipator(np.kron(dyad(0, 2), i_cv))
    )
    l_mat = l_mat + 2.0 * p.kappa * dissipator(np.kron(i_at, a_op))
    l_mat.setflags(write=False)
    return FullLiouvillian(matrix=l_mat, params=p, n_max=n_max)


def atom_marginal(rho_full, n_max: int):
    """Partial trace over the cavity mode of an atom (x) cavity state."""
    nc = n_max + 1
    rho_full = np.asarray(rho_full, dtype=complex)
    return np.einsum("injn->ij", rho_full.reshape(3, nc, 3, nc))
