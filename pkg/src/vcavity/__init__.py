"""Cavity-modified resonance fluorescence of a driven V-type three-level atom.

Steady states, dressed-state analysis, emission and probe-absorption spectra
for a coherently driven V-type atom whose two transitions share one heavily
damped cavity mode (bad-cavity limit, cavity adiabatically eliminated).
Closed forms are paired with independent numerical oracles throughout; run
``vcavity validate`` or see :mod:`vcavity.validate`.
"""

from .errors import (
    BadCavityWarning,
    ConfigError,
    DegenerateDressingError,
    DegenerateKernelError,
    DimensionTooLargeError,
    IllConditionedWarning,
    NoKernelError,
    NonPositiveStateError,
    ResolventSingularError,
    SecularValidityWarning,
    SingularMatrixError,
    SingularRateMatrixError,
    ToleranceNotMetError,
    VCavityError,
)
from .model import (
    DressedScalars,
    FilterCoefficients,
    FullLiouvillian,
    ReducedLiouvillian,
    SystemParams,
    atom_hamiltonian,
    atom_marginal,
    dressed_scalars,
    filter_coefficients,
    filtered_lowering_closed,
    filtered_lowering_oracle,
    full_liouvillian,
    lowering_operator,
    reduced_liouvillian,
)
from .steady import (
    FullSteadyState,
    PopulationSweep,
    SteadyState,
    default_delta_grid,
    full_steady_state,
    steady_state,
    steady_state_for,
    sweep_populations,
)
from .dressed import (
    DressedBasis,
    DressedPopulations,
    SecularRates,
    TransitionRates,
    dressed_basis,
    dressed_populations_exact,
    dressed_populations_rate_eq,
    secular_rates,
    transition_rates,
)
from .spectra import (
    LineWeights,
    SecularComponents,
    SecularLinewidths,
    SpectrumSeries,
    absorption_spectrum,
    correlation_oracle,
    correlation_spectrum,
    default_frequency_grid,
    fluorescence_cross_terms,
    fluorescence_qrt,
    fluorescence_secular,
    inner_line_suppression,
    line_adapted_grid,
    line_weights,
    peak_height_near,
)
from .manifests import MANIFESTS, FigureManifest, ManifestRun, manifest_ids, run_manifest
from .validate import CheckResult, run_suite

__version__ = "0.1.0"

__all__ = [
    "BadCavityWarning",
    "CheckResult",
    "ConfigError",
    "DegenerateDressingError",
    "DegenerateKernelError",
    "DimensionTooLargeError",
    "DressedBasis",
    "DressedPopulations",
    "DressedScalars",
    "FigureManifest",
    "FilterCoefficients",
    "FullLiouvillian",
    "FullSteadyState",
    "IllConditionedWarning",
    "LineWeights",
    "MANIFESTS",
    "ManifestRun",
    "NoKernelError",
    "NonPositiveStateError",
    "PopulationSweep",
    "ReducedLiouvillian",
    "ResolventSingularError",
    "SecularComponents",
    "SecularLinewidths",
    "SecularRates",
    "SecularValidityWarning",
    "SingularMatrixError",
    "SingularRateMatrixError",
    "SpectrumSeries",
    "SteadyState",
    "SystemParams",
    "ToleranceNotMetError",
    "TransitionRates",
    "VCavityError",
    "absorption_spectrum",
    "atom_hamiltonian",
    "atom_marginal",
    "correlation_oracle",
    "correlation_spectrum",
    "default_delta_grid",
    "default_frequency_grid",
    "dressed_basis",
    "dressed_populations_exact",
    "dressed_populations_rate_eq",
    "dressed_scalars",
    "filter_coefficients",
    "filtered_lowering_closed",
    "filtered_lowering_oracle",
    "fluorescence_cross_terms",
    "fluorescence_qrt",
    "fluorescence_secular",
    "full_liouvillian",
    "full_steady_state",
    "inner_line_suppression",
    "line_adapted_grid",
    "line_weights",
    "peak_height_near",
    "lowering_operator",
    "manifest_ids",
    "reduced_liouvillian",
    "run_manifest",
    "run_suite",
    "secular_rates",
    "steady_state",
    "steady_state_for",
    "sweep_populations",
    "transition_rates",
    "__version__",
]
