"""Pseudospectral simulation and comparison harness for nonlocal unidirectional
wave equations u_t + K_delta(u + u^(p+1))_x = 0 on a periodic domain."""

__version__ = "0.1.0"

from .kernels import (
    IDENTICAL,
    KernelSpec,
    MomentTable,
    ProbeDepthExceeded,
    catalog,
    lookup,
    matching_order,
    moment,
    moment_table,
    symbol_eval,
)
from .spectral import (
    Field,
    Grid,
    NormOrder,
    apply_convolution,
    dealias,
    dealias_cutoff,
    sobolev_norm,
    spectral_derivative,
)
from .stepping import (
    EnergyTrace,
    SimConfig,
    Trajectory,
    energy_report,
    gaussian_field,
    integrate,
    rhs,
    sine_field,
)
from .comparison import (
    DEFAULT_DELTAS,
    DivergenceCurve,
    RateReport,
    SweepError,
    fit_power_law,
    run_pair,
    standard_config,
    sweep_rate,
    zero_dispersion_suite,
)

__all__ = [
    "__version__",
    "IDENTICAL",
    "KernelSpec",
    "MomentTable",
    "ProbeDepthExceeded",
    "catalog",
    "lookup",
    "matching_order",
    "moment",
    "moment_table",
    "symbol_eval",
    "Field",
    "Grid",
    "NormOrder",
    "apply_convolution",
    "dealias",
    "dealias_cutoff",
    "sobolev_norm",
    "spectral_derivative",
    "EnergyTrace",
    "SimConfig",
    "Trajectory",
    "energy_report",
    "gaussian_field",
    "integrate",
    "rhs",
    "sine_field",
    "DEFAULT_DELTAS",
    "DivergenceCurve",
    "RateReport",
    "SweepError",
    "fit_power_law",
    "run_pair",
    "standard_config",
    "sweep_rate",
    "zero_dispersion_suite",
]
