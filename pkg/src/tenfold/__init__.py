"""Gaussian Hamiltonian ensembles of the tenfold way.

Sampling, joint eigenvalue densities, closed-form equilibrium measures, and
the large-deviation rate functional for the ten symmetry classes of
Hermitian random matrices.
"""

__version__ = "0.1.0"

from .densities import WeightSpec, joint_log_density, log_weight, weight_eval, weight_for
from .ensembles import (
    ClassLabel,
    ClassSpec,
    EnsembleSpec,
    class_catalog,
    class_spec,
    gauss_constants,
    make_ensemble,
    resolve_label,
)
from .equilibrium import (
    DensityCurve,
    equilibrium_for,
    laguerre_minimizer,
    pushforward_power,
    quantile,
    quarter_circle,
    semicircle,
    sqrt_laguerre,
)
from .experiments import (
    ConvergenceReport,
    DecayReport,
    convergence_experiment,
    decay_experiment,
    density_oracle,
    ks_distance,
)
from .ratefn import (
    GridMeasure,
    RateFunctional,
    calibrate,
    field_term,
    functional_for,
    grid_from_curve,
    grid_from_samples,
    log_energy,
    rate,
)
from .sampler import (
    SampleBatch,
    draw_matrix,
    log_density_unnormalized,
    param_variances,
    sample,
)
from .spectra import (
    EmpiricalMeasure,
    Spectrum,
    empirical_measure,
    reduced_spectrum,
    spectrum,
)
from .structure import (
    StructuredMatrix,
    build,
    extract,
    free_dim,
    stabilizer_conjugate,
    validate,
)

__all__ = [
    "ClassLabel",
    "ClassSpec",
    "ConvergenceReport",
    "DecayReport",
    "DensityCurve",
    "EmpiricalMeasure",
    "EnsembleSpec",
    "GridMeasure",
    "RateFunctional",
    "SampleBatch",
    "Spectrum",
    "StructuredMatrix",
    "WeightSpec",
    "build",
    "calibrate",
    "class_catalog",
    "class_spec",
    "convergence_experiment",
    "decay_experiment",
    "density_oracle",
    "draw_matrix",
    "empirical_measure",
    "equilibrium_for",
    "extract",
    "field_term",
    "free_dim",
    "functional_for",
    "gauss_constants",
    "grid_from_curve",
    "grid_from_samples",
    "joint_log_density",
    "ks_distance",
    "laguerre_minimizer",
    "log_density_unnormalized",
    "log_energy",
    "log_weight",
    "make_ensemble",
    "param_variances",
    "pushforward_power",
    "quantile",
    "quarter_circle",
    "rate",
    "reduced_spectrum",
    "resolve_label",
    "sample",
    "semicircle",
    "spectrum",
    "sqrt_laguerre",
    "stabilizer_conjugate",
    "validate",
    "weight_eval",
    "weight_for",
    "__version__",
]
