"""Special affine Fourier transform (SAFT) toolkit.

Transforms, chirp-twisted translation/convolution operators, the A-Zak
transform, analysis of A-shift-invariant spaces and sampling/reconstruction.
"""
from .core import ParamSet, eta, params_from_mapping, preset, rho, validate_params
from .errors import (AlignmentError, ConditionError, ConvergenceWarning,
                     CountConditionError, DegenerateError, DeterminantError, GridError,
                     NotReconstructibleError, QuadratureError, RankError, SaftError,
                     TruncationWarning, UnsupportedGenerator, ValidationError, ZeroBError)
from .generators import Generator
from .grids import SampleSet, Signal, Spectrum, UniformGrid
from .operators import (DiscreteMeasure, MultiplierSymbol, a_convolve, a_convolve_measure,
                        a_translate, chirp_mod, multiplier_apply, poisson_check,
                        wendel_commutation_defect)
from .sampling import (SamplingReport, dual_generator, interpolating_kernel,
                       local_reconstruct, reconstruct_uniform, reconstruction_filter,
                       shannon_saft, stability_bounds)
from .siv import (PeriodicSymbol, SystemClassification, bernstein_constant, classify_system,
                  gramian, gramian_bspline_closed, min_abs_saft, phi_dagger, rkhs_kernel,
                  u_operator_bounds, weight_function)
from .transform import generator_saft, isaft, saft_fast, saft_quadrature
from .zak import ZakField, zak, zak_isometry_defect

__version__ = "0.1.0"

__all__ = [
    "ParamSet", "validate_params", "params_from_mapping", "preset", "eta", "rho",
    "UniformGrid", "Signal", "Spectrum", "SampleSet", "Generator",
    "saft_quadrature", "saft_fast", "isaft", "generator_saft",
    "a_translate", "chirp_mod", "a_convolve", "a_convolve_measure", "DiscreteMeasure",
    "MultiplierSymbol", "multiplier_apply", "wendel_commutation_defect", "poisson_check",
    "ZakField", "zak", "zak_isometry_defect",
    "PeriodicSymbol", "SystemClassification", "weight_function", "phi_dagger",
    "classify_system", "gramian", "gramian_bspline_closed", "rkhs_kernel",
    "bernstein_constant", "u_operator_bounds", "min_abs_saft",
    "reconstruction_filter", "interpolating_kernel", "reconstruct_uniform", "shannon_saft",
    "dual_generator", "stability_bounds", "local_reconstruct", "SamplingReport",
    "SaftError", "ValidationError", "DeterminantError", "ZeroBError", "GridError",
    "AlignmentError", "UnsupportedGenerator", "QuadratureError", "DegenerateError",
    "NotReconstructibleError", "ConditionError", "RankError", "CountConditionError",
    "TruncationWarning", "ConvergenceWarning",
]
