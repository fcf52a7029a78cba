"""Harmonic maps between pseudo-Riemannian surfaces, sine-Gordon solitons
and Baecklund pairs, with real-reduced and complex evaluation paths."""

from .backlund import (BacklundExample, BacklundPair, LinearFractionMetric,
                       backlund_residuals, backlund_residuals_complex, example_pair,
                       linear_fraction_metric, pulled_back_F, theta_equation_residual)
from .elliptic import (JacobiValues, complete_K, elliptic_pi, jacobi, jacobi_quotients,
                       oracle_jacobi)
from .errors import (BranchError, DegenerateError, DomainError, ImaginaryLeakError,
                     InadmissibleError, OracleFailure, PoleError, PseudoHarmonicError,
                     SingularFrameError)
from .geometry import (ALL_SIGNATURES, ConformalMetric, ScalarField, Signature,
                       complex_reduce, curvature, null_derivatives, null_from_partials,
                       vw_second)
from .harmonicmap import (FramePair, HopfPair, SolitonHarmonicMap, SurfaceMap,
                          beltrami_check, construct_soliton_map, energy, extract_frame,
                          harmonic_residuals, hopf_quantities, induced_curvature,
                          normalising_coordinates, orthogonality_check,
                          specific_transform)
from .sinegordon import (SineGordonProblem, SolitonChart, SolitonParams, sg_residual,
                         soliton_case1, soliton_case2, to_soliton_chart)

__version__ = "0.1.0"

__all__ = [
    "BacklundExample", "BacklundPair", "LinearFractionMetric", "backlund_residuals",
    "backlund_residuals_complex", "example_pair", "linear_fraction_metric", "pulled_back_F",
    "theta_equation_residual", "JacobiValues", "complete_K", "elliptic_pi", "jacobi",
    "jacobi_quotients", "oracle_jacobi", "BranchError", "DegenerateError", "DomainError",
    "ImaginaryLeakError", "InadmissibleError", "OracleFailure", "PoleError",
    "PseudoHarmonicError", "SingularFrameError", "ALL_SIGNATURES", "ConformalMetric",
    "ScalarField", "Signature", "complex_reduce", "curvature", "null_derivatives",
    "null_from_partials", "vw_second",
    "FramePair", "HopfPair", "SolitonHarmonicMap", "SurfaceMap", "beltrami_check",
    "construct_soliton_map", "energy", "extract_frame", "harmonic_residuals",
    "hopf_quantities", "induced_curvature", "orthogonality_check", "specific_transform",
    "normalising_coordinates",
    "SineGordonProblem", "SolitonChart", "SolitonParams", "sg_residual", "soliton_case1",
    "soliton_case2", "to_soliton_chart",
]
