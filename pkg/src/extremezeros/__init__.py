"""Explicit bounds on the extreme zeros of Laguerre and Jacobi polynomials.

The package evaluates closed-form lower/upper bounds on the least and
largest zeros, computes the zeros independently (Sturm bisection on the
Jacobi matrix plus Newton polishing), and checks the bounds, the Bethe
ansatz identity and the asymptotic scaling over parameter sweeps.
"""

from .params import (
    DomainError,
    JacobiDerived,
    JacobiParams,
    LaguerreDerived,
    LaguerreParams,
    derive_jacobi,
    derive_laguerre,
    normalize_jacobi,
)
from .bounds import Bound, BoundSet, bound_set, jacobi_bound_set, laguerre_bound_set
from .zeros import OracleError, Tridiagonal, ZeroSet, all_zeros, evaluate_poly, jacobi_matrix
from .bethe import (
    BetheReport,
    PoleError,
    a_prime,
    bethe_report,
    discriminant,
    envelope_margin,
    gap_upper_bound,
)
from .asymptotics import (
    GammaRegime,
    NormalizedGap,
    jacobi_gamma,
    jacobi_normalized_gaps,
    laguerre_normalized_gaps,
    normalized_gaps,
)
from .harness import SweepConfig, VerificationRecord, run_sweep, verify_point

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "LaguerreParams",
    "JacobiParams",
    "LaguerreDerived",
    "JacobiDerived",
    "derive_laguerre",
    "derive_jacobi",
    "normalize_jacobi",
    "Bound",
    "BoundSet",
    "bound_set",
    "laguerre_bound_set",
    "jacobi_bound_set",
    "OracleError",
    "Tridiagonal",
    "ZeroSet",
    "jacobi_matrix",
    "all_zeros",
    "evaluate_poly",
    "BetheReport",
    "PoleError",
    "discriminant",
    "a_prime",
    "bethe_report",
    "envelope_margin",
    "gap_upper_bound",
    "GammaRegime",
    "NormalizedGap",
    "jacobi_gamma",
    "laguerre_normalized_gaps",
    "jacobi_normalized_gaps",
    "normalized_gaps",
    "SweepConfig",
    "VerificationRecord",
    "verify_point",
    "run_sweep",
]
