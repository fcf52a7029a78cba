"""Elliptic-function layer: K(m), Jacobi functions, Carlson integrals, Pi."""

from .carlson import rc, rf, rj
from .jacobi import (POLE_TOL, JacobiValues, agm, amplitude, complete_K, jacobi,
                     jacobi_quotient, jacobi_quotients)
from .oracle import oracle_K, oracle_jacobi, oracle_pi, oracle_pi_argument
from .pi import (complete_Pi, elliptic_pi, elliptic_pi_excess, elliptic_pi_segment,
                 first_singular_point, incomplete_F)

__all__ = [
    "rc", "rf", "rj", "POLE_TOL", "JacobiValues", "agm", "amplitude", "complete_K",
    "jacobi", "jacobi_quotient", "jacobi_quotients", "oracle_K", "oracle_jacobi",
    "oracle_pi", "oracle_pi_argument", "complete_Pi", "elliptic_pi", "elliptic_pi_excess",
    "elliptic_pi_segment", "first_singular_point", "incomplete_F",
]
