"""Independent reference values for the elliptic layer.

These routes share no code with the AGM/Carlson implementations: sn, cn, dn
come from integrating their defining ODE system, K and Pi from adaptive
quadrature of the defining integrals.
"""

import math

from scipy.integrate import quad, solve_ivp

from ..errors import DomainError, OracleFailure
from .jacobi import JacobiValues

ODE_RTOL = 1e-12
ODE_ATOL = 1e-13


def oracle_jacobi(u, m, rtol=ODE_RTOL, atol=ODE_ATOL):
    """sn, cn, dn at u from sn' = cn dn, cn' = -sn dn, dn' = -m sn cn."""
    if not (math.isfinite(u) and math.isfinite(m)) or m > 1.0:
        raise DomainError(f"oracle_jacobi needs finite u and m <= 1, got {u}, {m}")
    if u == 0.0:
        return JacobiValues(0.0, 1.0, 1.0)

    def rhs(_, z):
        s, c, d = z
        return [c * d, -s * d, -m * s * c]

    sol = solve_ivp(rhs, (0.0, u), [0.0, 1.0, 1.0], method="DOP853",
                    rtol=rtol, atol=atol)
    if not sol.success:
        raise OracleFailure(f"ODE oracle failed at u={u}, m={m}: {sol.message}")
    s, c, d = sol.y[:, -1]
    return JacobiValues(float(s), float(c), float(d))


def oracle_K(m):
    """K(m) by quadrature over the amplitude."""
    if m >= 1.0:
        raise DomainError("oracle_K needs m < 1")
    val, err = quad(lambda t: 1.0 / math.sqrt(1.0 - m * math.sin(t) ** 2),
                    0.0, 0.5 * math.pi, epsabs=1e-15, epsrel=1e-13, limit=200)
    return val


def oracle_pi(n, phi, m):
    """Pi(n; phi|m) in amplitude form, by quadrature, for a regular path."""
    def f(t):
        s2 = math.sin(t) ** 2
        return 1.0 / ((1.0 - n * s2) * math.sqrt(1.0 - m * s2))

    val, err = quad(f, 0.0, phi, epsabs=1e-15, epsrel=1e-14, limit=400)
    if not math.isfinite(val):
        raise OracleFailure("quadrature for Pi diverged")
    return val


def oracle_pi_argument(n, x, m, rtol=ODE_RTOL, atol=ODE_ATOL):
    """int_0^x du / (1 - n sn^2(u|m)), integrated together with the Jacobi ODE."""
    if not all(map(math.isfinite, (n, x, m))) or m > 1.0:
        raise DomainError("oracle_pi_argument needs finite n, x and m <= 1")
    if x == 0.0:
        return 0.0

    def rhs(_, z):
        s, c, d, _i = z
        return [c * d, -s * d, -m * s * c, 1.0 / (1.0 - n * s * s)]

    sol = solve_ivp(rhs, (0.0, x), [0.0, 1.0, 1.0, 0.0], method="DOP853",
                    rtol=rtol, atol=atol)
    if not sol.success or not math.isfinite(sol.y[3, -1]):
        raise OracleFailure(f"ODE oracle for Pi failed at n={n}, x={x}, m={m}")
    return float(sol.y[3, -1])
