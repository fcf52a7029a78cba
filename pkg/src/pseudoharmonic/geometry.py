"""Signatures, scalar fields with derivatives, conformal metrics, null calculus.

A signature is the pair (e, d) = (eps^2, delta^2) with eps, delta in {1, i}.
The domain metric is dx^2 - e dy^2 and the target metric is
e^F (dR^2 - d dS^2).  All public quantities are real; complex arithmetic is
kept as a second evaluation path and brought back with :func:`complex_reduce`.

Reduced hyperbolic functions: for a sign s = +1 they are sinh, cosh, tanh,
for s = -1 they are sin, cos, tan.  With s = e this is the real form of
sinh(eps t) / eps and cosh(eps t); with s = sigma^2 = d e it is the real form
of the frame functions sinh(Omega) / sigma, cosh(Omega) where Omega = sigma w.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

from .errors import DegenerateError, DomainError, ImaginaryLeakError, PoleError

# central difference steps: first derivatives, second derivatives
FD_STEP = 1e-5
FD_STEP2 = 1e-3

IMAG_TOL = 1e-9


@dataclass(frozen=True)
class Signature:
    """Domain sign e = eps^2 and target sign d = delta^2, each +1 or -1."""

    e: int
    d: int

    def __post_init__(self):
        if self.e not in (1, -1) or self.d not in (1, -1):
            raise DomainError(f"signature entries must be +1 or -1, got {self.e}, {self.d}")

    @property
    def eps(self):
        return 1.0 + 0j if self.e == 1 else 1j

    @property
    def delta(self):
        return 1.0 + 0j if self.d == 1 else 1j

    @property
    def sigma(self):
        return self.delta / self.eps

    @property
    def sigma2(self):
        return self.d * self.e

    @property
    def label(self):
        dom = "Lorentz" if self.e == 1 else "Riemann"
        tgt = "Lorentz" if self.d == 1 else "Riemann"
        return f"{dom}->{tgt}"

    def __str__(self):
        return f"(e={self.e:+d}, d={self.d:+d})"


ALL_SIGNATURES = tuple(Signature(e, d) for e in (1, -1) for d in (1, -1))


def sinh_r(t, s):
    return math.sinh(t) if s > 0 else math.sin(t)


def cosh_r(t, s):
    return math.cosh(t) if s > 0 else math.cos(t)


def tanh_r(t, s):
    return math.tanh(t) if s > 0 else math.tan(t)


def complex_reduce(z, tol=IMAG_TOL):
    """Real part of ``z``; raises if the imaginary part is not negligible."""
    z = complex(z)
    if abs(z.imag) > tol * max(1.0, abs(z.real)):
        raise ImaginaryLeakError(f"imaginary part {z.imag:.3e} leaked into a real quantity",
                                 magnitude=abs(z.imag))
    return z.real


# ---------------------------------------------------------------------------
# scalar fields

_PARTIALS = ("x", "y", "xx", "xy", "yy")


def _d1(f, x, y, h, axis):
    if axis == 0:
        return (f(x + h, y) - f(x - h, y)) / (2.0 * h)
    return (f(x, y + h) - f(x, y - h)) / (2.0 * h)


def _d2(f, x, y, h, which):
    if which == "xx":
        return (f(x + h, y) - 2.0 * f(x, y) + f(x - h, y)) / (h * h)
    if which == "yy":
        return (f(x, y + h) - 2.0 * f(x, y) + f(x, y - h)) / (h * h)
    return (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h)
            + f(x - h, y - h)) / (4.0 * h * h)


def finite_difference(f, x, y, which, h1=FD_STEP, h2=FD_STEP2):
    """Central difference with one Richardson level for the partial ``which``."""
    if which in ("x", "y"):
        axis = 0 if which == "x" else 1
        a, b = _d1(f, x, y, h1, axis), _d1(f, x, y, 0.5 * h1, axis)
    elif which in ("xx", "xy", "yy"):
        a, b = _d2(f, x, y, h2, which), _d2(f, x, y, 0.5 * h2, which)
    else:
        raise DomainError(f"unknown partial {which!r}")
    return (4.0 * b - a) / 3.0


@dataclass(frozen=True)
class ScalarField:
    """Real function of two variables with optional analytic partials.

    ``partials`` maps any of ``'x', 'y', 'xx', 'xy', 'yy'`` to a callable of
    the same two variables.  Missing partials fall back to finite
    differences.  The variable names are nominal: a metric factor is a
    ScalarField in (R, S) and its 'x', 'y' entries are d/dR, d/dS.
    """

    f: Callable[[float, float], float]
    partials: Mapping[str, Callable[[float, float], float]] = field(default_factory=dict)
    fd_step: float = FD_STEP
    fd_step2: float = FD_STEP2

    def __post_init__(self):
        bad = set(self.partials) - set(_PARTIALS)
        if bad:
            raise DomainError(f"unknown partial names {sorted(bad)}")

    def __call__(self, x, y):
        return self.f(x, y)

    def d(self, which, x, y):
        g = self.partials.get(which)
        if g is not None:
            return g(x, y)
        return self.fd(which, x, y)

    def fd(self, which, x, y):
        return finite_difference(self.f, x, y, which, self.fd_step, self.fd_step2)

    def has(self, which):
        return which in self.partials

    def numeric(self):
        """Same field with all analytic partials dropped."""
        return ScalarField(self.f, {}, self.fd_step, self.fd_step2)

    def gradient(self, x, y):
        return self.d("x", x, y), self.d("y", x, y)

    def hessian(self, x, y):
        return self.d("xx", x, y), self.d("xy", x, y), self.d("yy", x, y)


def constant_field(value):
    zero = lambda x, y: 0.0
    return ScalarField(lambda x, y: value, {k: zero for k in _PARTIALS})


# ---------------------------------------------------------------------------
# null coordinates v = x + eps y, w = x - eps y on the domain

def null_from_partials(fx, fy, sig):
    """(f_v, f_w) from (f_x, f_y); complex when e = -1."""
    inv_eps = 1.0 / sig.eps
    return 0.5 * (fx + fy * inv_eps), 0.5 * (fx - fy * inv_eps)


def null_derivatives(field_, sig, x, y):
    """(f_v, f_w) of a ScalarField at (x, y) as complex numbers."""
    return null_from_partials(field_.d("x", x, y), field_.d("y", x, y), sig)


def vw_second(field_, sig, x, y):
    """Mixed null derivative f_vw = (f_xx - e f_yy)/4, always real for real f."""
    return 0.25 * wave_operator(field_, x, y, sig)


def wave_operator(field_, x, y, sig):
    """f_xx - e f_yy for a ScalarField."""
    return field_.d("xx", x, y) - sig.e * field_.d("yy", x, y)


# ---------------------------------------------------------------------------
# target metrics

@dataclass(frozen=True)
class ConformalMetric:
    """Metric e^F (dR^2 - d dS^2) with conformal factor F(R, S)."""

    F: ScalarField
    d: int

    def __post_init__(self):
        if self.d not in (1, -1):
            raise DomainError("target sign d must be +1 or -1")

    def expF(self, R, S):
        return math.exp(self.F(R, S))

    def F_R(self, R, S):
        return self.F.d("x", R, S)

    def F_S(self, R, S):
        return self.F.d("y", R, S)

    def F_V(self, R, S):
        """dF/dV with V = R + delta S (complex when d = -1)."""
        delta = 1.0 if self.d == 1 else 1j
        return 0.5 * (self.F_R(R, S) + self.F_S(R, S) / delta)

    def F_W(self, R, S):
        delta = 1.0 if self.d == 1 else 1j
        return 0.5 * (self.F_R(R, S) - self.F_S(R, S) / delta)

    def F_VV(self, R, S):
        delta = 1.0 if self.d == 1 else 1j
        FRR, FRS, FSS = self.F.hessian(R, S)
        return 0.25 * (FRR + 2.0 * FRS / delta + FSS / delta ** 2)

    def F_WW(self, R, S):
        delta = 1.0 if self.d == 1 else 1j
        FRR, FRS, FSS = self.F.hessian(R, S)
        return 0.25 * (FRR - 2.0 * FRS / delta + FSS / delta ** 2)


def curvature(metric, R, S):
    """Gaussian curvature -(1/2)(F_RR - d F_SS) e^{-F} of a conformal metric."""
    try:
        F = metric.F(R, S)
        FRR = metric.F.d("xx", R, S)
        FSS = metric.F.d("yy", R, S)
    except (ZeroDivisionError, OverflowError) as exc:
        raise PoleError(f"metric singular at ({R}, {S})", location=(R, S)) from exc
    if not all(map(math.isfinite, (F, FRR, FSS))):
        raise PoleError(f"metric singular at ({R}, {S})", location=(R, S))
    return -0.5 * (FRR - metric.d * FSS) * math.exp(-F)


def curvature_null(metric, R, S):
    """Same curvature through the complex route -2 F_VW e^{-F}."""
    delta = 1.0 if metric.d == 1 else 1j
    FRR, _, FSS = metric.F.hessian(R, S)
    F_VW = 0.25 * (FRR - FSS / delta ** 2)
    return complex_reduce(-2.0 * F_VW * math.exp(-metric.F(R, S)))


def check_jacobian(Rx, Ry, Sx, Sy, tol=1e-14):
    jac = Rx * Sy - Ry * Sx
    if abs(jac) <= tol * max(1.0, abs(Rx * Sy), abs(Ry * Sx)):
        raise DegenerateError("map Jacobian vanishes")
    return jac
