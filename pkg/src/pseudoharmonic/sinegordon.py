"""Sine-Gordon type equations and their travelling-wave (soliton) solutions.

In real form the equation for the frame angle w of a surface map is

    w_xx - e w_yy + 2 K sin_s(2 w) = 0,        s = sigma^2 = d e,

where sin_s is sinh for s = +1 and sin for s = -1.  Travelling waves depend
on one rotated coordinate Y of the soliton chart

    X = gamma x - e beta y,    Y = -beta x + gamma y,
    gamma = rho cosh_e(tau),   beta = rho sinh_e(tau),

and satisfy the first integral (w')^2 = c^2 + (4 K e / rho^2) sin_s(w)^2.

Case I (c > 0) is solved by Jacobi functions of u = c (Y - Y0 + psi):

    s = +1:  sinh w = sc(u | 1 - mu)
    s = -1:  sin w  = sn(u | mu)      (smooth branch w = am(u | mu))

with mu = 4 K d / (c^2 rho^2).  Case II (c = 0) degenerates to
hyperbolic functions of k (Y - Y0), k = (2/rho) sqrt(K e).
"""

import cmath
import math
from dataclasses import dataclass

from .elliptic import POLE_TOL, amplitude, complete_K, jacobi
from .errors import DomainError, InadmissibleError, PoleError
from .geometry import ScalarField, Signature, complex_reduce, cosh_r, sinh_r


@dataclass(frozen=True)
class SineGordonProblem:
    sig: Signature
    K: float

    def __post_init__(self):
        if not math.isfinite(self.K) or self.K == 0.0:
            raise DomainError(f"curvature K must be finite and nonzero, got {self.K}")


@dataclass(frozen=True)
class SolitonParams:
    """Parameters of a travelling wave.

    ``c = 0`` selects the degenerate (Case II) solution.  ``psi`` is the phase
    of the Jacobi argument at Y = Y0.
    """

    sig: Signature
    K: float
    rho: float
    tau: float
    c: float = 1.0
    Y0: float = 0.0
    psi: float = 0.0

    def __post_init__(self):
        for name in ("K", "rho", "tau", "c", "Y0", "psi"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")
        if self.K == 0.0:
            raise DomainError("curvature K must be nonzero")
        if self.rho <= 0.0:
            raise DomainError(f"rho must be positive, got {self.rho}")
        if self.c < 0.0:
            raise DomainError(f"c must be non-negative, got {self.c}")
        if abs(self.ch) < 1e-12:
            raise InadmissibleError("cosh_e(tau) vanishes: soliton chart is degenerate")

    @property
    def case(self):
        return 1 if self.c > 0.0 else 2

    @property
    def s2(self):
        return self.sig.sigma2

    @property
    def ch(self):
        return cosh_r(self.tau, self.sig.e)

    @property
    def sh(self):
        return sinh_r(self.tau, self.sig.e)

    @property
    def gamma(self):
        return self.rho * self.ch

    @property
    def beta(self):
        return self.rho * self.sh

    @property
    def mu(self):
        """4 K d / (c rho)^2, the coefficient that fixes the Jacobi parameter."""
        if self.case != 1:
            raise DomainError("mu is defined for c > 0 only")
        return 4.0 * self.K * self.sig.d / (self.c * self.rho) ** 2

    @property
    def m(self):
        """Parameter handed to the Jacobi functions."""
        return 1.0 - self.mu if self.s2 == 1 else self.mu

    @property
    def N2(self):
        return 1.0 - self.mu * self.ch ** 2

    @property
    def k(self):
        if self.case != 2:
            raise DomainError("k is defined for c = 0 only")
        return 2.0 / self.rho * math.sqrt(self.K * self.sig.e)

    def check_admissible(self):
        if self.case == 1:
            mu = self.mu
            if self.s2 == 1 and mu <= 0.0:
                raise InadmissibleError(
                    f"K d must be positive when d e = +1 (parameter would be {1.0 - mu} > 1)")
            if self.s2 == -1 and (mu > 1.0 or mu == 0.0):
                raise InadmissibleError(f"parameter {mu} outside (-inf, 0) U (0, 1]")
        elif self.K * self.sig.e <= 0.0:
            raise InadmissibleError("c = 0 requires K e > 0")
        return self

    def with_(self, **kw):
        vals = dict(sig=self.sig, K=self.K, rho=self.rho, tau=self.tau, c=self.c,
                    Y0=self.Y0, psi=self.psi)
        vals.update(kw)
        return SolitonParams(**vals)


@dataclass(frozen=True)
class SolitonChart:
    X: float
    Y: float
    phi: float


def chart_coordinates(p, x, y):
    return p.gamma * x - p.sig.e * p.beta * y, -p.beta * x + p.gamma * y


def chart_inverse(p, X, Y):
    """(x, y) from (X, Y); the chart has determinant rho^2."""
    r2 = p.rho ** 2
    return (p.gamma * X + p.sig.e * p.beta * Y) / r2, (p.beta * X + p.gamma * Y) / r2


def to_soliton_chart(p, x, y):
    X, Y = chart_coordinates(p, x, y)
    phi = p.c * (Y - p.Y0 + p.psi) if p.case == 1 else Y - p.Y0
    return SolitonChart(X, Y, phi)


# ---------------------------------------------------------------------------
# profiles w(Y)

class SolitonProfile:
    """Travelling wave w(Y) with analytic first and second derivatives."""

    def __init__(self, params):
        self.p = params.check_admissible()

    def u(self, Y):
        return self.p.c * (Y - self.p.Y0 + self.p.psi)

    def omega(self, Y):
        raise NotImplementedError

    def d_omega(self, Y):
        raise NotImplementedError

    def dd_omega(self, Y):
        raise NotImplementedError

    def sinh_omega(self, Y):
        """sin_s(w) from the special-function representation."""
        raise NotImplementedError

    def cosh_omega(self, Y):
        raise NotImplementedError

    def tanh_omega(self, Y):
        return self.sinh_omega(Y) / self.cosh_omega(Y)

    def field(self):
        """w as a ScalarField on the (x, y) domain."""
        p = self.p
        g, b = p.gamma, p.beta

        def Y(x, y):
            return -b * x + g * y

        return ScalarField(
            lambda x, y: self.omega(Y(x, y)),
            {
                "x": lambda x, y: -b * self.d_omega(Y(x, y)),
                "y": lambda x, y: g * self.d_omega(Y(x, y)),
                "xx": lambda x, y: b * b * self.dd_omega(Y(x, y)),
                "xy": lambda x, y: -b * g * self.dd_omega(Y(x, y)),
                "yy": lambda x, y: g * g * self.dd_omega(Y(x, y)),
            },
        )


class Case1Profile(SolitonProfile):
    def __init__(self, params):
        if params.case != 1:
            raise DomainError("Case I needs c > 0")
        super().__init__(params)
        self.m = params.m
        self.Kc = complete_K(self.m) if self.m < 1.0 else math.inf

    def _jac(self, Y):
        return jacobi(self.u(Y), self.m)

    def _pole_check(self, cn, Y):
        if self.p.s2 == 1 and abs(cn) < POLE_TOL:
            raise PoleError(f"w has a pole at Y={Y}", location=self.nearest_pole(Y))

    def nearest_pole(self, Y):
        """Y of the closest pole of w (s = +1 only), or None."""
        if self.p.s2 != 1:
            return None
        u = self.u(Y)
        j = round((u / self.Kc - 1.0) / 2.0)
        return (2 * j + 1) * self.Kc / self.p.c + self.p.Y0 - self.p.psi

    def omega(self, Y):
        if self.p.s2 == 1:
            sn, cn, dn = self._jac(Y)
            self._pole_check(cn, Y)
            return math.asinh(sn / cn)
        return amplitude(self.u(Y), self.m)

    def d_omega(self, Y):
        sn, cn, dn = self._jac(Y)
        if self.p.s2 == 1:
            self._pole_check(cn, Y)
            return self.p.c * dn / cn
        return self.p.c * dn

    def dd_omega(self, Y):
        sn, cn, dn = self._jac(Y)
        c2 = self.p.c ** 2
        if self.p.s2 == 1:
            self._pole_check(cn, Y)
            return c2 * (1.0 - self.m) * sn / (cn * cn)
        return -c2 * self.m * sn * cn

    def sinh_omega(self, Y):
        sn, cn, dn = self._jac(Y)
        if self.p.s2 == 1:
            self._pole_check(cn, Y)
            return sn / cn
        return sn

    def cosh_omega(self, Y):
        sn, cn, dn = self._jac(Y)
        if self.p.s2 == 1:
            self._pole_check(cn, Y)
            return 1.0 / abs(cn)
        return cn

    def tanh_omega(self, Y):
        sn, cn, dn = self._jac(Y)
        if self.p.s2 == 1:
            self._pole_check(cn, Y)
            return sn * math.copysign(1.0, cn)
        return sn / cn


class Case2Profile(SolitonProfile):
    """c = 0: tanh w = sech(k Y) (s = +1) or tan w = csch(k Y) (s = -1)."""

    def __init__(self, params):
        if params.case != 2:
            raise DomainError("Case II needs c = 0")
        super().__init__(params)
        self.k = params.k

    def _kY(self, Y):
        t = self.k * (Y - self.p.Y0)
        if abs(t) < 1e-12:
            raise PoleError(f"w has a pole at Y={Y}", location=self.p.Y0)
        return t

    def nearest_pole(self, Y):
        return self.p.Y0

    def omega(self, Y):
        t = self._kY(Y)
        if self.p.s2 == 1:
            return math.asinh(1.0 / abs(math.sinh(t)))
        return math.atan(1.0 / math.sinh(t))

    def d_omega(self, Y):
        t = self._kY(Y)
        if self.p.s2 == 1:
            return -self.k / math.sinh(t)
        return -self.k / math.cosh(t)

    def dd_omega(self, Y):
        t = self._kY(Y)
        k2 = self.k ** 2
        if self.p.s2 == 1:
            return k2 * math.cosh(t) / math.sinh(t) ** 2
        return k2 * math.tanh(t) / math.cosh(t)

    def sinh_omega(self, Y):
        t = self._kY(Y)
        if self.p.s2 == 1:
            return 1.0 / abs(math.sinh(t))
        return 1.0 / math.cosh(t) * math.copysign(1.0, t)

    def cosh_omega(self, Y):
        t = self._kY(Y)
        if self.p.s2 == 1:
            return abs(math.cosh(t) / math.sinh(t))
        return abs(math.tanh(t))


def soliton_profile(params):
    return Case1Profile(params) if params.case == 1 else Case2Profile(params)


def soliton_case1(params):
    """Case I wave as a field on the domain, with analytic partials."""
    return Case1Profile(params).field()


def soliton_case2(params):
    """Case II wave as a field on the domain, with analytic partials."""
    if params.case != 2:
        params = params.with_(c=0.0)
    return Case2Profile(params).field()


def first_integral(profile, Y):
    """(w')^2 - c^2 - (4 K e / rho^2) sin_s(w)^2, zero along a soliton."""
    p = profile.p
    sw = sinh_r(profile.omega(Y), p.s2)
    return profile.d_omega(Y) ** 2 - p.c ** 2 - 4.0 * p.K * p.sig.e / p.rho ** 2 * sw * sw


# ---------------------------------------------------------------------------
# residuals

@dataclass(frozen=True)
class Residual:
    raw: float
    scale: float

    @property
    def relative(self):
        return abs(self.raw) / max(1.0, self.scale)


def sg_residual(omega, prob, x, y, numeric=False):
    """Real-reduced residual w_xx - e w_yy + 2 K sin_s(2 w)."""
    f = omega.numeric() if numeric else omega
    w = f(x, y)
    lin = f.d("xx", x, y) - prob.sig.e * f.d("yy", x, y)
    nl = 2.0 * prob.K * sinh_r(2.0 * w, prob.sig.sigma2)
    return Residual(lin + nl, max(abs(lin), abs(nl)))


def sg_residual_complex(omega, prob, x, y, numeric=False, sigma=None):
    """Same residual through Omega = sigma w and complex null derivatives.

    4 Omega_vw = sigma (w_xx - e w_yy) and the nonlinearity is 2 K sinh(2 Omega);
    each term is divided by sigma and reduced separately, so a wrong sign
    convention shows up as an imaginary leak.  ``sigma`` overrides the
    signature's value (used by negative controls).
    """
    f = omega.numeric() if numeric else omega
    sig = prob.sig
    s = sig.sigma if sigma is None else sigma
    eps = sig.eps
    Om = s * f(x, y)
    Om_xx, Om_yy = s * f.d("xx", x, y), s * f.d("yy", x, y)
    four_vw = Om_xx - Om_yy / eps ** 2
    lin = complex_reduce(four_vw / s)
    nl = complex_reduce(2.0 * prob.K * cmath.sinh(2.0 * Om) / s)
    return Residual(lin + nl, max(abs(lin), abs(nl)))
