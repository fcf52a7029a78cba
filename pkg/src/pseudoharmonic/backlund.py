"""Baecklund-type first-order pair relating the frame angles and the metric.

For a harmonic map with Hopf pair one, the frame angles (w, t) and the
conformal factor F pulled back to the domain satisfy, in real form,

    w_x - t_y     = (1/2) F_x tan_s(w),
    w_y - e t_x   = (1/2) s F_y cot_s(w),         s = sigma^2 = d e,

(complex form: Omega_x - Theta_y/eps = F_x tanh(Omega)/2 and
Omega_y - eps Theta_x = F_y coth(Omega)/2).  For the linear-fraction
metrics e^F = 1/(a R + d b S)^2 of constant curvature -a^2 + d b^2 the
second frame angle obeys

    Theta_xx - e Theta_yy = (a + delta b)^2 e^{2 Theta} - (a - delta b)^2 e^{-2 Theta}.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, PoleError, SingularFrameError
from .geometry import (ConformalMetric, ScalarField, Signature, complex_reduce,
                       cosh_r, sinh_r, tanh_r)
from .harmonicmap import SurfaceMap


@dataclass(frozen=True)
class BacklundPair:
    """Frame angles and the pulled-back conformal factor F(x, y)."""

    omega: ScalarField
    theta: ScalarField
    F: ScalarField
    sig: Signature


def pulled_back_F(smap, metric):
    """F(R(x, y), S(x, y)) with chain-rule partials (first and second order)."""
    def F(x, y):
        R, S = smap(x, y)
        return metric.F(R, S)

    def grad(x, y):
        R, S = smap(x, y)
        FR, FS = metric.F.gradient(R, S)
        Rx, Ry, Sx, Sy = smap.first(x, y)
        return FR * Rx + FS * Sx, FR * Ry + FS * Sy

    return ScalarField(F, {"x": lambda x, y: grad(x, y)[0],
                           "y": lambda x, y: grad(x, y)[1]})


def backlund_residuals(pair, x, y, numeric=False):
    """Real-reduced residuals (r1, r2) of the Baecklund pair."""
    sig = pair.sig
    s = sig.sigma2
    om = pair.omega.numeric() if numeric else pair.omega
    th = pair.theta.numeric() if numeric else pair.theta
    Fx, Fy = (pair.F.numeric() if numeric else pair.F).gradient(x, y)
    w = om(x, y)
    t = tanh_r(w, s)
    if abs(sinh_r(w, s)) < 1e-12:
        raise SingularFrameError(f"sin_s(w) vanishes at ({x}, {y})")
    r1 = om.d("x", x, y) - th.d("y", x, y) - 0.5 * Fx * t
    r2 = om.d("y", x, y) - sig.e * th.d("x", x, y) - 0.5 * s * Fy / t
    return r1, r2


def backlund_residuals_complex(pair, x, y, numeric=False, sigma=None):
    """Same residuals from Omega = sigma w, Theta = delta t in complex form.

    Each residual is divided by sigma before reduction; ``sigma`` overrides
    the signature's value for negative controls.
    """
    sig = pair.sig
    s = sig.sigma if sigma is None else sigma
    eps, delta = sig.eps, sig.delta
    om = pair.omega.numeric() if numeric else pair.omega
    th = pair.theta.numeric() if numeric else pair.theta
    Fx, Fy = (pair.F.numeric() if numeric else pair.F).gradient(x, y)
    Om = s * om(x, y)
    if abs(cmath.sinh(Om)) < 1e-12:
        raise SingularFrameError(f"sinh(Omega) vanishes at ({x}, {y})")
    r1 = (s * om.d("x", x, y) - delta * th.d("y", x, y) / eps
          - 0.5 * Fx * cmath.tanh(Om))
    r2 = (s * om.d("y", x, y) - eps * delta * th.d("x", x, y)
          - 0.5 * Fy / cmath.tanh(Om))
    return complex_reduce(r1 / s), complex_reduce(r2 / s)


# ---------------------------------------------------------------------------
# linear-fraction metrics

@dataclass(frozen=True)
class LinearFractionMetric:
    """e^F = 1 / (a R + d b S)^2."""

    a: float
    b: float
    d: int

    def __post_init__(self):
        if self.d not in (1, -1):
            raise DomainError("d must be +1 or -1")
        if self.a == 0.0 and self.b == 0.0:
            raise DomainError("a and b cannot both vanish")

    @property
    def delta(self):
        return 1.0 if self.d == 1 else 1j

    @property
    def curvature_constant(self):
        return -self.a ** 2 + self.d * self.b ** 2

    def L(self, R, S):
        val = self.a * R + self.d * self.b * S
        if val == 0.0:
            raise PoleError(f"a R + d b S vanishes at ({R}, {S})", location=(R, S))
        return val

    def to_metric(self):
        a, db = self.a, self.d * self.b
        L = self.L
        return ConformalMetric(ScalarField(
            lambda R, S: -2.0 * math.log(abs(L(R, S))),
            {
                "x": lambda R, S: -2.0 * a / L(R, S),
                "y": lambda R, S: -2.0 * db / L(R, S),
                "xx": lambda R, S: 2.0 * a * a / L(R, S) ** 2,
                "xy": lambda R, S: 2.0 * a * db / L(R, S) ** 2,
                "yy": lambda R, S: 2.0 * db * db / L(R, S) ** 2,
            }), self.d)

    def F_V(self, R, S):
        """-(a + delta b) / L, i.e. -(a + delta b) e^{F/2} up to the sign of L."""
        return -(self.a + self.delta * self.b) / self.L(R, S)

    def F_W(self, R, S):
        return -(self.a - self.delta * self.b) / self.L(R, S)


def linear_fraction_metric(a, b, d):
    return LinearFractionMetric(a, b, d).to_metric()


def theta_equation_residual(theta, metric, smap, x, y, numeric=False):
    """t_xx - e t_yy minus its right-hand side, for a general conformal metric.

    Right-hand side (complex form): 2 e^{-F} [P e^{2 Theta} - Q e^{-2 Theta}]
    with P = F_V^2 - F_VV, Q = F_W^2 - F_WW, evaluated along the map.
    """
    sig = smap.sig
    th = theta.numeric() if numeric else theta
    R, S = smap(x, y)
    F = metric.F(R, S)
    P = metric.F_V(R, S) ** 2 - metric.F_VV(R, S)
    Q = metric.F_W(R, S) ** 2 - metric.F_WW(R, S)
    Th = sig.delta * th(x, y)
    rhs = 2.0 * math.exp(-F) * (P * cmath.exp(2.0 * Th) - Q * cmath.exp(-2.0 * Th))
    lhs = th.d("xx", x, y) - sig.e * th.d("yy", x, y)
    return lhs - complex_reduce(rhs / sig.delta)


def theta_equation_linear_fraction(theta, lf, sig, x, y, numeric=False):
    """t_xx - e t_yy - [(a + delta b)^2 e^{2 Theta} - (a - delta b)^2 e^{-2 Theta}] / delta."""
    th = theta.numeric() if numeric else theta
    Th = sig.delta * th(x, y)
    ap, am = lf.a + sig.delta * lf.b, lf.a - sig.delta * lf.b
    rhs = ap * ap * cmath.exp(2.0 * Th) - am * am * cmath.exp(-2.0 * Th)
    lhs = th.d("xx", x, y) - sig.e * th.d("yy", x, y)
    return lhs - complex_reduce(rhs / sig.delta)


# ---------------------------------------------------------------------------
# closed-form example: metric 1/S^2

@dataclass(frozen=True)
class BacklundExample:
    sig: Signature
    pair: BacklundPair
    map: SurfaceMap
    metric: ConformalMetric
    lf: LinearFractionMetric

    def in_cell(self, x, y):
        return _example_cell(self.sig, x, y)


def _example_cell(sig, x, y):
    if y == 0.0:
        return False
    C = cosh_r(2.0 * x, -sig.d)
    if sig.d == 1 and (abs(2.0 * x) >= 0.5 * math.pi or C < 1e-8):
        return False
    q = _kappa(sig) * C / y
    if sig.sigma2 == 1 and abs(abs(q) - 1.0) < 1e-10:
        return False
    S = sig.e * y * y / C - sig.d * C / 4.0
    return abs(S) > 1e-12


def _kappa(sig):
    # q = cos(2 delta x) / (2 delta eps y), written as kappa C(x) / y
    return 0.5 if (sig.e, sig.d) == (1, 1) else -0.5


def example_pair(sig):
    """Explicit solution for the target metric 1/S^2 (curvature d).

    Real forms, with C(x) = cosh_d(2x) (cos for d = +1, cosh for d = -1)
    and T(x) = tanh_d(2x):

        t = arcsinh(tan 2x)    (d = +1),      t = arcsin(tanh 2x)  (d = -1)
        R = d e y^2 T(x) + x/2,    S = e y^2 / C(x) - d C(x)/4
        w = ln|(1+q)/(1-q)|        (s = +1),  q = kappa C / y
        w = 2 (i/sigma) arctan(q)  (s = -1)

    with kappa = 1/2 for e = d = 1 and -1/2 otherwise.
    """
    e, d, s = sig.e, sig.d, sig.sigma2
    kap = _kappa(sig)
    lf = LinearFractionMetric(0.0, 1.0, d)
    metric = lf.to_metric()

    def C(x):
        return cosh_r(2.0 * x, -d)

    def C1(x):
        return -2.0 * d * sinh_r(2.0 * x, -d)

    def C2(x):
        return -4.0 * d * C(x)

    def guard(x, y):
        if not _example_cell(sig, x, y):
            raise PoleError(f"({x}, {y}) outside the example's cell", location=(x, y))

    # theta(x)
    if d == 1:
        th = lambda x: math.asinh(math.tan(2.0 * x))
        th1 = lambda x: 2.0 / math.cos(2.0 * x)
        th2 = lambda x: 4.0 * math.tan(2.0 * x) / math.cos(2.0 * x)
    else:
        th = lambda x: math.asin(math.tanh(2.0 * x))
        th1 = lambda x: 2.0 / math.cosh(2.0 * x)
        th2 = lambda x: -4.0 * math.tanh(2.0 * x) / math.cosh(2.0 * x)
    zero = lambda x, y: 0.0

    def _g(x, y):
        guard(x, y)
        return th(x)

    theta = ScalarField(_g, {
        "x": lambda x, y: th1(x), "y": zero,
        "xx": lambda x, y: th2(x), "xy": zero, "yy": zero,
    })

    # omega(x, y) through q = kappa C / y
    if s == 1:
        g0 = lambda q: math.log(abs((1.0 + q) / (1.0 - q)))
        g1 = lambda q: 2.0 / (1.0 - q * q)
        g2 = lambda q: 4.0 * q / (1.0 - q * q) ** 2
    else:
        sgn = (1j / sig.sigma).real  # +1 for sigma = i, -1 for sigma = -i
        g0 = lambda q: 2.0 * sgn * math.atan(q)
        g1 = lambda q: 2.0 * sgn / (1.0 + q * q)
        g2 = lambda q: -4.0 * sgn * q / (1.0 + q * q) ** 2

    def qjet(x, y):
        guard(x, y)
        c, c1, c2 = C(x), C1(x), C2(x)
        q = kap * c / y
        return (q, kap * c1 / y, -kap * c / y ** 2,
                kap * c2 / y, -kap * c1 / y ** 2, 2.0 * kap * c / y ** 3)

    def wjet(x, y, which):
        q, qx, qy, qxx, qxy, qyy = qjet(x, y)
        a, b = g1(q), g2(q)
        return {
            "x": a * qx, "y": a * qy,
            "xx": a * qxx + b * qx * qx,
            "xy": a * qxy + b * qx * qy,
            "yy": a * qyy + b * qy * qy,
        }[which]

    omega = ScalarField(lambda x, y: g0(qjet(x, y)[0]),
                        {k: (lambda k: lambda x, y: wjet(x, y, k))(k)
                         for k in ("x", "y", "xx", "xy", "yy")})

    T = lambda x: tanh_r(2.0 * x, -d)
    T1 = lambda x: 2.0 / C(x) ** 2
    T2 = lambda x: -4.0 * C1(x) / C(x) ** 3
    de = d * e

    def _R(x, y):
        guard(x, y)
        return de * y * y * T(x) + 0.5 * x

    R = ScalarField(_R, {
        "x": lambda x, y: de * y * y * T1(x) + 0.5,
        "y": lambda x, y: 2.0 * de * y * T(x),
        "xx": lambda x, y: de * y * y * T2(x),
        "xy": lambda x, y: 2.0 * de * y * T1(x),
        "yy": lambda x, y: 2.0 * de * T(x),
    })

    def _S(x, y):
        guard(x, y)
        return e * y * y / C(x) - d * C(x) / 4.0

    S = ScalarField(_S, {
        "x": lambda x, y: -e * y * y * C1(x) / C(x) ** 2 - d * C1(x) / 4.0,
        "y": lambda x, y: 2.0 * e * y / C(x),
        "xx": lambda x, y: (e * y * y * (2.0 * C1(x) ** 2 / C(x) ** 3 - C2(x) / C(x) ** 2)
                            - d * C2(x) / 4.0),
        "xy": lambda x, y: -2.0 * e * y * C1(x) / C(x) ** 2,
        "yy": lambda x, y: 2.0 * e / C(x),
    })

    smap = SurfaceMap(R, S, sig)
    Fpull = pulled_back_F(smap, metric)
    pair = BacklundPair(omega, theta, Fpull, sig)
    return BacklundExample(sig, pair, smap, metric, lf)


def example_sample_points(sig, n=50, seed=1):
    """Deterministic points inside the example's cell, away from its edges."""
    rng = np.random.default_rng(seed)
    pts = []
    while len(pts) < n:
        x = float(rng.uniform(-0.3, 0.3))
        y = float(rng.choice([-1.0, 1.0]) * rng.uniform(0.3, 1.5))
        C = cosh_r(2.0 * x, -sig.d)
        q = _kappa(sig) * C / y
        S = sig.e * y * y / C - sig.d * C / 4.0
        if sig.sigma2 == 1 and abs(abs(q) - 1.0) < 0.1:
            continue
        if abs(S) < 0.05:
            continue
        pts.append((x, y))
    return pts
