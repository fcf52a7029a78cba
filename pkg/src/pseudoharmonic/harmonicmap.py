"""Harmonic maps between (pseudo-)Riemannian surfaces and their frames.

A map (R, S) from the domain dx^2 - e dy^2 to the target e^F (dR^2 - d dS^2)
is written through V = R + delta S, W = R - delta S and the null derivatives
d/dv, d/dw.  With Hopf differential normalised to one, the first derivatives
are parametrised by two angles (the frame):

    R_x = 2 E cosh_s(w) cosh_d(t),    R_y = 2 d E sinh_s(w) sinh_d(t),
    S_x = 2 E cosh_s(w) sinh_d(t),    S_y = 2 E sinh_s(w) cosh_d(t),

with E = e^{-F/2}, s = sigma^2 and the reduced hyperbolic functions of
:mod:`pseudoharmonic.geometry`.  In complex form Omega = sigma w,
Theta = delta t and V_v = E e^{Omega + Theta}, V_w = E e^{Theta - Omega},
W_v = E e^{-Omega - Theta}, W_w = E e^{Omega - Theta}.

Most checks below come in two flavours: a real-reduced formula and the
complex null-coordinate expression passed through ``complex_reduce``.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .elliptic import complete_K, elliptic_pi_excess, elliptic_pi_segment, incomplete_F, jacobi
from .errors import (BranchError, DegenerateError, DomainError, ImaginaryLeakError, PoleError,
                     SingularFrameError)
from .geometry import (ConformalMetric, ScalarField, Signature, check_jacobian,
                       complex_reduce, cosh_r, null_from_partials, sinh_r, tanh_r)
from .sinegordon import chart_coordinates, soliton_profile


@dataclass(frozen=True)
class SurfaceMap:
    R: ScalarField
    S: ScalarField
    sig: Signature

    def numeric(self):
        return SurfaceMap(self.R.numeric(), self.S.numeric(), self.sig)

    def __call__(self, x, y):
        return self.R(x, y), self.S(x, y)

    def first(self, x, y):
        """(R_x, R_y, S_x, S_y)."""
        return (self.R.d("x", x, y), self.R.d("y", x, y),
                self.S.d("x", x, y), self.S.d("y", x, y))

    def null_first(self, x, y):
        """(V_v, V_w, W_v, W_w), complex in general."""
        Rx, Ry, Sx, Sy = self.first(x, y)
        delta = self.sig.delta
        Vv, Vw = null_from_partials(Rx + delta * Sx, Ry + delta * Sy, self.sig)
        Wv, Ww = null_from_partials(Rx - delta * Sx, Ry - delta * Sy, self.sig)
        return Vv, Vw, Wv, Ww


@dataclass(frozen=True)
class HopfPair:
    lam: complex
    mu: complex


@dataclass(frozen=True)
class FrameValues:
    omega: float
    theta: float


@dataclass(frozen=True)
class FramePair:
    """Frame angles as fields on the domain."""

    omega: ScalarField
    theta: ScalarField


# ---------------------------------------------------------------------------
# harmonicity

def _metric_at(metric, R, S):
    try:
        F = metric.F(R, S)
        FR, FS = metric.F.gradient(R, S)
    except (ZeroDivisionError, OverflowError, ValueError) as exc:
        raise PoleError(f"target metric singular at ({R}, {S})", location=(R, S)) from exc
    if not all(map(math.isfinite, (F, FR, FS))):
        raise PoleError(f"target metric singular at ({R}, {S})", location=(R, S))
    return F, FR, FS


def tension(smap, metric, x, y, numeric=False):
    """Real tension field (tau^R, tau^S) of the map; zero iff harmonic."""
    m = smap.numeric() if numeric else smap
    e, d = smap.sig.e, metric.d
    R, S = m(x, y)
    Rx, Ry, Sx, Sy = m.first(x, y)
    check_jacobian(Rx, Ry, Sx, Sy)
    _, FR, FS = _metric_at(metric, R, S)
    boxR = m.R.d("xx", x, y) - e * m.R.d("yy", x, y)
    boxS = m.S.d("xx", x, y) - e * m.S.d("yy", x, y)
    gRR = Rx * Rx - e * Ry * Ry
    gRS = Rx * Sx - e * Ry * Sy
    gSS = Sx * Sx - e * Sy * Sy
    tR = boxR + 0.5 * FR * gRR + FS * gRS + 0.5 * d * FR * gSS
    tS = boxS + 0.5 * d * FS * gRR + FR * gRS + 0.5 * FS * gSS
    return tR, tS


def harmonic_residuals(smap, metric, x, y, numeric=False):
    """(V_vw + F_V V_v V_w, W_vw + F_W W_v W_w) in complex arithmetic."""
    m = smap.numeric() if numeric else smap
    sig = smap.sig
    delta = sig.delta
    R, S = m(x, y)
    Rx, Ry, Sx, Sy = m.first(x, y)
    check_jacobian(Rx, Ry, Sx, Sy)
    _metric_at(metric, R, S)
    Rxx, _, Ryy = m.R.hessian(x, y)
    Sxx, _, Syy = m.S.hessian(x, y)
    inv_e2 = 1.0 / sig.eps ** 2
    Vvw = 0.25 * ((Rxx + delta * Sxx) - inv_e2 * (Ryy + delta * Syy))
    Wvw = 0.25 * ((Rxx - delta * Sxx) - inv_e2 * (Ryy - delta * Syy))
    Vv, Vw, Wv, Ww = m.null_first(x, y)
    return (Vvw + metric.F_V(R, S) * Vv * Vw,
            Wvw + metric.F_W(R, S) * Wv * Ww)


def harmonic_residuals_real(smap, metric, x, y, numeric=False):
    """The same pair rebuilt from the real tension field: (tau^R +- delta tau^S)/4."""
    tR, tS = tension(smap, metric, x, y, numeric)
    delta = smap.sig.delta
    return 0.25 * (tR + delta * tS), 0.25 * (tR - delta * tS)


# ---------------------------------------------------------------------------
# Hopf differential, Beltrami relations, frames

def hopf_quantities(smap, metric, x, y):
    """lambda = e^F V_v W_v and mu = e^F V_w W_w (complex path)."""
    R, S = smap(x, y)
    eF = math.exp(_metric_at(metric, R, S)[0])
    Vv, Vw, Wv, Ww = smap.null_first(x, y)
    return HopfPair(eF * Vv * Wv, eF * Vw * Ww)


def hopf_real(smap, metric, x, y):
    """(A, B) with lambda = A + B/eps, mu = A - B/eps, all real.

    A = e^F (R_x^2 + e R_y^2 - d S_x^2 - d e S_y^2)/4,
    B = e^F (R_x R_y - d S_x S_y)/2.
    """
    e, d = smap.sig.e, metric.d
    R, S = smap(x, y)
    eF = math.exp(_metric_at(metric, R, S)[0])
    Rx, Ry, Sx, Sy = smap.first(x, y)
    A = 0.25 * eF * (Rx * Rx + e * Ry * Ry - d * Sx * Sx - d * e * Sy * Sy)
    B = 0.5 * eF * (Rx * Ry - d * Sx * Sy)
    return A, B


def hopf_from_real(A, B, sig):
    inv_eps = 1.0 / sig.eps
    return HopfPair(A + B * inv_eps, A - B * inv_eps)


def orthogonality_check(smap, metric, x, y):
    """(R_x R_y - d S_x S_y, R_x^2 + e R_y^2 - d (S_x^2 + e S_y^2) - 4 e^{-F}).

    Both vanish exactly when the Hopf pair equals one.
    """
    e, d = smap.sig.e, metric.d
    R, S = smap(x, y)
    F = _metric_at(metric, R, S)[0]
    Rx, Ry, Sx, Sy = smap.first(x, y)
    return (Rx * Ry - d * Sx * Sy,
            Rx * Rx + e * Ry * Ry - d * (Sx * Sx + e * Sy * Sy) - 4.0 * math.exp(-F))


def beltrami_check(smap, omega, x, y):
    """Deviations |V_w/V_v - e^{-2 Omega}| and |W_v/W_w - e^{-2 Omega}|.

    ``omega`` is the real frame angle as a ScalarField (Omega = sigma w).
    """
    sig = smap.sig
    Vv, Vw, Wv, Ww = smap.null_first(x, y)
    if Vv == 0 or Ww == 0:
        raise DegenerateError("null derivative vanishes")
    target = cmath.exp(-2.0 * sig.sigma * omega(x, y))
    return abs(Vw / Vv - target), abs(Wv / Ww - target)


def extract_frame(smap, metric, x, y):
    """Frame angles (w, t) of a map with Hopf pair one.

    Omega = (1/2) Log(V_v / V_w) and Theta = F/2 + Log V_v - Omega with the
    principal logarithm, so w is determined modulo pi when sigma^2 = -1 and
    t modulo pi when d = -1.
    """
    sig = smap.sig
    R, S = smap(x, y)
    F = _metric_at(metric, R, S)[0]
    Vv, Vw, Wv, Ww = smap.null_first(x, y)
    if Vv == 0 or Vw == 0:
        raise DegenerateError("null derivative vanishes; frame undefined")
    Om = 0.5 * cmath.log(Vv / Vw)
    Th = 0.5 * F + cmath.log(Vv) - Om
    # (Omega, Theta) and (Omega + i pi, Theta + i pi) give the same map
    err = None
    for k in (0, 1, -1):
        shift = 1j * math.pi * k
        try:
            return FrameValues(complex_reduce((Om - shift) / sig.sigma),
                               complex_reduce((Th - shift) / sig.delta))
        except ImaginaryLeakError as exc:
            err = err or exc
    raise err


def theta_alternative(smap, x, y):
    """Theta from (1/4) log(V_v V_w / (W_v W_w)), independent of F."""
    sig = smap.sig
    Vv, Vw, Wv, Ww = smap.null_first(x, y)
    Th = 0.25 * cmath.log((Vv * Vw) / (Wv * Ww))
    return complex_reduce(Th / sig.delta)


def frame_first_derivatives(omega, theta, F, sig):
    """(R_x, R_y, S_x, S_y) from the real frame angles and F."""
    s, d = sig.sigma2, sig.d
    E = math.exp(-0.5 * F)
    cw, sw = cosh_r(omega, s), sinh_r(omega, s)
    ct, st = cosh_r(theta, d), sinh_r(theta, d)
    return (2 * E * cw * ct, 2 * d * E * sw * st, 2 * E * cw * st, 2 * E * sw * ct)


def frame_first_derivatives_complex(omega, theta, F, sig):
    """Same through V_v = E e^{Omega + Theta} etc., then reduced."""
    Om, Th = sig.sigma * omega, sig.delta * theta
    E = math.exp(-0.5 * F)
    Vv, Vw = E * cmath.exp(Om + Th), E * cmath.exp(Th - Om)
    Wv, Ww = E * cmath.exp(-Om - Th), E * cmath.exp(Om - Th)
    Vx, Vy = Vv + Vw, sig.eps * (Vv - Vw)
    Wx, Wy = Wv + Ww, sig.eps * (Wv - Ww)
    return (complex_reduce(0.5 * (Vx + Wx)), complex_reduce(0.5 * (Vy + Wy)),
            complex_reduce(0.5 * (Vx - Wx) / sig.delta),
            complex_reduce(0.5 * (Vy - Wy) / sig.delta))


def frame_residual(smap, metric, frame, x, y):
    """Largest mismatch between the map's first derivatives and its frame."""
    R, S = smap(x, y)
    F = _metric_at(metric, R, S)[0]
    want = frame_first_derivatives(frame.omega, frame.theta, F, smap.sig)
    have = smap.first(x, y)
    return max(abs(a - b) for a, b in zip(want, have))


def frame_fields(smap, metric):
    """Frame angles as numeric ScalarFields (finite-difference partials)."""
    return FramePair(
        ScalarField(lambda x, y: extract_frame(smap, metric, x, y).omega),
        ScalarField(lambda x, y: extract_frame(smap, metric, x, y).theta),
    )


def angle_difference(a, b, period):
    """a - b reduced to (-period/2, period/2]."""
    return math.remainder(a - b, period)


# ---------------------------------------------------------------------------
# curvature, first and second order systems, converse metric

def induced_curvature(omega, sig, x, y, numeric=False):
    """K = -2 w_vw / sin_s(2 w): the curvature a frame angle forces on the target."""
    f = omega.numeric() if numeric else omega
    w = f(x, y)
    den = sinh_r(2.0 * w, sig.sigma2)
    if abs(den) < 1e-10:
        raise SingularFrameError(f"sin_s(2w) vanishes at ({x}, {y})")
    wvw = 0.25 * (f.d("xx", x, y) - sig.e * f.d("yy", x, y))
    return -2.0 * wvw / den


def induced_curvature_complex(omega, sig, x, y, numeric=False):
    f = omega.numeric() if numeric else omega
    s = sig.sigma
    Om = s * f(x, y)
    Om_vw = 0.25 * s * (f.d("xx", x, y) - f.d("yy", x, y) / sig.eps ** 2)
    den = cmath.sinh(2.0 * Om)
    if abs(den) < 1e-10:
        raise SingularFrameError(f"sinh(2 Omega) vanishes at ({x}, {y})")
    return complex_reduce(-2.0 * Om_vw / den)


def first_order_residuals(smap, omega, x, y):
    """(sinh_s(w) R_x - cosh_s(w) S_y, cosh_s(w) R_y - d sinh_s(w) S_x)."""
    sig = smap.sig
    w = omega(x, y)
    sw, cw = sinh_r(w, sig.sigma2), cosh_r(w, sig.sigma2)
    Rx, Ry, Sx, Sy = smap.first(x, y)
    return sw * Rx - cw * Sy, cw * Ry - sig.d * sw * Sx


def first_order_residuals_complex(smap, omega, x, y):
    """sinh(Om) R_x - (delta/eps) cosh(Om) S_y and cosh(Om) R_y/eps - delta sinh(Om) S_x.

    The first is sigma times its real form, the second 1/eps times it.
    """
    sig = smap.sig
    Om = sig.sigma * omega(x, y)
    Rx, Ry, Sx, Sy = smap.first(x, y)
    r1 = cmath.sinh(Om) * Rx - sig.sigma * cmath.cosh(Om) * Sy
    r2 = cmath.cosh(Om) * Ry / sig.eps - sig.delta * cmath.sinh(Om) * Sx
    return complex_reduce(r1 / sig.sigma), complex_reduce(r2 * sig.eps)


def second_order_residual(smap, omega, x, y, which="R", form="expanded"):
    """Second-order equation obtained by eliminating the other component.

    R:  (tan_s(w) R_x)_x - d (cot_s(w) R_y)_y = 0
    S:  d (tan_s(w) S_x)_x - (cot_s(w) S_y)_y = 0

    ``form='divergence'`` differentiates the fluxes numerically,
    ``form='expanded'`` uses the product rule with the fields' own partials.
    """
    sig = smap.sig
    s, d = sig.sigma2, sig.d
    f = smap.R if which == "R" else smap.S
    a, b = (1.0, d) if which == "R" else (d, 1.0)
    if form == "divergence":
        flux_x = ScalarField(lambda x_, y_: tanh_r(omega(x_, y_), s) * f.d("x", x_, y_))
        flux_y = ScalarField(lambda x_, y_: f.d("y", x_, y_) / tanh_r(omega(x_, y_), s))
        return a * flux_x.d("x", x, y) - b * flux_y.d("y", x, y)
    w = omega(x, y)
    t = tanh_r(w, s)
    if abs(t) < 1e-12:
        raise SingularFrameError("tan_s(w) vanishes")
    cw, sw = cosh_r(w, s), sinh_r(w, s)
    dt = 1.0 / (cw * cw)          # d tan_s / dw
    dcot = -1.0 / (sw * sw)       # d cot_s / dw
    wx, wy = omega.d("x", x, y), omega.d("y", x, y)
    fx, fy = f.d("x", x, y), f.d("y", x, y)
    fxx, fyy = f.d("xx", x, y), f.d("yy", x, y)
    return (a * (t * fxx + dt * wx * fx)
            - b * (fyy / t + dcot * wy * fy))


def converse_metric(smap, omega, x, y):
    """e^{2 Omega} / (V_v W_w): the conformal factor that makes the map harmonic.

    Returns ``(value, branch)`` where branch = -1 signals that the real
    reduction came out negative and the sign was flipped.
    """
    sig = smap.sig
    Vv, Vw, Wv, Ww = smap.null_first(x, y)
    den = Vv * Ww
    if den == 0:
        raise DegenerateError("V_v W_w vanishes")
    val = complex_reduce(cmath.exp(2.0 * sig.sigma * omega(x, y)) / den)
    if val < 0:
        return -val, -1
    return val, 1


# ---------------------------------------------------------------------------
# energy

def energy_density(smap, metric, x, y):
    """e^F (V_v W_w + V_w W_v) = (1/2) e^F (R_x^2 - e R_y^2 - d S_x^2 + d e S_y^2)."""
    e, d = smap.sig.e, metric.d
    R, S = smap(x, y)
    eF = math.exp(_metric_at(metric, R, S)[0])
    Rx, Ry, Sx, Sy = smap.first(x, y)
    return 0.5 * eF * (Rx * Rx - e * Ry * Ry - d * Sx * Sx + d * e * Sy * Sy)


def energy_density_complex(smap, metric, x, y):
    R, S = smap(x, y)
    eF = math.exp(_metric_at(metric, R, S)[0])
    Vv, Vw, Wv, Ww = smap.null_first(x, y)
    return complex_reduce(eF * (Vv * Ww + Vw * Wv))


def energy(smap, metric, region, n=(65, 65)):
    """Trapezoidal energy over region = (x0, x1, y0, y1) with n = (nx, ny) nodes.

    Normalised as (1/2) int e^F (V_v W_w + V_w W_v) dv dw, where |dv dw| = 2 dx dy.
    """
    x0, x1, y0, y1 = region
    nx, ny = n
    if nx < 2 or ny < 2:
        raise DomainError("energy needs at least 2 nodes per direction")
    xs = np.linspace(x0, x1, nx)
    ys = np.linspace(y0, y1, ny)
    vals = np.array([[energy_density(smap, metric, x, y) for x in xs] for y in ys])
    return float(np.trapezoid(np.trapezoid(vals, xs, axis=1), ys))


# ---------------------------------------------------------------------------
# specific coordinates

def _quadrature_path(weight, fun, a, b):
    def g(t):
        val = fun(t)
        if not val > 0.0:
            raise BranchError(f"Hopf function is {val} <= 0 on the integration path")
        return weight(val)

    out, _ = quad(g, a, b, epsabs=1e-13, epsrel=1e-12, limit=200)
    return out


def specific_transform(Lambda, M, v, w, base=(0.0, 0.0)):
    """zeta = int dv / sqrt(Lambda(v)), eta = int dw / sqrt(M(w)) from ``base``.

    Lambda and M must stay positive along the path (real square root).
    Note that a Hopf pair (Lambda, M) is a quadratic differential, so the
    coordinates in which it becomes one are :func:`normalising_coordinates`,
    i.e. this transform applied to (1/Lambda, 1/M).
    """
    inv_sqrt = lambda val: 1.0 / math.sqrt(val)
    return (_quadrature_path(inv_sqrt, Lambda, base[0], v),
            _quadrature_path(inv_sqrt, M, base[1], w))


def normalising_coordinates(Lambda, M, v, w, base=(0.0, 0.0)):
    """zeta = int sqrt(Lambda) dv, eta = int sqrt(M) dw: Hopf pair one in (zeta, eta).

    Lambda dv^2 = d zeta^2 is what the change of null coordinates must achieve.
    """
    return (_quadrature_path(math.sqrt, Lambda, base[0], v),
            _quadrature_path(math.sqrt, M, base[1], w))


# ---------------------------------------------------------------------------
# soliton maps

def _x_over_sinh(x):
    return 1.0 if x == 0.0 else x / math.sinh(x)


def _x_over_sin(x):
    return 1.0 if x == 0.0 else x / math.sin(x)


def _x_coth(x):
    return 1.0 if x == 0.0 else x / math.tanh(x)


def _x_cot(x):
    return 1.0 if x == 0.0 else x / math.tan(x)


def _antiderivative_I(Z, N2):
    """Antiderivative of 1/(Z^2 - N^2), continuous in N^2 and vanishing as Z -> inf."""
    if Z == 0.0:
        raise PoleError("Z vanishes", location=0.0)
    q = N2 / (Z * Z)
    if abs(q) < 1e-3:
        return -sum(q ** k / (2 * k + 1) for k in range(8)) / Z
    if N2 > 0:
        N = math.sqrt(N2)
        return 0.5 / N * math.log(abs((Z - N) / (Z + N)))
    a = math.sqrt(-N2)
    return -math.atan(a / Z) / a


class SolitonHarmonicMap:
    """Harmonic map built from a travelling wave, with its target metric.

    The map satisfies R_X = 1, S_X = 0 in the soliton chart and

        R_Y = e sinh_e(2 tau) / D,   S_Y = sin_s(2 w) / D,
        D = cosh_e(2 tau) + cosh_s(2 w),    e^F = (2 / rho^2) D,

    where the last relation, read through S(Y), defines a metric e^{F(S)}
    of constant curvature K on the target.  The map lives on the single cell
    of the Jacobi argument that contains Y0 (between consecutive poles of w,
    or consecutive zeros of D).
    """

    def __init__(self, params, R0=0.0, S0=0.0, X0=0.0):
        p = params.check_admissible()
        self.p = p
        self.sig = p.sig
        self.profile = soliton_profile(p)
        self.R0, self.S0, self.X0 = R0, S0, X0
        e = p.sig.e
        self.ch, self.sh = p.ch, p.sh
        self.cosh2tau = cosh_r(2.0 * p.tau, e)
        self.sinh2tau = sinh_r(2.0 * p.tau, e)
        if p.case == 1:
            self._init_case1()
        else:
            self._init_case2()
        self.map = SurfaceMap(self._R_field(), self._S_field(), p.sig)
        self.metric = ConformalMetric(self._F_field(), p.sig.d)
        self.omega_field = self.profile.field()

    # -- cells ------------------------------------------------------------
    def _init_case1(self):
        p = self.p
        self.jm, self.mu, self.N2 = p.m, p.mu, p.N2
        self.u0 = p.c * p.psi
        Kc = complete_K(self.jm) if self.jm < 1.0 else math.inf
        self.Kc = Kc
        if p.s2 == 1:
            half = Kc
        elif p.sig.e == 1:
            half = Kc if self.sh == 0.0 else math.inf
        else:
            a = abs(self.ch)
            half = Kc if a >= 1.0 else incomplete_F(math.asin(a), self.jm)
        if math.isfinite(Kc):
            center = 2.0 * Kc * round(self.u0 / (2.0 * Kc))
        else:
            center = 0.0
        self.cell = (center - half, center + half)
        if not (self.cell[0] < self.u0 < self.cell[1]) or self._cell_distance_u(self.u0) < 1e-8:
            raise PoleError("reference point Y0 sits on a cell boundary", location=p.Y0)
        self.I0 = _antiderivative_I(self._Z(self.u0), self.N2)
        self.Sigma0 = self.S0 - p.s2 * self.I0 / p.c
        if p.s2 == 1:
            self._n = e_th2 = p.sig.e * (self.sh / self.ch) ** 2
            self._J0 = elliptic_pi_excess(e_th2, self.u0, self.jm)
        else:
            self._n = 1.0 / self.ch ** 2

    def _init_case2(self):
        p = self.p
        self.k = p.k
        self.a = self.ch
        # D > 0 needs |cosh(k Y)| > 1/|a| when |a| < 1 (s = -1 only)
        if p.s2 == -1 and abs(self.a) < 1.0:
            self.gap = math.acosh(1.0 / abs(self.a)) / self.k
        else:
            self.gap = 0.0
        self.Sigma0 = self.S0

    def _cell_distance_u(self, u):
        lo, hi = self.cell
        return min(u - lo, hi - u)

    def cell_distance(self, x, y):
        """Signed distance to the nearest cell boundary (negative outside).

        Measured in the Jacobi argument u for c > 0 and in Y for c = 0.
        """
        X, Y = chart_coordinates(self.p, x, y)
        if self.p.case == 1:
            return self._cell_distance_u(self.profile.u(Y))
        return abs(Y - self.p.Y0) - self.gap

    def check_cell(self, x, y, radius=0.0):
        dist = self.cell_distance(x, y)
        if dist <= radius:
            raise PoleError(f"({x}, {y}) is outside the map's cell", location=(x, y))
        return dist

    def excluded(self, x, y, radius=1e-3):
        return self.cell_distance(x, y) <= radius

    # -- building blocks in Y ------------------------------------------------
    def _Z(self, u):
        sn, cn, dn = jacobi(u, self.jm)
        if self.p.s2 == 1:
            return dn / cn
        return dn

    def _D(self, Y):
        w = self.profile.omega(Y)
        return self.cosh2tau + cosh_r(2.0 * w, self.p.s2)

    def R_Y(self, Y):
        return self.p.sig.e * self.sinh2tau / self._D(Y)

    def S_Y(self, Y):
        return sinh_r(2.0 * self.profile.omega(Y), self.p.s2) / self._D(Y)

    def R_YY(self, Y):
        D = self._D(Y)
        w, dw = self.profile.omega(Y), self.profile.d_omega(Y)
        dD = 2.0 * self.p.s2 * sinh_r(2.0 * w, self.p.s2) * dw
        return -self.p.sig.e * self.sinh2tau * dD / (D * D)

    def S_YY(self, Y):
        s2 = self.p.s2
        D = self._D(Y)
        w, dw = self.profile.omega(Y), self.profile.d_omega(Y)
        sw2, cw2 = sinh_r(2.0 * w, s2), cosh_r(2.0 * w, s2)
        dD = 2.0 * s2 * sw2 * dw
        return (2.0 * cw2 * dw * D - sw2 * dD) / (D * D)

    def r_offset(self, Y):
        """R - R0 - (X - X0) as a function of Y."""
        p = self.p
        e = p.sig.e
        if p.case == 1:
            if self.sh == 0.0:
                return 0.0
            u = self.profile.u(Y)
            if p.s2 == 1:
                dJ = elliptic_pi_excess(self._n, u, self.jm) - self._J0
                return e * self.sh / (p.c * self.ch) * ((u - self.u0) - dJ / self.ch ** 2)
            dPi = elliptic_pi_segment(self._n, self.u0, u, self.jm)
            return e * self.sh / (p.c * self.ch) * dPi
        t = Y - p.Y0
        kt = self.k * t
        a, sh, k = self.a, self.sh, self.k
        if sh == 0.0:
            return 0.0
        if p.s2 == 1:
            z = sh * math.tanh(kt)
            A = math.atan(z) if e == 1 else math.atanh(z)
            return e / a * (sh * t - A / k)
        th = math.tanh(kt)
        if e == 1:
            extra = math.atan(th / sh) / k
        else:
            extra = 0.5 / k * math.log(abs((th - sh) / (th + sh)))
        return e / a * (sh * t + extra)

    def s_offset(self, Y):
        """S - S0 as a function of Y."""
        p = self.p
        if p.case == 1:
            I = _antiderivative_I(self._Z(self.profile.u(Y)), self.N2)
            return p.s2 * (I - self.I0) / p.c
        kt = self.k * (Y - p.Y0)
        a, k = self.a, self.k
        if p.s2 == 1:
            return math.atan(a * math.sinh(kt)) / (k * a)
        q = math.cosh(kt)
        return 0.5 / (k * a) * math.log(abs((a * q - 1.0) / (a * q + 1.0)))

    # -- fields on the domain ------------------------------------------------
    def _Y(self, x, y):
        self.check_cell(x, y)
        return -self.p.beta * x + self.p.gamma * y

    def _R_field(self):
        g, b, e = self.p.gamma, self.p.beta, self.p.sig.e

        def R(x, y):
            self.check_cell(x, y)
            X, Y = chart_coordinates(self.p, x, y)
            return self.R0 + (X - self.X0) + self.r_offset(Y)

        return ScalarField(R, {
            "x": lambda x, y: g - b * self.R_Y(self._Y(x, y)),
            "y": lambda x, y: -e * b + g * self.R_Y(self._Y(x, y)),
            "xx": lambda x, y: b * b * self.R_YY(self._Y(x, y)),
            "xy": lambda x, y: -b * g * self.R_YY(self._Y(x, y)),
            "yy": lambda x, y: g * g * self.R_YY(self._Y(x, y)),
        })

    def _S_field(self):
        g, b = self.p.gamma, self.p.beta

        def S(x, y):
            return self.S0 + self.s_offset(self._Y(x, y))

        return ScalarField(S, {
            "x": lambda x, y: -b * self.S_Y(self._Y(x, y)),
            "y": lambda x, y: g * self.S_Y(self._Y(x, y)),
            "xx": lambda x, y: b * b * self.S_YY(self._Y(x, y)),
            "xy": lambda x, y: -b * g * self.S_YY(self._Y(x, y)),
            "yy": lambda x, y: g * g * self.S_YY(self._Y(x, y)),
        })

    # -- target metric as a function of S ---------------------------------------
    def _F_parts(self, S):
        """(F, F_S, F_SS) of the target metric at S."""
        p = self.p
        rho2 = p.rho ** 2
        if p.case == 1:
            kap = p.c * p.s2
            I = kap * (S - self.Sigma0)
            N2, mu = self.N2, self.mu
            if N2 > 0 and mu < 0:
                N = math.sqrt(N2)
                x = N * I
                F = math.log(4.0 * N2 / (rho2 * -mu)) - 2.0 * math.log(math.cosh(x))
                return F, -2.0 * N * kap * math.tanh(x), -2.0 * N2 * kap ** 2 / math.cosh(x) ** 2
            if I == 0.0:
                raise PoleError("target metric singular", location=self.Sigma0)
            if N2 >= 0:
                x = math.sqrt(N2) * I
                ratio = _x_over_sinh(x)
                dlog = -2.0 * _x_coth(x) / I
                d2 = 2.0 / (I * I) * ratio ** 2
            else:
                x = math.sqrt(-N2) * I
                if abs(math.sin(x)) < 1e-300:
                    raise PoleError("target metric singular", location=S)
                ratio = _x_over_sin(x)
                dlog = -2.0 * _x_cot(x) / I
                d2 = 2.0 / (I * I) * ratio ** 2
            if mu <= 0:
                raise PoleError("target metric has the wrong sign here", location=S)
            F = math.log(4.0 / (rho2 * mu)) + 2.0 * math.log(abs(ratio)) - 2.0 * math.log(abs(I))
            return F, kap * dlog, kap * kap * d2
        a, k = self.a, self.k
        x = k * a * (S - self.Sigma0)
        if p.s2 == 1:
            sx = math.sin(x)
            if sx == 0.0:
                raise PoleError("target metric singular", location=S)
            F = math.log(4.0 * a * a / rho2) - 2.0 * math.log(abs(sx))
            return F, -2.0 * k * a * math.cos(x) / sx, 2.0 * (k * a / sx) ** 2
        F = math.log(4.0 * a * a / rho2) - 2.0 * math.log(math.cosh(x))
        return F, -2.0 * k * a * math.tanh(x), -2.0 * (k * a / math.cosh(x)) ** 2

    def _F_field(self):
        zero = lambda R, S: 0.0
        return ScalarField(lambda R, S: self._F_parts(S)[0], {
            "x": zero, "xx": zero, "xy": zero,
            "y": lambda R, S: self._F_parts(S)[1],
            "yy": lambda R, S: self._F_parts(S)[2],
        })

    # -- two routes to e^F, frame angles ---------------------------------------
    def expF_direct(self, x, y):
        """(2 / rho^2) D evaluated from w."""
        return 2.0 / self.p.rho ** 2 * self._D(self._Y(x, y))

    def expF_from_S(self, x, y):
        R, S = self.map(x, y)
        return self.metric.expF(R, S)

    def omega(self, x, y):
        return self.profile.omega(self._Y(x, y))

    def theta(self, x, y):
        """Second frame angle in closed form."""
        w = self.omega(x, y)
        tau = self.p.tau
        e, d = self.sig.e, self.sig.d
        if (e, d) == (1, 1):
            return 0.5 * math.log(math.cosh(w - tau) / math.cosh(w + tau))
        if (e, d) == (-1, 1):
            return 0.5 * math.log(math.cos(w + tau) / math.cos(w - tau))
        if (e, d) == (1, -1):
            return -math.atan2(math.sinh(tau) * math.sin(w), math.cosh(tau) * math.cos(w))
        return -math.atan2(math.sinh(w) * math.sin(tau), math.cosh(w) * math.cos(tau))

    def theta_complex(self, x, y):
        """Theta = log(rho e^{F/2} / 2) - Log cosh(Omega + eps tau), reduced by delta."""
        sig = self.sig
        w = self.omega(x, y)
        F = math.log(self.expF_direct(x, y))
        Th = (math.log(0.5 * self.p.rho) + 0.5 * F
              - cmath.log(cmath.cosh(sig.sigma * w + sig.eps * self.p.tau)))
        return complex_reduce(Th / sig.delta)

    def frame_pair(self):
        return FramePair(self.omega_field,
                         ScalarField(lambda x, y: self.theta(x, y)))

    def chart_derivatives(self, x, y):
        """(R_X, R_Y, S_X, S_Y) by the chain rule from the (x, y) partials."""
        p = self.p
        r2 = p.rho ** 2
        g, b, e = p.gamma, p.beta, p.sig.e
        Rx, Ry, Sx, Sy = self.map.first(x, y)
        # d/dX = (g d/dx + b d/dy)/rho^2,  d/dY = (e b d/dx + g d/dy)/rho^2
        return ((g * Rx + b * Ry) / r2, (e * b * Rx + g * Ry) / r2,
                (g * Sx + b * Sy) / r2, (e * b * Sx + g * Sy) / r2)

    def sample_points(self, n=200, span=0.8, x_span=1.0, seed=0):
        """Deterministic points inside the cell (fraction ``span`` of its width)."""
        rng = np.random.default_rng(seed)
        p = self.p
        pts = []
        if p.case == 1:
            lo, hi = self.cell
            if not math.isfinite(lo):
                lo, hi = self.u0 - 2.0, self.u0 + 2.0
            mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo) * span
            us = rng.uniform(mid - half, mid + half, n)
            Ys = us / p.c + p.Y0 - p.psi
        else:
            lo = self.gap + 0.2 / self.k
            hi = lo + 1.5 / self.k
            Ys = p.Y0 + rng.choice([-1.0, 1.0], n) * rng.uniform(lo, hi, n)
        Xs = rng.uniform(-x_span, x_span, n)
        for X, Y in zip(Xs, Ys):
            r2 = p.rho ** 2
            x = (p.gamma * X + p.sig.e * p.beta * Y) / r2
            y = (p.beta * X + p.gamma * Y) / r2
            pts.append((float(x), float(y)))
        return pts


def construct_soliton_map(params, R0=0.0, S0=0.0, X0=0.0):
    return SolitonHarmonicMap(params, R0, S0, X0)
