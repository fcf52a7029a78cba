"""Verification suites: residual checks gathered into reports.

Each suite evaluates residuals on deterministic sample sets and records,
per check, the largest residual, its tolerance and how many sample points
were dropped because they fell outside the solution's cell.
"""

import json
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .backlund import (BacklundPair, LinearFractionMetric, backlund_residuals,
                       backlund_residuals_complex, example_pair, example_sample_points,
                       pulled_back_F, theta_equation_linear_fraction, theta_equation_residual)
from .elliptic import (complete_K, elliptic_pi, first_singular_point, jacobi,
                       jacobi_quotient, oracle_K, oracle_jacobi, oracle_pi_argument)
from .errors import DomainError, ImaginaryLeakError
from .geometry import ALL_SIGNATURES, ConformalMetric, ScalarField, curvature, curvature_null
from .harmonicmap import (beltrami_check, construct_soliton_map, converse_metric,
                          energy_density, energy_density_complex, harmonic_residuals,
                          harmonic_residuals_real, hopf_from_real, hopf_quantities, hopf_real,
                          induced_curvature, induced_curvature_complex)
from .sinegordon import (SineGordonProblem, SolitonParams, first_integral, sg_residual,
                         sg_residual_complex)

SUITES = ("elliptic", "soliton", "harmonic", "backlund", "example")

DEFAULT_RHO = 2.5
DEFAULT_TAU = 0.35
# curvature per signature (e, d): Case I needs K d > 0 when d e = +1 and
# 4 K d / rho^2 <= 1 otherwise; Case II needs K e > 0
DEFAULT_K_CASE1 = {(1, 1): 1.0, (1, -1): -1.0, (-1, 1): 1.0, (-1, -1): -1.0}
DEFAULT_K_CASE2 = {(1, 1): 1.0, (1, -1): 1.0, (-1, 1): -1.0, (-1, -1): -1.0}

N_SOLITON_POINTS = 200
N_MAP_POINTS = 50
N_EXAMPLE_POINTS = 50
# a residual this large means a negative control was detected
DETECTION_FLOOR = 1e-4
# grid nodes closer than this to a cell edge are skipped, so FD stencils stay inside
GRID_MARGIN = 0.05
# FD step for linear-fraction curvature: the curvature multiplies F_RR by
# (a R + d b S)^2, so roundoff dominates at the default step
LF_FD_STEP2 = 4e-3


def default_params(sig, case=1):
    if case == 1:
        return SolitonParams(sig, DEFAULT_K_CASE1[(sig.e, sig.d)], DEFAULT_RHO, DEFAULT_TAU, 1.0)
    return SolitonParams(sig, DEFAULT_K_CASE2[(sig.e, sig.d)], DEFAULT_RHO, DEFAULT_TAU, 0.0)


def default_configs():
    return [SolitonConfig(default_params(sig, case)) for case in (1, 2) for sig in ALL_SIGNATURES]


@dataclass(frozen=True)
class SolitonConfig:
    """Soliton parameters plus the curvature the residual is checked against.

    ``K_check`` differs from ``params.K`` only in deliberate negative controls.
    """

    params: SolitonParams
    K_check: float = None
    R0: float = 0.0
    S0: float = 0.0
    X0: float = 0.0

    @property
    def K(self):
        return self.params.K if self.K_check is None else self.K_check

    @property
    def label(self):
        p = self.params
        return f"case{p.case}[e={p.sig.e:+d},d={p.sig.d:+d}]"


@dataclass(frozen=True)
class Tolerances:
    analytic: float = 1e-10
    fd: float = 1e-6
    consistency: float = 1e-8
    oracle: float = 1e-9

    def __post_init__(self):
        for name in ("analytic", "fd", "consistency", "oracle"):
            val = getattr(self, name)
            if not (math.isfinite(val) and val >= 0.0):
                raise DomainError(f"tolerance {name} must be finite and non-negative, got {val}")


@dataclass
class Check:
    name: str
    max_residual: float
    tolerance: float
    excluded_cells: int = 0

    @property
    def passed(self):
        return math.isfinite(self.max_residual) and self.max_residual <= self.tolerance

    def to_dict(self):
        res = self.max_residual if math.isfinite(self.max_residual) else None
        return {"name": self.name, "max_residual": res, "tolerance": self.tolerance,
                "pass": self.passed, "excluded_cells": self.excluded_cells}


@dataclass
class VerificationReport:
    suite: str
    checks: list = field(default_factory=list)
    elapsed_ms: float = 0.0

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def to_dict(self):
        return {"suite": self.suite, "checks": [c.to_dict() for c in self.checks],
                "pass": self.passed, "elapsed_ms": round(self.elapsed_ms, 3)}

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)


class _Max:
    """Running maximum of absolute values; NaN counts as infinite."""

    def __init__(self):
        self.value = 0.0

    def add(self, *vals):
        for v in vals:
            a = float(abs(v))
            self.value = max(self.value, a if a == a else math.inf)


def _detected(flag):
    # negative controls report 0 when the defect was caught and 1 otherwise
    return 0.0 if flag else 1.0


# ---------------------------------------------------------------------------
# elliptic

def elliptic_checks(tol):
    ms = [k / 10.0 for k in range(1, 10)]
    oracle, ident, shift, kq = _Max(), _Max(), _Max(), _Max()
    for m in ms:
        K = complete_K(m)
        kq.add(K - oracle_K(m))
        for u in np.linspace(0.0, 2.0 * K, 50):
            u = float(u)
            a = jacobi(u, m)
            b = oracle_jacobi(u, m)
            oracle.add(a.sn - b.sn, a.cn - b.cn, a.dn - b.dn)
            ident.add(a.sn ** 2 + a.cn ** 2 - 1.0, a.dn ** 2 + m * a.sn ** 2 - 1.0)
        for z in np.linspace(-K, K, 52)[1:-1]:
            z = float(z)
            # quarter-period shift: sn(z + K) = cd(z) = 1 / dc(z)
            shift.add(jacobi_quotient("cd", z, m) - jacobi(z + K, m).sn)

    pi = _Max()
    rng = np.random.default_rng(3)
    count = 0
    while count < 30:
        n, m, x = rng.uniform(-3.0, 3.0), rng.uniform(0.05, 0.95), rng.uniform(0.1, 4.0)
        if n >= 1.0 and x > first_singular_point(n, m, 1.0) - 0.05:
            continue
        count += 1
        pi.add(elliptic_pi(n, x, m) - oracle_pi_argument(n, x, m))

    return [
        Check("elliptic.oracle_jacobi", oracle.value, tol.oracle),
        Check("elliptic.identities", ident.value, min(tol.analytic, 1e-12)),
        Check("elliptic.complete_K_quadrature", kq.value, tol.analytic),
        Check("elliptic.shift_identity_cd", shift.value, tol.analytic),
        Check("elliptic.pi_quadrature", pi.value, tol.analytic),
    ]


# ---------------------------------------------------------------------------
# soliton sample sets

def grid_points(grid):
    x0, x1, y0, y1, nx, ny = grid
    return [(float(x), float(y)) for y in np.linspace(y0, y1, ny) for x in np.linspace(x0, x1, nx)]


def soliton_points(hm, grid=None, n=N_SOLITON_POINTS):
    """(points, excluded) for a soliton map: cell samples, or grid nodes in the cell."""
    if grid is None:
        return hm.sample_points(n), 0
    pts = grid_points(grid)
    inside = [pt for pt in pts if not hm.excluded(*pt, radius=GRID_MARGIN)]
    return inside, len(pts) - len(inside)


def _wrong_sigma(sig):
    # sigma of the other case: a case-reduction error that stays real
    return 1j * sig.sigma


def soliton_checks(tol, configs=None, grid=None):
    configs = default_configs() if configs is None else configs
    checks = []
    for cfg in configs:
        p = cfg.params
        hm = construct_soliton_map(p, cfg.R0, cfg.S0, cfg.X0)
        pts, excl = soliton_points(hm, grid)
        if not pts:
            raise DomainError(f"{cfg.label}: no sample points inside the solution's cell")
        f = hm.omega_field
        prob = SineGordonProblem(p.sig, cfg.K)
        an, fd, fd_rel, fi, dual, wrong = _Max(), _Max(), _Max(), _Max(), _Max(), _Max()
        leaked = False
        for x, y in pts:
            r = sg_residual(f, prob, x, y)
            an.add(r.raw)
            r_fd = sg_residual(f, prob, x, y, numeric=True)
            fd.add(r_fd.raw)
            fd_rel.add(r_fd.relative)
            fi.add(first_integral(hm.profile, -p.beta * x + p.gamma * y))
            dual.add(r.raw - sg_residual_complex(f, prob, x, y).raw)
            try:
                wrong.add(sg_residual_complex(f, prob, x, y, sigma=_wrong_sigma(p.sig)).raw)
            except ImaginaryLeakError:
                leaked = True
        name = f"soliton.{cfg.label}"
        checks += [
            Check(f"{name}.sg_analytic", an.value, tol.analytic, excl),
            Check(f"{name}.sg_fd", fd.value, tol.fd, excl),
            Check(f"{name}.sg_fd_relative", fd_rel.value, tol.fd, excl),
            Check(f"{name}.first_integral", fi.value, tol.analytic, excl),
            Check(f"{name}.dual_path", dual.value, tol.analytic, excl),
            Check(f"{name}.wrong_case_detected",
                  _detected(leaked or wrong.value > DETECTION_FLOOR), 0.0, excl),
            Check(f"{name}.perturbation_detected",
                  _detected(perturbation_residual(hm, pts) > DETECTION_FLOOR), 0.0, excl),
        ]
    return checks


def perturbation_residual(hm, points, amplitude=1e-3):
    """Largest sine-Gordon residual of w + amplitude sin(x), analytic partials."""
    params = hm.p
    f = hm.omega_field
    a = amplitude
    g = ScalarField(lambda x, y: f(x, y) + a * math.sin(x), {
        "x": lambda x, y: f.d("x", x, y) + a * math.cos(x),
        "y": f.partials["y"],
        "xx": lambda x, y: f.d("xx", x, y) - a * math.sin(x),
        "xy": f.partials["xy"],
        "yy": f.partials["yy"],
    })
    prob = SineGordonProblem(params.sig, params.K)
    acc = _Max()
    for x, y in points:
        acc.add(sg_residual(g, prob, x, y).raw)
    return acc.value


# ---------------------------------------------------------------------------
# harmonic maps

def harmonic_checks(tol, configs=None, grid=None):
    configs = default_configs() if configs is None else configs
    checks = []
    for cfg in configs:
        p = cfg.params
        sig = p.sig
        hm = construct_soliton_map(p, cfg.R0, cfg.S0, cfg.X0)
        pts, excl = soliton_points(hm, grid, n=N_MAP_POINTS)
        if not pts:
            raise DomainError(f"{cfg.label}: no sample points inside the solution's cell")
        acc = {k: _Max() for k in ("chart", "hopf", "beltrami", "harm_an", "harm_fd",
                                   "curv", "curv_metric", "expF", "converse", "dual")}
        for x, y in pts:
            RX, _, SX, _ = hm.chart_derivatives(x, y)
            acc["chart"].add(RX - 1.0, SX)
            h = hopf_quantities(hm.map, hm.metric, x, y)
            acc["hopf"].add(h.lam - 1.0, h.mu - 1.0)
            acc["beltrami"].add(*beltrami_check(hm.map, hm.omega_field, x, y))
            r1, r2 = harmonic_residuals(hm.map, hm.metric, x, y)
            acc["harm_an"].add(r1, r2)
            acc["harm_fd"].add(*harmonic_residuals(hm.map, hm.metric, x, y, numeric=True))
            kin = induced_curvature(hm.omega_field, sig, x, y)
            acc["curv"].add(kin - cfg.K)
            R, S = hm.map(x, y)
            acc["curv_metric"].add(curvature(hm.metric, R, S) - cfg.K)
            acc["expF"].add(hm.expF_direct(x, y) - hm.expF_from_S(x, y))
            acc["converse"].add(converse_metric(hm.map, hm.omega_field, x, y)[0]
                                - hm.expF_direct(x, y))
            # real-reduced against complex evaluation of the same quantities
            q1, q2 = harmonic_residuals_real(hm.map, hm.metric, x, y)
            A, B = hopf_real(hm.map, hm.metric, x, y)
            hr = hopf_from_real(A, B, sig)
            acc["dual"].add(r1 - q1, r2 - q2, hr.lam - h.lam, hr.mu - h.mu,
                            kin - induced_curvature_complex(hm.omega_field, sig, x, y),
                            curvature(hm.metric, R, S) - curvature_null(hm.metric, R, S),
                            energy_density(hm.map, hm.metric, x, y)
                            - energy_density_complex(hm.map, hm.metric, x, y),
                            math.remainder(hm.theta(x, y) - hm.theta_complex(x, y), 2.0 * math.pi))
        name = f"harmonic.{cfg.label}"
        a = acc
        checks += [
            Check(f"{name}.chart_RX_SX", a["chart"].value, tol.analytic, excl),
            Check(f"{name}.hopf", a["hopf"].value, tol.consistency, excl),
            Check(f"{name}.beltrami", a["beltrami"].value, tol.consistency, excl),
            Check(f"{name}.harmonic_analytic", a["harm_an"].value, tol.consistency, excl),
            Check(f"{name}.harmonic_fd", a["harm_fd"].value, tol.fd, excl),
            Check(f"{name}.induced_curvature", a["curv"].value, tol.fd, excl),
            Check(f"{name}.metric_curvature", a["curv_metric"].value, tol.fd, excl),
            Check(f"{name}.expF_two_routes", a["expF"].value, tol.consistency, excl),
            Check(f"{name}.converse_metric", a["converse"].value, tol.consistency, excl),
            Check(f"{name}.dual_path", a["dual"].value, tol.analytic, excl),
        ]
    return checks


# ---------------------------------------------------------------------------
# Baecklund pairs

def backlund_checks(tol, configs=None, grid=None):
    configs = default_configs() if configs is None else configs
    checks = []
    for cfg in configs:
        p = cfg.params
        hm = construct_soliton_map(p, cfg.R0, cfg.S0, cfg.X0)
        pts, excl = soliton_points(hm, grid, n=N_MAP_POINTS)
        if not pts:
            raise DomainError(f"{cfg.label}: no sample points inside the solution's cell")
        fp = hm.frame_pair()
        pair = BacklundPair(fp.omega, fp.theta, pulled_back_F(hm.map, hm.metric), p.sig)
        bk, th, dual = _Max(), _Max(), _Max()
        for x, y in pts:
            r = backlund_residuals(pair, x, y)
            bk.add(*r)
            rc = backlund_residuals_complex(pair, x, y)
            dual.add(r[0] - rc[0], r[1] - rc[1])
            th.add(theta_equation_residual(fp.theta, hm.metric, hm.map, x, y))
        name = f"backlund.{cfg.label}"
        checks += [
            Check(f"{name}.residual_fd_theta", bk.value, tol.fd, excl),
            Check(f"{name}.theta_equation_fd", th.value, tol.fd, excl),
            Check(f"{name}.dual_path", dual.value, tol.analytic, excl),
        ]
    checks += linear_fraction_checks(tol)
    return checks


def linear_fraction_checks(tol, n_metrics=20, n_points=5, seed=7):
    rng = np.random.default_rng(seed)
    checks = []
    for d in (1, -1):
        an, fd = _Max(), _Max()
        for _ in range(n_metrics):
            a, b = rng.uniform(-2.0, 2.0, 2)
            lf = LinearFractionMetric(float(a), float(b), d)
            metric = lf.to_metric()
            numeric = ConformalMetric(ScalarField(metric.F.f, {}, fd_step2=LF_FD_STEP2), d)
            target = lf.curvature_constant
            done = 0
            while done < n_points:
                R, S = rng.uniform(-2.0, 2.0, 2)
                # stay away from the line a R + d b S = 0 where the metric blows up
                if abs(lf.L(R, S)) < 0.5 * (abs(a) + abs(b)):
                    continue
                done += 1
                an.add(curvature(metric, R, S) - target)
                fd.add(curvature(numeric, R, S) - target)
        checks += [
            Check(f"backlund.linear_fraction[d={d:+d}].curvature_analytic", an.value, tol.analytic),
            Check(f"backlund.linear_fraction[d={d:+d}].curvature_fd", fd.value, tol.consistency),
        ]
    return checks


# ---------------------------------------------------------------------------
# closed-form example with target metric 1/S^2

def example_checks(tol, signatures=ALL_SIGNATURES):
    checks = []
    for sig in signatures:
        ex = example_pair(sig)
        prob = SineGordonProblem(sig, float(sig.d))
        acc = {k: _Max() for k in ("theta", "theta_lf", "sg", "backlund", "harm_an",
                                   "harm_fd", "curv", "dual")}
        for x, y in example_sample_points(sig, N_EXAMPLE_POINTS):
            acc["theta"].add(theta_equation_residual(ex.pair.theta, ex.metric, ex.map, x, y))
            acc["theta_lf"].add(theta_equation_linear_fraction(ex.pair.theta, ex.lf, sig, x, y))
            r = sg_residual(ex.pair.omega, prob, x, y)
            acc["sg"].add(r.raw)
            b = backlund_residuals(ex.pair, x, y)
            acc["backlund"].add(*b)
            h = harmonic_residuals(ex.map, ex.metric, x, y)
            acc["harm_an"].add(*h)
            acc["harm_fd"].add(*harmonic_residuals(ex.map, ex.metric, x, y, numeric=True))
            R, S = ex.map(x, y)
            acc["curv"].add(curvature(ex.metric, R, S) - sig.d)
            bc = backlund_residuals_complex(ex.pair, x, y)
            hr = harmonic_residuals_real(ex.map, ex.metric, x, y)
            acc["dual"].add(r.raw - sg_residual_complex(ex.pair.omega, prob, x, y).raw,
                            b[0] - bc[0], b[1] - bc[1], h[0] - hr[0], h[1] - hr[1])
        name = f"example[e={sig.e:+d},d={sig.d:+d}]"
        a = acc
        checks += [
            Check(f"{name}.theta_equation", a["theta"].value, tol.consistency),
            Check(f"{name}.theta_equation_linear_fraction", a["theta_lf"].value, tol.consistency),
            Check(f"{name}.sine_gordon", a["sg"].value, tol.consistency),
            Check(f"{name}.backlund", a["backlund"].value, tol.consistency),
            Check(f"{name}.harmonic_analytic", a["harm_an"].value, tol.consistency),
            Check(f"{name}.harmonic_fd", a["harm_fd"].value, tol.fd),
            Check(f"{name}.curvature", a["curv"].value, tol.analytic),
            Check(f"{name}.dual_path", a["dual"].value, tol.analytic),
        ]
    return checks


# ---------------------------------------------------------------------------

def run_suite(suite, tol=None, configs=None, grid=None):
    """Run one suite (or ``'all'``) and return a :class:`VerificationReport`."""
    tol = Tolerances() if tol is None else tol
    if suite != "all" and suite not in SUITES:
        raise DomainError(f"unknown suite {suite!r}; choose from {', '.join(SUITES + ('all',))}")
    names = SUITES if suite == "all" else (suite,)
    start = time.perf_counter()
    checks = []
    for name in names:
        if name == "elliptic":
            checks += elliptic_checks(tol)
        elif name == "soliton":
            checks += soliton_checks(tol, configs, grid)
        elif name == "harmonic":
            checks += harmonic_checks(tol, configs, grid)
        elif name == "backlund":
            checks += backlund_checks(tol, configs, grid)
        else:
            checks += example_checks(tol)
    elapsed = 1e3 * (time.perf_counter() - start)
    return VerificationReport(suite, checks, elapsed)
