"""Acceptance criteria, one test each; every test records a PASS/FAIL line.

Tolerances are pinned here rather than taken from the verify defaults.
"""

import math

import mpmath
import numpy as np
import pytest
from scipy.integrate import quad

from pseudoharmonic.backlund import (LinearFractionMetric, backlund_residuals,
                                     backlund_residuals_complex, example_pair,
                                     example_sample_points, theta_equation_residual)
from pseudoharmonic.cli import main
from pseudoharmonic.elliptic import (complete_K, elliptic_pi, first_singular_point, jacobi,
                                     jacobi_quotients, oracle_jacobi)
from pseudoharmonic.errors import ImaginaryLeakError
from pseudoharmonic.geometry import (ALL_SIGNATURES, ConformalMetric, ScalarField, curvature,
                                     curvature_null)
from pseudoharmonic.harmonicmap import (beltrami_check, construct_soliton_map, converse_metric,
                                        first_order_residuals, first_order_residuals_complex,
                                        harmonic_residuals, harmonic_residuals_real,
                                        hopf_quantities, induced_curvature,
                                        induced_curvature_complex)
from pseudoharmonic.sinegordon import (SineGordonProblem, first_integral, sg_residual,
                                       sg_residual_complex)
from pseudoharmonic.verify import default_params, perturbation_residual

MS = [k / 10.0 for k in range(1, 10)]
TOL_ORACLE = 1e-9
TOL_SHIFT = 1e-10
TOL_PI = 1e-10
TOL_ANALYTIC = 1e-10
TOL_FD = 1e-6
TOL_CONSISTENCY = 1e-8
TOL_EXACT = 1e-12
TOL_LF = 1e-8
LF_FD_STEP2 = 4e-3
DETECT = 1e-4


def _max(vals):
    return max((abs(v) for v in vals), default=0.0)


def test_c01_elliptic_oracle(acceptance):
    worst = 0.0
    for m in MS:
        for u in np.linspace(0.0, 2.0 * complete_K(m), 50):
            a, b = jacobi(u, m), oracle_jacobi(u, m)
            worst = max(worst, _max(p - q for p, q in zip(a, b)))
    assert acceptance("C1 Jacobi vs ODE oracle, 50x9 grid", worst, TOL_ORACLE)


def test_c02_shift_identity_dc(acceptance):
    # the identity as stated: dc(z|m) = sn(z + K|m), on pole-free z in (-K, K)
    worst, worst_cd = 0.0, 0.0
    for m in MS:
        K = complete_K(m)
        for z in np.linspace(-0.95, 0.95, 39) * K:
            dc = jacobi_quotients(z, m)[2]
            shifted = jacobi(z + K, m).sn
            worst = max(worst, abs(dc - shifted))
            worst_cd = max(worst_cd, abs(1.0 / dc - shifted))
    acceptance("C2 (info) sn(z+K) = cd(z) = 1/dc(z)", worst_cd, TOL_SHIFT)
    assert acceptance("C2 dc(z) = sn(z+K) as stated", worst, TOL_SHIFT)


def _pi_quadrature(n, x, m):
    mpmath.mp.dps = 20

    def sn(u):
        return float(mpmath.re(mpmath.ellipfun("sn", u, m=m)))

    val, _ = quad(lambda u: 1.0 / (1.0 - n * sn(u) ** 2), 0.0, x, epsabs=1e-14, epsrel=1e-13,
                  limit=200)
    return val


def test_c03_pi_quadrature(acceptance):
    rng = np.random.default_rng(2024)
    worst, count = 0.0, 0
    while count < 30:
        n, x, m = rng.uniform(-3.0, 3.0), rng.uniform(-4.0, 4.0), rng.uniform(0.0, 0.95)
        us = first_singular_point(n, m)
        if us is not None and abs(x) >= us - 0.05:
            continue
        worst = max(worst, abs(elliptic_pi(n, x, m) - _pi_quadrature(n, x, m)))
        count += 1
    assert acceptance("C3 Pi vs quadrature of its definition, 30 triples", worst, TOL_PI)


def _soliton_sweep(case, sig, n):
    p = default_params(sig, case)
    hm = construct_soliton_map(p)
    return p, hm, hm.sample_points(n)


def test_c04_case1_soliton(acceptance):
    an, fd, fi, spread = 0.0, 0.0, 0.0, 0.0
    for sig in ALL_SIGNATURES:
        p, hm, pts = _soliton_sweep(1, sig, 200)
        prob = SineGordonProblem(sig, p.K)
        f = hm.omega_field
        an = max(an, _max(sg_residual(f, prob, x, y).raw for x, y in pts))
        fd = max(fd, _max(sg_residual(f, prob, x, y, numeric=True).raw for x, y in pts))
        vals = [first_integral(hm.profile, -p.beta * x + p.gamma * y) for x, y in pts]
        fi = max(fi, _max(vals))
        spread = max(spread, max(vals) - min(vals))
    ok = [acceptance("C4 Case I sine-Gordon residual, analytic", an, TOL_ANALYTIC),
          acceptance("C4 Case I sine-Gordon residual, FD", fd, TOL_FD),
          acceptance("C4 Case I first integral", fi, TOL_ANALYTIC),
          acceptance("C4 Case I first integral max-min", spread, TOL_ANALYTIC)]
    assert all(ok)


def test_c05_case2_soliton(acceptance):
    an, fi = 0.0, 0.0
    for sig in ALL_SIGNATURES:
        p, hm, pts = _soliton_sweep(2, sig, 200)
        assert p.K * sig.e > 0
        prob = SineGordonProblem(sig, p.K)
        an = max(an, _max(sg_residual(hm.omega_field, prob, x, y).raw for x, y in pts))
        fi = max(fi, _max(first_integral(hm.profile, -p.beta * x + p.gamma * y)
                          for x, y in pts))
    ok = [acceptance("C5 Case II sine-Gordon residual", an, TOL_ANALYTIC),
          acceptance("C5 Case II first integral (c = 0)", fi, TOL_ANALYTIC)]
    assert all(ok)


def test_c06_soliton_map(acceptance):
    acc = dict(chart=0.0, hopf=0.0, beltrami=0.0, harm=0.0, curv=0.0, expF=0.0)
    for case in (1, 2):
        for sig in ALL_SIGNATURES:
            p, hm, pts = _soliton_sweep(case, sig, 50)
            for x, y in pts:
                RX, _, SX, _ = hm.chart_derivatives(x, y)
                acc["chart"] = max(acc["chart"], abs(RX - 1.0), abs(SX))
                h = hopf_quantities(hm.map, hm.metric, x, y)
                acc["hopf"] = max(acc["hopf"], abs(h.lam - 1.0), abs(h.mu - 1.0))
                acc["beltrami"] = max(acc["beltrami"],
                                      *beltrami_check(hm.map, hm.omega_field, x, y))
                r = harmonic_residuals(hm.map, hm.metric, x, y, numeric=True)
                acc["harm"] = max(acc["harm"], *map(abs, r))
                k = induced_curvature(hm.omega_field, sig, x, y, numeric=True)
                acc["curv"] = max(acc["curv"], abs(k - p.K))
                a, b = hm.expF_direct(x, y), hm.expF_from_S(x, y)
                acc["expF"] = max(acc["expF"], abs(a - b))
    ok = [acceptance("C6 R_X = 1, S_X = 0 (analytic, roundoff)", acc["chart"], TOL_EXACT),
          acceptance("C6 Hopf pair = 1", acc["hopf"], TOL_CONSISTENCY),
          acceptance("C6 Beltrami deviations", acc["beltrami"], TOL_CONSISTENCY),
          acceptance("C6 harmonic residuals, FD", acc["harm"], TOL_FD),
          acceptance("C6 induced curvature = K, FD", acc["curv"], TOL_FD),
          acceptance("C6 e^F two routes", acc["expF"], TOL_CONSISTENCY)]
    assert all(ok)


def test_c07_converse_metric(acceptance):
    worst, flipped = 0.0, 0
    for case in (1, 2):
        for sig in ALL_SIGNATURES:
            p, hm, pts = _soliton_sweep(case, sig, 50)
            for x, y in pts:
                val, branch = converse_metric(hm.map, hm.omega_field, x, y)
                flipped += branch < 0
                worst = max(worst, abs(val - hm.expF_direct(x, y)))
    assert acceptance("C7 e^{2 Omega}/(V_v W_w) = e^F", worst, TOL_CONSISTENCY,
                      passed=worst <= TOL_CONSISTENCY and flipped == 0)


def test_c08_worked_example(acceptance):
    acc = dict(theta=0.0, sg=0.0, bk=0.0, harm=0.0, curv=0.0)
    for sig in ALL_SIGNATURES:
        ex = example_pair(sig)
        prob = SineGordonProblem(sig, float(sig.d))
        for x, y in example_sample_points(sig, 50):
            acc["theta"] = max(acc["theta"], abs(theta_equation_residual(
                ex.pair.theta, ex.metric, ex.map, x, y)))
            acc["sg"] = max(acc["sg"], abs(sg_residual(ex.pair.omega, prob, x, y).raw))
            acc["bk"] = max(acc["bk"], *map(abs, backlund_residuals(ex.pair, x, y)))
            acc["harm"] = max(acc["harm"], *map(abs, harmonic_residuals(
                ex.map, ex.metric, x, y, numeric=True)))
            R, S = ex.map(x, y)
            acc["curv"] = max(acc["curv"], abs(curvature(ex.metric, R, S) - sig.d))
    ok = [acceptance("C8 Theta equation", acc["theta"], TOL_CONSISTENCY),
          acceptance("C8 Omega sine-Gordon", acc["sg"], TOL_CONSISTENCY),
          acceptance("C8 Baecklund residuals", acc["bk"], TOL_CONSISTENCY),
          acceptance("C8 harmonic residuals, FD", acc["harm"], TOL_FD),
          acceptance("C8 curvature of 1/S^2 metric = d", acc["curv"], TOL_ANALYTIC)]
    assert all(ok)


def test_c09_linear_fraction_curvature(acceptance):
    rng = np.random.default_rng(9)
    worst = 0.0
    for d in (1, -1):
        for a, b in rng.uniform(-2.0, 2.0, (20, 2)):
            lf = LinearFractionMetric(a, b, d)
            F = lf.to_metric().F
            numeric = ConformalMetric(ScalarField(F.f, {}, fd_step2=LF_FD_STEP2), d)
            done = 0
            while done < 5:
                R, S = rng.uniform(-2.0, 2.0, 2)
                if abs(a * R + d * b * S) < 0.5 * (abs(a) + abs(b)):
                    continue
                worst = max(worst, abs(curvature(numeric, R, S) - (-a * a + d * b * b)))
                done += 1
    assert acceptance("C9 linear-fraction curvature, FD", worst, TOL_LF)


def test_c10_dual_path(acceptance):
    worst = 0.0
    detected = True
    for case in (1, 2):
        for sig in ALL_SIGNATURES:
            p, hm, pts = _soliton_sweep(case, sig, 30)
            prob = SineGordonProblem(sig, p.K)
            f = hm.omega_field
            wrong, leaked = 0.0, False
            for x, y in pts:
                worst = max(worst, abs(sg_residual(f, prob, x, y).raw
                                       - sg_residual_complex(f, prob, x, y).raw))
                worst = max(worst, abs(induced_curvature(f, sig, x, y)
                                       - induced_curvature_complex(f, sig, x, y)))
                a = first_order_residuals(hm.map, f, x, y)
                b = first_order_residuals_complex(hm.map, f, x, y)
                worst = max(worst, abs(a[0] - b[0]), abs(a[1] - b[1]))
                a = harmonic_residuals(hm.map, hm.metric, x, y)
                b = harmonic_residuals_real(hm.map, hm.metric, x, y)
                worst = max(worst, abs(a[0] - b[0]), abs(a[1] - b[1]))
                R, S = hm.map(x, y)
                worst = max(worst, abs(curvature(hm.metric, R, S)
                                       - curvature_null(hm.metric, R, S)))
                try:
                    wrong = max(wrong, abs(sg_residual_complex(
                        f, prob, x, y, sigma=1j * sig.sigma).raw))
                except ImaginaryLeakError:
                    leaked = True
            detected &= leaked or wrong > DETECT
            x, y = pts[0]
            with pytest.raises(ImaginaryLeakError):
                sg_residual_complex(f, prob, x, y, sigma=(1 + 1j) / math.sqrt(2))
    for sig in ALL_SIGNATURES:
        ex = example_pair(sig)
        for x, y in example_sample_points(sig, 30):
            a = backlund_residuals(ex.pair, x, y)
            b = backlund_residuals_complex(ex.pair, x, y)
            worst = max(worst, abs(a[0] - b[0]), abs(a[1] - b[1]))
    ok = [acceptance("C10 real vs complex path", worst, TOL_ANALYTIC),
          acceptance("C10 wrong sign case detected (0 = yes)", 0.0 if detected else 1.0, 0.0)]
    assert all(ok)


def test_c11_perturbation_detected(acceptance):
    smallest = math.inf
    for sig in ALL_SIGNATURES:
        p, hm, pts = _soliton_sweep(1, sig, 200)
        smallest = min(smallest, perturbation_residual(hm, pts))
    assert acceptance("C11 perturbed soliton residual", smallest, DETECT, above=True)


def test_c12_cli(acceptance, tmp_path):
    out = tmp_path / "report.json"
    code_all = main(["verify", "all", "--out", str(out)])
    params = tmp_path / "p.txt"
    params.write_text("rho=2.5\ntau=0.35\nc=1\nkn=1\neps2=-1\ndelta2=1\n")
    csvs = []
    for name in ("a.csv", "b.csv"):
        main(["soliton", "--params", str(params), "--grid", "-1,1,-1,1,11,11",
              "--out", str(tmp_path / name)])
        csvs.append((tmp_path / name).read_bytes())
    wrong = tmp_path / "wrong.txt"
    wrong.write_text("rho=2.5\ntau=0.35\nc=1\nkn=1\nkn_check=1.5\n")
    matrix = {
        0: main(["elliptic", "eval", "--u", "0.3", "--m", "0.2"]),
        1: main(["verify", "soliton", "--params", str(wrong)]),
        2: main(["verify", "all", "--tol-analytic", "-1"]),
        3: main(["soliton", "--params", str(tmp_path / "missing.txt")]),
    }
    ok = [acceptance("C12 verify all exit code", float(code_all), 0.0),
          acceptance("C12 CSV byte-identical (0 = yes)", 0.0 if csvs[0] == csvs[1] else 1.0, 0.0),
          acceptance("C12 exit-code matrix 0/1/2/3 (failures shown)",
                     float(sum(k != v for k, v in matrix.items())), 0.0)]
    assert all(ok)
