import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pseudoharmonic.elliptic import complete_K
from pseudoharmonic.errors import DomainError, ImaginaryLeakError, InadmissibleError, PoleError
from pseudoharmonic.geometry import ALL_SIGNATURES, ScalarField, Signature, constant_field
from pseudoharmonic.harmonicmap import construct_soliton_map
from pseudoharmonic.sinegordon import (Case1Profile, Case2Profile, SineGordonProblem,
                                       SolitonParams, first_integral, sg_residual,
                                       sg_residual_complex, soliton_case1, soliton_case2,
                                       to_soliton_chart)
from pseudoharmonic.verify import perturbation_residual


# -- chart ----------------------------------------------------------------------

def test_chart_tau_zero(sig):
    p = SolitonParams(sig, 1.0, 1.7, 0.0)
    ch = to_soliton_chart(p, 0.3, -0.8)
    assert (ch.X, ch.Y) == pytest.approx((1.7 * 0.3, -1.7 * 0.8), abs=1e-15)


@pytest.mark.parametrize("t", [0.2, 1.1, -0.7])
def test_chart_rotation_and_boost(t):
    rho, x, y = 1.3, 0.4, -0.9
    ch = to_soliton_chart(SolitonParams(Signature(-1, 1), 1.0, rho, t), x, y)
    assert ch.X == pytest.approx(rho * (x * math.cos(t) + y * math.sin(t)), abs=1e-14)
    assert ch.Y == pytest.approx(rho * (-x * math.sin(t) + y * math.cos(t)), abs=1e-14)
    ch = to_soliton_chart(SolitonParams(Signature(1, 1), 1.0, 1.0, t), 1.0, 0.0)
    assert (ch.X, ch.Y) == pytest.approx((math.cosh(t), -math.sinh(t)), abs=1e-14)


@settings(max_examples=100, deadline=None)
@given(x=st.floats(-3, 3), y=st.floats(-3, 3), tau=st.floats(-1.2, 1.2),
       rho=st.floats(0.2, 4.0), k=st.integers(0, 3))
def test_chart_preserves_quadratic_form(x, y, tau, rho, k):
    sig = ALL_SIGNATURES[k]
    if sig.e == -1 and abs(math.cos(tau)) < 1e-3:
        return
    p = SolitonParams(sig, 1.0, rho, tau)
    ch = to_soliton_chart(p, x, y)
    lhs = ch.X ** 2 - sig.e * ch.Y ** 2
    rhs = rho ** 2 * (x * x - sig.e * y * y)
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs), ch.X ** 2 + ch.Y ** 2)


def test_gamma_beta_relation(sig):
    p = SolitonParams(sig, 1.0, 2.5, 0.35)
    assert abs(p.gamma ** 2 - sig.e * p.beta ** 2 - p.rho ** 2) <= 1e-12


# -- params ---------------------------------------------------------------------

@pytest.mark.parametrize("kw", [dict(rho=0.0), dict(rho=-1.0), dict(c=-0.5), dict(K=0.0),
                                dict(tau=math.nan)])
def test_params_reject(kw):
    base = dict(sig=Signature(1, 1), K=1.0, rho=2.0, tau=0.1)
    base.update(kw)
    with pytest.raises(DomainError):
        SolitonParams(**base)


def test_jacobi_parameter():
    p = SolitonParams(Signature(-1, -1), -1.0, 2.0, 0.3, c=1.0)
    assert p.m == 0.0
    p = SolitonParams(Signature(1, -1), -1.0, 2.5, 0.3, c=1.0)
    assert p.m == pytest.approx(4.0 / 6.25)


def test_N2_at_tau_zero():
    # N^2 = 1 - mu cosh_e(tau)^2, so tau = 0 leaves 1 - mu
    p = SolitonParams(Signature(1, 1), 1.0, 2.5, 0.0, c=1.0)
    assert p.N2 == pytest.approx(1.0 - p.mu, abs=1e-15)


@pytest.mark.parametrize("e,d,K", [(1, 1, -1.0), (-1, -1, 1.0)])
def test_case1_inadmissible(e, d, K):
    with pytest.raises(InadmissibleError):
        soliton_case1(SolitonParams(Signature(e, d), K, 2.0, 0.2, c=1.0))


# -- residuals --------------------------------------------------------------------

def test_zero_field_residual(sig):
    prob = SineGordonProblem(sig, 1.3)
    for x, y in [(0.0, 0.0), (0.4, -1.2)]:
        assert sg_residual(constant_field(0.0), prob, x, y).raw == 0.0
        assert sg_residual_complex(constant_field(0.0), prob, x, y).raw == 0.0


def test_linear_field_zero_curvature(sig):
    # the nonlinearity is scaled by K; the problem type requires K != 0, so
    # K -> 0 is probed through the linear part only
    lin = ScalarField(lambda x, y: x, {"x": lambda x, y: 1.0, "y": lambda x, y: 0.0,
                                       "xx": lambda x, y: 0.0, "xy": lambda x, y: 0.0,
                                       "yy": lambda x, y: 0.0})
    r = sg_residual(lin, SineGordonProblem(sig, 1e-300), 0.3, 0.2)
    assert abs(r.raw) <= 1e-299


def test_problem_rejects_zero_curvature(sig):
    with pytest.raises(DomainError):
        SineGordonProblem(sig, 0.0)


def test_m_zero_reduces_to_tangent():
    p = SolitonParams(Signature(-1, -1), -1.0, 2.0, 0.0, c=1.0)
    prof = Case1Profile(p)
    for Y in np.linspace(-1.4, 1.4, 15):
        assert prof.sinh_omega(Y) == pytest.approx(math.tan(Y), rel=1e-13, abs=1e-15)
        assert math.sinh(prof.omega(Y)) == pytest.approx(math.tan(Y), rel=1e-12, abs=1e-15)


def _cell_points(params, n=40, seed=0):
    return construct_soliton_map(params).sample_points(n, seed=seed)


def test_case1_residuals(case1_params):
    p = case1_params
    f = soliton_case1(p)
    prob = SineGordonProblem(p.sig, p.K)
    for x, y in _cell_points(p):
        r = sg_residual(f, prob, x, y)
        assert abs(r.raw) <= 1e-10
        assert r.relative <= 1e-10
        assert abs(sg_residual(f, prob, x, y, numeric=True).raw) <= 1e-6
        assert abs(r.raw - sg_residual_complex(f, prob, x, y).raw) <= 1e-10


def test_case1_accessors(case1_params):
    p = case1_params
    prof = Case1Profile(p)
    s = p.s2
    for x, y in _cell_points(p, 20):
        Y = -p.beta * x + p.gamma * y
        w = prof.omega(Y)
        sw = math.sinh(w) if s == 1 else math.sin(w)
        cw = math.cosh(w) if s == 1 else math.cos(w)
        assert prof.sinh_omega(Y) == pytest.approx(sw, rel=1e-12, abs=1e-14)
        assert prof.cosh_omega(Y) == pytest.approx(cw, rel=1e-12, abs=1e-14)
        assert prof.tanh_omega(Y) == pytest.approx(sw / cw, rel=1e-11, abs=1e-14)


def test_case1_first_integral_constant(case1_params):
    p = case1_params
    prof = Case1Profile(p)
    vals = [first_integral(prof, -p.beta * x + p.gamma * y) for x, y in _cell_points(p)]
    assert max(map(abs, vals)) <= 1e-10
    assert max(vals) - min(vals) <= 1e-10


def test_case1_pole(case1_params):
    p = case1_params
    prof = Case1Profile(p)
    Yp = complete_K(p.m) / p.c + p.Y0 - p.psi
    if p.s2 != 1:
        # sine branch w = am(u): smooth through u = K
        assert prof.omega(Yp) == pytest.approx(math.pi / 2, abs=1e-12)
        return
    with pytest.raises(PoleError) as info:
        prof.omega(Yp)
    assert info.value.location == pytest.approx(Yp, abs=1e-12)


def test_case2_residuals(case2_params):
    p = case2_params
    f = soliton_case2(p)
    prob = SineGordonProblem(p.sig, p.K)
    prof = Case2Profile(p)
    for x, y in _cell_points(p):
        assert abs(sg_residual(f, prob, x, y).raw) <= 1e-10
        assert abs(sg_residual(f, prob, x, y, numeric=True).raw) <= 1e-6
        assert abs(first_integral(prof, -p.beta * x + p.gamma * y)) <= 1e-10


def test_case2_closed_forms(case2_params):
    p = case2_params
    prof = Case2Profile(p)
    for Y in (-2.0, -0.3, 0.5, 1.7):
        t = p.k * Y
        w = prof.omega(Y)
        if p.s2 == 1:
            assert math.tanh(w) == pytest.approx(1.0 / math.cosh(t), rel=1e-13)
        else:
            assert math.tan(w) == pytest.approx(1.0 / math.sinh(t), rel=1e-13)


def test_case2_decay():
    p = SolitonParams(Signature(1, 1), 1.0, 2.0, 0.0, c=0.0)
    prof = Case2Profile(p)
    vals = [prof.omega(Y) for Y in (5.0, 10.0, 20.0, 40.0)]
    assert all(b < a for a, b in zip(vals, vals[1:]))
    assert vals[-1] < 1e-15


def test_case2_inadmissible(sig):
    with pytest.raises(InadmissibleError):
        soliton_case2(SolitonParams(sig, -float(sig.e), 2.0, 0.1, c=0.0))


def test_case2_pole_at_origin():
    p = SolitonParams(Signature(-1, 1), -1.0, 2.0, 0.0, c=0.0)
    with pytest.raises(PoleError):
        soliton_case2(p)(0.0, 0.0)


def test_case_dispatch():
    p = SolitonParams(Signature(1, 1), 1.0, 2.0, 0.1, c=1.0)
    with pytest.raises(DomainError):
        Case1Profile(p.with_(c=0.0))
    with pytest.raises(DomainError):
        Case2Profile(p)
    # soliton_case2 drops c
    Y = 0.7 * p.gamma - 0.1 * p.beta
    assert soliton_case2(p)(0.1, 0.7) == Case2Profile(p.with_(c=0.0)).omega(Y)


# -- negative controls ----------------------------------------------------------

def test_wrong_case_sigma_is_detected(case1_params):
    p = case1_params
    f = soliton_case1(p)
    prob = SineGordonProblem(p.sig, p.K)
    worst = 0.0
    for x, y in _cell_points(p, 30):
        worst = max(worst, abs(sg_residual_complex(f, prob, x, y, sigma=1j * p.sig.sigma).raw))
    assert worst > 1e-4


def test_nonreal_sigma_leaks(case1_params):
    p = case1_params
    f = soliton_case1(p)
    x, y = _cell_points(p, 1)[0]
    with pytest.raises(ImaginaryLeakError):
        sg_residual_complex(f, SineGordonProblem(p.sig, p.K), x, y, sigma=(1 + 1j) / math.sqrt(2))


def test_perturbation_is_detected(case1_params):
    hm = construct_soliton_map(case1_params)
    assert perturbation_residual(hm, hm.sample_points(50)) > 1e-4


def test_wrong_curvature_is_detected(case1_params):
    p = case1_params
    f = soliton_case1(p)
    prob = SineGordonProblem(p.sig, 1.3 * p.K)
    worst = max(abs(sg_residual(f, prob, x, y).raw) for x, y in _cell_points(p, 30))
    assert worst > 1e-4
