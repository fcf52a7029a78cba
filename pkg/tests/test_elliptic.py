import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from pseudoharmonic.elliptic import (amplitude, complete_K, elliptic_pi, elliptic_pi_segment,
                                     jacobi, jacobi_quotient, jacobi_quotients, oracle_jacobi,
                                     oracle_pi_argument)
from pseudoharmonic.errors import DomainError, PoleError

MS = [k / 10.0 for k in range(1, 10)]


def mp_jacobi(u, m):
    mpmath.mp.dps = 30
    return tuple(float(mpmath.re(mpmath.ellipfun(f, u, m=m))) for f in ("sn", "cn", "dn"))


# -- complete_K ---------------------------------------------------------------

def test_K_at_zero():
    assert complete_K(0.0) == pytest.approx(math.pi / 2, abs=1e-15)


def test_K_matches_quadrature():
    val, _ = quad(lambda t: 1.0 / math.sqrt(1.0 - 0.5 * math.sin(t) ** 2), 0.0, math.pi / 2,
                  epsabs=1e-15, epsrel=1e-14)
    assert abs(complete_K(0.5) - val) <= 1e-12


def test_K_increasing():
    assert complete_K(0.25) < complete_K(0.75)
    vals = [complete_K(m) for m in np.linspace(-3.0, 0.999, 40)]
    assert all(b > a for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("m", [-2.0, -0.5, 0.3, 0.9, 0.999])
def test_K_mpmath(m):
    mpmath.mp.dps = 30
    assert abs(complete_K(m) - float(mpmath.ellipk(m))) <= 1e-13 * float(mpmath.ellipk(m))


@pytest.mark.parametrize("m", [1.0, 1.5, math.nan])
def test_K_domain(m):
    with pytest.raises(DomainError):
        complete_K(m)


# -- jacobi -------------------------------------------------------------------

@pytest.mark.parametrize("m", [0.0, 0.3, 0.99, 1.0, -1.5])
def test_jacobi_zero_argument(m):
    assert tuple(jacobi(0.0, m)) == (0.0, 1.0, 1.0)


@pytest.mark.parametrize("u", [-2.0, 0.4, 1.3, 7.0])
def test_jacobi_degenerate_parameters(u):
    sn, cn, dn = jacobi(u, 0.0)
    assert sn == pytest.approx(math.sin(u), abs=1e-12)
    assert cn == pytest.approx(math.cos(u), abs=1e-12)
    assert dn == 1.0
    sn, cn, dn = jacobi(u, 1.0)
    assert sn == pytest.approx(math.tanh(u), abs=1e-12)
    assert cn == pytest.approx(1.0 / math.cosh(u), abs=1e-12)
    assert dn == pytest.approx(1.0 / math.cosh(u), abs=1e-12)


def test_sn_at_quarter_period():
    assert jacobi(complete_K(0.5), 0.5).sn == pytest.approx(1.0, abs=1e-14)


@pytest.mark.parametrize("m", [-4.0, -0.7, 0.1, 0.5, 0.9, 0.999999])
@pytest.mark.parametrize("u", [-5.3, -0.8, 0.25, 1.7, 3.9, 12.0])
def test_jacobi_mpmath(u, m):
    got = jacobi(u, m)
    want = mp_jacobi(u, m)
    for a, b in zip(got, want):
        assert abs(a - b) <= 1e-12


@settings(max_examples=200, deadline=None)
@given(u=st.floats(-50, 50), m=st.floats(0.0, 1.0))
def test_jacobi_identities(u, m):
    sn, cn, dn = jacobi(u, m)
    assert abs(sn * sn + cn * cn - 1.0) <= 1e-12
    assert abs(dn * dn + m * sn * sn - 1.0) <= 1e-12
    assert dn >= math.sqrt(1.0 - m) - 1e-12


@settings(max_examples=100, deadline=None)
@given(u=st.floats(-10, 10), m=st.floats(0.01, 0.99))
def test_jacobi_periods(u, m):
    K = complete_K(m)
    a, b = jacobi(u, m), jacobi(u + 4.0 * K, m)
    assert abs(a.sn - b.sn) <= 1e-11 and abs(a.cn - b.cn) <= 1e-11
    assert abs(a.dn - jacobi(u + 2.0 * K, m).dn) <= 1e-11


@pytest.mark.parametrize("m", [0.3, 0.8])
def test_amplitude_increasing(m):
    us = np.linspace(-10, 10, 400)
    phis = [amplitude(u, m) for u in us]
    assert all(b > a for a, b in zip(phis, phis[1:]))


def test_jacobi_domain():
    with pytest.raises(DomainError):
        jacobi(math.inf, 0.5)
    with pytest.raises(DomainError):
        jacobi(0.3, 1.2)


# -- quotients ----------------------------------------------------------------

def test_quotients_at_zero():
    assert jacobi_quotients(0.0, 0.4) == (0.0, 1.0, 1.0)


@pytest.mark.parametrize("u", [-1.2, 0.3, 1.0])
def test_sc_at_m_zero(u):
    assert jacobi_quotients(u, 0.0)[0] == pytest.approx(math.tan(u), abs=1e-12)


@pytest.mark.parametrize("m", MS)
def test_quotients_definition(m):
    for u in np.linspace(-0.9, 0.9, 7) * complete_K(m):
        sn, cn, dn = jacobi(u, m)
        sc, nc, dc = jacobi_quotients(u, m)
        assert sc == pytest.approx(sn / cn, rel=1e-15)
        assert nc == pytest.approx(1.0 / cn, rel=1e-15)
        assert dc == pytest.approx(dn / cn, rel=1e-15)
        assert jacobi_quotient("dc", u, m) == dc


@pytest.mark.parametrize("m", MS)
def test_shift_identity_cd(m):
    # sn(z + K) = cd(z) = 1/dc(z)
    K = complete_K(m)
    for z in np.linspace(-0.95, 0.95, 21) * K:
        assert abs(jacobi(z + K, m).sn - 1.0 / jacobi_quotients(z, m)[2]) <= 1e-10


def test_pole_error_carries_location():
    K = complete_K(0.5)
    with pytest.raises(PoleError) as info:
        jacobi_quotients(K, 0.5)
    assert info.value.location == pytest.approx(K, abs=1e-14)
    with pytest.raises(PoleError) as info:
        jacobi_quotients(-3.0 * K, 0.5)
    assert info.value.location == pytest.approx(-3.0 * K, abs=1e-13)


def test_unknown_quotient():
    with pytest.raises(DomainError):
        jacobi_quotient("xq", 0.1, 0.5)


# -- oracle -------------------------------------------------------------------

def test_oracle_examples():
    assert tuple(oracle_jacobi(0.0, 0.5)) == (0.0, 1.0, 1.0)
    sn, cn, dn = oracle_jacobi(1.0, 0.0)
    assert (sn, cn, dn) == pytest.approx((math.sin(1), math.cos(1), 1.0), abs=1e-11)


@pytest.mark.parametrize("m", [0.1, 0.5, 0.9])
def test_oracle_agrees(m):
    for u in np.linspace(0.0, 2.0 * complete_K(m), 12):
        for a, b in zip(jacobi(u, m), oracle_jacobi(u, m)):
            assert abs(a - b) <= 1e-9


# -- Pi -----------------------------------------------------------------------

def pi_quadrature(n, x, m):
    val, _ = quad(lambda u: 1.0 / (1.0 - n * mp_jacobi(u, m)[0] ** 2), 0.0, x,
                  epsabs=1e-14, epsrel=1e-13, limit=200)
    return val


def test_pi_trivial():
    assert elliptic_pi(0.0, 1.3, 0.4) == pytest.approx(1.3, abs=1e-14)
    assert elliptic_pi(0.6, 0.0, 0.4) == 0.0


def test_pi_reference_value():
    assert abs(elliptic_pi(0.3, 1.0, 0.5) - pi_quadrature(0.3, 1.0, 0.5)) <= 1e-10


@pytest.mark.parametrize("n,x,m", [(-2.0, 3.7, 0.2), (0.9, -4.1, 0.7), (0.5, 9.0, 0.95),
                                   (3.0, 0.3, 0.6), (-0.4, 1.2, -1.0)])
def test_pi_against_quadrature(n, x, m):
    assert abs(elliptic_pi(n, x, m) - pi_quadrature(n, x, m)) <= 1e-10
    assert abs(elliptic_pi(n, x, m) - oracle_pi_argument(n, x, m)) <= 1e-9


def test_pi_mpmath_amplitude_form():
    # mpmath integrates in the amplitude: Pi(n; am(x)|m)
    mpmath.mp.dps = 30
    n, x, m = 0.45, 1.1, 0.3
    want = float(mpmath.ellippi(n, amplitude(x, m), m))
    assert abs(elliptic_pi(n, x, m) - want) <= 1e-12


def test_pi_singular_path():
    n, m = 2.0, 0.5
    with pytest.raises(PoleError) as info:
        elliptic_pi(n, 1.5, m)
    u = info.value.location
    assert abs(n * jacobi(u, m).sn ** 2 - 1.0) <= 1e-12


def test_pi_additivity_by_quadrature():
    n, m, x1, x2 = 0.4, 0.6, 0.7, 1.9
    tail, _ = quad(lambda u: 1.0 / (1.0 - n * jacobi(u, m).sn ** 2), x1, x1 + x2,
                   epsabs=1e-14, epsrel=1e-13)
    assert abs(elliptic_pi(n, x1 + x2, m) - elliptic_pi(n, x1, m) - tail) <= 1e-9


def test_pi_segment_outer_cell():
    n, m = 2.0, 0.5
    K = complete_K(m)
    a, b = K - 0.1, K + 0.1
    want, _ = quad(lambda u: 1.0 / (1.0 - n * jacobi(u, m).sn ** 2), a, b, epsabs=1e-14)
    assert abs(elliptic_pi_segment(n, a, b, m) - want) <= 1e-10
