"""Incomplete elliptic integrals F(x|m) and Pi(n; x|m) in the argument u.

Both are written as functions of the Jacobi argument x (not the amplitude):

    F(x|m)     = x
    Pi(n; x|m) = int_0^x du / (1 - n sn^2(u|m))

The integrand has a pole wherever n sn^2 = 1, which happens on the path
[0, x] only for n >= 1; such paths raise :class:`PoleError` carrying the
first singular point.  Away from that the integral is computed with the
Carlson forms on one quarter period and extended by quasi-periodicity.
"""

import math

from scipy.integrate import quad

from ..errors import DomainError, PoleError
from .carlson import rf, rj
from .jacobi import complete_K, jacobi


def incomplete_F(phi, m):
    """Legendre integral of the first kind in amplitude form, |phi| <= pi/2."""
    if abs(phi) > 0.5 * math.pi + 1e-15:
        raise DomainError("incomplete_F expects |phi| <= pi/2")
    s = math.sin(phi)
    c = math.cos(phi)
    return s * rf(c * c, 1.0 - m * s * s, 1.0)


def complete_Pi(n, m):
    """Complete integral Pi(n|m) for n < 1, m < 1."""
    if n >= 1.0:
        raise PoleError(f"Pi(n|m) diverges for n = {n} >= 1",
                        location=first_singular_point(n, m, 1.0))
    return rf(0.0, 1.0 - m, 1.0) + n / 3.0 * rj(0.0, 1.0 - m, 1.0, 1.0 - n)


def first_singular_point(n, m, direction=1.0):
    """Smallest |u| with n sn^2(u|m) = 1 (signed by ``direction``), or None."""
    if n < 1.0:
        return None
    t = 1.0 / math.sqrt(n)
    u = incomplete_F(math.asin(t), m)
    return math.copysign(u, direction)


def _pi_quarter(n, r, m):
    # |r| <= K(m): sn is monotone on [0, r], so the path is regular iff n sn(r)^2 < 1
    sn, cn, dn = jacobi(r, m)
    p = 1.0 - n * sn * sn
    if p <= 0.0:
        raise PoleError(f"Pi({n}; {r}|{m}) path crosses n sn^2 = 1",
                        location=first_singular_point(n, m, r))
    if sn == 0.0:
        return 0.0
    c2, d2 = cn * cn, dn * dn
    return sn * rf(c2, d2, 1.0) + n / 3.0 * sn ** 3 * rj(c2, d2, 1.0, p)


def elliptic_pi(n, x, m):
    """Incomplete integral of the third kind Pi(n; x|m), argument form."""
    for name, v in (("n", n), ("x", x), ("m", m)):
        if not math.isfinite(v):
            raise DomainError(f"{name} must be finite, got {v}")
    if m > 1.0:
        raise DomainError(f"parameter m must satisfy m <= 1, got {m}")
    if m == 1.0:
        return _pi_quarter(n, x, m)
    K = complete_K(m)
    j = round(x / (2.0 * K))
    r = x - 2.0 * K * j
    if j == 0:
        return _pi_quarter(n, r, m)
    if n >= 1.0:
        raise PoleError(f"Pi({n}; {x}|{m}) path crosses n sn^2 = 1",
                        location=first_singular_point(n, m, x))
    return 2.0 * j * complete_Pi(n, m) + _pi_quarter(n, r, m)


def elliptic_pi_segment(n, x0, x1, m):
    """Pi(n; x1|m) - Pi(n; x0|m) along [x0, x1], which must avoid n sn^2 = 1.

    For n >= 1 this is the only meaningful form: the segment may live in a
    cell between two singular points that does not contain the origin.
    """
    if n < 1.0:
        return elliptic_pi(n, x1, m) - elliptic_pi(n, x0, m)
    # shift by a multiple of the period 2K so x0 is as close to 0 as allowed
    K = complete_K(m) if m < 1.0 else math.inf
    us = first_singular_point(n, m)
    shift = 0.0
    if math.isfinite(K):
        j = round(x0 / (2.0 * K))
        shift = 2.0 * K * j
    a, b = x0 - shift, x1 - shift
    if math.isfinite(K) and max(a, b) < -us:
        a, b, shift = a + 2.0 * K, b + 2.0 * K, shift - 2.0 * K
    # regular cells are (2jK - us, 2jK + us) and (2jK + us, 2(j+1)K - us)
    lo, hi = min(a, b), max(a, b)
    if -us < lo and hi < us:
        return elliptic_pi(n, b, m) - elliptic_pi(n, a, m)
    if math.isfinite(K) and us < lo and hi < 2.0 * K - us:
        # outer cell: regular integrand, rarely needed, so plain quadrature
        val, _ = quad(lambda u: 1.0 / (1.0 - n * jacobi(u, m).sn ** 2), a, b,
                      epsabs=1e-14, epsrel=1e-13, limit=200)
        return val
    bad = next((p for p in (-us, us, 2.0 * K - us) if lo <= p <= hi), us)
    raise PoleError(f"segment [{x0}, {x1}] crosses n sn^2 = 1",
                    location=bad + shift)


def elliptic_pi_excess(n, x, m):
    """(Pi(n; x|m) - x) / n = int_0^x sn^2 / (1 - n sn^2), without cancellation.

    Finite at n = 0, where it reduces to int_0^x sn^2.
    """
    if not (math.isfinite(n) and math.isfinite(x) and math.isfinite(m)):
        raise DomainError("elliptic_pi_excess needs finite arguments")
    if m > 1.0:
        raise DomainError(f"parameter m must satisfy m <= 1, got {m}")

    def quarter(r):
        sn, cn, dn = jacobi(r, m)
        p = 1.0 - n * sn * sn
        if p <= 0.0:
            raise PoleError(f"path crosses n sn^2 = 1 at n={n}",
                            location=first_singular_point(n, m, r))
        if sn == 0.0:
            return 0.0
        return sn ** 3 / 3.0 * rj(cn * cn, dn * dn, 1.0, p)

    if m == 1.0:
        return quarter(x)
    K = complete_K(m)
    j = round(x / (2.0 * K))
    r = x - 2.0 * K * j
    if j == 0:
        return quarter(r)
    if n >= 1.0:
        raise PoleError(f"path crosses n sn^2 = 1 at n={n}",
                        location=first_singular_point(n, m, x))
    return 2.0 * j * rj(0.0, 1.0 - m, 1.0, 1.0 - n) / 3.0 + quarter(r)
