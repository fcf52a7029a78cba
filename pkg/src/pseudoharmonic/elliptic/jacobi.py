"""Complete integral K(m), Jacobi sn/cn/dn, amplitude and the quotient functions.

The parameter convention is m = k^2.  Parameters m < 0 are mapped onto
(0, 1) by the negative-parameter transformation; m > 1 is rejected because
the reciprocal-modulus transformation is never needed by the soliton code
(see :func:`pseudoharmonic.sinegordon.SolitonParams`, which reduces every
admissible case to a parameter below one).
"""

import math
from dataclasses import dataclass
from functools import lru_cache

from ..errors import DomainError, PoleError

# |denominator| below this is reported as a pole
POLE_TOL = 1e-13

_AGM_MAX = 64


def _check_m(m):
    if not math.isfinite(m):
        raise DomainError(f"parameter m must be finite, got {m}")
    if m > 1.0:
        raise DomainError(f"parameter m must satisfy m <= 1, got {m}")


def _check_u(u):
    if not math.isfinite(u):
        raise DomainError(f"argument u must be finite, got {u}")


def agm(a, b):
    """Arithmetic-geometric mean of two positive numbers."""
    for _ in range(_AGM_MAX):
        if abs(a - b) <= 4e-16 * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return a


@lru_cache(maxsize=256)
def complete_K(m):
    """Complete elliptic integral of the first kind K(m), m < 1."""
    _check_m(m)
    if m == 1.0:
        raise PoleError("K(m) diverges at m = 1", location=1.0)
    return 0.5 * math.pi / agm(1.0, math.sqrt(1.0 - m))


@dataclass(frozen=True)
class JacobiValues:
    sn: float
    cn: float
    dn: float

    def __iter__(self):
        return iter((self.sn, self.cn, self.dn))


def _landen_amplitude(u, m):
    """am(u|m) for 0 < m < 1 by descending Landen/AGM iteration."""
    a, b, c = 1.0, math.sqrt(1.0 - m), math.sqrt(m)
    ratios = []
    n = 0
    while abs(c) > 4e-16 * a and n < _AGM_MAX:
        a, b, c = 0.5 * (a + b), math.sqrt(a * b), 0.5 * (a - b)
        ratios.append(c / a)
        n += 1
    phi = (2.0 ** n) * a * u
    for r in reversed(ratios):
        phi = 0.5 * (phi + math.asin(r * math.sin(phi)))
    return phi


def _amplitude_unit(u, m):
    # 0 <= m < 1 with period reduction; am(u + 4K) = am(u) + 2 pi
    if m == 0.0:
        return u
    K = complete_K(m)
    j = round(u / (4.0 * K))
    r = u - 4.0 * K * j
    return _landen_amplitude(r, m) + 2.0 * math.pi * j


def amplitude(u, m):
    """Jacobi amplitude am(u|m), continuous and increasing in u."""
    _check_u(u)
    _check_m(m)
    if m == 1.0:
        return math.atan(math.sinh(u))
    if m >= 0.0:
        return _amplitude_unit(u, m)
    # negative parameter: tan am(u|m) = tan am(u s|mu) / s, same quadrant
    s = math.sqrt(1.0 - m)
    mu = -m / (1.0 - m)
    phi = _amplitude_unit(u * s, mu)
    k = round(phi / math.pi)
    r = phi - k * math.pi
    return k * math.pi + math.atan(math.tan(r) / s)


@lru_cache(maxsize=4096)
def jacobi(u, m):
    """Return ``JacobiValues(sn, cn, dn)`` at real u for m <= 1.

    Results are memoised: residual checks evaluate the same nodes repeatedly.
    """
    _check_u(u)
    _check_m(m)
    if m == 1.0:
        sech = 1.0 / math.cosh(u)
        return JacobiValues(math.tanh(u), sech, sech)
    if m == 0.0:
        return JacobiValues(math.sin(u), math.cos(u), 1.0)
    if m < 0.0:
        s = math.sqrt(1.0 - m)
        mu = -m / (1.0 - m)
        sn, cn, dn = jacobi(u * s, mu)
        return JacobiValues(sn / (s * dn), cn / dn, 1.0 / dn)
    phi = _amplitude_unit(u, m)
    sn, cn = math.sin(phi), math.cos(phi)
    dn = math.sqrt(cn * cn + (1.0 - m) * sn * sn)
    return JacobiValues(sn, cn, dn)


_NAMES = {"s": 0, "c": 1, "d": 2}


def _nearest_pole(u, m, denom):
    # zeros of sn at 2jK, of cn at (2j+1)K; dn has no real zeros for m < 1
    K = complete_K(m) if m < 1.0 else math.inf
    if denom == "s":
        return 2.0 * K * round(u / (2.0 * K)) if math.isfinite(K) else 0.0
    return K * (2 * round((u / K - 1.0) / 2.0) + 1)


def jacobi_quotient(name, u, m, tol=POLE_TOL):
    """Glaisher quotient such as ``'sc'``, ``'dc'``, ``'nc'`` (n means 1).

    Raises :class:`PoleError` (with the nearest pole) when the denominator
    is smaller than ``tol`` in magnitude.
    """
    if len(name) != 2 or any(ch not in "scdn" for ch in name):
        raise DomainError(f"unknown Jacobi quotient {name!r}")
    vals = tuple(jacobi(u, m)) + (1.0,)
    num = vals[_NAMES.get(name[0], 3)]
    den = vals[_NAMES.get(name[1], 3)]
    if name[0] == name[1]:
        return 1.0
    if abs(den) < tol:
        raise PoleError(f"{name}({u}|{m}) is at a pole",
                        location=_nearest_pole(u, m, name[1]))
    return num / den


def jacobi_quotients(u, m, tol=POLE_TOL):
    """Return ``(sc, nc, dc)`` at u; :class:`PoleError` where cn vanishes."""
    sn, cn, dn = jacobi(u, m)
    if abs(cn) < tol:
        raise PoleError(f"cn({u}|{m}) vanishes", location=_nearest_pole(u, m, "c"))
    return sn / cn, 1.0 / cn, dn / cn
