"""Carlson symmetric elliptic integrals R_C, R_F, R_J (real arguments).

Duplication algorithms after B. C. Carlson, "Numerical computation of real
or complex elliptic integrals" (Numer. Algorithms 10, 1995).  Only the
non-principal-value case is needed here, so every argument must be
non-negative and ``p`` strictly positive.
"""

import math

from ..errors import DomainError

_RF_TOL = 1e-3  # fifth-order remainder ~ tol**6
_MAX_ITER = 100


def rc(x, y):
    """Degenerate integral R_C(x, y) for x >= 0, y > 0."""
    if x < 0 or y <= 0:
        raise DomainError(f"rc requires x >= 0 and y > 0, got x={x}, y={y}")
    if x == 0:
        return 0.5 * math.pi / math.sqrt(y)
    return _rc1((y - x) / x) / math.sqrt(x)


def _rc1(e):
    """R_C(1, 1 + e), written to stay accurate as e -> 0."""
    if abs(e) < 1e-4:
        return 1.0 - e / 3.0 + e * e / 5.0 - e ** 3 / 7.0 + e ** 4 / 9.0
    if e > 0:
        r = math.sqrt(e)
        return math.atan(r) / r
    r = math.sqrt(-e)
    return math.atanh(r) / r


def rf(x, y, z):
    """R_F(x, y, z) with non-negative arguments, at most one of them zero."""
    if min(x, y, z) < 0 or (x == 0) + (y == 0) + (z == 0) > 1:
        raise DomainError(f"rf undefined at ({x}, {y}, {z})")
    for _ in range(_MAX_ITER):
        sx, sy, sz = math.sqrt(x), math.sqrt(y), math.sqrt(z)
        lam = sx * sy + sy * sz + sz * sx
        x, y, z = 0.25 * (x + lam), 0.25 * (y + lam), 0.25 * (z + lam)
        a = (x + y + z) / 3.0
        dx, dy = 1.0 - x / a, 1.0 - y / a
        dz = -dx - dy
        if max(abs(dx), abs(dy), abs(dz)) < _RF_TOL:
            break
    e2 = dx * dy - dz * dz
    e3 = dx * dy * dz
    return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0
            - 3.0 * e2 * e3 / 44.0) / math.sqrt(a)


def rj(x, y, z, p):
    """R_J(x, y, z, p) for non-negative x, y, z (at most one zero) and p > 0."""
    if min(x, y, z) < 0 or p <= 0 or (x == 0) + (y == 0) + (z == 0) > 1:
        raise DomainError(f"rj undefined at ({x}, {y}, {z}, {p})")
    a0 = (x + y + z + 2.0 * p) / 5.0
    delta = (p - x) * (p - y) * (p - z)
    q = (0.25 * 1e-16) ** (-1.0 / 6.0) * max(
        abs(a0 - x), abs(a0 - y), abs(a0 - z), abs(a0 - p))
    a = a0
    x0, y0, z0 = x, y, z
    total = 0.0
    fac = 1.0  # 4**-m
    for _ in range(_MAX_ITER):
        if fac * q < abs(a):
            break
        sx, sy, sz, sp = math.sqrt(x), math.sqrt(y), math.sqrt(z), math.sqrt(p)
        lam = sx * sy + sy * sz + sz * sx
        dm = (sp + sx) * (sp + sy) * (sp + sz)
        em = fac ** 3 * delta / (dm * dm)
        total += fac / dm * _rc1(em)
        x, y, z, p = (0.25 * (x + lam), 0.25 * (y + lam),
                      0.25 * (z + lam), 0.25 * (p + lam))
        a = 0.25 * (a + lam)
        fac *= 0.25
    X = fac * (a0 - x0) / a
    Y = fac * (a0 - y0) / a
    Z = fac * (a0 - z0) / a
    P = -(X + Y + Z) / 2.0
    e2 = X * Y + X * Z + Y * Z - 3.0 * P * P
    e3 = X * Y * Z + 2.0 * e2 * P + 4.0 * P ** 3
    e4 = (2.0 * X * Y * Z + e2 * P + 3.0 * P ** 3) * P
    e5 = X * Y * Z * P * P
    series = (1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0
              - 3.0 * e4 / 22.0 - 9.0 * e2 * e3 / 52.0 + 3.0 * e5 / 26.0)
    return fac * a ** -1.5 * series + 6.0 * total
