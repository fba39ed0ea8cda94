"""Hot double-precision loops.

Each kernel exists twice: a loop version compiled with ``numba.njit`` and a
vectorized numpy version.  The numba path is used when numba imports and the
environment variable ``ABELIAN_LINES_NO_NUMBA`` is unset (or ``0``); the
numpy path is always importable as ``*_numpy`` for benchmarking and testing.
"""
from __future__ import annotations

import os

import numpy as np

_flag = os.environ.get("ABELIAN_LINES_NO_NUMBA", "").strip().lower()
_disabled = _flag not in ("", "0", "false", "no")

try:
    if _disabled:
        raise ImportError("numba disabled by ABELIAN_LINES_NO_NUMBA")
    from numba import njit
    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f


TWO_PI = 2.0 * np.pi


# -- periodic trapezoid sum of the Abelian integrand ---------------------------

def abelian_trapezoid_numpy(pi, pj, pc, qi, qj, qc, alines, blines, r, npts):
    """Return ``(sum f h, sum |f| h)`` for ``f = (-r Q sin - r P cos)/G`` on ``npts`` nodes."""
    theta = np.arange(npts) * (TWO_PI / npts)
    s, c = np.sin(theta), np.cos(theta)
    x, y = r * c, r * s
    P = np.zeros(npts)
    for k in range(pc.shape[0]):
        P += pc[k] * x ** pi[k] * y ** pj[k]
    Q = np.zeros(npts)
    for k in range(qc.shape[0]):
        Q += qc[k] * x ** qi[k] * y ** qj[k]
    G = np.ones(npts)
    for a in alines:
        G *= x - a
    for b in blines:
        G *= y - b
    f = (-r * Q * s - r * P * c) / G
    h = TWO_PI / npts
    return f.sum() * h, np.abs(f).sum() * h


@njit(cache=True, fastmath=False)
def _abelian_trapezoid_loop(pi, pj, pc, qi, qj, qc, alines, blines, r, npts):
    h = TWO_PI / npts
    total = 0.0
    comp = 0.0
    mag = 0.0
    for k in range(npts):
        th = k * h
        s = np.sin(th)
        c = np.cos(th)
        x = r * c
        y = r * s
        P = 0.0
        for m in range(pc.shape[0]):
            P += pc[m] * x ** pi[m] * y ** pj[m]
        Q = 0.0
        for m in range(qc.shape[0]):
            Q += qc[m] * x ** qi[m] * y ** qj[m]
        G = 1.0
        for a in alines:
            G *= x - a
        for b in blines:
            G *= y - b
        f = (-r * Q * s - r * P * c) / G
        # Kahan summation keeps the roundoff floor independent of npts
        yk = f - comp
        t = total + yk
        comp = (t - total) - yk
        total = t
        mag += abs(f)
    return total * h, mag * h


# -- evaluation of radical closed forms on a grid -----------------------------

def radical_grid_numpy(x, sgn, poly, rad_c, rad_coef, pole_d, pole_c, pole_u):
    """Evaluate ``poly(x) + sum_j S_j(x)/sqrt(c_j + sgn x) + sum u/((d + sgn x) sqrt(c + sgn x))``.

    ``rad_coef`` is a 2-D array, one zero-padded coefficient row per radical,
    lowest degree first.  ``sgn = -1`` gives RadVal semantics in rho,
    ``sgn = +1`` gives radical functions in x.
    """
    out = np.polynomial.polynomial.polyval(x, poly) if poly.shape[0] else np.zeros_like(x)
    for k in range(rad_c.shape[0]):
        out = out + np.polynomial.polynomial.polyval(x, rad_coef[k]) / np.sqrt(rad_c[k] + sgn * x)
    for k in range(pole_d.shape[0]):
        out = out + pole_u[k] / ((pole_d[k] + sgn * x) * np.sqrt(pole_c[k] + sgn * x))
    return out


@njit(cache=True)
def _radical_grid_loop(x, sgn, poly, rad_c, rad_coef, pole_d, pole_c, pole_u):
    out = np.empty(x.shape[0])
    deg = rad_coef.shape[1]
    for i in range(x.shape[0]):
        xi = x[i]
        acc = 0.0
        for k in range(poly.shape[0] - 1, -1, -1):
            acc = acc * xi + poly[k]
        for j in range(rad_c.shape[0]):
            s = 0.0
            for k in range(deg - 1, -1, -1):
                s = s * xi + rad_coef[j, k]
            acc += s / np.sqrt(rad_c[j] + sgn * xi)
        for j in range(pole_d.shape[0]):
            acc += pole_u[j] / ((pole_d[j] + sgn * xi) * np.sqrt(pole_c[j] + sgn * xi))
        out[i] = acc
    return out


if HAVE_NUMBA:
    abelian_trapezoid = _abelian_trapezoid_loop
    radical_grid = _radical_grid_loop
    BACKEND = "numba"
else:
    abelian_trapezoid = abelian_trapezoid_numpy
    radical_grid = radical_grid_numpy
    BACKEND = "numpy"

abelian_trapezoid_loop = _abelian_trapezoid_loop
radical_grid_loop = _radical_grid_loop
