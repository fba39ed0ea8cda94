"""Sign-change zero isolation on open intervals.

Scanning is done in double precision on a grid that is uniform in the
interior and geometric towards both endpoints (where radicals blow up).
Every bracket is re-checked with a high precision evaluator before it is
counted, so roundoff noise near a tangency cannot inflate the count.  Only
odd-multiplicity zeros are detected; the count is a lower bound.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from ..abelian import ClosedForm
from ..algebra import mp
from ..radical import RadicalFunction, zero_bound
from ..trig import RadVal
from . import _kernels

ZERO_FUNCTION_LEVEL = 1e-13
TANGENCY_LEVEL = 1e-9


@dataclass
class ZeroReport:
    interval: tuple[float, float]
    zeros: list[tuple[float, float, int]] = field(default_factory=list)
    theoretical_upper: int | None = None
    suspected_even: list[float] = field(default_factory=list)
    identically_zero_suspect: bool = False
    samples: tuple[np.ndarray, np.ndarray] | None = None

    @property
    def count_lower_bound(self) -> int:
        return len(self.zeros)

    @property
    def within_bound(self) -> bool:
        return self.theoretical_upper is None or self.count_lower_bound <= self.theoretical_upper

    def to_json(self) -> dict:
        return {
            "interval": [float(v) for v in self.interval],
            "zeros": [{"location": z, "width": w, "direction": d} for z, w, d in self.zeros],
            "count_lower_bound": self.count_lower_bound,
            "theoretical_upper": self.theoretical_upper,
            "suspected_even_multiplicity": self.suspected_even,
            "identically_zero_suspect": self.identically_zero_suspect,
        }


def scan_grid(lo: float, hi: float, grid: int = 4096, decades: int = 12, per_end: int = 96) -> np.ndarray:
    """Open-interval grid: uniform interior plus geometric clustering at both ends."""
    w = hi - lo
    u = np.linspace(lo, hi, grid + 2)[1:-1]
    g = w * np.logspace(-decades, np.log10(0.5 / grid), per_end)
    pts = np.concatenate([u, lo + g, hi - g])
    pts = pts[(pts > lo) & (pts < hi)]
    return np.unique(pts)


def _sgn(v) -> int:
    return (v > 0) - (v < 0)


def isolate_zeros(f: Callable, interval, grid: int = 4096,
                  precise: Callable | None = None, *, theoretical_upper: int | None = None,
                  points: np.ndarray | None = None, keep_samples: bool = False) -> ZeroReport:
    """Bracket and refine the sign changes of ``f`` on the open ``interval``.

    ``f`` must accept a numpy array.  ``precise``, if given, maps a float to a
    high precision value and is used to confirm each bracket and to bisect
    when the double precision values are unreliable.
    """
    if grid < 16:
        raise ValueError("grid must have at least 16 points")
    lo, hi = float(interval[0]), float(interval[1])
    xs = points if points is not None else scan_grid(lo, hi, grid)
    with np.errstate(all="ignore"):
        ys = np.asarray(f(xs), dtype=float)
    ok = np.isfinite(ys)
    xs, ys = xs[ok], ys[ok]
    report = ZeroReport((lo, hi), theoretical_upper=theoretical_upper)
    if keep_samples:
        report.samples = (xs, ys)
    if xs.size == 0:
        return report
    if np.all(np.abs(ys) < ZERO_FUNCTION_LEVEL):
        report.identically_zero_suspect = True
        return report

    width_tol = 1e-12 * (hi - lo)
    signs = np.sign(ys)
    nz = np.nonzero(signs)[0]
    # consecutive nonzero samples with opposite signs (exact zeros fall in between)
    for k0, k1 in zip(nz[:-1], nz[1:]):
        if signs[k0] == signs[k1]:
            continue
        a, b = xs[k0], xs[k1]
        if precise is not None:
            pa, pb = _sgn(precise(a)), _sgn(precise(b))
            if pa == pb or pa == 0 or pb == 0:
                if pa == 0:
                    report.zeros.append((float(a), 0.0, int(signs[k1])))
                continue
        root, width = _refine(f, precise, a, b, width_tol)
        report.zeros.append((root, width, int(signs[k1])))

    # local minima of |f| that dip to the tangency level without a sign change
    absy = np.abs(ys)
    for k in range(1, len(ys) - 1):
        if absy[k] <= absy[k - 1] and absy[k] <= absy[k + 1] and absy[k] < TANGENCY_LEVEL:
            if signs[k - 1] == signs[k + 1] and signs[k] in (0, signs[k - 1]):
                report.suspected_even.append(float(xs[k]))
    report.zeros.sort()
    return report


def _refine(f, precise, a, b, tol):
    fa, fb = float(f(np.array([a]))[0]), float(f(np.array([b]))[0])
    if fa * fb < 0:
        root = brentq(lambda t: float(f(np.array([t]))[0]), a, b, xtol=tol, rtol=4 * np.finfo(float).eps)
        return float(root), tol
    # double precision lost the sign change; bisect with the precise evaluator
    sa = _sgn(precise(a))
    while b - a > tol:
        m = 0.5 * (a + b)
        sm = _sgn(precise(m))
        if sm == 0:
            return float(m), 0.0
        if sm == sa:
            a = m
        else:
            b = m
    return float(0.5 * (a + b)), float(b - a)


def _pack_radval(v: RadVal):
    poly = np.array([float(c) for c in v.poly.coeffs], dtype=float)
    deg = max((len(s) for s in v.radicals.values()), default=0)
    rad_c = np.array([float(c) for c in v.radicals], dtype=float)
    rad_coef = np.zeros((len(v.radicals), max(deg, 1)))
    for k, s in enumerate(v.radicals.values()):
        rad_coef[k, :len(s)] = [float(c) for c in s.coeffs]
    pole_d = np.array([float(d) for d, _ in v.poles], dtype=float)
    pole_c = np.array([float(c) for _, c in v.poles], dtype=float)
    pole_u = np.array([float(u[0]) for u in v.poles.values()], dtype=float)
    return poly, rad_c, rad_coef, pole_d, pole_c, pole_u


def radval_evaluator(v: RadVal) -> Callable[[np.ndarray], np.ndarray]:
    """Vectorized double precision evaluator of ``v`` (without the factor pi) in rho."""
    packed = _pack_radval(v)
    return lambda rho: _kernels.radical_grid(np.ascontiguousarray(rho, dtype=float), -1.0, *packed)


def radical_evaluator(F: RadicalFunction) -> Callable[[np.ndarray], np.ndarray]:
    poly = np.array([float(c) for c in F.P0.coeffs], dtype=float)
    deg = max((len(p) for p, _ in F.terms), default=0)
    rad_c = np.array([float(c) for _, c in F.terms], dtype=float)
    rad_coef = np.zeros((F.K, max(deg, 1)))
    for k, (p, _) in enumerate(F.terms):
        rad_coef[k, :len(p)] = [float(c) for c in p.coeffs]
    empty = np.zeros(0)
    return lambda x: _kernels.radical_grid(np.ascontiguousarray(x, dtype=float), 1.0, poly, rad_c,
                                           rad_coef, empty, empty, empty)


def closed_form_zeros(cf: ClosedForm, grid: int = 4096, theoretical_upper: int | None = None,
                      keep_samples: bool = False) -> ZeroReport:
    """Zeros in ``r`` of the closed form on ``(0, rho_min)``.

    Multiplying by a cleared form's H does not move zeros (H > 0 on the annulus).
    """
    ev = radval_evaluator(cf.value)
    rho = float(cf.config.rho_min)
    return isolate_zeros(lambda r: ev(r * r), (0.0, rho), grid,
                         precise=lambda r: cf.value.evaluate(mp.mpf(r) ** 2, with_pi=False),
                         theoretical_upper=theoretical_upper, keep_samples=keep_samples)


def radical_zeros(F: RadicalFunction, x_max: float | None = None, grid: int = 4096,
                  interval=None) -> ZeroReport:
    """Zeros of ``F`` on its real domain ``(max(-c_j), x_max)`` (or on ``interval``)."""
    if interval is None:
        left = F.domain_left()
        left = float(left) if left is not None else -1e3
        if x_max is None:
            x_max = max(1e3, abs(left) * 10)
        interval = (left, float(x_max))
    lo, hi = float(interval[0]), float(interval[1])
    pts = scan_grid(lo, hi, grid)
    # extra geometric resolution along the whole domain, measured from the left end
    pts = np.unique(np.concatenate([pts, lo + (hi - lo) * np.logspace(-12, 0, grid // 4)[:-1]]))
    upper = None if F.is_zero() else zero_bound(F)
    return isolate_zeros(radical_evaluator(F), (lo, hi), grid,
                         precise=lambda x: F.evaluate(mp.mpf(x)),
                         theoretical_upper=upper, points=pts)
