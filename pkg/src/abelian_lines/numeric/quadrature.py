"""Quadrature oracle for the Abelian integral.

The integrand is built directly from ``P``, ``Q`` and the line offsets, never
from the symbolic pipeline.  For ``r < rho_min`` it is analytic and
``2 pi``-periodic, so the equispaced trapezoid rule converges geometrically;
the node count doubles until two successive sums agree.  When cancellation
makes the double precision sum untrustworthy (roundoff floor above the
requested relative tolerance) the converged rule is re-summed in mpmath.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..abelian import ClosedForm, LineConfig, Perturbation, closed_form
from ..algebra import mp, to_mpf
from ..errors import NearSingular, NumericFailure
from . import _kernels

EPS = np.finfo(float).eps


def _poly2_arrays(p):
    keys = list(p.terms)
    return (np.array([k[0] for k in keys], dtype=np.int64),
            np.array([k[1] for k in keys], dtype=np.int64),
            np.array([float(c) for c in p.terms.values()], dtype=float))


@dataclass
class QuadResult:
    value: object  # mpmath mpf
    nodes: int
    roundoff: float
    high_precision: bool


def _mp_trapezoid(config: LineConfig, pert: Perturbation, r, npts: int):
    r = mp.mpf(r)
    h = 2 * mp.pi / npts
    P = [(i, j, to_mpf(c)) for (i, j), c in pert.P.terms.items()]
    Q = [(i, j, to_mpf(c)) for (i, j), c in pert.Q.terms.items()]
    a_lines = [to_mpf(a) for a in config.a_lines]
    b_lines = [to_mpf(b) for b in config.b_lines]
    total = mp.mpf(0)
    for k in range(npts):
        s, c = mp.sin(k * h), mp.cos(k * h)
        x, y = r * c, r * s
        pv = mp.fsum(cf * x**i * y**j for i, j, cf in P)
        qv = mp.fsum(cf * x**i * y**j for i, j, cf in Q)
        g = mp.mpf(1)
        for a in a_lines:
            g *= x - a
        for b in b_lines:
            g *= y - b
        total += (-r * qv * s - r * pv * c) / g
    return total * h


def quadrature_details(config: LineConfig, pert: Perturbation, r: float, rel_tol: float = 1e-12,
                       *, min_nodes: int = 64, max_nodes: int = 1 << 20,
                       high_precision: bool | None = None) -> QuadResult:
    r = float(r)
    rho = float(config.rho_min)
    if not 0 < r < rho:
        raise ValueError(f"radius {r} outside the annulus (0, {rho})")
    if r >= (1 - 1e-6) * rho:
        raise NearSingular(f"radius {r} too close to the nearest singular line at {rho}")
    pi_, pj_, pc_ = _poly2_arrays(pert.P)
    qi_, qj_, qc_ = _poly2_arrays(pert.Q)
    al = np.array([float(a) for a in config.a_lines], dtype=float)
    bl = np.array([float(b) for b in config.b_lines], dtype=float)

    npts = min_nodes // 2
    prev, _ = _kernels.abelian_trapezoid(pi_, pj_, pc_, qi_, qj_, qc_, al, bl, r, npts)
    while True:
        npts *= 2
        cur, mag = _kernels.abelian_trapezoid(pi_, pj_, pc_, qi_, qj_, qc_, al, bl, r, npts)
        roundoff = 64 * EPS * mag
        if abs(cur - prev) <= max(rel_tol * abs(cur), roundoff):
            break
        if npts >= max_nodes:
            raise NumericFailure(f"trapezoid rule did not converge with {npts} nodes at r={r}")
        prev = cur
    use_mp = high_precision if high_precision is not None else roundoff > rel_tol * abs(cur)
    if use_mp:
        return QuadResult(_mp_trapezoid(config, pert, r, npts), npts, roundoff, True)
    return QuadResult(mp.mpf(cur), npts, roundoff, False)


def quadrature_I(config: LineConfig, pert: Perturbation, r: float, rel_tol: float = 1e-12):
    """``I(r)`` by adaptive periodic trapezoid quadrature, as an mpmath number."""
    return quadrature_details(config, pert, r, rel_tol).value


@dataclass
class OracleComparison:
    radii: list[float]
    closed: list = field(default_factory=list)
    quadrature: list = field(default_factory=list)
    errors: list[float] = field(default_factory=list)
    near_zero: list[bool] = field(default_factory=list)

    @property
    def max_rel_error(self) -> float:
        return max((e for e, z in zip(self.errors, self.near_zero) if not z), default=0.0)

    @property
    def max_abs_error_near_zero(self) -> float:
        return max((e for e, z in zip(self.errors, self.near_zero) if z), default=0.0)

    def passes(self, rel_tol: float = 1e-8, abs_tol: float = 1e-10) -> bool:
        return self.max_rel_error <= rel_tol and self.max_abs_error_near_zero <= abs_tol


NEAR_ZERO = 1e-6


def sample_radii(config: LineConfig, samples: int, lo: float = 0.05, hi: float = 0.95) -> list[float]:
    if samples < 2:
        raise ValueError("need at least two sample radii")
    return [float(v) * float(config.rho_min) for v in np.linspace(lo, hi, samples)]


def oracle_comparison(config: LineConfig, pert: Perturbation, samples: int = 20,
                      cf: ClosedForm | None = None, radii=None, rel_tol: float = 1e-12) -> OracleComparison:
    """Closed form against quadrature; relative error, or absolute where ``|I| < 1e-6``."""
    cf = cf if cf is not None else closed_form(config, pert)
    radii = list(radii) if radii is not None else sample_radii(config, samples)
    out = OracleComparison(radii)
    for r in radii:
        exact = cf.abelian_value(mp.mpf(r))
        quad = quadrature_I(config, pert, r, rel_tol)
        diff = abs(exact - quad)
        near = abs(quad) < NEAR_ZERO
        out.closed.append(exact)
        out.quadrature.append(quad)
        out.near_zero.append(bool(near))
        out.errors.append(float(diff if near else diff / abs(quad)))
    return out


def compare_closed_vs_oracle(config: LineConfig, pert: Perturbation, samples: int = 20,
                             cf: ClosedForm | None = None) -> float:
    """Largest discrepancy over the sample radii (absolute where ``|I| < 1e-6``)."""
    return max(oracle_comparison(config, pert, samples, cf).errors)
