"""Perturbed flow and its first return to the positive x-axis.

Integrates ``x' = -y G + eps P, y' = x G + eps Q`` from ``(r0, 0)`` with
DOP853 until the orbit crosses the positive x-axis again.  The rotation sense
is the sign of ``G`` on the annulus (``G`` has no zero there), so the return
crossing is upward for ``G > 0`` and downward for ``G < 0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from ..abelian import LineConfig, Perturbation, closed_form
from ..errors import LeftAnnulus, NoReturn
from .quadrature import _poly2_arrays


def _rhs_factory(config: LineConfig, pert: Perturbation, eps: float):
    pi_, pj_, pc_ = _poly2_arrays(pert.P)
    qi_, qj_, qc_ = _poly2_arrays(pert.Q)
    al = [float(a) for a in config.a_lines]
    bl = [float(b) for b in config.b_lines]

    def G(x, y):
        g = 1.0
        for a in al:
            g *= x - a
        for b in bl:
            g *= y - b
        return g

    def rhs(t, z):
        x, y = z
        g = G(x, y)
        P = float(np.sum(pc_ * x ** pi_ * y ** pj_)) if pc_.size else 0.0
        Q = float(np.sum(qc_ * x ** qi_ * y ** qj_)) if qc_.size else 0.0
        return [-y * g + eps * P, x * g + eps * Q]

    return rhs, G


def rotation_sign(config: LineConfig) -> int:
    """Sign of ``G`` on the period annulus, i.e. of ``G(0, 0) = prod(-a) prod(-b)``."""
    s = 1
    for v in config.a_lines + config.b_lines:
        s *= -1 if v > 0 else 1
    return s


def poincare_displacement(config: LineConfig, pert: Perturbation, epsilon: float, r0: float,
                          rtol: float = 1e-12, atol: float = 1e-14) -> float:
    """``Pi(r0, eps) - r0`` for the first return to the positive x-axis."""
    rho = float(config.rho_min)
    if not 0 < r0 < 0.95 * rho:
        raise ValueError(f"r0={r0} must lie in (0, 0.95 rho_min) = (0, {0.95 * rho})")
    rhs, G = _rhs_factory(config, pert, float(epsilon))
    direction = rotation_sign(config)
    th = np.linspace(0, 2 * np.pi, 257)[:-1]
    period = float(np.mean(1.0 / np.abs(G(r0 * np.cos(th), r0 * np.sin(th))))) * 2 * np.pi
    t_max = 4 * period

    def crossing(t, z):
        return z[1]
    crossing.terminal = True
    crossing.direction = direction

    def leaving(t, z):
        return math.hypot(z[0], z[1]) - (1 - 1e-6) * rho
    leaving.terminal = True
    leaving.direction = 1

    def approaching_origin(t, z):
        return math.hypot(z[0], z[1]) - 1e-3 * r0
    approaching_origin.terminal = True

    # scipy fires an event at t=0 when starting on the section; leave it first
    t_pre = period / 8
    pre = solve_ivp(rhs, (0.0, t_pre), [float(r0), 0.0], method="DOP853", rtol=rtol, atol=atol,
                    events=(leaving,))
    if pre.t_events[0].size:
        raise LeftAnnulus(f"orbit from r0={r0} left the annulus at eps={epsilon}")
    sol = solve_ivp(rhs, (t_pre, t_max), pre.y[:, -1], method="DOP853", rtol=rtol, atol=atol,
                    events=(crossing, leaving, approaching_origin))
    if sol.t_events[1].size:
        raise LeftAnnulus(f"orbit from r0={r0} left the annulus at eps={epsilon}")
    if sol.t_events[2].size:
        raise NoReturn(f"orbit from r0={r0} collapsed towards the origin at eps={epsilon}")
    if not sol.t_events[0].size:
        raise NoReturn(f"no return to the section within t={t_max:.3g} (r0={r0}, eps={epsilon})")
    x_ret = float(sol.y_events[0][0][0])
    if x_ret <= 0:
        raise NoReturn("return crossing landed on the negative x-axis")
    return x_ret - float(r0)


@dataclass
class SimReport:
    epsilon: float
    samples: list[tuple[float, float]] = field(default_factory=list)
    ratio_profile: list[tuple[float, float]] = field(default_factory=list)
    abelian: list[float] = field(default_factory=list)
    rotation: int = 1
    rtol: float = 1e-12

    @property
    def ratios(self) -> np.ndarray:
        return np.array([q for _, q in self.ratio_profile])

    @property
    def kappa(self) -> float:
        """Mean of ``d / (eps I)`` over the sampled radii."""
        return float(np.mean(self.ratios))

    @property
    def kappa_spread(self) -> float:
        """Relative spread ``(max - min)/|mean|`` of ``d/(eps I)``."""
        q = self.ratios
        return float((q.max() - q.min()) / abs(q.mean()))

    @property
    def scaled_ratios(self) -> np.ndarray:
        """``r0 d / (eps I)``; the first order theory predicts ``-rotation`` at every radius."""
        return np.array([r * q for r, q in self.ratio_profile])

    def csv_rows(self):
        for (r0, d), I in zip(self.samples, self.abelian):
            yield r0, d, d / self.epsilon, d / (self.epsilon * I)


def simulate(config: LineConfig, pert: Perturbation, epsilon: float, radii,
             rtol: float = 1e-12) -> SimReport:
    """Displacements at each radius together with ``d/(eps I)``."""
    if epsilon == 0:
        raise ValueError("epsilon must be non-zero for a ratio profile")
    cf = closed_form(config, pert)
    rep = SimReport(float(epsilon), rotation=rotation_sign(config), rtol=rtol)
    for r0 in radii:
        d = poincare_displacement(config, pert, epsilon, float(r0), rtol=rtol)
        I = float(cf.abelian_value(float(r0)))
        rep.samples.append((float(r0), d))
        rep.abelian.append(I)
        rep.ratio_profile.append((float(r0), d / (epsilon * I)))
    return rep


def richardson_slope(config: LineConfig, pert: Perturbation, r0: float,
                     epsilons=(1e-2, 5e-3, 2.5e-3, 1.25e-3, 6.25e-4)) -> tuple[float, list[float]]:
    """Order of ``d(r0, eps)/eps`` converging to its limit as eps is halved.

    Fits ``log |q(eps_k) - q(eps_{k+1})|`` against ``log eps_k``; a first
    order remainder gives slope 1.
    """
    q = [poincare_displacement(config, pert, e, r0) / e for e in epsilons]
    diffs = [abs(a - b) for a, b in zip(q[:-1], q[1:])]
    x = np.log(np.array(epsilons[:-1]))
    y = np.log(np.array(diffs))
    slope = float(np.polyfit(x, y, 1)[0])
    return slope, q


def displacement_zeros(config: LineConfig, pert: Perturbation, epsilon: float,
                       lo: float, hi: float, samples: int = 24, xtol: float = 1e-9) -> list[float]:
    """Sign changes of ``r -> d(r, eps)`` on ``[lo, hi]``, refined with brentq."""
    from scipy.optimize import brentq

    rs = np.linspace(lo, hi, samples)
    ds = [poincare_displacement(config, pert, epsilon, r) for r in rs]
    out = []
    for k in range(samples - 1):
        if ds[k] == 0:
            out.append(float(rs[k]))
        elif ds[k] * ds[k + 1] < 0:
            out.append(float(brentq(lambda r: poincare_displacement(config, pert, epsilon, r),
                                    rs[k], rs[k + 1], xtol=xtol)))
    return out
