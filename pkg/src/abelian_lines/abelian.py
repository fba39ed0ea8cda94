"""Closed form of the Abelian integral for axis-parallel lines of singular points.

For ``G(x, y) = prod (x - a_j) prod (y - b_k)`` and a perturbation ``(P, Q)``
the first order displacement integral

    I(r) = int_{x^2+y^2=r^2} (Q dx - P dy) / G

is assembled exactly: the numerator ``-r Q sin - r P cos`` is split over the
line factors by partial fractions, each piece goes through
:func:`abelian_lines.trig.line_integral`, and equal ``|a|`` radicals merge
automatically because radicals are keyed by ``a**2``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import Poly1, Poly2, format_rat, lagrange_pf_coeffs, parse_rat
from .errors import DuplicateRoot, NotApplicable, PolesRemain, ZeroLine
from .radical import RadicalFunction
from .trig import (OneLine, RadVal, TrigPoly, TwoLine, line_integral, normalize_sin,
                   sin_line_integral)


@dataclass(frozen=True)
class LineConfig:
    """Vertical lines ``x = a_j`` and horizontal lines ``y = b_k``."""

    a_lines: tuple[Fraction, ...] = ()
    b_lines: tuple[Fraction, ...] = ()

    def __post_init__(self):
        a = tuple(parse_rat(v) for v in self.a_lines)
        b = tuple(parse_rat(v) for v in self.b_lines)
        object.__setattr__(self, "a_lines", a)
        object.__setattr__(self, "b_lines", b)
        if not a and not b:
            raise ValueError("a line configuration needs at least one line")
        if any(v == 0 for v in a + b):
            raise ZeroLine("lines must not pass through the origin")
        if len(set(a)) != len(a) or len(set(b)) != len(b):
            raise DuplicateRoot("repeated line in configuration")

    @property
    def K1(self) -> int:
        return len(self.a_lines)

    @property
    def K2(self) -> int:
        return len(self.b_lines)

    @property
    def rho_min(self) -> Fraction:
        """Radius of the period annulus: the smallest ``|a_j|`` or ``|b_k|``."""
        return min(abs(v) for v in self.a_lines + self.b_lines)

    @property
    def mixed(self) -> bool:
        return self.K1 > 0 and self.K2 > 0

    def distinct_radicands(self) -> set[Fraction]:
        return {v * v for v in self.a_lines + self.b_lines}

    def pole_offsets(self) -> set[Fraction]:
        return {a * a + b * b for a in self.a_lines for b in self.b_lines}

    def G(self, x, y):
        out = 1
        for a in self.a_lines:
            out = out * (x - float(a))
        for b in self.b_lines:
            out = out * (y - float(b))
        return out

    def swapped(self) -> "LineConfig":
        return LineConfig(self.b_lines, self.a_lines)

    def to_json(self) -> dict:
        return {"x": [format_rat(v) for v in self.a_lines], "y": [format_rat(v) for v in self.b_lines]}


@dataclass(frozen=True)
class Perturbation:
    P: Poly2
    Q: Poly2
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("perturbation degree must be non-negative")
        if self.P.degree() > self.n or self.Q.degree() > self.n:
            raise ValueError(f"P or Q exceeds the declared degree n={self.n}")

    @classmethod
    def of(cls, P=None, Q=None, n: int | None = None) -> "Perturbation":
        P = P if isinstance(P, Poly2) else Poly2(P or {})
        Q = Q if isinstance(Q, Poly2) else Poly2(Q or {})
        if n is None:
            n = max(P.degree(), Q.degree(), 0)
        return cls(P, Q, n)

    def __add__(self, other: "Perturbation") -> "Perturbation":
        return Perturbation(self.P + other.P, self.Q + other.Q, max(self.n, other.n))

    def to_json(self) -> dict:
        return {"degree": self.n, "P": self.P.to_json(), "Q": self.Q.to_json()}


@dataclass(frozen=True)
class ClosedForm:
    """Exact I(r) (or ``H(r^2) I(r)`` once cleared) as a RadVal in ``rho = r^2``.

    ``h_roots`` lists the offsets ``d`` of the clearing factor
    ``H(rho) = prod (d - rho)``; it is empty before :func:`clear_poles`.
    """

    value: RadVal
    config: LineConfig
    pert: Perturbation
    pole_free: bool
    h_roots: tuple[Fraction, ...] = field(default=())

    @property
    def H(self) -> Poly1:
        return Poly1.from_roots(self.h_roots) * ((-1) ** len(self.h_roots))

    def is_zero(self) -> bool:
        return self.value.is_zero()

    def evaluate(self, r):
        """Value of the represented function at radius ``r`` (multiplied by H if cleared)."""
        return self.value.evaluate(r * r)

    def abelian_value(self, r):
        """``I(r)`` itself, undoing the clearing factor if present."""
        v = self.value.evaluate(r * r)
        if self.h_roots:
            v = v / self.H(r * r)
        return v

    def to_json(self) -> dict:
        return {
            "lines": self.config.to_json(),
            "perturbation": self.pert.to_json(),
            "pole_free": self.pole_free,
            "H_roots": [format_rat(d) for d in self.h_roots],
            "identically_zero": self.is_zero(),
            "value": self.value.to_json(),
        }


def integrand(config: LineConfig | None, pert: Perturbation) -> TrigPoly:
    """Numerator ``-r Q sin(t) - r P cos(t)`` with ``x = r cos t, y = r sin t``."""
    terms: dict[tuple[int, int, int], Fraction] = {}

    def put(key, c):
        terms[key] = terms.get(key, Fraction(0)) + c

    for (i, j), c in pert.P.terms.items():
        put((j, i + 1, i + j + 1), -c)
    for (i, j), c in pert.Q.terms.items():
        put((j + 1, i, i + j + 1), -c)
    return TrigPoly(terms)


def closed_form(config: LineConfig, pert: Perturbation) -> ClosedForm:
    t = normalize_sin(integrand(config, pert))
    total = RadVal()
    if config.K1 and config.K2:
        wa = lagrange_pf_coeffs(config.a_lines)
        wb = lagrange_pf_coeffs(config.b_lines)
        for a, da in zip(config.a_lines, wa):
            for b, db in zip(config.b_lines, wb):
                total = total + line_integral(t, TwoLine(a, b)).scale(da * db)
    elif config.K1:
        for a, da in zip(config.a_lines, lagrange_pf_coeffs(config.a_lines)):
            total = total + line_integral(t, OneLine(a)).scale(da)
    else:
        for b, db in zip(config.b_lines, lagrange_pf_coeffs(config.b_lines)):
            total = total + sin_line_integral(t, b).scale(db)
    return ClosedForm(total, config, pert, pole_free=not config.mixed)


def clear_poles(cf: ClosedForm) -> ClosedForm:
    """Multiply by ``H(rho) = prod (d - rho)`` over the distinct ``a_j^2 + b_k^2``."""
    if not cf.config.mixed:
        return cf
    if cf.pole_free:
        raise NotApplicable("closed form is already pole free")
    roots = tuple(sorted(cf.config.pole_offsets()))
    h = Poly1.from_roots(roots) * ((-1) ** len(roots))
    # all d exceed rho_min^2, so H has no zero on the annulus
    assert all(d > cf.config.rho_min ** 2 for d in roots)
    cleared = cf.value.mul_poly(h)
    if cleared.poles:
        raise PolesRemain("clearing factor left pole terms behind")
    return ClosedForm(cleared, cf.config, cf.pert, pole_free=True, h_roots=roots)


def to_radical_function(cf: ClosedForm) -> tuple[RadicalFunction, tuple[Fraction, Fraction]]:
    """Substitute ``x = -rho`` so ``1/sqrt(c - rho)`` becomes ``1/sqrt(x + c)``.

    Zeros of I on ``r in (0, rho_min)`` correspond one to one with zeros of the
    returned function on ``x in (-rho_min^2, 0)``.
    """
    if not cf.pole_free or cf.value.poles:
        raise PolesRemain("clear the pole terms before converting")
    v = cf.value
    F = RadicalFunction(
        v.poly.compose_linear(-1, 0),
        [(s.compose_linear(-1, 0), c) for c, s in v.radicals.items()],
    )
    rm = cf.config.rho_min
    return F, (-rm * rm, Fraction(0))


def structure_degrees(cf: ClosedForm) -> dict:
    """Actual degrees next to the structural bounds for this configuration.

    One-axis configurations are checked against ``deg S <= [(n-1)/2]+1`` and
    ``deg T <= [n/2]``.  For mixed configurations the canonical RadVal keeps
    constant pole numerators, so ``deg U <= [n/2]+1`` per pole is equivalent to
    ``deg S <= [n/2]`` on the plain radicals, with ``deg W <= [(n-1)/2]``.  A
    cleared form obeys ``[n/2]+L`` and ``[(n-1)/2]+L``.
    """
    n = cf.pert.n
    v = cf.value
    if not cf.config.mixed:
        rad_bound, poly_bound = (n - 1) // 2 + 1, n // 2
    elif not cf.h_roots:
        rad_bound, poly_bound = n // 2, (n - 1) // 2
    else:
        L = len(cf.h_roots)
        rad_bound, poly_bound = n // 2 + L, (n - 1) // 2 + L
    pole_deg = max((u.degree() for u in v.poles.values()), default=-1)
    report = {
        "radical_degree": v.max_radical_degree(),
        "radical_bound": rad_bound,
        "poly_degree": v.poly.degree(),
        "poly_bound": poly_bound,
        "pole_numerator_degree": pole_deg,
        "pole_offsets_ok": v.pole_offsets() <= cf.config.pole_offsets(),
        "radicands_ok": v.radicands() <= cf.config.distinct_radicands(),
    }
    report["ok"] = (report["radical_degree"] <= rad_bound and report["poly_degree"] <= poly_bound
                    and pole_deg <= 0 and report["pole_offsets_ok"] and report["radicands_ok"]
                    and (cf.config.mixed or not v.poles))
    return report


def generic_perturbation(n: int, coeffs: Sequence) -> Perturbation:
    """Build a full degree-n perturbation from a flat coefficient list (P first, then Q)."""
    keys = [(i, d - i) for d in range(n + 1) for i in range(d + 1)]
    if len(coeffs) != 2 * len(keys):
        raise ValueError(f"need {2 * len(keys)} coefficients for degree {n}")
    P = Poly2({k: c for k, c in zip(keys, coeffs[: len(keys)])})
    Q = Poly2({k: c for k, c in zip(keys, coeffs[len(keys):])})
    return Perturbation(P, Q, n)
