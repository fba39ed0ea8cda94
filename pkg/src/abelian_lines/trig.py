"""Exact integrals of trigonometric monomials over one or two line factors.

Every value produced here is a :class:`RadVal`, a combination of

    T(rho) + sum_c S_c(rho)/sqrt(c - rho) + sum_(d,c) u/((d - rho) sqrt(c - rho))

in ``rho = r**2``, carried as a rational multiple of pi (the overall factor pi
is implicit and only reattached by :meth:`RadVal.evaluate`).

The reductions are the two "add and subtract the offset" identities

    (r cos)^j/(r cos - a) = (r cos)^(j-1) + a (r cos)^(j-1)/(r cos - a)
    (r sin)/(r sin - b)   = 1 + b/(r sin - b)

which bottom out at :func:`cos_moment`, :func:`base_one_line` and
:func:`base_two_line`.  Only even powers of ``r`` survive, so results stay
polynomial in ``rho``; any odd leftover raises instead of being dropped.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

import numpy as np

from .algebra import Poly1, format_rat, mp, parse_rat, sign, to_mpf
from .errors import ZeroLine

RHO = Poly1((0, 1))


class RadVal:
    """Closed form in ``rho`` built from one polynomial, radicals and poles.

    ``radicals`` maps a radicand offset ``c`` to the numerator polynomial of
    ``1/sqrt(c - rho)``.  ``poles`` maps ``(d, c)`` to the numerator of
    ``1/((d - rho) sqrt(c - rho))``.  Pole numerators are kept reduced to
    constants (the polynomial quotient is folded into ``radicals``), which
    makes the representation canonical: two RadVals are equal as functions
    iff their fields are equal.
    """

    __slots__ = ("poly", "radicals", "poles")

    def __init__(self, poly: Poly1 | None = None,
                 radicals: Mapping[Fraction, Poly1] | None = None,
                 poles: Mapping[tuple[Fraction, Fraction], Poly1] | None = None):
        rad: dict[Fraction, Poly1] = {}
        for c, s in (radicals or {}).items():
            c = parse_rat(c)
            if c <= 0:
                raise ValueError(f"radicand offset must be positive, got {format_rat(c)}")
            rad[c] = rad.get(c, Poly1()) + s
        pol: dict[tuple[Fraction, Fraction], Fraction] = {}
        for (d, c), u in (poles or {}).items():
            d, c = parse_rat(d), parse_rat(c)
            if d <= 0 or c <= 0:
                raise ValueError("pole and radicand offsets must be positive")
            if isinstance(u, Poly1):
                q, rem = u.divmod(Poly1((-d, 1)))
                if q:
                    # u/(d - rho) = -q + u(d)/(d - rho)
                    rad[c] = rad.get(c, Poly1()) - q
                u = rem[0]
            else:
                u = parse_rat(u)
            pol[(d, c)] = pol.get((d, c), Fraction(0)) + u
        self.poly = poly if poly is not None else Poly1()
        self.radicals = {c: s for c, s in sorted(rad.items()) if s}
        self.poles = {k: Poly1.constant(u) for k, u in sorted(pol.items()) if u}

    @classmethod
    def radical(cls, c, s: Poly1) -> "RadVal":
        return cls(radicals={parse_rat(c): s})

    def is_zero(self) -> bool:
        return not (self.poly or self.radicals or self.poles)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RadVal):
            return NotImplemented
        return (self.poly == other.poly and self.radicals == other.radicals
                and self.poles == other.poles)

    def __hash__(self):
        return hash((self.poly, tuple(self.radicals.items()), tuple(self.poles.items())))

    def __repr__(self) -> str:
        parts = [f"poly={self.poly!r}"]
        if self.radicals:
            parts.append("radicals={" + ", ".join(f"{format_rat(c)}: {s!r}" for c, s in self.radicals.items()) + "}")
        if self.poles:
            parts.append("poles={" + ", ".join(
                f"({format_rat(d)}, {format_rat(c)}): {format_rat(u[0])}" for (d, c), u in self.poles.items()) + "}")
        return f"RadVal({', '.join(parts)})"

    def __add__(self, other: "RadVal") -> "RadVal":
        rad = dict(self.radicals)
        for c, s in other.radicals.items():
            rad[c] = rad.get(c, Poly1()) + s
        pol = dict(self.poles)
        for k, u in other.poles.items():
            pol[k] = pol.get(k, Poly1()) + u
        return RadVal(self.poly + other.poly, rad, pol)

    def __neg__(self) -> "RadVal":
        return self.scale(-1)

    def __sub__(self, other: "RadVal") -> "RadVal":
        return self + (-other)

    def scale(self, k) -> "RadVal":
        k = parse_rat(k)
        if k == 0:
            return RadVal()
        return RadVal(self.poly * k, {c: s * k for c, s in self.radicals.items()},
                      {key: u * k for key, u in self.poles.items()})

    def mul_poly(self, p: Poly1) -> "RadVal":
        """Multiply by a polynomial in rho."""
        if p.is_zero():
            return RadVal()
        return RadVal(self.poly * p, {c: s * p for c, s in self.radicals.items()},
                      {key: u * p for key, u in self.poles.items()})

    # -- inspection ---------------------------------------------------------

    def radicands(self) -> set[Fraction]:
        return set(self.radicals) | {c for _, c in self.poles}

    def pole_offsets(self) -> set[Fraction]:
        return {d for d, _ in self.poles}

    def singular_offsets(self) -> set[Fraction]:
        return self.radicands() | self.pole_offsets()

    def max_radical_degree(self) -> int:
        return max((s.degree() for s in self.radicals.values()), default=-1)

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, rho, *, with_pi: bool = True):
        """Value at ``rho`` (mpmath scalar, float or numpy array).

        mpmath inputs (or Fractions) are evaluated at the package precision;
        floats and arrays use double precision.
        """
        if isinstance(rho, (float, np.ndarray, np.floating)):
            rho = np.asarray(rho, dtype=float)
            total = np.zeros_like(rho) + self.poly(rho) if self.poly else np.zeros_like(rho)
            for c, s in self.radicals.items():
                total = total + s(rho) / np.sqrt(float(c) - rho)
            for (d, c), u in self.poles.items():
                total = total + float(u[0]) / ((float(d) - rho) * np.sqrt(float(c) - rho))
            return total * math.pi if with_pi else total
        rho = to_mpf(rho) if isinstance(rho, Fraction) else mp.mpf(rho)
        total = mp.mpf(0)
        if self.poly:
            total += self.poly(rho)
        for c, s in self.radicals.items():
            total += s(rho) / mp.sqrt(to_mpf(c) - rho)
        for (d, c), u in self.poles.items():
            total += to_mpf(u[0]) / ((to_mpf(d) - rho) * mp.sqrt(to_mpf(c) - rho))
        return total * mp.pi if with_pi else total

    def __call__(self, rho):
        return self.evaluate(rho)

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "factor": "pi",
            "poly": self.poly.to_json(),
            "radicals": [{"c": format_rat(c), "S": s.to_json()} for c, s in self.radicals.items()],
            "poles": [{"d": format_rat(d), "c": format_rat(c), "U": u.to_json()}
                      for (d, c), u in self.poles.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "RadVal":
        return cls(
            Poly1.from_json(data.get("poly", [])),
            {parse_rat(t["c"]): Poly1.from_json(t["S"]) for t in data.get("radicals", [])},
            {(parse_rat(t["d"]), parse_rat(t["c"])): Poly1.from_json(t["U"]) for t in data.get("poles", [])},
        )


class TrigPoly:
    """Sum of ``coef * sin(t)**i * cos(t)**j * r**m``, keyed by ``(i, j, m)``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int, int], object] | None = None):
        clean: dict[tuple[int, int, int], Fraction] = {}
        for key, c in (terms or {}).items():
            i, j, m = (int(k) for k in key)
            if min(i, j, m) < 0:
                raise ValueError("negative power in TrigPoly")
            c = parse_rat(c)
            clean[(i, j, m)] = clean.get((i, j, m), Fraction(0)) + c
        self.terms = {k: c for k, c in sorted(clean.items()) if c}

    def __eq__(self, other) -> bool:
        return isinstance(other, TrigPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __repr__(self) -> str:
        return "TrigPoly({" + ", ".join(f"{k}: {format_rat(c)}" for k, c in self.terms.items()) + "})"

    def __add__(self, other: "TrigPoly") -> "TrigPoly":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + c
        return TrigPoly(out)

    def scale(self, k) -> "TrigPoly":
        k = parse_rat(k)
        return TrigPoly({key: c * k for key, c in self.terms.items()})

    def is_normalized(self) -> bool:
        return all(i <= 1 for i, _, _ in self.terms)

    def rotate_quarter(self) -> "TrigPoly":
        """Substitute theta -> theta + pi/2 (sin -> cos, cos -> -sin)."""
        return TrigPoly({(j, i, m): c * (-1) ** j for (i, j, m), c in self.terms.items()})

    def evaluate(self, r: float, theta):
        s, co = np.sin(theta), np.cos(theta)
        return sum(float(c) * s**i * co**j * r**m for (i, j, m), c in self.terms.items())


def normalize_sin(t: TrigPoly) -> TrigPoly:
    """Rewrite ``sin^(2k+e)`` as ``sin^e (1 - cos^2)^k`` so every sin power is 0 or 1."""
    out: dict[tuple[int, int, int], Fraction] = {}
    for (i, j, m), c in t.terms.items():
        k, e = divmod(i, 2)
        for l in range(k + 1):
            key = (e, j + 2 * l, m)
            out[key] = out.get(key, Fraction(0)) + c * math.comb(k, l) * (-1) ** l
    return TrigPoly(out)


def cos_moment(k: int) -> Fraction:
    """``int_0^{2 pi} cos^k`` divided by pi: ``2 binom(k, k/2) / 2^k`` for even k."""
    if k < 0:
        raise ValueError("negative moment order")
    if k % 2:
        return Fraction(0)
    return Fraction(2 * math.comb(k, k // 2), 2**k)


@dataclass(frozen=True)
class OneLine:
    """Denominator ``r cos(t) - a``."""
    a: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", parse_rat(self.a))
        if self.a == 0:
            raise ZeroLine("line offset a must be non-zero")


@dataclass(frozen=True)
class TwoLine:
    """Denominator ``(r cos(t) - a)(r sin(t) - b)``."""
    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", parse_rat(self.a))
        object.__setattr__(self, "b", parse_rat(self.b))
        if self.a == 0 or self.b == 0:
            raise ZeroLine("line offsets a and b must be non-zero")


Denominator = Union[OneLine, TwoLine]


def base_one_line(a) -> RadVal:
    """``int dt/(r cos t - a) = -2 pi sign(a) / sqrt(a^2 - r^2)``."""
    a = parse_rat(a)
    if a == 0:
        raise ZeroLine("line offset a must be non-zero")
    return RadVal.radical(a * a, Poly1.constant(-2 * sign(a)))


def base_two_line(a, b) -> RadVal:
    """``int dt/((r cos t - a)(r sin t - b))``.

    Equals ``2 pi/(a^2+b^2-r^2) * (sign(b) a/sqrt(b^2-r^2) + sign(a) b/sqrt(a^2-r^2))``.
    The a-coefficient sits on the b-radical and vice versa; checked against
    quadrature in all four sign quadrants and pinned at r = 0 by 2 pi/(ab).
    """
    a, b = parse_rat(a), parse_rat(b)
    if a == 0 or b == 0:
        raise ZeroLine("line offsets a and b must be non-zero")
    d = a * a + b * b
    # summed, not a dict literal: when |a| == |b| both terms share one key
    return (RadVal(poles={(d, b * b): Poly1.constant(2 * sign(b) * a)})
            + RadVal(poles={(d, a * a): Poly1.constant(2 * sign(a) * b)}))


@lru_cache(maxsize=None)
def _cos_power_one_line(a: Fraction, j: int) -> RadVal:
    # int (r cos)^j/(r cos - a)
    if j == 0:
        return base_one_line(a)
    prev = _cos_power_one_line(a, j - 1).scale(a)
    mom = cos_moment(j - 1)
    if mom:
        prev = prev + RadVal(Poly1.monomial((j - 1) // 2, mom))
    return prev


@lru_cache(maxsize=None)
def _cos_power_sin_line(b: Fraction, k: int) -> RadVal:
    # int (r cos)^k/(r sin - b), via theta -> theta + pi/2
    if k % 2:
        return RadVal()
    h = k // 2
    out = RadVal()
    for i in range(h + 1):
        coef = math.comb(h, i) * (-1) ** i
        out = out + _cos_power_one_line(b, 2 * i).mul_poly(Poly1.monomial(h - i, coef))
    return out


@lru_cache(maxsize=None)
def _two_line(a: Fraction, b: Fraction, s: int, j: int) -> RadVal:
    # int (r sin)^s (r cos)^j / ((r cos - a)(r sin - b)), s in {0, 1}
    if s == 1:
        return _cos_power_one_line(a, j) + _two_line(a, b, 0, j).scale(b)
    if j == 0:
        return base_two_line(a, b)
    return _cos_power_sin_line(b, j - 1) + _two_line(a, b, 0, j - 1).scale(a)


def _grouped(t: TrigPoly) -> dict[tuple[int, int], Poly1]:
    """Collect ``c r^m sin^s cos^j`` into ``rho``-polynomials per ``(s, j)``."""
    acc: dict[tuple[int, int], dict[int, Fraction]] = {}
    for (s, j, m), c in t.terms.items():
        extra = m - j - s
        if extra < 0 or extra % 2:
            raise ValueError(
                f"term r^{m} sin^{s} cos^{j} leaves an odd or negative power of r; "
                "the result would not be a function of r^2")
        slot = acc.setdefault((s, j), {})
        slot[extra // 2] = slot.get(extra // 2, Fraction(0)) + c
    out = {}
    for key, powers in acc.items():
        cs = [Fraction(0)] * (max(powers) + 1)
        for k, c in powers.items():
            cs[k] = c
        out[key] = Poly1(cs)
    return out


def line_integral(t: TrigPoly, den: Denominator) -> RadVal:
    """Exact ``int_0^{2 pi} t(r, theta) / den(r, theta) d theta`` as a RadVal."""
    if not t.is_normalized():
        raise ValueError("line_integral expects a sin-normalized TrigPoly (call normalize_sin)")
    out = RadVal()
    if isinstance(den, OneLine):
        for (s, j), p in _grouped(t).items():
            if s == 0:
                out = out + _cos_power_one_line(den.a, j).mul_poly(p)
        return out
    if isinstance(den, TwoLine):
        for (s, j), p in _grouped(t).items():
            out = out + _two_line(den.a, den.b, s, j).mul_poly(p)
        return out
    raise TypeError(f"unknown denominator {den!r}")


def sin_line_integral(t: TrigPoly, b) -> RadVal:
    """``int t / (r sin(theta) - b)``, reduced to the cosine line by a quarter turn."""
    return line_integral(normalize_sin(t.rotate_quarter()), OneLine(b))


def degree_bounds_one_line(n: int) -> tuple[int, int]:
    """(max deg S, max deg T) for a homogeneous numerator of degree n+1 over one line."""
    return (n - 1) // 2 + 1, n // 2


def degree_bounds_two_line(n: int) -> tuple[int, int, int]:
    """(deg U, deg V, deg W) bounds for numerators of degree n+1 over two lines."""
    return n // 2 + 1, n // 2 + 1, (n - 1) // 2


def iter_monomials(n: int) -> Iterable[tuple[int, int]]:
    for i in range(n + 1):
        yield i, n - i
