"""Radical functions ``F(x) = P0(x) + sum_j Pj(x)/sqrt(x + c_j)`` and their zero bound.

The derivation-division procedure is run as an actual algorithm on exact
data: each round differentiates a sum of :class:`GenTerm` objects and then
divides by a non-vanishing product of powers of ``(x + c)``.  Division is a
change of exponents, so every intermediate stays exact and its shape can be
asserted.  Rolle's theorem then gives

    Z(F) <= total derivatives + degree of the last polynomial
         <= K (n + 1) + n0,   with deg(0) = -1.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .algebra import Poly1, format_rat, mp, parse_rat, to_mpf
from .errors import InvalidExponent, ShapeViolation

HALF = Fraction(1, 2)


class RadicalFunction:
    """``P0(x) + sum_j Pj(x) (x + c_j)^(-1/2)`` with distinct offsets ``c_j``."""

    __slots__ = ("P0", "terms")

    def __init__(self, P0: Poly1 | None = None, terms: Sequence[tuple[Poly1, object]] = ()):
        self.P0 = P0 if P0 is not None else Poly1()
        self.terms: tuple[tuple[Poly1, Fraction], ...] = tuple((p, parse_rat(c)) for p, c in terms)
        cs = [c for _, c in self.terms]
        if len(set(cs)) != len(cs):
            raise ValueError("radical offsets c_j must be pairwise distinct")

    @property
    def K(self) -> int:
        return len(self.terms)

    @property
    def n0(self) -> int:
        return self.P0.degree()

    @property
    def n(self) -> int:
        return max((p.degree() for p, _ in self.terms), default=-1)

    @property
    def offsets(self) -> tuple[Fraction, ...]:
        return tuple(c for _, c in self.terms)

    def is_zero(self) -> bool:
        return self.P0.is_zero() and all(p.is_zero() for p, _ in self.terms)

    def pruned(self) -> "RadicalFunction":
        return RadicalFunction(self.P0, [(p, c) for p, c in self.terms if p])

    def domain_left(self) -> Fraction | None:
        """Left end of the common real domain ``x > max(-c_j)``."""
        return max((-c for c in self.offsets), default=None)

    def __repr__(self) -> str:
        body = ", ".join(f"({p!r}, {format_rat(c)})" for p, c in self.terms)
        return f"RadicalFunction(P0={self.P0!r}, terms=[{body}])"

    def __eq__(self, other) -> bool:
        return isinstance(other, RadicalFunction) and self.P0 == other.P0 and self.terms == other.terms

    def evaluate(self, x):
        """High precision value for scalars, double precision for arrays/floats."""
        if isinstance(x, (float, np.ndarray, np.floating)):
            x = np.asarray(x, dtype=float)
            out = self.P0(x) + np.zeros_like(x) if self.P0 else np.zeros_like(x)
            for p, c in self.terms:
                out = out + p(x) / np.sqrt(x + float(c))
            return out
        x = to_mpf(x) if isinstance(x, Fraction) else mp.mpf(x)
        out = self.P0(x) if self.P0 else mp.mpf(0)
        for p, c in self.terms:
            out += p(x) / mp.sqrt(x + to_mpf(c))
        return out

    __call__ = evaluate

    def to_json(self) -> dict:
        return {"P0": self.P0.to_json(),
                "terms": [{"c": format_rat(c), "P": p.to_json()} for p, c in self.terms]}

    @classmethod
    def from_json(cls, data) -> "RadicalFunction":
        return cls(Poly1.from_json(data.get("P0", [])),
                   [(Poly1.from_json(t["P"]), parse_rat(t["c"])) for t in data.get("terms", [])])


class GenTerm:
    """``p(x) * prod_i (x + c_i)^alpha_i`` with half-integer (or integer) exponents."""

    __slots__ = ("p", "factors")

    def __init__(self, p: Poly1, factors=()):
        merged: dict[Fraction, Fraction] = {}
        for c, alpha in (factors.items() if isinstance(factors, dict) else factors):
            c, alpha = parse_rat(c), parse_rat(alpha)
            if (2 * alpha).denominator != 1:
                raise InvalidExponent(f"exponent {alpha} is not a half-integer")
            merged[c] = merged.get(c, Fraction(0)) + alpha
        self.p = p
        self.factors: tuple[tuple[Fraction, Fraction], ...] = tuple(
            sorted((c, a) for c, a in merged.items() if a != 0))

    def exponents(self) -> dict[Fraction, Fraction]:
        return dict(self.factors)

    def times_powers(self, powers: dict) -> "GenTerm":
        merged = self.exponents()
        for c, beta in powers.items():
            c = parse_rat(c)
            merged[c] = merged.get(c, Fraction(0)) + parse_rat(beta)
        return GenTerm(self.p, merged)

    def is_zero(self) -> bool:
        return self.p.is_zero()

    def __repr__(self) -> str:
        fs = " * ".join(f"(x+{format_rat(c)})^({format_rat(a)})" for c, a in self.factors)
        return f"GenTerm({self.p!r}{' * ' + fs if fs else ''})"

    def __eq__(self, other) -> bool:
        return isinstance(other, GenTerm) and self.p == other.p and self.factors == other.factors

    def evaluate(self, x):
        x = to_mpf(x) if isinstance(x, Fraction) else mp.mpf(x)
        out = self.p(x)
        for c, a in self.factors:
            out *= mp.power(x + to_mpf(c), to_mpf(a))
        return out


def diff_genterm(t: GenTerm) -> GenTerm:
    """Exact derivative, returned as a single term with every exponent lowered by one.

    ``D[p prod (x+c_i)^a_i] = [p' prod (x+c_i) + p sum_i a_i prod_{l != i} (x+c_l)]
    * prod (x+c_i)^(a_i - 1)``.
    """
    if t.is_zero():
        return GenTerm(Poly1(), t.factors)
    linear = [Poly1((c, 1)) for c, _ in t.factors]
    full = Poly1.constant(1)
    for f in linear:
        full = full * f
    q = t.p.derivative() * full
    for i, (_, alpha) in enumerate(t.factors):
        rest = Poly1.constant(1)
        for l, f in enumerate(linear):
            if l != i:
                rest = rest * f
        q = q + t.p * rest * alpha
    return GenTerm(q, [(c, a - 1) for c, a in t.factors])


def diff_genterm_n(t: GenTerm, k: int) -> GenTerm:
    for _ in range(k):
        t = diff_genterm(t)
    return t


def _falling(x: Fraction, k: int) -> Fraction:
    out = Fraction(1)
    for i in range(k):
        out *= x - i
    return out


def iterated_diff_coeffs(j: int, n: int, alpha, a, b) -> list[Fraction]:
    """Coefficients ``C_{j,l}``, ``l = 0..j``, of the j-th derivative

        D^j[(x+a)^(alpha+n) (x+b)^(-alpha)]
            = (x+a)^(alpha+n-j) (x+b)^(-alpha-j) sum_l C_{j,l} (x+a)^l.

    The Gamma ratio ``Gamma(alpha+n+1)/Gamma(alpha+n-(j-l)+1)`` is the falling
    factorial of ``alpha + n`` of length ``j - l``, computed exactly.
    """
    alpha, a, b = parse_rat(alpha), parse_rat(a), parse_rat(b)
    top = alpha + n + 1
    if top.denominator == 1 and top <= 0:
        raise InvalidExponent(f"Gamma({format_rat(top)}) is a pole")
    out = []
    for l in range(j + 1):
        prod = Fraction(1)
        for m in range(1, l + 1):
            prod *= n - j + m
        c = ((-1) ** (j + l) * (a - b) ** (j - l) * _binom(j, l)
             * _falling(alpha + n, j - l) * prod)
        out.append(Fraction(c))
    return out


def _binom(n: int, k: int) -> int:
    from math import comb
    return comb(n, k)


def taylor_coeffs_at(q: Poly1, a) -> list[Fraction]:
    """Coefficients of ``q`` in powers of ``(x + a)``."""
    return list(q.compose_linear(1, -parse_rat(a)).coeffs)


@dataclass
class PipelineTrace:
    """Audit record of one derivation-division run."""

    K: int
    n: int
    n0: int
    offsets: list[Fraction]
    steps: list[dict] = field(default_factory=list)
    total_derivatives: int = 0
    final_polynomial: Poly1 = field(default_factory=Poly1)

    @property
    def final_degree(self) -> int:
        return self.final_polynomial.degree()

    @property
    def bound(self) -> int:
        # Rolle: zeros(F) <= derivatives taken + zeros of the last polynomial (deg <= n)
        return self.total_derivatives + self.n

    def to_json(self) -> dict:
        return {
            "K": self.K, "n": self.n, "n0": self.n0,
            "offsets": [format_rat(c) for c in self.offsets],
            "steps": self.steps,
            "total_derivatives": self.total_derivatives,
            "final_degree": self.final_degree,
            "final_polynomial": self.final_polynomial.to_json(),
            "bound": self.bound,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def _check_round(terms: list[GenTerm], pivot: int, offsets: list[Fraction], alpha: Fraction, n: int):
    cp = offsets[pivot]
    for idx, t in enumerate(terms):
        if idx < pivot or t.is_zero():
            continue
        if t.p.degree() > n:
            raise ShapeViolation(f"term {idx} has degree {t.p.degree()} > {n}")
        if idx == pivot:
            if t.factors:
                raise ShapeViolation(f"pivot term still carries factors {t.factors}")
            continue
        expected = tuple(sorted({offsets[idx]: alpha, cp: -alpha}.items()))
        if t.factors != expected:
            raise ShapeViolation(f"term {idx} has factors {t.factors}, expected {expected}")


def derivation_division(F: RadicalFunction) -> PipelineTrace:
    """Run the derivation-division procedure on ``F`` and return its trace."""
    if F.K < 1:
        raise ValueError("derivation_division needs at least one radical term")
    offsets = list(F.offsets)
    n, n0 = F.n, F.n0
    trace = PipelineTrace(K=F.K, n=n, n0=n0, offsets=offsets)
    terms = [GenTerm(p, [(c, -HALF)]) for p, c in F.terms]

    # round 0: kill P0, normalize by the first radical
    k0 = n0 + 1
    if F.P0.degree() >= 0:
        p0 = F.P0
        for _ in range(k0):
            p0 = p0.derivative()
        if p0:
            raise ShapeViolation("P0 survived n0 + 1 derivatives")
    before = [t.p.degree() for t in terms]
    terms = [diff_genterm_n(t, k0) for t in terms]
    alpha = -HALF - k0
    terms = [t.times_powers({offsets[0]: -alpha}) for t in terms]
    _check_round(terms, 0, offsets, alpha, n)
    trace.steps.append({
        "round": 0, "derivatives": k0,
        "divisor": f"(x+{format_rat(offsets[0])})^({format_rat(alpha)})",
        "alpha": format_rat(alpha),
        "degrees_before": before, "degrees_after": [t.p.degree() for t in terms],
    })
    trace.total_derivatives += k0

    for i in range(1, F.K):
        before = [t.p.degree() for t in terms]
        terms = [diff_genterm_n(t, n + 1) for t in terms]
        if not terms[i - 1].is_zero():
            raise ShapeViolation(f"pivot polynomial of round {i - 1} survived {n + 1} derivatives")
        ci, cprev = offsets[i], offsets[i - 1]
        new_alpha = alpha - (n + 1)
        # divide by (x+c_i)^(alpha-(n+1)) / (x+c_{i-1})^(alpha+(n+1))
        terms = [t.times_powers({ci: -new_alpha, cprev: alpha + n + 1}) for t in terms]
        terms[i - 1] = GenTerm(Poly1())
        _check_round(terms, i, offsets, new_alpha, n)
        trace.steps.append({
            "round": i, "derivatives": n + 1,
            "divisor": (f"(x+{format_rat(ci)})^({format_rat(new_alpha)}) / "
                        f"(x+{format_rat(cprev)})^({format_rat(alpha + n + 1)})"),
            "alpha": format_rat(new_alpha),
            "degrees_before": before, "degrees_after": [t.p.degree() for t in terms],
        })
        trace.total_derivatives += n + 1
        alpha = new_alpha

    last = terms[F.K - 1]
    if last.factors and not last.is_zero():
        raise ShapeViolation("final term is not a polynomial")
    trace.final_polynomial = last.p
    return trace


def zero_bound(F: RadicalFunction) -> int:
    """``K (max deg Pj + 1) + deg P0`` with ``deg 0 = -1``."""
    if F.is_zero():
        raise ValueError("the zero function has infinitely many zeros")
    if F.K == 0:
        return F.n0
    return F.K * (F.n + 1) + F.n0
