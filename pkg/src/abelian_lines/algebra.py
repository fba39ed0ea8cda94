"""Exact arithmetic foundation.

Scalars are :class:`fractions.Fraction` (aliased ``Rat``).  ``Poly1`` is an
immutable dense univariate polynomial with rational coefficients, stored
lowest degree first; ``Poly2`` is a sparse bivariate polynomial in ``x, y``.

High precision evaluation goes through a private mpmath context whose
precision is a package wide setting (:func:`set_precision`, default 128 bits).
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import mpmath
import numpy as np

from .errors import DuplicateRoot

Rat = Fraction

DEFAULT_PRECISION_BITS = 128

mp = mpmath.MPContext()
mp.prec = DEFAULT_PRECISION_BITS


def set_precision(bits: int) -> None:
    if bits < 53:
        raise ValueError("precision below double precision is not supported")
    mp.prec = int(bits)


def get_precision() -> int:
    return mp.prec


def parse_rat(value) -> Fraction:
    """Parse ``"p/q"``, ``"p"``, an int or a Fraction exactly.

    Decimal strings such as ``"0.25"`` are accepted too (Fraction parses them
    exactly).  Floats are rejected because they are rarely what was meant.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot parse {value!r} as an exact rational")


def format_rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def sign(q: Fraction) -> int:
    return (q > 0) - (q < 0)


class Poly1:
    """Univariate polynomial with exact rational coefficients.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [parse_rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def _raw(cls, cs: list) -> "Poly1":
        # trusted constructor: entries already Fractions
        while cs and cs[-1] == 0:
            cs.pop()
        obj = cls.__new__(cls)
        obj.coeffs = tuple(cs)
        return obj

    @classmethod
    def constant(cls, c) -> "Poly1":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly1":
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "Poly1":
        """Product of ``(x - r)`` over the given roots."""
        p = cls.constant(1)
        for r in roots:
            p = p * cls((-parse_rat(r), 1))
        return p

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly1):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly1.constant(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly1([{', '.join(format_rat(c) for c in self.coeffs)}])"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and c == 1:
                parts.append(mono)
            elif mono and c == -1:
                parts.append("-" + mono)
            else:
                parts.append(format_rat(c) + ("*" + mono if mono else ""))
        return " + ".join(parts).replace("+ -", "- ")

    def __neg__(self) -> "Poly1":
        return Poly1._raw([-c for c in self.coeffs])

    def __add__(self, other) -> "Poly1":
        other = _as_poly(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] += c
        return Poly1._raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> "Poly1":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "Poly1":
        return _as_poly(other) - self

    def __mul__(self, other) -> "Poly1":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Poly1._raw([])
            return Poly1._raw([c * other for c in self.coeffs])
        other = _as_poly(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly1._raw([])
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return Poly1._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly1":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly1.constant(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift_degree(self, k: int) -> "Poly1":
        """Multiply by ``x**k``."""
        if not self.coeffs:
            return self
        return Poly1._raw([Fraction(0)] * k + list(self.coeffs))

    def divmod(self, divisor: "Poly1") -> tuple["Poly1", "Poly1"]:
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = divisor.degree()
        lead = divisor.coeffs[-1]
        if len(rem) - 1 < dd:
            return Poly1._raw([]), self
        quot = [Fraction(0)] * (len(rem) - dd)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k] / lead
            quot[k - dd] = c
            if c:
                for i, dc in enumerate(divisor.coeffs):
                    rem[k - dd + i] -= c * dc
        return Poly1._raw(quot), Poly1._raw(rem[:dd])

    def derivative(self) -> "Poly1":
        return Poly1._raw([k * c for k, c in enumerate(self.coeffs)][1:])

    def compose_linear(self, scale, offset) -> "Poly1":
        """Return ``p(scale*x + offset)`` exactly."""
        lin = Poly1((parse_rat(offset), parse_rat(scale)))
        out = Poly1._raw([])
        for c in reversed(self.coeffs):
            out = out * lin + c
        return out

    def __call__(self, x):
        """Horner evaluation; exact for rationals, follows the type of ``x``."""
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + (c if isinstance(x, (int, Fraction)) else _to_num(c, x))
        return acc

    def to_json(self) -> list[str]:
        return [format_rat(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence) -> "Poly1":
        return cls(parse_rat(c) for c in data)

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def _to_num(c: Fraction, like):
    if isinstance(like, (float, np.ndarray, np.floating)):
        return c.numerator / c.denominator
    return mp.mpf(c.numerator) / c.denominator


def _as_poly(p) -> Poly1:
    if isinstance(p, Poly1):
        return p
    if isinstance(p, (int, Fraction)):
        return Poly1.constant(p)
    raise TypeError(f"cannot combine Poly1 with {type(p).__name__}")


def poly_arith(p: Poly1, q: Poly1, op: str) -> Poly1:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown polynomial operation {op!r}")


def to_mpf(q: Fraction):
    return mp.mpf(q.numerator) / q.denominator


def eval_poly1(p: Poly1, x):
    """Horner evaluation of ``p`` at ``x`` in the working mpmath precision."""
    x = mp.mpf(x) if not isinstance(x, Fraction) else to_mpf(x)
    acc = mp.mpf(0)
    for c in reversed(p.coeffs):
        acc = acc * x + to_mpf(c)
    return acc


class Poly2:
    """Sparse bivariate polynomial; keys are ``(i, j)`` for ``x**i * y**j``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None):
        clean: dict[tuple[int, int], Fraction] = {}
        for (i, j), c in (terms or {}).items():
            if i < 0 or j < 0:
                raise ValueError("negative exponent in Poly2")
            c = parse_rat(c)
            if c:
                key = (int(i), int(j))
                clean[key] = clean.get(key, Fraction(0)) + c
                if clean[key] == 0:
                    del clean[key]
        self.terms = dict(sorted(clean.items()))

    def degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly2) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(self.terms.items()))

    def __repr__(self) -> str:
        body = ", ".join(f"({i}, {j}): {format_rat(c)}" for (i, j), c in self.terms.items())
        return f"Poly2({{{body}}})"

    def __add__(self, other: "Poly2") -> "Poly2":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + c
        return Poly2(out)

    def __neg__(self) -> "Poly2":
        return Poly2({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "Poly2") -> "Poly2":
        return self + (-other)

    def scale(self, c) -> "Poly2":
        c = parse_rat(c)
        return Poly2({k: v * c for k, v in self.terms.items()})

    def swap(self) -> "Poly2":
        """Exchange the roles of x and y."""
        return Poly2({(j, i): c for (i, j), c in self.terms.items()})

    def __call__(self, x, y):
        total = 0 * x
        for (i, j), c in self.terms.items():
            total = total + float(c) * x**i * y**j
        return total

    def to_json(self) -> list[dict]:
        return [{"i": i, "j": j, "c": format_rat(c)} for (i, j), c in self.terms.items()]

    @classmethod
    def from_json(cls, data: Iterable[Mapping]) -> "Poly2":
        terms: dict[tuple[int, int], Fraction] = {}
        for t in data:
            key = (int(t["i"]), int(t["j"]))
            terms[key] = terms.get(key, Fraction(0)) + parse_rat(t["c"])
        return cls(terms)


def lagrange_pf_coeffs(roots: Sequence) -> list[Fraction]:
    """Residues ``d_j = 1 / prod_{l != j} (a_j - a_l)``.

    With these weights ``1/prod(x - a_l) == sum_j d_j / (x - a_j)``.
    """
    rs = [parse_rat(r) for r in roots]
    if len(set(rs)) != len(rs):
        raise DuplicateRoot(f"partial fractions need distinct roots, got {[format_rat(r) for r in rs]}")
    out = []
    for j, aj in enumerate(rs):
        den = Fraction(1)
        for l, al in enumerate(rs):
            if l != j:
                den *= aj - al
        out.append(1 / den)
    return out


def recombine_partial_fractions(roots: Sequence, weights: Sequence) -> tuple[Poly1, Poly1]:
    """Clear denominators of ``sum_j w_j/(x - a_j)``.

    Returns ``(numerator, denominator)`` with ``denominator = prod(x - a_j)``;
    used to check partial fraction weights symbolically.
    """
    rs = [parse_rat(r) for r in roots]
    num = Poly1()
    for j, w in enumerate(weights):
        num = num + Poly1.from_roots(r for l, r in enumerate(rs) if l != j) * parse_rat(w)
    return num, Poly1.from_roots(rs)
