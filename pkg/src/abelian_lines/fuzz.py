"""Seeded random instances and the bound-violation fuzz run.

All randomness flows from one ``numpy.random.Generator`` so every failure can
be replayed from ``(seed, index)``.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .abelian import LineConfig, Perturbation, closed_form
from .algebra import Poly1, Poly2
from .bounds import config_invariants, thm11_bound
from .radical import RadicalFunction, zero_bound


def random_rational(rng: np.random.Generator, lo, hi, max_den: int = 4) -> Fraction:
    den = int(rng.integers(1, max_den + 1))
    lo_n = int(np.ceil(float(lo) * den))
    hi_n = int(np.floor(float(hi) * den))
    return Fraction(int(rng.integers(lo_n, hi_n + 1)), den)


def random_lines(rng: np.random.Generator, k: int, lo=1, hi=5) -> tuple[Fraction, ...]:
    out: list[Fraction] = []
    while len(out) < k:
        v = random_rational(rng, lo, hi) * (1 if rng.random() < 0.5 else -1)
        if v not in out:
            out.append(v)
    return tuple(out)


def random_line_config(rng: np.random.Generator, k1_max: int = 3, k2_max: int = 2,
                       lo=1, hi=5) -> LineConfig:
    while True:
        k1 = int(rng.integers(0, k1_max + 1))
        k2 = int(rng.integers(0, k2_max + 1))
        if k1 + k2:
            return LineConfig(random_lines(rng, k1, lo, hi), random_lines(rng, k2, lo, hi))


def coincident_line_config(rng: np.random.Generator) -> LineConfig:
    """Configurations with repeated absolute values (a = (v, -v), |b| among |a|, ...)."""
    v = random_rational(rng, 1, 5)
    w = random_rational(rng, 1, 5)
    while w == v:
        w = random_rational(rng, 1, 5)
    choices = [
        LineConfig((v, -v), ()),
        LineConfig((v, -v, w), ()),
        LineConfig((v, -v), (w, -w)),
        LineConfig((v, -v), (v,)),
        LineConfig((v, w), (-v, w)),
        LineConfig((), (w, -w)),
        LineConfig((v,), (v, -v)),
    ]
    return choices[int(rng.integers(len(choices)))]


def random_perturbation(rng: np.random.Generator, n: int, scale: int = 9, max_den: int = 4,
                        density: float = 1.0) -> Perturbation:
    keys = [(i, d - i) for d in range(n + 1) for i in range(d + 1)]

    def poly():
        return Poly2({k: random_rational(rng, -scale, scale, max_den)
                      for k in keys if rng.random() < density})
    return Perturbation(poly(), poly(), n)


def random_radical_function(rng: np.random.Generator, k_max: int = 4, deg_max: int = 4,
                            c_lo=Fraction(1, 2), c_hi=5) -> RadicalFunction:
    K = int(rng.integers(1, k_max + 1))
    cs: list[Fraction] = []
    while len(cs) < K:
        c = random_rational(rng, c_lo, c_hi, 4)
        if c not in cs and c > 0:
            cs.append(c)

    def poly(deg):
        return Poly1([random_rational(rng, -5, 5, 3) for _ in range(deg + 1)])
    n0 = int(rng.integers(-1, deg_max + 1))
    P0 = poly(n0) if n0 >= 0 else Poly1()
    terms = [(poly(int(rng.integers(0, deg_max + 1))), c) for c in cs]
    return RadicalFunction(P0, terms)


def run_fuzz(seed: int, instances: int = 1000, grid: int = 4096, kinds=("radical", "abelian"),
             n_max: int = 6) -> dict:
    """Count zeros of random instances and compare with their upper bounds.

    Instances alternate between the requested kinds.  Returns a summary with
    one reproducer record per violation.
    """
    from .numeric.zeros import closed_form_zeros, radical_zeros

    rng = np.random.default_rng(seed)
    summary = {"seed": seed, "instances": instances, "grid": grid, "checked": {k: 0 for k in kinds},
               "max_count": {k: 0 for k in kinds}, "tight": {k: 0 for k in kinds},
               "identically_zero": 0, "violations": []}
    for idx in range(instances):
        kind = kinds[idx % len(kinds)]
        if kind == "radical":
            F = random_radical_function(rng)
            if F.is_zero():
                continue
            rep = radical_zeros(F, grid=grid)
            bound = zero_bound(F)
            instance = F.to_json()
        else:
            config = random_line_config(rng)
            pert = random_perturbation(rng, int(rng.integers(0, n_max + 1)))
            cf = closed_form(config, pert)
            if cf.is_zero():
                summary["identically_zero"] += 1
                continue
            bound = thm11_bound(config_invariants(config), pert.n)
            rep = closed_form_zeros(cf, grid=grid, theoretical_upper=bound)
            instance = {"lines": config.to_json(), "perturbation": pert.to_json()}
        count = rep.count_lower_bound
        summary["checked"][kind] += 1
        summary["max_count"][kind] = max(summary["max_count"][kind], count)
        summary["tight"][kind] += count == bound
        if count > bound:
            summary["violations"].append({"seed": seed, "index": idx, "kind": kind, "count": count,
                                          "bound": bound, "instance": instance,
                                          "zeros": [z for z, _, _ in rep.zeros]})
    summary["ok"] = not summary["violations"]
    return summary
