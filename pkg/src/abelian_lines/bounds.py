"""Configuration invariants and closed-form zero bounds.

``[s]`` (integer part) is implemented as floor, so ``[(n-1)/2] = -1`` at n = 0.
Literature rows live in ``known_bounds.json`` as (numerator slope, offset,
denominator) triples per parity of n and are never derived from the formulas
below, so any disagreement surfaces instead of being hidden.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from fractions import Fraction
from importlib import resources

from .abelian import LineConfig
from .errors import UnknownCase

KNOWN_CASES = ("one-line", "two-parallel", "two-orthogonal", "three-lines", "four-symmetric")


@dataclass(frozen=True)
class ConfigInvariants:
    K1: int
    K2: int
    K1t: int
    K2t: int
    L: int
    rho_min: Fraction
    swapped: bool = False

    def to_json(self) -> dict:
        d = asdict(self)
        d["rho_min"] = str(self.rho_min)
        return d


def config_invariants(config: LineConfig) -> ConfigInvariants:
    """Cardinalities of ``{|a|}``, ``{|a|,|b|}`` and ``{a^2 + b^2}``, with ``K1 >= K2``."""
    swapped = config.K2 > config.K1
    if swapped:
        config = config.swapped()
    abs_a = {abs(a) for a in config.a_lines}
    abs_all = abs_a | {abs(b) for b in config.b_lines}
    L = len({a * a + b * b for a in config.a_lines for b in config.b_lines})
    return ConfigInvariants(config.K1, config.K2, len(abs_a), len(abs_all) - len(abs_a), L,
                            config.rho_min, swapped)


def thm11_bound(inv: ConfigInvariants, n: int) -> int:
    if n < 0:
        raise ValueError("degree must be non-negative")
    if inv.K2 == 0:
        return inv.K1t * ((n + 3) // 2) + n // 2
    return (inv.K1t + inv.K2t) * ((n + 2) // 2 + inv.L) + (n - 1) // 2 + inv.L


def generic_invariants(K1: int, K2: int) -> ConfigInvariants:
    """Invariants of generically placed lines (no coincident |a|, |b| or a^2 + b^2)."""
    return ConfigInvariants(K1, K2, K1, K2, K1 * K2, Fraction(1))


def cor42_bound(K: int, n: int) -> int:
    if K < 1:
        raise ValueError("need at least one line")
    return K * (n // 2) + (n - 1) // 2 + (K + 1) * (K // 2) * ((K + 1) // 2) + K


def max_split_bound(K: int, n: int) -> int:
    """Largest ``thm11_bound`` over splits ``K1 + K2 = K`` with ``K1 >= K2`` at generic invariants."""
    return max(thm11_bound(generic_invariants(K - k2, k2), n) for k2 in range(K // 2 + 1))


def effective_params(n: int, mixed: bool) -> int:
    if n < 0:
        raise ValueError("degree must be non-negative")
    if mixed:
        return (n + 4) * (n + 1) // 2
    return (n + 5) * (n + 1) // 4


def _load_known() -> dict:
    with resources.files("abelian_lines").joinpath("known_bounds.json").open() as fh:
        return json.load(fh)


def _eval_row(row: dict, n: int) -> int | None:
    if row is None:
        return None
    slope, offset, den = row["odd" if n % 2 else "even"]
    val = Fraction(slope * n + offset, den)
    if val.denominator != 1:
        raise ValueError(f"non-integral table value {val} at n={n}")
    return int(val)


def family_config(case_id: str) -> LineConfig:
    """A representative configuration for each literature family."""
    table = {
        "one-line": LineConfig((1,), ()),
        "two-parallel": LineConfig((1, -2), ()),
        "two-orthogonal": LineConfig((1,), (2,)),
        "three-lines": LineConfig((1, -2), (3,)),
        "four-symmetric": LineConfig((1, -1), (2, -2)),
    }
    if case_id not in table:
        raise UnknownCase(case_id)
    return table[case_id]


def compare_known(case_id: str, n: int) -> dict:
    """Literature bound, the bound as printed in the comparison section, and our formula value."""
    known = _load_known()
    if case_id not in known:
        raise UnknownCase(case_id)
    row = known[case_id]
    inv = config_invariants(family_config(case_id))
    ours = thm11_bound(inv, n)
    printed = _eval_row(row.get("stated_ours"), n)
    out = {
        "case": case_id,
        "n": n,
        "reference": row["reference"],
        "literature_upper": _eval_row(row.get("literature_upper"), n),
        "literature_lower": _eval_row(row.get("literature_lower"), n),
        "thm11": ours,
        "stated_thm11": printed,
        "agrees_with_stated": printed is None or printed == ours,
    }
    if case_id == "one-line":
        out["cor42"] = cor42_bound(1, n)
    return out


def detect_family(config: LineConfig) -> str | None:
    """Name of the literature family a configuration belongs to, if any."""
    K1, K2 = sorted((config.K1, config.K2), reverse=True)
    if (K1, K2) == (1, 0):
        return "one-line"
    if (K1, K2) == (2, 0):
        return "two-parallel"
    if (K1, K2) == (1, 1):
        return "two-orthogonal"
    if (K1, K2) == (2, 1):
        return "three-lines"
    if (K1, K2) == (2, 2):
        a, b = config.a_lines, config.b_lines
        if a[0] == -a[1] and b[0] == -b[1] and abs(a[0]) != abs(b[0]):
            return "four-symmetric"
    return None


def bound_report(config: LineConfig, n: int) -> dict:
    inv = config_invariants(config)
    K = config.K1 + config.K2
    out = {
        "K1": inv.K1, "K2": inv.K2, "K1t": inv.K1t, "K2t": inv.K2t, "L": inv.L, "n": n,
        "axes_swapped": inv.swapped,
        "rho_min": str(inv.rho_min),
        "thm11": thm11_bound(inv, n),
        "cor42": cor42_bound(K, n),
        "params": effective_params(n, config.mixed),
    }
    fam = detect_family(config)
    if fam is not None:
        out["family"] = fam
        out["comparison"] = compare_known(fam, n)
    return out
