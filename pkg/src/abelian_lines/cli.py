"""Command line front end: ``abelian-lines <subcommand> --config run.json``.

Exit status is 0 on success, 1 when a checked invariant fails, 2 for
configuration problems and 3 for numeric failures.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .abelian import LineConfig, Perturbation, clear_poles, closed_form, structure_degrees, to_radical_function
from .algebra import Poly2, mp, parse_rat, set_precision
from .bounds import bound_report
from .errors import AbelianLinesError, ConfigError, NumericFailure
from .radical import derivation_division

EXIT_OK, EXIT_INVARIANT, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3

NUMERIC_DEFAULTS = {"precision_bits": 128, "scan_points": 4096, "quad_rel_tol": 1e-12}
SUBCOMMANDS = ("closed-form", "bound", "zeros", "oracle", "simulate", "report", "fuzz")


@dataclass
class RunConfig:
    lines: LineConfig
    pert: Perturbation
    numeric: dict = field(default_factory=lambda: dict(NUMERIC_DEFAULTS))
    simulate: dict | None = None
    seed: int | None = None

    def to_json(self) -> dict:
        out = {"lines": self.lines.to_json(), "perturbation": self.pert.to_json(),
               "numeric": dict(self.numeric)}
        if self.simulate is not None:
            out["simulate"] = dict(self.simulate)
        if self.seed is not None:
            out["seed"] = self.seed
        return out


def _rat_list(data, where: str) -> list[Fraction]:
    if not isinstance(data, list):
        raise ConfigError(f"{where}: expected a list of rational strings")
    out = []
    for k, v in enumerate(data):
        if isinstance(v, float):
            raise ConfigError(f"{where}[{k}]: give rationals as strings, not floats ({v!r})")
        try:
            q = parse_rat(v)
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"{where}[{k}]: cannot parse {v!r} ({exc})") from None
        if q == 0:
            raise ConfigError(f"{where}[{k}]: line through origin is not allowed")
        if q in out:
            raise ConfigError(f"{where}[{k}]: duplicate line entry {v!r}")
        out.append(q)
    return out


def _poly_terms(data, where: str, degree: int) -> Poly2:
    if data is None:
        return Poly2()
    if not isinstance(data, list):
        raise ConfigError(f"{where}: expected a list of {{i, j, c}} objects")
    for k, t in enumerate(data):
        if not isinstance(t, dict) or set(t) != {"i", "j", "c"}:
            raise ConfigError(f"{where}[{k}]: each term needs exactly the keys i, j, c")
        i, j = t["i"], t["j"]
        if not (isinstance(i, int) and isinstance(j, int)) or isinstance(i, bool) or i < 0 or j < 0:
            raise ConfigError(f"{where}[{k}]: exponents must be non-negative integers")
        if i + j > degree:
            raise ConfigError(f"{where}[{k}]: x^{i} y^{j} exceeds the declared degree {degree}")
        if isinstance(t["c"], float):
            raise ConfigError(f"{where}[{k}].c: give coefficients as strings, not floats")
    try:
        return Poly2.from_json(data)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"{where}: {exc}") from None


def parse_config(data) -> RunConfig:
    if not isinstance(data, dict):
        raise ConfigError("top level must be a JSON object")
    unknown = set(data) - {"lines", "perturbation", "numeric", "simulate", "seed"}
    if unknown:
        raise ConfigError(f"unknown top level keys: {sorted(unknown)}")
    lines = data.get("lines")
    if not isinstance(lines, dict):
        raise ConfigError("lines: missing or not an object")
    xs = _rat_list(lines.get("x", []), "lines.x")
    ys = _rat_list(lines.get("y", []), "lines.y")
    if not xs and not ys:
        raise ConfigError("lines: at least one line is required")
    pert = data.get("perturbation")
    if not isinstance(pert, dict) or "degree" not in pert:
        raise ConfigError("perturbation: missing or lacks a degree field")
    n = pert["degree"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ConfigError("perturbation.degree: must be a non-negative integer")
    P = _poly_terms(pert.get("P"), "perturbation.P", n)
    Q = _poly_terms(pert.get("Q"), "perturbation.Q", n)

    numeric = dict(NUMERIC_DEFAULTS)
    for key, val in (data.get("numeric") or {}).items():
        if key not in NUMERIC_DEFAULTS:
            raise ConfigError(f"numeric.{key}: unknown field")
        numeric[key] = val
    if not isinstance(numeric["precision_bits"], int) or numeric["precision_bits"] < 53:
        raise ConfigError("numeric.precision_bits: integer >= 53 required")
    if not isinstance(numeric["scan_points"], int) or numeric["scan_points"] < 16:
        raise ConfigError("numeric.scan_points: integer >= 16 required")
    if not isinstance(numeric["quad_rel_tol"], (int, float)) or not 0 < numeric["quad_rel_tol"] < 1:
        raise ConfigError("numeric.quad_rel_tol: number in (0, 1) required")

    sim = data.get("simulate")
    if sim is not None:
        if not isinstance(sim, dict) or set(sim) - {"epsilon", "radii"}:
            raise ConfigError("simulate: expected {epsilon, radii}")
        eps = sim.get("epsilon", "1e-3")
        if not isinstance(eps, str):
            raise ConfigError("simulate.epsilon: give a decimal string")
        try:
            float(eps)
        except ValueError:
            raise ConfigError(f"simulate.epsilon: cannot parse {eps!r}") from None
        radii = sim.get("radii", 10)
        if not isinstance(radii, int) or radii < 2:
            raise ConfigError("simulate.radii: integer >= 2 required")
        sim = {"epsilon": eps, "radii": radii}
    seed = data.get("seed")
    if seed is not None and (not isinstance(seed, int) or isinstance(seed, bool)):
        raise ConfigError("seed: integer required")
    return RunConfig(LineConfig(tuple(xs), tuple(ys)), Perturbation(P, Q, n), numeric, sim, seed)


def load_config(path) -> RunConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    return parse_config(data)


def serialize(cfg: RunConfig) -> str:
    return json.dumps(cfg.to_json(), indent=2, sort_keys=True) + "\n"


# -- subcommand bodies; each returns (payload, csv_rows or None, ok) ----------

def _closed_form(cfg: RunConfig, args):
    cf = closed_form(cfg.lines, cfg.pert)
    out = {"closed_form": cf.to_json(), "structure": structure_degrees(cf)}
    ok = out["structure"]["ok"]
    if cfg.lines.mixed:
        cleared = clear_poles(cf)
        out["cleared"] = cleared.to_json()
        out["cleared_structure"] = structure_degrees(cleared)
        ok = ok and out["cleared_structure"]["ok"]
    rows = None
    if args.samples:
        from .numeric.quadrature import sample_radii
        rows = [("r", "I")] + [(r, float(cf.abelian_value(mp.mpf(r))))
                               for r in sample_radii(cfg.lines, args.samples)]
    return out, rows, ok


def _certificate(cfg: RunConfig):
    cf = closed_form(cfg.lines, cfg.pert)
    if cf.is_zero():
        return None
    F, _ = to_radical_function(clear_poles(cf))
    if F.is_zero():
        return None
    return derivation_division(F)


def _bound(cfg: RunConfig, args):
    out = bound_report(cfg.lines, cfg.pert.n)
    trace = _certificate(cfg)
    ok = True
    if trace is not None:
        out["pipeline"] = {"total_derivatives": trace.total_derivatives,
                           "final_degree": trace.final_degree, "bound": trace.bound}
        ok = trace.bound <= out["thm11"]
    return out, None, ok


def _zeros(cfg: RunConfig, args):
    from .bounds import config_invariants, thm11_bound
    from .numeric.zeros import closed_form_zeros

    cf = closed_form(cfg.lines, cfg.pert)
    bound = thm11_bound(config_invariants(cfg.lines), cfg.pert.n)
    rep = closed_form_zeros(cf, grid=cfg.numeric["scan_points"], theoretical_upper=bound,
                            keep_samples=True)
    out = rep.to_json()
    if cf.is_zero():
        out["identically_zero_suspect"] = True
        out["identically_zero_exact"] = True
    rows = [("r", "I")]
    if rep.samples is not None:
        rs, vs = rep.samples
        rows += [(float(r), float(v) * float(np.pi)) for r, v in zip(rs, vs)]
    return out, rows, rep.within_bound


def _oracle(cfg: RunConfig, args):
    from .numeric.quadrature import oracle_comparison

    cmp = oracle_comparison(cfg.lines, cfg.pert, samples=args.samples or 20,
                            rel_tol=cfg.numeric["quad_rel_tol"])
    out = {"samples": len(cmp.radii), "max_rel_error": cmp.max_rel_error,
           "max_abs_error_near_zero": cmp.max_abs_error_near_zero,
           "rel_tol": 1e-8, "abs_tol": 1e-10, "ok": cmp.passes()}
    rows = [("r", "I_closed", "I_quadrature", "error")]
    rows += [(r, float(c), float(q), e) for r, c, q, e in zip(cmp.radii, cmp.closed, cmp.quadrature, cmp.errors)]
    return out, rows, cmp.passes()


def _sim_settings(cfg: RunConfig, args):
    sim = cfg.simulate or {}
    eps = args.epsilon if args.epsilon is not None else sim.get("epsilon", "1e-3")
    count = args.samples or sim.get("radii", 10)
    return float(eps), int(count)


def simulation_radii(config: LineConfig, count: int) -> list[float]:
    """Radii well inside the annulus, where the first order term dominates."""
    rho = float(config.rho_min)
    return [float(v) * rho for v in np.linspace(0.1, 0.8, count)]


def _simulate(cfg: RunConfig, args):
    from .numeric.poincare import simulate

    eps, count = _sim_settings(cfg, args)
    rep = simulate(cfg.lines, cfg.pert, eps, simulation_radii(cfg.lines, count))
    out = {"epsilon": eps, "rotation": rep.rotation, "kappa_mean": rep.kappa,
           "kappa_spread": rep.kappa_spread,
           "scaled_ratio_mean": float(np.mean(rep.scaled_ratios))}
    rows = [("r0", "d", "d_over_eps", "d_over_eps_I")] + [tuple(r) for r in rep.csv_rows()]
    return out, rows, True


def _fuzz(cfg: RunConfig | None, args):
    from .fuzz import run_fuzz

    seed = args.seed if args.seed is not None else (cfg.seed if cfg and cfg.seed is not None else 0)
    summary = run_fuzz(seed, instances=args.samples or 1000)
    return summary, None, summary["ok"]


HANDLERS = {"closed-form": _closed_form, "bound": _bound, "zeros": _zeros, "oracle": _oracle,
            "simulate": _simulate, "fuzz": _fuzz}


def _csv_text(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for row in rows:
        w.writerow([f"{v:.17g}" if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _text(payload, prefix="") -> str:
    lines = []
    for k, v in payload.items():
        if isinstance(v, dict):
            lines.append(_text(v, f"{prefix}{k}."))
        else:
            lines.append(f"{prefix}{k}: {json.dumps(v, sort_keys=True) if isinstance(v, list) else v}")
    return "\n".join(lines)


def _json_text(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _emit(name: str, payload, rows, args) -> None:
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        stem = name.replace("-", "_")
        (out / f"{stem}.json").write_text(_json_text(payload))
        if rows is not None:
            (out / f"{stem}.csv").write_text(_csv_text(rows))
        return
    if args.format == "csv":
        if rows is None:
            raise ConfigError(f"{name} has no CSV output; use --format json or text")
        sys.stdout.write(_csv_text(rows))
    elif args.format == "text":
        sys.stdout.write(_text(payload) + "\n")
    else:
        sys.stdout.write(_json_text(payload))


def _report(cfg: RunConfig, args) -> bool:
    out = Path(args.out or "report")
    out.mkdir(parents=True, exist_ok=True)
    (out / "config.json").write_text(serialize(cfg))
    sub = argparse.Namespace(**{**vars(args), "out": str(out)})
    ok = True
    names = ["closed-form", "bound", "zeros", "oracle"] + (["simulate"] if cfg.simulate else [])
    for name in names:
        payload, rows, good = HANDLERS[name](cfg, sub)
        _emit(name, payload, rows, sub)
        ok = ok and good
    trace = _certificate(cfg)
    if trace is not None:
        (out / "certificate.json").write_text(_json_text(trace.to_json()))
    return ok


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="abelian-lines",
                                description="Abelian integrals of line-configuration centers: "
                                            "closed forms, zero bounds and numeric checks.")
    p.add_argument("subcommand", choices=SUBCOMMANDS)
    p.add_argument("--config", help="run configuration (JSON)")
    p.add_argument("--out", help="directory for JSON/CSV artifacts (default: stdout)")
    p.add_argument("--samples", type=int, help="number of radii, or fuzz instances")
    p.add_argument("--epsilon", help="perturbation size for simulate (decimal string)")
    p.add_argument("--seed", type=int, help="fuzz seed")
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.samples is not None and args.samples < 1:
            raise ConfigError("--samples must be positive")
        if args.epsilon is not None:
            try:
                float(args.epsilon)
            except ValueError:
                raise ConfigError(f"--epsilon: cannot parse {args.epsilon!r}") from None
        cfg = None
        if args.config:
            cfg = load_config(args.config)
        elif args.subcommand != "fuzz":
            raise ConfigError(f"{args.subcommand} needs --config")
        if cfg is not None:
            set_precision(cfg.numeric["precision_bits"])
        if args.subcommand == "report":
            ok = _report(cfg, args)
        else:
            payload, rows, ok = HANDLERS[args.subcommand](cfg, args)
            _emit(args.subcommand, payload, rows, args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericFailure as exc:
        print(f"numeric failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except AbelianLinesError as exc:
        print(f"invariant violation: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    return EXIT_OK if ok else EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
