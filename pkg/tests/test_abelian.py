from fractions import Fraction as F

import numpy as np
import pytest

from abelian_lines import (LineConfig, Perturbation, Poly1, Poly2, clear_poles, closed_form,
                           integrand, structure_degrees, to_radical_function)
from abelian_lines.errors import DuplicateRoot, NotApplicable, ZeroLine
from abelian_lines.fuzz import coincident_line_config, random_line_config, random_perturbation
from abelian_lines.trig import TrigPoly, normalize_sin

from oracle import abelian_quad


def test_integrand_examples():
    assert integrand(None, Perturbation.of(Q={(0, 0): 1})) == TrigPoly({(1, 0, 1): -1})
    assert integrand(None, Perturbation.of(P={(0, 0): 1})) == TrigPoly({(0, 1, 1): -1})
    # P = x, Q = y gives -r^2 (sin^2 + cos^2); the mixed product comes from P = y, Q = x
    xy = integrand(None, Perturbation.of(P={(1, 0): 1}, Q={(0, 1): 1}))
    assert xy == TrigPoly({(0, 2, 2): -1, (2, 0, 2): -1})
    assert normalize_sin(xy) == TrigPoly({(0, 0, 2): -1})
    assert integrand(None, Perturbation.of(P={(0, 1): 1}, Q={(1, 0): 1})) == TrigPoly({(1, 1, 2): -2})


def test_line_config_validation():
    with pytest.raises(ZeroLine):
        LineConfig((0, 1))
    with pytest.raises(DuplicateRoot):
        LineConfig((1, 1))
    with pytest.raises(ValueError):
        LineConfig((), ())
    cfg = LineConfig((F(3), F(-3)), (F(3),))
    assert cfg.rho_min == 3 and cfg.mixed


def test_single_line_q_constant_is_zero():
    cf = closed_form(LineConfig((2,)), Perturbation.of(Q={(0, 0): 1}))
    assert cf.is_zero()


def test_degree_zero_one_line_formula():
    # P = p0, Q = q0 over x = a: I = -2 pi p0 + 2 pi p0 a / sqrt(a^2 - r^2)
    a, p0 = F(5, 2), F(-3)
    cf = closed_form(LineConfig((a,)), Perturbation.of(P={(0, 0): p0}, Q={(0, 0): 7}, n=0))
    for r in np.linspace(0.1, 2.4, 10):
        want = -2 * np.pi * float(p0) + 2 * np.pi * float(p0 * a) / np.sqrt(float(a * a) - r * r)
        assert float(cf.abelian_value(r)) == pytest.approx(want, rel=1e-12)
        assert float(cf.abelian_value(r)) == pytest.approx(
            abelian_quad((a,), (), {(0, 0): p0}, {(0, 0): 7}, r), rel=1e-10)


def test_symmetric_lines_share_radicand():
    for n in range(1, 6):
        pert = random_perturbation(np.random.default_rng(n), n)
        cf = closed_form(LineConfig((1, -1)), pert)
        assert set(cf.value.radicals) <= {F(1)}


def test_clear_poles_examples():
    cfg = LineConfig((2, -2), (3, -3))
    pert = random_perturbation(np.random.default_rng(1), 3)
    cleared = clear_poles(closed_form(cfg, pert))
    assert cleared.h_roots == (F(13),) and not cleared.value.poles
    cfg2 = LineConfig((1, 2), (3,))
    cleared2 = clear_poles(closed_form(cfg2, pert))
    assert cleared2.h_roots == (F(10), F(13)) and cleared2.H.degree() == 2
    with pytest.raises(NotApplicable):
        clear_poles(cleared2)
    one_axis = closed_form(LineConfig((2,)), pert)
    assert clear_poles(one_axis) is one_axis


@pytest.mark.parametrize("seed", range(5))
def test_clearing_is_multiplication_by_h(seed):
    rng = np.random.default_rng(seed)
    cfg = LineConfig((F(3, 2), F(-5, 2)), (F(2),))
    pert = random_perturbation(rng, 4)
    cf = closed_form(cfg, pert)
    cl = clear_poles(cf)
    for r in np.linspace(0.05, 1.45, 20):
        rho = F(r).limit_denominator(10**6)
        lhs = cl.value.evaluate(rho)
        rhs = cl.H(rho) * cf.value.evaluate(rho)
        assert abs(lhs - rhs) <= 1e-12 * abs(rhs) + 1e-30


def test_to_radical_function_substitution():
    from abelian_lines.trig import RadVal
    from abelian_lines.abelian import ClosedForm
    v = RadVal(Poly1([1, 1]), {F(4): Poly1([2, 3]), F(9): Poly1([-1])})
    cfg = LineConfig((2, 3))
    cf = ClosedForm(v, cfg, Perturbation.of(), pole_free=True)
    F_, interval = to_radical_function(cf)
    assert F_.P0 == Poly1([1, -1])
    assert dict((c, p) for p, c in F_.terms) == {F(4): Poly1([2, -3]), F(9): Poly1([-1])}
    assert interval == (F(-4), F(0))
    zero = closed_form(LineConfig((2,)), Perturbation.of(Q={(0, 0): 1}))
    assert to_radical_function(zero)[0].is_zero()


def test_zero_count_preserved_under_substitution(one_line_cubic):
    from abelian_lines.numeric.zeros import closed_form_zeros, radical_zeros
    cfg, pert = one_line_cubic
    cf = closed_form(cfg, pert)
    F_, (lo, hi) = to_radical_function(cf)
    zr = closed_form_zeros(cf)
    zx = radical_zeros(F_, interval=(float(lo), float(hi)))
    assert zr.count_lower_bound == zx.count_lower_bound == 1
    assert zr.zeros[0][0] == pytest.approx(np.sqrt(-zx.zeros[0][0]), rel=1e-9)


@pytest.mark.parametrize("seed", range(6))
def test_random_configs_structure_and_quadrature(seed):
    rng = np.random.default_rng(100 + seed)
    cfg = random_line_config(rng)
    pert = random_perturbation(rng, int(rng.integers(0, 6)))
    cf = closed_form(cfg, pert)
    assert structure_degrees(cf)["ok"]
    if cfg.mixed:
        assert structure_degrees(clear_poles(cf))["ok"]
    P, Q = pert.P.terms, pert.Q.terms
    rho = float(cfg.rho_min)
    for r in (0.2 * rho, 0.55 * rho, 0.9 * rho):
        want = abelian_quad(cfg.a_lines, cfg.b_lines, P, Q, r)
        assert float(cf.abelian_value(r)) == pytest.approx(want, rel=1e-9, abs=1e-10)


def test_coincident_radicand_keys():
    rng = np.random.default_rng(5)
    for _ in range(25):
        cfg = coincident_line_config(rng)
        cf = closed_form(cfg, random_perturbation(rng, 4))
        assert cf.value.radicands() <= cfg.distinct_radicands()
        assert structure_degrees(cf)["ok"]


def test_perturbation_degree_checked():
    with pytest.raises(ValueError):
        Perturbation(Poly2({(2, 1): 1}), Poly2(), 2)
