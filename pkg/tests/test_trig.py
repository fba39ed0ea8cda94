import math
import random
from fractions import Fraction as F

import pytest

from abelian_lines.algebra import Poly1
from abelian_lines.errors import ZeroLine
from abelian_lines.trig import (OneLine, RadVal, TrigPoly, TwoLine, base_one_line, base_two_line,
                                cos_moment, line_integral, normalize_sin, sin_line_integral)

from oracle import trigpoly_over


def test_normalize_sin_examples():
    assert normalize_sin(TrigPoly({(2, 1, 0): 1})) == TrigPoly({(0, 1, 0): 1, (0, 3, 0): -1})
    assert normalize_sin(TrigPoly({(3, 0, 0): 1})) == TrigPoly({(1, 0, 0): 1, (1, 2, 0): -1})
    t = TrigPoly({(1, 1, 0): 1})
    assert normalize_sin(t) == t


def test_cos_moments():
    assert cos_moment(0) == 2 and cos_moment(1) == 0 and cos_moment(2) == 1
    for k in range(9):
        direct = sum(math.cos(2 * math.pi * i / 64) ** k for i in range(64)) * 2 * math.pi / 64
        assert abs(float(cos_moment(k)) * math.pi - direct) < 1e-12


def test_base_one_line():
    assert base_one_line(2).evaluate(0.0) == pytest.approx(-math.pi)
    assert base_one_line(-1).evaluate(F(9, 25)) == pytest.approx(5 * math.pi / 2, rel=1e-15)
    for a in (F(3, 2), F(-7, 3)):
        for r in (0.1, 0.7, 1.3):
            want = trigpoly_over(TrigPoly({(0, 0, 0): 1}), r, a=a)
            assert float(base_one_line(a).evaluate(r * r)) == pytest.approx(want, rel=1e-12)


@pytest.mark.parametrize("a,b", [(1, 2), (-1, 2), (1, -2), (-1, -2), (F(5, 2), F(3, 2)), (2, 2), (-3, 3)])
def test_base_two_line_quadrants(a, b):
    v = base_two_line(a, b)
    assert float(v.evaluate(0.0)) == pytest.approx(2 * math.pi / (a * b), rel=1e-14)
    rho = min(abs(a), abs(b))
    for k in range(1, 11):
        r = 0.09 * k * float(rho)
        want = trigpoly_over(TrigPoly({(0, 0, 0): 1}), r, a=a, b=b)
        assert float(v.evaluate(r * r)) == pytest.approx(want, rel=1e-10, abs=1e-12)


def test_statement_attachment_is_wrong():
    # the swapped attachment a/sqrt(a^2-r^2) + b/sqrt(b^2-r^2) disagrees away from r = 0
    a, b, r = 1, 2, 0.6
    swapped = 2 * math.pi / (a * a + b * b - r * r) * (a / math.sqrt(a * a - r * r) + b / math.sqrt(b * b - r * r))
    want = trigpoly_over(TrigPoly({(0, 0, 0): 1}), r, a=a, b=b)
    assert abs(swapped - want) > 1e-3
    assert float(base_two_line(a, b).evaluate(r * r)) == pytest.approx(want, rel=1e-12)


def test_line_integral_examples():
    odd = TrigPoly({(1, 0, 1): -1})
    assert line_integral(odd, OneLine(2)).is_zero()
    a00, a01, a10, a = F(3), F(-2), F(5), F(3, 2)
    t = TrigPoly({(0, 0, 0): a00, (0, 1, 1): a01, (1, 0, 1): a10})
    got = line_integral(t, OneLine(a))
    want = RadVal(Poly1([2 * a01]), {a * a: Poly1([-2 * (a00 + a01 * a)])})
    assert got == want


def _random_trig(rng, deg):
    terms = {}
    for m in range(deg + 1):
        for i in range(m + 1):
            terms[(i, m - i, m)] = F(rng.randint(-9, 9), rng.randint(1, 4))
    return normalize_sin(TrigPoly(terms))


@pytest.mark.parametrize("seed", range(4))
def test_line_integral_two_line_random(seed):
    rng = random.Random(seed)
    t = _random_trig(rng, 7)
    a = F(rng.choice([-1, 1]) * rng.randint(2, 9), 2)
    b = F(rng.choice([-1, 1]) * rng.randint(2, 9), 2)
    v = line_integral(t, TwoLine(a, b))
    rho = float(min(abs(a), abs(b)))
    for k in range(1, 21, 2):
        r = 0.045 * k * rho
        want = trigpoly_over(t, r, a=a, b=b)
        assert float(v.evaluate(r * r)) == pytest.approx(want, rel=1e-10, abs=1e-10)


def test_sin_line_matches_quadrature():
    t = _random_trig(random.Random(9), 5)
    v = sin_line_integral(t, F(-5, 2))
    for r in (0.3, 1.1, 2.2):
        assert float(v.evaluate(r * r)) == pytest.approx(trigpoly_over(t, r, b=F(-5, 2)), rel=1e-10, abs=1e-10)


def test_zero_line_rejected():
    with pytest.raises(ZeroLine):
        OneLine(0)
    with pytest.raises(ZeroLine):
        TwoLine(1, 0)


def test_radval_json_roundtrip():
    v = base_two_line(1, 3) + base_one_line(F(-2, 3))
    assert RadVal.from_json(v.to_json()) == v
