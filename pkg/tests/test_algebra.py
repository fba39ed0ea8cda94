from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from abelian_lines.algebra import (Poly1, Poly2, eval_poly1, lagrange_pf_coeffs, mp, parse_rat,
                                   poly_arith, recombine_partial_fractions)
from abelian_lines.errors import DuplicateRoot

rats = st.fractions(min_value=-20, max_value=20, max_denominator=12)
polys = st.lists(rats, max_size=7).map(Poly1)


def test_poly_arith_examples():
    assert poly_arith(Poly1([1, 1]), Poly1([1, -1]), "mul") == Poly1([1, 0, -1])
    prod = poly_arith(Poly1([1, 2]), Poly1(), "mul")
    assert prod.is_zero() and prod.degree() == -1
    assert poly_arith(Poly1([1, 0, 1]), Poly1([0, 0, -1]), "add") == Poly1([1])
    with pytest.raises(ValueError):
        poly_arith(Poly1([1]), Poly1([1]), "div")


def test_eval_examples():
    assert eval_poly1(Poly1([1, -1]), mp.mpf(1)) == 0
    assert eval_poly1(Poly1([0, 0, 1]), mp.mpf(3) / 2) == mp.mpf(9) / 4


@given(polys, rats)
def test_eval_matches_exact(p, x):
    exact = p(x)
    got = eval_poly1(p, mp.mpf(x.numerator) / x.denominator)
    assert abs(got - mp.mpf(exact.numerator) / exact.denominator) <= mp.mpf(2) ** -100 * (1 + abs(got))


@given(polys, polys, polys)
def test_ring_laws(p, q, s):
    assert p * (q + s) == p * q + p * s
    assert (p - q) + q == p
    assert (p * q).degree() == (-1 if p.is_zero() or q.is_zero() else p.degree() + q.degree())


@given(polys, polys.filter(lambda q: not q.is_zero()))
def test_divmod(p, q):
    quo, rem = p.divmod(q)
    assert quo * q + rem == p
    assert rem.degree() < q.degree()


def test_pf_examples():
    assert lagrange_pf_coeffs([1, 2]) == [F(-1), F(1)]
    assert lagrange_pf_coeffs([F(7, 3)]) == [F(1)]
    assert lagrange_pf_coeffs([0, 1, -1]) == [F(-1), F(1, 2), F(1, 2)]
    with pytest.raises(DuplicateRoot):
        lagrange_pf_coeffs([1, 1])


@given(st.lists(rats, min_size=1, max_size=5, unique=True))
def test_pf_recombines_to_one_over_product(roots):
    num, den = recombine_partial_fractions(roots, lagrange_pf_coeffs(roots))
    assert num == Poly1([1])
    assert den == Poly1.from_roots(roots)


def test_parse_rat():
    assert parse_rat("3/4") == F(3, 4)
    assert parse_rat(" -2 ") == F(-2)
    assert parse_rat("0.25") == F(1, 4)
    with pytest.raises(TypeError):
        parse_rat(0.5)


def test_compose_and_json():
    p = Poly1([1, 2, 3])
    assert p.compose_linear(-1, 0) == Poly1([1, -2, 3])
    assert Poly1.from_json(p.to_json()) == p
    q = Poly2({(1, 0): "1/2", (0, 2): -3})
    assert Poly2.from_json(q.to_json()) == q
    assert q.degree() == 2 and q.swap().terms == {(0, 1): F(1, 2), (2, 0): F(-3)}
