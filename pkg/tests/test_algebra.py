from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from intforms.algebra import BiForm, MPoly, as_rational, biform_gcd, primitive_normalize
from strategies import mpolys, small_rationals

X = sp.symbols("x0:3")
S, T = sp.symbols("s t")


def to_sympy(p: MPoly):
    return sp.expand(sum(sp.Rational(c.numerator, c.denominator) * sp.prod(x**e for x, e in zip(X, exps))
                         for exps, c in p.terms.items()))


def bi_to_sympy(f: BiForm):
    d = f.degree
    return sp.expand(sum(sp.Rational(c.numerator, c.denominator) * S ** (d - k) * T**k
                         for k, c in enumerate(f.coeffs)))


def test_as_rational_rejects_floats_and_bools():
    with pytest.raises(TypeError):
        as_rational(0.5)
    with pytest.raises(TypeError):
        as_rational(True)
    assert as_rational("3/6") == Fraction(1, 2)


@given(mpolys(3), mpolys(3))
def test_ring_operations_match_sympy(p, q):
    assert to_sympy(p + q) == sp.expand(to_sympy(p) + to_sympy(q))
    assert to_sympy(p - q) == sp.expand(to_sympy(p) - to_sympy(q))
    assert to_sympy(p * q) == sp.expand(to_sympy(p) * to_sympy(q))


@given(mpolys(3), st.integers(0, 2))
def test_diff_matches_sympy(p, i):
    assert to_sympy(p.diff(i)) == sp.expand(sp.diff(to_sympy(p), X[i]))


@given(mpolys(3), st.lists(small_rationals, min_size=3, max_size=3))
def test_evaluate_matches_sympy(p, pt):
    sub = {x: sp.Rational(v.numerator, v.denominator) for x, v in zip(X, pt)}
    assert p.evaluate(pt) == Fraction(str(to_sympy(p).subs(sub)))


@given(mpolys(3, max_terms=3), st.lists(mpolys(3, max_terms=2), min_size=3, max_size=3))
def test_compose_matches_sympy(p, subs):
    expected = sp.expand(to_sympy(p).subs({x: to_sympy(q) for x, q in zip(X, subs)}, simultaneous=True))
    assert to_sympy(p.compose(subs)) == expected


@given(mpolys(2), st.integers(0, 3))
def test_power_is_repeated_product(p, k):
    acc = MPoly.const(2, 1)
    for _ in range(k):
        acc = acc * p
    assert p**k == acc


def test_grlex_items_and_str():
    x0, x1 = MPoly.gens(2)
    p = x0 * x1 * 2 - x1 * x1 + 1
    assert [e for e, _ in p.items()] == [(1, 1), (0, 2), (0, 0)]
    assert str(p) == "2*x0*x1 - x1^2 + 1"
    assert p.total_degree() == 2
    assert p == p.extend(2)
    assert MPoly.zero(2) == 0


@given(st.lists(small_rationals, min_size=1, max_size=4), st.lists(small_rationals, min_size=1, max_size=4))
def test_biform_product_and_eval(a, b):
    f, g = BiForm(a), BiForm(b)
    assert bi_to_sympy(f * g) == sp.expand(bi_to_sympy(f) * bi_to_sympy(g))
    assert (f * g)(2, 3) == f(2, 3) * g(2, 3)


@given(st.lists(small_rationals, min_size=2, max_size=4), st.lists(small_rationals, min_size=1, max_size=3),
       st.lists(small_rationals, min_size=1, max_size=3))
def test_biform_gcd_matches_sympy(common, a, b):
    h = BiForm(common)
    if h.is_zero():
        return
    f, g = h * BiForm(a), h * BiForm(b)
    if f.is_zero() or g.is_zero():
        return
    ours = bi_to_sympy(biform_gcd([f, g]))
    theirs = sp.gcd(bi_to_sympy(f), bi_to_sympy(g))
    assert sp.simplify(ours / theirs).is_number


def test_biform_reparameterize():
    f = BiForm([1, 0, -1])  # s^2 - t^2
    g = f.reparameterize(1, 1, 0, 1)  # s -> s + t, t -> t
    assert bi_to_sympy(g) == sp.expand((S + T) ** 2 - T**2)


def test_exact_div_and_multiplicity():
    f = BiForm.linear(1, 2) * BiForm.monomial(2, 2)
    assert f.exact_div(BiForm.linear(1, 2)) == BiForm.monomial(2, 2)
    assert BiForm([0, 0, 1]).s_multiplicity() == 0
    assert BiForm([1, 0, 0]).s_multiplicity() == 2


@given(st.lists(small_rationals, min_size=1, max_size=5), small_rationals)
def test_primitive_normalize_is_projective_invariant(v, c):
    if not any(v) or not c:
        return
    a = primitive_normalize(v)
    assert a == primitive_normalize([x * c for x in v])
    assert all(x.denominator == 1 for x in a)
    assert next(x for x in a if x) > 0


def test_primitive_normalize_rejects_zero():
    with pytest.raises(ValueError):
        primitive_normalize([0, 0])
