import random
import warnings
from itertools import combinations

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from intforms.algebra import BiForm, MPoly
from intforms.exterior import PForm
from intforms.fixtures import rnc_family
from intforms.formspace import (
    CurveParam,
    FormSpace,
    QuadricSystem,
    curve_in_iw,
    curve_is_rnc,
    eval_quadrics,
    general_position,
    is_integrable,
    iw_quadrics,
    n_k,
    rank,
    rn_dd_stats,
)
from strategies import random_form, random_point
from test_algebra import X, to_sympy

x0, x1, x2 = MPoly.gens(3)
dx0, dx1, dx2 = (PForm.dx(3, i) for i in range(3))


def sympy_iw_span(space):
    """Span of the I_W quadrics computed from scratch with sympy (symbolic lambda)."""
    n, m = space.nvars, space.dim
    xs, lam = X[:n], sp.symbols(f"l0:{m}")
    a = [sp.expand(sum(lam[j] * to_sympy(space.basis[j].coefficient((i,)).extend(3)) for j in range(m)))
         for i in range(n)]
    eqs = []
    for i, j, k in combinations(range(n), 3):
        def dcoef(p, q):
            return sp.diff(a[q], xs[p]) - sp.diff(a[p], xs[q])
        expr = a[i] * dcoef(j, k) - a[j] * dcoef(i, k) + a[k] * dcoef(i, j)
        eqs.extend(sp.Poly(sp.expand(expr), *xs).coeffs())
    monos = [lam[i] * lam[j] for i in range(m) for j in range(i, m)]
    rows = [[sp.Poly(e, *lam).coeff_monomial(mo) for mo in monos] for e in eqs]
    return sp.Matrix(rows) if rows else sp.zeros(0, len(monos)), monos, lam


def our_span(space, monos, lam):
    system = iw_quadrics(space)
    rows = []
    for k in range(len(system)):
        expr = system.format(k, [str(l) for l in lam])
        poly = sp.Poly(sp.sympify(expr.replace("^", "**")), *lam)
        rows.append([poly.coeff_monomial(mo) for mo in monos])
    return sp.Matrix(rows) if rows else sp.zeros(0, len(monos))


def same_rowspace(a, b):
    if a.rows == 0 or b.rows == 0:
        return a.rank() == b.rank() == 0
    return a.rank() == b.rank() == a.col_join(b).rank()


def test_iw_quadrics_match_sympy_on_family():
    space = rnc_family(2).space
    ref, monos, lam = sympy_iw_span(space)
    assert same_rowspace(ref, our_span(space, monos, lam))


def test_iw_quadrics_match_sympy_on_random_spaces():
    rng = random.Random(11)
    for _ in range(15):
        try:
            space = FormSpace([random_form(rng, 3, 1) for _ in range(3)])
        except ValueError:
            continue
        ref, monos, lam = sympy_iw_span(space)
        assert same_rowspace(ref, our_span(space, monos, lam))


def test_integrability_examples():
    assert is_integrable(dx0)
    assert is_integrable(dx0 * x1)
    assert not is_integrable(dx2 + dx1 * x0)
    with pytest.raises(ValueError):
        is_integrable(dx0.wedge(dx1))


def test_rank():
    assert rank(FormSpace([dx0, dx0 * x1])) == 1
    assert rank(FormSpace([dx0, dx1, dx2])) == 3
    for n in (2, 3):
        assert rank(rnc_family(n).space) == n + 1


def test_dependent_basis_rejected():
    with pytest.raises(ValueError):
        FormSpace([dx0, dx0 * 2])


def test_member_and_coordinates_round_trip():
    space = rnc_family(3).space
    rng = random.Random(5)
    for _ in range(20):
        lam = random_point(rng, space.dim)
        assert space.coordinates(space.member(lam)) == lam
    with pytest.raises(ValueError):
        rnc_family(2).space.coordinates(dx1 * x1)


def test_quadric_system_json_round_trip():
    system = iw_quadrics(rnc_family(2).space)
    assert QuadricSystem.from_json(system.to_json()) == system


@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=1, max_size=5))
def test_general_position_matches_minors(points):
    if any(not any(p) for p in points):
        with pytest.raises(ValueError):
            general_position(points)
        return
    r = min(len(points), 3)
    expected = all(sp.Matrix([points[i] for i in sub]).rank() == r for sub in combinations(range(len(points)), r))
    assert general_position(points) == expected


def test_curve_param_reduces_common_factor():
    common = BiForm.linear(1, 1)
    c = CurveParam([common * BiForm([1, 0]), common * BiForm([0, 1])])
    assert c.degree == 1
    assert c == CurveParam([BiForm([2, 0]), BiForm([0, 2])])
    assert CurveParam.from_json(c.to_json()) == c


def test_curve_is_rnc():
    twisted = CurveParam([BiForm.monomial(3, k) for k in range(4)])
    assert curve_is_rnc(twisted) == (3, 3, True, True)
    plane_cubic = CurveParam([BiForm.monomial(3, 0), BiForm.monomial(3, 1), BiForm.monomial(3, 3)])
    rep = curve_is_rnc(plane_cubic)
    assert rep.span_dim == 2 and rep.degree == 3 and not rep.is_rnc


def test_double_cover_warns():
    conic_twice = CurveParam([BiForm.monomial(2, 0), BiForm.monomial(2, 2)])
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        rep = curve_is_rnc(conic_twice)
    assert not rep.generically_injective
    assert caught


def test_curve_in_iw_agrees_with_pointwise_integrability():
    space = FormSpace([dx0, dx1, dx2 * x0])
    line = CurveParam([BiForm([1, 0]), BiForm([0, 1]), BiForm([0, 0])])
    assert curve_in_iw(space, line)
    bad = CurveParam([BiForm([0, 1]), BiForm([1, 0]), BiForm([1, 0])])
    assert not curve_in_iw(space, bad)
    assert not is_integrable(space.member(bad(1, 0)))


def test_eval_quadrics_on_a_known_space():
    space = FormSpace([dx0, dx1, dx2 * x0])
    system = iw_quadrics(space)
    assert all(v == 0 for v in eval_quadrics(system, [1, 0, 0]))
    assert any(v != 0 for v in eval_quadrics(system, [0, 1, 1]))


# frozen from an independent evaluation of the binomial formulas
STATS_N3 = {
    1: (1, 2),
    2: (28, 1430),
    3: (103, 477638700),
    4: (248, 212336130412243110),
    5: (485, 451959718027953471447609509424),
}


def test_stats_frozen_values():
    assert n_k(3, 2) == 9
    for d, expected in STATS_N3.items():
        assert tuple(rn_dd_stats(3, d)) == expected


@given(st.integers(3, 7), st.integers(1, 4))
def test_stats_against_sympy(n, d):
    N = lambda k: sp.binomial(n + k, k) - 1  # noqa: E731
    codim = (n + 1) * N(2 * d - 1) - N(2 * d) + n - 1 - (2 * N(d) - 2)
    got = rn_dd_stats(n, d)
    assert got.codimension == codim
    assert got.degree == sp.catalan(N(d) - 1)


def test_stats_range_checks():
    with pytest.raises(ValueError):
        rn_dd_stats(2, 1)
    with pytest.raises(ValueError):
        rn_dd_stats(3, 0)
