"""Acceptance criteria. Arithmetic is exact, so every tolerance is zero.

A summary line per criterion is printed at the end of the pytest run.
"""

import json
import random
import time
from fractions import Fraction
from pathlib import Path

import pytest

from intforms import fixtures, linalg
from intforms.algebra import primitive_normalize
from intforms.cli import main
from intforms.exterior import PForm, ext_d, linear_pullback, pullback, wedge
from intforms.formspace import (
    FormSpace,
    curve_in_iw,
    curve_is_rnc,
    eval_quadrics,
    general_position,
    is_integrable,
    iw_quadrics,
    rn_dd_stats,
)
from intforms.gv import GVSequence, fixture_sequences, high_wedge_obstruction, is_gv_sequence, span_rank
from intforms.lie import LieAlgebra, check_jacobi, heisenberg, is_integrable_covector, lie_iw, sl2
from intforms.steiner import PointsPW, PreconditionError, parameter_of_point, same_point, steiner_rnc
from strategies import random_form, random_point

FIXDIR = Path(fixtures.__file__).parent / "fixtures"
CONIC = ((0, 0, 1), (0, -1, 0), (1, 0, 0))  # 2xz - y^2 as a symmetric matrix


def criterion(number, title):
    return pytest.mark.criterion(number, title)


def same_quadric(m, ref) -> bool:
    flat = [x for row in m for x in row]
    ref_flat = [Fraction(x) for row in ref for x in row]
    return primitive_normalize(flat) == primitive_normalize(ref_flat) or primitive_normalize(
        [-x for x in flat]) == primitive_normalize(ref_flat)


# -- 1 -------------------------------------------------------------------------------


@criterion(1, "sl(2) conic 2xz - y^2 from the lie subcommand")
def test_sl2_conic(capsys):
    start = time.perf_counter()
    code = main(["lie", "--input", str(FIXDIR / "sl2.form"), "--json"])
    elapsed = time.perf_counter() - start
    report = json.loads(capsys.readouterr().out)["report"]
    assert code == 0
    (system,) = [r["value"] for r in report["results"] if r["query"] == "lie_iw"]
    assert len(system["quadrics"]) == 1
    matrix = [[Fraction(x) for x in row] for row in system["quadrics"][0]["matrix"]]
    assert same_quadric(matrix, CONIC)
    assert system["polynomials"] == ["2*l0*l2 - l1^2"]
    assert elapsed < 1


# -- 2 -------------------------------------------------------------------------------


def check_family(forms, witness, space, n):
    for w in forms[1:n + 1]:
        assert is_integrable(w)
    assert is_integrable(forms[n + 1])  # sum over i = 0..n
    assert is_integrable(forms[n + 2])
    assert not is_integrable(witness)
    coords = [space.coordinates(w) for w in forms]
    P = PointsPW(coords)
    curve = steiner_rnc(P)
    assert curve_in_iw(space, curve)
    report = curve_is_rnc(curve)
    assert report.is_rnc and report.degree == n and report.span_dim == n
    return curve


@criterion(2, "rational normal curve family, n = 2..5")
@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_family(n):
    start = time.perf_counter()
    fam = fixtures.rnc_family(n)
    check_family(fam.forms, fam.witness, fam.space, n)
    assert time.perf_counter() - start < 30


# -- 3 -------------------------------------------------------------------------------


def check_through(P, curve):
    n = P.n
    assert curve.degree == n
    for i in range(1, n + 1):
        assert same_point(curve(*parameter_of_point(P, i)), P[i])
    for (s, t), k in (((0, 1), n + 1), ((1, 0), n + 2), ((1, 1), n + 3)):
        assert same_point(curve(s, t), P[k])


def random_configuration(rng, n):
    while True:
        pts = [[rng.randint(-5, 5) for _ in range(n + 1)] for _ in range(n + 3)]
        try:
            return PointsPW(pts)
        except PreconditionError:
            continue


@criterion(3, "Steiner construction: conic and 50 random configurations")
def test_steiner():
    start = time.perf_counter()
    P = PointsPW(fixtures.CONIC_POINTS)
    curve = steiner_rnc(P)
    x, y, z = curve.components
    assert (y * y - x * z).is_zero()
    check_through(P, curve)
    rng = random.Random(20240301)
    for k in range(50):
        n = 1 + k % 5
        P = random_configuration(rng, n)
        check_through(P, steiner_rnc(P))
    assert time.perf_counter() - start < 60


# -- 4 -------------------------------------------------------------------------------


def oracle_mismatches(space_or_alg, rng, count=200):
    if isinstance(space_or_alg, LieAlgebra):
        system, dim = lie_iw(space_or_alg), space_or_alg.dim
        direct = lambda lam: is_integrable_covector(space_or_alg, lam)  # noqa: E731
    else:
        system, dim = iw_quadrics(space_or_alg), space_or_alg.dim
        direct = lambda lam: is_integrable(space_or_alg.member(lam))  # noqa: E731
    bad = 0
    for _ in range(count):
        lam = random_point(rng, dim)
        if direct(lam) != all(v == 0 for v in eval_quadrics(system, lam)):
            bad += 1
    return bad


def on_locus_mismatches(space, curve, rng, count=50):
    system = iw_quadrics(space)
    bad = 0
    for _ in range(count):
        lam = curve(rng.randint(-5, 5), rng.randint(1, 5))
        if is_integrable(space.member(lam)) != all(v == 0 for v in eval_quadrics(system, lam)):
            bad += 1
        if not is_integrable(space.member(lam)):
            bad += 1
    return bad


@criterion(4, "quadric oracle agrees with the Frobenius test")
def test_oracle_equivalence():
    rng = random.Random(4)
    fam = fixtures.rnc_family(3)
    assert oracle_mismatches(fam.space, rng) == 0
    assert oracle_mismatches(sl2(), rng) == 0
    assert oracle_mismatches(heisenberg(), rng) == 0
    # random points almost never land on I_W, so also sample the locus itself
    curve = steiner_rnc(PointsPW([fam.space.coordinates(w) for w in fam.forms]))
    assert on_locus_mismatches(fam.space, curve, rng) == 0
    for _ in range(50):
        u = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        on_conic = [2, 2 * u, u * u]
        assert is_integrable_covector(sl2(), on_conic)
        assert all(v == 0 for v in eval_quadrics(lie_iw(sl2()), on_conic))
        on_line = [u, rng.randint(-5, 5), 0]
        if any(on_line):
            assert is_integrable_covector(heisenberg(), on_line)
            assert all(v == 0 for v in eval_quadrics(lie_iw(heisenberg()), on_line))


# -- 5 -------------------------------------------------------------------------------

CASES = 500


def _forms(rng, nv=3):
    return random_form(rng, nv, rng.randint(0, 2)), random_form(rng, nv, rng.randint(0, 2))


@criterion(5, "exterior calculus laws, 500 cases each")
def test_exterior_laws():
    rng = random.Random(5)
    fails = {"dd": 0, "leibniz": 0, "sign": 0, "naturality": 0}
    for _ in range(CASES):
        a, _ = _forms(rng)
        if not ext_d(ext_d(a)).is_zero():
            fails["dd"] += 1
    for _ in range(CASES):
        a, b = _forms(rng)
        sign = -1 if a.degree % 2 else 1
        if ext_d(wedge(a, b)) != wedge(ext_d(a), b) + wedge(a, ext_d(b)) * sign:
            fails["leibniz"] += 1
    for _ in range(CASES):
        a, b = _forms(rng)
        if wedge(a, b) != wedge(b, a) * (-1) ** (a.degree * b.degree):
            fails["sign"] += 1
    for _ in range(CASES):
        a, _ = _forms(rng)
        subs = [random_form(rng, 3, 1, terms=2).coefficient((k,)) for k in range(3)]
        if ext_d(pullback(a, subs)) != pullback(ext_d(a), subs):
            fails["naturality"] += 1
    assert fails == {"dd": 0, "leibniz": 0, "sign": 0, "naturality": 0}


# -- 6 -------------------------------------------------------------------------------


@criterion(6, "Godbillon-Vey sequences and the high-order obstruction")
def test_godbillon_vey():
    dx0, dx1 = PForm.dx(2, 0), PForm.dx(2, 1)
    assert is_gv_sequence(GVSequence([dx0, dx0]))
    assert not is_gv_sequence(GVSequence([dx0, dx1]))
    seqs = fixture_sequences(random.Random(6), changes=5)
    accepted = [s for s in seqs if is_gv_sequence(s) and s.i0 > 2]
    assert accepted
    for seq in accepted:
        assert high_wedge_obstruction(seq)
        assert span_rank(seq) <= 3


# -- 7 -------------------------------------------------------------------------------

CHANGES = 10


@criterion(7, "verdicts of criteria 1-4 survive 10 random linear changes of coordinates")
def test_coordinate_invariance_lie():
    rng = random.Random(71)
    base = lie_iw(sl2()).matrices[0]
    for _ in range(CHANGES):
        m = linalg.random_invertible(3, rng)
        alg = sl2().change_basis(m)
        assert check_jacobi(alg)
        system = lie_iw(alg)
        assert len(system) == 1
        inv = linalg.inverse(m)
        assert same_quadric(system.matrices[0], linalg.matmul(inv, linalg.matmul(base, linalg.transpose(inv))))
        assert oracle_mismatches(alg, rng, count=20) == 0
        heis = heisenberg().change_basis(m)
        assert len(lie_iw(heis)) == 1 and oracle_mismatches(heis, rng, count=20) == 0


@criterion(7, "verdicts of criteria 1-4 survive 10 random linear changes of coordinates")
@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_coordinate_invariance_family(n):
    rng = random.Random(72 + n)
    fam = fixtures.rnc_family(n)
    for _ in range(CHANGES):
        m = linalg.random_invertible(n + 1, rng)
        forms = [linear_pullback(w, m) for w in fam.forms]
        space = FormSpace(forms[:n + 1])
        check_family(forms, linear_pullback(fam.witness, m), space, n)
        if n == 3:
            assert oracle_mismatches(space, rng, count=20) == 0


@criterion(7, "verdicts of criteria 1-4 survive 10 random linear changes of coordinates")
def test_coordinate_invariance_steiner():
    rng = random.Random(73)
    for _ in range(CHANGES):
        m = linalg.random_invertible(3, rng)
        pts = [linalg.matvec(m, p) for p in fixtures.CONIC_POINTS]
        assert general_position(pts)
        P = PointsPW(pts)
        curve = steiner_rnc(P)
        check_through(P, curve)
        inv = linalg.inverse(m)
        x, y, z = curve.transform(inv).components
        assert (y * y - x * z).is_zero()


# -- 8 -------------------------------------------------------------------------------


@criterion(8, "R_n(d,d): degree outgrows codimension for n = 3, d = 1..5")
def test_stats_gap():
    stats = [rn_dd_stats(3, d) for d in range(1, 6)]
    assert [s.codimension for s in stats] == [1, 28, 103, 248, 485]
    ratios = [Fraction(s.degree, s.codimension) for s in stats]
    assert all(a < b for a, b in zip(ratios, ratios[1:]))
