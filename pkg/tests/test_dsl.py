from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from intforms import fixtures
from intforms.algebra import MPoly
from intforms.dsl import (
    BinOp,
    Bind,
    DslError,
    ElaborationError,
    LexError,
    ListExpr,
    Name,
    Neg,
    Num,
    ParseError,
    Pow,
    Var,
    format_ast,
    format_expr,
    grammar,
    load,
    parse,
    tokenize,
)
from intforms.exterior import PForm
from intforms.formspace import FormSpace
from intforms.lie import LieAlgebra, sl2

ALL_FIXTURES = fixtures.bundled_names()


# -- round trip ------------------------------------------------------------------


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_pretty_print_is_a_fixed_point(name):
    once = format_ast(parse(fixtures.bundled(name)))
    assert format_ast(parse(once)) == once
    assert parse(once) == parse(fixtures.bundled(name))


leaves = st.one_of(
    st.builds(Num, st.builds(Fraction, st.integers(0, 9), st.integers(1, 4))),
    st.sampled_from([Var("x0"), Var("x1"), Var("x2"), Var("z"), Name("a"), Name("b")]),
)
exprs = st.recursive(
    leaves,
    lambda sub: st.one_of(
        st.builds(BinOp, st.sampled_from(["+", "-", "*", "/\\"]), sub, sub),
        st.builds(Neg, sub),
        st.builds(Pow, sub, st.integers(0, 4)),
        st.builds(lambda xs: ListExpr(tuple(xs)), st.lists(sub, max_size=3)),
    ),
    max_leaves=12,
)


@given(exprs)
def test_random_expressions_round_trip(e):
    text = f"ambient 3;\nq = {format_expr(e)};\n"
    ast = parse(text)
    bind = ast.statements[1]
    assert isinstance(bind, Bind)
    assert bind.expr == e
    assert format_ast(ast) == text


def test_precedence():
    (_, b), = [(None, s) for s in parse("ambient 2; q = -x0^2 + x1 * x0 /\\ x1;").statements[1:]]
    assert b.expr == BinOp("+", Neg(Pow(Var("x0"), 2)), BinOp("/\\", BinOp("*", Var("x1"), Var("x0")), Var("x1")))


# -- elaboration -----------------------------------------------------------------


def test_family_fixture_session():
    session = load(fixtures.bundled("rnc_family_n2.form"))
    spaces = [v for v in session.bindings.values() if isinstance(v, FormSpace)]
    assert len(spaces) == 1 and spaces[0].dim == 3
    assert [q.op for q in session.queries] == ["verify_veronese_web"]
    assert session.queries[0].expect is True


def test_sl2_fixture_session():
    session = load(fixtures.bundled("sl2.form"))
    L = session.bindings["L"]
    assert isinstance(L, LieAlgebra) and L.brackets == sl2().brackets
    assert "lie_iw" in [q.op for q in session.queries]


def test_values():
    s = load("ambient 2; f = 1/2*x0^2 - x1; w = f*d(x1); v = d(f); t = d(x0) /\\ d(x1);")
    x0, x1 = MPoly.gens(2)
    assert s.bindings["f"] == x0 * x0 * Fraction(1, 2) - x1
    assert s.bindings["v"] == PForm.dx(2, 0) * x0 - PForm.dx(2, 1)
    assert s.bindings["t"].degree == 2


def test_z_extends_the_ring():
    s = load("ambient 2; w = d(z) + z*d(x0);")
    assert s.nvars == 3
    assert s.bindings["w"].nvars == 3


def test_generated_family_scenarios_load():
    for n in (2, 3):
        s = load(fixtures.rnc_family_source(n))
        assert all(q.expect is not None for q in s.queries)


# -- diagnostics -----------------------------------------------------------------


BAD = [
    ("ambient 2;\nw = x0*d(x1;\n", ParseError, 2, 12),
    ("ambient 2;\nq = x5;\n", ParseError, 2, 5),
    ("ambient 2;\nq = 3 $ 4;\n", LexError, 2, 7),
    ("ambient 2;\nq = 12abc;\n", LexError, 2, 5),
    ("ambient 2;\nq = 1/0;\n", ParseError, 2, 7),
    ("q = 1;\nambient 2;\n", ParseError, 2, 1),
    ("ambient 2;\nambient 3;\n", ParseError, 2, 1),
    ("ambient 2;\nq = 1;\nq = 2;\n", ParseError, 3, 1),
    ("ambient 2;\nd = 1;\n", ParseError, 2, 1),
    ("ambient 2;\nx0 = 1;\n", ParseError, 2, 1),
    ("ambient 2;\nq = x0*x1;\nquery rank(q);\n", ElaborationError, 3, 1),
    ("ambient 2;\nq = r + 1;\n", ElaborationError, 2, 5),
    ("ambient 2;\nq = d(x0) * d(x1);\n", ElaborationError, 2, 11),
    ("ambient 2;\nq = d(x0) + x1;\n", ElaborationError, 2, 11),
    ("ambient 2;\nq = space(d(x0), 2*d(x0));\n", ElaborationError, 2, 5),
    ("ambient 2;\nquery nonsense(1);\n", ElaborationError, 2, 1),
    ("ambient 2;\nq = frob(1);\n", ElaborationError, 2, 5),
    ("ambient 2;\nq = x0^300;\n", ElaborationError, 2, 7),
    ("ambient 0;\nL = algebra(2, bracket(0, 1, [1, 0]), bracket(0, 1, [0, 1]));\n", ElaborationError, 2, 5),
    ("ambient 0;\nP = points([1, 0], [0, 1], [1, 1], [2, 2]);\n", ElaborationError, 2, 5),
]


@pytest.mark.parametrize("source,kind,line,col", BAD)
def test_diagnostics_carry_locations(source, kind, line, col):
    with pytest.raises(kind) as info:
        load(source)
    err = info.value
    assert (err.line, err.col) == (line, col)
    lines = source.split("\n")
    assert 1 <= err.line <= len(lines)
    assert 1 <= err.col <= len(lines[err.line - 1]) + 1


def test_expected_tokens_are_reported():
    with pytest.raises(ParseError) as info:
        parse("ambient 2;\nw = ;")
    assert info.value.expected == ("expression",)
    assert "expected expression" in str(info.value)


# -- fuzzing ---------------------------------------------------------------------

VOCAB = ["ambient", "query", "expect", "true", "false", "2", "1", "0", "x0", "x1", "z", "w", "d", "space",
         "points", "algebra", "bracket", "rank", "is_integrable", "(", ")", "[", "]", ",", ";", "=", "+", "-",
         "*", "/", "^", "/\\", "#", "\n", "@", "3/4"]


@given(st.lists(st.sampled_from(VOCAB), max_size=40))
def test_fuzzed_token_streams_never_crash(tokens):
    source = " ".join(tokens)
    try:
        load(source)
    except DslError as err:
        assert err.line >= 1 and err.col >= 1


@given(st.text(max_size=60))
def test_fuzzed_text_never_crashes(source):
    try:
        tokenize(source)
        load(source)
    except DslError as err:
        assert err.line >= 1 and err.col >= 1


def test_grammar_ships():
    text = grammar()
    assert "statement" in text and "expect" in text
