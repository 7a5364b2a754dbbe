"""A small scenario language for forms, spaces, Lie algebras and queries.

Example::

    ambient 3;
    f = 2 + x0 + x1 + x2;
    w = f * d(x1);
    query is_integrable(w) expect true;

Expressions use ``+ -`` < ``/\\`` (wedge) < ``*`` < unary ``-`` < ``^`` (integer
powers). Rationals are written ``p/q``; there are no floating-point literals.
The full grammar ships as ``grammar.ebnf`` next to this module.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Any

from .algebra import BiForm, MPoly
from .exterior import PForm, ext_d, wedge
from .formspace import CurveParam, FormSpace
from .gv import GVSequence, gv_curve
from .lie import LieAlgebra
from .steiner import PointsPW, PreconditionError, steiner_rnc

KEYWORDS = {"ambient", "query", "expect", "true", "false"}


def grammar() -> str:
    return resources.files(__package__).joinpath("grammar.ebnf").read_text(encoding="utf-8")


class DslError(Exception):
    """Diagnostic with a 1-based source location."""

    def __init__(self, message: str, line: int, col: int, expected: tuple = ()):
        self.message = message
        self.line = line
        self.col = col
        self.expected = tuple(expected)
        text = f"{line}:{col}: {message}"
        if expected:
            text += f" (expected {', '.join(expected)})"
        super().__init__(text)


class LexError(DslError):
    pass


class ParseError(DslError):
    pass


class ElaborationError(DslError):
    pass


# -- lexer -------------------------------------------------------------------------

PUNCT = {";", "=", "(", ")", "[", "]", ",", "+", "-", "*", "^", "/"}


@dataclass(frozen=True)
class Token:
    kind: str  # INT, NAME, VAR, punctuation text, "/\\", or EOF
    text: str
    line: int
    col: int


def tokenize(source: str) -> list[Token]:
    tokens = []
    i, line, col = 0, 1, 1
    n = len(source)
    while i < n:
        ch = source[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if ch.isspace():
            i, col = i + 1, col + 1
            continue
        if ch == "#":
            while i < n and source[i] != "\n":
                i += 1
            continue
        start_col = col
        if ch.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            if j < n and (source[j].isalpha() or source[j] == "_"):
                raise LexError(f"malformed number {source[i:j + 1]!r}", line, start_col)
            tokens.append(Token("INT", source[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            word = source[i:j]
            kind = "NAME"
            if word in KEYWORDS:
                kind = word
            elif word == "z" or (word[0] == "x" and word[1:].isdigit()):
                kind = "VAR"
            tokens.append(Token(kind, word, line, start_col))
            col += j - i
            i = j
            continue
        if ch == "/" and i + 1 < n and source[i + 1] == "\\":
            tokens.append(Token("/\\", "/\\", line, start_col))
            i, col = i + 2, col + 2
            continue
        if ch in PUNCT:
            tokens.append(Token(ch, ch, line, start_col))
            i, col = i + 1, col + 1
            continue
        raise LexError(f"unexpected character {ch!r}", line, start_col)
    tokens.append(Token("EOF", "", line, col))
    return tokens


# -- AST -------------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Fraction
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Var:
    name: str
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Name:
    ident: str
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ListExpr:
    items: tuple
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class BinOp:
    op: str
    left: Any
    right: Any
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Neg:
    operand: Any
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Pow:
    base: Any
    exponent: int
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Ambient:
    n: int
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Bind:
    name: str
    expr: Any
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class QueryStmt:
    op: str
    args: tuple
    expect: Any = None  # None, bool or int
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Ast:
    statements: tuple

    @property
    def ambient(self) -> int:
        for s in self.statements:
            if isinstance(s, Ambient):
                return s.n
        return 0


# -- parser ----------------------------------------------------------------------

INFIX = {"+": 10, "-": 10, "/\\": 20, "*": 30}
PREFIX_NEG = 35
POWER = 40
MAX_EXPONENT = 256
EXPR_START = ("INT", "VAR", "NAME", "(", "[", "-")


class Parser:
    def __init__(self, source: str):
        self.tokens = tokenize(source)
        self.pos = 0
        self.ambient: int | None = None
        self.bound: set[str] = set()
        self.started = False

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def expect(self, *kinds: str) -> Token:
        tok = self.peek()
        if tok.kind not in kinds:
            found = "end of input" if tok.kind == "EOF" else repr(tok.text)
            raise ParseError(f"unexpected {found}", tok.line, tok.col, _describe(kinds))
        return self.advance()

    def parse(self) -> Ast:
        stmts = []
        while self.peek().kind != "EOF":
            stmts.append(self.statement())
        return Ast(tuple(stmts))

    def statement(self):
        tok = self.peek()
        if tok.kind == "ambient":
            self.advance()
            if self.ambient is not None:
                raise ParseError("ambient dimension declared twice", tok.line, tok.col)
            if self.started:
                raise ParseError("ambient must come before any binding or query", tok.line, tok.col)
            n = int(self.expect("INT").text)
            self.expect(";")
            self.ambient = n
            return Ambient(n, tok.line, tok.col)
        self.started = True
        if tok.kind == "query":
            self.advance()
            op = self.expect("NAME")
            args = self.arguments()
            expect = None
            if self.peek().kind == "expect":
                self.advance()
                v = self.expect("true", "false", "INT")
                expect = {"true": True, "false": False}.get(v.kind, int(v.text) if v.kind == "INT" else None)
            self.expect(";")
            return QueryStmt(op.text, args, expect, tok.line, tok.col)
        if tok.kind == "NAME":
            name = self.advance()
            self.expect("=")
            if name.text in self.bound:
                raise ParseError(f"duplicate binding {name.text!r}", name.line, name.col)
            if name.text in BUILTINS:
                raise ParseError(f"{name.text!r} is a reserved function name", name.line, name.col)
            expr = self.expression(0)
            self.expect(";")
            self.bound.add(name.text)
            return Bind(name.text, expr, tok.line, tok.col)
        if tok.kind == "VAR":
            raise ParseError(f"cannot bind the coordinate {tok.text!r}", tok.line, tok.col)
        self.expect("ambient", "query", "NAME")

    def arguments(self) -> tuple:
        self.expect("(")
        args = []
        if self.peek().kind != ")":
            args.append(self.expression(0))
            while self.peek().kind == ",":
                self.advance()
                args.append(self.expression(0))
        self.expect(")")
        return tuple(args)

    def expression(self, min_bp: int):
        left = self.prefix()
        while True:
            tok = self.peek()
            if tok.kind == "^":
                if POWER < min_bp:
                    break
                self.advance()
                exp = self.expect("INT")
                left = Pow(left, int(exp.text), tok.line, tok.col)
                continue
            bp = INFIX.get(tok.kind)
            if bp is None or bp <= min_bp:
                break
            self.advance()
            right = self.expression(bp)
            left = BinOp(tok.kind, left, right, tok.line, tok.col)
        return left

    def prefix(self):
        tok = self.peek()
        if tok.kind == "-":
            self.advance()
            return Neg(self.expression(PREFIX_NEG), tok.line, tok.col)
        if tok.kind == "INT":
            self.advance()
            value = Fraction(int(tok.text))
            if self.peek().kind == "/":
                self.advance()
                den = self.expect("INT")
                if int(den.text) == 0:
                    raise ParseError("zero denominator", den.line, den.col)
                value = Fraction(int(tok.text), int(den.text))
            return Num(value, tok.line, tok.col)
        if tok.kind == "VAR":
            self.advance()
            if tok.text != "z":
                idx = int(tok.text[1:])
                if self.ambient is None or idx >= self.ambient:
                    raise ParseError(
                        f"coordinate {tok.text} outside ambient dimension {self.ambient or 0}",
                        tok.line, tok.col,
                    )
            return Var(tok.text, tok.line, tok.col)
        if tok.kind == "NAME":
            self.advance()
            if self.peek().kind == "(":
                return Call(tok.text, self.arguments(), tok.line, tok.col)
            return Name(tok.text, tok.line, tok.col)
        if tok.kind == "(":
            self.advance()
            inner = self.expression(0)
            self.expect(")")
            return inner
        if tok.kind == "[":
            self.advance()
            items = []
            if self.peek().kind != "]":
                items.append(self.expression(0))
                while self.peek().kind == ",":
                    self.advance()
                    items.append(self.expression(0))
            self.expect("]")
            return ListExpr(tuple(items), tok.line, tok.col)
        self.expect(*EXPR_START)


def _describe(kinds) -> tuple:
    names = {"INT": "integer", "NAME": "name", "VAR": "coordinate", "EOF": "end of input"}
    if set(EXPR_START) <= set(kinds):
        return ("expression",)
    return tuple(names.get(k, repr(k)) for k in kinds)


def parse(source: str) -> Ast:
    """Parse scenario text; raises :class:`DslError` with a location on failure."""
    return Parser(source).parse()


# -- pretty printer ----------------------------------------------------------------

_PREC = {"+": 10, "-": 10, "/\\": 20, "*": 30}


def _prec(node) -> int:
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return PREFIX_NEG
    if isinstance(node, Pow):
        return POWER
    if isinstance(node, Num) and node.value.denominator != 1:
        return POWER  # p/q must not be split by a power
    return 100


def format_expr(node) -> str:
    if isinstance(node, Num):
        v = node.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Name):
        return node.ident
    if isinstance(node, Call):
        return f"{node.func}({', '.join(format_expr(a) for a in node.args)})"
    if isinstance(node, ListExpr):
        return f"[{', '.join(format_expr(a) for a in node.items)}]"
    if isinstance(node, Neg):
        inner = format_expr(node.operand)
        if _prec(node.operand) <= PREFIX_NEG:
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(node, Pow):
        base = format_expr(node.base)
        if _prec(node.base) <= POWER:
            base = f"({base})"
        return f"{base}^{node.exponent}"
    if isinstance(node, BinOp):
        p = _PREC[node.op]
        left = format_expr(node.left)
        if _prec(node.left) < p:
            left = f"({left})"
        right = format_expr(node.right)
        if _prec(node.right) <= p:
            right = f"({right})"
        return f"{left} {node.op} {right}"
    raise TypeError(f"not an expression node: {node!r}")


def format_ast(ast: Ast) -> str:
    lines = []
    for s in ast.statements:
        if isinstance(s, Ambient):
            lines.append(f"ambient {s.n};")
        elif isinstance(s, Bind):
            lines.append(f"{s.name} = {format_expr(s.expr)};")
        elif isinstance(s, QueryStmt):
            text = f"query {s.op}({', '.join(format_expr(a) for a in s.args)})"
            if s.expect is not None:
                exp = s.expect if not isinstance(s.expect, bool) else str(s.expect).lower()
                text += f" expect {exp}"
            lines.append(text + ";")
    return "\n".join(lines) + "\n"


# -- elaboration -----------------------------------------------------------------


@dataclass(frozen=True)
class BracketSpec:
    i: int
    j: int
    coeffs: tuple


@dataclass
class Query:
    op: str
    args: tuple
    arg_text: tuple
    expect: Any
    line: int
    col: int


@dataclass
class Session:
    ambient: int
    nvars: int
    bindings: dict
    queries: list


def type_name(v) -> str:
    if isinstance(v, Fraction):
        return "scalar"
    if isinstance(v, MPoly):
        return "polynomial"
    if isinstance(v, PForm):
        return f"{v.degree}-form"
    if isinstance(v, FormSpace):
        return "space"
    if isinstance(v, LieAlgebra):
        return "algebra"
    if isinstance(v, GVSequence):
        return "sequence"
    if isinstance(v, PointsPW):
        return "points"
    if isinstance(v, CurveParam):
        return "curve"
    if isinstance(v, BracketSpec):
        return "bracket"
    if isinstance(v, list):
        return "list"
    return type(v).__name__


def _uses_z(node) -> bool:
    if isinstance(node, Var):
        return node.name == "z"
    for child in _children(node):
        if _uses_z(child):
            return True
    return False


def _children(node):
    if isinstance(node, (BinOp,)):
        return (node.left, node.right)
    if isinstance(node, Neg):
        return (node.operand,)
    if isinstance(node, Pow):
        return (node.base,)
    if isinstance(node, Call):
        return node.args
    if isinstance(node, ListExpr):
        return node.items
    if isinstance(node, Bind):
        return (node.expr,)
    if isinstance(node, QueryStmt):
        return node.args
    return ()


class Elaborator:
    def __init__(self, ast: Ast):
        self.ast = ast
        self.ambient = ast.ambient
        uses_z = any(_uses_z(s) for s in ast.statements)
        # z, when used, is the extra coordinate x_ambient
        self.nvars = self.ambient + (1 if uses_z else 0)
        self.env: dict[str, Any] = {}

    def fail(self, node, message: str):
        raise ElaborationError(message, getattr(node, "line", 0), getattr(node, "col", 0))

    def run(self) -> Session:
        from .queries import QUERIES, check_signature

        queries = []
        for s in self.ast.statements:
            if isinstance(s, Bind):
                self.env[s.name] = self.eval(s.expr)
            elif isinstance(s, QueryStmt):
                spec = QUERIES.get(s.op)
                if spec is None:
                    self.fail(s, f"unknown query {s.op!r}")
                args = tuple(self.eval(a) for a in s.args)
                problem = check_signature(spec, args)
                if problem:
                    self.fail(s, f"{s.op}: {problem}")
                queries.append(Query(s.op, args, tuple(format_expr(a) for a in s.args), s.expect, s.line, s.col))
        return Session(self.ambient, self.nvars, dict(self.env), queries)

    # values are Fraction | MPoly | PForm | FormSpace | LieAlgebra | GVSequence
    # | PointsPW | CurveParam | BracketSpec | list
    def eval(self, node):
        try:
            return self._eval(node)
        except ElaborationError:
            raise
        except (ValueError, TypeError, IndexError, ZeroDivisionError, ArithmeticError) as exc:
            self.fail(node, str(exc))

    def _eval(self, node):
        if isinstance(node, Num):
            return node.value
        if isinstance(node, Var):
            idx = self.ambient if node.name == "z" else int(node.name[1:])
            return MPoly.var(self.nvars, idx)
        if isinstance(node, Name):
            if node.ident not in self.env:
                self.fail(node, f"unbound name {node.ident!r}")
            return self.env[node.ident]
        if isinstance(node, ListExpr):
            return [self.eval(x) for x in node.items]
        if isinstance(node, Neg):
            v = self.eval(node.operand)
            if not isinstance(v, (Fraction, MPoly, PForm)):
                self.fail(node, f"cannot negate a {type_name(v)}")
            return -v
        if isinstance(node, Pow):
            if node.exponent > MAX_EXPONENT:
                self.fail(node, f"exponent {node.exponent} exceeds {MAX_EXPONENT}")
            v = self.eval(node.base)
            if isinstance(v, Fraction):
                return v ** node.exponent
            if isinstance(v, MPoly):
                return v ** node.exponent
            self.fail(node, f"cannot raise a {type_name(v)} to a power")
        if isinstance(node, BinOp):
            return self.binop(node, self.eval(node.left), self.eval(node.right))
        if isinstance(node, Call):
            fn = BUILTINS.get(node.func)
            if fn is None:
                self.fail(node, f"unknown function {node.func!r}")
            return fn(self, node, [self.eval(a) for a in node.args])
        self.fail(node, "not an expression")

    def as_form(self, v):
        if isinstance(v, PForm):
            return v
        if isinstance(v, Fraction):
            v = MPoly.const(self.nvars, v)
        if isinstance(v, MPoly):
            return PForm.function(v)
        return None

    def binop(self, node, a, b):
        op = node.op
        scalarish = (Fraction, MPoly)
        if op in "+-":
            if isinstance(a, scalarish) and isinstance(b, scalarish):
                if isinstance(a, Fraction) and isinstance(b, Fraction):
                    return a + b if op == "+" else a - b
                a = a if isinstance(a, MPoly) else MPoly.const(self.nvars, a)
                return a + b if op == "+" else a - b
            if isinstance(a, PForm) and isinstance(b, PForm):
                if a.degree != b.degree:
                    self.fail(node, f"cannot add a {a.degree}-form and a {b.degree}-form")
                return a + b if op == "+" else a - b
            self.fail(node, f"cannot apply {op!r} to {type_name(a)} and {type_name(b)}")
        if op == "*":
            if isinstance(a, scalarish) and isinstance(b, scalarish):
                return a * b
            if isinstance(a, scalarish) and isinstance(b, PForm):
                return b * a
            if isinstance(a, PForm) and isinstance(b, scalarish):
                return a * b
            if isinstance(a, PForm) and isinstance(b, PForm):
                self.fail(node, "use /\\ to multiply forms")
            self.fail(node, f"cannot multiply {type_name(a)} and {type_name(b)}")
        if op == "/\\":
            fa, fb = self.as_form(a), self.as_form(b)
            if fa is None or fb is None:
                self.fail(node, f"cannot wedge {type_name(a)} and {type_name(b)}")
            return wedge(fa, fb)
        self.fail(node, f"unknown operator {op!r}")


def _b_d(el: Elaborator, node, args):
    if len(args) != 1:
        el.fail(node, "d takes one argument")
    f = el.as_form(args[0])
    if f is None:
        el.fail(node, f"cannot differentiate a {type_name(args[0])}")
    return ext_d(f)


def _b_space(el, node, args):
    forms = args[0] if len(args) == 1 and isinstance(args[0], list) else args
    if not forms or not all(isinstance(w, PForm) and w.degree == 1 for w in forms):
        el.fail(node, "space expects 1-forms")
    return FormSpace(forms)


def _scalars(el, node, v, what: str) -> list[Fraction]:
    if not isinstance(v, list) or not all(isinstance(x, Fraction) for x in v):
        el.fail(node, f"{what} must be a list of rationals")
    return v


def _b_points(el, node, args):
    pts = args[0] if len(args) == 1 and isinstance(args[0], list) and args[0] and isinstance(args[0][0], list) else args
    vecs = [_scalars(el, node, p, "a point") for p in pts]
    try:
        return PointsPW(vecs)
    except PreconditionError as exc:
        el.fail(node, str(exc))


def _int_arg(el, node, v, what) -> int:
    if not isinstance(v, Fraction) or v.denominator != 1:
        el.fail(node, f"{what} must be an integer")
    return int(v)


def _b_bracket(el, node, args):
    if len(args) != 3:
        el.fail(node, "bracket(i, j, [coefficients]) takes three arguments")
    i = _int_arg(el, node, args[0], "bracket index")
    j = _int_arg(el, node, args[1], "bracket index")
    return BracketSpec(i, j, tuple(_scalars(el, node, args[2], "bracket coefficients")))


def _b_algebra(el, node, args):
    if not args:
        el.fail(node, "algebra(dim, bracket(...), ...) needs a dimension")
    dim = _int_arg(el, node, args[0], "algebra dimension")
    table = {}
    for b in args[1:]:
        if not isinstance(b, BracketSpec):
            el.fail(node, f"expected bracket(...), got {type_name(b)}")
        if (b.i, b.j) in table:
            el.fail(node, f"bracket [{b.i},{b.j}] given twice")
        table[(b.i, b.j)] = b.coeffs
    return LieAlgebra(dim, table)


def _b_gvseq(el, node, args):
    forms = args[0] if len(args) == 1 and isinstance(args[0], list) else args
    if not forms or not all(isinstance(w, PForm) and w.degree == 1 for w in forms):
        el.fail(node, "gvseq expects 1-forms")
    return GVSequence(forms)


def _b_steiner(el, node, args):
    if len(args) != 1 or not isinstance(args[0], PointsPW):
        el.fail(node, "steiner expects points")
    return steiner_rnc(args[0])


def _b_gv_curve(el, node, args):
    if len(args) != 1 or not isinstance(args[0], GVSequence):
        el.fail(node, "gv_curve expects a sequence")
    return gv_curve(args[0])


def _b_curve(el, node, args):
    comps = args[0] if len(args) == 1 and isinstance(args[0], list) and args[0] and isinstance(args[0][0], list) else args
    return CurveParam([BiForm(_scalars(el, node, c, "a binary form")) for c in comps])


BUILTINS = {
    "d": _b_d,
    "space": _b_space,
    "points": _b_points,
    "bracket": _b_bracket,
    "algebra": _b_algebra,
    "gvseq": _b_gvseq,
    "steiner": _b_steiner,
    "gv_curve": _b_gv_curve,
    "curve": _b_curve,
}


def elaborate(ast: Ast) -> Session:
    """Evaluate bindings and type-check queries."""
    return Elaborator(ast).run()


def load(source: str) -> Session:
    return elaborate(parse(source))
