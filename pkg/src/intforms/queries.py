"""Query operations available to scenario files, with JSON-ready results."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from . import formspace as fs
from . import gv, lie, steiner
from .exterior import PForm
from .formspace import CurveParam, FormSpace, QuadricSystem, rational_to_json
from .gv import GVSequence
from .lie import LieAlgebra
from .steiner import PointsPW


def _is_vector(v) -> bool:
    return isinstance(v, list) and bool(v) and all(isinstance(x, Fraction) for x in v)


def _is_int(v) -> bool:
    return isinstance(v, Fraction) and v.denominator == 1


KINDS: dict[str, Callable[[Any], bool]] = {
    "1-form": lambda v: isinstance(v, PForm) and v.degree == 1,
    "space": lambda v: isinstance(v, FormSpace),
    "algebra": lambda v: isinstance(v, LieAlgebra),
    "sequence": lambda v: isinstance(v, GVSequence),
    "points": lambda v: isinstance(v, PointsPW),
    "curve": lambda v: isinstance(v, CurveParam),
    "vector": _is_vector,
    "vectors": lambda v: isinstance(v, list) and bool(v) and all(_is_vector(p) for p in v),
    "1-forms": lambda v: isinstance(v, list) and bool(v) and all(isinstance(w, PForm) and w.degree == 1 for w in v),
    "int": _is_int,
}


@dataclass(frozen=True)
class QuerySpec:
    name: str
    signatures: tuple  # alternatives, each a tuple of KINDS keys
    run: Callable


def check_signature(spec: QuerySpec, args: tuple) -> str | None:
    for sig in spec.signatures:
        if len(sig) == len(args) and all(KINDS[k](a) for k, a in zip(sig, args)):
            return None
    from .dsl import type_name

    got = ", ".join(type_name(a) for a in args) or "nothing"
    want = " | ".join("(" + ", ".join(sig) + ")" for sig in spec.signatures)
    return f"expected {want}, got ({got})"


@dataclass
class Outcome:
    """What a query produced: a JSON-ready value and an optional verdict."""

    kind: str
    value: Any
    verdict: Any = None


def _q_is_integrable(*args):
    if len(args) == 1:
        return Outcome("bool", fs.is_integrable(args[0]), fs.is_integrable(args[0]))
    target, lam = args
    if isinstance(target, FormSpace):
        ok = fs.is_integrable(target.member(lam))
    else:
        ok = lie.is_integrable_covector(target, lam)
    return Outcome("bool", ok, ok)


def _q_rank(space):
    r = fs.rank(space)
    return Outcome("int", r, r)


def _system(target) -> QuadricSystem:
    return fs.iw_quadrics(target) if isinstance(target, FormSpace) else lie.lie_iw(target)


def _quadric_record(system: QuadricSystem) -> dict:
    names = [f"l{i}" for i in range(system.dim)]
    data = system.to_json()
    data["polynomials"] = [system.format(k, names) for k in range(len(system))]
    return data


def _q_quadrics(target):
    return Outcome("quadrics", _quadric_record(_system(target)), None)


def _q_eval_quadrics(target, lam):
    vals = fs.eval_quadrics(_system(target), lam)
    return Outcome("list", [rational_to_json(v) for v in vals], all(v == 0 for v in vals))


def _q_general_position(pts):
    ok = fs.general_position(pts)
    return Outcome("bool", ok, ok)


def _curve_record(curve: CurveParam) -> dict:
    rep = fs.curve_is_rnc(curve)
    return {
        "curve": curve.to_json(),
        "span_dim": rep.span_dim,
        "degree": rep.degree,
        "is_rnc": rep.is_rnc,
        "generically_injective": rep.generically_injective,
    }


def _q_steiner(points):
    curve = steiner.steiner_rnc(points)
    rec = _curve_record(curve)
    passes = all(steiner.same_point(curve(*steiner.parameter_of_point(points, i)), points[i])
                 for i in range(1, points.n + 1))
    n = points.n
    passes = passes and all(
        steiner.same_point(curve(s, t), points[k])
        for (s, t), k in (((0, 1), n + 1), ((1, 0), n + 2), ((1, 1), n + 3))
    )
    rec["passes_through_points"] = passes
    return Outcome("record", rec, passes and rec["is_rnc"] and rec["degree"] == n)


def _q_curve_is_rnc(curve):
    rec = _curve_record(curve)
    return Outcome("record", rec, rec["is_rnc"])


def _q_curve_in_iw(space, curve):
    ok = fs.curve_in_iw(space, curve)
    return Outcome("bool", ok, ok)


def _q_veronese_web(space, forms):
    res = steiner.verify_veronese_web(space, forms)
    rec = _curve_record(res.curve)
    rec["contained"] = res.contained
    return Outcome("record", rec, res.contained)


def _q_check_jacobi(alg):
    ok = lie.check_jacobi(alg)
    return Outcome("bool", ok, ok)


def _q_lie_iw(alg):
    return Outcome("quadrics", _quadric_record(lie.lie_iw(alg)), None)


def _q_is_gv(seq):
    ok = gv.is_gv_sequence(seq)
    return Outcome("bool", ok, ok)


def _q_gv_curve(seq):
    rec = _curve_record(gv.gv_curve(seq))
    space = FormSpace(seq.forms)
    rec["contained"] = fs.curve_in_iw(space, gv.gv_curve(seq))
    return Outcome("record", rec, rec["contained"])


def _q_high_wedge(seq):
    ok = gv.high_wedge_obstruction(seq)
    rec = {"obstruction": ok, "span_rank": gv.span_rank(seq), "i0": seq.i0}
    return Outcome("record", rec, ok and (seq.i0 <= 2 or rec["span_rank"] <= 3))


def _q_develop(seq):
    return Outcome("text", str(gv.develop(seq)), None)


def _q_stats(n, d):
    st = fs.rn_dd_stats(int(n), int(d))
    return Outcome("record", {"n": int(n), "d": int(d), "codimension": st.codimension,
                              "degree": str(st.degree)}, None)


QUERIES: dict[str, QuerySpec] = {
    q.name: q
    for q in [
        QuerySpec("is_integrable", (("1-form",), ("space", "vector"), ("algebra", "vector")), _q_is_integrable),
        QuerySpec("rank", (("space",),), _q_rank),
        QuerySpec("quadrics", (("space",), ("algebra",)), _q_quadrics),
        QuerySpec("eval_quadrics", (("space", "vector"), ("algebra", "vector")), _q_eval_quadrics),
        QuerySpec("general_position", (("vectors",),), _q_general_position),
        QuerySpec("steiner", (("points",),), _q_steiner),
        QuerySpec("curve_is_rnc", (("curve",),), _q_curve_is_rnc),
        QuerySpec("curve_in_iw", (("space", "curve"),), _q_curve_in_iw),
        QuerySpec("verify_veronese_web", (("space", "1-forms"),), _q_veronese_web),
        QuerySpec("check_jacobi", (("algebra",),), _q_check_jacobi),
        QuerySpec("lie_iw", (("algebra",),), _q_lie_iw),
        QuerySpec("is_gv_sequence", (("sequence",),), _q_is_gv),
        QuerySpec("gv_curve", (("sequence",),), _q_gv_curve),
        QuerySpec("high_wedge_obstruction", (("sequence",),), _q_high_wedge),
        QuerySpec("develop", (("sequence",),), _q_develop),
        QuerySpec("stats", (("int", "int"),), _q_stats),
    ]
}
