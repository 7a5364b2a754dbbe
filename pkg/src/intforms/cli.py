"""Command-line front end.

Exit status: 0 when every verdict is as expected, 1 when some verdict is false
(or contradicts an ``expect`` clause), 2 on bad input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import __version__, fixtures
from .dsl import DslError, Query, Session, load
from .formspace import FormSpace
from .gv import GVSequence, NotGVError
from .lie import JacobiError, LieAlgebra
from .queries import QUERIES
from .steiner import PointsPW, PreconditionError

SCHEMA = "intforms.report/1"

DEMOS = {
    "sl2-conic": "sl2.form",
    "heisenberg": "heisenberg.form",
    "steiner-conic": "steiner_conic.form",
    "gv-sequences": "gv_sequences.form",
    "rnc-family": None,
}
DEMO_ALIASES = {"paper-4.1": "sl2-conic", "paper-4.2": "gv-sequences", "paper-4.3": "rnc-family"}


class InputError(Exception):
    pass


def run_query(q: Query) -> dict:
    spec = QUERIES[q.op]
    entry = {"query": q.op, "args": list(q.arg_text), "line": q.line}
    try:
        out = spec.run(*q.args)
    except (PreconditionError, NotGVError, JacobiError, ValueError) as exc:
        entry.update(kind="error", value=str(exc), verdict=None, ok=False, error=True)
        return entry
    entry.update(kind=out.kind, value=out.value, verdict=out.verdict)
    if q.expect is not None:
        entry["expected"] = q.expect
        if isinstance(q.expect, bool):
            entry["ok"] = out.verdict is q.expect
        else:
            entry["ok"] = out.verdict == q.expect and not isinstance(out.verdict, bool)
    else:
        entry["ok"] = out.verdict is not False
    return entry


def run_session(session: Session) -> list[dict]:
    return [run_query(q) for q in session.queries]


def _synthetic(op: str, args: tuple, text: str) -> Query:
    return Query(op, args, (text,), None, 0, 0)


def _bindings(session: Session, kind, name: str | None) -> list[tuple[str, object]]:
    items = [(k, v) for k, v in session.bindings.items() if isinstance(v, kind)]
    if name is not None:
        items = [(k, v) for k, v in items if k == name]
        if not items:
            raise InputError(f"no binding named {name!r} of the required type")
    if not items:
        raise InputError(f"input defines no {kind.__name__} binding")
    return items


def _read_input(path: str | None) -> str:
    if path is None:
        raise InputError("--input FILE is required for this command")
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _lie_from_json(text: str) -> Session:
    try:
        alg = LieAlgebra.from_json(json.loads(text))
    except (ValueError, KeyError, TypeError, IndexError) as exc:
        raise InputError(f"invalid structure-constant JSON: {exc}") from exc
    return Session(0, 0, {"L": alg}, [])


def build_results(args) -> tuple[str, list[dict]]:
    """Return ``(input_text, results)`` for a parsed command line."""
    cmd = args.command
    if cmd == "stats":
        text = f"stats n={args.n} d={args.d}"
        q = _synthetic("stats", (Fraction(args.n), Fraction(args.d)), f"{args.n}, {args.d}")
        return text, [run_query(q)]
    if cmd == "demo":
        name = DEMO_ALIASES.get(args.name, args.name)
        if name not in DEMOS:
            raise InputError(f"unknown demo {args.name!r}; choose from {', '.join(sorted(DEMOS))}")
        if name == "rnc-family":
            if args.n < 2:
                raise InputError("--n must be at least 2")
            text = fixtures.rnc_family_source(args.n)
        else:
            text = fixtures.bundled(DEMOS[name])
        return text, run_session(load(text))

    text = _read_input(args.input)
    if cmd == "lie" and args.input.endswith(".json"):
        session = _lie_from_json(text)
    else:
        session = load(text)
    name = getattr(args, "name", None)

    if cmd == "check":
        return text, run_session(session)
    if cmd == "veronese-web":
        qs = [q for q in session.queries if q.op == "verify_veronese_web"]
        if not qs:
            raise InputError("input has no verify_veronese_web query")
        return text, [run_query(q) for q in qs]
    results = []
    if cmd in ("rank", "quadrics"):
        op = "rank" if cmd == "rank" else "quadrics"
        for k, v in _bindings(session, FormSpace, name):
            results.append(run_query(_synthetic(op, (v,), k)))
    elif cmd == "steiner":
        for k, v in _bindings(session, PointsPW, name):
            results.append(run_query(_synthetic("steiner", (v,), k)))
    elif cmd == "lie":
        for k, v in _bindings(session, LieAlgebra, name):
            jac = run_query(_synthetic("check_jacobi", (v,), k))
            results.append(jac)
            if jac["verdict"]:
                results.append(run_query(_synthetic("lie_iw", (v,), k)))
    elif cmd == "gv":
        for k, v in _bindings(session, GVSequence, name):
            res = run_query(_synthetic("is_gv_sequence", (v,), k))
            results.append(res)
            if res["verdict"]:
                results.append(run_query(_synthetic("high_wedge_obstruction", (v,), k)))
                try:
                    FormSpace(v.forms)
                except ValueError:
                    continue
                results.append(run_query(_synthetic("gv_curve", (v,), k)))
    return text, results


def report_schema() -> dict:
    """The JSON schema every ``--json`` report validates against."""
    text = resources.files(__package__).joinpath("report.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def make_report(command: str, text: str, results: list[dict]) -> dict:
    return {
        "schema": SCHEMA,
        "tool": "intforms",
        "version": __version__,
        "command": command,
        "input_digest": "sha256:" + hashlib.sha256(text.encode("utf-8")).hexdigest(),
        "results": results,
        "ok": all(r["ok"] for r in results),
    }


def render_text(report: dict) -> str:
    lines = [f"intforms {report['version']} {report['command']}"]
    for r in report["results"]:
        mark = "ok" if r["ok"] else ("ERROR" if r.get("error") else "FAIL")
        head = f"[{mark}] {r['query']}({', '.join(r['args'])})"
        if r["kind"] == "bool":
            lines.append(f"{head} -> {'true' if r['value'] else 'false'}")
        elif r["kind"] in ("int", "text", "error"):
            lines.append(f"{head} -> {r['value']}")
        elif r["kind"] == "quadrics":
            q = r["value"]
            lines.append(f"{head} -> {len(q['quadrics'])} quadric(s) in {q['dim']} coordinates")
            for p in q.get("polynomials", []):
                lines.append(f"    {p} = 0")
        elif r["kind"] == "list":
            lines.append(f"{head} -> [{', '.join(str(x) for x in r['value'])}]")
        else:
            fields = ", ".join(f"{k}={v}" for k, v in r["value"].items() if k != "curve")
            lines.append(f"{head} -> {fields}")
            if "curve" in r["value"]:
                lines.append(f"    curve components: {r['value']['curve']['components']}")
    lines.append("all verdicts as expected" if report["ok"] else "some verdicts failed")
    return "\n".join(lines) + "\n"


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="intforms", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"intforms {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def common(sp, needs_input=True):
        sp.add_argument("--json", action="store_true", help="emit a JSON report")
        sp.add_argument("--output", metavar="FILE", help="write the report to FILE")
        if needs_input:
            sp.add_argument("--input", metavar="FILE", help="scenario file (.form)")
        return sp

    common(sub.add_parser("check", help="run every query in a scenario file"))
    for cmd, what in (("rank", "spaces"), ("quadrics", "spaces"), ("steiner", "point sets"),
                      ("lie", "Lie algebras (.form or .json)"), ("gv", "Godbillon-Vey sequences")):
        sp = common(sub.add_parser(cmd, help=f"analyze the {what} bound in a file"))
        sp.add_argument("--name", help="restrict to one binding")
    common(sub.add_parser("veronese-web", help="run the verify_veronese_web queries of a file"))
    sp = common(sub.add_parser("stats", help="codimension and degree of R_n(d,d)"), needs_input=False)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp = common(sub.add_parser("demo", help="run a bundled example"), needs_input=False)
    sp.add_argument("name", help=", ".join(sorted(DEMOS)))
    sp.add_argument("--n", type=int, default=2, help="family size for rnc-family")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    start = time.perf_counter()
    try:
        text, results = build_results(args)
    except (InputError, DslError, PreconditionError, JacobiError) as exc:
        print(f"intforms: error: {exc}", file=sys.stderr)
        return 2
    elapsed = round((time.perf_counter() - start) * 1000, 3)
    report = make_report(args.command, text, results)
    if args.json:
        out = json.dumps({"report": report, "timing_ms": elapsed}, indent=2, sort_keys=True) + "\n"
    else:
        out = render_text(report) + f"({elapsed} ms)\n"
    if args.output:
        try:
            Path(args.output).write_text(out, encoding="utf-8")
        except OSError as exc:
            print(f"intforms: error: cannot write {args.output}: {exc.strerror}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(out)
    errors = [r for r in results if r.get("error")]
    for r in errors:
        print(f"intforms: error: line {r['line']}: {r['query']}: {r['value']}", file=sys.stderr)
    if errors:
        return 2
    return 0 if report["ok"] else 1


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
