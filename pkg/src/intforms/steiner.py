"""Rational normal curves through n+3 general points, and curves of integrable forms.

The curve through ``p_1, ..., p_{n+3}`` in ``P^n`` is traced by intersecting n
pencils of hyperplanes. Pencil ``i`` contains the span of the first ``n``
points other than ``p_i``; it is parameterized so that ``(0:1)``, ``(1:0)`` and
``(1:1)`` give the members through ``p_{n+1}``, ``p_{n+2}`` and ``p_{n+3}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from . import linalg
from .algebra import BiForm, MPoly, as_rational, primitive_normalize
from .exterior import PForm, PVectorField, adjugate_frame, involutivity_defect
from .formspace import CurveParam, FormSpace, curve_in_iw, general_position, is_integrable, rank


class PreconditionError(ValueError):
    """Input violates the hypotheses of a construction.

    ``violations`` lists every failed check, not just the first.
    """

    def __init__(self, violations: Sequence[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class GeneralPositionError(PreconditionError):
    pass


@dataclass(frozen=True)
class PointsPW:
    """``n + 3`` points of ``P^n`` in general position (primitive-normalized)."""

    points: tuple

    def __init__(self, points: Sequence[Sequence]):
        pts = [tuple(as_rational(x) for x in p) for p in points]
        if not pts:
            raise PreconditionError(["no points given"])
        size = len(pts[0])
        if any(len(p) != size for p in pts):
            raise PreconditionError(["points have different lengths"])
        if len(pts) != size + 2:
            raise PreconditionError([f"need {size + 2} points in P^{size - 1}, got {len(pts)}"])
        if any(not any(p) for p in pts):
            raise PreconditionError(["the zero vector is not a projective point"])
        if not general_position(pts):
            raise GeneralPositionError(["points are not in general position"])
        object.__setattr__(self, "points", tuple(primitive_normalize(p) for p in pts))

    @property
    def n(self) -> int:
        return len(self.points[0]) - 1

    def __getitem__(self, k: int) -> tuple:
        """1-based access, ``P[1] .. P[n+3]``."""
        if not 1 <= k <= len(self.points):
            raise IndexError(k)
        return self.points[k - 1]


class PencilPair(NamedTuple):
    F: tuple
    G: tuple

    def member(self, s, t) -> tuple:
        s, t = as_rational(s), as_rational(t)
        return tuple(s * f + t * g for f, g in zip(self.F, self.G))


def _apply(form: Sequence, point: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(form, point)), Fraction(0))


def _kernel_line(rows: list) -> list[Fraction]:
    basis = linalg.nullspace(rows, len(rows[0]))
    if len(basis) != 1:
        raise GeneralPositionError([f"expected a unique hyperplane, kernel has dimension {len(basis)}"])
    return basis[0]


def pencil_for_index(P: PointsPW, i: int) -> PencilPair:
    """The pencil of hyperplanes through ``span(p_1..p_n minus p_i)``, normalized."""
    n = P.n
    if not 1 <= i <= n:
        raise IndexError(f"pencil index must lie in 1..{n}")
    base = [list(P[k]) for k in range(1, n + 1) if k != i]
    G = _kernel_line(base + [list(P[n + 1])])
    F = _kernel_line(base + [list(P[n + 2])])
    a, b = _apply(F, P[n + 3]), _apply(G, P[n + 3])
    if not a or not b:
        raise GeneralPositionError([f"pencil {i} is degenerate at p_{n + 3}"])
    # F(p) + G(p) = 0 at p = p_{n+3}
    F = [x * b for x in F]
    G = [-x * a for x in G]
    joint = primitive_normalize(F + G)
    return PencilPair(tuple(joint[: n + 1]), tuple(joint[n + 1:]))


def steiner_rnc(P: PointsPW) -> CurveParam:
    """Rational normal curve through the ``n + 3`` points.

    Components are the signed maximal minors of the ``n x (n+1)`` matrix with
    rows ``s F_i + t G_i``.
    """
    n = P.n
    if n == 0:
        return CurveParam([BiForm([1])])
    pencils = [pencil_for_index(P, i) for i in range(1, n + 1)]
    rows = [[BiForm.linear(f, g) for f, g in zip(pen.F, pen.G)] for pen in pencils]
    comps = []
    for k in range(n + 1):
        minor = [[row[c] for c in range(n + 1) if c != k] for row in rows]
        m = linalg.det(minor, zero=0, one=BiForm([1]))
        if not isinstance(m, BiForm):
            m = BiForm.zero(n)
        comps.append(m if k % 2 == 0 else -m)
    curve = CurveParam(comps)
    if curve.degree != n:
        raise GeneralPositionError([f"construction degenerated to degree {curve.degree}"])
    return curve


def parameter_of_point(P: PointsPW, i: int) -> tuple[Fraction, Fraction]:
    """The parameter ``(s:t)`` at which the pencil-``i`` member passes through ``p_i``."""
    pen = pencil_for_index(P, i)
    f, g = _apply(pen.F, P[i]), _apply(pen.G, P[i])
    return g, -f


def same_point(p: Sequence, q: Sequence) -> bool:
    """Projective equality of two nonzero vectors."""
    p = [as_rational(x) for x in p]
    q = [as_rational(x) for x in q]
    if not any(p) or not any(q):
        return False
    return all(p[a] * q[b] == p[b] * q[a] for a in range(len(p)) for b in range(a + 1, len(p)))


# -- curves of integrable forms --------------------------------------------------


class WebResult(NamedTuple):
    curve: CurveParam
    contained: bool


def verify_veronese_web(space: FormSpace, forms: Sequence[PForm]) -> WebResult:
    """Steiner curve through ``dim W + 2`` integrable classes, and its containment in I_W.

    Every hypothesis is checked first; all failures are reported together.
    """
    violations = []
    m = space.dim
    if len(forms) != m + 2:
        violations.append(f"need {m + 2} forms for a space of dimension {m}, got {len(forms)}")
    r = rank(space)
    if r != m:
        violations.append(f"rank deficiency: rank {r} < dim {m}")
    coords = []
    for k, w in enumerate(forms):
        try:
            coords.append(space.coordinates(w))
        except ValueError:
            violations.append(f"form {k} is not in the space")
            continue
        if not is_integrable(w):
            violations.append(f"form {k} is not integrable")
    if not violations:
        if not all(any(c) for c in coords):
            violations.append("a zero form was supplied")
        elif not general_position(coords):
            violations.append("classes are not in general position")
    if violations:
        raise PreconditionError(violations)
    if m == 1:
        curve = CurveParam([BiForm([1])])
    else:
        curve = steiner_rnc(PointsPW(coords))
    return WebResult(curve, curve_in_iw(space, curve))


def pencil_frames(space: FormSpace, P: PointsPW) -> list[PVectorField]:
    """Parametric fields ``zeta_i(s,t) = sum_k (s F_i + t G_i)_k v_k``.

    ``v_k`` is the adjugate frame of the basis, so ``zeta_i(s,t)`` is
    annihilated exactly by the forms whose class lies on the hyperplane
    ``H_i(s:t)``. The fields live in ``nvars + 2`` variables, the last two
    being ``s`` and ``t``.
    """
    n = P.n
    if space.dim != space.nvars or space.dim != n + 1:
        raise ValueError("pencil frames need dim W = nvars = n + 1")
    _, frame = adjugate_frame(list(space.basis))
    big = space.nvars + 2
    s = MPoly.var(big, big - 2)
    t = MPoly.var(big, big - 1)
    lifted = [{k: c.extend(big) for k, c in v.comps.items()} for v in frame]
    out = []
    for i in range(1, n + 1):
        pen = pencil_for_index(P, i)
        comps: dict[int, MPoly] = {}
        for k, (f, g) in enumerate(zip(pen.F, pen.G)):
            weight = s * f + t * g
            if weight.is_zero():
                continue
            for d, c in lifted[k].items():
                comps[d] = comps.get(d, MPoly.zero(big)) + c * weight
        out.append(PVectorField(big, comps))
    return out


def web_defects(space: FormSpace, P: PointsPW) -> list[MPoly]:
    """Involutivity defects of the pencil frames, as polynomials in ``(x, s, t)``."""
    return involutivity_defect(pencil_frames(space, P), dim=space.nvars)
