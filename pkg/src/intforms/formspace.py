"""Finite-dimensional spaces of 1-forms and their integrability varieties.

For ``W = span(w_0, ..., w_m)`` the integrable classes ``[sum l_i w_i]`` are the
common zeros of quadrics in ``l``: expanding ``w ^ dw`` over the basis gives
``sum_{i,j} l_i l_j w_i ^ dw_j`` and every (3-index, monomial) coefficient is a
quadratic form. :func:`iw_quadrics` returns those forms as symmetric matrices.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple, Sequence

from . import linalg
from .algebra import BiForm, MPoly, as_rational, biform_gcd, format_poly, grlex_key, primitive_normalize
from .exterior import PForm, ext_d, linear_pullback, wedge


class FormSpace:
    """An ordered basis of linearly independent 1-forms."""

    def __init__(self, basis: Sequence[PForm]):
        basis = list(basis)
        if not basis:
            raise ValueError("a form space needs at least one basis form")
        nvars = basis[0].nvars
        for w in basis:
            if not isinstance(w, PForm) or w.degree != 1:
                raise ValueError("basis elements must be 1-forms")
            if w.nvars != nvars:
                raise ValueError("basis forms live in different rings")
        self.nvars = nvars
        self.basis = tuple(basis)
        self._columns = sorted(
            {(k, e) for w in basis for (k,), c in w.items() for e in c.terms},
            key=lambda ke: (ke[0], grlex_key(ke[1])),
        )
        if linalg.rank(self.coefficient_matrix()) != len(basis):
            raise ValueError("basis forms are linearly dependent")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def coefficient_matrix(self) -> list[list[Fraction]]:
        """Rows = basis forms, columns = (dx index, monomial) pairs."""
        return [self._row(w) for w in self.basis]

    def _row(self, w: PForm) -> list[Fraction]:
        return [w.coefficient((k,)).coefficient(e) for k, e in self._columns]

    def member(self, coords: Sequence) -> PForm:
        """The form ``sum_i coords[i] * basis[i]``."""
        if len(coords) != self.dim:
            raise ValueError(f"need {self.dim} coordinates, got {len(coords)}")
        total = PForm.zero(self.nvars, 1)
        for c, w in zip(coords, self.basis):
            c = as_rational(c)
            if c:
                total = total + w * c
        return total

    def coordinates(self, w: PForm) -> list[Fraction]:
        """Coordinates of ``w`` in the basis; raises if ``w`` is not in the space."""
        if w.degree != 1 or w.nvars != self.nvars:
            raise ValueError("not a 1-form in this ring")
        cols = {(k, e) for (k,), c in w.items() for e in c.terms}
        if not cols <= set(self._columns):
            raise ValueError("form is not in the span of the basis")
        a = linalg.transpose(self.coefficient_matrix())
        x = linalg.solve(a, self._row(w))
        if x is None:
            raise ValueError("form is not in the span of the basis")
        return x

    def pullback(self, matrix: Sequence[Sequence]) -> "FormSpace":
        return FormSpace([linear_pullback(w, matrix) for w in self.basis])

    def __repr__(self):
        return f"FormSpace(nvars={self.nvars}, basis=[{', '.join(str(w) for w in self.basis)}])"


def is_integrable(w: PForm) -> bool:
    """Exact Frobenius test ``w ^ dw == 0``."""
    if not isinstance(w, PForm) or w.degree != 1:
        raise ValueError("is_integrable expects a 1-form")
    return wedge(w, ext_d(w)).is_zero()


def rank(space: FormSpace) -> int:
    """Largest ``r`` such that some r-fold wedge of basis forms is nonzero."""
    top = min(space.dim, space.nvars)
    for r in range(top, 0, -1):
        cache: dict[tuple, PForm] = {}

        def prefix(idx: tuple) -> PForm:
            if idx not in cache:
                cache[idx] = space.basis[idx[0]] if len(idx) == 1 else wedge(prefix(idx[:-1]), space.basis[idx[-1]])
            return cache[idx]

        for subset in combinations(range(space.dim), r):
            if not prefix(subset).is_zero():
                return r
    return 0


class Label(NamedTuple):
    form_indices: tuple
    monomial: tuple


@dataclass(frozen=True)
class QuadricSystem:
    """Quadratic forms in the coordinates of ``P(W)``.

    ``entries`` holds ``(Label, matrix)`` pairs; matrices are symmetric tuples of
    tuples of Fractions, pairwise non-proportional.
    """

    dim: int
    entries: tuple

    def __len__(self):
        return len(self.entries)

    @property
    def matrices(self) -> list:
        return [m for _, m in self.entries]

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "quadrics": [
                {
                    "label": {"form_indices": list(lab.form_indices), "monomial": list(lab.monomial)},
                    "matrix": [[rational_to_json(x) for x in row] for row in m],
                }
                for lab, m in self.entries
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "QuadricSystem":
        entries = []
        for q in data["quadrics"]:
            lab = Label(tuple(q["label"]["form_indices"]), tuple(q["label"]["monomial"]))
            m = tuple(tuple(as_rational(x) for x in row) for row in q["matrix"])
            entries.append((lab, m))
        return cls(int(data["dim"]), tuple(entries))

    def as_poly(self, k: int = 0) -> MPoly:
        """Quadric ``k`` as a homogeneous polynomial in the coordinates."""
        m = self.entries[k][1]
        n = self.dim
        terms = {}
        for i in range(n):
            for j in range(i, n):
                c = m[i][j] if i == j else 2 * m[i][j]
                if c:
                    e = [0] * n
                    e[i] += 1
                    e[j] += 1
                    terms[tuple(e)] = c
        return MPoly(n, terms)

    def format(self, k: int, names: Sequence[str]) -> str:
        return format_poly(self.as_poly(k).items(), names)


def rational_to_json(x: Fraction):
    x = as_rational(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def normalize_matrix(m: Sequence[Sequence]) -> tuple:
    flat = primitive_normalize([x for row in m for x in row])
    n = len(m)
    return tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))


def quadrics_from_products(dim: int, products: dict) -> QuadricSystem:
    """Assemble the deduplicated quadric list from ``w_i ^ dw_j`` data.

    ``products[(i, j)]`` maps a label to the coefficient of ``l_i l_j``.
    """
    labels = sorted({lab for coeffs in products.values() for lab in coeffs},
                    key=lambda lab: (lab.form_indices, grlex_key(lab.monomial)))
    seen = set()
    entries = []
    for lab in labels:
        m = [[Fraction(0)] * dim for _ in range(dim)]
        for i in range(dim):
            for j in range(dim):
                c = products.get((i, j), {}).get(lab, 0) + products.get((j, i), {}).get(lab, 0)
                m[i][j] = Fraction(c) / 2
        if linalg.is_zero_matrix(m):
            continue
        key = normalize_matrix(m)
        if key in seen:
            continue
        seen.add(key)
        entries.append((lab, tuple(tuple(row) for row in m)))
    return QuadricSystem(dim, tuple(entries))


def iw_quadrics(space: FormSpace) -> QuadricSystem:
    diffs = [ext_d(w) for w in space.basis]
    products = {}
    for i, wi in enumerate(space.basis):
        for j, dwj in enumerate(diffs):
            prod = wedge(wi, dwj)
            coeffs = {}
            for idx, c in prod.items():
                for e, v in c.terms.items():
                    coeffs[Label(idx, e)] = v
            if coeffs:
                products[(i, j)] = coeffs
    return quadrics_from_products(space.dim, products)


def eval_quadrics(system: QuadricSystem, point: Sequence) -> list[Fraction]:
    if len(point) != system.dim:
        raise ValueError(f"need {system.dim} coordinates, got {len(point)}")
    lam = [as_rational(x) for x in point]
    out = []
    for _, m in system.entries:
        total = Fraction(0)
        for i, li in enumerate(lam):
            if li:
                total += li * sum((m[i][j] * lj for j, lj in enumerate(lam) if lj), Fraction(0))
        out.append(total)
    return out


def general_position(points: Sequence[Sequence]) -> bool:
    """True iff every ``min(k, n+1)`` of the ``k`` points are independent."""
    pts = [[as_rational(x) for x in p] for p in points]
    if not pts:
        return True
    size = len(pts[0])
    for p in pts:
        if len(p) != size:
            raise ValueError("points of different dimensions")
        if not any(p):
            raise ValueError("the zero vector is not a projective point")
    r = min(len(pts), size)
    return all(linalg.rank([pts[i] for i in sub]) == r for sub in combinations(range(len(pts)), r))


class CurveParam:
    """Reduced parameterization ``(s:t) -> (C_0(s,t) : ... : C_m(s,t))``.

    On construction the common binary-form factor is removed and the
    components are primitive-normalized.
    """

    __slots__ = ("components",)

    def __init__(self, components: Sequence[BiForm]):
        comps = list(components)
        if not comps:
            raise ValueError("a curve needs at least one component")
        degree = comps[0].degree
        if any(c.degree != degree for c in comps):
            raise ValueError("components must share one degree")
        if all(c.is_zero() for c in comps):
            raise ValueError("all components vanish")
        g = biform_gcd(comps)
        if g.degree:
            comps = [c.exact_div(g) for c in comps]
        self.components = primitive_normalize(comps)

    @property
    def degree(self) -> int:
        return self.components[0].degree

    @property
    def dim(self) -> int:
        return len(self.components)

    def __call__(self, s, t) -> tuple[Fraction, ...]:
        return tuple(c(s, t) for c in self.components)

    def __eq__(self, other):
        return isinstance(other, CurveParam) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def coefficient_matrix(self) -> list[list[Fraction]]:
        return [list(c.coeffs) for c in self.components]

    def reparameterize(self, a, b, c, d) -> "CurveParam":
        return CurveParam([f.reparameterize(a, b, c, d) for f in self.components])

    def transform(self, matrix: Sequence[Sequence]) -> "CurveParam":
        """Apply a linear map of the ambient coordinates."""
        out = []
        for row in matrix:
            acc = BiForm.zero(self.degree)
            for m, f in zip(row, self.components):
                m = as_rational(m)
                if m:
                    acc = acc + f * m
            out.append(acc)
        return CurveParam(out)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "components": [[rational_to_json(x) for x in f.coeffs] for f in self.components],
        }

    @classmethod
    def from_json(cls, data: dict) -> "CurveParam":
        return cls([BiForm([as_rational(x) for x in comp]) for comp in data["components"]])

    def __repr__(self):
        return f"CurveParam([{', '.join(str(c) for c in self.components)}])"


def preimage_form(curve: CurveParam, point: Sequence) -> BiForm | None:
    """Binary form whose roots are the parameters mapping to ``point``.

    Returns ``None`` when every parameter maps there (constant curve) and a
    nonzero constant when no parameter does.
    """
    p = [as_rational(x) for x in point]
    cross = []
    comps = curve.components
    for a in range(len(comps)):
        for b in range(a + 1, len(comps)):
            cross.append(comps[a] * p[b] - comps[b] * p[a])
    if all(f.is_zero() for f in cross):
        return None
    return biform_gcd(cross)


def generic_fiber_size(curve: CurveParam, samples: Sequence[tuple] = ((1, 2), (3, -1), (2, 5))) -> int:
    """Number of parameters over a generic image point (1 = generically injective)."""
    if curve.degree == 0:
        return 1
    sizes = []
    for s, t in samples:
        g = preimage_form(curve, curve(s, t))
        if g is not None:
            sizes.append(g.degree)
    return min(sizes)


class RNCReport(NamedTuple):
    span_dim: int
    degree: int
    is_rnc: bool
    generically_injective: bool


def curve_is_rnc(curve: CurveParam) -> RNCReport:
    """Minimal-degree test for a reduced curve: degree equal to span dimension."""
    span_dim = linalg.rank(curve.coefficient_matrix()) - 1
    injective = generic_fiber_size(curve) == 1
    if not injective:
        warnings.warn(
            "parameterization is not generically injective; reported degree is "
            "that of the parameterization, not of the image",
            stacklevel=2,
        )
    return RNCReport(span_dim, curve.degree, curve.degree == span_dim, injective)


def compose_quadric(matrix: Sequence[Sequence], curve: CurveParam) -> BiForm:
    """``C(s,t)^T M C(s,t)`` as a binary form of degree ``2 deg C``."""
    comps = curve.components
    acc = BiForm.zero(2 * curve.degree)
    for i, ci in enumerate(comps):
        if ci.is_zero():
            continue
        row = BiForm.zero(curve.degree)
        for j, cj in enumerate(comps):
            if matrix[i][j]:
                row = row + cj * matrix[i][j]
        acc = acc + ci * row
    return acc


def curve_in_iw(space: FormSpace, curve: CurveParam, quadrics: QuadricSystem | None = None) -> bool:
    """True iff every point of the curve is an integrable class of ``space``."""
    if curve.dim != space.dim:
        raise ValueError(f"curve has {curve.dim} components, space has dimension {space.dim}")
    if quadrics is None:
        quadrics = iw_quadrics(space)
    return all(compose_quadric(m, curve).is_zero() for m in quadrics.matrices)


# -- the R_n(d,d) numbers --------------------------------------------------------


def n_k(n: int, k: int) -> int:
    return math.comb(n + k, k) - 1


class RnddStats(NamedTuple):
    codimension: int
    degree: int


def rn_dd_stats(n: int, d: int) -> RnddStats:
    """Codimension and degree of the logarithmic pencil component R_n(d,d)."""
    if n < 3:
        raise ValueError("n must be at least 3")
    if d < 1:
        raise ValueError("d must be at least 1")
    nd = n_k(n, d)
    if nd < 2:
        raise ValueError("N_d must be at least 2")
    ambient = (n + 1) * n_k(n, 2 * d - 1) - n_k(n, 2 * d) + n - 1
    codim = ambient - (2 * nd - 2)
    num = math.comb(2 * nd - 2, nd)
    q, r = divmod(num, nd - 1)
    if r:
        raise ArithmeticError(f"degree formula is not integral for n={n}, d={d}")
    return RnddStats(codim, q)
