"""Finite Godbillon-Vey sequences.

A sequence ``(w_0, ..., w_k)`` of 1-forms is accepted when its development
``dz + sum_i z^i/i! w_i`` (``z`` appended as the last variable) is integrable.
Restricting to ``z = c`` then gives a rational curve of integrable forms in
``span(w_0, ..., w_k)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import linalg
from .algebra import BiForm, MPoly
from .exterior import PForm, linear_pullback, wedge
from .formspace import CurveParam, FormSpace, is_integrable, rank


class NotGVError(ValueError):
    pass


@dataclass(frozen=True)
class GVSequence:
    """``forms[0..i0]``, trailing zero forms dropped."""

    forms: tuple

    def __init__(self, forms: Sequence[PForm]):
        forms = list(forms)
        while forms and forms[-1].is_zero():
            forms.pop()
        if not forms:
            raise ValueError("a Godbillon-Vey sequence needs a nonzero form")
        nvars = forms[0].nvars
        if any(w.degree != 1 or w.nvars != nvars for w in forms):
            raise ValueError("all entries must be 1-forms in the same ring")
        object.__setattr__(self, "forms", tuple(forms))

    @property
    def nvars(self) -> int:
        return self.forms[0].nvars

    @property
    def i0(self) -> int:
        return len(self.forms) - 1

    def pullback(self, matrix) -> "GVSequence":
        return GVSequence([linear_pullback(w, matrix) for w in self.forms])


def develop(seq: GVSequence) -> PForm:
    """``dz + sum_i (z^i / i!) w_i`` in ``nvars + 1`` variables."""
    n = seq.nvars + 1
    z = MPoly.var(n, n - 1)
    total = PForm.dx(n, n - 1)
    for i, w in enumerate(seq.forms):
        total = total + w.extend(n) * (z ** i * Fraction(1, math.factorial(i)))
    return total


def is_gv_sequence(seq: GVSequence) -> bool:
    return is_integrable(develop(seq))


def member(seq: GVSequence, c) -> PForm:
    """The restriction ``sum_i c^i/i! w_i`` at ``z = c``."""
    c = Fraction(c)
    total = PForm.zero(seq.nvars, 1)
    for i, w in enumerate(seq.forms):
        total = total + w * (c ** i / math.factorial(i))
    return total


def _require_gv(seq: GVSequence):
    if not is_gv_sequence(seq):
        raise NotGVError("development is not integrable")


def gv_curve(seq: GVSequence) -> CurveParam:
    """The curve ``c -> [sum c^i/i! w_i]`` in coordinates of ``span(forms)``.

    With ``c = t/s`` component ``i`` becomes ``(i0!/i!) s^(i0-i) t^i``.
    """
    _require_gv(seq)
    try:
        FormSpace(seq.forms)
    except ValueError as exc:
        raise ValueError("forms are linearly dependent; the curve lives in a quotient") from exc
    k = seq.i0
    return CurveParam([BiForm.monomial(k, i, math.factorial(k) // math.factorial(i)) for i in range(k + 1)])


def high_wedge_obstruction(seq: GVSequence) -> bool:
    """Whether ``w_i ^ w_j = 0`` for all ``i, j >= 2``."""
    _require_gv(seq)
    high = seq.forms[2:]
    return all(wedge(a, b).is_zero() for a, b in combinations(high, 2))


def span_rank(seq: GVSequence) -> int:
    """Rank of the space spanned by the (nonzero) forms of the sequence."""
    basis = []
    for w in seq.forms:
        if w.is_zero():
            continue
        try:
            FormSpace(basis + [w])
        except ValueError:
            continue
        basis.append(w)
    return rank(FormSpace(basis))


# -- fixture constructors ----------------------------------------------------------


def projective_sequence(nvars: int = 2) -> GVSequence:
    """A length-3 sequence ``(dx0, x1 dx0, -dx1 + x1^2/2 dx0)``.

    Its forms satisfy the sl(2) relations ``dw0 = w0^w1``, ``dw1 = w0^w2``,
    ``dw2 = w1^w2``.
    """
    x1 = MPoly.var(nvars, 1)
    dx0, dx1 = PForm.dx(nvars, 0), PForm.dx(nvars, 1)
    return GVSequence([dx0, dx0 * x1, -dx1 + dx0 * (x1 * x1 * Fraction(1, 2))])


def high_order_sequences(nvars: int = 2) -> list[GVSequence]:
    """Genuine sequences with ``i0 > 2`` used as obstruction fixtures.

    * ``x0^i dx0`` for ``i = 0..k`` with ``k = 3, 4, 5`` (closed-up, rank 1);
    * ``(dx0, x1 dx0, w2, (x1/3) w2)`` with ``w2 = -dx1 + (2/3) x1^2 dx0``.
    """
    x0, x1 = MPoly.var(nvars, 0), MPoly.var(nvars, 1)
    dx0, dx1 = PForm.dx(nvars, 0), PForm.dx(nvars, 1)
    out = [GVSequence([dx0 * x0 ** i for i in range(k + 1)]) for k in (3, 4, 5)]
    w2 = -dx1 + dx0 * (x1 * x1 * Fraction(2, 3))
    out.append(GVSequence([dx0, dx0 * x1, w2, w2 * (x1 * Fraction(1, 3))]))
    return out


def fixture_sequences(rng=None, changes: int = 0, nvars: int = 3) -> list[GVSequence]:
    """High-order fixtures, plus images under random linear coordinate changes."""
    base = high_order_sequences(nvars)
    out = list(base)
    if rng is not None:
        for _ in range(changes):
            m = linalg.random_invertible(nvars, rng)
            out.extend(seq.pullback(m) for seq in base)
    return out
