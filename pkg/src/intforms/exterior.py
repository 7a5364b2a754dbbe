"""Polynomial differential forms and vector fields on affine space."""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .algebra import MPoly, as_rational, _is_scalar
from .linalg import det


def sort_with_sign(indices: Sequence[int]) -> tuple[int, tuple]:
    """Sort ``indices`` and return the permutation sign.

    A repeated index gives sign 0 (the wedge of equal differentials vanishes).
    """
    idx = list(indices)
    if len(set(idx)) != len(idx):
        return 0, ()
    sign = 1
    # insertion sort, counting transpositions
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(idx)


class PForm:
    """A q-form ``sum_I f_I dx_I`` with polynomial coefficients.

    ``comps`` maps strictly increasing index tuples to nonzero :class:`MPoly`.
    Any tuple order is accepted on construction and sorted with its sign.
    """

    __slots__ = ("nvars", "degree", "_comps", "_hash")

    def __init__(self, nvars: int, degree: int, comps: dict | None = None):
        if degree < 0:
            raise ValueError("form degree must be nonnegative")
        self.nvars = nvars
        self.degree = degree
        clean: dict[tuple, MPoly] = {}
        for idx, coef in (comps or {}).items():
            idx = tuple(idx)
            if len(idx) != degree:
                raise ValueError(f"index {idx} does not match degree {degree}")
            if any(not 0 <= i < nvars for i in idx):
                raise IndexError(f"index {idx} out of range for {nvars} variables")
            if not isinstance(coef, MPoly):
                coef = MPoly.const(nvars, coef)
            elif coef.nvars != nvars:
                raise ValueError("coefficient lives in a different ring")
            sign, key = sort_with_sign(idx)
            if not sign or coef.is_zero():
                continue
            prev = clean.get(key)
            new = coef if sign > 0 else -coef
            new = new if prev is None else prev + new
            if new.is_zero():
                clean.pop(key, None)
            else:
                clean[key] = new
        self._comps = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars, degree, comps):
        f = cls.__new__(cls)
        f.nvars, f.degree, f._comps, f._hash = nvars, degree, comps, None
        return f

    @classmethod
    def zero(cls, nvars: int, degree: int) -> "PForm":
        return cls._raw(nvars, degree, {})

    @classmethod
    def function(cls, f: MPoly) -> "PForm":
        return cls._raw(f.nvars, 0, {(): f} if f else {})

    @classmethod
    def dx(cls, nvars: int, i: int) -> "PForm":
        return cls(nvars, 1, {(i,): MPoly.const(nvars, 1)})

    @classmethod
    def one_form(cls, coeffs: Sequence) -> "PForm":
        """``sum_k coeffs[k] dx_k``; ``coeffs`` are MPolys in ``len(coeffs)`` variables."""
        nvars = len(coeffs)
        return cls(nvars, 1, {(k,): c for k, c in enumerate(coeffs)})

    @property
    def comps(self) -> dict:
        return dict(self._comps)

    def items(self) -> list[tuple[tuple, MPoly]]:
        return sorted(self._comps.items())

    def coefficient(self, idx) -> MPoly:
        sign, key = sort_with_sign(idx)
        c = self._comps.get(key)
        if c is None or not sign:
            return MPoly.zero(self.nvars)
        return c if sign > 0 else -c

    def coefficient_vector(self) -> list[MPoly]:
        """Coefficients of a 1-form, one per ``dx_k``."""
        if self.degree != 1:
            raise ValueError("coefficient_vector needs a 1-form")
        return [self.coefficient((k,)) for k in range(self.nvars)]

    def is_zero(self) -> bool:
        return not self._comps

    def __bool__(self):
        return bool(self._comps)

    def _check(self, other: "PForm"):
        if not isinstance(other, PForm):
            raise TypeError(f"expected a PForm, got {type(other).__name__}")
        if other.nvars != self.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other):
        if _is_scalar(other) and not other:
            return self
        if not isinstance(other, PForm):
            return NotImplemented
        self._check(other)
        if other.degree != self.degree:
            raise ValueError(f"cannot add forms of degree {self.degree} and {other.degree}")
        out = dict(self._comps)
        for k, c in other._comps.items():
            v = out[k] + c if k in out else c
            if v.is_zero():
                out.pop(k, None)
            else:
                out[k] = v
        return PForm._raw(self.nvars, self.degree, out)

    __radd__ = __add__

    def __neg__(self):
        return PForm._raw(self.nvars, self.degree, {k: -c for k, c in self._comps.items()})

    def __sub__(self, other):
        if not isinstance(other, PForm):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        """Multiply by a scalar or by a function (MPoly)."""
        if isinstance(other, MPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
        elif not _is_scalar(other):
            return NotImplemented
        out = {}
        for k, c in self._comps.items():
            v = c * other
            if not v.is_zero():
                out[k] = v
        return PForm._raw(self.nvars, self.degree, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, PForm):
            return (self.nvars, self.degree, self._comps) == (other.nvars, other.degree, other._comps)
        if _is_scalar(other) and not other:
            return self.is_zero()
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, self.degree, frozenset(self._comps.items())))
        return self._hash

    def wedge(self, other: "PForm") -> "PForm":
        return wedge(self, other)

    def d(self) -> "PForm":
        return ext_d(self)

    def extend(self, nvars: int) -> "PForm":
        """Same form in a ring with extra trailing variables."""
        return PForm._raw(nvars, self.degree, {k: c.extend(nvars) for k, c in self._comps.items()})

    def evaluate_coefficients(self, point: Sequence) -> dict:
        return {k: c.evaluate(point) for k, c in self._comps.items()}

    def __repr__(self):
        return f"PForm({self.nvars}, {self.degree}, {str(self)!r})"

    def __str__(self):
        if not self._comps:
            return "0"
        parts = []
        for idx, c in self.items():
            dx = "^".join(f"dx{i}" for i in idx)
            text = str(c)
            if not dx:
                term = text
            elif text in ("1", "-1"):
                term = text[:-1] + dx
            elif len(c) == 1:
                term = f"{text}*{dx}"
            else:
                term = f"({text})*{dx}"
            parts.append(term)
        out = parts[0]
        for term in parts[1:]:
            out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
        return out


def wedge(a: PForm, b: PForm) -> PForm:
    """Exterior product; degrees above ``nvars`` give the zero form."""
    a._check(b)
    degree = a.degree + b.degree
    out: dict[tuple, MPoly] = {}
    if degree <= a.nvars:
        for ia, ca in a._comps.items():
            sa = set(ia)
            for ib, cb in b._comps.items():
                if sa.intersection(ib):
                    continue
                sign, key = sort_with_sign(ia + ib)
                term = ca * cb
                if sign < 0:
                    term = -term
                prev = out.get(key)
                out[key] = term if prev is None else prev + term
    return PForm._raw(a.nvars, degree, {k: c for k, c in out.items() if not c.is_zero()})


def wedge_all(forms: Sequence[PForm], nvars: int | None = None) -> PForm:
    if not forms:
        if nvars is None:
            raise ValueError("empty wedge needs nvars")
        return PForm.function(MPoly.const(nvars, 1))
    out = forms[0]
    for f in forms[1:]:
        out = wedge(out, f)
    return out


def ext_d(a: PForm) -> PForm:
    """Exterior derivative ``d(f dx_I) = sum_k (df/dx_k) dx_k ^ dx_I``."""
    out: dict[tuple, MPoly] = {}
    if a.degree + 1 <= a.nvars:
        for idx, c in a._comps.items():
            for k in range(a.nvars):
                if k in idx:
                    continue
                dc = c.diff(k)
                if dc.is_zero():
                    continue
                sign, key = sort_with_sign((k,) + idx)
                if sign < 0:
                    dc = -dc
                prev = out.get(key)
                out[key] = dc if prev is None else prev + dc
    return PForm._raw(a.nvars, a.degree + 1, {k: c for k, c in out.items() if not c.is_zero()})


def pullback(a: PForm, subs: Sequence[MPoly]) -> PForm:
    """Pull ``a`` back along the polynomial map ``x_i = subs[i](y)``."""
    if len(subs) != a.nvars:
        raise ValueError(f"need {a.nvars} substitutions, got {len(subs)}")
    target = subs[0].nvars if subs else 0
    dphi = [ext_d(PForm.function(s)) for s in subs]
    total = PForm.zero(target, a.degree)
    for idx, c in a._comps.items():
        term = PForm.function(c.compose(subs))
        for i in idx:
            term = wedge(term, dphi[i])
        total = total + term
    return total


def linear_subs(matrix: Sequence[Sequence]) -> list[MPoly]:
    """Substitution ``x = M y`` as a list of linear polynomials in ``y``."""
    n = len(matrix)
    ys = MPoly.gens(n)
    out = []
    for row in matrix:
        p = MPoly.zero(n)
        for m, y in zip(row, ys):
            m = as_rational(m)
            if m:
                p = p + y * m
        out.append(p)
    return out


def linear_pullback(a: PForm, matrix: Sequence[Sequence]) -> PForm:
    return pullback(a, linear_subs(matrix))


class PVectorField:
    """A polynomial vector field ``sum_k v_k d/dx_k``."""

    __slots__ = ("nvars", "_comps")

    def __init__(self, nvars: int, comps: dict | None = None):
        self.nvars = nvars
        clean = {}
        for k, c in (comps or {}).items():
            if not 0 <= k < nvars:
                raise IndexError(f"direction {k} out of range for {nvars} variables")
            if not isinstance(c, MPoly):
                c = MPoly.const(nvars, c)
            elif c.nvars != nvars:
                raise ValueError("coefficient lives in a different ring")
            if not c.is_zero():
                clean[k] = c
        self._comps = clean

    @classmethod
    def coordinate(cls, nvars: int, k: int) -> "PVectorField":
        return cls(nvars, {k: MPoly.const(nvars, 1)})

    @classmethod
    def from_list(cls, coeffs: Sequence[MPoly]) -> "PVectorField":
        return cls(coeffs[0].nvars, dict(enumerate(coeffs)))

    @property
    def comps(self) -> dict:
        return dict(self._comps)

    def component(self, k: int) -> MPoly:
        return self._comps.get(k, MPoly.zero(self.nvars))

    def is_zero(self) -> bool:
        return not self._comps

    def __add__(self, other):
        if not isinstance(other, PVectorField):
            return NotImplemented
        _same(self, other)
        keys = set(self._comps) | set(other._comps)
        return PVectorField(self.nvars, {k: self.component(k) + other.component(k) for k in keys})

    def __neg__(self):
        return PVectorField(self.nvars, {k: -c for k, c in self._comps.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not (_is_scalar(other) or isinstance(other, MPoly)):
            return NotImplemented
        return PVectorField(self.nvars, {k: c * other for k, c in self._comps.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, PVectorField):
            return NotImplemented
        return self.nvars == other.nvars and self._comps == other._comps

    def __hash__(self):
        return hash((self.nvars, frozenset(self._comps.items())))

    def apply(self, f: MPoly) -> MPoly:
        """The derivation ``v(f) = sum_m v_m df/dx_m``."""
        out = MPoly.zero(self.nvars)
        for m, c in self._comps.items():
            out = out + c * f.diff(m)
        return out

    def as_multivector(self) -> PForm:
        # multivectors share the exterior algebra of 1-forms, with d/dx_k in place of dx_k
        return PForm._raw(self.nvars, 1, {(k,): c for k, c in self._comps.items()})

    def __repr__(self):
        body = " + ".join(f"({c})*d/dx{k}" for k, c in sorted(self._comps.items())) or "0"
        return f"PVectorField({self.nvars}, {body!r})"


def _same(u, v):
    if u.nvars != v.nvars:
        raise ValueError(f"variable count mismatch: {u.nvars} vs {v.nvars}")


def contract(a: PForm, v: PVectorField) -> PForm:
    """Interior product ``i_v a``."""
    if a.degree < 1:
        raise ValueError("cannot contract a 0-form")
    _same(a, v)
    out: dict[tuple, MPoly] = {}
    for idx, c in a._comps.items():
        for r, i in enumerate(idx):
            vi = v._comps.get(i)
            if vi is None:
                continue
            term = c * vi
            if r % 2:
                term = -term
            key = idx[:r] + idx[r + 1:]
            prev = out.get(key)
            out[key] = term if prev is None else prev + term
    return PForm._raw(a.nvars, a.degree - 1, {k: c for k, c in out.items() if not c.is_zero()})


def evaluate_one_form(a: PForm, v: PVectorField) -> MPoly:
    """``a(v)`` for a 1-form, as a polynomial."""
    if a.degree != 1:
        raise ValueError("expected a 1-form")
    return contract(a, v).coefficient(())


def lie_bracket(u: PVectorField, v: PVectorField) -> PVectorField:
    _same(u, v)
    comps = {}
    for k in set(u._comps) | set(v._comps):
        comps[k] = u.apply(v.component(k)) - v.apply(u.component(k))
    return PVectorField(u.nvars, comps)


def involutivity_defect(fields: Sequence[PVectorField], dim: int | None = None) -> list[MPoly]:
    """Coefficients of ``[f_i, f_j] ^ f_1 ^ ... ^ f_k`` against the volume element.

    ``dim`` is the number of directions spanned (default ``nvars``) and must equal
    ``len(fields) + 1``; fields may carry extra parameter variables beyond
    ``dim`` as long as they have no components along them. One polynomial is
    returned per pair ``i < j`` in lexicographic order.
    """
    if not fields:
        raise ValueError("need at least one field")
    nvars = fields[0].nvars
    if dim is None:
        dim = nvars
    if len(fields) != dim - 1:
        raise ValueError(f"need exactly {dim - 1} fields, got {len(fields)}")
    for f in fields:
        _same(f, fields[0])
        if any(k >= dim for k in f._comps):
            raise ValueError("field has components outside the frame directions")
    frame = wedge_all([f.as_multivector() for f in fields])
    top = tuple(range(dim))
    out = []
    for i, j in combinations(range(len(fields)), 2):
        br = lie_bracket(fields[i], fields[j])
        if any(k >= dim for k in br._comps):
            raise ValueError("bracket leaves the frame directions")
        out.append(wedge(br.as_multivector(), frame).coefficient(top))
    return out


def adjugate_frame(forms: Sequence[PForm]) -> tuple[MPoly, list[PVectorField]]:
    """Polynomial frame dual to ``nvars`` 1-forms up to the factor ``det``.

    Returns ``(det A, [v_0, ..., v_n])`` with ``forms[i](v_j) = det A * delta_ij``,
    where ``A`` is the coefficient matrix of the forms.
    """
    n = len(forms)
    if n == 0 or any(f.degree != 1 or f.nvars != n for f in forms):
        raise ValueError("need nvars 1-forms in nvars variables")
    a = [f.coefficient_vector() for f in forms]
    zero = MPoly.zero(n)
    one = MPoly.const(n, 1)
    full = det(a, zero, one)
    fields = []
    for j in range(n):
        comps = {}
        rows = [a[r] for r in range(n) if r != j]
        for k in range(n):
            minor = [[row[c] for c in range(n) if c != k] for row in rows]
            m = det(minor, zero, one)
            comps[k] = m if (j + k) % 2 == 0 else -m
        fields.append(PVectorField(n, comps))
    return full, fields
