"""Exact scalar and polynomial arithmetic.

Scalars are :class:`fractions.Fraction`. Two polynomial types live here:

* :class:`MPoly` -- sparse multivariate polynomials in ``x_0 .. x_{nvars-1}``.
* :class:`BiForm` -- homogeneous binary forms in ``(s, t)`` of a fixed degree.

Nothing in this module ever touches floating point.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

Rational = Fraction


def as_rational(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are refused: they would silently introduce rounding.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def _is_scalar(value) -> bool:
    return isinstance(value, (int, Fraction, _RationalABC)) and not isinstance(value, bool)


def grlex_key(exps: tuple) -> tuple:
    return (sum(exps), exps)


class MPoly:
    """Sparse polynomial with rational coefficients.

    ``terms`` maps exponent tuples of length ``nvars`` to nonzero Fractions.
    Instances are treated as immutable.
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: dict | None = None):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        self.nvars = nvars
        clean = {}
        if terms:
            for exps, c in terms.items():
                exps = tuple(exps)
                if len(exps) != nvars:
                    raise ValueError(f"exponent {exps} does not have length {nvars}")
                if any(e < 0 for e in exps):
                    raise ValueError(f"negative exponent in {exps}")
                c = as_rational(c)
                if c:
                    clean[exps] = clean.get(exps, 0) + c
                    if not clean[exps]:
                        del clean[exps]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "MPoly":
        # caller guarantees: Fraction values, no zeros, correct keys
        p = cls.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, nvars: int) -> "MPoly":
        return cls._raw(nvars, {})

    @classmethod
    def const(cls, nvars: int, c) -> "MPoly":
        c = as_rational(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, nvars: int, i: int) -> "MPoly":
        if not 0 <= i < nvars:
            raise IndexError(f"variable x{i} out of range for {nvars} variables")
        exps = [0] * nvars
        exps[i] = 1
        return cls._raw(nvars, {tuple(exps): Fraction(1)})

    @classmethod
    def gens(cls, nvars: int) -> list["MPoly"]:
        return [cls.var(nvars, i) for i in range(nvars)]

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self) -> list[tuple[tuple, Fraction]]:
        """Terms in descending graded-lexicographic order."""
        return sorted(self._terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and (0,) * self.nvars in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def coefficient(self, exps) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def leading_coefficient(self) -> Fraction:
        if not self._terms:
            return Fraction(0)
        return self._terms[max(self._terms, key=grlex_key)]

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other.nvars != self.nvars:
                raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        if _is_scalar(other):
            return MPoly.const(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v += c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return MPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> "MPoly":
        c = as_rational(c)
        if not c:
            return MPoly.zero(self.nvars)
        return MPoly._raw(self.nvars, {e: v * c for e, v in self._terms.items()})

    def __mul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return MPoly._raw(self.nvars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = MPoly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.nvars == other.nvars and self._terms == other._terms
        if _is_scalar(other):
            return self.is_constant() and self.constant_term() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # -- calculus and substitution -----------------------------------------

    def diff(self, i: int) -> "MPoly":
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable x{i} out of range")
        out = {}
        for e, c in self._terms.items():
            k = e[i]
            if k:
                e2 = e[:i] + (k - 1,) + e[i + 1:]
                out[e2] = c * k
        return MPoly._raw(self.nvars, out)

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError(f"need {self.nvars} coordinates, got {len(point)}")
        pt = [as_rational(v) for v in point]
        total = Fraction(0)
        for e, c in self._terms.items():
            term = c
            for v, k in zip(pt, e):
                if k:
                    term *= v ** k
            total += term
        return total

    def compose(self, subs: Sequence["MPoly"]) -> "MPoly":
        """Substitute ``x_i -> subs[i]``; the result lives in ``subs``' ring."""
        if len(subs) != self.nvars:
            raise ValueError(f"need {self.nvars} substitutions, got {len(subs)}")
        if not subs:
            return self
        target = subs[0].nvars
        if any(s.nvars != target for s in subs):
            raise ValueError("substitutions live in different rings")
        powers: list[dict] = [{0: MPoly.const(target, 1)} for _ in subs]

        def pw(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = pw(i, k - 1) * subs[i]
            return cache[k]

        total = MPoly.zero(target)
        for e, c in self._terms.items():
            term = MPoly.const(target, c)
            for i, k in enumerate(e):
                if k:
                    term = term * pw(i, k)
            total = total + term
        return total

    def extend(self, nvars: int) -> "MPoly":
        """Embed into a ring with more variables (appended at the end)."""
        if nvars < self.nvars:
            raise ValueError("cannot shrink the variable count")
        pad = (0,) * (nvars - self.nvars)
        return MPoly._raw(nvars, {e + pad: c for e, c in self._terms.items()})

    def coefficients(self) -> list[Fraction]:
        return [c for _, c in self.items()]

    # -- display -------------------------------------------------------------

    def __repr__(self):
        return f"MPoly({self.nvars}, {str(self)!r})"

    def __str__(self):
        return format_poly(self.items(), [f"x{i}" for i in range(self.nvars)])


def format_poly(items: Iterable[tuple[tuple, Fraction]], names: Sequence[str]) -> str:
    parts = []
    for exps, c in items:
        mono = "*".join(
            (n if k == 1 else f"{n}^{k}") for n, k in zip(names, exps) if k
        )
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# -- univariate helpers (lists, index = power) ---------------------------------


def _trim(p: list) -> list:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def _udivmod(a: list, b: list) -> tuple[list, list]:
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    lead = b[-1]
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        f = r[-1] / lead
        q[shift] = f
        for k, bk in enumerate(b):
            r[shift + k] -= f * bk
        r = _trim(r)
    return _trim(q), r


def _ugcd(a: list, b: list) -> list:
    a, b = _trim(a), _trim(b)
    while b:
        _, r = _udivmod(a, b)
        a, b = b, r
    if not a:
        return []
    lead = a[-1]
    return [c / lead for c in a]


class BiForm:
    """Homogeneous binary form ``sum_k coeffs[k] * s^(d-k) * t^k``."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, coeffs: Sequence, degree: int | None = None):
        coeffs = tuple(as_rational(c) for c in coeffs)
        if degree is None:
            degree = len(coeffs) - 1
        if degree < 0:
            raise ValueError("a binary form needs at least one coefficient")
        if len(coeffs) != degree + 1:
            raise ValueError(f"degree {degree} form needs {degree + 1} coefficients")
        self.degree = degree
        self.coeffs = coeffs

    @classmethod
    def zero(cls, degree: int) -> "BiForm":
        return cls([0] * (degree + 1))

    @classmethod
    def monomial(cls, degree: int, k: int, c=1) -> "BiForm":
        """``c * s^(degree-k) * t^k``."""
        coeffs = [0] * (degree + 1)
        coeffs[k] = c
        return cls(coeffs)

    @classmethod
    def linear(cls, a, b) -> "BiForm":
        """``a*s + b*t``."""
        return cls([a, b])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def leading_coefficient(self) -> Fraction:
        for c in self.coeffs:
            if c:
                return c
        return Fraction(0)

    def __call__(self, s, t) -> Fraction:
        return biform_eval(self, s, t)

    def _check(self, other: "BiForm"):
        if other.degree != self.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")

    def __add__(self, other):
        if not isinstance(other, BiForm):
            if _is_scalar(other) and not other:
                return self
            return NotImplemented
        self._check(other)
        return BiForm([a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return BiForm([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, BiForm):
            if _is_scalar(other) and not other:
                return self
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        if _is_scalar(other) and not other:
            return -self
        return NotImplemented

    def __mul__(self, other):
        if _is_scalar(other):
            c = as_rational(other)
            return BiForm([c * a for a in self.coeffs])
        if not isinstance(other, BiForm):
            return NotImplemented
        out = [Fraction(0)] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return BiForm(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = BiForm([1])
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, BiForm):
            return self.degree == other.degree and self.coeffs == other.coeffs
        if _is_scalar(other) and not other:
            return self.is_zero()
        return NotImplemented

    def __hash__(self):
        return hash((self.degree, self.coeffs))

    def dehomogenize(self) -> list[Fraction]:
        """Coefficients of ``f(1, t)`` by increasing power of ``t``."""
        return _trim(self.coeffs)

    def s_multiplicity(self) -> int:
        """Largest ``a`` with ``s^a`` dividing the form."""
        if self.is_zero():
            return self.degree
        return self.degree - (len(self.dehomogenize()) - 1)

    def exact_div(self, other: "BiForm") -> "BiForm":
        if other.is_zero():
            raise ZeroDivisionError("division by the zero form")
        if other.degree > self.degree:
            raise ValueError("divisor has larger degree")
        q, r = _udivmod(self.dehomogenize(), other.dehomogenize())
        deg = self.degree - other.degree
        if r or len(q) > deg + 1:
            raise ValueError("division is not exact")
        return BiForm(q + [Fraction(0)] * (deg + 1 - len(q)))

    def reparameterize(self, a, b, c, d) -> "BiForm":
        """Substitute ``s -> a*s + b*t`` and ``t -> c*s + d*t``."""
        u = BiForm.linear(a, b)
        v = BiForm.linear(c, d)
        out = BiForm.zero(self.degree)
        for k, coef in enumerate(self.coeffs):
            if coef:
                out = out + (u ** (self.degree - k)) * (v ** k) * coef
        return out

    def __repr__(self):
        return f"BiForm({[str(c) for c in self.coeffs]})"

    def __str__(self):
        d = self.degree
        items = [((d - k, k), c) for k, c in enumerate(self.coeffs) if c]
        return format_poly(items, ["s", "t"])


def biform_eval(f: BiForm, s, t) -> Fraction:
    s, t = as_rational(s), as_rational(t)
    d = f.degree
    return sum((c * s ** (d - k) * t ** k for k, c in enumerate(f.coeffs) if c), Fraction(0))


def biform_gcd(forms: Iterable[BiForm]) -> BiForm:
    """Monic-in-``t`` greatest common divisor of binary forms.

    Zero forms are ignored. Raises if every form is zero.
    """
    nonzero = [f for f in forms if not f.is_zero()]
    if not nonzero:
        raise ValueError("gcd of zero forms is undefined")
    s_power = min(f.s_multiplicity() for f in nonzero)
    g = reduce(_ugcd, (f.dehomogenize() for f in nonzero))
    # g(t) homogenized to its own degree, times s^s_power
    return BiForm(g) * BiForm.monomial(s_power, 0)


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _all_coefficients(entry) -> list[Fraction]:
    if isinstance(entry, MPoly):
        return entry.coefficients()
    if isinstance(entry, BiForm):
        return [c for c in entry.coeffs if c]
    c = as_rational(entry)
    return [c] if c else []


def _leading(entry) -> Fraction:
    if isinstance(entry, (MPoly, BiForm)):
        return entry.leading_coefficient()
    return as_rational(entry)


def primitive_normalize(v: Sequence) -> tuple:
    """Canonical integral representative of a projective vector.

    Entries may be scalars, :class:`MPoly` or :class:`BiForm`. Denominators are
    cleared, the content is divided out and the first nonzero entry gets a
    positive leading coefficient.
    """
    coeffs = [c for entry in v for c in _all_coefficients(entry)]
    if not coeffs:
        raise ValueError("cannot normalize an all-zero vector")
    den = reduce(_lcm, (c.denominator for c in coeffs), 1)
    num = reduce(math.gcd, (abs(c.numerator) * (den // c.denominator) for c in coeffs), 0)
    factor = Fraction(den, num)
    first = next(e for e in v if _leading(e))
    if _leading(first) < 0:
        factor = -factor
    out = []
    for entry in v:
        if isinstance(entry, (MPoly, BiForm)):
            out.append(entry * factor)
        else:
            out.append(as_rational(entry) * factor)
    return tuple(out)
