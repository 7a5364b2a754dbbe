"""Lie algebras given by structure constants and their dual differential.

Convention: ``[e_i, e_j] = sum_k c[i][j][k] e_k`` and ``d xi(u, v) = -xi([u, v])``,
so on the dual basis ``d e^k = -sum_{i<j} c[i][j][k] e^i ^ e^j``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Sequence

from . import linalg
from .algebra import as_rational
from .exterior import sort_with_sign
from .formspace import Label, QuadricSystem, quadrics_from_products, rational_to_json


class JacobiError(ValueError):
    pass


class LieAlgebra:
    """Structure constants ``c[i][j][k]`` of an ``m``-dimensional Lie algebra.

    Only brackets with ``i < j`` are stored; antisymmetry is structural.
    """

    def __init__(self, dim: int, brackets: dict | None = None):
        if dim < 1:
            raise ValueError("dimension must be positive")
        self.dim = dim
        table: dict[tuple, tuple] = {}
        for (i, j), coeffs in (brackets or {}).items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise IndexError(f"bracket [{i},{j}] out of range")
            coeffs = tuple(as_rational(c) for c in coeffs)
            if len(coeffs) != dim:
                raise ValueError(f"bracket [{i},{j}] needs {dim} coefficients")
            if i == j:
                if any(coeffs):
                    raise ValueError(f"antisymmetry violated: [e{i}, e{i}] != 0")
                continue
            if i > j:
                i, j, coeffs = j, i, tuple(-c for c in coeffs)
            if (i, j) in table and table[(i, j)] != coeffs:
                raise ValueError(f"antisymmetry violated for [e{i}, e{j}]")
            if any(coeffs):
                table[(i, j)] = coeffs
        self.brackets = table

    @classmethod
    def from_array(cls, c: Sequence) -> "LieAlgebra":
        """Build from a full ``m x m x m`` array, checking antisymmetry."""
        m = len(c)
        for i in range(m):
            for j in range(m):
                for k in range(m):
                    if as_rational(c[i][j][k]) != -as_rational(c[j][i][k]):
                        raise ValueError(f"antisymmetry violated at ({i},{j},{k})")
        return cls(m, {(i, j): c[i][j] for i in range(m) for j in range(i + 1, m)})

    def c(self, i: int, j: int, k: int) -> Fraction:
        if i == j:
            return Fraction(0)
        if i < j:
            return self.brackets.get((i, j), (Fraction(0),) * self.dim)[k]
        return -self.brackets.get((j, i), (Fraction(0),) * self.dim)[k]

    def bracket(self, u: Sequence, v: Sequence) -> list[Fraction]:
        u = [as_rational(x) for x in u]
        v = [as_rational(x) for x in v]
        out = [Fraction(0)] * self.dim
        for (i, j), coeffs in self.brackets.items():
            w = u[i] * v[j] - u[j] * v[i]
            if w:
                for k, ck in enumerate(coeffs):
                    out[k] += w * ck
        return out

    def change_basis(self, matrix: Sequence[Sequence]) -> "LieAlgebra":
        """Constants in the basis ``f_a = sum_i matrix[i][a] e_i`` (columns are new vectors)."""
        m = self.dim
        cols = linalg.transpose(linalg.to_matrix(matrix))
        inv = linalg.inverse(matrix)
        table = {}
        for a in range(m):
            for b in range(a + 1, m):
                br = self.bracket(cols[a], cols[b])
                table[(a, b)] = linalg.matvec(inv, br)
        return LieAlgebra(m, table)

    @cached_property
    def jacobi_ok(self) -> bool:
        return check_jacobi(self)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "brackets": [
                {"i": i, "j": j, "coeffs": [rational_to_json(x) for x in coeffs]}
                for (i, j), coeffs in sorted(self.brackets.items())
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "LieAlgebra":
        table = {}
        for b in data.get("brackets", []):
            i, j = int(b["i"]), int(b["j"])
            table[(i, j)] = [as_rational(x) for x in b["coeffs"]]
        return cls(int(data["dim"]), table)

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, brackets={ {k: [str(x) for x in v] for k, v in self.brackets.items()} })"


def check_jacobi(L: LieAlgebra) -> bool:
    m = L.dim
    for i, j, k in combinations(range(m), 3):
        for t in range(m):
            total = Fraction(0)
            for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                for l in range(m):
                    x = L.c(a, b, l)
                    if x:
                        total += x * L.c(l, c, t)
            if total:
                return False
    return True


class ConstForm:
    """Element of ``Lambda^q g*`` with rational coefficients."""

    __slots__ = ("dim", "degree", "comps")

    def __init__(self, dim: int, degree: int, comps: dict | None = None):
        self.dim = dim
        self.degree = degree
        clean: dict[tuple, Fraction] = {}
        for idx, c in (comps or {}).items():
            idx = tuple(idx)
            if len(idx) != degree or any(not 0 <= i < dim for i in idx):
                raise ValueError(f"bad index {idx} for degree {degree} in dimension {dim}")
            sign, key = sort_with_sign(idx)
            c = as_rational(c)
            if not sign or not c:
                continue
            v = clean.get(key, Fraction(0)) + sign * c
            if v:
                clean[key] = v
            else:
                clean.pop(key, None)
        self.comps = clean

    @classmethod
    def covector(cls, dim: int, coeffs: Sequence) -> "ConstForm":
        return cls(dim, 1, {(k,): c for k, c in enumerate(coeffs)})

    @classmethod
    def basis(cls, dim: int, k: int) -> "ConstForm":
        return cls(dim, 1, {(k,): 1})

    def is_zero(self) -> bool:
        return not self.comps

    def coefficient(self, idx) -> Fraction:
        sign, key = sort_with_sign(idx)
        return sign * self.comps.get(key, Fraction(0)) if sign else Fraction(0)

    def __add__(self, other: "ConstForm") -> "ConstForm":
        if other.degree != self.degree or other.dim != self.dim:
            raise ValueError("incompatible forms")
        out = dict(self.comps)
        for k, c in other.comps.items():
            out[k] = out.get(k, Fraction(0)) + c
        return ConstForm(self.dim, self.degree, out)

    def __neg__(self):
        return ConstForm(self.dim, self.degree, {k: -c for k, c in self.comps.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = as_rational(c)
        return ConstForm(self.dim, self.degree, {k: v * c for k, v in self.comps.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ConstForm):
            return NotImplemented
        return (self.dim, self.degree, self.comps) == (other.dim, other.degree, other.comps)

    def wedge(self, other: "ConstForm") -> "ConstForm":
        if other.dim != self.dim:
            raise ValueError("incompatible forms")
        out: dict[tuple, Fraction] = {}
        for ia, ca in self.comps.items():
            for ib, cb in other.comps.items():
                sign, key = sort_with_sign(ia + ib)
                if sign:
                    out[key] = out.get(key, Fraction(0)) + sign * ca * cb
        return ConstForm(self.dim, self.degree + other.degree, out)

    def __str__(self):
        if not self.comps:
            return "0"
        out = ""
        for idx, c in sorted(self.comps.items()):
            basis = "^".join(f"e{i}" for i in idx) or "1"
            mag = abs(c)
            term = basis if mag == 1 else f"{mag}*{basis}"
            if not out:
                out = term if c > 0 else f"-{term}"
            else:
                out += f" + {term}" if c > 0 else f" - {term}"
        return out

    __repr__ = __str__


def _require_jacobi(L: LieAlgebra):
    if not L.jacobi_ok:
        raise JacobiError("structure constants violate the Jacobi identity")


def _d_covector(L: LieAlgebra, k: int) -> ConstForm:
    return ConstForm(L.dim, 2, {(i, j): -coeffs[k] for (i, j), coeffs in L.brackets.items()})


def coalgebra_d(L: LieAlgebra, a: ConstForm) -> ConstForm:
    """The differential on ``Lambda g*``, extended from covectors by graded Leibniz."""
    _require_jacobi(L)
    if a.dim != L.dim:
        raise ValueError("form and algebra have different dimensions")
    dbasis = [_d_covector(L, k) for k in range(L.dim)]
    total = ConstForm(L.dim, a.degree + 1)
    for idx, c in a.comps.items():
        for r, k in enumerate(idx):
            left = ConstForm(L.dim, r, {idx[:r]: 1})
            right = ConstForm(L.dim, len(idx) - r - 1, {idx[r + 1:]: 1})
            term = left.wedge(dbasis[k]).wedge(right) * c
            total = total + (term if r % 2 == 0 else -term)
    return total


def is_integrable_covector(L: LieAlgebra, coeffs: Sequence) -> bool:
    """Direct test ``w ^ dw == 0`` in ``Lambda^3 g*``."""
    w = ConstForm.covector(L.dim, coeffs)
    return w.wedge(coalgebra_d(L, w)).is_zero()


def lie_iw(L: LieAlgebra) -> QuadricSystem:
    """Quadrics in ``P(g*)`` cutting out the integrable left-invariant classes."""
    _require_jacobi(L)
    m = L.dim
    products = {}
    for i in range(m):
        ei = ConstForm.basis(m, i)
        for j in range(m):
            prod = ei.wedge(coalgebra_d(L, ConstForm.basis(m, j)))
            if not prod.is_zero():
                products[(i, j)] = {Label(idx, ()): c for idx, c in prod.comps.items()}
    return quadrics_from_products(m, products)


def kernel_is_subalgebra(L: LieAlgebra, coeffs: Sequence) -> bool:
    """Whether ``ker(sum coeffs[k] e^k)`` is closed under the bracket."""
    w = [as_rational(c) for c in coeffs]
    if not any(w):
        raise ValueError("zero covector")
    ker = linalg.nullspace([w], L.dim)
    for a, b in combinations(ker, 2):
        br = L.bracket(a, b)
        if sum((x * y for x, y in zip(w, br)), Fraction(0)):
            return False
    return True


# -- reference algebras ------------------------------------------------------------


def sl2() -> LieAlgebra:
    """sl(2) in the basis whose dual satisfies da = a^b, db = a^c, dc = b^c."""
    return LieAlgebra(3, {(0, 1): [-1, 0, 0], (0, 2): [0, -1, 0], (1, 2): [0, 0, -1]})


def heisenberg() -> LieAlgebra:
    """Heisenberg algebra: da = db = 0, dc = a^b."""
    return LieAlgebra(3, {(0, 1): [0, 0, -1]})


def abelian(dim: int) -> LieAlgebra:
    return LieAlgebra(dim)
