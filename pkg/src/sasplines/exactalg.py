"""Exact arithmetic: ternary forms over Q and rank/kernel of rational matrices.

Everything here is exact.  Rationals are :class:`fractions.Fraction`; forms are
homogeneous polynomials in three variables stored as a sparse map from
exponent triples to nonzero coefficients.

The field of definition is Q rather than R.  All meshes handled by the package
have rational data, and the rank of a rational matrix does not depend on
whether it is computed over Q or over R, so every dimension reported here is
the real dimension.
"""

from __future__ import annotations

import ast
import math
import random
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence, Union

from .errors import NotHomogeneous, PolySyntaxError

Exponent = tuple[int, int, int]
Number = Union[int, Fraction]
Point = tuple[Number, Number, Number]

DEFAULT_VARS = ("x", "y", "z")

__all__ = [
    "Form",
    "RatMatrix",
    "SparseMatrix",
    "parse_form",
    "parse_rational",
    "homogenize",
    "dehomogenize",
    "form_mul",
    "form_pow",
    "evaluate",
    "gradient_at",
    "monomial_basis",
    "monomial_index",
    "binom2",
    "rank",
    "rank_bareiss",
    "rank_naive",
    "rank_modular",
    "kernel_basis",
    "kernel_dim",
    "rref",
    "form_divmod",
    "divides",
]


# --------------------------------------------------------------------------
# Rationals


def parse_rational(value) -> Fraction:
    """Read ``3``, ``"3/11"``, ``"-2"`` or a Fraction into an exact rational.

    Floats are refused: a float in a mesh file almost always means the author
    lost exactness upstream.
    """
    if isinstance(value, bool):
        raise PolySyntaxError(f"not a rational number: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip().replace("−", "-"))
        except (ValueError, ZeroDivisionError) as exc:
            raise PolySyntaxError(f"not a rational number: {value!r}") from exc
    raise PolySyntaxError(f"not a rational number: {value!r}")


# --------------------------------------------------------------------------
# Forms


def binom2(k: int) -> int:
    """binom(k, 2), clamped to 0 for k < 2."""
    return k * (k - 1) // 2 if k >= 2 else 0


@lru_cache(maxsize=None)
def monomial_basis(d: int) -> tuple[Exponent, ...]:
    """Exponent triples of degree ``d`` in graded lex order with x > y > z.

    >>> monomial_basis(1)
    ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    """
    if d < 0:
        return ()
    return tuple((a, b, d - a - b) for a in range(d, -1, -1) for b in range(d - a, -1, -1))


@lru_cache(maxsize=None)
def monomial_index(d: int) -> Mapping[Exponent, int]:
    return MappingProxyType({m: i for i, m in enumerate(monomial_basis(d))})


def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


class Form:
    """A homogeneous polynomial in three variables with rational coefficients.

    Instances are immutable.  The zero form has no terms and degree 0 by
    convention; arithmetic treats it as having every degree.
    """

    __slots__ = ("_coeffs", "_degree", "_hash")

    def __init__(self, coeffs: Mapping[Exponent, Number] | None = None, degree: int | None = None):
        clean: dict[Exponent, Fraction] = {}
        for exp, c in (coeffs or {}).items():
            c = Fraction(c)
            if c:
                exp = tuple(int(e) for e in exp)
                if len(exp) != 3 or min(exp) < 0:
                    raise ValueError(f"bad exponent {exp!r}")
                clean[exp] = c
        degrees = {sum(e) for e in clean}
        if len(degrees) > 1:
            raise NotHomogeneous(f"terms of degrees {sorted(degrees)} in one form")
        if degrees:
            (deg,) = degrees
            if degree is not None and degree != deg:
                raise NotHomogeneous(f"declared degree {degree} but terms have degree {deg}")
        else:
            deg = 0
        self._coeffs = clean
        self._degree = deg
        self._hash = None

    # construction helpers
    @classmethod
    def zero(cls) -> "Form":
        return cls()

    @classmethod
    def monomial(cls, exp: Exponent, coeff: Number = 1) -> "Form":
        return cls({exp: coeff})

    @classmethod
    def linear(cls, a: Number, b: Number, c: Number) -> "Form":
        return cls({(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c})

    # basic accessors
    @property
    def degree(self) -> int:
        return self._degree

    @property
    def coeffs(self) -> Mapping[Exponent, Fraction]:
        return MappingProxyType(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in graded lex order, leading term first."""
        return sorted(self._coeffs.items(), reverse=True)

    def coefficient(self, exp: Exponent) -> Fraction:
        return self._coeffs.get(tuple(exp), Fraction(0))

    def coefficient_vector(self) -> list[Fraction]:
        """Coordinates on ``monomial_basis(self.degree)``."""
        return [self._coeffs.get(m, Fraction(0)) for m in monomial_basis(self._degree)]

    def leading_coefficient(self) -> Fraction:
        return self.terms()[0][1] if self._coeffs else Fraction(0)

    def monic(self) -> "Form":
        """Scale so the grlex-leading coefficient is 1; canonical up to scalars."""
        if self.is_zero():
            return self
        return self * (1 / self.leading_coefficient())

    def is_proportional(self, other: "Form") -> bool:
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return self.monic() == other.monic()

    # arithmetic
    def __add__(self, other: "Form") -> "Form":
        if not isinstance(other, Form):
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self._degree != other._degree:
            raise NotHomogeneous(f"cannot add forms of degrees {self._degree} and {other._degree}")
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, 0) + c
        return Form(out)

    def __neg__(self) -> "Form":
        return Form({e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other: "Form") -> "Form":
        if not isinstance(other, Form):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> "Form":
        if isinstance(other, Form):
            return form_mul(self, other)
        if isinstance(other, (int, Fraction)):
            return Form({e: c * other for e, c in self._coeffs.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Form":
        return form_pow(self, k)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._coeffs.items()))
        return self._hash

    # calculus and evaluation
    def diff(self, var: int) -> "Form":
        out = {}
        for e, c in self._coeffs.items():
            if e[var]:
                ne = list(e)
                ne[var] -= 1
                out[tuple(ne)] = c * e[var]
        return Form(out)

    def evaluate(self, p: Sequence[Number]) -> Fraction:
        return evaluate(self, p)

    def to_string(self, variables: Sequence[str] = DEFAULT_VARS) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for exp, c in self.terms():
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(variables, exp) if e
            )
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"Form({self.to_string()!r})"


def form_mul(a: Form, b: Form) -> Form:
    out: dict[Exponent, Fraction] = defaultdict(Fraction)
    for ea, ca in a._coeffs.items():
        for eb, cb in b._coeffs.items():
            out[_add_exp(ea, eb)] += ca * cb
    return Form(out)


def form_pow(a: Form, k: int) -> Form:
    if k < 0:
        raise ValueError("negative exponent")
    result = Form({(0, 0, 0): 1})
    base = a
    while k:
        if k & 1:
            result = form_mul(result, base)
        k >>= 1
        if k:
            base = form_mul(base, base)
    return result


def evaluate(f: Form, p: Sequence[Number]) -> Fraction:
    x, y, z = (Fraction(t) for t in p)
    total = Fraction(0)
    for (a, b, c), coef in f._coeffs.items():
        total += coef * x**a * y**b * z**c
    return total


def gradient_at(f: Form, p: Sequence[Number]) -> tuple[Fraction, Fraction, Fraction]:
    return tuple(evaluate(f.diff(i), p) for i in range(3))  # type: ignore[return-value]


# --------------------------------------------------------------------------
# Parsing


def _poly_add(p: dict, q: dict, sign: int = 1) -> dict:
    out = dict(p)
    for e, c in q.items():
        v = out.get(e, 0) + sign * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _poly_mul(p: dict, q: dict) -> dict:
    out: dict = defaultdict(Fraction)
    for ea, ca in p.items():
        for eb, cb in q.items():
            out[_add_exp(ea, eb)] += ca * cb
    return {e: c for e, c in out.items() if c}


def _poly_pow(p: dict, k: int) -> dict:
    out = {(0, 0, 0): Fraction(1)}
    for _ in range(k):
        out = _poly_mul(out, p)
    return out


def _const(p: dict) -> Fraction | None:
    if not p:
        return Fraction(0)
    if set(p) == {(0, 0, 0)}:
        return p[(0, 0, 0)]
    return None


def _parse_poly(text: str, variables: Sequence[str]) -> dict:
    """Parse ``text`` into a (possibly inhomogeneous) exponent -> coefficient map."""
    if not isinstance(text, str):
        raise PolySyntaxError(f"expected a polynomial string, got {type(text).__name__}")
    src = text.replace("^", "**").replace("−", "-").strip()
    if not src:
        raise PolySyntaxError("empty polynomial")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise PolySyntaxError(f"cannot parse {text!r}: {exc.msg}") from None
    index = {name: i for i, name in enumerate(variables)}

    def walk(node) -> dict:
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and type(node.value) is int:
            return {(0, 0, 0): Fraction(node.value)} if node.value else {}
        if isinstance(node, ast.Name):
            if node.id not in index:
                raise PolySyntaxError(f"unknown variable {node.id!r} in {text!r}")
            e = [0, 0, 0]
            e[index[node.id]] = 1
            return {tuple(e): Fraction(1)}
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            inner = walk(node.operand)
            return {e: -c for e, c in inner.items()} if isinstance(node.op, ast.USub) else inner
        if isinstance(node, ast.BinOp):
            left = walk(node.left)
            if isinstance(node.op, ast.Pow):
                k = node.right
                if not (isinstance(k, ast.Constant) and type(k.value) is int and k.value >= 0):
                    raise PolySyntaxError(f"exponent must be a nonnegative integer in {text!r}")
                return _poly_pow(left, k.value)
            right = walk(node.right)
            if isinstance(node.op, ast.Add):
                return _poly_add(left, right)
            if isinstance(node.op, ast.Sub):
                return _poly_add(left, right, -1)
            if isinstance(node.op, ast.Mult):
                return _poly_mul(left, right)
            if isinstance(node.op, ast.Div):
                den = _const(right)
                if den is None or den == 0:
                    raise PolySyntaxError(f"can only divide by a nonzero constant in {text!r}")
                return {e: c / den for e, c in left.items()}
        raise PolySyntaxError(f"unsupported construct {ast.dump(node)[:40]} in {text!r}")

    return walk(tree)


def parse_form(text: str, variables: Sequence[str] = DEFAULT_VARS) -> Form:
    """Parse and expand a homogeneous polynomial.

    >>> parse_form("y*z + x^2 - z^2").degree
    2
    """
    return Form(_parse_poly(text, variables))


def homogenize(
    affine_text: str, vars: Sequence[str] = ("x", "y"), hom_var: str = "z"
) -> Form:
    """Homogenize a polynomial in two variables with respect to ``hom_var``."""
    poly = _parse_poly(affine_text, (vars[0], vars[1], hom_var))
    if any(e[2] for e in poly):
        raise PolySyntaxError(f"{hom_var!r} may not appear in an affine curve: {affine_text!r}")
    if not poly:
        return Form()
    top = max(sum(e) for e in poly)
    return Form({(a, b, top - a - b): c for (a, b, _), c in poly.items()})


def dehomogenize(f: Form) -> dict[tuple[int, int], Fraction]:
    """Set z = 1; returns the affine polynomial as {(a, b): coefficient}."""
    out: dict[tuple[int, int], Fraction] = defaultdict(Fraction)
    for (a, b, _), c in f.coeffs.items():
        out[(a, b)] += c
    return {k: v for k, v in out.items() if v}


# --------------------------------------------------------------------------
# Matrices


@dataclass(frozen=True)
class RatMatrix:
    """Dense matrix of Fractions, row-major."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")

    @classmethod
    def from_rows(cls, data: Sequence[Sequence[Number]], cols: int | None = None) -> "RatMatrix":
        data = [list(r) for r in data]
        ncols = cols if cols is not None else (len(data[0]) if data else 0)
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged rows")
        return cls(len(data), ncols, tuple(Fraction(v) for r in data for v in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def sparse_rows(self) -> list[dict[int, Fraction]]:
        return [{j: v for j, v in enumerate(self.row(i)) if v} for i in range(self.rows)]

    def matvec(self, v: Sequence[Number]) -> list[Fraction]:
        return [sum((a * b for a, b in zip(self.row(i), v)), Fraction(0)) for i in range(self.rows)]


class SparseMatrix:
    """Column-assembled sparse matrix used for the large per-degree maps.

    Columns are added one at a time as ``{row: value}`` maps; the shape is
    fixed up front.  Values may be ints or Fractions.
    """

    __slots__ = ("rows", "_columns")

    def __init__(self, rows: int, columns: Iterable[Mapping[int, Number]] = ()):
        self.rows = rows
        self._columns: list[dict[int, Number]] = []
        for col in columns:
            self.add_column(col)

    @property
    def cols(self) -> int:
        return len(self._columns)

    def add_column(self, col: Mapping[int, Number]) -> int:
        clean = {}
        for i, v in col.items():
            if not 0 <= i < self.rows:
                raise IndexError(f"row {i} outside 0..{self.rows - 1}")
            if v:
                clean[i] = v
        self._columns.append(clean)
        return len(self._columns) - 1

    def column(self, j: int) -> Mapping[int, Number]:
        return self._columns[j]

    def sparse_rows(self) -> list[dict[int, Number]]:
        rows: list[dict[int, Number]] = [dict() for _ in range(self.rows)]
        for j, col in enumerate(self._columns):
            for i, v in col.items():
                rows[i][j] = v
        return rows

    def matvec(self, v: Sequence[Number]) -> list[Fraction]:
        out = [Fraction(0)] * self.rows
        for j, col in enumerate(self._columns):
            if v[j]:
                for i, a in col.items():
                    out[i] += a * v[j]
        return out

    def to_dense(self) -> RatMatrix:
        rows = self.sparse_rows()
        return RatMatrix.from_rows([[r.get(j, 0) for j in range(self.cols)] for r in rows], cols=self.cols)


AnyMatrix = Union[RatMatrix, SparseMatrix]


def _integer_rows(M: AnyMatrix) -> list[dict[int, int]]:
    """Rows with denominators cleared row by row (row scaling keeps rank and row space)."""
    out = []
    for row in M.sparse_rows():
        if not row:
            continue
        den = 1
        for v in row.values():
            if isinstance(v, Fraction):
                den = den * v.denominator // math.gcd(den, v.denominator)
        irow = {j: int(v * den) for j, v in row.items()}
        g = math.gcd(*irow.values())
        if g > 1:
            irow = {j: v // g for j, v in irow.items()}
        out.append(irow)
    return out


def _echelon(rows: list[dict[int, int]], ncols: int, modulus: int | None = None):
    """Sparse forward elimination, column by column.

    Over Z (``modulus is None``) each update is fraction-free: the target row
    is replaced by ``p*row - a*pivot_row`` for pivot ``p`` and then divided by
    its content, so entries stay integral and primitive.  Pivot rows are chosen
    to have a unit pivot when possible, then fewest nonzeros, which makes the
    many +-1 incidence columns of the spline maps collapse for free.

    Returns the list of ``(pivot_column, pivot_row)`` in column order.
    """
    active: dict[int, dict[int, int]] = {}
    col_rows: dict[int, set[int]] = defaultdict(set)
    for i, row in enumerate(rows):
        if modulus is not None:
            row = {j: v % modulus for j, v in row.items() if v % modulus}
        else:
            row = dict(row)
        if row:
            active[i] = row
            for j in row:
                col_rows[j].add(i)
    pivots: list[tuple[int, dict[int, int]]] = []
    for c in sorted(col_rows):
        cand = col_rows.get(c)
        if not cand:
            continue
        if modulus is None:
            p = min(cand, key=lambda i: (abs(active[i][c]) != 1, len(active[i]), i))
        else:
            p = min(cand, key=lambda i: (len(active[i]), i))
        prow = active.pop(p)
        for j in prow:
            col_rows[j].discard(p)
        pv = prow[c]
        if modulus is not None:
            inv = pow(pv, -1, modulus)
            prow = {j: v * inv % modulus for j, v in prow.items()}
            pv = 1
        for i in list(col_rows[c]):
            row = active[i]
            a = row[c]
            if modulus is None:
                g = math.gcd(pv, a)
                mp, ma = pv // g, a // g
                if mp < 0:
                    mp, ma = -mp, -ma
                if mp != 1:
                    for j in row:
                        row[j] *= mp
                for j, v in prow.items():
                    nv = row.get(j, 0) - ma * v
                    if nv:
                        if j not in row:
                            col_rows[j].add(i)
                        row[j] = nv
                    elif j in row:
                        del row[j]
                        col_rows[j].discard(i)
                if row:
                    g = math.gcd(*row.values())
                    if g > 1:
                        for j in row:
                            row[j] //= g
            else:
                for j, v in prow.items():
                    nv = (row.get(j, 0) - a * v) % modulus
                    if nv:
                        if j not in row:
                            col_rows[j].add(i)
                        row[j] = nv
                    elif j in row:
                        del row[j]
                        col_rows[j].discard(i)
            if not row:
                del active[i]
        pivots.append((c, prow))
    return pivots


def rank(M: AnyMatrix) -> int:
    """Exact rank over Q (sparse fraction-free elimination)."""
    return len(_echelon(_integer_rows(M), M.cols))


def kernel_dim(M: AnyMatrix) -> int:
    return M.cols - rank(M)


def rank_modular(M: AnyMatrix, primes: Sequence[int] | None = None, trials: int = 2) -> int:
    """Rank modulo large random primes; the maximum over the primes tried.

    Each modular rank is a proven lower bound for the rank over Q.  Equality
    fails only if every prime divides every maximal nonzero minor; with two
    random primes near 2**61 that probability is far below 2**-100 for the
    matrix sizes handled here.  Used only where exact elimination is too slow.
    """
    rows = _integer_rows(M)
    if primes is None:
        rng = random.Random(0x5A5)
        primes = []
        while len(primes) < trials:
            q = rng.randrange(2**60, 2**61) | 1
            if _is_probable_prime(q):
                primes.append(q)
    return max(len(_echelon(rows, M.cols, modulus=q)) for q in primes)


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def rank_bareiss(M: AnyMatrix) -> int:
    """Dense Bareiss fraction-free elimination; reference implementation."""
    rows = _integer_rows(M)
    ncols = M.cols
    A = [[r.get(j, 0) for j in range(ncols)] for r in rows]
    n = len(A)
    prev = 1
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, n) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        for i in range(r + 1, n):
            a = A[i][c]
            Ai, Ar = A[i], A[r]
            for j in range(c + 1, ncols):
                # exact by Sylvester's identity
                Ai[j] = (p * Ai[j] - a * Ar[j]) // prev
            Ai[c] = 0
        prev = p
        r += 1
        if r == n:
            break
    return r


def rank_naive(M: AnyMatrix) -> int:
    """Textbook Gaussian elimination over Fractions; reference implementation."""
    A = [[Fraction(v) for v in (r.get(j, 0) for j in range(M.cols))] for r in M.sparse_rows()]
    r = 0
    for c in range(M.cols):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(r + 1, len(A)):
            f = A[i][c] / A[r][c]
            if f:
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        r += 1
    return r


def rref(M: AnyMatrix) -> tuple[list[int], list[dict[int, Fraction]]]:
    """Reduced row echelon form: pivot columns and the normalized pivot rows."""
    pivots = _echelon(_integer_rows(M), M.cols)
    cols = [c for c, _ in pivots]
    R = [{j: Fraction(v, row[c]) for j, v in row.items()} for c, row in pivots]
    for k in range(len(R) - 1, -1, -1):
        c = cols[k]
        rk = R[k]
        for i in range(k):
            a = R[i].get(c)
            if a:
                ri = R[i]
                for j, v in rk.items():
                    nv = ri.get(j, 0) - a * v
                    if nv:
                        ri[j] = nv
                    else:
                        ri.pop(j, None)
    return cols, R


def kernel_basis(M: AnyMatrix) -> list[list[Fraction]]:
    """Nullspace basis read off the RREF: one vector per free column, in column order.

    The RREF is unique, so the basis is deterministic.
    """
    cols, R = rref(M)
    pivot_set = set(cols)
    free = [j for j in range(M.cols) if j not in pivot_set]
    basis = []
    for f in free:
        v = [Fraction(0)] * M.cols
        v[f] = Fraction(1)
        for c, row in zip(cols, R):
            a = row.get(f)
            if a:
                v[c] = -a
        basis.append(v)
    return basis


def form_divmod(f: Form, g: Form) -> tuple[Form, Form]:
    """Division with remainder by a single form (grlex, x > y > z).

    For one divisor the remainder is zero exactly when ``g`` divides ``f``.
    """
    if g.is_zero():
        raise ZeroDivisionError("division by the zero form")
    lead_e, lead_c = g.terms()[0]
    rem = dict(f.coeffs)
    quo: dict[Exponent, Fraction] = {}
    out_rem: dict[Exponent, Fraction] = {}
    gterms = list(g.coeffs.items())
    while rem:
        e = max(rem)
        c = rem[e]
        if all(a >= b for a, b in zip(e, lead_e)):
            qe = (e[0] - lead_e[0], e[1] - lead_e[1], e[2] - lead_e[2])
            qc = c / lead_c
            quo[qe] = quo.get(qe, 0) + qc
            for ge, gc in gterms:
                te = _add_exp(qe, ge)
                nv = rem.get(te, 0) - qc * gc
                if nv:
                    rem[te] = nv
                else:
                    rem.pop(te, None)
        else:
            out_rem[e] = c
            del rem[e]
    return Form(quo), Form(out_rem)


def divides(g: Form, f: Form) -> bool:
    return form_divmod(f, g)[1].is_zero()
