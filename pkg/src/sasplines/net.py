"""Nets of forms and the transfer of spline dimensions through them.

A net N = span(f, g, h) of degree-n forms without common zeros defines a
morphism phi = [f : g : h] of the projective plane.  A mesh whose edge forms
all lie in N is the pullback of a rectilinear mesh phi(Delta): every edge
form G is phi^*(l) for the linear form l = alpha u + beta v + gamma w read off
from G = alpha f + beta g + gamma h.  Spline dimensions over Delta are then
determined by those over phi(Delta) and by c_n(j) = dim (S/<f,g,h>)_j, the
coefficients of (1 + t + ... + t^(n-1))^3.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from pathlib import Path
from typing import Mapping, Sequence

from .errors import (
    DegreeMismatch,
    HasBasepoints,
    InsufficientImageData,
    NotInNet,
    SchemaError,
    SpanDeficient,
)
from .exactalg import Form, RatMatrix, evaluate, monomial_basis, parse_form, rank, rref
from .hilbert import HP, hp_value
from .homology import quotient_dim
from .mesh import Edge, Mesh, Vertex

__all__ = [
    "NetSpec",
    "MS_NET",
    "net_check",
    "load_net",
    "net_membership",
    "c_table",
    "cn_sum_check",
    "image_mesh",
    "tensor_dim",
    "tensor_table",
    "hp_transform",
    "postulation_bound",
    "net_curve_through",
]


@dataclass(frozen=True)
class NetSpec:
    """Three forms of common degree n spanning a three-dimensional space."""

    f: Form
    g: Form
    h: Form
    basepoint_free: bool

    @property
    def n(self) -> int:
        return self.f.degree

    @property
    def forms(self) -> tuple[Form, Form, Form]:
        return (self.f, self.g, self.h)

    def pullback(self, linear: Form) -> Form:
        """phi^*(alpha u + beta v + gamma w) = alpha f + beta g + gamma h."""
        coeffs = (linear.coefficient((1, 0, 0)), linear.coefficient((0, 1, 0)), linear.coefficient((0, 0, 1)))
        return sum((c * F for c, F in zip(coeffs, self.forms) if c), Form())

    def apply(self, p: Sequence) -> tuple[Fraction, Fraction, Fraction]:
        """phi(p) in homogeneous coordinates."""
        return tuple(evaluate(F, p) for F in self.forms)  # type: ignore[return-value]


def _coefficient_matrix(forms: Sequence[Form], d: int) -> RatMatrix:
    basis = monomial_basis(d)
    return RatMatrix.from_rows([[F.coefficient(m) for F in forms] for m in basis], cols=len(forms))


def net_check(f: Form, g: Form, h: Form, require_basepoint_free: bool = True) -> NetSpec:
    """Validate a net.

    Three degree-n forms without common zeros form a regular sequence, whose
    quotient vanishes from degree 3n - 2 on; conversely a common zero keeps
    every graded piece of the quotient nonzero.  So a single dimension count
    in degree 3n - 2 decides basepoint-freeness.
    """
    forms = (f, g, h)
    if any(F.is_zero() for F in forms):
        raise SpanDeficient("a net generator is zero")
    n = f.degree
    if g.degree != n or h.degree != n:
        raise DegreeMismatch(f"net forms have degrees {[F.degree for F in forms]}")
    if rank(_coefficient_matrix(forms, n)) != 3:
        raise SpanDeficient("the three forms span less than a three-dimensional space")
    free = quotient_dim(forms, 3 * n - 2) == 0
    if require_basepoint_free and not free:
        raise HasBasepoints("the net forms have a common zero in the projective plane")
    return NetSpec(f, g, h, free)


def load_net(path: str | Path) -> NetSpec:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON ({exc})") from None
    forms = doc.get("forms") if isinstance(doc, dict) else None
    if not isinstance(forms, list) or len(forms) != 3 or not all(isinstance(s, str) for s in forms):
        raise SchemaError(f"{path}: expected {{\"forms\": [three polynomial strings]}}")
    return net_check(*(parse_form(s) for s in forms))


def net_membership(net: NetSpec, G: Form) -> tuple[Fraction, Fraction, Fraction] | None:
    """(alpha, beta, gamma) with G = alpha f + beta g + gamma h, or None."""
    if not G.is_zero() and G.degree != net.n:
        raise DegreeMismatch(f"form of degree {G.degree} tested against a net of degree {net.n}")
    M = _coefficient_matrix((*net.forms, G), net.n)
    pivots, rows = rref(M)
    if 3 in pivots:
        return None
    # in reduced echelon form the non-pivot column G is sum_p R[p, G] * column_p
    sol = [Fraction(0)] * 3
    for p, row in zip(pivots, rows):
        sol[p] = row.get(3, Fraction(0))
    return (sol[0], sol[1], sol[2])


@lru_cache(maxsize=None)
def _c_values(n: int) -> tuple[int, ...]:
    base = [1] * n
    out = [1]
    for _ in range(3):
        nxt = [0] * (len(out) + n - 1)
        for i, a in enumerate(out):
            for j, b in enumerate(base):
                nxt[i + j] += a * b
        out = nxt
    return tuple(out)


def c_table(n: int) -> list[int]:
    """[c_n(0), ..., c_n(3n-3)]: coefficients of (1 + t + ... + t^(n-1))^3."""
    if n < 1:
        raise ValueError("n must be positive")
    return list(_c_values(n))


def _c(n: int, j: int) -> int:
    vals = _c_values(n)
    return vals[j] if 0 <= j < len(vals) else 0


def cn_sum_check(n: int) -> bool:
    """c_n(i) + c_n(i+n) + c_n(i+2n) = n^2 for 0 <= i < n."""
    return all(_c(n, i) + _c(n, i + n) + _c(n, i + 2 * n) == n * n for i in range(n))


def image_mesh(mesh: Mesh, net: NetSpec | Sequence[Form]) -> Mesh:
    """The rectilinear mesh phi(mesh): same cells, linear edge forms.

    Vertex coordinates are the dehomogenized images phi(p).  They only serve
    as bookkeeping, so coincident images and images on the line at infinity
    produce a warning rather than an error.  A bare triple of forms is
    checked with :func:`net_check` first.
    """
    if not isinstance(net, NetSpec):
        net = net_check(*net)
    forms: dict[str, Form] = {}
    for e in mesh.edges:
        coeffs = net_membership(net, e.form) if e.form.degree == net.n else None
        if coeffs is None:
            raise NotInNet(f"edge {e.id} form {e.form} does not lie in the net")
        forms[e.id] = _primitive(Form.linear(*coeffs))
    verts = []
    seen: dict[tuple[Fraction, Fraction], str] = {}
    for v in mesh.vertices:
        u, w_, w = net.apply(v.hpoint)
        if w == 0:
            warnings.warn(f"vertex {v.id} maps to the line at infinity; its affine image is a placeholder")
            pt = (u, w_)
        else:
            pt = (u / w, w_ / w)
        if pt in seen:
            warnings.warn(f"vertices {seen[pt]} and {v.id} have the same image")
        seen.setdefault(pt, v.id)
        verts.append(Vertex(v.id, pt, v.interior))
    edges = tuple(Edge(e.id, forms[e.id], e.tail, e.head, e.interior, e.label) for e in mesh.edges)
    name = f"{mesh.name}_image" if mesh.name else "image"
    return Mesh(tuple(verts), edges, mesh.faces, name=name)


def tensor_dim(
    image_hf: Sequence[int], n: int, d: int, image_hp: HP | None = None
) -> int:
    """sum over n i + j = d of dim C_i(phi(Delta)) * c_n(j).

    Degrees beyond the supplied table are filled from ``image_hp`` when given
    (valid only past the image postulation number).
    """
    total = 0
    for i in range(d // n + 1):
        c = _c(n, d - n * i)
        if not c:
            continue
        if i < len(image_hf):
            v = image_hf[i]
        elif image_hp is not None:
            v = hp_value(image_hp, i)
            if v.denominator != 1:
                raise InsufficientImageData("image Hilbert polynomial is not integer-valued")
            v = int(v)
        else:
            raise InsufficientImageData(
                f"degree {d} needs dim C_{i}(phi(Delta)); table stops at {len(image_hf) - 1}"
            )
        total += c * v
    return total


def tensor_table(image_hf: Sequence[int], n: int, d_max: int, image_hp: HP | None = None) -> list[int]:
    return [tensor_dim(image_hf, n, d, image_hp) for d in range(d_max + 1)]


def hp_transform(a, b, c, n: int) -> HP:
    """Hilbert polynomial of C^r(Delta) from a d^2 + b d + c for C^r(phi(Delta)).

    Matching HP(C(Delta), n i) = sum_k c_n(k n) HP(C(phi(Delta)), i - k)
    coefficientwise, and using c_n(0) + c_n(n) + c_n(2n) = n^2, gives
    A = a, B = b n - 2 a (n^2 - 1 + c_n(2n)) / n and
    C = (n^2 - 1 + 3 c_n(2n)) a - (n^2 - 1 + c_n(2n)) b + n^2 c.
    """
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    c2 = _c(n, 2 * n)
    A = a
    B = b * n - 2 * a * Fraction(n * n - 1 + c2, n)
    C = (n * n - 1 + 3 * c2) * a - (n * n - 1 + c2) * b + n * n * c
    return (A, B, C)


def postulation_bound(d0: int, n: int) -> int:
    """Upper bound n (d0 + 3) - 3 on the postulation number of C^r(Delta)."""
    return n * (d0 + 3) - 3


def _primitive(F: Form) -> Form:
    """Scale to coprime integer coefficients with positive leading coefficient."""
    if F.is_zero():
        return F
    coeffs = list(F.coeffs.values())
    den = 1
    for q in coeffs:
        den = den * q.denominator // gcd(den, q.denominator)
    ints = [int(q * den) for q in coeffs]
    g = 0
    for k in ints:
        g = gcd(g, k)
    scale = Fraction(den, g)
    if F.leading_coefficient() < 0:
        scale = -scale
    return F * scale


def net_curve_through(net: Sequence[Form] | NetSpec, p: Sequence, q: Sequence) -> Form:
    """The member of the net vanishing at the two points p and q.

    phi^*(l) vanishes at p and q iff l vanishes at phi(p) and phi(q), so l is
    the line through the two images (their cross product).
    """
    forms = net.forms if isinstance(net, NetSpec) else tuple(net)
    a = [evaluate(F, p) for F in forms]
    b = [evaluate(F, q) for F in forms]
    l = (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])
    return _primitive(sum((c * F for c, F in zip(l, forms) if c), Form()))


MS_NET: tuple[Form, Form, Form] = tuple(  # type: ignore[assignment]
    parse_form(t) for t in ("x^2 - y*z", "y^2 - x*z", "z^2 + x*y")
)
