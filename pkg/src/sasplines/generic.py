"""Genericity of a mesh, P-adjacency subcomplexes, the generic dimension formula
and the regularity bound that certifies it.

Conditions checked (all over interior cells unless ``strict`` is requested):

1. two edges meeting at a vertex lie on the same curve or have distinct
   tangent lines there;
2. the only common zero of the edge forms at a vertex v is v itself;
3. every subcomplex Delta_{P,sigma} is contractible;
4. the edge forms along the boundary of each face are pairwise distinct.

Condition 2 and the point primes used by condition 3 involve intersection
points of edge curves, which are generally irrational.  They are computed
from exact resultants with high-precision root finding, and every conclusion
drawn from them is marked numeric in the report.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

import mpmath
import sympy

from .errors import NotGeneric, NotStabilized, SingularBranch
from .exactalg import Form, binom2, gradient_at
from .homology import quotient_dim
from .mesh import Mesh, require_valid, star

__all__ = [
    "DEFAULT_TOL",
    "PrimeDescriptor",
    "Subcomplex",
    "ConditionResult",
    "GenericityReport",
    "curve_intersections",
    "check_condition1",
    "check_condition2",
    "enumerate_relevant_primes",
    "subcomplex",
    "subcomplex_classes",
    "check_condition3",
    "check_condition4",
    "genericity_report",
    "arcs_at",
    "generic_dim",
    "generic_vertex_term",
    "regularity_bound",
]

DEFAULT_TOL = 1e-9
_DPS = 50  # working precision (decimal digits) for root finding

Point = tuple  # projective point, three mpmath.mpc coordinates


# --------------------------------------------------------------------------
# small helpers


def _distinct_forms(forms: Iterable[Form]) -> list[Form]:
    out: list[Form] = []
    for f in forms:
        if not any(f.is_proportional(g) for g in out):
            out.append(f)
    return out


def _proportional3(a: Sequence[Fraction], b: Sequence[Fraction]) -> bool:
    return (
        a[0] * b[1] == a[1] * b[0]
        and a[0] * b[2] == a[2] * b[0]
        and a[1] * b[2] == a[2] * b[1]
    )


def _fmt_q(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# --------------------------------------------------------------------------
# numeric intersection of plane curves

_X, _Y = sympy.symbols("x y")


def _sym(F: Form, z: int = 1):
    """Dehomogenize at z = ``z`` into a sympy polynomial in x, y."""
    expr = sum(
        sympy.Rational(c.numerator, c.denominator) * _X**a * _Y**b * z**cz
        for (a, b, cz), c in F.coeffs.items()
    )
    return sympy.Poly(expr, _X, _Y, domain="QQ")


def _mp(q) -> mpmath.mpf:
    q = sympy.Rational(q)
    return mpmath.mpf(int(q.p)) / int(q.q)


def _univariate_roots(coeffs: Sequence) -> list:
    """Roots of a univariate polynomial given by mp coefficients, highest first."""
    coeffs = list(coeffs)
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    if len(coeffs) < 2:
        return []
    with mpmath.workdps(_DPS):
        return list(mpmath.polyroots(coeffs, maxsteps=400, extraprec=4 * _DPS))


def _normalize(p: Sequence) -> tuple:
    """Scale a projective point so its largest coordinate (first on ties) is 1."""
    mags = [abs(c) for c in p]
    top = max(mags)
    k = next(i for i, m in enumerate(mags) if m >= top * (1 - mpmath.mpf(10) ** -20))
    return tuple(c / p[k] for c in p)


def _same_point(p: Sequence, q: Sequence, tol: float) -> bool:
    cross = (
        p[1] * q[2] - p[2] * q[1],
        p[2] * q[0] - p[0] * q[2],
        p[0] * q[1] - p[1] * q[0],
    )
    np_ = mpmath.sqrt(sum(abs(c) ** 2 for c in p))
    nq = mpmath.sqrt(sum(abs(c) ** 2 for c in q))
    return mpmath.sqrt(sum(abs(c) ** 2 for c in cross)) <= tol * np_ * nq


def _residual(F: Form, p: Sequence) -> float:
    """|F(p)| relative to the coefficient size, for p scaled to unit norm."""
    n = mpmath.sqrt(sum(abs(c) ** 2 for c in p))
    q = [c / n for c in p]
    val = mpmath.mpf(0)
    for (a, b, c), coef in F.coeffs.items():
        val += _mp(coef) * q[0] ** a * q[1] ** b * q[2] ** c
    scale = sum(abs(_mp(c)) for c in F.coeffs.values())
    return float(abs(val) / scale)


def _vanishes(F: Form, p: Sequence, tol: float) -> bool:
    return _residual(F, p) <= tol


def curve_intersections(F: Form, G: Form, tol: float = DEFAULT_TOL) -> list[tuple]:
    """All common zeros of two forms without a common factor, as projective points.

    Affine points come from the exact resultant in y; points on the line at
    infinity come from the exact gcd of the two binary forms F(x, y, 0) and
    G(x, y, 0).  Points are normalized and deduplicated within ``tol``.
    """
    pts: list[tuple] = []
    with mpmath.workdps(_DPS):
        f, g = _sym(F), _sym(G)
        if sympy.gcd(f, g).total_degree() > 0:
            raise ValueError(f"forms {F} and {G} share a common component")
        res = sympy.resultant(f.as_expr(), g.as_expr(), _Y)
        res = sympy.Poly(res, _X)
        if not res.is_zero:
            xs = _univariate_roots([_mp(c) for c in res.all_coeffs()])
            for x0 in xs:
                for poly in (f, g):
                    ycoeffs = _coeffs_in_y(poly, x0)
                    if ycoeffs is None:
                        continue
                    for y0 in _univariate_roots(ycoeffs):
                        p = (mpmath.mpc(x0), mpmath.mpc(y0), mpmath.mpc(1))
                        if _vanishes(F, p, tol) and _vanishes(G, p, tol):
                            _add_point(pts, p, tol)
        # on the line at infinity: [x : 1 : 0] and [1 : 0 : 0]
        fi = sympy.Poly(_sym(F, 0).as_expr().subs(_Y, 1), _X)
        gi = sympy.Poly(_sym(G, 0).as_expr().subs(_Y, 1), _X)
        common = sympy.gcd(fi, gi)
        if fi.is_zero and gi.is_zero:
            raise ValueError(f"forms {F} and {G} both contain the line at infinity")
        if not common.is_zero and common.degree() > 0:
            for x0 in _univariate_roots([_mp(c) for c in common.all_coeffs()]):
                _add_point(pts, (mpmath.mpc(x0), mpmath.mpc(1), mpmath.mpc(0)), tol)
        elif common.is_zero:  # one of them vanishes identically on z = 0
            other = gi if fi.is_zero else fi
            for x0 in _univariate_roots([_mp(c) for c in other.all_coeffs()]):
                _add_point(pts, (mpmath.mpc(x0), mpmath.mpc(1), mpmath.mpc(0)), tol)
        if F.evaluate((1, 0, 0)) == 0 and G.evaluate((1, 0, 0)) == 0:
            _add_point(pts, (mpmath.mpc(1), mpmath.mpc(0), mpmath.mpc(0)), tol)
    return pts


def _coeffs_in_y(poly: sympy.Poly, x0) -> list | None:
    """Coefficients (highest first) of poly(x0, y), or None if it vanishes identically."""
    deg = poly.degree(_Y)
    coeffs = [mpmath.mpc(0)] * (deg + 1)
    for (a, b), c in poly.terms():
        coeffs[deg - b] += _mp(c) * x0**a
    scale = max(abs(c) for c in coeffs)
    if scale <= mpmath.mpf(10) ** (-_DPS // 2):
        return None
    return coeffs


def _add_point(pts: list, p: Sequence, tol: float) -> None:
    p = _normalize(p)
    if not any(_same_point(p, q, tol) for q in pts):
        pts.append(p)


# --------------------------------------------------------------------------
# primes


@dataclass(frozen=True)
class PrimeDescriptor:
    """A curve prime (the ideal of an edge curve) or a point prime.

    A point prime holds one point, or a pair of complex-conjugate points whose
    common ideal is defined over the reals.  ``exact`` holds rational
    homogeneous coordinates when they are known exactly.
    """

    kind: str  # "curve" or "point"
    form: Form | None = None
    points: tuple = ()
    exact: tuple[Fraction, Fraction, Fraction] | None = None
    tol: float = DEFAULT_TOL

    @property
    def numeric(self) -> bool:
        return self.kind == "point" and self.exact is None

    def contains(self, G: Form) -> bool:
        """Is G in P?  Proportionality for curves, vanishing for points."""
        if self.kind == "curve":
            return self.form.is_proportional(G)
        if self.exact is not None:
            return G.evaluate(self.exact) == 0
        return all(_vanishes(G, p, self.tol) for p in self.points)

    def label(self) -> str:
        if self.kind == "curve":
            return f"curve <{self.form}>"
        if self.exact is not None:
            x, y, z = self.exact
            if z != 0:
                return f"point ({_fmt_q(x / z)}, {_fmt_q(y / z)})"
            return f"point at infinity [{_fmt_q(x)}:{_fmt_q(y)}:0]"
        parts = []
        for p in self.points:
            coords = ":".join(_fmt_c(c) for c in p)
            parts.append(f"[{coords}]")
        kind = "conjugate points" if len(self.points) == 2 else "point"
        return f"{kind} ~" + " & ".join(parts)

    def sort_key(self):
        if self.kind == "curve":
            return (0, str(self.form))
        return (1, self.exact is None, self.label())


def _fmt_c(c) -> str:
    re_, im_ = float(c.real), float(c.imag)
    if abs(im_) < 1e-12:
        return f"{re_:.6g}"
    return f"{re_:.6g}{im_:+.6g}i"


def _rationalize(p: Sequence, tol: float) -> tuple[Fraction, Fraction, Fraction] | None:
    """Exact coordinates if the normalized point is real with small-height rationals."""
    if any(abs(c.imag) > tol for c in p):
        return None
    out = []
    for c in p:
        q = Fraction(float(c.real)).limit_denominator(10**6)
        if abs(float(c.real) - float(q)) > tol:
            return None
        out.append(q)
    return tuple(out)  # type: ignore[return-value]


def enumerate_relevant_primes(mesh: Mesh, tol: float = DEFAULT_TOL) -> list[PrimeDescriptor]:
    """Primes P for which some Delta_{P,sigma} can have more than one face.

    Curve primes of the distinct interior edge forms; point primes for the
    interior vertices and for every intersection point of two distinct
    interior edge curves (including points at infinity).  A point on only one
    edge curve gives the same subcomplexes as that curve's prime, so it is
    represented by the curve prime.
    """
    require_valid(mesh)
    key = ("relevant_primes", tol)
    if key in mesh._cache:
        return mesh._cache[key]
    forms = _distinct_forms(e.form for e in mesh.interior_edges)
    primes = [PrimeDescriptor("curve", form=f) for f in forms]
    raw: list[tuple] = []
    for v in mesh.interior_vertices:
        p = tuple(mpmath.mpc(_mp(c)) for c in v.hpoint)
        _add_point(raw, p, tol)
    for F, G in combinations(forms, 2):
        for p in curve_intersections(F, G, tol):
            _add_point(raw, p, tol)
    used = [False] * len(raw)
    for i, p in enumerate(raw):
        if used[i]:
            continue
        used[i] = True
        exact = _rationalize(p, tol)
        if exact is not None and not all(
            (F.evaluate(exact) == 0) == _vanishes(F, p, tol) for F in forms
        ):
            exact = None  # close to, but not exactly, a rational point
        if exact is not None:
            primes.append(PrimeDescriptor("point", points=(p,), exact=exact, tol=tol))
            continue
        group = (p,)
        if any(abs(c.imag) > tol for c in p):
            conj = tuple(mpmath.conj(c) for c in p)
            for j in range(i + 1, len(raw)):
                if not used[j] and _same_point(conj, raw[j], tol):
                    used[j] = True
                    group = (p, raw[j])
                    break
        primes.append(PrimeDescriptor("point", points=group, tol=tol))
    primes.sort(key=PrimeDescriptor.sort_key)
    mesh._cache[key] = primes
    return primes


# --------------------------------------------------------------------------
# subcomplexes


@dataclass(frozen=True)
class Subcomplex:
    seed: str
    faces: tuple[str, ...]
    edges: tuple[str, ...]
    vertices: tuple[str, ...]

    @property
    def euler(self) -> int:
        return len(self.faces) - len(self.edges) + len(self.vertices)

    @property
    def contractible(self) -> bool:
        return self.euler == 1

    @property
    def boundary_components(self) -> int:
        """c = 2 - chi for a connected open subset of the plane."""
        return 2 - self.euler


def subcomplex(mesh: Mesh, P: PrimeDescriptor, sigma: str) -> Subcomplex:
    """Delta_{P,sigma}: the P-adjacency class of ``sigma`` with its edges and vertices."""
    require_valid(mesh)
    in_p = {e.id: P.contains(e.form) for e in mesh.interior_edges}
    adj: dict[str, set[str]] = {f.id: set() for f in mesh.faces}
    for eid, ok in in_p.items():
        if ok:
            (a, _), (b, _) = mesh.faces_of_edge(eid)
            adj[a].add(b)
            adj[b].add(a)
    mesh.face(sigma)
    seen = {sigma}
    stack = [sigma]
    while stack:
        cur = stack.pop()
        for nxt in adj[cur]:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    faces = [f.id for f in mesh.faces if f.id in seen]
    edges = [
        e.id
        for e in mesh.interior_edges
        if in_p[e.id] and any(fid in seen for fid, _ in mesh.faces_of_edge(e.id))
    ]
    class_vertices: set[str] = set()
    for fid in faces:
        class_vertices |= mesh.face_vertices(fid)
    vertices = [
        v.id
        for v in mesh.interior_vertices
        if v.id in class_vertices and all(in_p[e.id] for e in mesh.edges_at(v.id))
    ]
    return Subcomplex(sigma, tuple(faces), tuple(edges), tuple(vertices))


def subcomplex_classes(mesh: Mesh, P: PrimeDescriptor) -> list[Subcomplex]:
    """One subcomplex per P-adjacency class; their faces partition the mesh."""
    out = []
    covered: set[str] = set()
    for f in mesh.faces:
        if f.id not in covered:
            sub = subcomplex(mesh, P, f.id)
            covered.update(sub.faces)
            out.append(sub)
    return out


# --------------------------------------------------------------------------
# the four conditions


@dataclass(frozen=True)
class ConditionResult:
    number: int
    passed: bool
    witnesses: tuple[str, ...] = ()
    info: tuple[str, ...] = ()
    numeric: bool = False

    def lines(self) -> list[str]:
        tag = " (numeric)" if self.numeric else ""
        out = [f"condition {self.number}: {'PASS' if self.passed else 'FAIL'}{tag}"]
        out += [f"    witness: {w}" for w in self.witnesses]
        out += [f"    {i}" for i in self.info]
        return out


def check_condition1(mesh: Mesh, strict: bool = False) -> ConditionResult:
    """Distinct tangents at vertices, unless the two edges lie on the same curve.

    By default only interior vertices and interior edges are inspected;
    ``strict`` includes boundary vertices and boundary edges.
    """
    require_valid(mesh)
    witnesses, info = [], []
    vertices = mesh.vertices if strict else mesh.interior_vertices
    for v in vertices:
        edges = mesh.edges_at(v.id, interior_only=not strict)
        grads = {}
        for e in edges:
            g = gradient_at(e.form, v.hpoint)
            if not any(g):
                raise SingularBranch(f"edge {e.id} is singular at vertex {v.id}")
            grads[e.id] = g
        for e1, e2 in combinations(edges, 2):
            if e1.form.is_proportional(e2.form):
                continue
            if _proportional3(grads[e1.id], grads[e2.id]):
                witnesses.append(f"vertex {v.id}: edges {e1.id}, {e2.id} share a tangent line")
        tangents: list = []
        for e in edges:
            if not any(_proportional3(grads[e.id], t) for t in tangents):
                tangents.append(grads[e.id])
        info.append(f"vertex {v.id}: {len(tangents)} distinct tangent(s)")
    return ConditionResult(1, not witnesses, tuple(witnesses), tuple(info))


def _vertex_forms(mesh: Mesh, vid: str) -> list[Form]:
    return _distinct_forms(e.form for e in mesh.edges_at(vid))


def check_condition2(
    mesh: Mesh, r: int = 0, d_cap: int | None = None, tol: float = DEFAULT_TOL
) -> ConditionResult:
    """The radical of J(v) is the ideal of v.

    J(v) and the ideal of its edge forms have the same radical, so r does not
    matter.  (a) exact: the quotient by the edge forms has eventually constant
    Hilbert function, i.e. finite support.  (b) numeric: every common zero of
    all edge forms at v is v itself.
    """
    require_valid(mesh)
    witnesses, info = [], []
    numeric = False
    for v in mesh.interior_vertices:
        forms = _vertex_forms(mesh, v.id)
        if len(forms) < 2:
            witnesses.append(f"vertex {v.id}: all edges lie on one curve, J(v) is not zero-dimensional")
            continue
        cap = d_cap if d_cap is not None else sum(sorted(f.degree for f in forms)[-2:]) + 2
        vals = [quotient_dim(forms, d) for d in (cap - 2, cap - 1, cap)]
        if len(set(vals)) != 1:
            raise NotStabilized(
                f"vertex {v.id}: dim(S/I)_d = {vals} at d = {cap - 2}..{cap}; raise d_cap"
            )
        info.append(f"vertex {v.id}: degree of the scheme of its edge forms = {vals[0]}")
        numeric = True
        vpt = tuple(mpmath.mpc(_mp(c)) for c in v.hpoint)
        extra: list[tuple] = []
        for F, G in combinations(forms, 2):
            for p in curve_intersections(F, G, tol):
                if all(_vanishes(H, p, tol) for H in forms) and not _same_point(p, vpt, tol):
                    _add_point(extra, p, tol)
        for p in extra:
            exact = _rationalize(p, tol)
            where = (
                PrimeDescriptor("point", points=(p,), exact=exact).label()
                if exact is not None and all(H.evaluate(exact) == 0 for H in forms)
                else "point ~[" + ":".join(_fmt_c(c) for c in p) + "]"
            )
            witnesses.append(f"vertex {v.id}: edge forms also vanish at {where}")
    return ConditionResult(2, not witnesses, tuple(witnesses), tuple(info), numeric)


def check_condition3(mesh: Mesh, tol: float = DEFAULT_TOL) -> ConditionResult:
    """Every Delta_{P,sigma} is contractible (Euler characteristic 1)."""
    require_valid(mesh)
    witnesses, info = [], []
    numeric = False
    primes = enumerate_relevant_primes(mesh, tol)
    for P in primes:
        for sub in subcomplex_classes(mesh, P):
            if not sub.contractible:
                numeric = numeric or P.numeric
                witnesses.append(
                    f"{P.label()}, face {sub.seed}: chi = {len(sub.faces)} - {len(sub.edges)}"
                    f" + {len(sub.vertices)} = {sub.euler}"
                )
    info.append(f"{len(primes)} relevant prime(s) inspected")
    if any(P.numeric for P in primes):
        numeric = True
    return ConditionResult(3, not witnesses, tuple(witnesses), tuple(info), numeric)


def check_condition4(mesh: Mesh) -> ConditionResult:
    """Interior edge forms along each face are pairwise non-proportional."""
    require_valid(mesh)
    witnesses = []
    for f in mesh.faces:
        edges = [mesh.edge(eid) for eid in f.edge_ids()]
        edges = [e for e in edges if e.interior]
        for e1, e2 in combinations(edges, 2):
            if e1.form.is_proportional(e2.form):
                witnesses.append(f"face {f.id}: edges {e1.id}, {e2.id} lie on the same curve")
    return ConditionResult(4, not witnesses, tuple(witnesses))


@dataclass(frozen=True)
class GenericityReport:
    condition1: ConditionResult
    condition2: ConditionResult
    condition3: ConditionResult
    condition4: ConditionResult
    numeric_caveats: tuple[str, ...] = field(default=())

    @property
    def conditions(self) -> tuple[ConditionResult, ...]:
        return (self.condition1, self.condition2, self.condition3, self.condition4)

    @property
    def generic(self) -> bool:
        return all(c.passed for c in self.conditions)

    @property
    def formula_applies(self) -> bool:
        """Conditions 1-3 are what the generic dimension formula needs."""
        return self.condition1.passed and self.condition2.passed and self.condition3.passed

    def lines(self) -> list[str]:
        out = []
        for c in self.conditions:
            out += c.lines()
        out += [f"note: {n}" for n in self.numeric_caveats]
        out.append(f"generic: {'yes' if self.generic else 'no'}")
        return out


def genericity_report(
    mesh: Mesh, strict: bool = False, tol: float = DEFAULT_TOL, d_cap: int | None = None
) -> GenericityReport:
    key = ("genericity", strict, tol, d_cap)
    if key in mesh._cache:
        return mesh._cache[key]
    c1 = check_condition1(mesh, strict)
    c2 = check_condition2(mesh, d_cap=d_cap, tol=tol)
    c3 = check_condition3(mesh, tol)
    c4 = check_condition4(mesh)
    caveats = []
    for c in (c2, c3):
        if c.numeric:
            caveats.append(
                f"condition {c.number} uses floating-point intersection points (tolerance {tol:g})"
            )
    report = GenericityReport(c1, c2, c3, c4, tuple(caveats))
    mesh._cache[key] = report
    return report


# --------------------------------------------------------------------------
# dimension formula and regularity bound


def arcs_at(mesh: Mesh, vid: str) -> int:
    """Number of distinct edge curves among the interior edges at ``vid``."""
    return len(_vertex_forms(mesh, vid))


def generic_vertex_term(r: int, arcs: int) -> int:
    """binom(r + a + 2, 2) - t binom(a + 1, 2), t = min(r+2, arcs), a = floor((r+1)/(t-1))."""
    t = min(r + 2, arcs)
    if t < 2:
        raise NotGeneric("a vertex needs at least two distinct edge curves")
    a = (r + 1) // (t - 1)
    return binom2(r + a + 2) - t * binom2(a + 1)


def generic_dim(mesh: Mesh, r: int, d: int, check: bool = True, tol: float = DEFAULT_TOL) -> int:
    """Closed-form dim C^r_d for a mesh satisfying conditions 1-3."""
    require_valid(mesh)
    if check:
        report = genericity_report(mesh, tol=tol)
        if not report.formula_applies:
            failed = [str(c.number) for c in report.conditions[:3] if not c.passed]
            raise NotGeneric(f"mesh fails condition(s) {', '.join(failed)}")
    faces = (mesh.phi2 - mesh.phi1) * binom2(d + 2)
    edges = sum(binom2(d - (r + 1) * e.degree + 2) for e in mesh.interior_edges)
    verts = sum(generic_vertex_term(r, arcs_at(mesh, v.id)) for v in mesh.interior_vertices)
    return faces + edges + verts


def regularity_bound(mesh: Mesh, r: int) -> tuple[int, dict[str, int]]:
    """D = max over interior edges of D_tau = (r+1) * (sum of interior edge degrees in the star)."""
    require_valid(mesh)
    table = {}
    for e in mesh.interior_edges:
        cells = star(mesh, e.id)
        total = sum(o.degree for o in mesh.interior_edges if o.id in cells)
        table[e.id] = (r + 1) * total
    return (max(table.values(), default=0), table)
