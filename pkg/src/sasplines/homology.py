"""Graded pieces of the ideal complex J: J_1 -> J_0 and of the vertex quotients.

For an interior edge tau, J(tau) is the principal ideal of G_tau^(r+1); for an
interior vertex v, J(v) is the sum of J(tau) over incident interior edges.
Every quantity below is a rank of an explicit degree-d coefficient matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import NotInteriorEdge, NotInteriorVertex, NotStabilized
from .exactalg import (
    Form,
    SparseMatrix,
    binom2,
    monomial_basis,
    monomial_index,
    rank,
    rank_modular,
)
from .mesh import Mesh, require_valid
from .splinespace import edge_power

__all__ = [
    "DegreeTable",
    "DimFormula",
    "vertex_ideal",
    "ideal_dim",
    "quotient_dim",
    "dim_J_edge",
    "dim_J_vertex",
    "dim_quotient_vertex",
    "h0_h1_J",
    "dim_formula",
    "colon_dim",
    "multiplicity",
]


@dataclass(frozen=True)
class DegreeTable:
    label: str
    values: tuple[int, ...]


@dataclass(frozen=True)
class DimFormula:
    """The four summands of the Euler-characteristic count in one degree."""

    d: int
    term_faces: int
    term_edges: int
    term_vertices: int
    term_h0: int

    @property
    def total(self) -> int:
        return self.term_faces + self.term_edges + self.term_vertices + self.term_h0


def _rank(M: SparseMatrix, method: str) -> int:
    return rank(M) if method == "exact" else rank_modular(M)


def _multiples(gens: Sequence[Form], d: int, index, offset: int = 0, sign: int = 1):
    """Yield coefficient columns of g*m for every generator g and monomial m of degree d - deg g."""
    for g in gens:
        if g.is_zero():
            continue
        terms = list(g.coeffs.items())
        for m in monomial_basis(d - g.degree):
            yield {
                offset + index[(e[0] + m[0], e[1] + m[1], e[2] + m[2])]: sign * c
                for e, c in terms
            }


def ideal_dim(gens: Sequence[Form], d: int, method: str = "exact") -> int:
    """dim_Q of the degree-d piece of the ideal generated by ``gens``."""
    if d < 0:
        return 0
    M = SparseMatrix(len(monomial_basis(d)), _multiples(gens, d, monomial_index(d)))
    return _rank(M, method)


def quotient_dim(gens: Sequence[Form], d: int, method: str = "exact") -> int:
    """dim (S/I)_d."""
    return len(monomial_basis(d)) - ideal_dim(gens, d, method)


def vertex_ideal(mesh: Mesh, vid: str, r: int) -> list[Form]:
    """Generators G_tau^(r+1) of J(v), one per incident interior edge."""
    v = mesh.vertex(vid)
    if not v.interior:
        raise NotInteriorVertex(f"vertex {vid} is on the boundary")
    return [edge_power(e.form, r) for e in mesh.edges_at(vid)]


def dim_J_edge(mesh: Mesh, eid: str, r: int, d: int) -> int:
    e = mesh.edge(eid)
    if not e.interior:
        raise NotInteriorEdge(f"edge {eid} is a boundary edge")
    return binom2(d - (r + 1) * e.degree + 2)


def dim_J_vertex(mesh: Mesh, vid: str, r: int, d: int, method: str = "exact") -> int:
    return ideal_dim(vertex_ideal(mesh, vid, r), d, method)


def dim_quotient_vertex(mesh: Mesh, vid: str, r: int, d: int, method: str = "exact") -> int:
    """dim (S/J(v))_d."""
    return len(monomial_basis(d)) - dim_J_vertex(mesh, vid, r, d, method)


def _d1_rank(mesh: Mesh, r: int, d: int, method: str) -> int:
    """Rank of J_1 -> J_0 in degree d, with columns G_tau^(r+1)*m in the head/tail blocks."""
    n = len(monomial_basis(d))
    index = monomial_index(d)
    verts = mesh.interior_vertices
    vidx = {v.id: k for k, v in enumerate(verts)}
    M = SparseMatrix(len(verts) * n)
    for e in mesh.interior_edges:
        g = edge_power(e.form, r)
        terms = list(g.coeffs.items())
        for m in monomial_basis(d - g.degree):
            col = {}
            for end, sign in ((e.head, 1), (e.tail, -1)):
                if end in vidx:
                    off = vidx[end] * n
                    for ex, c in terms:
                        col[off + index[(ex[0] + m[0], ex[1] + m[1], ex[2] + m[2])]] = sign * c
            M.add_column(col)
    return _rank(M, method)


def h0_h1_J(mesh: Mesh, r: int, d: int, method: str = "exact") -> tuple[int, int]:
    """(dim H_0(J)_d, dim H_1(J)_d)."""
    require_valid(mesh)
    rk = _d1_rank(mesh, r, d, method)
    j0 = sum(dim_J_vertex(mesh, v.id, r, d, method) for v in mesh.interior_vertices)
    j1 = sum(dim_J_edge(mesh, e.id, r, d) for e in mesh.interior_edges)
    return j0 - rk, j1 - rk


def dim_formula(mesh: Mesh, r: int, d: int, method: str = "exact") -> DimFormula:
    """Evaluate (phi2 - phi1) C(d+2,2) + sum_tau C(d-(r+1)n_tau+2,2) + sum_v dim(S/J(v))_d + dim H_0(J)_d."""
    require_valid(mesh)
    faces = (mesh.phi2 - mesh.phi1) * binom2(d + 2)
    edges = sum(dim_J_edge(mesh, e.id, r, d) for e in mesh.interior_edges)
    verts = sum(dim_quotient_vertex(mesh, v.id, r, d, method) for v in mesh.interior_vertices)
    h0, _ = h0_h1_J(mesh, r, d, method)
    return DimFormula(d, faces, edges, verts, h0)


def colon_dim(I_gens: Sequence[Form], h: Form, d: int, method: str = "exact") -> int:
    """dim {p in S_d : p*h in I}.

    Multiplication by h is injective, so this is dim S_d minus the rank of
    S_d -> S_(d+e)/I_(d+e), and that rank is rank[h*S_d | I_(d+e)] - rank I_(d+e).
    """
    if h.is_zero():
        return len(monomial_basis(d))
    top = d + h.degree
    index = monomial_index(top)
    rows = len(monomial_basis(top))
    ideal_cols = list(_multiples(I_gens, top, index))
    both = SparseMatrix(rows, list(_multiples([h], top, index)) + ideal_cols)
    alone = SparseMatrix(rows, ideal_cols)
    return len(monomial_basis(d)) - (_rank(both, method) - _rank(alone, method))


def multiplicity(I_gens: Sequence[Form], d_cap: int, method: str = "exact") -> int:
    """Eventual constant value of dim (S/I)_d, read at d_cap - 2, d_cap - 1, d_cap."""
    if d_cap < 2:
        raise NotStabilized("d_cap must be at least 2")
    vals = [quotient_dim(I_gens, d, method) for d in (d_cap - 2, d_cap - 1, d_cap)]
    if len(set(vals)) != 1:
        raise NotStabilized(
            f"dim(S/I)_d = {vals} at d = {d_cap - 2}..{d_cap}; raise d_cap"
        )
    return vals[0]
