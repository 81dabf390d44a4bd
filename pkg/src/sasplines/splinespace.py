"""Dimensions and bases of C^r_d over a mesh, degree by degree.

The spline space in degree d is read off the kernel of one matrix.  Its
columns are indexed by (face, monomial of degree d) and by (interior edge,
monomial of degree d - (r+1) n_tau); its rows by (interior edge, monomial of
degree d).  A face column carries the signed incidence of the face on each of
its interior edges; an edge column carries the coefficients of
G_tau^(r+1) * m.  A kernel vector is therefore a list of face forms together
with smoothing cofactors, and since G_tau^(r+1) is a nonzerodivisor the
cofactors are determined by the face forms: projecting the kernel onto the
face coordinates is a bijection onto C^r_d.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactalg import (
    Form,
    SparseMatrix,
    binom2,
    divides,
    form_pow,
    kernel_basis,
    monomial_basis,
    monomial_index,
    rank,
    rank_modular,
)
from .mesh import Mesh, require_valid

__all__ = [
    "Spline",
    "spline_matrix",
    "spline_dim",
    "spline_basis",
    "hf_table",
    "check_spline",
    "edge_power",
    "RANK_METHODS",
]

RANK_METHODS = ("exact", "modular")


@dataclass(frozen=True)
class Spline:
    """One spline: a degree-d form on every face, keyed by face id."""

    r: int
    d: int
    pieces: tuple[tuple[str, Form], ...]

    def piece(self, face_id: str) -> Form:
        return dict(self.pieces)[face_id]

    def is_global(self) -> bool:
        forms = [f for _, f in self.pieces]
        return all(f == forms[0] for f in forms)


@lru_cache(maxsize=4096)
def edge_power(form: Form, r: int) -> Form:
    return form_pow(form, r + 1)


def _check_args(r: int, d: int) -> None:
    if r < 0 or d < 0:
        raise ValueError("r and d must be nonnegative")


def spline_matrix(mesh: Mesh, r: int, d: int) -> tuple[SparseMatrix, int]:
    """The degree-d map described in the module docstring.

    Returns the matrix and the number of leading face columns.
    """
    require_valid(mesh)
    _check_args(r, d)
    basis = monomial_basis(d)
    n = len(basis)
    edges = mesh.interior_edges
    eidx = {e.id: k for k, e in enumerate(edges)}
    M = SparseMatrix(len(edges) * n)
    for f in mesh.faces:
        incid = [(eidx[eid], s) for eid, s in f.boundary if eid in eidx]
        for i in range(n):
            col: dict[int, int] = {}
            for k, s in incid:
                col[k * n + i] = col.get(k * n + i, 0) + s
            M.add_column(col)
    n_face_cols = M.cols
    index = monomial_index(d)
    for k, e in enumerate(edges):
        g = edge_power(e.form, r)
        gterms = list(g.coeffs.items())
        for m in monomial_basis(d - g.degree):
            M.add_column(
                {
                    k * n + index[(ge[0] + m[0], ge[1] + m[1], ge[2] + m[2])]: -c
                    for ge, c in gterms
                }
            )
    return M, n_face_cols


def _rank(M: SparseMatrix, method: str) -> int:
    if method == "exact":
        return rank(M)
    if method == "modular":
        return rank_modular(M)
    raise ValueError(f"unknown rank method {method!r}; expected one of {RANK_METHODS}")


def spline_dim(mesh: Mesh, r: int, d: int, method: str = "exact") -> int:
    """dim C^r_d(mesh) as the kernel dimension of :func:`spline_matrix`."""
    M, _ = spline_matrix(mesh, r, d)
    return M.cols - _rank(M, method)


def spline_basis(mesh: Mesh, r: int, d: int) -> list[Spline]:
    """Basis of C^r_d: the RREF nullspace basis, projected onto the face forms."""
    M, nf = spline_matrix(mesh, r, d)
    basis = monomial_basis(d)
    n = len(basis)
    out = []
    for vec in kernel_basis(M):
        pieces = []
        for j, f in enumerate(mesh.faces):
            coeffs = {basis[i]: vec[j * n + i] for i in range(n) if vec[j * n + i]}
            pieces.append((f.id, Form(coeffs)))
        out.append(Spline(r, d, tuple(pieces)))
    return out


def check_spline(mesh: Mesh, spline: Spline) -> bool:
    """Re-verify smoothness: G_tau^(r+1) divides the jump across every interior edge."""
    pieces = dict(spline.pieces)
    for e in mesh.interior_edges:
        (a, sa), (b, _) = mesh.faces_of_edge(e.id)
        jump = pieces[a] - pieces[b]
        if not divides(edge_power(e.form, spline.r), jump):
            return False
    return True


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("SAS_THREADS", "1")))
    except ValueError:
        return 1


def hf_table(mesh: Mesh, r: int, d_max: int, method: str = "exact") -> list[int]:
    """[spline_dim(mesh, r, d) for d in 0..d_max]."""
    require_valid(mesh)
    degrees = range(d_max + 1)
    workers = _threads()
    if workers == 1:
        return [spline_dim(mesh, r, d, method) for d in degrees]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda d: spline_dim(mesh, r, d, method), degrees))
