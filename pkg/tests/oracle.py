"""Brute-force spline dimension by pairwise division with remainder.

Independent of the package's kernel construction: the unknowns are the
coefficients of one degree-d polynomial per face, and smoothness across an
interior edge tau is imposed by requiring the remainder of F_sigma - F_sigma'
on division by G_tau^(r+1) to vanish.  Division by a single polynomial has
zero remainder exactly when it divides, and the remainder is linear in the
dividend, so each remainder coefficient is one linear equation.  The rank is
computed with plain Fraction Gaussian elimination.
"""

from __future__ import annotations

from fractions import Fraction


def _monomials(d):
    return [(a, b, d - a - b) for a in range(d, -1, -1) for b in range(d - a, -1, -1)]


def _poly_mul(p, q):
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _power(p, k):
    out = {(0, 0, 0): Fraction(1)}
    for _ in range(k):
        out = _poly_mul(out, p)
    return out


def _remainder(f, g):
    """Remainder of f on division by g, lex order on exponent triples."""
    lead = max(g)
    lc = g[lead]
    rem = dict(f)
    out = {}
    while rem:
        e = max(rem)
        c = rem.pop(e)
        if all(x >= y for x, y in zip(e, lead)):
            shift = tuple(x - y for x, y in zip(e, lead))
            q = c / lc
            for ge, gc in g.items():
                if ge == lead:
                    continue
                t = tuple(s + x for s, x in zip(shift, ge))
                v = rem.get(t, 0) - q * gc
                if v:
                    rem[t] = v
                else:
                    rem.pop(t, None)
        else:
            out[e] = c
    return out


def _rank(rows, ncols):
    A = [list(r) for r in rows]
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        for i in range(len(A)):
            if i != rank and A[i][c] != 0:
                f = A[i][c] / A[rank][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[rank])]
        rank += 1
    return rank


def oracle_spline_dim(mesh, r, d):
    faces = [f.id for f in mesh.faces]
    fidx = {fid: k for k, fid in enumerate(faces)}
    mons = _monomials(d)
    n = len(mons)
    ncols = n * len(faces)
    rows = []
    for e in mesh.interior_edges:
        (a, sa), (b, _) = mesh.faces_of_edge(e.id)
        g = _power({k: Fraction(v) for k, v in e.form.coeffs.items()}, r + 1)
        # remainder of every basis monomial; linear in the dividend
        rems = [_remainder({m: Fraction(1)}, g) for m in mons]
        support = sorted({t for rm in rems for t in rm})
        for t in support:
            row = [Fraction(0)] * ncols
            for i in range(n):
                c = rems[i].get(t, 0)
                if c:
                    row[fidx[a] * n + i] += c
                    row[fidx[b] * n + i] -= c
            rows.append(row)
    return ncols - _rank(rows, ncols)
