from __future__ import annotations

import pytest

from meshkit import line_through, mesh_doc, rectilinear_star, two_triangles
from sasplines.errors import NotGeneric
from sasplines.exactalg import parse_form
from sasplines.generic import (
    PrimeDescriptor,
    arcs_at,
    check_condition1,
    check_condition2,
    check_condition3,
    check_condition4,
    curve_intersections,
    enumerate_relevant_primes,
    generic_dim,
    generic_vertex_term,
    genericity_report,
    regularity_bound,
    subcomplex,
    subcomplex_classes,
)
from sasplines.mesh import parse_mesh
from sasplines.splinespace import spline_dim

from conftest import MESH_FIXTURES
from reference_values import ALTERED_HF

P = parse_form
F_UP = P("y*z - x^2 + z^2")
F_DOWN = P("y*z + x^2 - z^2")


def _prime(mesh, label):
    return next(p for p in enumerate_relevant_primes(mesh) if p.label() == label)


def tangent_parabolas():
    """Interior vertex O where y = x^2 and y = 2x^2 share the tangent y = 0."""
    pts = {"O": (0, 0), "A": (1, 1), "B": (-1, 2), "C": (0, -2)}
    forms = {frozenset(k): line_through(pts[k[0]], pts[k[1]]) for k in ("AB", "BC", "CA")}
    forms[frozenset("OA")] = P("y*z - x^2")
    forms[frozenset("OB")] = P("y*z - 2*x^2")
    forms[frozenset("OC")] = P("x")
    faces = {"s1": ["O", "A", "B"], "s2": ["O", "B", "C"], "s3": ["O", "C", "A"]}
    return parse_mesh(mesh_doc(pts, {"O"}, faces, forms, "tangent"))


# ---------------------------------------------------------------- condition 1


def test_condition1_fig1_passes(fig1):
    assert check_condition1(fig1).passed


def test_condition1_altered_five_tangents(altered):
    res = check_condition1(altered)
    assert res.passed
    assert all(line.endswith("5 distinct tangent(s)") for line in res.info)
    assert len(res.info) == altered.phi0


def test_condition1_tangent_parabolas_fail():
    res = check_condition1(tangent_parabolas())
    assert not res.passed
    assert "share a tangent line" in res.witnesses[0]


def test_condition1_strict_sees_boundary_tangency(fig1):
    assert not check_condition1(fig1, strict=True).passed


# ---------------------------------------------------------------- condition 2


def test_condition2_fig1_fails_with_other_vertex(fig1):
    res = check_condition2(fig1)
    assert not res.passed and res.numeric
    assert any("(1, 0)" in w for w in res.witnesses)
    assert any("(-1, 0)" in w for w in res.witnesses)


def test_condition2_altered_passes(altered):
    assert check_condition2(altered).passed


def test_condition2_lines_through_origin():
    assert check_condition2(rectilinear_star()).passed


def test_curve_intersections_parabolas():
    pts = curve_intersections(F_UP, F_DOWN)
    # (+-1, 0) with multiplicity one each, plus [0:1:0] at infinity
    assert len(pts) == 3


# ---------------------------------------------------------------- primes and subcomplexes


def test_fig1_primes(fig1):
    labels = {p.label() for p in enumerate_relevant_primes(fig1)}
    assert {"point (-1, 0)", "point (1, 0)", "point at infinity [0:1:0]"} <= labels
    assert sum(1 for p in enumerate_relevant_primes(fig1) if p.kind == "curve") == 3


def test_rectilinear_primes():
    m = rectilinear_star()
    primes = enumerate_relevant_primes(m)
    assert [p.kind for p in primes].count("curve") == 3
    # three lines through the origin meet only there
    assert [p.label() for p in primes if p.kind == "point"] == ["point (0, 0)"]


def test_altered_prime_count(altered):
    primes = enumerate_relevant_primes(altered)
    assert len(primes) == 42
    assert len({p.sort_key() for p in primes}) == len(primes)


def test_fig1_parabola_classes(fig1):
    P_down = PrimeDescriptor("curve", form=F_DOWN)
    classes = subcomplex_classes(fig1, P_down)
    assert sorted(c.faces for c in classes) == [("s1", "s2", "s3"), ("s4", "s5"), ("s6", "s7"), ("s8",)]
    top = subcomplex(fig1, P_down, "s1")
    assert len(top.edges) == 2 and top.euler == 1 and top.contractible


def test_fig1_vertex_prime_contains_everything(fig1):
    sub = subcomplex(fig1, _prime(fig1, "point (-1, 0)"), "s1")
    assert len(sub.faces) == 8
    assert set(sub.edges) == {e.id for e in fig1.interior_edges}
    assert sub.contractible


def test_fig1_point_at_infinity_annulus(fig1):
    Q = _prime(fig1, "point at infinity [0:1:0]")
    assert Q.contains(P("x")) and Q.contains(P("z")) and not Q.contains(P("y"))
    sub = subcomplex(fig1, Q, "s1")
    central = next(e for e in fig1.interior_edges if e.form == P("y"))
    assert len(sub.faces) == 8
    assert central.id not in sub.edges
    assert sub.vertices == ()
    assert (sub.euler, sub.boundary_components) == (0, 2)


def test_single_face_class_is_contractible(fig1):
    sub = subcomplex(fig1, PrimeDescriptor("curve", form=F_DOWN), "s8")
    assert (len(sub.faces), len(sub.edges), len(sub.vertices)) == (1, 0, 0)
    assert sub.euler == 1


def _boundary_components(mesh, sub) -> int:
    """Count connected pieces of (closure of the class) minus (the open subcomplex)."""
    faces = set(sub.faces)
    edge_ids = {eid for fid in faces for eid in mesh.face(fid).edge_ids()} - set(sub.edges)
    verts = set().union(*(mesh.face_vertices(fid) for fid in faces)) - set(sub.vertices)
    parent = {x: x for x in edge_ids | verts}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for eid in edge_ids:
        e = mesh.edge(eid)
        for v in (e.tail, e.head):
            if v in parent:
                parent[find(eid)] = find(v)
    return len({find(x) for x in parent})


@pytest.mark.parametrize("name", MESH_FIXTURES)
def test_partition_and_boundary_count(name, meshes):
    m = meshes[name]
    all_faces = sorted(f.id for f in m.faces)
    for prime in enumerate_relevant_primes(m):
        classes = subcomplex_classes(m, prime)
        assert sorted(f for c in classes for f in c.faces) == all_faces
        for c in classes:
            assert c.boundary_components == 2 - c.euler == _boundary_components(m, c)


# ---------------------------------------------------------------- conditions 3, 4 and the report


def test_condition3(fig1, altered):
    res = check_condition3(fig1)
    assert not res.passed
    assert res.witnesses == ("point at infinity [0:1:0], face s1: chi = 8 - 8 + 0 = 0",)
    assert check_condition3(altered).passed


def test_condition4(fig1, altered):
    res = check_condition4(fig1)
    assert not res.passed
    assert sorted(w.split(":")[0] for w in res.witnesses) == ["face s2", "face s8"]
    assert check_condition4(altered).passed
    assert check_condition4(rectilinear_star()).passed


def test_reports(fig1, altered):
    rep = genericity_report(fig1)
    assert [c.passed for c in rep.conditions] == [True, False, False, False]
    assert not rep.generic and not rep.formula_applies
    assert rep.numeric_caveats
    assert rep.lines()[-1] == "generic: no"
    good = genericity_report(altered)
    assert good.generic and good.formula_applies


# ---------------------------------------------------------------- formula and bound


def test_generic_vertex_term():
    assert generic_vertex_term(1, 3) == 3  # two lines' worth: binom(4,2) - 3 binom(2,2)
    assert generic_vertex_term(0, 5) == 1
    with pytest.raises(NotGeneric):
        generic_vertex_term(2, 1)


def test_generic_dim_examples(altered):
    assert generic_dim(altered, 1, 10) == 277
    assert generic_dim(altered, 0, 1) == 4
    assert generic_dim(altered, 4, 11) == 106
    assert all(arcs_at(altered, v.id) == 5 for v in altered.interior_vertices)


def test_generic_dim_r0_matches_every_degree(altered):
    assert [generic_dim(altered, 0, d) for d in range(12)] == ALTERED_HF[0]


def test_generic_dim_refuses_fig1(fig1):
    with pytest.raises(NotGeneric):
        generic_dim(fig1, 1, 10)


def test_generic_dim_rectilinear_star():
    m = rectilinear_star()
    for r in range(3):
        for d in range(3 * (r + 1) - 2, 3 * (r + 1) + 3):
            assert generic_dim(m, r, d) == spline_dim(m, r, d)


def test_regularity_bound(altered, fig1):
    for r in range(5):
        D, table = regularity_bound(altered, r)
        assert D == 9 * (r + 1)
        central = next(e.id for e in altered.interior_edges if table[e.id] == D)
        assert altered.edge(central).degree == 1
        assert sorted(set(table.values())) == [4 * (r + 1), 6 * (r + 1), 9 * (r + 1)]
    assert regularity_bound(fig1, 1)[0] == 18
    for r in range(3):
        assert regularity_bound(two_triangles(), r) == (r + 1, {two_triangles().interior_edges[0].id: r + 1})
