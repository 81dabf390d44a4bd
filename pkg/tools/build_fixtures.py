"""Regenerate the JSON fixtures shipped in ``src/sasplines/fixtures``.

Meshes are described by vertex coordinates, counter-clockwise face cycles and
an edge-form rule; edge ids, orientations and boundary signs are derived here
so that the hand-written part stays small.

Run from the repository root::

    python tools/build_fixtures.py
"""

from __future__ import annotations

import json
from fractions import Fraction as Q
from pathlib import Path

from sasplines.exactalg import Form, evaluate, parse_form
from sasplines.mesh import parse_mesh, serialize_mesh, validate
from sasplines.net import MS_NET, net_curve_through

OUT = Path(__file__).resolve().parents[1] / "src" / "sasplines" / "fixtures"


def build(name, points, interior, cycles, form_of, labels=None, comment=None):
    """Assemble a mesh document.

    ``cycles`` maps face id -> list of vertex ids in counter-clockwise order;
    ``form_of(u, v)`` returns the edge form (string) of the edge joining u, v.
    """
    labels = labels or {}
    edges: dict[frozenset, dict] = {}
    faces = []
    count = 0
    for fid, cyc in cycles.items():
        boundary = []
        for k, u in enumerate(cyc):
            v = cyc[(k + 1) % len(cyc)]
            key = frozenset((u, v))
            if key not in edges:
                count += 1
                edges[key] = {
                    "id": f"e{count}",
                    "form": form_of(u, v),
                    "tail": u,
                    "head": v,
                    "faces": 0,
                }
                if key in labels:
                    edges[key]["label"] = labels[key]
            e = edges[key]
            e["faces"] += 1
            boundary.append({"edge": e["id"], "sign": 1 if e["tail"] == u else -1})
        faces.append({"id": fid, "boundary": boundary})
    edge_list = []
    for e in edges.values():
        nfaces = e.pop("faces")
        e["interior"] = nfaces == 2
        edge_list.append(e)
    doc = {
        "name": name,
        "vertices": [
            {"id": v, "point": [str(Q(p[0])), str(Q(p[1]))], "interior": v in interior}
            for v, p in points.items()
        ],
        "edges": edge_list,
        "faces": faces,
    }
    mesh = parse_mesh(doc)
    report = validate(mesh)
    assert report.ok, report.lines()
    out = serialize_mesh(mesh)
    if comment:
        out = {"comment": comment, **out}
    return out


def fig1():
    # Two parabolas y = x^2 - 1, y = 1 - x^2 and the x-axis.  The support is
    # bounded by x = +-2 and y = +-(1 + x^2/2); those boundary curves keep
    # every vertex rational while giving the same cell structure as the
    # [-sqrt2, sqrt2] x [-1, 1] box (corners on the parabolas, the parabola
    # vertices touching the top and bottom boundary).
    pts = {
        "vL": (-1, 0), "vR": (1, 0), "vT": (0, 1), "vB": (0, -1),
        "cTL": (-2, 3), "cTR": (2, 3), "cBL": (-2, -3), "cBR": (2, -3),
    }
    up = "y*z - x^2 + z^2"        # y = x^2 - 1
    down = "y*z + x^2 - z^2"      # y = 1 - x^2
    rule = {
        ("vL", "vR"): "y",
        ("vL", "vT"): down, ("vT", "vR"): down, ("vR", "cBR"): down, ("vL", "cBL"): down,
        ("vL", "cTL"): up, ("vR", "cTR"): up, ("vL", "vB"): up, ("vB", "vR"): up,
        ("vT", "cTL"): "2*y*z - 2*z^2 - x^2", ("cTR", "vT"): "2*y*z - 2*z^2 - x^2",
        ("vB", "cBR"): "2*y*z + 2*z^2 + x^2", ("cBL", "vB"): "2*y*z + 2*z^2 + x^2",
        ("cBR", "cTR"): "x - 2*z", ("cTL", "cBL"): "x + 2*z",
    }
    cycles = {
        "s1": ["cTL", "vL", "vT"],
        "s2": ["vL", "vR", "vT"],
        "s3": ["vR", "cTR", "vT"],
        "s4": ["vR", "cBR", "cTR"],
        "s5": ["vB", "cBR", "vR"],
        "s6": ["cBL", "vL", "cTL"],
        "s7": ["cBL", "vB", "vL"],
        "s8": ["vL", "vB", "vR"],
    }
    return build(
        "fig1", pts, {"vL", "vR"}, cycles, lambda u, v: _lookup(rule, u, v),
        comment="boundary uses x = +-2 and y = +-(1 + x^2/2) so that every vertex is rational; "
        "only interior cells and faces enter the algebra",
    )


def altered():
    # Same cells as fig1; the outer arcs become lines 2x+y+2z and parabola
    # arcs through (-1,0) and (0,1), and their mirror images.
    pts = {
        "vL": (-1, 0), "vR": (1, 0), "vT": (0, 1), "vB": (0, -1),
        "cTL": (Q(-3, 2), 1), "cTR": (Q(3, 2), 1), "cBL": (Q(-3, 2), -1), "cBR": (Q(3, 2), -1),
    }
    rule = {
        ("vL", "vR"): "y",
        ("vL", "cTL"): "2*x + y + 2*z",
        ("vR", "cTR"): "-2*x + y + 2*z",
        ("vL", "cBL"): "2*x - y + 2*z",
        ("vR", "cBR"): "-2*x - y + 2*z",
        ("vL", "vT"): ALTERED_ARC,
        ("vT", "vR"): _mirror_x(ALTERED_ARC),
        ("vL", "vB"): _mirror_y(ALTERED_ARC),
        ("vB", "vR"): _mirror_x(_mirror_y(ALTERED_ARC)),
        ("vT", "cTL"): "y - z", ("cTR", "vT"): "y - z",
        ("vB", "cBR"): "y + z", ("cBL", "vB"): "y + z",
        ("cBR", "cTR"): "2*x - 3*z", ("cTL", "cBL"): "2*x + 3*z",
    }
    cycles = {
        "s1": ["cTL", "vL", "vT"],
        "s2": ["vL", "vR", "vT"],
        "s3": ["vR", "cTR", "vT"],
        "s4": ["vR", "cBR", "cTR"],
        "s5": ["vB", "cBR", "vR"],
        "s6": ["cBL", "vL", "cTL"],
        "s7": ["cBL", "vB", "vL"],
        "s8": ["vL", "vB", "vR"],
    }
    return build(
        "altered", pts, {"vL", "vR"}, cycles, lambda u, v: _lookup(rule, u, v),
        comment="curved arcs lie on 2yz = (x+z)(x+2z) and its mirror images, which pass through the arc endpoints",
    )


# Parabola y = (x+1)(x+2)/2 through (-1,0) and (0,1).
ALTERED_ARC = "2*y*z - x^2 - 3*x*z - 2*z^2"


def _mirror_x(text: str) -> str:
    f = parse_form(text)
    return Form({(a, b, c): v * (-1) ** a for (a, b, c), v in f.coeffs.items()}).to_string()


def _mirror_y(text: str) -> str:
    f = parse_form(text)
    return Form({(a, b, c): v * (-1) ** b for (a, b, c), v in f.coeffs.items()}).to_string()


def _lookup(rule, u, v):
    if (u, v) in rule:
        return rule[(u, v)]
    return rule[(v, u)]


MS_POINTS = {
    "A": (1, 1), "B": (2, 1), "C": (1, 2),
    "D": (Q(3, 11), 2), "E": (2, Q(3, 11)), "G": (Q(5, 2), Q(5, 2)),
}
MS_CYCLES = {
    "inner": ["A", "B", "C"],
    "ABE": ["A", "E", "B"],
    "BCG": ["B", "G", "C"],
    "CAD": ["C", "D", "A"],
    # the boundary arc DE bulges past A, so the lune is traversed D -> E -> A
    "ADE": ["D", "E", "A"],
    "BEG": ["B", "E", "G"],
    "CGD": ["C", "G", "D"],
}
MS_LABELS = {
    frozenset("CD"): "a", frozenset("AC"): "b", frozenset("AB"): "c", frozenset("BE"): "d",
    frozenset("BC"): "e", frozenset("AE"): "f", frozenset("AD"): "g", frozenset("CG"): "k",
    frozenset("BG"): "l",
}


def net_mesh(name, points, comment=None):
    def rule(u, v):
        pu, pv = points[u], points[v]
        return net_curve_through(MS_NET, (pu[0], pu[1], 1), (pv[0], pv[1], 1)).to_string()

    return build(name, points, {"A", "B", "C"}, MS_CYCLES, rule, MS_LABELS, comment)


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    docs = {
        "fig1.json": fig1(),
        "altered.json": altered(),
        "net_ms.json": net_mesh("net_ms", MS_POINTS),
        "net_ms_perturbed.json": net_mesh(
            "net_ms_perturbed",
            {**MS_POINTS, "G": (Q(12, 5), Q(5, 2))},
            comment="Morgan-Scott net mesh with the outer vertex G moved off the concurrent position",
        ),
        "net.json": {"forms": [f.to_string() for f in MS_NET]},
    }
    for fname, doc in docs.items():
        (OUT / fname).write_text(json.dumps(doc, indent=1) + "\n")
        print("wrote", OUT / fname)


if __name__ == "__main__":
    main()
