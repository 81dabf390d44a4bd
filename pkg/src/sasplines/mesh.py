"""Planar cell complexes whose edges are arcs of algebraic curves.

A mesh is stored combinatorially: vertices with affine coordinates, oriented
edges carrying their edge form, and faces given by signed boundary cycles.
Geometry beyond "endpoints lie on the edge curve" is never checked; the
algebra only needs the combinatorics and the forms.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Mapping

import jsonschema

from .errors import (
    DanglingReference,
    InputError,
    MeshNotValidated,
    NotInteriorEdge,
    PolySyntaxError,
    SchemaError,
)
from .exactalg import Form, RatMatrix, evaluate, gradient_at, homogenize, parse_form, parse_rational

__all__ = [
    "Vertex",
    "Edge",
    "Face",
    "Mesh",
    "CheckResult",
    "ValidationReport",
    "Incidence",
    "parse_mesh",
    "load_mesh",
    "serialize_mesh",
    "validate",
    "require_valid",
    "boundary_matrix_1",
    "boundary_matrix_2",
    "star",
    "natural_key",
]


def natural_key(s: str):
    """Sort key that orders ``e2`` before ``e10``."""
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", s)]


@dataclass(frozen=True)
class Vertex:
    id: str
    point: tuple[Fraction, Fraction]
    interior: bool

    @property
    def hpoint(self) -> tuple[Fraction, Fraction, Fraction]:
        """Homogeneous coordinates (x, y, 1)."""
        return (self.point[0], self.point[1], Fraction(1))


@dataclass(frozen=True)
class Edge:
    id: str
    form: Form
    tail: str
    head: str
    interior: bool
    label: str | None = None

    @property
    def degree(self) -> int:
        return self.form.degree


@dataclass(frozen=True)
class Face:
    id: str
    boundary: tuple[tuple[str, int], ...]

    def edge_ids(self) -> list[str]:
        return [e for e, _ in self.boundary]


@dataclass(frozen=True, eq=True)
class Mesh:
    """Immutable mesh.  Cell collections are tuples sorted by natural id order."""

    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    faces: tuple[Face, ...]
    name: str = ""
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices, key=lambda c: natural_key(c.id))))
        object.__setattr__(self, "edges", tuple(sorted(self.edges, key=lambda c: natural_key(c.id))))
        object.__setattr__(self, "faces", tuple(sorted(self.faces, key=lambda c: natural_key(c.id))))
        for kind, cells in (("vertex", self.vertices), ("edge", self.edges), ("face", self.faces)):
            ids = [c.id for c in cells]
            if len(set(ids)) != len(ids):
                raise SchemaError(f"duplicate {kind} id")
        all_ids = [c.id for c in (*self.vertices, *self.edges, *self.faces)]
        if len(set(all_ids)) != len(all_ids):
            raise SchemaError("cell ids must be unique across vertices, edges and faces")
        vids = {v.id for v in self.vertices}
        eids = {e.id for e in self.edges}
        for e in self.edges:
            for end in (e.tail, e.head):
                if end not in vids:
                    raise DanglingReference(f"edge {e.id} refers to unknown vertex {end!r}")
        for f in self.faces:
            for eid, _ in f.boundary:
                if eid not in eids:
                    raise DanglingReference(f"face {f.id} refers to unknown edge {eid!r}")

    def __hash__(self):
        return hash((self.vertices, self.edges, self.faces))

    # lookups
    def vertex(self, vid: str) -> Vertex:
        return self._index("v")[vid]

    def edge(self, eid: str) -> Edge:
        return self._index("e")[eid]

    def face(self, fid: str) -> Face:
        return self._index("f")[fid]

    def _index(self, kind: str) -> dict:
        key = "idx_" + kind
        if key not in self._cache:
            cells = {"v": self.vertices, "e": self.edges, "f": self.faces}[kind]
            self._cache[key] = {c.id: c for c in cells}
        return self._cache[key]

    @property
    def interior_vertices(self) -> tuple[Vertex, ...]:
        return tuple(v for v in self.vertices if v.interior)

    @property
    def interior_edges(self) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if e.interior)

    @property
    def phi0(self) -> int:
        return len(self.interior_vertices)

    @property
    def phi1(self) -> int:
        return len(self.interior_edges)

    @property
    def phi2(self) -> int:
        return len(self.faces)

    def n_tau(self) -> dict[str, int]:
        return {e.id: e.degree for e in self.interior_edges}

    def faces_of_edge(self, eid: str) -> list[tuple[str, int]]:
        """(face id, sign) for every occurrence of ``eid`` in a face boundary."""
        key = "faces_of_edge"
        if key not in self._cache:
            table: dict[str, list[tuple[str, int]]] = {e.id: [] for e in self.edges}
            for f in self.faces:
                for e, s in f.boundary:
                    table[e].append((f.id, s))
            self._cache[key] = table
        return self._cache[key][eid]

    def edges_at(self, vid: str, interior_only: bool = True) -> list[Edge]:
        return [
            e
            for e in self.edges
            if vid in (e.tail, e.head) and (e.interior or not interior_only)
        ]

    def face_vertices(self, fid: str) -> set[str]:
        out = set()
        for eid in self.face(fid).edge_ids():
            e = self.edge(eid)
            out.update((e.tail, e.head))
        return out

    def with_forms(self, forms: Mapping[str, Form], name: str | None = None) -> "Mesh":
        """Same combinatorics with some edge forms replaced."""
        edges = [
            Edge(e.id, forms.get(e.id, e.form), e.tail, e.head, e.interior, e.label)
            for e in self.edges
        ]
        return Mesh(self.vertices, tuple(edges), self.faces, name=self.name if name is None else name)

    def with_points(self, points: Mapping[str, tuple[Fraction, Fraction]]) -> "Mesh":
        verts = [Vertex(v.id, points.get(v.id, v.point), v.interior) for v in self.vertices]
        return Mesh(tuple(verts), self.edges, self.faces, name=self.name)


# --------------------------------------------------------------------------
# JSON

_NUM = {"anyOf": [{"type": "integer"}, {"type": "string"}, {"type": "number"}]}

MESH_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["vertices", "edges", "faces"],
    "properties": {
        "name": {"type": "string"},
        "vertices": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "point", "interior"],
                "properties": {
                    "id": {"type": "string"},
                    "point": {"type": "array", "items": _NUM, "minItems": 2, "maxItems": 2},
                    "interior": {"type": "boolean"},
                },
            },
        },
        "edges": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "tail", "head", "interior"],
                "properties": {
                    "id": {"type": "string"},
                    "form": {"type": "string"},
                    "curve": {"type": "string"},
                    "tail": {"type": "string"},
                    "head": {"type": "string"},
                    "interior": {"type": "boolean"},
                    "label": {"type": "string"},
                },
                "oneOf": [{"required": ["form"]}, {"required": ["curve"]}],
            },
        },
        "faces": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "boundary"],
                "properties": {
                    "id": {"type": "string"},
                    "boundary": {
                        "type": "array",
                        "minItems": 1,
                        "items": {
                            "type": "object",
                            "required": ["edge", "sign"],
                            "properties": {
                                "edge": {"type": "string"},
                                "sign": {"enum": [1, -1]},
                            },
                        },
                    },
                },
            },
        },
    },
}


def _coord(value) -> Fraction:
    if isinstance(value, float):
        # decimal literal in the file; read it as written, not as a binary double
        return Fraction(repr(value))
    return parse_rational(value)


def parse_mesh(document: Mapping[str, Any]) -> Mesh:
    """Build a :class:`Mesh` from a decoded JSON document."""
    try:
        jsonschema.validate(document, MESH_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path)
        raise SchemaError(f"mesh document invalid at '{where}': {exc.message}") from None
    vertices = [
        Vertex(v["id"], (_coord(v["point"][0]), _coord(v["point"][1])), v["interior"])
        for v in document["vertices"]
    ]
    edges = []
    for e in document["edges"]:
        try:
            form = parse_form(e["form"]) if "form" in e else homogenize(e["curve"])
        except PolySyntaxError as exc:
            raise PolySyntaxError(f"edge {e['id']}: {exc}") from None
        edges.append(Edge(e["id"], form, e["tail"], e["head"], e["interior"], e.get("label")))
    faces = [
        Face(f["id"], tuple((b["edge"], int(b["sign"])) for b in f["boundary"]))
        for f in document["faces"]
    ]
    return Mesh(tuple(vertices), tuple(edges), tuple(faces), name=document.get("name", ""))


def load_mesh(path: str | Path) -> Mesh:
    path = Path(path)
    try:
        text = path.read_text()
    except FileNotFoundError:
        raise
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON ({exc})") from None
    mesh = parse_mesh(doc)
    if not mesh.name:
        object.__setattr__(mesh, "name", path.stem)
    return mesh


def _num_out(q: Fraction):
    return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def serialize_mesh(mesh: Mesh) -> dict[str, Any]:
    """Canonical JSON form: cells sorted by id, forms as expanded strings."""
    doc: dict[str, Any] = {}
    if mesh.name:
        doc["name"] = mesh.name
    doc["vertices"] = [
        {"id": v.id, "point": [_num_out(v.point[0]), _num_out(v.point[1])], "interior": v.interior}
        for v in mesh.vertices
    ]
    edges = []
    for e in mesh.edges:
        item = {"id": e.id, "form": e.form.to_string(), "tail": e.tail, "head": e.head, "interior": e.interior}
        if e.label is not None:
            item["label"] = e.label
        edges.append(item)
    doc["edges"] = edges
    doc["faces"] = [
        {"id": f.id, "boundary": [{"edge": eid, "sign": s} for eid, s in f.boundary]}
        for f in mesh.faces
    ]
    return doc


# --------------------------------------------------------------------------
# Validation


@dataclass(frozen=True)
class CheckResult:
    key: str
    title: str
    passed: bool
    details: tuple[str, ...] = ()


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, key: str) -> CheckResult:
        for c in self.checks:
            if c.key == key:
                return c
        raise KeyError(key)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            out.append(f"({c.key}) {c.title}: {'PASS' if c.passed else 'FAIL'}")
            out.extend(f"    {d}" for d in c.details)
        return out


def _connected(nodes: Iterable[str], adjacency: Mapping[str, set[str]]) -> bool:
    nodes = list(nodes)
    if not nodes:
        return True
    allowed = set(nodes)
    seen = {nodes[0]}
    stack = [nodes[0]]
    while stack:
        cur = stack.pop()
        for nxt in adjacency.get(cur, ()):
            if nxt in allowed and nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return seen == allowed


def _check_incidence(mesh: Mesh) -> CheckResult:
    bad = []
    for e in mesh.edges:
        occ = mesh.faces_of_edge(e.id)
        if e.interior:
            if len(occ) != 2:
                bad.append(f"interior edge {e.id} lies on {len(occ)} face(s), expected 2")
            elif occ[0][1] + occ[1][1] != 0:
                bad.append(f"interior edge {e.id}: faces {occ[0][0]}, {occ[1][0]} induce the same orientation")
        elif len(occ) != 1:
            bad.append(f"boundary edge {e.id} lies on {len(occ)} face(s), expected 1")
    for f in mesh.faces:
        steps = []
        for eid, s in f.boundary:
            e = mesh.edge(eid)
            steps.append((e.tail, e.head) if s > 0 else (e.head, e.tail))
        for k, (start, end) in enumerate(steps):
            nxt = steps[(k + 1) % len(steps)][0]
            if end != nxt:
                bad.append(f"face {f.id}: boundary is not a closed cycle at edge {f.boundary[k][0]}")
                break
    for v in mesh.interior_vertices:
        for e in mesh.edges_at(v.id, interior_only=False):
            if not e.interior:
                bad.append(f"interior vertex {v.id} lies on boundary edge {e.id}")
    return CheckResult("a", "edge/face incidence and orientation", not bad, tuple(bad))


def _face_adjacency(mesh: Mesh, edge_filter=None) -> dict[str, set[str]]:
    adj: dict[str, set[str]] = {f.id: set() for f in mesh.faces}
    for e in mesh.interior_edges:
        if edge_filter is not None and not edge_filter(e):
            continue
        occ = mesh.faces_of_edge(e.id)
        if len(occ) == 2:
            a, b = occ[0][0], occ[1][0]
            adj[a].add(b)
            adj[b].add(a)
    return adj


def _check_connected(mesh: Mesh) -> CheckResult:
    ok = _connected([f.id for f in mesh.faces], _face_adjacency(mesh))
    return CheckResult("b", "face-adjacency graph connected", ok, () if ok else ("faces split into several components",))


def _check_hereditary(mesh: Mesh) -> CheckResult:
    bad = []
    adj = _face_adjacency(mesh)
    for v in mesh.vertices:
        around = [f.id for f in mesh.faces if v.id in mesh.face_vertices(f.id)]
        if not _connected(around, adj):
            bad.append(f"faces at vertex {v.id} are not edge-connected")
    return CheckResult("c", "hereditary", not bad, tuple(bad))


def _check_chain(mesh: Mesh) -> CheckResult:
    d1 = boundary_matrix_1(mesh, _skip_validation=True)
    d2 = boundary_matrix_2(mesh, _skip_validation=True)
    bad = []
    for i in range(d1.matrix.rows):
        for j in range(d2.matrix.cols):
            s = sum(d1.matrix[i, k] * d2.matrix[k, j] for k in range(d1.matrix.cols))
            if s:
                bad.append(f"(d1*d2)[{d1.rows[i]}, {d2.cols[j]}] = {s}")
    return CheckResult("d", "d1 * d2 = 0", not bad, tuple(bad))


def _check_euler(mesh: Mesh) -> CheckResult:
    chi = mesh.phi2 - mesh.phi1 + mesh.phi0
    ok = chi == 1
    return CheckResult(
        "e",
        "contractible support (phi2 - phi1 + phi0 = 1)",
        ok,
        () if ok else (f"phi2 - phi1 + phi0 = {chi}",),
    )


def _check_endpoints(mesh: Mesh) -> CheckResult:
    bad = []
    for e in mesh.edges:
        for end in (e.tail, e.head):
            val = evaluate(e.form, mesh.vertex(end).hpoint)
            if val:
                bad.append(f"vertex {end} is not on the curve of edge {e.id} (value {val})")
    return CheckResult("f", "edge endpoints lie on edge curves", not bad, tuple(bad))


def _check_smooth(mesh: Mesh) -> CheckResult:
    bad = []
    for e in mesh.edges:
        if e.form.is_zero():
            bad.append(f"edge {e.id} has the zero form")
            continue
        if e.form.degree == 0:
            bad.append(f"edge {e.id} has a constant form")
            continue
        for end in (e.tail, e.head):
            if not any(gradient_at(e.form, mesh.vertex(end).hpoint)):
                bad.append(f"edge {e.id} is singular at vertex {end}")
    return CheckResult("g", "edge forms nonzero and smooth at their endpoints", not bad, tuple(bad))


def validate(mesh: Mesh) -> ValidationReport:
    """Run every structural check; findings go in the report, nothing raises."""
    key = "report"
    if key not in mesh._cache:
        checks = [_check_incidence(mesh), _check_connected(mesh), _check_hereditary(mesh)]
        if checks[0].passed:
            checks.append(_check_chain(mesh))
        else:
            checks.append(CheckResult("d", "d1 * d2 = 0", False, ("skipped: incidence check failed",)))
        checks += [_check_euler(mesh), _check_endpoints(mesh), _check_smooth(mesh)]
        mesh._cache[key] = ValidationReport(tuple(checks))
    return mesh._cache[key]


def require_valid(mesh: Mesh) -> Mesh:
    report = validate(mesh)
    if not report.ok:
        failed = ", ".join(f"({c.key}) {c.title}" for c in report.failures())
        raise MeshNotValidated(f"mesh {mesh.name or '<unnamed>'} fails validation: {failed}")
    return mesh


# --------------------------------------------------------------------------
# Incidence


@dataclass(frozen=True)
class Incidence:
    rows: tuple[str, ...]
    cols: tuple[str, ...]
    matrix: RatMatrix


def boundary_matrix_2(mesh: Mesh, _skip_validation: bool = False) -> Incidence:
    """Signed incidence of interior edges (rows) against faces (columns)."""
    if not _skip_validation:
        require_valid(mesh)
    rows = [e.id for e in mesh.interior_edges]
    cols = [f.id for f in mesh.faces]
    ridx = {e: i for i, e in enumerate(rows)}
    data = [[0] * len(cols) for _ in rows]
    for j, f in enumerate(mesh.faces):
        for eid, s in f.boundary:
            if eid in ridx:
                data[ridx[eid]][j] += s
    return Incidence(tuple(rows), tuple(cols), RatMatrix.from_rows(data, cols=len(cols)))


def boundary_matrix_1(mesh: Mesh, _skip_validation: bool = False) -> Incidence:
    """Signed incidence of interior vertices (rows) against interior edges (columns)."""
    if not _skip_validation:
        require_valid(mesh)
    rows = [v.id for v in mesh.interior_vertices]
    cols = [e.id for e in mesh.interior_edges]
    ridx = {v: i for i, v in enumerate(rows)}
    data = [[0] * len(cols) for _ in rows]
    for j, e in enumerate(mesh.interior_edges):
        if e.head in ridx:
            data[ridx[e.head]][j] += 1
        if e.tail in ridx:
            data[ridx[e.tail]][j] -= 1
    return Incidence(tuple(rows), tuple(cols), RatMatrix.from_rows(data, cols=len(cols)))


def star(mesh: Mesh, eid: str) -> set[str]:
    """The two faces on an interior edge together with their closures."""
    e = mesh.edge(eid)
    if not e.interior:
        raise NotInteriorEdge(f"edge {eid} is a boundary edge")
    cells: set[str] = set()
    for fid, _ in mesh.faces_of_edge(eid):
        cells.add(fid)
        for other in mesh.face(fid).edge_ids():
            cells.add(other)
            o = mesh.edge(other)
            cells.update((o.tail, o.head))
    return cells
