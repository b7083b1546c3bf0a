"""Toric diagrams as tropical curves: validation, faces, and dual subdivision.

A diagram lives in dimension 1 or 2.  In dimension 2 it is a planar graph with
rational vertices, straight bounded edges and rays with primitive integer
directions; in dimension 1 it is a finite set of marked points on a line.
Validation checks the semi-toric axioms: trivalence, balancing (the primitive
outgoing directions at each vertex sum to zero), primitivity of ray
directions, and connectivity.

The dual subdivision assigns one lattice point per face of the complement.
At a trivalent vertex with outgoing primitive directions sorted
counterclockwise, crossing an edge of direction d counterclockwise moves the
dual point by the clockwise quarter turn (d_y, -d_x); that orientation makes
the vectors from each dual vertex to its neighbors point into the dual cone of
the corresponding unbounded face.  Local vertex cells are glued along bounded
edges, so the construction is geometric and serves as an independent check
against the monodromy-based embedding.

Translation gauge: the distinguished face (the one whose dual vertex minimizes
the coordinate sum, i.e. the face reached heading toward (+1,+1); lexicographic
tie-break; configurable) is placed at the origin.  The opposite sign gauge
reflects the subdivision through the origin.
"""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .lattice import (
    QPoint,
    Vec,
    cross2,
    dot,
    is_primitive,
    lattice_triangle_area,
    primitive_q,
    rot_minus90,
    vadd,
    vneg,
    vsub,
)

Q = Fraction


class DiagramError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class EdgeRef:
    """Reference to a diagram edge: bounded edge, ray, or (d=1) marked point."""

    kind: str  # "edge" | "ray" | "point"
    index: int

    def __str__(self):
        return f"{self.kind}{self.index}"


def parse_edge_ref(text: str) -> EdgeRef:
    for kind in ("edge", "ray", "point"):
        if text.startswith(kind):
            return EdgeRef(kind, int(text[len(kind):]))
    raise DiagramError(f"cannot parse edge reference {text!r}")


@dataclass(frozen=True)
class TropicalDiagram:
    dim: int
    vertices: tuple[QPoint, ...]
    edges: tuple[tuple[int, int], ...] = ()
    rays: tuple[tuple[int, Vec], ...] = ()

    def __post_init__(self):
        if self.dim not in (1, 2):
            raise DiagramError("dimension must be 1 or 2")
        verts = tuple(tuple(Q(c) for c in v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        for v in verts:
            if len(v) != self.dim:
                raise DiagramError("vertex dimension mismatch")
        if len(set(verts)) != len(verts):
            raise DiagramError("two vertices coincide")
        edges = tuple((int(i), int(j)) for i, j in self.edges)
        object.__setattr__(self, "edges", edges)
        rays = tuple((int(i), tuple(int(c) for c in d)) for i, d in self.rays)
        object.__setattr__(self, "rays", rays)
        if self.dim == 1 and (edges or rays):
            raise DiagramError("d=1 diagrams carry no edges or rays")
        n = len(verts)
        for i, j in edges:
            if not (0 <= i < n and 0 <= j < n):
                raise DiagramError("edge endpoint out of range")
            if i == j:
                raise DiagramError("edge endpoints must be distinct")
        for i, d in rays:
            if not 0 <= i < n:
                raise DiagramError("ray vertex out of range")
            if len(d) != self.dim:
                raise DiagramError("ray direction dimension mismatch")
            if all(c == 0 for c in d):
                raise DiagramError("ray direction is zero")

    def edge_refs(self) -> list[EdgeRef]:
        if self.dim == 1:
            return [EdgeRef("point", i) for i in range(len(self.vertices))]
        return [EdgeRef("edge", k) for k in range(len(self.edges))] + [
            EdgeRef("ray", r) for r in range(len(self.rays))
        ]


def edge_direction(diag: TropicalDiagram, ref: EdgeRef) -> Vec:
    """Canonical primitive direction: stored order for edges, outgoing for rays."""
    if ref.kind == "edge":
        i, j = diag.edges[ref.index]
        return primitive_q(vsub(diag.vertices[j], diag.vertices[i]))
    if ref.kind == "ray":
        _, d = diag.rays[ref.index]
        return primitive_q(tuple(Q(c) for c in d))
    raise DiagramError(f"{ref} has no direction")


def edge_anchor(diag: TropicalDiagram, ref: EdgeRef) -> QPoint:
    if ref.kind == "edge":
        return diag.vertices[diag.edges[ref.index][0]]
    if ref.kind == "ray":
        return diag.vertices[diag.rays[ref.index][0]]
    return diag.vertices[ref.index]


def edge_sample_points(diag: TropicalDiagram, ref: EdgeRef) -> tuple[QPoint, QPoint]:
    """Two points on the edge (used to assert constancy of pairings)."""
    a = edge_anchor(diag, ref)
    if ref.kind == "point":
        return a, a
    if ref.kind == "edge":
        i, j = diag.edges[ref.index]
        return diag.vertices[i], diag.vertices[j]
    d = edge_direction(diag, ref)
    return a, vadd(a, tuple(Q(c) for c in d))


# --- validation -------------------------------------------------------------


@dataclass(frozen=True)
class ValidationReport:
    trivalent: bool
    balanced: bool
    primitive_directions: bool
    connected: bool
    offenders: tuple[tuple[str, str], ...] = ()

    @property
    def ok(self) -> bool:
        return self.trivalent and self.balanced and self.primitive_directions and self.connected

    def failed_axioms(self) -> list[str]:
        return [
            name
            for name, good in [
                ("trivalent", self.trivalent),
                ("balanced", self.balanced),
                ("primitive_directions", self.primitive_directions),
                ("connected", self.connected),
            ]
            if not good
        ]

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "trivalent": self.trivalent,
            "balanced": self.balanced,
            "primitive_directions": self.primitive_directions,
            "connected": self.connected,
            "offenders": [list(o) for o in self.offenders],
        }


def _vertex_star(diag: TropicalDiagram, v: int) -> list[tuple[EdgeRef, Vec]]:
    """Outgoing (edge reference, primitive direction) pairs at a vertex."""
    star = []
    for k, (i, j) in enumerate(diag.edges):
        if i == v:
            star.append((EdgeRef("edge", k), edge_direction(diag, EdgeRef("edge", k))))
        elif j == v:
            star.append((EdgeRef("edge", k), vneg(edge_direction(diag, EdgeRef("edge", k)))))
    for r, (i, d) in enumerate(diag.rays):
        if i == v:
            star.append((EdgeRef("ray", r), d))
    return star


def validate(diag: TropicalDiagram) -> ValidationReport:
    """Check the semi-toric axioms; failures are reported, not raised."""
    if diag.dim == 1:
        return ValidationReport(True, True, True, True)
    trivalent = True
    balanced = True
    primitive_dirs = True
    offenders: list[tuple[str, str]] = []
    for v in range(len(diag.vertices)):
        star = _vertex_star(diag, v)
        if len(star) != 3:
            trivalent = False
            offenders.append(("trivalent", f"vertex {v} has valence {len(star)}"))
        dirs = [d for _, d in star]
        total = dirs[0] if dirs else None
        for d in dirs[1:]:
            total = vadd(total, d)
        if dirs and any(c != 0 for c in total):
            balanced = False
            offenders.append(("balanced", f"vertex {v} direction sum {tuple(total)}"))
        seen = set()
        for ref, d in star:
            if tuple(d) in seen:
                # a repeated outgoing direction is a weight-2 edge in disguise
                primitive_dirs = False
                offenders.append(("primitive_directions", f"vertex {v} repeats direction {tuple(d)}"))
            seen.add(tuple(d))
    for r, (_, d) in enumerate(diag.rays):
        if not is_primitive(d):
            primitive_dirs = False
            offenders.append(("primitive_directions", f"ray {r} direction {tuple(d)} not primitive"))
    # connectivity over bounded edges
    n = len(diag.vertices)
    connected = True
    if n > 1:
        adj = {i: set() for i in range(n)}
        for i, j in diag.edges:
            adj[i].add(j)
            adj[j].add(i)
        seen = {0}
        stack = [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        connected = len(seen) == n
        if not connected:
            offenders.append(("connected", f"{n - len(seen)} vertices unreachable"))
    return ValidationReport(trivalent, balanced, primitive_dirs, connected, tuple(offenders))


# --- faces of the complement -------------------------------------------------

# A dart is a directed edge end: (edge ref, tail vertex, head vertex) with
# head = -1 meaning the point at infinity (rays).  Faces are traced with the
# rotation rule next(d) = ccw-successor of twin(d); at infinity the rotation
# runs clockwise (descending ray angle, parallel rays ordered by their
# perpendicular offset).


@dataclass(frozen=True)
class Dart:
    ref: EdgeRef
    tail: int
    head: int

    def twin(self) -> "Dart":
        return Dart(self.ref, self.head, self.tail)


@dataclass(frozen=True)
class Face:
    id: int
    darts: tuple[Dart, ...]
    bounded: bool
    recession: tuple[Vec, ...]  # ray directions bounding an unbounded face


@dataclass(frozen=True)
class FaceComplex:
    faces: tuple[Face, ...]
    dart_face: dict  # Dart -> face id (face on the clockwise side of the dart)
    edge_sides: dict  # EdgeRef -> (left face id, right face id) w.r.t. canonical direction
    rotations: dict  # vertex -> ccw-ordered outgoing darts (-1 is infinity)


def _angle_class(d: Sequence) -> int:
    x, y = d
    return 0 if (y > 0 or (y == 0 and x > 0)) else 1


def _ccw_cmp(a: Sequence, b: Sequence) -> int:
    """Exact counterclockwise comparison of nonzero direction vectors from angle 0."""
    ha, hb = _angle_class(a), _angle_class(b)
    if ha != hb:
        return -1 if ha < hb else 1
    c = cross2(a, b)
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0


def _dart_direction(diag: TropicalDiagram, d: Dart) -> Vec:
    base = edge_direction(diag, d.ref)
    if d.ref.kind == "edge":
        i, _ = diag.edges[d.ref.index]
        return base if d.tail == i else vneg(base)
    return base  # outgoing ray dart


def faces(diag: TropicalDiagram) -> FaceComplex:
    """Enumerate the faces of the planar complement of a d=2 diagram."""
    if diag.dim != 2:
        raise DiagramError("face tracing requires dimension 2")
    if not diag.vertices:
        raise DiagramError("empty diagram has no faces")

    darts: list[Dart] = []
    for k, (i, j) in enumerate(diag.edges):
        darts.append(Dart(EdgeRef("edge", k), i, j))
        darts.append(Dart(EdgeRef("edge", k), j, i))
    for r, (i, _) in enumerate(diag.rays):
        darts.append(Dart(EdgeRef("ray", r), i, -1))
        darts.append(Dart(EdgeRef("ray", r), -1, i))

    # rotation at finite vertices: counterclockwise by outgoing direction
    rotation: dict[int, list[Dart]] = {}
    for v in range(len(diag.vertices)):
        out = [d for d in darts if d.tail == v]
        out.sort(key=functools.cmp_to_key(lambda a, b: _ccw_cmp(_dart_direction(diag, a), _dart_direction(diag, b))))
        rotation[v] = out

    # rotation at infinity: descending ray angle; parallel rays ordered by
    # ascending perpendicular offset of their source vertex
    def inf_cmp(a: Dart, b: Dart) -> int:
        da = edge_direction(diag, a.ref)
        db = edge_direction(diag, b.ref)
        c = _ccw_cmp(da, db)
        if c != 0:
            return -c
        offa = dot(rot_minus90(da), diag.vertices[a.head])
        offb = dot(rot_minus90(db), diag.vertices[b.head])
        if offa == offb:
            raise DiagramError("two rays share a line; faces are ambiguous")
        return -1 if offa < offb else 1

    rotation[-1] = sorted((d for d in darts if d.tail == -1), key=functools.cmp_to_key(inf_cmp))

    def successor(d: Dart) -> Dart:
        ring = rotation[d.tail]
        return ring[(ring.index(d) + 1) % len(ring)]

    dart_face: dict[Dart, int] = {}
    face_list: list[Face] = []
    for start in darts:
        if start in dart_face:
            continue
        orbit = []
        d = start
        while True:
            orbit.append(d)
            dart_face[d] = len(face_list)
            d = successor(d.twin())
            if d == start:
                break
        recession = tuple(
            sorted({edge_direction(diag, d.ref) for d in orbit if d.ref.kind == "ray"})
        )
        bounded = not recession
        face_list.append(Face(len(face_list), tuple(orbit), bounded, recession))

    edge_sides: dict[EdgeRef, tuple[int, int]] = {}
    for k in range(len(diag.edges)):
        ref = EdgeRef("edge", k)
        i, j = diag.edges[k]
        fwd = Dart(ref, i, j)
        edge_sides[ref] = (dart_face[fwd.twin()], dart_face[fwd])
    for r in range(len(diag.rays)):
        ref = EdgeRef("ray", r)
        i, _ = diag.rays[r]
        fwd = Dart(ref, i, -1)
        edge_sides[ref] = (dart_face[fwd.twin()], dart_face[fwd])

    return FaceComplex(tuple(face_list), dart_face, edge_sides, rotation)


# --- dual subdivision --------------------------------------------------------


@dataclass(frozen=True)
class DualSubdivision:
    lattice_points: tuple[Vec, ...]  # indexed by face id
    triangles: tuple[tuple[int, ...], ...]  # one cell of face ids per diagram vertex
    edge_duality: tuple[tuple[EdgeRef, tuple[int, int]], ...]  # ref -> (left, right) faces
    root_face: int

    def dual_edge(self, ref: EdgeRef) -> tuple[int, int]:
        for r, pair in self.edge_duality:
            if r == ref:
                return pair
        raise DiagramError(f"{ref} has no dual edge")

    def point_of(self, face: int) -> Vec:
        return self.lattice_points[face]


def _require_dualizable(diag: TropicalDiagram) -> ValidationReport:
    report = validate(diag)
    failed = [a for a in report.failed_axioms() if a != "connected"]
    if failed:
        raise DiagramError("diagram fails axioms: " + ", ".join(failed))
    if not report.connected:
        raise DiagramError("diagram fails axioms: connected")
    return report


def default_root_face(points: Sequence[Vec]) -> int:
    """The face whose dual vertex minimizes the coordinate sum (lex tie-break).

    This is the unbounded face reached heading toward +(1,...,1); placing its
    dual vertex at the origin puts the support in standard position.
    """
    return min(range(len(points)), key=lambda i: (sum(points[i]), points[i]))


def dual_subdivision(
    diag: TropicalDiagram, root_face: Optional[int] = None, sign: int = 1
) -> DualSubdivision:
    """Dual lattice subdivision of a validated diagram.

    One lattice point per face of the complement, one cell per diagram vertex,
    dual edges orthogonal to the diagram edges they cross.
    """
    if sign not in (1, -1):
        raise DiagramError("sign gauge must be +1 or -1")
    if diag.dim == 1:
        _require_dualizable(diag)
        order = sorted(range(len(diag.vertices)), key=lambda i: diag.vertices[i][0])
        k = len(diag.vertices)
        # face j is the j-th interval from the left; its dual coordinate is k-j
        points = [(sign * (k - j),) for j in range(k + 1)]
        duality = []
        for pos, i in enumerate(order):
            duality.append((EdgeRef("point", i), (pos, pos + 1)))
        root = default_root_face(points) if root_face is None else root_face
        shift = points[root]
        points = [vsub(p, shift) for p in points]
        return DualSubdivision(tuple(points), (), tuple(duality), root)

    _require_dualizable(diag)
    complex_ = faces(diag)
    nfaces = len(complex_.faces)

    # local cell of each vertex: faces in ccw dart order with corner offsets
    local: list[dict[int, Vec]] = []
    for v in range(len(diag.vertices)):
        ring = complex_.rotations[v]
        offsets: dict[int, Vec] = {}
        acc = (0, 0)
        # sector after dart ring[i] (ccw) lies clockwise of ring[i+1]
        for idx in range(len(ring)):
            nxt = ring[(idx + 1) % len(ring)]
            face_here = complex_.dart_face[nxt]  # face on the clockwise side of nxt
            if idx == 0:
                offsets[face_here] = acc
            else:
                if face_here in offsets and offsets[face_here] != acc:
                    raise DiagramError(f"face pinched at vertex {v}")
                offsets[face_here] = acc
            acc = vadd(acc, rot_minus90(_dart_direction(diag, nxt)))
        if acc != (0, 0):
            raise DiagramError(f"vertex {v} cell does not close up")
        if len(offsets) != len(ring):
            raise DiagramError(f"face pinched at vertex {v}")
        local.append(offsets)

    # glue local cells along bounded edges
    anchor: list[Optional[Vec]] = [None] * len(diag.vertices)
    anchor[0] = (0, 0)
    stack = [0]
    adj: dict[int, list[tuple[int, int]]] = {i: [] for i in range(len(diag.vertices))}
    for k, (i, j) in enumerate(diag.edges):
        adj[i].append((j, k))
        adj[j].append((i, k))
    while stack:
        v = stack.pop()
        for w, k in adj[v]:
            shared = set(local[v]) & set(local[w])
            if len(shared) != 2:
                raise DiagramError(f"edge {k} does not separate two faces")
            if anchor[w] is None:
                f0, f1 = sorted(shared)
                cand = vadd(anchor[v], vsub(local[v][f0], local[w][f0]))
                check = vadd(anchor[v], vsub(local[v][f1], local[w][f1]))
                if cand != check:
                    raise DiagramError(f"gluing across edge {k} is inconsistent")
                anchor[w] = cand
                stack.append(w)

    positions: list[Optional[Vec]] = [None] * nfaces
    for v in range(len(diag.vertices)):
        if anchor[v] is None:
            raise DiagramError("diagram fails axioms: connected")
        for f, off in local[v].items():
            p = vadd(anchor[v], off)
            if positions[f] is None:
                positions[f] = p
            elif positions[f] != p:
                raise DiagramError("dual positions are inconsistent (monodromy obstruction)")
    if any(p is None for p in positions):
        raise DiagramError("a face received no dual position")

    points = [tuple(sign * c for c in p) for p in positions]
    root = default_root_face(points) if root_face is None else root_face
    if not 0 <= root < nfaces:
        raise DiagramError("root face out of range")
    shift = points[root]
    points = [vsub(p, shift) for p in points]

    triangles = []
    for v in range(len(diag.vertices)):
        triangles.append(tuple(sorted(local[v].keys())))
    duality = []
    for ref in diag.edge_refs():
        left, right = complex_.edge_sides[ref]
        dual_vec = vsub(points[left], points[right])
        d = edge_direction(diag, ref)
        if dot(dual_vec, d) != 0:
            raise DiagramError(f"dual edge of {ref} is not orthogonal")
        duality.append((ref, (left, right)))

    return DualSubdivision(tuple(points), tuple(triangles), tuple(duality), root)


def is_smooth(diag: TropicalDiagram) -> bool:
    """True iff every cell of the dual subdivision has lattice area 1/2."""
    dual = dual_subdivision(diag)
    if diag.dim == 1:
        return True
    for tri in dual.triangles:
        if len(tri) != 3:
            return False
        a, b, c = (dual.lattice_points[i] for i in tri)
        if lattice_triangle_area(a, b, c) != Q(1, 2):
            return False
    return True


# --- face heights and point location ------------------------------------


def face_heights(
    diag: TropicalDiagram, base: Optional[QPoint] = None, dual: Optional[DualSubdivision] = None
) -> dict[int, Fraction]:
    """Lifting height of each face's dual vertex relative to a base point.

    The diagram is the corner locus of min over faces of h(F) + <alpha_F, x - b>;
    these heights are pinned by h(root) = 0 and the increments
    h(left) = h(right) + <alpha_right - alpha_left, p - b> across each edge,
    which are constant along the edge by orthogonality (asserted).
    """
    dual = dual_subdivision(diag) if dual is None else dual
    if base is None:
        base = tuple(Q(0) for _ in range(diag.dim))
    base = tuple(Q(c) for c in base)
    if len(base) != diag.dim:
        raise DiagramError("base point dimension mismatch")

    heights: dict[int, Fraction] = {dual.root_face: Q(0)}
    adjacency: dict[int, list[tuple[int, EdgeRef]]] = {}
    for ref, (left, right) in dual.edge_duality:
        adjacency.setdefault(left, []).append((right, ref))
        adjacency.setdefault(right, []).append((left, ref))
    stack = [dual.root_face]
    while stack:
        f = stack.pop()
        for g, ref in adjacency.get(f, ()):
            p0, p1 = edge_sample_points(diag, ref)
            alpha = dual.lattice_points[f]
            beta = dual.lattice_points[g]
            inc0 = dot(vsub(alpha, beta), vsub(p0, base))
            inc1 = dot(vsub(alpha, beta), vsub(p1, base))
            if inc0 != inc1:
                raise DiagramError(f"pairing is not constant along {ref}")
            h = heights[f] + inc0
            if g in heights:
                if heights[g] != h:
                    raise DiagramError("face heights are inconsistent around a loop")
            else:
                heights[g] = h
                stack.append(g)
    if len(heights) != len(dual.lattice_points):
        raise DiagramError("dual graph is not connected")
    return heights


def locate_face(
    diag: TropicalDiagram, x: QPoint, dual: Optional[DualSubdivision] = None
) -> Optional[int]:
    """Face of the complement containing x, or None if x lies on the diagram."""
    x = tuple(Q(c) for c in x)
    if diag.dim == 1:
        pos = sorted((v[0], i) for i, v in enumerate(diag.vertices))
        if any(w == x[0] for w, _ in pos):
            return None
        count = sum(1 for w, _ in pos if w < x[0])
        return count
    dual = dual_subdivision(diag) if dual is None else dual
    heights = face_heights(diag, None, dual)
    values = {
        f: heights[f] + dot(dual.lattice_points[f], x) for f in range(len(dual.lattice_points))
    }
    best = min(values.values())
    winners = [f for f, val in values.items() if val == best]
    if len(winners) != 1:
        return None
    return winners[0]


# --- dual vertex cones ---------------------------------------------------


def dual_vertex_cone(dual: DualSubdivision, face: int):
    """The integral cone at a dual vertex spanned by its neighbor vectors.

    Strictly convex at polygon corners, a half-plane at points interior to a
    polygon edge, the full plane at interior points.
    """
    from .lattice import ConeKind, IntegralCone, primitive

    apex = dual.lattice_points[face]
    vecs = []
    for _, (left, right) in dual.edge_duality:
        if left == face:
            vecs.append(vsub(dual.lattice_points[right], apex))
        elif right == face:
            vecs.append(vsub(dual.lattice_points[left], apex))
    vecs = sorted({primitive(v) for v in vecs})
    if not vecs:
        raise DiagramError("isolated dual vertex")
    if len(apex) == 1:
        return IntegralCone(apex, (vecs[0],), ConeKind.STRICT)
    ring = sorted(vecs, key=functools.cmp_to_key(_ccw_cmp))
    m = len(ring)
    if m == 1:
        return IntegralCone(apex, (ring[0],), ConeKind.STRICT)
    # classify by the counterclockwise gaps between consecutive directions
    for i in range(m):
        a, b = ring[i], ring[(i + 1) % m]
        c = cross2(a, b)
        if c < 0:  # gap beyond a half turn: salient cone from b around to a
            return IntegralCone(apex, (b, a), ConeKind.STRICT)
        if c == 0 and dot(a, b) < 0:  # gap of exactly a half turn
            side = next((v for v in ring if cross2(b, v) != 0), None)
            if side is None:
                raise DiagramError("dual vertex cone spans only a line")
            return IntegralCone(apex, (b, side), ConeKind.HALF_PLANE)
    return IntegralCone(apex, (), ConeKind.FULL_PLANE)


# --- JSON --------------------------------------------------------------------


def _q_str(x: Fraction) -> str:
    return str(x)


def diagram_to_json(diag: TropicalDiagram) -> dict:
    out: dict = {"dim": diag.dim, "vertices": [[_q_str(c) for c in v] for v in diag.vertices]}
    if diag.dim == 2:
        out["edges"] = [[i, j] for i, j in diag.edges]
        out["rays"] = [{"at": i, "dir": list(d)} for i, d in diag.rays]
    return out


def diagram_from_json(data) -> TropicalDiagram:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        dim = int(data["dim"])
        vertices = tuple(tuple(Q(c) for c in v) for v in data["vertices"])
        edges = tuple((int(i), int(j)) for i, j in data.get("edges", []))
        rays = tuple((int(r["at"]), tuple(int(c) for c in r["dir"])) for r in data.get("rays", []))
    except (KeyError, TypeError, ValueError) as exc:
        raise DiagramError(f"malformed diagram JSON: {exc}") from exc
    return TropicalDiagram(dim, vertices, edges, rays)
