"""Cut presentation of the complete integral affine base and parallel transport.

The base is R^(d+1): moment coordinates over the diagram plane plus one extra
coordinate.  Each diagram edge e at height tau(e) hangs a cut
P_e = {(x, t) : x on e, t <= tau(e)}; gluing across a cut is the unipotent
standard-form matrix of the edge covector.  Transporting a covector along a
polyline applies the gluing matrix (or its inverse) at each transversal
crossing; the crossing sign is positive when the path moves with the edge
covector increasing.

Chambers: points with last coordinate above every relevant cut height are in
V_plus, below in V_minus, and points at the wall level over a face are wall
points tagged by the face.  tau defaults to zero on every edge, putting the
diagram in the plane {t = 0}; users may supply per-edge constants.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .diagram import (
    EdgeRef,
    TropicalDiagram,
    edge_anchor,
    edge_direction,
    locate_face,
    validate,
)
from .lattice import QPoint, Vec, dot, vsub
from .monodromy import Matrix, edge_covector, mat_apply, standard_form_matrix

Q = Fraction


class AffineError(ValueError):
    pass


@dataclass(frozen=True)
class ChamberId:
    tag: str  # "V_plus" | "V_minus" | "wall"
    face: Optional[int] = None

    def __str__(self):
        return self.tag if self.face is None else f"wall({self.face})"


V_PLUS = ChamberId("V_plus")
V_MINUS = ChamberId("V_minus")


def wall(face: int) -> ChamberId:
    return ChamberId("wall", face)


@dataclass(frozen=True)
class Cut:
    ref: EdgeRef
    covector: Vec
    matrix: Matrix
    tau: Fraction


@dataclass(frozen=True)
class CutPresentation:
    diagram: TropicalDiagram
    cuts: tuple[Cut, ...]

    @property
    def n(self) -> int:
        return self.diagram.dim + 1

    def tau_of(self, ref: EdgeRef) -> Fraction:
        for c in self.cuts:
            if c.ref == ref:
                return c.tau
        raise AffineError(f"{ref} has no cut")


def build_cut_presentation(diag: TropicalDiagram, tau: Optional[dict] = None) -> CutPresentation:
    """One cut per bounded edge and ray, glued by the standard-form matrices."""
    report = validate(diag)
    if not report.ok:
        raise AffineError("diagram fails axioms: " + ", ".join(report.failed_axioms()))
    refs = diag.edge_refs()
    tau = dict(tau or {})
    for ref in tau:
        if ref not in refs:
            raise AffineError(f"tau defined on a non-edge {ref}")
    n = diag.dim + 1
    cuts = []
    for ref in refs:
        cov = edge_covector(diag, ref)
        cuts.append(Cut(ref, cov, standard_form_matrix(cov, n), Q(tau.get(ref, 0))))
    return CutPresentation(diag, tuple(cuts))


def _face_cut_heights(pres: CutPresentation, face: int) -> list[Fraction]:
    diag = pres.diagram
    if diag.dim == 1:
        order = sorted(range(len(diag.vertices)), key=lambda i: diag.vertices[i][0])
        refs = []
        if face > 0:
            refs.append(EdgeRef("point", order[face - 1]))
        if face < len(order):
            refs.append(EdgeRef("point", order[face]))
        return [pres.tau_of(r) for r in refs]
    from .diagram import faces as face_complex

    fc = face_complex(diag)
    refs = {d.ref for d in fc.faces[face].darts}
    return [pres.tau_of(r) for r in refs]


def chamber_of(pres: CutPresentation, p: Sequence) -> ChamberId:
    """Classify a base point: V_plus above the wall slab of its face, V_minus
    below, wall(face) inside it.  Points over the diagram itself error out.
    """
    p = tuple(Q(c) for c in p)
    if len(p) != pres.n:
        raise AffineError("point dimension mismatch")
    x, t = p[:-1], p[-1]
    diag = pres.diagram
    face = locate_face(diag, x)
    if face is None:
        raise AffineError("on wall")
    taus = _face_cut_heights(pres, face)
    if t > max(taus):
        return V_PLUS
    if t < min(taus):
        return V_MINUS
    return wall(face)


@dataclass(frozen=True)
class Crossing:
    ref: EdgeRef
    sign: int
    point: QPoint  # crossing point in the base


def _on_edge(diag: TropicalDiagram, ref: EdgeRef, pt) -> bool:
    """Is a planar point on the closed edge (segment, ray, or d=1 point)?"""
    if ref.kind == "point":
        return pt[0] == diag.vertices[ref.index][0]
    anchor = edge_anchor(diag, ref)
    d = edge_direction(diag, ref)
    rel = vsub(pt, anchor)
    axis = 0 if d[0] != 0 else 1
    param = rel[axis] / d[axis]
    if any(ri != param * di for di, ri in zip(d, rel)):
        return False
    if ref.kind == "ray":
        return param >= 0
    i, j = diag.edges[ref.index]
    dv = vsub(diag.vertices[j], diag.vertices[i])
    return 0 <= param <= dv[axis] / d[axis]


def _segment_crossings(pres: CutPresentation, a: QPoint, b: QPoint) -> list[Crossing]:
    diag = pres.diagram
    axy, at = a[:-1], a[-1]
    bxy, bt = b[:-1], b[-1]
    found: list[tuple[Fraction, Crossing]] = []
    for cut in pres.cuts:
        cov = cut.covector
        if diag.dim == 1:
            anchor = diag.vertices[cut.ref.index]
        else:
            anchor = edge_anchor(diag, cut.ref)
        fa = dot(cov, vsub(axy, anchor))
        fb = dot(cov, vsub(bxy, anchor))
        if fa == fb:
            if fa == 0 and min(at, bt) <= cut.tau:
                # segment inside the cut plane at cut height: reject if its
                # projection overlaps the edge range
                if diag.dim == 1:
                    raise AffineError("path runs along a cut")
                d = edge_direction(diag, cut.ref)
                axis = 0 if d[0] != 0 else 1
                ua = (axy[axis] - anchor[axis]) / d[axis]
                ub = (bxy[axis] - anchor[axis]) / d[axis]
                lo, hi = min(ua, ub), max(ua, ub)
                if cut.ref.kind == "ray":
                    overlap = hi >= 0
                else:
                    i, j = diag.edges[cut.ref.index]
                    dv = vsub(diag.vertices[j], diag.vertices[i])
                    length = dv[axis] / d[axis]
                    overlap = hi >= 0 and lo <= length
                if overlap:
                    raise AffineError("path runs along a cut")
            continue
        if fa == 0 or fb == 0:
            # the plane is met only at an endpoint; error iff that endpoint
            # is on the actual cut region, otherwise no crossing occurs
            pt, height = (axy, at) if fa == 0 else (bxy, bt)
            if height <= cut.tau and _on_edge(diag, cut.ref, pt):
                raise AffineError("path endpoint lies on a cut")
            continue
        if (fa > 0) == (fb > 0):
            continue
        s = fa / (fa - fb)
        point = tuple(pa + s * (pb - pa) for pa, pb in zip(a, b))
        xq, tq = point[:-1], point[-1]
        if not _on_edge(diag, cut.ref, xq):
            continue
        if tq > cut.tau:
            continue  # passes above the cut, through glued regular base
        if tq == cut.tau:
            raise AffineError("path hits discriminant")
        if diag.dim == 2:
            # crossing exactly over an edge endpoint is a vertex line
            if cut.ref.kind == "edge":
                i, j = diag.edges[cut.ref.index]
                if xq in (diag.vertices[i], diag.vertices[j]):
                    raise AffineError("path hits discriminant")
            elif xq == anchor:
                raise AffineError("path hits discriminant")
        sign = 1 if fb > fa else -1
        found.append((s, Crossing(cut.ref, sign, point)))
    found.sort(key=lambda item: item[0])
    return [c for _, c in found]


def transport_covector(pres: CutPresentation, path: Sequence, g: Sequence[int]) -> Vec:
    """Parallel transport of an integer covector along a polyline.

    The covector is written in the basis (eta_1, ..., eta_{n-1}, g_0); each
    signed cut crossing applies the gluing matrix or its inverse.
    """
    pts = [tuple(Q(c) for c in p) for p in path]
    if len(pts) < 2:
        raise AffineError("path needs at least two points")
    for p in pts:
        if len(p) != pres.n:
            raise AffineError("path point dimension mismatch")
    for p, q in zip(pts, pts[1:]):
        if p == q:
            raise AffineError("consecutive path points coincide")
    v = tuple(int(c) for c in g)
    if len(v) != pres.n:
        raise AffineError("covector dimension mismatch")
    for a, b in zip(pts, pts[1:]):
        for crossing in _segment_crossings(pres, a, b):
            cov = edge_covector(pres.diagram, crossing.ref)
            if crossing.sign < 0:
                cov = tuple(-c for c in cov)
            v = mat_apply(standard_form_matrix(cov, pres.n), v)
    return v


def transport_crossings(pres: CutPresentation, path: Sequence) -> list[Crossing]:
    """The signed cut crossings along a polyline, in order."""
    pts = [tuple(Q(c) for c in p) for p in path]
    out = []
    for a, b in zip(pts, pts[1:]):
        out.extend(_segment_crossings(pres, a, b))
    return out
