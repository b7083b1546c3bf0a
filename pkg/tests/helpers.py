"""Shared test utilities: random lattice polygons, smooth webs, unimodular maps."""

from __future__ import annotations

import random
from fractions import Fraction

from tropmirror.charges import ChargeError, regular_subdivision, web_from_subdivision
from tropmirror.diagram import TropicalDiagram, is_smooth, validate
from tropmirror.lattice import cross2, vsub
from tropmirror.novikov import NovikovElement, nov

Q = Fraction


def convex_hull(points):
    """Monotone-chain convex hull of integer points, counterclockwise."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and cross2(vsub(out[-1], out[-2]), vsub(p, out[-2])) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    return lower[:-1] + upper[:-1]


def lattice_points_in_hull(hull):
    xs = [p[0] for p in hull]
    ys = [p[1] for p in hull]
    out = []
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            inside = True
            m = len(hull)
            for i in range(m):
                a, b = hull[i], hull[(i + 1) % m]
                if cross2(vsub(b, a), vsub((x, y), a)) < 0:
                    inside = False
                    break
            if inside:
                out.append((x, y))
    return out


def random_smooth_web(rng: random.Random, max_points: int = 12) -> TropicalDiagram:
    """A random smooth web: random lattice polygon, strictly convex heights.

    Strict convexity puts every lattice point on the lower hull, so the
    subdivision is a full (hence unimodular) triangulation for generic
    perturbations.
    """
    while True:
        raw = [(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(rng.randint(3, 6))]
        hull = convex_hull(raw)
        if len(hull) < 3:
            continue
        pts = lattice_points_in_hull(hull)
        if not 3 <= len(pts) <= max_points:
            continue
        heights = [
            Q(x * x + y * y) + Q(rng.randint(-(10**6), 10**6), 10**8) for x, y in pts
        ]
        try:
            sub = regular_subdivision(pts, heights)
            if not sub.is_unimodular() or sub.used_points() != set(range(len(pts))):
                continue
            web = web_from_subdivision(sub)
        except ChargeError:
            continue
        if validate(web).ok and is_smooth(web):
            return web


def random_unimodular(rng: random.Random):
    """A random 2x2 integer matrix of determinant +-1 (product of shears/swaps)."""
    m = [[1, 0], [0, 1]]
    for _ in range(rng.randint(1, 6)):
        kind = rng.randint(0, 2)
        k = rng.randint(-3, 3)
        if kind == 0:
            m = [[m[0][0] + k * m[1][0], m[0][1] + k * m[1][1]], m[1]]
        elif kind == 1:
            m = [m[0], [m[1][0] + k * m[0][0], m[1][1] + k * m[0][1]]]
        else:
            m = [m[1], m[0]]
    return m


def apply_matrix(m, p):
    return (m[0][0] * p[0] + m[0][1] * p[1], m[1][0] * p[0] + m[1][1] * p[1])


def random_novikov(
    rng: random.Random, nterms: int = 4, truncation=None, min_num: int = -8
) -> NovikovElement:
    terms = []
    for _ in range(rng.randint(0, nterms)):
        e = Q(rng.randint(min_num, 24), rng.randint(1, 6))
        c = Q(rng.randint(-9, 9), rng.randint(1, 5))
        terms.append((e, c))
    return nov(terms, truncation)


def interior_point_near_vertex(diag: TropicalDiagram, rng: random.Random):
    """A rational point inside a face, close to a random vertex sector."""
    from tropmirror.diagram import _vertex_star, locate_face

    while True:
        v = rng.randrange(len(diag.vertices))
        star = _vertex_star(diag, v)
        (_, d1), (_, d2) = rng.sample(star, 2)
        mid = (Q(d1[0] + d2[0]), Q(d1[1] + d2[1]))
        if mid == (0, 0):
            continue
        eps = Q(1, rng.randint(7, 23))
        p = (
            diag.vertices[v][0] + eps * mid[0] + eps * eps * Q(d1[0]),
            diag.vertices[v][1] + eps * mid[1] + eps * eps * Q(d1[1]),
        )
        if locate_face(diag, p) is not None:
            return p
