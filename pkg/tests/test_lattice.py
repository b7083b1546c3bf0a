import itertools
import random
from fractions import Fraction as Q

import pytest

from helpers import apply_matrix, random_unimodular
from tropmirror.lattice import (
    Box,
    ConeKind,
    IntegralCone,
    LatticeError,
    box,
    cone_contains,
    intersect_shifted_cones,
    lattice_triangle_area,
    primitive,
)


def test_primitive_examples():
    assert primitive((2, -4)) == (1, -2)
    assert primitive((0, 7)) == (0, 1)
    assert primitive((-3, -3)) == (-1, -1)


def test_primitive_zero_rejected():
    with pytest.raises(LatticeError, match="primitive"):
        primitive((0, 0))


def test_primitive_idempotent():
    rng = random.Random(1)
    for _ in range(200):
        v = (rng.randint(-20, 20), rng.randint(-20, 20), rng.randint(-20, 20))
        if all(c == 0 for c in v):
            continue
        p = primitive(v)
        assert primitive(p) == p


def test_triangle_area_examples():
    assert lattice_triangle_area((0, 0), (1, 0), (0, 1)) == Q(1, 2)
    assert lattice_triangle_area((0, 0), (2, 0), (0, 2)) == 2
    assert lattice_triangle_area((0, 0), (1, 1), (2, 2)) == 0


def test_triangle_area_unimodular_invariance():
    rng = random.Random(2)
    for _ in range(200):
        tri = [(rng.randint(-5, 5), rng.randint(-5, 5)) for _ in range(3)]
        m = random_unimodular(rng)
        t = (rng.randint(-7, 7), rng.randint(-7, 7))
        moved = [
            tuple(a + b for a, b in zip(apply_matrix(m, p), t)) for p in tri
        ]
        assert lattice_triangle_area(*tri) == lattice_triangle_area(*moved)


def test_cone_contains_examples():
    c = IntegralCone((0, 0), ((1, 0), (0, 1)))
    assert cone_contains(c, (3, 2))
    assert not cone_contains(c, (-1, 0))
    c2 = IntegralCone((1, 0), ((-1, 0), (-1, 1)))
    assert cone_contains(c2, (0, 0))


def test_cone_contains_matches_enumeration():
    # brute-force combinations a*g1 + b*g2 with coefficients up to 5
    c = IntegralCone((1, 0), ((-1, 0), (-1, 1)))
    reachable = set()
    for a, b in itertools.product(range(6), repeat=2):
        reachable.add((1 - a - b, b))
    for x in range(-5, 6):
        for y in range(0, 6):
            p = (x, y)
            if p in reachable:
                assert cone_contains(c, p)


def test_half_and_full_plane_membership():
    hp = IntegralCone((0, 0), ((1, 0), (0, 1)), ConeKind.HALF_PLANE)
    assert cone_contains(hp, (5, 0))  # boundary line included
    assert cone_contains(hp, (-7, 3))
    assert not cone_contains(hp, (0, -1))
    fp = IntegralCone((2, 2), (), ConeKind.FULL_PLANE)
    assert cone_contains(fp, (-100, 100))


def test_cone_construction_guards():
    with pytest.raises(LatticeError):
        IntegralCone((0, 0), ((2, 0),))  # non-primitive generator
    with pytest.raises(LatticeError):
        IntegralCone((0, 0), ((1, 0), (-1, 0)))  # dependent strict generators
    with pytest.raises(LatticeError):
        IntegralCone((0, 0), ((1, 0), (0, 1), (1, 1)))  # too many generators


def test_intersect_shifted_cones_unit_triangle():
    cones = [
        IntegralCone((0, 0), ((1, 0), (0, 1))),
        IntegralCone((1, 0), ((-1, 0), (-1, 1))),
        IntegralCone((0, 1), ((0, -1), (1, -1))),
    ]
    found = intersect_shifted_cones(cones, box((-3, 3), (-3, 3)))
    assert found == {(0, 0), (1, 0), (0, 1)}


def test_intersect_full_plane_and_empty():
    fp = IntegralCone((0, 0), (), ConeKind.FULL_PLANE)
    assert len(intersect_shifted_cones([fp], box((0, 1), (0, 1)))) == 4
    a = IntegralCone((0, 0), ((1, 0), (0, 1)))
    b = IntegralCone((-10, -10), ((-1, 0), (0, -1)))
    assert intersect_shifted_cones([a, b], box((-5, 5), (-5, 5))) == set()
    with pytest.raises(LatticeError, match="empty"):
        intersect_shifted_cones([], box((0, 1), (0, 1)))


def test_intersection_agrees_with_per_point_scan():
    rng = random.Random(3)
    search = box((-5, 5), (-5, 5))
    for _ in range(20):
        cones = []
        for _ in range(rng.randint(1, 3)):
            apex = (rng.randint(-2, 2), rng.randint(-2, 2))
            g1 = primitive((rng.randint(-3, 3), rng.randint(-3, 3))) if rng.random() < 2 else None
            while True:
                try:
                    g1 = primitive((rng.randint(-3, 3), rng.randint(-3, 3)))
                    g2 = primitive((rng.randint(-3, 3), rng.randint(-3, 3)))
                    cones.append(IntegralCone(apex, (g1, g2)))
                    break
                except LatticeError:
                    continue
        result = intersect_shifted_cones(cones, search)
        scan = {
            p
            for p in search.lattice_points()
            if all(cone_contains(c, p) for c in cones)
        }
        assert result == scan


def test_box_validation_and_corners():
    with pytest.raises(LatticeError):
        Box(((Q(1), Q(0)),))
    b = box((0, 1), (Q(-1, 2), Q(3, 2)))
    assert len(list(b.corners())) == 4
    assert set(b.lattice_points()) == {(0, 0), (0, 1), (1, 0), (1, 1)}
