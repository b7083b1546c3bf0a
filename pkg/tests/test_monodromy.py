import random
from fractions import Fraction as Q

import pytest

from helpers import random_smooth_web
from tropmirror.diagram import EdgeRef, TropicalDiagram, dual_subdivision
from tropmirror.lattice import vsub
from tropmirror.monodromy import (
    MonodromyError,
    build_dual_graph,
    edge_covector,
    identity_matrix,
    loop_monodromy,
    mat_mul,
    standard_form_matrix,
    vertex_loop,
)


def c3():
    return TropicalDiagram(2, ((Q(0), Q(0)),), (), ((0, (1, 0)), (0, (0, 1)), (0, (-1, -1))))


def conifold():
    return TropicalDiagram(
        2,
        ((Q(0), Q(0)), (Q(-1), Q(-1))),
        ((0, 1),),
        ((0, (1, 0)), (0, (0, 1)), (1, (-1, 0)), (1, (0, -1))),
    )


def test_edge_covector_orthogonal_and_gauge():
    diag = c3()
    assert edge_covector(diag, EdgeRef("ray", 0)) == (0, -1)  # ray (1,0)
    assert edge_covector(diag, EdgeRef("ray", 2)) == (-1, 1)  # ray (-1,-1)
    d1 = TropicalDiagram(1, ((Q(0),),))
    assert edge_covector(d1, EdgeRef("point", 0)) == (1,)


def test_covector_is_dual_edge_difference():
    for diag in (c3(), conifold()):
        dual = dual_subdivision(diag)
        for ref, (left, right) in dual.edge_duality:
            diff = vsub(dual.lattice_points[left], dual.lattice_points[right])
            assert diff == edge_covector(diag, ref)


def test_standard_form_examples():
    assert standard_form_matrix((1,), 2) == ((1, 1), (0, 1))
    assert standard_form_matrix((0, 1), 3) == ((1, 0, 0), (0, 1, 1), (0, 0, 1))
    with pytest.raises(MonodromyError, match="primitive"):
        standard_form_matrix((2, 4), 3)


def test_loop_monodromy_empty_and_inverse():
    diag = c3()
    assert loop_monodromy(diag, ()) == identity_matrix(3)
    ref = EdgeRef("ray", 1)
    word = ((ref, 1), (ref, -1))
    assert loop_monodromy(diag, word) == identity_matrix(3)


def test_vertex_loop_is_cocycle():
    diag = c3()
    word = vertex_loop(diag, 0)
    assert len(word) == 3
    assert loop_monodromy(diag, word) == identity_matrix(3)


def test_single_edge_antisymmetry():
    diag = conifold()
    for ref in diag.edge_refs():
        fwd = loop_monodromy(diag, ((ref, 1),))
        back = loop_monodromy(diag, ((ref, -1),))
        assert mat_mul(fwd, back) == identity_matrix(3)


def test_build_dual_graph_examples():
    emb = build_dual_graph(c3())
    assert set(emb.positions) == {(0, 0), (1, 0), (0, 1)}
    emb1 = build_dual_graph(TropicalDiagram(1, ((Q(0),),)))
    assert set(emb1.positions) == {(0,), (1,)}
    embc = build_dual_graph(conifold())
    assert set(embc.positions) == {(0, 0), (1, 0), (0, 1), (1, 1)}


def test_build_dual_graph_requires_smooth():
    coarse = TropicalDiagram(2, ((Q(0), Q(0)),), (), ((0, (0, 1)), (0, (-3, 1)), (0, (3, -2))))
    with pytest.raises(MonodromyError, match="smooth"):
        build_dual_graph(coarse)


def test_embedding_matches_subdivision_on_random_webs():
    rng = random.Random(41)
    for _ in range(15):
        web = random_smooth_web(rng)
        assert build_dual_graph(web).positions == dual_subdivision(web).lattice_points


def test_cocycle_on_random_webs():
    rng = random.Random(42)
    for _ in range(10):
        web = random_smooth_web(rng)
        n = web.dim + 1
        for v in range(len(web.vertices)):
            assert loop_monodromy(web, vertex_loop(web, v)) == identity_matrix(n)


def test_contractible_words_have_identity_monodromy():
    rng = random.Random(43)
    for _ in range(10):
        web = random_smooth_web(rng)
        refs = web.edge_refs()
        # random word times its formal inverse, with vertex relators spliced in
        word = [(rng.choice(refs), rng.choice((1, -1))) for _ in range(rng.randint(0, 4))]
        inverse = [(ref, -s) for ref, s in reversed(word)]
        middle = list(vertex_loop(web, rng.randrange(len(web.vertices))))
        full = word + middle + inverse
        assert loop_monodromy(web, tuple(full)) == identity_matrix(3)


def test_tree_independence_via_shuffled_adjacency():
    # build_dual_graph verifies the cocycle on every non-tree edge, so any
    # BFS tree gives the same embedding; spot-check by comparing the
    # embedding computed from relabeled (hence differently-traversed) webs
    rng = random.Random(44)
    for _ in range(5):
        web = random_smooth_web(rng)
        emb = build_dual_graph(web)
        nv = len(web.vertices)
        perm = list(range(nv))
        rng.shuffle(perm)
        inv = [perm.index(i) for i in range(nv)]
        relabeled = TropicalDiagram(
            2,
            tuple(web.vertices[inv[i]] for i in range(nv)),
            tuple((perm[i], perm[j]) for i, j in web.edges),
            tuple((perm[i], d) for i, d in web.rays),
        )
        emb2 = build_dual_graph(relabeled)
        assert set(emb.positions) == set(emb2.positions)
