from __future__ import annotations

import pytest

from hodge_fusion.cohomology import betti, euler_poincare_check
from hodge_fusion.complex import (ComplexError, DeltaComplex, closure, euler_characteristic, f_vector,
                                  unit_sphere, whitney_complex)
from hodge_fusion.constructions import (KINDS, GeneratorSpec, complete, connected_sum, cross_polytope,
                                        cyclic, discrete_torus, generate, icosahedron, load_fixture,
                                        minimal_sphere, octahedron, path, random_whitney,
                                        simplex_boundary, skeleton_of, wedge_circles)
from hodge_fusion.fusion import fusion_report, interface_nullity
from hodge_fusion.operators import is_valid_delta
from hodge_fusion.products import suspension

import golden


def test_cyclic():
    for n in (3, 4, 7):
        C = cyclic(n)
        assert f_vector(C) == (n, n) and euler_characteristic(C) == 0 and betti(C) == (1, 1)
    assert len(cyclic(4)) == 8
    with pytest.raises(ValueError):
        cyclic(2)


def test_spheres():
    for q in (1, 2, 3, 4):
        b = betti(simplex_boundary(q + 1))
        assert b == (1,) + (0,) * (q - 1) + (1,)
        assert betti(minimal_sphere(q)) == b
    assert simplex_boundary(3) == closure(golden.TETRA_FACETS)
    assert minimal_sphere(2).cells == ((0,), (1, 2, 3))
    assert minimal_sphere(2).dims == (0, 2)
    assert betti(DeltaComplex([[1], [1, 2]], [0, 1])) == (0, 0)


def test_cross_polytope_is_octahedron_graph():
    O = cross_polytope(3)
    edges = [c for c in O.cells if len(c) == 2]
    assert len(edges) == 12 and f_vector(O) == (6, 12, 8)
    assert whitney_complex(O.labels, edges) == O
    assert betti(cross_polytope(4)) == (1, 0, 0, 1)


def test_misc_generators():
    assert betti(complete(4)) == (1, 0, 0, 0)
    assert betti(path(5)) == (1, 0)
    assert betti(skeleton_of(4, 1)) == (1, 3)
    assert betti(wedge_circles(3)) == (1, 3)
    assert f_vector(icosahedron()) == (12, 30, 20) and betti(icosahedron()) == (1, 0, 1)
    assert f_vector(discrete_torus(3)) == (36, 108, 72)
    assert betti(discrete_torus()) == (1, 2, 1)
    assert random_whitney(8, 12, 3) == random_whitney(8, 12, 3)


def test_generate_dispatch():
    assert generate("cyclic", 5) == cyclic(5)
    assert generate(GeneratorSpec("minimal_sphere", (3,))) == minimal_sphere(3)
    assert set(KINDS) >= {"cyclic", "random_whitney", "cross_polytope"}
    with pytest.raises(ValueError, match="unknown generator"):
        generate("klein", 3)
    with pytest.raises(ValueError):
        generate("path", -1)


def test_random_whitney_validity():
    for seed in range(25):
        G = random_whitney(9, 18, seed)
        assert is_valid_delta(G) and euler_poincare_check(G)


def test_fixtures():
    assert betti(load_fixture("rp2").complex) == (1, 0, 0)
    assert len(load_fixture("rp2").complex) == 31
    assert betti(load_fixture("mobius").complex) == (1, 1, 0)
    doc = load_fixture("friends")
    assert betti(doc.complex) == (1, 1, 0)
    assert doc.names()[doc.label_table["Anna"]] == "Anna"


def _cycle_order(C: DeltaComplex) -> list[int]:
    nbrs = {v: [] for v in C.labels}
    for c in C.cells_of_dim(1):
        nbrs[c[0]].append(c[1])
        nbrs[c[1]].append(c[0])
    order = [C.labels[0]]
    while len(order) < len(nbrs):
        order.append(next(w for w in nbrs[order[-1]] if w not in order[-2:]))
    return order


def test_two_octahedra():
    O = octahedron()
    x = (1,)
    s = connected_sum(O, x, O, x, {v: v for v in unit_sphere(O, x).labels})
    r = fusion_report(s)
    assert (r.bK, r.bU, r.bG, r.bI) == ((1, 0, 0), (0, 0, 1), (1, 0, 1), (0, 0, 0))
    assert f_vector(s.G) == (6, 12, 8)


def test_torus_sum_torus():
    T = discrete_torus()
    x = (1,)
    s = connected_sum(T, x, T, x, {v: v for v in unit_sphere(T, x).labels})
    r = fusion_report(s)
    assert (r.bK, r.bU, r.bG) == ((1, 2, 0), (0, 2, 1), (1, 4, 1))
    assert interface_nullity(s) == (0, 0, 0)
    assert euler_characteristic(s.G) == -2


def test_sum_with_a_sphere_gives_back_the_manifold():
    T = discrete_torus(3)
    x = (1,)
    link = unit_sphere(T, x)
    H = suspension(cyclic(len(link.labels)))
    apex = (len(link.labels) + 1,)
    matching = dict(zip(_cycle_order(link), _cycle_order(unit_sphere(H, apex))))
    s = connected_sum(T, x, H, apex, matching)
    assert betti(s.G) == betti(T) == (1, 2, 1)
    assert fusion_report(s).bI == (0, 0, 0)


def test_connected_sum_rejects_bad_matchings():
    O = octahedron()
    x = (1,)
    verts = unit_sphere(O, x).labels
    with pytest.raises(ComplexError):
        connected_sum(O, x, O, x, {v: v for v in verts[:-1]})
    # swapping two opposite vertices of the square is fine, adjacent ones are not
    a, b, c, d = _cycle_order(unit_sphere(O, x))
    connected_sum(O, x, O, x, {a: c, b: b, c: a, d: d})
    with pytest.raises(ComplexError):
        connected_sum(O, x, O, x, {a: b, b: a, c: c, d: d})
