from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from gkmforge.algebra.jet import GradedJet
from gkmforge.algebra.laurent import LaurentElement
from gkmforge.gkm import (Edge, GraphError, MomentGraph, check_class, convolve, cs_compare, graded_dimensions,
                          image_basis, product_graph, splitting_dimension_check)
from gkmforge.ingest import (Fan, cp1_graph, cp1_k_generators, cp1xcp1_graph, cp2_generators, cp2_graph, fan_to_graph,
                             s1_zn_graph)
from gkmforge.lattice import DualGroup, TorsionPoint

F = Fraction
S1 = DualGroup(1)
T2 = DualGroup(2)


def poly(p, d):
    return GradedJet.polynomial(p, None, d)


def free_module_dims(p, gen_degrees, upto):
    """Hilbert function of a free Q[u_1..u_p]-module: the independent count for equivariantly formal spaces."""
    return [sum(comb(d - k + p - 1, p - 1) for k in gen_degrees if k <= d) for d in range(upto + 1)]


def cp3_graph():
    rays = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1))
    cones = ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3))
    return fan_to_graph(Fan(3, rays, cones))


@pytest.mark.parametrize("graph, p, degrees, upto", [
    (cp1_graph, 1, [0, 1], 4),
    (cp2_graph, 2, [0, 1, 2], 5),
    (cp1xcp1_graph, 2, [0, 1, 1, 2], 4),
    (cp3_graph, 3, [0, 1, 2, 3], 3),
])
def test_dimensions_match_free_module_count(graph, p, degrees, upto):
    assert graded_dimensions(graph(), upto) == free_module_dims(p, degrees, upto)


def test_k_window_count():
    # f_N arbitrary, f_N - f_S divisible by 1 - z: 2(2W+1) - 1
    for W in range(4):
        assert len(image_basis(cp1_graph(), "K", W)) == 4 * W + 1


def test_check_class_h():
    G = cp1_graph()
    assert check_class(G, {"N": poly(1, {}), "S": poly(1, {(1,): 1})}).ok
    res = check_class(G, {"N": poly(1, {}), "S": poly(1, {(0,): 1})})
    assert not res.ok and res.failures[0].edge.u == "N"
    with pytest.raises(GraphError):
        check_class(G, {"N": poly(1, {})})


def test_check_class_k():
    G = cp1_graph()
    one = LaurentElement(S1, {(0,): 1})
    z = LaurentElement(S1, {(1,): 1})
    assert check_class(G, {"N": one, "S": z}).ok
    assert not check_class(G, {"N": one, "S": z + z}).ok


def test_cs_compare():
    res = cs_compare(cp2_graph(), cp2_generators(), "H", range(5))
    assert res.equal
    res = cs_compare(cp1_graph(), cp1_k_generators(), "K", range(4))
    assert res.equal
    dropped = cp2_generators()[:2]
    res = cs_compare(cp2_graph(), dropped, "H", range(4))
    assert not res.equal and res.first_gap == 2
    assert "strict inclusion at 2" in res.describe()


def test_splitting():
    for G in (cp1_graph(), cp2_graph(), cp1xcp1_graph()):
        for d in range(3):
            assert splitting_dimension_check(G, "H", d).ok


def test_product_graph_is_product():
    P = product_graph(cp1_graph(), cp1_graph())
    assert len(P.vertices) == 4 and len(P.edges) == 4
    assert graded_dimensions(P, 3) == graded_dimensions(cp1xcp1_graph(), 3)


def test_convolve():
    assert convolve([1, 2, 2, 2], [1, 2, 2, 2], 4) == [1, 4, 8, 12]


def test_orbit_vertex_dimensions():
    assert graded_dimensions(s1_zn_graph(4), 3) == [1, 0, 0, 0]


def test_graph_validation():
    with pytest.raises(GraphError):
        MomentGraph(S1, ("a", "b"), (Edge("a", "b", (0,)),))
    with pytest.raises(GraphError):
        MomentGraph(S1, ("a", "b"), (Edge("a", "b", (2,)),))
    with pytest.raises(GraphError):
        MomentGraph(S1, ("a", "a"))
    with pytest.raises(GraphError):
        MomentGraph(S1, ("a",), (Edge("a", "a", (1,)),))


def test_fixed_subgraph():
    G = cp2_graph()
    a = TorsionPoint.of(T2, F(1, 2), F(1, 2))
    H = G.fixed_subgraph(a)
    assert set(H.vertices) == {"p1", "p2", "p3"}
    assert [(e.u, e.v) for e in H.edges] == [("p2", "p3")]


polys2 = st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)), st.integers(-3, 3), max_size=3)


@given(st.lists(st.integers(-3, 3), min_size=6, max_size=6), polys2, polys2)
def test_gkm_classes_form_a_ring(cs, f, g):
    G = cp2_graph()
    basis = image_basis(G, "H", 2)
    x = {v: sum((basis[i][v] * c for i, c in enumerate(cs[:len(basis)])), poly(2, {})) for v in G.vertices}
    y = {v: basis[-1][v] * poly(2, f) + poly(2, g) for v in G.vertices}
    assert check_class(G, x).ok and check_class(G, y).ok
    assert check_class(G, {v: x[v] * y[v] for v in G.vertices}).ok
    assert check_class(G, {v: x[v] - y[v] for v in G.vertices}).ok


@given(st.lists(polys2, min_size=3, max_size=3))
def test_constant_polynomial_classes_are_gkm(ps):
    G = cp2_graph()
    f = poly(2, ps[0])
    assert check_class(G, {v: f for v in G.vertices}).ok
