from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from gkmforge.algebra.cyclo import CycloScalar
from gkmforge.chern import EquivariantBundle, LineSummand
from gkmforge.cover import Ball, Cover, build_adapted
from gkmforge.gkm import Edge, MomentGraph, check_class
from gkmforge.ingest import (cp1_model, cp1_tautological, cp2_graph, cp2_hyperplane, cp2_model, model_for,
                             s1_zn_model, standard_character_bundle, trivial_bundle, zm_zl_model)
from gkmforge.lattice import DualGroup, TorsionPoint, canonical_subgroup, zero_subgroup
from gkmforge.sheafmodel import (GluingError, SheafModel, cocycle_check, cocycle_triples, glue, glue_back,
                                 graph_collection, section_check, section_space, section_values_at, stalk_space)

F = Fraction
S1 = DualGroup(1)
T2 = DualGroup(2)


def test_graph_collection_cp2():
    A = graph_collection(cp2_graph())
    assert zero_subgroup(T2) in A
    for w in ((1, 0), (0, 1), (1, -1)):
        assert canonical_subgroup(T2, [w]) in A


def test_stalk_at_identity_is_global_gkm_space():
    M = cp2_model(cutoff=4)
    zero = TorsionPoint.of(T2, 0, 0)
    expected = [sum(comb(d - k + 1, 1) for k in range(3) if k <= d) for d in range(5)]
    assert stalk_space(M, zero).dimensions() == expected


def test_generic_stalk_is_sum_of_polynomial_rings():
    M = cp1_model(cutoff=3)
    generic = next(a for a in M.centers if a.coords[0] != 0)
    assert stalk_space(M, generic).dimensions() == [2, 2, 2, 2]


def test_orbit_stalks():
    M = s1_zn_model(3, cutoff=2)
    for a in M.centers:
        dims = stalk_space(M, a).dimensions()
        assert dims == ([1, 0, 0] if (3 * a.coords[0]).denominator == 1 else [0, 0, 0])


def test_glue_round_trip_and_restriction():
    M = cp2_model(cutoff=3)
    for a, b in M.glue_pairs():
        keep = set(M.fixed_graph(b).vertices)
        for s in stalk_space(M, a, max_degree=2).elements:
            t = glue(M, a, b, s)
            assert set(t.vertex_jets) == keep
            assert check_class(M.fixed_graph(b), t.vertex_jets).ok
            back = glue_back(M, b, a, t)
            assert all(back.vertex_jets[v] == s.vertex_jets[v] for v in keep)


def test_glue_requires_overlap_and_order():
    M = cp1_model()
    centers = M.centers
    far = [(a, b) for a in centers for b in centers if a != b and (a, b) not in M.glue_pairs()]
    a, b = far[0]
    s = stalk_space(M, a, max_degree=0).elements[0]
    with pytest.raises(GluingError):
        glue(M, a, b, s)
    with pytest.raises(GluingError):
        stalk_space(M, TorsionPoint.of(S1, F(1, 7)))


def test_oversized_cover_is_refused():
    G = MomentGraph(T2, ("a", "b"), (Edge("a", "b", (1, 2)),))
    pts = [TorsionPoint.of(T2, 0, 0), TorsionPoint.of(T2, F(1, 3), F(1, 3))]
    cover = Cover(tuple(Ball(p, F(49, 100)) for p in pts), tuple(graph_collection(G)))
    M = SheafModel(G, cover, 2)
    s = stalk_space(M, pts[0], max_degree=0).elements[0]
    with pytest.raises(GluingError, match="shrink the cover"):
        glue(M, pts[0], pts[1], s)
    # the adapted cover on the same centers glues fine
    M2 = SheafModel(G, build_adapted(graph_collection(G), pts), 2)
    for a, b in M2.glue_pairs():
        glue(M2, a, b, stalk_space(M2, a, max_degree=0).elements[0])


def test_cocycles_on_bundled_models():
    for M in (cp1_model(cutoff=3), cp2_model(cutoff=2), s1_zn_model(4, cutoff=2)):
        for t in cocycle_triples(M):
            assert cocycle_check(M, *t).ok


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_s1_zn_section_values(n):
    M = s1_zn_model(n, cutoff=2)
    res = section_check(M, standard_character_bundle(M.graph))
    assert res.ok
    vals = section_values_at(res.section, "orbit")
    for a, v in vals.items():
        assert v == CycloScalar.exp2pii(a.coords[0])
        assert (n * a.coords[0]).denominator == 1


def test_zm_zl_section_space():
    M = zm_zl_model(6, 3)
    sp = section_space(M)
    assert sp.dim == 3
    assert all((3 * a.coords[0]).denominator == 1 for a in sp.support)


@pytest.mark.parametrize("model, bundle", [(cp1_model, cp1_tautological), (cp2_model, cp2_hyperplane)])
def test_bundle_sections_glue(model, bundle):
    M = model(cutoff=3)
    res = section_check(M, bundle())
    assert res.ok and res.pairs_checked == len(M.glue_pairs())


def test_section_of_trivial_bundle_is_rank_constant():
    M = cp1_model(cutoff=2)
    res = section_check(M, trivial_bundle(M.graph))
    for a, s in res.section.germs.items():
        for j in s.vertex_jets.values():
            assert j.constant_term() == 1


def test_inconsistent_germs_are_detected():
    """Ranks that jump across an edge cannot come from a bundle."""
    M = cp1_model(cutoff=2)
    E = EquivariantBundle(S1, {"N": (LineSummand((0,)),), "S": (LineSummand((0,)), LineSummand((1,)))})
    res = section_check(M, E)
    assert not res.ok
    assert res.failure is not None


@settings(max_examples=20)
@given(st.lists(st.integers(0, 23), min_size=2, max_size=6, unique=True))
def test_random_centers_give_consistent_models(ks):
    pts = [TorsionPoint.of(S1, F(k, 24)) for k in ks]
    from gkmforge.ingest import cp1_graph
    M = model_for(cp1_graph(), pts, cutoff=2)
    assert section_check(M, cp1_tautological()).ok
    for t in cocycle_triples(M):
        assert cocycle_check(M, *t).ok


primitive_weights = st.sampled_from([(1, 0), (0, 1), (1, 2), (2, 1), (1, -3), (3, 2), (1, 1)])
t2_points = st.tuples(st.integers(0, 11), st.integers(0, 11)).map(lambda t: TorsionPoint.of(T2, F(t[0], 12), F(t[1], 12)))


@settings(max_examples=30)
@given(primitive_weights, st.lists(t2_points, min_size=2, max_size=6, unique=True))
def test_built_covers_always_glue(w, pts):
    G = MomentGraph(T2, ("a", "b"), (Edge("a", "b", w),))
    M = model_for(G, pts, cutoff=1)
    for a, b in M.glue_pairs():
        for s in stalk_space(M, a, max_degree=1).elements:
            glue(M, a, b, s)
