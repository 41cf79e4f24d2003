from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from gkmforge.cover import (Ball, Cover, adapted_radius, balls_overlap, build_adapted, component_reps,
                            dist_to_subvariety, point_distance, triple_overlap, verify_adapted)
from gkmforge.ingest import bad_cover, cp1_tcw, s1_zn_tcw
from gkmforge.lattice import (DualGroup, LatticeError, TorsionPoint, canonical_subgroup, full_subgroup,
                              in_subvariety, zero_subgroup)
from gkmforge.tcw import (Cell, TCWComplex, fixed_by_point_via_dual, fixed_subcomplex, isotropy_collection,
                          one_skeleton)

F = Fraction
S1 = DualGroup(1)
T2 = DualGroup(2)


# T-CW complexes


def test_cp1_census():
    X = cp1_tcw()
    assert len(fixed_subcomplex(X, TorsionPoint.of(S1, F(1, 3)))) == 2
    assert len(fixed_subcomplex(X, TorsionPoint.of(S1, 0))) == 3
    assert len(one_skeleton(X)) == 3
    assert isotropy_collection(X) == [zero_subgroup(S1), full_subgroup(S1)]


def test_s1_zn_fixed_points():
    X = s1_zn_tcw(4)
    for k in range(8):
        a = TorsionPoint.of(S1, F(k, 8))
        assert (len(fixed_subcomplex(X, a)) == 1) == (k % 2 == 0)


def test_subgroup_selector():
    X = TCWComplex(T2, (Cell(0, zero_subgroup(T2)), Cell(1, canonical_subgroup(T2, [[1, 0]])),
                        Cell(2, full_subgroup(T2))))
    assert len(fixed_subcomplex(X, canonical_subgroup(T2, [[1, 0]]))) == 2
    assert len(fixed_subcomplex(X, zero_subgroup(T2))) == 1
    assert len(one_skeleton(X)) == 2


def test_negative_cell_dimension():
    with pytest.raises(LatticeError):
        Cell(-1, zero_subgroup(S1))


@st.composite
def t2_complexes(draw):
    gens = st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), max_size=2)
    cells = draw(st.lists(gens, min_size=1, max_size=4))
    return TCWComplex(T2, tuple(Cell(len(g), canonical_subgroup(T2, g)) for g in cells))


t2_points = st.tuples(st.integers(0, 11), st.integers(0, 11)).map(lambda t: TorsionPoint.of(T2, F(t[0], 12), F(t[1], 12)))


@given(t2_complexes(), t2_points)
def test_point_and_dual_subgroup_agree(X, a):
    assert fixed_subcomplex(X, a) == fixed_by_point_via_dual(X, a)


@given(t2_complexes(), t2_points, t2_points)
def test_fixed_sets_shrink_along_inclusions(X, a, b):
    """If M(a) <= M(b) then every cell fixed by H(a) is fixed by H(b)... in the dual direction."""
    from gkmforge.lattice import annihilator_of_point
    Ma, Mb = annihilator_of_point(a), annihilator_of_point(b)
    if Ma.is_subgroup_of(Mb):
        small = set(fixed_subcomplex(X, Ma).cells)
        assert small <= set(fixed_subcomplex(X, Mb).cells)


# distances, with independent oracles


def circ(x):
    x = F(x) % 1
    return min(x, 1 - x)


def test_distance_to_finite_subvariety_by_enumeration():
    M = canonical_subgroup(T2, [[2, 0], [0, 3]])
    pts = [TorsionPoint.of(T2, F(i, 2), F(j, 3)) for i in range(2) for j in range(3)]
    for a in [TorsionPoint.of(T2, F(i, 64), F(j, 64)) for i in range(0, 64, 5) for j in range(0, 64, 7)]:
        assert dist_to_subvariety(a, M) == min(point_distance(a, p) for p in pts)


@given(st.integers(-3, 3), st.integers(-3, 3), st.integers(0, 63), st.integers(0, 63))
def test_distance_to_circle_closed_form(p, q, i, j):
    if (p, q) == (0, 0):
        return
    M = canonical_subgroup(T2, [[p, q]])
    a = TorsionPoint.of(T2, F(i, 64), F(j, 64))
    # the sup-ball of radius r maps onto an interval of half-width r(|p|+|q|) under (x, y) -> px + qy
    assert dist_to_subvariety(a, M) == circ(p * a.coords[0] + q * a.coords[1]) / (abs(p) + abs(q))


@given(st.integers(1, 6), st.integers(0, 63))
def test_distance_on_circle_by_enumeration(k, i):
    M = canonical_subgroup(S1, [[k]])
    a = TorsionPoint.of(S1, F(i, 64))
    assert dist_to_subvariety(a, M) == min(circ(a.coords[0] - F(j, k)) for j in range(k))


def test_dense_grid_upper_bound():
    M = canonical_subgroup(T2, [[1, 2]])
    grid = [TorsionPoint.of(T2, F(i, 64), F(j, 64)) for i in range(64) for j in range(64)]
    on = [g for g in grid if in_subvariety(g, M)]
    a = TorsionPoint.of(T2, F(1, 5), F(2, 7))
    exact = dist_to_subvariety(a, M)
    nearest = min(point_distance(a, g) for g in on)
    assert exact <= nearest <= exact + F(1, 64)


def test_component_reps():
    M = canonical_subgroup(T2, [[2, 0]])
    assert len(component_reps(M)) == 2
    assert len(component_reps(canonical_subgroup(S1, [[5]]))) == 5


def test_torsion_metric_is_discrete():
    G = DualGroup(1, (2,))
    a, b = TorsionPoint.of(G, 0, 0), TorsionPoint.of(G, 0, F(1, 2))
    assert point_distance(a, b) == F(1, 2)


# covers


def test_ball_validation():
    with pytest.raises(LatticeError):
        Ball(TorsionPoint.of(S1, 0), 0)


def test_overlap_primitives():
    a = Ball(TorsionPoint.of(S1, 0), F(1, 4))
    b = Ball(TorsionPoint.of(S1, F(1, 2)), F(1, 4))
    c = Ball(TorsionPoint.of(S1, F(9, 10)), F(1, 4))
    assert not balls_overlap(a, b)
    assert balls_overlap(a, c)
    assert triple_overlap(a, c, Ball(TorsionPoint.of(S1, F(1, 20)), F(1, 10)))
    assert not triple_overlap(a, b, c)


def test_radii_for_two_z():
    A = [canonical_subgroup(S1, [[2]])]
    C = build_adapted(A, [TorsionPoint.of(S1, x) for x in (0, F(1, 2), F(1, 4))])
    assert [b.radius for b in C.balls] == [F(1, 8), F(1, 16), F(1, 8)]
    assert verify_adapted(C).ok


def test_empty_collection_gets_cap():
    assert adapted_radius(TorsionPoint.of(S1, F(1, 3)), []) == F(1, 4)


def test_radius_uses_every_foreign_component():
    A = [canonical_subgroup(S1, [[2]]), canonical_subgroup(S1, [[3]])]
    # nearest foreign component of 0 is 1/3
    assert adapted_radius(TorsionPoint.of(S1, 0), A) == F(1, 12)
    assert adapted_radius(TorsionPoint.of(S1, F(1, 4)), A) == F(1, 48)


@pytest.mark.parametrize("condition", [1, 2, 3, 4])
def test_bad_covers_fail_exactly_their_condition(condition):
    assert verify_adapted(bad_cover(condition)).failed_conditions() == [condition]


@given(st.lists(st.integers(0, 59), min_size=1, max_size=8, unique=True),
       st.lists(st.integers(1, 6), min_size=1, max_size=3))
def test_built_covers_are_adapted(ks, ns):
    A = [canonical_subgroup(S1, [[n]]) for n in ns]
    C = build_adapted(A, [TorsionPoint.of(S1, F(k, 60)) for k in ks])
    assert verify_adapted(C).ok
    assert verify_adapted(C.shrink(F(1, 2))).ok


@given(st.lists(t2_points, min_size=1, max_size=5, unique=True))
def test_built_covers_on_t2(pts):
    A = [canonical_subgroup(T2, [[1, 0]]), canonical_subgroup(T2, [[1, -1]]), canonical_subgroup(T2, [[2, 0], [0, 2]])]
    assert verify_adapted(build_adapted(A, pts)).ok


def test_duplicate_centers_rejected():
    with pytest.raises(LatticeError):
        Cover((Ball(TorsionPoint.of(S1, 0), F(1, 8)), Ball(TorsionPoint.of(S1, 0), F(1, 9))))
