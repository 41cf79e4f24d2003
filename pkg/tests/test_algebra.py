import cmath
from fractions import Fraction

from hypothesis import given, strategies as st

from gkmforge.algebra.cyclo import CycloScalar, cyclotomic_poly
from gkmforge.algebra.jet import (GradedJet, divide_by_linear, exp_jet, restrict_to_hyperplane, substitute_linear,
                                  translate_jet)
from gkmforge.algebra.laurent import LaurentElement, divide_by_euler, euler_class, eval_at_point
from gkmforge.algebra.linalg import nullspace, rank, solve
from gkmforge.lattice import DualGroup, TorsionPoint

F = Fraction


def as_complex(c: CycloScalar) -> complex:
    return sum(float(a) * cmath.exp(2j * cmath.pi * k / c.order) for k, a in enumerate(c.coeffs))


orders = st.sampled_from([1, 2, 3, 4, 5, 6, 8, 12])


@st.composite
def scalars(draw):
    m = draw(orders)
    terms = draw(st.lists(st.tuples(st.integers(0, 11), st.integers(-3, 3)), max_size=3))
    out = CycloScalar.rational(0)
    for k, c in terms:
        out = out + CycloScalar.root_of_unity(k, m) * c
    return out


def close(a: complex, b: complex) -> bool:
    return abs(a - b) < 1e-9


def test_cyclotomic_polys():
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)


def test_roots_of_unity():
    z = CycloScalar.root_of_unity(1, 4)
    assert z * z == -1
    assert z ** 4 == 1
    assert CycloScalar.exp2pii(F(1, 2)) == -1
    assert CycloScalar.root_of_unity(2, 6) == CycloScalar.root_of_unity(1, 3)
    assert CycloScalar.root_of_unity(3, 12).as_root_of_unity() == F(1, 4)
    assert str(z) == "zeta4"


@given(scalars(), scalars())
def test_field_ops_match_complex(a, b):
    assert close(as_complex(a + b), as_complex(a) + as_complex(b))
    assert close(as_complex(a * b), as_complex(a) * as_complex(b))
    if b:
        assert close(as_complex(a / b), as_complex(a) / as_complex(b))
        assert (a / b) * b == a


@given(scalars())
def test_zero_iff_complex_zero(a):
    assert bool(a) == (abs(as_complex(a)) > 1e-9)


def test_linalg():
    rows = [[F(1), F(2), F(3)], [F(2), F(4), F(6)]]
    assert rank(rows, 3) == 1
    assert len(nullspace(rows, 3)) == 2
    assert solve([[F(1), F(1)], [F(1), F(-1)]], [F(3), F(1)]) == [2, 1]


# Laurent elements

G1 = DualGroup(1)
G2 = DualGroup(2)


def lau(G, d):
    return LaurentElement(G, d)


def test_eval():
    f = lau(G1, {(1,): 1, (0,): 1})
    assert eval_at_point(f, TorsionPoint.of(G1, F(1, 2))) == 0
    assert eval_at_point(f, TorsionPoint.of(G1, F(1, 4))) == 1 + CycloScalar.root_of_unity(1, 4)


def test_euler_division_example():
    G = DualGroup(1)
    f = lau(G, {(0,): 1, (2,): -1})
    res = divide_by_euler(f, (1,))
    assert res.divisible
    assert res.quotient == lau(G, {(0,): 1, (1,): 1})
    res = divide_by_euler(lau(G, {(0,): 1}), (1,))
    assert not res.divisible and res.witness


def test_euler_division_with_torsion():
    G = DualGroup(1, (2,))
    w = (1, 1)
    f = euler_class(G, w) * lau(G, {(0, 1): 3, (2, 0): 1})
    res = divide_by_euler(f, w)
    assert res.divisible
    assert res.quotient * euler_class(G, w) == f


laurents = st.dictionaries(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), st.integers(-4, 4), max_size=5)
weights = st.sampled_from([(1, 0), (0, 1), (1, -1), (2, 1), (1, 3)])


@given(laurents, weights)
def test_divisible_multiples_divide(d, w):
    g = lau(G2, d)
    f = g * euler_class(G2, w)
    res = divide_by_euler(f, w)
    assert res.divisible and res.quotient == g


@given(laurents, weights)
def test_division_verdict_matches_vanishing(d, w):
    """f is divisible by 1 - z^w iff it vanishes on the kernel circle of w at every root of unity."""
    f = lau(G2, d)
    res = divide_by_euler(f, w)
    if res.divisible:
        assert res.quotient * euler_class(G2, w) == f
    # points on the kernel of z^w of small order
    u = (-w[1], w[0])
    vanishes = all(eval_at_point(f, TorsionPoint.of(G2, F(k * u[0], n), F(k * u[1], n))) == 0
                   for n in (7, 11, 13) for k in range(n))
    assert res.divisible == vanishes


@given(laurents, weights)
def test_sign_relation(d, w):
    f = lau(G2, d) * euler_class(G2, w)
    q = divide_by_euler(f, w).quotient
    neg = tuple(-x for x in w)
    q_neg = divide_by_euler(f, neg).quotient
    assert q_neg == -(lau(G2, {w: 1}) * q)


# jets


def test_linear_division():
    f = GradedJet.polynomial(2, None, {(2, 0): 1, (0, 2): -1})
    res = divide_by_linear(f, (1, -1))
    assert res.divisible
    assert res.quotient == GradedJet.polynomial(2, None, {(1, 0): 1, (0, 1): 1})
    assert not divide_by_linear(GradedJet.polynomial(2, None, {(1, 0): 1}), (0, 1)).divisible


def test_exp_series_coefficients():
    e = exp_jet(GradedJet.linear((1,)), 5)
    for k in range(6):
        assert e.monomials()[(k,)] == F(1, [1, 1, 2, 6, 24, 120][k])


def test_translation_identity_symbolic():
    lam = (F(1, 2), F(1, 3))
    a = (F(1, 4), F(2, 3))
    j = GradedJet.character_exp(lam, 6)
    t = translate_jet(j, a)
    expected = GradedJet.character_exp(lam, 6, CycloScalar.exp2pii(lam[0] * a[0] + lam[1] * a[1]))
    assert t == expected


polys = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(-3, 3), max_size=4)
shifts = st.tuples(st.fractions(-2, 2, max_denominator=4), st.fractions(-2, 2, max_denominator=4))


@given(polys, shifts, shifts)
def test_translation_composes(d, a, b):
    p = GradedJet.polynomial(2, None, d)
    ab = tuple(x + y for x, y in zip(a, b))
    assert translate_jet(translate_jet(p, a), b) == translate_jet(p, ab)


@given(polys, polys, shifts)
def test_translation_is_ring_map(d1, d2, a):
    p, q = GradedJet.polynomial(2, None, d1), GradedJet.polynomial(2, None, d2)
    assert translate_jet(p * q, a) == translate_jet(p, a) * translate_jet(q, a)


@given(polys, weights)
def test_linear_division_roundtrip(d, w):
    g = GradedJet.polynomial(2, None, d)
    f = g * GradedJet.linear(w)
    res = divide_by_linear(f, w)
    assert res.divisible and res.quotient == g
    assert restrict_to_hyperplane(f, w).is_zero()


def test_substitute_linear():
    p = GradedJet.polynomial(2, None, {(1, 0): 1, (0, 1): 2})
    q = substitute_linear(p, [[1], [1]])
    assert q == GradedJet.polynomial(1, None, {(1,): 3})
