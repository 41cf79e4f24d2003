from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from gkmforge.algebra.cyclo import CycloScalar
from gkmforge.algebra.jet import GradedJet, translate_jet
from gkmforge.chern import (ChernError, EquivariantBundle, LineSummand, Presentation, PresentationError,
                            bundled_presentations, chern_character, chern_character_symbolic, decompose_by_isotropy,
                            domination_certificate, twisted_germ)
from gkmforge.lattice import DualGroup, TorsionPoint

F = Fraction
S1 = DualGroup(1)
T2 = DualGroup(2)


def poly(p, d):
    return GradedJet.polynomial(p, None, d)


def test_decompose_groups_by_character_class():
    summands = [LineSummand((k,)) for k in (0, 1, 2, 3)]
    parts = decompose_by_isotropy(summands, TorsionPoint.of(S1, F(1, 2)))
    assert [[s.character for s in p] for _, p in parts] == [[(0,), (2,)], [(1,), (3,)]]
    parts = decompose_by_isotropy(summands, TorsionPoint.of(S1, 0))
    assert len(parts) == 1
    with pytest.raises(ChernError):
        decompose_by_isotropy([], TorsionPoint.of(S1, 0))


def test_character_is_exponential_series():
    ch = chern_character([LineSummand((2,))], S1, 5)
    assert ch.monomials() == {(k,): F(2 ** k, factorial(k)) for k in range(6)}


def test_aux_must_be_linear():
    with pytest.raises(ChernError):
        EquivariantBundle(S1, {"v": (LineSummand((1,), poly(1, {(2,): 1})),)})


chars = st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=1, max_size=3)


@given(chars, chars)
def test_character_additive_and_multiplicative(a, b):
    E = EquivariantBundle.uniform(T2, ["v"], a)
    G = EquivariantBundle.uniform(T2, ["v"], b)
    D = 4
    ch = lambda B: chern_character(B.summands("v"), T2, D)
    assert ch(E.direct_sum(G)) == ch(E) + ch(G)
    assert ch(E.tensor(G)) == (ch(E) * ch(G)).truncate(D)


@given(chars)
def test_untwisted_germ_is_character(a):
    E = EquivariantBundle.uniform(T2, ["v"], a)
    g = twisted_germ(E, TorsionPoint.of(T2, 0, 0), 4)
    assert g.vertex_jets["v"] == chern_character(E.summands("v"), T2, 4)


@given(chars, st.integers(0, 5), st.integers(0, 5))
def test_germ_value_at_degree_zero_is_character_sum(a, i, j):
    """The constant term of the twisted germ is the trace sum_j alpha(lam_j)."""
    alpha = TorsionPoint.of(T2, F(i, 6), F(j, 6))
    E = EquivariantBundle.uniform(T2, ["v"], a)
    g = twisted_germ(E, alpha, 3).vertex_jets["v"]
    expected = CycloScalar.rational(0)
    for lam in a:
        expected = expected + CycloScalar.exp2pii(alpha(lam))
    assert g.constant_term() == expected


@given(chars, st.integers(0, 5), st.integers(0, 5))
def test_symbolic_germ_translates_exactly(a, i, j):
    """Translating CH at 0 by a lift of alpha gives the twisted germ at alpha."""
    alpha = TorsionPoint.of(T2, F(i, 6), F(j, 6))
    E = EquivariantBundle.uniform(T2, ["v"], a)
    at0 = chern_character_symbolic(E.summands("v"), T2, 5)
    moved = translate_jet(at0, alpha.coords)
    assert moved == twisted_germ(E, alpha, 5, symbolic=True).vertex_jets["v"]


# presentations and certificates


def test_bundled_certificates_pass():
    for name, P in bundled_presentations().items():
        cert = domination_certificate(P, 6)
        assert cert.passed, name
        assert all(m >= 0 for m in cert.margins.values())


def test_cp1_powers_closed_form():
    P = bundled_presentations()["cp1"]
    cert = domination_certificate(P, 5)
    for n in range(1, 6):
        assert cert.powers[n][0].is_zero()
        assert cert.powers[n][1] == poly(1, {(n - 1,): 1})


def _reduce_cubic(coeffs, s1, s2):
    """Reduce a polynomial in x (list of jets, low degree first) by x^3 = s1 x^2 - s2 x."""
    c = list(coeffs)
    for d in range(len(c) - 1, 2, -1):
        top = c[d]
        c[d] = top * 0
        c[d - 1] = c[d - 1] + top * s1
        c[d - 2] = c[d - 2] - top * s2
    return c[:3] + [c[0] * 0] * (3 - len(c[:3]))


def test_cp2_powers_against_direct_expansion():
    P = bundled_presentations()["cp2"]
    u1, u2 = poly(2, {(1, 0): 1}), poly(2, {(0, 1): 1})
    one = poly(2, {(0, 0): 1})
    s1, s2 = u1 + u2, u1 * u2
    cert = domination_certificate(P, 5)
    acc = [one]
    for n in range(1, 6):
        # multiply by (u1 + x)
        nxt = [one * 0 for _ in range(len(acc) + 1)]
        for k, a in enumerate(acc):
            nxt[k] = nxt[k] + a * u1
            nxt[k + 1] = nxt[k + 1] + a
        acc = nxt
        assert cert.powers[n] == _reduce_cubic(acc, s1, s2)


def test_user_lambda_must_dominate():
    P = bundled_presentations()["cp1"]
    with pytest.raises(PresentationError):
        domination_certificate(P, 3, poly(1, {(1,): 1}))
    assert domination_certificate(P, 3, poly(1, {(0,): 2, (1,): 2})).passed


def test_certificate_can_fail():
    one, zero = poly(1, {(0,): 1}), poly(1, {})
    # a_i a_j = a_1 + a_2, so c = a_1 has c^n = 2^(n-2) (a_1 + a_2) for n >= 2
    P = Presentation(1, ("a1", "a2"), {(i, j): (one, one) for i in range(2) for j in range(2)}, (one, zero))
    weak = domination_certificate(P, 6, one)
    assert not weak.passed
    assert weak.margins[5] == 10 - 8 and weak.margins[6] == 12 - 16
    assert domination_certificate(P, 6).passed


def test_bad_presentations_rejected():
    one, zero, u = poly(1, {(0,): 1}), poly(1, {}), poly(1, {(1,): 1})
    with pytest.raises(PresentationError):
        Presentation(1, ("1", "x"), {(0, 0): (one, zero)}, (zero, one))
    with pytest.raises(PresentationError):
        Presentation(1, ("1", "x"), {(0, 0): (one, zero), (0, 1): (zero, one), (1, 0): (one, zero),
                                     (1, 1): (zero, u)}, (zero, one))
    with pytest.raises(PresentationError):
        domination_certificate(bundled_presentations()["cp1"], 0)
