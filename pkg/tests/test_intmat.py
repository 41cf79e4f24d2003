from itertools import combinations
from math import gcd

from hypothesis import given, strategies as st

from gkmforge import intmat

small = st.integers(-9, 9)


def det(M):
    if not M:
        return 1
    return sum((-1) ** j * M[0][j] * det([r[:j] + r[j + 1:] for r in M[1:]]) for j in range(len(M)))


def determinantal_divisors(A, ncols):
    """d_k = gcd of all k x k minors; invariant factors are d_k / d_{k-1}."""
    out = []
    for k in range(1, min(len(A), ncols) + 1):
        g = 0
        for rs in combinations(range(len(A)), k):
            for cs in combinations(range(ncols), k):
                g = gcd(g, det([[A[r][c] for c in cs] for r in rs]))
        if g == 0:
            break
        out.append(g)
    return out


def test_snf_known():
    assert intmat.invariant_factors([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], 3) == [2, 6, 12]


def test_hnf_is_upper_echelon():
    H = intmat.hnf([[4, 6], [2, 3], [0, 5]], 2)
    assert H == [[2, 3], [0, 5]] or all(H[i][j] == 0 for i in range(len(H)) for j in range(i))


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=3))
def test_invariant_factors_match_minors(A):
    d = determinantal_divisors(A, 3)
    expected = [d[0]] + [d[i] // d[i - 1] for i in range(1, len(d))] if d else []
    got = [x for x in intmat.invariant_factors(A, 3) if x != 0]
    assert got == expected


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=4))
def test_snf_factorization(A):
    U, S, V = intmat.smith_normal_form(A, 3)
    assert intmat.matmul(intmat.matmul(U, A), V) == S
    assert abs(det(U)) == 1 and abs(det(V)) == 1


@given(st.lists(st.lists(small, min_size=2, max_size=2), min_size=1, max_size=4),
       st.lists(small, min_size=2, max_size=2))
def test_hnf_preserves_lattice(A, v):
    H = intmat.hnf(A, 2)
    for row in A:
        assert intmat.in_lattice(row, H)
    H2, U = intmat.hnf_with_transform(A, 2)
    assert intmat.matmul(U, A) == H2
    assert abs(det(U)) == 1
    assert intmat.in_lattice(v, H) == intmat.in_lattice(v, intmat.hnf(A + [[0, 0]], 2))


def test_integer_kernel():
    K = intmat.integer_kernel([[1, 2, 3]], 3)
    assert len(K) == 2
    for k in K:
        assert k[0] + 2 * k[1] + 3 * k[2] == 0
