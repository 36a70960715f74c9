from fractions import Fraction
from itertools import permutations

from hypothesis import given, strategies as st

from k3disc import intmat
from strategies import int_matrices


def leibniz(M):
    n = len(M)
    total = 0
    for p in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if p[i] > p[j]:
                    sign = -sign
        prod = 1
        for i in range(n):
            prod *= M[i][p[i]]
        total += sign * prod
    return total


@given(int_matrices())
def test_det_matches_leibniz(M):
    assert intmat.det(M) == leibniz(M)


@given(int_matrices())
def test_rational_inverse(M):
    if intmat.det(M) == 0:
        return
    N, d = intmat.rational_inverse(M)
    assert d > 0
    prod = intmat.matmul(M, N)
    assert prod == intmat.as_matrix([[d * (i == j) for j in range(len(M))] for i in range(len(M))])


@given(int_matrices(lo=-9, hi=9))
def test_smith_normal_form(M):
    D, U, V = intmat.smith_normal_form(M)
    assert intmat.matmul(U, intmat.matmul(M, V)) == D
    assert abs(intmat.det(U)) == 1 and abs(intmat.det(V)) == 1
    diag = [D[i][i] for i in range(len(M))]
    assert all(D[i][j] == 0 for i in range(len(M)) for j in range(len(M)) if i != j)
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    prod = 1
    for d in diag:
        prod *= d
    assert prod == abs(intmat.det(M))


@given(st.integers(1, 3), st.integers(2, 5), st.data())
def test_integer_kernel_is_saturated(r, n, data):
    M = [data.draw(st.lists(st.integers(-4, 4), min_size=n, max_size=n)) for _ in range(r)]
    K = intmat.integer_kernel(M, n)
    k = intmat.ncols(K)
    assert k == n - intmat.column_rank(intmat.transpose(M))
    for c in intmat.columns(K) if k else []:
        assert all(x == 0 for x in intmat.matvec(M, c))
    if k:
        assert all(d == 1 for d in intmat.elementary_divisors(K))


def test_solve_rational_and_express():
    M = [[2, 1], [0, 3]]
    x = intmat.solve_rational(M, [1, 1])
    assert x == (Fraction(1, 3), Fraction(1, 3))
    assert intmat.express_in_basis([[1, 0], [0, 2], [0, 0]], [3, 4, 1]) is None
    assert intmat.express_in_basis([[1, 0], [0, 2], [0, 0]], [3, 4, 0]) == (3, 2)


def test_vector_helpers():
    assert intmat.vec_gcd([4, -6, 0]) == 2
    assert intmat.primitive_part([4, -6, 0]) == (2, -3, 0)
    assert intmat.block_diag([[1]], [[0, 1], [1, 0]]) == intmat.as_matrix([[1, 0, 0], [0, 0, 1], [0, 1, 0]])
