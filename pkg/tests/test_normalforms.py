import itertools
import math
import random

from hypothesis import given, settings
from hypothesis import strategies as st

from polytract.normalforms import (
    hermite_normal_form,
    in_lattice,
    integer_rank,
    left_kernel,
    matmul,
    quotient_structure,
    right_kernel,
    smith_normal_form,
    solve_rational,
)


def det(M):
    n = len(M)
    if n == 0:
        return 1
    if n == 1:
        return M[0][0]
    return sum((-1) ** j * M[0][j] * det([row[:j] + row[j + 1:] for row in M[1:]]) for j in range(n))


def determinantal_factors(M):
    """Invariant factors from gcds of k x k minors."""
    m, n = len(M), len(M[0])
    d = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                g = math.gcd(g, det([[M[i][j] for j in cols] for i in rows]))
        if g == 0:
            break
        d.append(g)
    return [d[k] // d[k - 1] for k in range(1, len(d))]


matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


def unimodular(A):
    return abs(det(A)) == 1


@settings(max_examples=300, deadline=None)
@given(matrices)
def test_smith_form_properties(M):
    sf = smith_normal_form(M)
    assert matmul(matmul(sf.U, M), sf.V) == sf.D
    assert unimodular(sf.U) and unimodular(sf.V)
    diag = sf.diagonal
    assert all(x > 0 for x in diag)
    assert all(diag[k + 1] % diag[k] == 0 for k in range(len(diag) - 1))
    for i, row in enumerate(sf.D):
        for j, x in enumerate(row):
            if i != j:
                assert x == 0
    assert diag == determinantal_factors(M)
    assert sf.rank == integer_rank(M)


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_smith_form_against_sympy(M):
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import smith_normal_form as sympy_snf

    D = sympy_snf(Matrix(M), domain=ZZ)
    theirs = [abs(int(D[i, i])) for i in range(min(D.shape)) if D[i, i] != 0]
    assert sorted(smith_normal_form(M).diagonal) == sorted(theirs)


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_hermite_form_spans_same_lattice(M):
    H = hermite_normal_form(M)
    n = len(M[0])
    pivots = [next(j for j, x in enumerate(row) if x) for row in H]
    assert pivots == sorted(set(pivots))
    for row, c in zip(H, pivots):
        assert row[c] > 0
    for k, c in enumerate(pivots):
        for i in range(k):
            assert 0 <= H[i][c] < H[k][c]
    for row in M:
        assert in_lattice(H, row)
    H2 = hermite_normal_form(H)
    assert H2 == H
    assert hermite_normal_form([list(r) for r in reversed(M)]) == H
    assert len(H) == integer_rank(M) if any(any(r) for r in M) else H == []
    assert n == len(M[0])


def test_kernels_and_solve():
    rng = random.Random(0)
    for _ in range(100):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        A = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(m)]
        for y in left_kernel(A):
            assert all(sum(y[i] * A[i][j] for i in range(m)) == 0 for j in range(n))
        assert len(left_kernel(A)) == m - integer_rank(A)
        for x in right_kernel(A):
            assert all(sum(A[i][j] * x[j] for j in range(n)) == 0 for i in range(m))
        H = hermite_normal_form(A)
        if H:
            c = [rng.randint(-3, 3) for _ in H]
            v = [sum(ci * row[j] for ci, row in zip(c, H)) for j in range(n)]
            assert solve_rational(H, v) == c


def test_quotient_structure():
    assert quotient_structure([[2, 0], [0, 3]], 2) == (0, [6])
    assert quotient_structure([[2, 4]], 2) == (1, [2])
    assert quotient_structure([], 3) == (3, [])
    assert not in_lattice(hermite_normal_form([[2, 0]]), [1, 0])
