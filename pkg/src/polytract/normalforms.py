"""Exact Smith and Hermite normal forms over the integers.

Matrices are lists of lists of Python ints, so entries never overflow.
The Smith form keeps its unimodular transforms: ``U @ M @ V == D``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)]
            for i in range(len(A))]


def transpose(A: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(r) for r in zip(*A)]


@dataclass
class SmithForm:
    D: Matrix
    U: Matrix
    V: Matrix
    rank: int
    diagonal: list[int]

    @property
    def factors(self) -> list[int]:
        """Invariant factors greater than one."""
        return [d for d in self.diagonal if d > 1]


def smith_normal_form(M: Sequence[Sequence[int]], ncols: int | None = None) -> SmithForm:
    """Smith normal form D = U M V with U, V unimodular.

    ``ncols`` is needed only when M has no rows.
    """
    A = [list(map(int, row)) for row in M]
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    U = identity(m)
    V = identity(n)

    def swap_rows(i: int, j: int) -> None:
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i: int, j: int) -> None:
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst: int, src: int, q: int) -> None:
        # row dst += q * row src
        if q:
            A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
            U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst: int, src: int, q: int) -> None:
        if q:
            for row in A:
                row[dst] += q * row[src]
            for row in V:
                row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        # smallest nonzero entry of the trailing block goes to the pivot
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            changed = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        swap_rows(t, i)
                        changed = True
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        swap_cols(t, j)
                        changed = True
            if changed:
                continue
            p = A[t][t]
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    diag = [A[i][i] for i in range(min(m, n)) if A[i][i]]
    return SmithForm(A, U, V, len(diag), diag)


def invariant_factors(M: Sequence[Sequence[int]], ncols: int | None = None) -> list[int]:
    return smith_normal_form(M, ncols).factors


def integer_rank(M: Sequence[Sequence[int]]) -> int:
    """Rank over Q, by fraction-free elimination."""
    A = [[Fraction(x) for x in row] for row in M]
    if not A:
        return 0
    m, n = len(A), len(A[0])
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(m):
            if i != r and A[i][c] != 0:
                f = A[i][c] / A[r][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        r += 1
        if r == m:
            break
    return r


def hermite_normal_form(M: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Row-style HNF of the lattice spanned by the rows of M.

    Nonzero rows only; pivots positive and strictly increasing in column;
    entries above a pivot reduced into [0, pivot).
    """
    A = [list(map(int, row)) for row in M if any(row)]
    if not A:
        return []
    n = len(A[0])
    r = 0
    pivots = []
    for c in range(n):
        while True:
            rows = [i for i in range(r, len(A)) if A[i][c]]
            if not rows:
                break
            k = min(rows, key=lambda i: abs(A[i][c]))
            A[r], A[k] = A[k], A[r]
            done = True
            for i in range(r + 1, len(A)):
                if A[i][c]:
                    q = A[i][c] // A[r][c]
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
                    if A[i][c]:
                        done = False
            if done:
                break
        if r < len(A) and A[r][c]:
            if A[r][c] < 0:
                A[r] = [-a for a in A[r]]
            for i in range(r):
                q = A[i][c] // A[r][c]
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
            pivots.append(c)
            r += 1
            if r == len(A):
                break
    return [row for row in A[:r]]


def in_lattice(H: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    """Membership of v in the lattice spanned by the rows of an HNF matrix H."""
    w = list(map(int, v))
    for row in H:
        c = next(i for i, x in enumerate(row) if x)
        if w[c] % row[c]:
            return False
        q = w[c] // row[c]
        if q:
            w = [a - q * b for a, b in zip(w, row)]
    return not any(w)


def left_kernel(A: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Integer basis (as rows) of {y : y A = 0}."""
    sf = smith_normal_form(A, ncols)
    return [list(row) for row in sf.U[sf.rank:]]


def right_kernel(A: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Integer basis (as rows) of {x : A x = 0}."""
    n = len(A[0]) if A else (ncols or 0)
    return left_kernel(transpose(A, n), len(A))


def solve_rational(B: Sequence[Sequence[int]], v: Sequence[int]) -> list[Fraction] | None:
    """Coefficients c with c B = v over Q (B full row rank), or None."""
    k = len(B)
    if k == 0:
        return [] if not any(v) else None
    n = len(B[0])
    # solve B^T c = v by Gaussian elimination on the augmented system
    aug = [[Fraction(B[r][col]) for r in range(k)] + [Fraction(v[col])] for col in range(n)]
    piv_cols = []
    row = 0
    for c in range(k):
        p = next((i for i in range(row, n) if aug[i][c] != 0), None)
        if p is None:
            continue
        aug[row], aug[p] = aug[p], aug[row]
        pv = aug[row][c]
        aug[row] = [x / pv for x in aug[row]]
        for i in range(n):
            if i != row and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[row])]
        piv_cols.append(c)
        row += 1
    if any(aug[i][k] != 0 for i in range(row, n)):
        return None
    sol = [Fraction(0)] * k
    for i, c in enumerate(piv_cols):
        sol[c] = aug[i][k]
    return sol


def quotient_structure(relations: Sequence[Sequence[int]], ngens: int) -> tuple[int, list[int]]:
    """Free rank and torsion invariant factors of Z^ngens / rowspan."""
    sf = smith_normal_form(relations, ngens)
    return ngens - sf.rank, sf.factors
