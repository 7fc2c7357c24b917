import random
from fractions import Fraction

from conftest import family, named_sets, uniform
from polytract import MConvexSet, direct_sum, enumerate_relations, simplex
from polytract.mconvex import PointSet, all_subsets, exchange_witness, lattice_points
from polytract.plucker import (
    classify_witness,
    degenerate_full_relations,
    degenerate_relations,
    format_relation,
    idempotency_witnesses,
    satisfies_krasner,
    sort_sign,
)


def det(M):
    M = [[Fraction(x) for x in row] for row in M]
    n, d = len(M), Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = -d
        d *= M[c][c]
        for i in range(c + 1, n):
            f = M[i][c] / M[c][c]
            M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return d


def minors(A, r, n):
    """Plücker coordinates of the row space of an r x n matrix, on 0/1 points."""
    out = {}
    for p in lattice_points(n, r):
        if max(p) <= 1:
            cols = [j for j in range(n) if p[j]]
            v = det([[A[i][j] for j in cols] for i in range(r)])
            if v != 0:
                out[p] = v
    return out


def test_delta22_has_one_relation():
    rels = list(enumerate_relations(simplex(2, 2)))
    assert len(rels) == 1
    idx = rels[0].index
    assert (idx.s, idx.alpha, idx.i, idx.j) == (2, (0, 0), (0, 0, 1), (1,))
    assert format_relation(rels[0]) == "2 | [0,0] | 0,0,1 | 1 | +x[1,1]·x[1,1] -x[1,1]·x[1,1] +x[2,0]·x[0,2]"


def test_krasner_iff_exchange_small():
    for n, r in [(2, 2), (3, 2), (2, 3)]:
        for P in all_subsets(n, r):
            assert satisfies_krasner(P) == (exchange_witness(P.points) is None)


def test_realizable_matroids_satisfy_signed_relations():
    rng = random.Random(5)
    for r, n in [(2, 4), (2, 5), (3, 5), (3, 6)]:
        for _ in range(6):
            A = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(r)]
            x = minors(A, r, n)
            if not x:
                continue
            J = MConvexSet(n, r, list(x))
            shift = J.delta_minus
            assert max(J.omega) <= 1
            for rel in enumerate_relations(J, "full", dedupe=False):
                total = Fraction(0)
                for t in rel.nonzero_terms:
                    b = tuple(a + s for a, s in zip(t.beta, shift))
                    g = tuple(a + s for a, s in zip(t.gamma, shift))
                    total += t.sign * x[b] * x[g]
                assert total == 0, format_relation(rel)


def test_sign_consistency_under_dedupe():
    # relations with the same monomials agree up to an overall sign
    for J in [uniform(2, 4), uniform(3, 6), named_sets()["Fano"]]:
        groups = {}
        for rel in enumerate_relations(J, "full", dedupe=False):
            key = tuple(sorted((t.monomial, t.sign) for t in rel.nonzero_terms))
            flip = tuple(sorted((t.monomial, -t.sign) for t in rel.nonzero_terms))
            mono = tuple(sorted(t.monomial for t in rel.nonzero_terms))
            groups.setdefault((rel.index.s, mono), set()).add(min(key, flip))
        assert all(len(v) == 1 for v in groups.values())


def test_degenerate_sign_bit():
    U11 = MConvexSet(2, 1, [(1, 0), (0, 1)])
    J = direct_sum(U11, U11)
    d = degenerate_relations(J)
    assert len(d) == 1 and d[0].sign_bit == 0
    assert degenerate_relations(uniform(2, 4)) == []


def test_degenerate_three_term_subset_of_full(fam):
    for J in fam:
        three = {(d.lhs, d.rhs) for d in degenerate_relations(J)}
        full = {(d.lhs, d.rhs) for d in degenerate_full_relations(J)}
        assert three <= full


def test_idempotency_witnesses(fam):
    for J in fam:
        ws = idempotency_witnesses(J)
        if max(J.omega, default=0) <= 1:
            assert ws == []
            continue
        kinds = [w.kind for w in ws]
        assert kinds[0] == "1+1+x"
        assert classify_witness(ws[0].relation) == "1+1+x"
        if max(J.omega) >= 3:
            assert "1+1+1" in kinds
            w = next(w for w in ws if w.kind == "1+1+1")
            assert classify_witness(w.relation) == "1+1+1"


def test_sort_sign():
    assert sort_sign((0, 1, 2)) == 1
    assert sort_sign((1, 0, 2)) == -1
    assert sort_sign((1, 1, 0)) == 1
    assert sort_sign((2, 1, 0)) == -1


def test_unbounded_relations_need_guard():
    import pytest
    from polytract import GuardExceededError

    with pytest.raises(GuardExceededError):
        list(enumerate_relations(PointSet(5, 4, [(4, 0, 0, 0, 0)]), bounded=False))
