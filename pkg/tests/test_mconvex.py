import itertools
import random

import pytest

from conftest import family, named_sets
from polytract import (
    GuardExceededError,
    MalformedInputError,
    MConvexSet,
    NotMConvexError,
    PointSet,
    PreconditionError,
    canonical_form,
    combinatorially_equivalent,
    commute_minors,
    component_count,
    contract,
    decompose,
    delete,
    direct_sum,
    dual,
    embedded_minor,
    enumerate_mconvex,
    extend,
    is_m_convex,
    is_matroid_translate,
    is_proper,
    minor_duality_shift,
    permute,
    rank_function,
    restrict,
    simplex,
    translate,
    whittle_contract,
    whittle_delete,
)
from polytract.mconvex import (
    all_subsets,
    bases_from_rank_function,
    contraction_duality_shift,
    exchange_witness,
    is_coindependent,
    is_independent,
    lattice_points,
    unit,
    vadd,
    vle,
    vsub,
    whittle_identification,
)


def S(*pts):
    return MConvexSet.from_points(pts)


# ---------------------------------------------------------------------------
# exchange axiom and enumeration

def test_exchange_examples():
    assert is_m_convex(2, 2, [(2, 0), (1, 1), (0, 2)])
    assert not is_m_convex(2, 2, [(2, 0), (0, 2)])
    assert not is_m_convex(3, 2, [(2, 0, 0), (0, 2, 0)])
    assert is_m_convex(3, 0, [(0, 0, 0)])
    with pytest.raises(NotMConvexError):
        S((2, 0), (0, 2))


def test_malformed_input():
    with pytest.raises(MalformedInputError):
        PointSet(2, 2, [(1, 0)])
    with pytest.raises(MalformedInputError):
        PointSet(2, 2, [(3, -1)])
    with pytest.raises(MalformedInputError):
        PointSet(2, 2, [])


@pytest.mark.parametrize("n,r,count", [(2, 2, 6), (2, 1, 3), (3, 2, 29), (3, 3, 90), (4, 2, 135), (1, 4, 1)])
def test_enumeration_counts(n, r, count):
    sets = list(enumerate_mconvex(n, r))
    assert len(sets) == count
    assert len(set(sets)) == count


@pytest.mark.parametrize("n,r", [(2, 2), (3, 2), (2, 3), (2, 4), (3, 3)])
def test_enumeration_matches_brute_force(n, r):
    brute = {P.points for P in all_subsets(n, r) if exchange_witness(P.points) is None}
    fast = {J.points for J in enumerate_mconvex(n, r)}
    assert brute == fast


def test_enumeration_guard(monkeypatch):
    with pytest.raises(GuardExceededError):
        list(enumerate_mconvex(5, 3))
    monkeypatch.setenv("POLYTRACT_GUARD", "5")
    with pytest.raises(GuardExceededError):
        list(enumerate_mconvex(3, 2))
    assert len(list(enumerate_mconvex(3, 2, guard=10))) == 29


# ---------------------------------------------------------------------------
# duality, translation, minors

def test_dual_examples():
    for r in range(1, 5):
        assert dual(simplex(2, r)) == simplex(2, r)
    expected = set()
    for i, j in itertools.permutations(range(3), 2):
        expected.add(vadd(vadd(unit(3, i), unit(3, i)), vadd(unit(3, j), unit(3, j))))
        k = 3 - i - j
        expected.add(vadd(vadd(unit(3, i), unit(3, i)), vadd(unit(3, j), unit(3, k))))
    assert set(dual(simplex(3, 2)).points) == expected
    assert dual(S((3, 0))) == S((3, 0))


def test_translate():
    assert translate(S((0, 1), (1, 0)), (1, 0)) == S((1, 1), (2, 0))
    with pytest.raises(PreconditionError):
        translate(simplex(2, 1), (-1, 0))
    J = translate(simplex(3, 2), (1, 2, 0))
    assert translate(J.reduction(), J.delta_minus) == J


def test_minor_examples():
    for n, r, s in [(2, 3, 1), (3, 3, 2), (3, 2, 2)]:
        assert contract(simplex(n, r), tuple(s if i == 0 else 0 for i in range(n))) == simplex(n, r - s)
    U = named_sets()["U+23"]
    assert contract(U, (1, 0, 0)) == simplex(3, 1)
    J = simplex(3, 2)
    assert delete(J, (0, 0, 0)) == J and contract(J, (0, 0, 0)) == J
    with pytest.raises(PreconditionError):
        contract(simplex(2, 1), (2, 0))


def _units(n):
    return [unit(n, i) for i in range(n)] + [(0,) * n]


def test_duality_and_minor_algebra(fam):
    for J in fam:
        Jd = dual(J)
        assert dual(Jd) == J
        assert Jd.delta == J.delta
        for v in _units(J.n):
            if is_coindependent(J, v):
                Jn = delete(J, v)
                assert dual(Jn) == translate(contract(Jd, v), minor_duality_shift(J, v))
                assert Jn.delta_plus == vsub(J.delta_plus, v)
                lo = vsub(vadd(Jn.delta, v), J.delta)
                assert all(0 <= x <= sum(v) - y for x, y in zip(lo, v))
            if is_independent(J, v):
                Jm = contract(J, v)
                assert dual(Jm) == translate(delete(Jd, v), contraction_duality_shift(J, v))
                assert Jm.delta_minus == J.delta_minus
                hi = vsub(J.delta, vadd(Jm.delta, v))
                assert all(0 <= x <= sum(v) - y for x, y in zip(hi, v))


def test_commute_minors(fam):
    checked = 0
    for J in fam:
        for nu in _units(J.n):
            for mu in _units(J.n):
                lo, hi = vadd(J.delta_minus, mu), vsub(J.delta_plus, nu)
                if not any(vle(lo, p) and vle(p, hi) for p in J.points):
                    with pytest.raises(PreconditionError):
                        commute_minors(J, nu, mu)
                    continue
                nu2, mu2, tau2 = commute_minors(J, nu, mu)
                left = contract(delete(J, nu), mu2)
                right = translate(delete(contract(J, mu), nu2), tau2)
                assert left == right
                checked += 1
    assert checked > 1000


def test_commute_minors_clamping():
    J = simplex(3, 1)
    nu2, mu2, tau2 = commute_minors(J, (0, 0, 1), (1, 0, 0))
    assert min(nu2) >= 0 and min(mu2) >= 0


def test_embedded_minor_identity():
    J = simplex(3, 3)
    em = embedded_minor(J, (0, 0, 0), (0, 0, 0))
    assert em.minor == J and em.embed((1, 1, 1)) == (1, 1, 1)


def test_embedded_minor_truncation():
    # intersecting with a cube is a minor followed by a translation
    J = simplex(3, 3)
    beta, gamma = (1, 0, 0), (2, 2, 2)
    cube = [p for p in J.points if vle(beta, p) and vle(p, gamma)]
    nu = tuple(max(0, a - b) for a, b in zip(J.delta_plus, gamma))
    Jn = delete(J, nu)
    mu = tuple(max(0, a - b) for a, b in zip(beta, Jn.delta_minus))
    em = embedded_minor(J, nu, mu, mu)
    assert set(em.minor.points) == set(cube)


# ---------------------------------------------------------------------------
# permutations, canonical forms, decomposition

def test_permute_extend_restrict():
    U = named_sets()["U+23"]
    assert permute(U, (1, 0, 2)) == S((0, 2, 0), (1, 1, 0), (0, 1, 1), (1, 0, 1))
    assert extend(S((2, 0))) == S((2, 0, 0))
    for J in family(((3, 2),)):
        assert restrict(extend(J)) == J
    with pytest.raises(PreconditionError):
        restrict(simplex(2, 1))


def test_canonical_form_invariance(fam):
    rng = random.Random(0)
    for J in fam:
        c = canonical_form(J)
        sigma = list(range(J.n))
        rng.shuffle(sigma)
        assert canonical_form(permute(J, tuple(sigma))) == c
        assert canonical_form(translate(J, tuple(rng.randint(0, 2) for _ in range(J.n)))) == c
    assert canonical_form(S((1, 1))).n == 0
    assert combinatorially_equivalent(simplex(2, 2), permute(simplex(2, 2), (1, 0)))


def test_canonical_form_separates_classes():
    # classes of canonical forms agree with a brute-force orbit computation
    sets = list(enumerate_mconvex(3, 2))
    canon = {J: canonical_form(J) for J in sets}
    for A, B in itertools.combinations(sets, 2):
        same_orbit = any(permute(A, s) == B for s in itertools.permutations(range(3)))
        if same_orbit:
            assert canon[A] == canon[B]
        if canon[A] == canon[B]:
            assert combinatorially_equivalent(A, B)


def test_decompose_reassemble(fam):
    for J in fam:
        d = decompose(J)
        assert d.reassemble() == J
        assert d.count == component_count(J)
        for c in d.components:
            assert component_count(c.reduction()) <= max(1, c.n)
    assert component_count(direct_sum(simplex(2, 2), simplex(2, 1))) == 2
    assert component_count(simplex(3, 2)) == 1


def test_matroid_translate():
    assert is_matroid_translate(named_sets()["Fano"])
    assert is_proper(simplex(2, 2)) and is_proper(named_sets()["U+23"])
    assert is_matroid_translate(translate(S((1, 1)), (1, 0)))


# ---------------------------------------------------------------------------
# rank functions

def test_rank_function_round_trip(fam):
    for J in fam:
        f = rank_function(J)
        assert f.is_polymatroid()
        assert bases_from_rank_function(f) == J


def test_whittle_comparison(fam):
    for J in family(((3, 2), (3, 3))):
        f = rank_function(J)
        for i in range(J.n):
            if J.n < 2:
                continue
            fd, fc = whittle_delete(f, i), whittle_contract(f, i)
            assert fd.is_polymatroid() and fc.is_polymatroid()
            deleted, contracted = whittle_identification(J, i)
            assert bases_from_rank_function(fd) == deleted
            assert bases_from_rank_function(fc) == contracted
