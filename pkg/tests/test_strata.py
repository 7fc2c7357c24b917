import random
from fractions import Fraction

from polytract import enumerate_mconvex, simplex, verify
from polytract.mconvex import MConvexSet
from polytract.representations import Representation
from polytract.strata import dressian, dressian_constraints, polygrassmannian_strata


def test_polygrassmannian_22():
    strata = list(polygrassmannian_strata(2, 2))
    assert len(strata) == 6
    assert {J.points for J in strata} == {J.points for J in enumerate_mconvex(2, 2)}


def test_polygrassmannian_equals_mconvex():
    for n, r in [(3, 2), (2, 3), (3, 3), (4, 2)]:
        assert {J.points for J in polygrassmannian_strata(n, r)} == {J.points for J in enumerate_mconvex(n, r)}


def test_dressian_22():
    report = dict((J.points, cs) for J, cs in dressian(2, 2))
    full = report[simplex(2, 2).points]
    assert [c.format() for c in full] == ["2v(1,1) >= v(0,2)+v(2,0)"]
    assert all(cs == [] for pts, cs in report.items() if len(pts) == 1)


def test_constraints_agree_with_tropical_verification():
    rng = random.Random(0)
    for J in list(enumerate_mconvex(3, 2)) + [simplex(2, 3), simplex(3, 3)]:
        cons = dressian_constraints(J)
        for _ in range(30):
            v = {p: Fraction(rng.randint(-3, 3)) for p in J.points}
            rho = Representation.from_bases(J, "t0", v)
            assert verify(rho).ok == all(c.holds(v) for c in cons)
