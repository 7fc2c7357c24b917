import random
from fractions import Fraction

import pytest

from conftest import family, named_sets, uniform
from polytract import (
    MConvexSet,
    foundation_unit_group,
    pasture_presentation,
    rank_formula_check,
    simplex,
    tract_presentation,
    tutte_group,
    tutte_rank,
    verify_bijection_theorem,
    verify_cross_ratio_relations,
    verify_cross_ratios_generate,
)
from polytract.presentations import (
    analyze,
    cross_ratio_relation_lattice,
    degree_zero_round_trip,
    enumerate_cross_ratios,
    idempotency_witness,
    triple_witness,
)

EXPECTED = {
    "U22": (0, "order_two"),
    "U23": (0, "order_two"),
    "U24": (2, "order_two"),
    "Fano": (0, "trivial"),
    "U+23": (1, "trivial"),
    "D22": (1, "trivial"),
    "D23-e2": (2, "trivial"),
    "D23": (3, "trivial"),
    "D32": (2, "trivial"),
}


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_foundation_values(name):
    F = foundation_unit_group(named_sets()[name])
    assert (F.free_rank, F.minus_one_status) == EXPECTED[name]


def test_tutte_ranks():
    assert tutte_rank(simplex(2, 2)) == 2
    assert tutte_rank(simplex(3, 2)) == 5
    assert tutte_rank(simplex(2, 3)) == 3
    assert tutte_rank(MConvexSet(2, 2, [(1, 1)])) == 0
    for J in family(((3, 2),)):
        assert tutte_group(J).free_rank == tutte_rank(J)


def test_presentation_shape():
    P = pasture_presentation(simplex(2, 2))
    assert P.generators == ["g", "x[0,2]", "x[1,1]", "x[2,0]"]
    assert P.relations[:2] == [[2, 0, 0, 0], [1, 0, 0, 0]]
    P = pasture_presentation(uniform(2, 4))
    assert P.relations[0] == [2] + [0] * 6
    assert analyze(P).minus_one_status == "order_two"


def test_rank_formula_and_bijection(fam):
    for J in fam:
        assert rank_formula_check(J)
        assert verify_bijection_theorem(J)


def test_cross_ratios_generate(fam):
    assert all(verify_cross_ratios_generate(J) for J in fam)


def test_u24_cross_ratios():
    data = enumerate_cross_ratios(uniform(2, 4))
    assert len(data.nondegenerate) == 6
    assert len(data.nondegenerate_up_to_inversion) == 3


def test_cross_ratio_relations_hold(fam):
    for J in family(((3, 2), (2, 3))) + (uniform(2, 4), uniform(2, 5)):
        rep = verify_cross_ratio_relations(J)
        assert rep.ok, {k: v[:3] for k, v in rep.failures.items() if v}
    lat = cross_ratio_relation_lattice(uniform(2, 4))
    assert isinstance(lat, dict)


def test_tract_presentation_has_no_fewer_relations(fam):
    for J in family(((3, 3),)):
        assert len(tract_presentation(J).relations) >= len(pasture_presentation(J).relations)


def test_witness_helpers(fam):
    for J in fam:
        if max(J.omega) <= 1:
            assert idempotency_witness(J) is None
        else:
            assert idempotency_witness(J) is not None
            assert (triple_witness(J) is not None) == (max(J.omega) >= 3)


def test_degree_zero_round_trip():
    # tropical log-values of a rescaled characteristic function satisfy every relation row
    rng = random.Random(0)
    for J in family(((3, 2),)):
        t = [Fraction(rng.randint(-3, 3)) for _ in range(J.n)]
        vals = {p: sum(a * b for a, b in zip(p, t)) for p in J.reduced_points}
        assert degree_zero_round_trip(J, vals)
