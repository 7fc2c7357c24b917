"""Finitely presented unit groups attached to an M-convex set.

The extended universal pasture has generators g (standing for -1) and one
x[beta] per reduced basis.  Its relations are 2g, g itself when the set is
proper, and one row per degenerate 3-term relation
x[b]x[c] = (-1)**bit x[b']x[c'].  Using degenerate relations of every
length instead gives the unit group of the extended universal tract.

Subgroups cut out by a grading (total degree for the Tutte group, degree
together with multidegree for the foundation) are computed by pulling the
relation lattice back into an integer basis of the grading kernel.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .mconvex import (
    MConvexSet,
    Point,
    PointSet,
    component_count,
    is_proper,
)
from .normalforms import (
    hermite_normal_form,
    in_lattice,
    left_kernel,
    smith_normal_form,
    solve_rational,
)
from .plucker import (
    DegenerateRelation,
    IdempotencyWitness,
    degenerate_full_relations,
    degenerate_relations,
    idempotency_witnesses,
)
from .representations import (
    Symbol,
    canonical_symbol,
    cross_ratio_points,
    cross_ratio_sign,
    is_nondegenerate,
    omega_symbols,
)

G = "g"


def _label(p: Point) -> str:
    return "x[" + ",".join(map(str, p)) + "]"


@dataclass
class AbelianPresentation:
    generators: list[str]
    relations: list[list[int]]
    provenance: list[str] = field(default_factory=list)

    @property
    def ngens(self) -> int:
        return len(self.generators)


@dataclass
class GradedPresentation(AbelianPresentation):
    points: list[Point | None] = field(default_factory=list)  # None for g
    ambient: Point = ()  # delta^- of J, to recover unreduced multidegrees

    def index(self, p: Point) -> int:
        return self._index[p]

    def __post_init__(self) -> None:
        self._index = {p: a for a, p in enumerate(self.points) if p is not None}

    def degree(self) -> list[int]:
        return [0 if p is None else 1 for p in self.points]

    def multidegree(self) -> list[list[int]]:
        n = len(self.ambient)
        return [[0] * n if p is None else [a + b for a, b in zip(p, self.ambient)] for p in self.points]

    def unit(self, k: int) -> list[int]:
        v = [0] * self.ngens
        v[k] = 1
        return v

    def monomial(self, plus: Sequence[Point], minus: Sequence[Point], g: int = 0) -> list[int]:
        v = [0] * self.ngens
        v[0] = g
        for p in plus:
            v[self._index[p]] += 1
        for p in minus:
            v[self._index[p]] -= 1
        return v


@dataclass
class GroupAnalysis:
    free_rank: int
    invariant_factors: list[int]
    minus_one_status: str  # "order_two" or "trivial"


def _presentation(J: PointSet, rels: list[DegenerateRelation], what: str) -> GradedPresentation:
    pts = list(J.reduced_points)
    gens = [G] + [_label(p) for p in pts]
    P = GradedPresentation(gens, [], [], [None] + pts, J.delta_minus)
    P.relations.append([2] + [0] * len(pts))
    P.provenance.append("2g")
    if is_proper(J):
        P.relations.append([1] + [0] * len(pts))
        P.provenance.append("alternation")
    for d in rels:
        row = P.monomial(d.lhs, d.rhs, d.sign_bit)
        if any(row):
            P.relations.append(row)
            idx = d.index
            P.provenance.append(f"{what} s={idx.s} alpha={list(idx.alpha)} i={list(idx.i)} j={list(idx.j)}")
    return P


def pasture_presentation(J: PointSet) -> GradedPresentation:
    return _presentation(J, degenerate_relations(J), "degenerate")


def tract_presentation(J: PointSet) -> GradedPresentation:
    return _presentation(J, degenerate_full_relations(J), "degenerate")


# ---------------------------------------------------------------------------
# group analysis

def analyze(P: AbelianPresentation) -> GroupAnalysis:
    sf = smith_normal_form(P.relations, P.ngens)
    H = hermite_normal_form(P.relations, P.ngens)
    status = "trivial" if in_lattice(H, [1] + [0] * (P.ngens - 1)) else "order_two"
    return GroupAnalysis(P.ngens - sf.rank, sf.factors, status)


def _integral(coeffs: list[Fraction] | None) -> list[int]:
    if coeffs is None or any(c.denominator != 1 for c in coeffs):
        raise AssertionError("vector does not lie in the kernel lattice")
    return [int(c) for c in coeffs]


@dataclass
class SubgroupData:
    basis: list[list[int]]  # rows: integer basis of the grading kernel K
    relations: list[list[int]]  # relation rows in K-coordinates
    analysis: GroupAnalysis

    def coordinates(self, v: Sequence[int]) -> list[int]:
        return _integral(solve_rational(self.basis, v))


def graded_subgroup(P: GradedPresentation, grading: list[list[int]]) -> SubgroupData:
    """Analyse (kernel of the grading) / (relations); every relation row lies
    in the kernel because relations are homogeneous."""
    K = left_kernel(grading, len(grading[0]) if grading else 0)
    coords = [_integral(solve_rational(K, row)) for row in P.relations]
    k = len(K)
    sf = smith_normal_form(coords, k)
    H = hermite_normal_form(P.relations, P.ngens)
    status = "trivial" if in_lattice(H, [1] + [0] * (P.ngens - 1)) else "order_two"
    return SubgroupData(K, coords, GroupAnalysis(k - sf.rank, sf.factors, status))


def degree_grading(P: GradedPresentation) -> list[list[int]]:
    return [[d] for d in P.degree()]


def foundation_grading(P: GradedPresentation) -> list[list[int]]:
    return [[d] + m for d, m in zip(P.degree(), P.multidegree())]


def extended_pasture_group(J: PointSet) -> GroupAnalysis:
    return analyze(pasture_presentation(J))


def tutte_group(J: PointSet) -> GroupAnalysis:
    P = pasture_presentation(J)
    return graded_subgroup(P, degree_grading(P)).analysis


def tutte_rank(J: PointSet) -> int:
    return analyze(pasture_presentation(J)).free_rank - 1


def foundation_unit_group(J: PointSet) -> GroupAnalysis:
    P = pasture_presentation(J)
    return graded_subgroup(P, foundation_grading(P)).analysis


# ---------------------------------------------------------------------------
# cross ratios in the presentation

@dataclass
class CrossRatioData:
    omega: list[Symbol]  # canonical symbols of Omega_J
    nondegenerate: list[Symbol]
    degenerate: list[Symbol]
    vectors: dict[Symbol, list[int]]

    @property
    def nondegenerate_up_to_inversion(self) -> list[Symbol]:
        seen, out = set(), []
        for s in self.nondegenerate:
            alpha, i, j, k, l = s
            inv = canonical_symbol((alpha, i, j, l, k))
            if inv in seen:
                continue
            seen.add(s)
            out.append(s)
        return out


def cross_ratio_vector_in(P: GradedPresentation, sym: Symbol) -> list[int]:
    a, b, c, d = cross_ratio_points(sym)
    bit = 1 if cross_ratio_sign(sym) < 0 else 0
    return P.monomial((a, b), (c, d), bit)


def enumerate_cross_ratios(J: PointSet, P: GradedPresentation | None = None) -> CrossRatioData:
    P = P or pasture_presentation(J)
    members = J.reduced_members
    canon: dict[Symbol, bool] = {}
    for sym in omega_symbols(J):
        c = canonical_symbol(sym)
        if c not in canon:
            canon[c] = is_nondegenerate(members, c)
    omega = sorted(canon)
    nd = [s for s in omega if canon[s]]
    dg = [s for s in omega if not canon[s]]
    vecs = {s: cross_ratio_vector_in(P, s) for s in omega}
    return CrossRatioData(omega, nd, dg, vecs)


def verify_cross_ratios_generate(J: PointSet) -> bool:
    """Nondegenerate cross ratios together with g generate the foundation's
    unit group (the multidegree-zero part of the presented group)."""
    P = pasture_presentation(J)
    sub = graded_subgroup(P, foundation_grading(P))
    k = len(sub.basis)
    if k == 0:
        return True
    data = enumerate_cross_ratios(J, P)
    rows = [sub.coordinates(data.vectors[s]) for s in data.nondegenerate]
    rows.append(sub.coordinates(P.unit(0)))
    rows.extend(sub.relations)
    H = hermite_normal_form(rows, k)
    return H == [[1 if a == b else 0 for b in range(k)] for a in range(k)]


def verify_bijection_theorem(J: PointSet) -> bool:
    """Every degenerate relation of any length follows from the 3-term ones."""
    P3 = pasture_presentation(J)
    H = hermite_normal_form(P3.relations, P3.ngens)
    Pf = tract_presentation(J)
    return all(in_lattice(H, row) for row in Pf.relations)


# ---------------------------------------------------------------------------
# relations between cross ratios

CR_NAMES = ("CRsigma", "CR0", "CR1", "CR2", "CR3", "CR4", "CR5")


def cross_ratio_relation_instances(J: PointSet):
    """Yield (name, terms, g) for every instance of the standard relations,
    where terms is a list of (symbol, exponent) and g the exponent of -1.
    CR0 instances have a single degenerate symbol."""
    import itertools

    from .mconvex import lattice_points, unit, vadd
    from .representations import symbol_orbit

    members = J.reduced_members
    n = J.n
    syms = list(omega_symbols(J))
    omega_set = set(syms)
    for s in syms:
        alpha, i, j, k, l = s
        if is_nondegenerate(members, s):
            for t in symbol_orbit(s)[1:]:
                yield "CRsigma", [(s, 1), (t, -1)], 0
            yield "CR1", [(s, 1), ((alpha, i, j, l, k), 1)], 0
            # <ij|kl><ik|lj><il|jk> = -1; the monomials cancel identically
            yield "CR2", [(s, 1), ((alpha, i, k, l, j), 1), ((alpha, i, l, j, k), 1)], 1
        else:
            yield "CR0", [(s, 1)], 0
        for m in range(n):
            t2, t3 = (alpha, i, j, l, m), (alpha, i, j, m, k)
            if t2 in omega_set and t3 in omega_set:
                yield "CR3", [(s, 1), (t2, 1), (t3, 1)], 0
    r = J.effective_rank
    if r < 3:
        return
    e = [unit(n, a) for a in range(n)]
    for alpha in lattice_points(n, r - 3):
        for i, j, k, l, m in itertools.product(range(n), repeat=5):
            s1 = (vadd(alpha, e[m]), i, j, k, l)
            s2 = (vadd(alpha, e[k]), i, j, l, m)
            s3 = (vadd(alpha, e[l]), i, j, m, k)
            if s1 in omega_set and s2 in omega_set and s3 in omega_set:
                yield "CR4", [(s1, 1), (s2, 1), (s3, 1)], 0
        for i, j, k, l, p, q in itertools.product(range(n), repeat=6):
            sp = (vadd(alpha, e[p]), i, j, k, l)
            sq = (vadd(alpha, e[q]), i, j, k, l)
            if not (is_nondegenerate(members, sp) and is_nondegenerate(members, sq)):
                continue
            ti = (vadd(alpha, e[i]), k, l, p, q)
            tj = (vadd(alpha, e[j]), k, l, p, q)
            if ti in omega_set and tj in omega_set and not is_nondegenerate(members, ti) \
                    and not is_nondegenerate(members, tj):
                yield "CR5", [(sp, 1), (sq, -1)], 0


@dataclass
class CrossRatioRelationReport:
    checked: dict[str, int]
    failures: dict[str, list]

    @property
    def ok(self) -> bool:
        return not any(self.failures.values())


def verify_cross_ratio_relations(J: PointSet) -> CrossRatioRelationReport:
    """Check each standard relation instance as a lattice membership in the
    presented group (the -1 exponent moves to the g coordinate)."""
    P = pasture_presentation(J)
    H = hermite_normal_form(P.relations, P.ngens)
    checked = {name: 0 for name in CR_NAMES}
    failures: dict[str, list] = {name: [] for name in CR_NAMES}
    for name, terms, gexp in cross_ratio_relation_instances(J):
        v = [0] * P.ngens
        v[0] = -gexp
        for sym, c in terms:
            for a, x in enumerate(cross_ratio_vector_in(P, sym)):
                v[a] += c * x
        checked[name] += 1
        if not in_lattice(H, v):
            failures[name].append(terms)
    return CrossRatioRelationReport(checked, failures)


def cross_ratio_relation_lattice(J: PointSet) -> dict:
    """Compare all relations among the nondegenerate cross ratios and -1
    holding in the presented group with those spanned by the standard
    list.  Reported as data: ranks of both lattices and whether they agree."""
    P = pasture_presentation(J)
    data = enumerate_cross_ratios(J, P)
    syms = data.nondegenerate
    pos = {s: a for a, s in enumerate(syms)}
    nsym = len(syms) + 1  # last coordinate is g
    V = [data.vectors[s] for s in syms] + [P.unit(0)]
    stacked = V + [[-x for x in row] for row in P.relations]
    ker = left_kernel(stacked, P.ngens)
    full = hermite_normal_form([row[:nsym] for row in ker], nsym)
    std = []
    for name, terms, gexp in cross_ratio_relation_instances(J):
        if name == "CR0":
            continue
        row = [0] * nsym
        row[-1] = -gexp
        for sym, c in terms:
            key = canonical_symbol(sym)
            if key in pos:  # degenerate symbols are 1 by CR0
                row[pos[key]] += c
        std.append(row)
    g2 = [0] * nsym
    g2[-1] = 2
    std.append(g2)
    if is_proper(J):
        g1 = [0] * nsym
        g1[-1] = 1
        std.append(g1)
    std_h = hermite_normal_form(std, nsym)
    return {
        "symbols": len(syms),
        "relation_rank": len(full),
        "standard_rank": len(std_h),
        "coincide": std_h == full,
    }


# ---------------------------------------------------------------------------
# rank formula and witnesses

def rank_formula_check(J: MConvexSet) -> bool:
    """rk (Tutte group) = rk (foundation units) + n - c(J)."""
    P = pasture_presentation(J)
    tutte = graded_subgroup(P, degree_grading(P)).analysis.free_rank
    found = graded_subgroup(P, foundation_grading(P)).analysis.free_rank
    return tutte == found + J.n - component_count(J)


def idempotency_witness(J: PointSet) -> IdempotencyWitness | None:
    """A bounded relation normalizing to 1+1+x, or None for matroid translates."""
    ws = idempotency_witnesses(J)
    return ws[0] if ws else None


def triple_witness(J: PointSet) -> IdempotencyWitness | None:
    """A bounded relation with three equal nonzero terms, when some width is >= 3."""
    ws = [w for w in idempotency_witnesses(J) if w.kind == "1+1+1"]
    return ws[0] if ws else None


def degree_zero_round_trip(J: PointSet, values: dict[Point, Fraction]) -> bool:
    """Whether log-values extend to a homomorphism from the presented group to
    (Q, +) sending g to 0, i.e. every relation row is annihilated."""
    P = pasture_presentation(J)
    f = [Fraction(0)] + [Fraction(values[p]) for p in P.points[1:]]
    return all(sum(c * x for c, x in zip(row, f)) == 0 for row in P.relations)
