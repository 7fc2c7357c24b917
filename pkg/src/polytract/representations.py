"""Representations of M-convex sets over concrete tracts.

A representation assigns a unit to every point of the reduced set.  Values
on unsorted index tuples are recovered by the sign of the sorting
permutation, which matters only for tracts with 1 != -1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    NotIdempotentError,
    PreconditionError,
    SupportMismatchError,
    TractMismatchError,
)
from .mconvex import (
    MConvexSet,
    Point,
    PointSet,
    direct_sum,
    dual,
    embedded_minor,
    exchange_witness,
    is_matroid_translate,
    is_proper,
    lattice_points,
    point_to_multiset,
    vadd,
    vsub,
)
from .normalforms import integer_rank
from .plucker import (
    PluckerIndex,
    PluckerRelation,
    degenerate_relations,
    enumerate_relations,
    sort_sign,
)
from .tracts import (
    FormalSum,
    TractElement,
    TractId,
    TractMorphism,
    get_tract,
    tract_id,
)

IDEMPOTENCY_DIAGNOSTIC = "idempotency principle"


@dataclass
class Representation:
    J: MConvexSet
    tract: TractId
    values: dict[Point, object]  # reduced point -> unit payload

    def __post_init__(self) -> None:
        self.tract = tract_id(self.tract)
        T = get_tract(self.tract)
        if set(self.values) != set(self.J.reduced_points):
            raise SupportMismatchError("values must be given on exactly the reduced bases")
        self.values = {p: T.validate(v) for p, v in self.values.items()}

    @classmethod
    def from_bases(cls, J: MConvexSet, tract, mapping: Mapping[Sequence[int], object]) -> "Representation":
        """Build from values keyed by (unreduced) bases of J."""
        vals = {}
        for b, v in mapping.items():
            b = tuple(b)
            if b not in J:
                raise SupportMismatchError(f"{list(b)} is not a basis")
            vals[J.reduce(b)] = v
        return cls(J, tract, vals)

    @property
    def T(self):
        return get_tract(self.tract)

    def value(self, p: Point):
        """Payload at a reduced point, or None outside the support."""
        return self.values.get(p)

    def value_at_basis(self, b: Sequence[int]):
        return self.values.get(self.J.reduce(b))

    def tuple_value(self, idx: Sequence[int]):
        """Value on an index tuple: sorting sign times the stored value."""
        p = [0] * self.J.n
        for a in idx:
            p[a] += 1
        v = self.values.get(tuple(p))
        if v is None:
            return None
        T = self.T
        return T.mul(T.sign(sort_sign(tuple(idx))), v)

    def items_by_basis(self) -> list[tuple[Point, object]]:
        return [(self.J.unreduce(p), v) for p, v in sorted(self.values.items())]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Representation):
            return NotImplemented
        return self.J == other.J and self.tract == other.tract and self.values == other.values


@dataclass(frozen=True)
class TorusElement:
    a: object
    t: tuple


@dataclass
class VerificationResult:
    ok: bool
    violations: list[PluckerIndex] = field(default_factory=list)
    diagnostic: str | None = None

    def __bool__(self) -> bool:
        return self.ok


# ---------------------------------------------------------------------------
# evaluation of relations

def instantiate(rel: PluckerRelation, rho: Representation) -> FormalSum:
    T = rho.T
    terms = []
    for t in rel.terms:
        vb, vg = rho.value(t.beta), rho.value(t.gamma)
        if t.nonzero != (vb is not None and vg is not None):
            raise SupportMismatchError("relation and representation disagree on the support")
        if t.nonzero:
            terms.append(T.mul(T.sign(t.sign), T.mul(vb, vg)))
    return FormalSum(T.id, tuple(terms))


def verify(rho: Representation, mode: str = "strong") -> VerificationResult:
    """Check every bounded relation (all lengths when strong, 3-term when weak)."""
    if mode not in ("strong", "weak"):
        raise ValueError(f"mode must be strong or weak, got {mode!r}")
    T = rho.T
    if not T.one_is_minus_one and is_proper(rho.J):
        return VerificationResult(False, [], IDEMPOTENCY_DIAGNOSTIC)
    kind = "full" if mode == "strong" else "three_term"
    bad = []
    for rel in enumerate_relations(rho.J, kind):
        if not T.is_null(list(instantiate(rel, rho).terms)):
            bad.append(rel.index)
    return VerificationResult(not bad, bad)


def verify_unbounded(rho: Representation) -> VerificationResult:
    """Zero-extend rho to the ambient simplex and check the unbounded relations.
    Only meaningful over idempotent fusion tracts."""
    T = rho.T
    if not T.idempotent:
        raise NotIdempotentError("unbounded relations need an idempotent tract")
    J = rho.J
    bad = []
    for rel in enumerate_relations(J, "full", bounded=False, guard=10 ** 6):
        terms = []
        for t in rel.terms:
            if t.nonzero:
                terms.append(T.mul(rho.value_at_basis(t.beta), rho.value_at_basis(t.gamma)))
        if not T.is_null(terms):
            bad.append(rel.index)
    return VerificationResult(not bad, bad)


# ---------------------------------------------------------------------------
# constructions

def characteristic_representation(J: MConvexSet, tract) -> Representation:
    T = get_tract(tract)
    if not T.idempotent:
        raise NotIdempotentError(f"characteristic representation needs an idempotent tract, not {T.id.value}")
    return Representation(J, T.id, {p: T.one() for p in J.reduced_points})


def pushforward(rho: Representation, m: TractMorphism) -> Representation:
    if m.source != rho.tract:
        raise TractMismatchError(f"morphism starts at {m.source.value}, representation lives over {rho.tract.value}")
    return Representation(rho.J, m.target, {p: m(v) for p, v in rho.values.items()})


def rescale(rho: Representation, g: TorusElement) -> Representation:
    T = rho.T
    if len(g.t) != rho.J.n:
        raise PreconditionError("torus element has the wrong length")
    a = T.validate(g.a)
    t = [T.validate(x) for x in g.t]
    out = {}
    for p, v in rho.values.items():
        w = T.mul(a, v)
        for ti, e in zip(t, p):
            if e:
                w = T.mul(w, T.power(ti, e))
        out[p] = w
    return Representation(rho.J, T.id, out)


def dual_representation(rho: Representation) -> Representation:
    J = rho.J
    Jd = dual(J)
    T = rho.T
    w = J.omega
    out = {}
    for p, v in rho.values.items():
        q = vsub(w, p)
        if T.one_is_minus_one:
            out[q] = v
        else:
            s = sort_sign(point_to_multiset(p) + point_to_multiset(q))
            out[q] = T.mul(T.sign(s), v)
    return Representation(Jd, T.id, out)


def minor_representation(rho: Representation, nu: Sequence[int], mu: Sequence[int],
                         tau: Sequence[int] | None = None) -> Representation:
    J = rho.J
    T = rho.T
    if not T.one_is_minus_one and not is_matroid_translate(J):
        raise PreconditionError("signed minors are only offered for translates of matroids")
    em = embedded_minor(J, nu, mu, tau)
    M = em.minor
    from .mconvex import delete

    Jn = delete(J, em.nu)
    gamma = point_to_multiset(vsub(vadd(Jn.delta_minus, em.mu), J.delta_minus))
    out = {}
    for q in M.reduced_points:
        src = J.reduce(em.embed(M.unreduce(q)))
        v = rho.value(src)
        if not T.one_is_minus_one:
            v = T.mul(T.sign(sort_sign(gamma + point_to_multiset(q))), v)
        out[q] = v
    return Representation(M, T.id, out)


def direct_sum_representation(r1: Representation, r2: Representation) -> Representation:
    if r1.tract != r2.tract:
        raise TractMismatchError("direct sum of representations over different tracts")
    T = r1.T
    J = direct_sum(r1.J, r2.J)
    out = {}
    for p, v in r1.values.items():
        for q, w in r2.values.items():
            out[p + q] = T.mul(v, w)
    return Representation(J, T.id, out)


# ---------------------------------------------------------------------------
# cross ratios

Symbol = tuple[Point, int, int, int, int]


def _pt(alpha: Point, a: int, b: int) -> Point:
    p = list(alpha)
    p[a] += 1
    p[b] += 1
    return tuple(p)


def cross_ratio_points(sym: Symbol) -> tuple[Point, Point, Point, Point]:
    """(alpha+ik, alpha+jl, alpha+il, alpha+jk): numerator pair then denominator pair."""
    alpha, i, j, k, l = sym
    return _pt(alpha, i, k), _pt(alpha, j, l), _pt(alpha, i, l), _pt(alpha, j, k)


def cross_ratio_sign(sym: Symbol) -> int:
    _, i, j, k, l = sym

    def ps(a: int, b: int) -> int:
        return -1 if a > b else 1

    return ps(i, k) * ps(j, l) * ps(i, l) * ps(j, k)


def symbol_orbit(sym: Symbol) -> list[Symbol]:
    alpha, i, j, k, l = sym
    return [(alpha, i, j, k, l), (alpha, k, l, i, j), (alpha, j, i, l, k), (alpha, l, k, j, i)]


def canonical_symbol(sym: Symbol) -> Symbol:
    return min(symbol_orbit(sym))


def in_omega(members, sym: Symbol) -> bool:
    return all(p in members for p in cross_ratio_points(sym))


def is_nondegenerate(members, sym: Symbol) -> bool:
    alpha, i, j, k, l = sym
    return in_omega(members, sym) and _pt(alpha, i, j) in members and _pt(alpha, k, l) in members


def omega_symbols(J: PointSet) -> Iterator[Symbol]:
    """All tuples (alpha, i, j, k, l) on the reduced set with the four
    cross-ratio points present."""
    n = J.n
    r = J.effective_rank
    if r < 2:
        return
    members = J.reduced_members
    for alpha in sorted(lattice_points(n, r - 2)):
        for i, j, k, l in itertools.product(range(n), repeat=4):
            sym = (alpha, i, j, k, l)
            if in_omega(members, sym):
                yield sym


def cross_ratio(rho: Representation, sym: Symbol) -> TractElement:
    if not in_omega(rho.J.reduced_members, sym):
        raise PreconditionError(f"{sym} is not in Omega_J")
    T = rho.T
    a, b, c, d = (rho.value(p) for p in cross_ratio_points(sym))
    v = T.mul(T.mul(a, b), T.inv(T.mul(c, d)))
    if not T.one_is_minus_one:
        v = T.mul(T.sign(cross_ratio_sign(sym)), v)
    return TractElement(T.id, v)


def cross_ratio_vector(rho: Representation) -> dict[Symbol, object]:
    """Cross-ratio payloads over the canonical nondegenerate symbols."""
    members = rho.J.reduced_members
    out = {}
    for sym in omega_symbols(rho.J):
        if not is_nondegenerate(members, sym):
            continue
        c = canonical_symbol(sym)
        if c not in out:
            out[c] = cross_ratio(rho, c).payload
    return out


def is_in_lineality(rho: Representation) -> bool:
    T = rho.T
    if not T.idempotent:
        raise NotIdempotentError("lineality is defined over idempotent tracts")
    one = T.one()
    return all(cross_ratio(rho, s).payload == one for s in omega_symbols(rho.J))


def lineality_rank(J: PointSet) -> int:
    """Rank of the exponent lattice of the torus orbit of the characteristic
    representation, modulo global scalars."""
    rows = [[1] + list(p) for p in J.reduced_points]
    return integer_rank(rows) - 1


def is_in_degeneracy_locus(rho: Representation) -> bool:
    """Whether the unit assignment satisfies all degenerate 3-term relations.

    No other relation is checked; for tracts with 1 != -1 a proper set has
    no such assignment at all (alternation forces 1 = -1)."""
    T = rho.T
    J = rho.J
    if not T.one_is_minus_one and is_proper(J):
        return False
    for d in degenerate_relations(J):
        lhs = T.mul(rho.value(d.lhs[0]), rho.value(d.lhs[1]))
        rhs = T.mul(rho.value(d.rhs[0]), rho.value(d.rhs[1]))
        if d.sign_bit:
            rhs = T.neg(rhs)
        if lhs != rhs:
            return False
    return True


def same_rescaling_class(r1: Representation, r2: Representation) -> bool:
    """Whether r2 = (a, t).r1 for some torus element."""
    if r1.J != r2.J or r1.tract != r2.tract:
        return False
    T = r1.T
    if T.idempotent:
        return cross_ratio_vector(r1) == cross_ratio_vector(r2)
    if T.finite_units is None:
        raise PreconditionError("no rescaling test for this tract")
    units = T.finite_units
    n = r1.J.n
    for a in units:
        for t in itertools.product(units, repeat=n):
            if rescale(r1, TorusElement(a, tuple(t))).values == r2.values:
                return True
    return False


# ---------------------------------------------------------------------------
# M-convex functions

INF = None  # marker for +infinity in function tables


@dataclass
class FunctionCheck:
    local_exchange: bool
    strong: bool
    weak: bool

    @property
    def consistent(self) -> bool:
        return self.local_exchange == self.strong == self.weak


def _fadd(a, b):
    if a is None or b is None:
        return None
    return a + b


def _fge(a, b) -> bool:
    """a >= b with None as +infinity."""
    if a is None:
        return True
    if b is None:
        return False
    return a >= b


def _fmin(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def local_exchange_holds(n: int, r: int, f: Mapping[Point, object]) -> bool:
    """The 3-term local exchange inequalities for f on Delta^r_n
    (missing points are +infinity)."""
    get = f.get
    for alpha in lattice_points(n, r - 2) if r >= 2 else []:
        for i, k in itertools.product(range(n), repeat=2):
            for j, l in itertools.product(range(n), repeat=2):
                if {i, k} & {j, l}:
                    continue
                lhs = _fadd(get(_pt(alpha, i, k)), get(_pt(alpha, j, l)))
                rhs = _fmin(_fadd(get(_pt(alpha, i, j)), get(_pt(alpha, k, l))),
                            _fadd(get(_pt(alpha, i, l)), get(_pt(alpha, j, k))))
                if not _fge(lhs, rhs):
                    return False
    return True


def function_to_representation(n: int, r: int, f: Mapping[Point, object], tract=TractId.T0) -> Representation | None:
    """rho = e**(-f) over a tropical tract, or None if the support is not M-convex."""
    support = [tuple(p) for p, v in f.items() if v is not None]
    if not support:
        raise PreconditionError("function has empty support")
    if exchange_witness(sorted(support)) is not None:
        return None
    J = MConvexSet(n, r, support, check=False)
    T = get_tract(tract)
    return Representation.from_bases(J, T.id, {p: -Fraction(f[p]) for p in support})


def mconvex_function_check(n: int, r: int, f: Mapping[Sequence[int], object]) -> FunctionCheck:
    """Decide M-convexity of f two ways: the local exchange axiom on an
    M-convex support, and verification of e**(-f) over the tropical tract
    (strong and weak).  Values None mean +infinity."""
    f = {tuple(p): (None if v is None else Fraction(v)) for p, v in f.items()}
    rho = function_to_representation(n, r, f)
    if rho is None:
        return FunctionCheck(False, False, False)
    way1 = local_exchange_holds(n, r, f)
    return FunctionCheck(way1, verify(rho, "strong").ok, verify(rho, "weak").ok)
