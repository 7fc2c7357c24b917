"""Plücker relations of a point set, with sign bookkeeping.

Bounded relations live on the reduced set: for 2 <= s <= rbar, a point
alpha of norm rbar - s and sorted index lists i (s+1 entries) and j (s-1
entries) with alpha + sum(i) + sum(j) <= omega.  The k-th term is

    sign_k * x[alpha + i - i_k] * x[alpha + i_k + j]

where sign_k is (-1)**k times the parities of the sorting permutations of
the tuples (alpha, i without i_k) and (alpha, i_k, j).  Signs only matter
when all entries are distinct, i.e. for translates of matroids.

Unbounded relations (used for the Polygrassmannian) range over all of
Delta^r_n in unreduced coordinates and carry no signs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import GuardExceededError
from .mconvex import (
    Point,
    PointSet,
    default_guard,
    is_matroid_translate,
    lattice_points,
    multiset_to_point,
    point_to_multiset,
    vadd,
    vle,
)


@dataclass(frozen=True)
class PluckerIndex:
    s: int
    alpha: Point
    i: tuple[int, ...]
    j: tuple[int, ...]


@dataclass(frozen=True)
class PluckerTerm:
    k: int
    beta: Point
    gamma: Point
    sign: int
    nonzero: bool

    @property
    def monomial(self) -> tuple[Point, Point]:
        return (self.beta, self.gamma) if self.beta <= self.gamma else (self.gamma, self.beta)


@dataclass(frozen=True)
class PluckerRelation:
    index: PluckerIndex
    terms: tuple[PluckerTerm, ...]
    bounded: bool = True

    @property
    def nonzero_terms(self) -> tuple[PluckerTerm, ...]:
        return tuple(t for t in self.terms if t.nonzero)

    @property
    def support_size(self) -> int:
        return sum(1 for t in self.terms if t.nonzero)

    @property
    def is_degenerate(self) -> bool:
        return self.support_size == 2


def sort_sign(seq: Sequence[int]) -> int:
    """Parity of the sorting permutation; equal entries are not inversions."""
    inv = 0
    for a in range(len(seq)):
        for b in range(a + 1, len(seq)):
            if seq[a] > seq[b]:
                inv += 1
    return -1 if inv % 2 else 1


def _multisets(n: int, size: int, cap: Sequence[int], start: int = 0) -> Iterator[tuple[int, ...]]:
    """Sorted index tuples of the given size whose counts respect cap."""
    if size == 0:
        yield ()
        return
    for a in range(start, n):
        if cap[a] <= 0:
            continue
        c2 = list(cap)
        c2[a] -= 1
        for rest in _multisets(n, size - 1, c2, a):
            yield (a,) + rest


def _unbounded_cap(n: int, size: int) -> list[int]:
    return [size] * n


def _terms(n: int, alpha: Point, ilist: tuple, jlist: tuple, members, signed: bool) -> tuple[PluckerTerm, ...]:
    abar = point_to_multiset(alpha)
    base_i = multiset_to_point(n, ilist)
    base_j = multiset_to_point(n, jlist)
    out = []
    for k, ik in enumerate(ilist):
        rest = ilist[:k] + ilist[k + 1:]
        beta = list(vadd(alpha, base_i))
        beta[ik] -= 1
        gamma = list(vadd(alpha, base_j))
        gamma[ik] += 1
        beta, gamma = tuple(beta), tuple(gamma)
        if signed:
            sign = (-1) ** k * sort_sign(abar + rest) * sort_sign(abar + (ik,) + jlist)
        else:
            sign = 1
        out.append(PluckerTerm(k, beta, gamma, sign, beta in members and gamma in members))
    return tuple(out)


def _dedupe_key(s: int, terms: Sequence[PluckerTerm]) -> tuple:
    return (s, tuple(sorted(t.monomial for t in terms)))


def enumerate_relations(J: PointSet, kind: str = "full", bounded: bool = True,
                        guard: int | None = None, dedupe: bool = True) -> Iterator[PluckerRelation]:
    """Stream the Plücker relations of J in lexicographic (s, alpha, i, j) order.

    kind is "full" (every s) or "three_term" (s = 2 only).  Relations whose
    term monomials coincide with an earlier one are skipped unless
    dedupe is False.
    """
    if kind not in ("full", "three_term"):
        raise ValueError(f"unknown relation kind {kind!r}")
    n = J.n
    if bounded:
        r = J.effective_rank
        members = J.reduced_members
        omega = J.omega
    else:
        guard = default_guard() if guard is None else guard
        from .mconvex import simplex_size

        if simplex_size(n, J.r) > guard:
            raise GuardExceededError(f"|Delta^{J.r}_{n}| exceeds the guard {guard}")
        r = J.r
        members = J._members
        omega = None
    signed = bounded
    s_max = min(r, 2) if kind == "three_term" else r
    seen = set()
    for s in range(2, s_max + 1):
        for alpha in sorted(lattice_points(n, r - s)):
            if bounded:
                if not vle(alpha, omega):
                    continue
                cap = [w - a for w, a in zip(omega, alpha)]
            else:
                cap = _unbounded_cap(n, 2 * s)
            for ilist in _multisets(n, s + 1, cap):
                cap2 = list(cap)
                for a in ilist:
                    cap2[a] -= 1
                for jlist in _multisets(n, s - 1, cap2):
                    terms = _terms(n, alpha, ilist, jlist, members, signed)
                    if dedupe:
                        key = _dedupe_key(s, terms)
                        if key in seen:
                            continue
                        seen.add(key)
                    yield PluckerRelation(PluckerIndex(s, alpha, ilist, jlist), terms, bounded)


def satisfies_krasner(J: PointSet, kind: str = "full", bounded: bool = True) -> bool:
    """Whether the characteristic function of J satisfies the relations over K:
    no relation may have exactly one nonzero term."""
    return all(rel.support_size != 1 for rel in enumerate_relations(J, kind, bounded))


@dataclass(frozen=True)
class DegenerateRelation:
    """x[lhs0] x[lhs1] = (-1)**sign_bit x[rhs0] x[rhs1] on reduced points."""

    index: PluckerIndex
    lhs: tuple[Point, Point]
    rhs: tuple[Point, Point]
    sign_bit: int


def _degenerate_from(rel: PluckerRelation, matroid: bool) -> DegenerateRelation:
    t1, t2 = rel.nonzero_terms
    m1, m2 = sorted((t1.monomial, t2.monomial))
    # s1*x1 + s2*x2 = 0 gives x1 = -s1*s2*x2; the bit marks a relative minus sign
    bit = 1 if (matroid and t1.sign * t2.sign == 1) else 0
    return DegenerateRelation(rel.index, m1, m2, bit)


def degenerate_relations(J: PointSet) -> list[DegenerateRelation]:
    """Bounded 3-term relations with exactly two nonzero terms."""
    matroid = is_matroid_translate(J)
    return [_degenerate_from(rel, matroid)
            for rel in enumerate_relations(J, "three_term") if rel.is_degenerate]


def degenerate_full_relations(J: PointSet) -> list[DegenerateRelation]:
    """Bounded relations of every length with exactly two nonzero terms."""
    matroid = is_matroid_translate(J)
    return [_degenerate_from(rel, matroid)
            for rel in enumerate_relations(J, "full") if rel.is_degenerate]


# ---------------------------------------------------------------------------
# idempotency witnesses

@dataclass(frozen=True)
class IdempotencyWitness:
    kind: str  # "1+1+x" or "1+1+1"
    relation: PluckerRelation


def _relation_at(J: PointSet, alpha: Point, ilist: tuple, jlist: tuple) -> PluckerRelation:
    terms = _terms(J.n, alpha, ilist, jlist, J.reduced_members, True)
    return PluckerRelation(PluckerIndex(len(jlist) + 1, alpha, ilist, jlist), terms, True)


def _exchange_partner(members, b: Point, g: Point, i: int) -> int:
    for k in range(len(b)):
        if b[k] < g[k]:
            b2 = list(b)
            b2[i] -= 1
            b2[k] += 1
            if tuple(b2) in members:
                return k
    raise AssertionError("exchange axiom violated")


def idempotency_witnesses(J: PointSet) -> list[IdempotencyWitness]:
    """Relations normalizing to 1+1+x (and 1+1+1 when some width is >= 3).

    Constructed from a basis attaining the maximal width in a coordinate i:
    exchanging twice towards a basis with i-th entry 0 yields three bases
    alpha+2e_i, alpha+e_i+e_k, alpha+e_k+e_l which pin down the relations.
    Empty for translates of matroids.
    """
    w = J.omega
    i = max(range(J.n), key=lambda a: (w[a], -a)) if J.n else None
    if i is None or w[i] < 2:
        return []
    red = J.reduced_points
    members = J.reduced_members
    beta = next(p for p in red if p[i] == w[i])
    gamma = next(p for p in red if p[i] == 0)
    k = _exchange_partner(members, beta, gamma, i)
    b1 = list(beta)
    b1[i] -= 1
    b1[k] += 1
    b1 = tuple(b1)
    l = _exchange_partner(members, b1, gamma, i)
    alpha = list(beta)
    alpha[i] -= 2
    alpha = tuple(alpha)
    out = [IdempotencyWitness("1+1+x", _relation_at(J, alpha, tuple(sorted((i, k, l))), (i,)))]
    if w[i] >= 3:
        a2 = list(b1)
        a2[i] -= 2
        out.append(IdempotencyWitness("1+1+1", _relation_at(J, tuple(a2), (i, i, i), (l,))))
    return out


def classify_witness(rel: PluckerRelation) -> str | None:
    """'1+1+1' if three equal nonzero monomials, '1+1+x' if exactly two
    of three nonzero monomials agree, else None."""
    nz = rel.nonzero_terms
    if len(nz) != 3:
        return None
    monos = [t.monomial for t in nz]
    distinct = len(set(monos))
    if distinct == 1:
        return "1+1+1"
    if distinct == 2:
        return "1+1+x"
    return None


# ---------------------------------------------------------------------------
# text dump

def _fmt_point(p: Sequence[int]) -> str:
    return "[" + ",".join(str(x) for x in p) + "]"


def format_relation(rel: PluckerRelation) -> str:
    idx = rel.index
    parts = []
    for t in rel.terms:
        if not t.nonzero:
            parts.append("0")
        else:
            parts.append(("+" if t.sign > 0 else "-") + f"x{_fmt_point(t.beta)}·x{_fmt_point(t.gamma)}")
    return " | ".join([
        str(idx.s),
        _fmt_point(idx.alpha),
        ",".join(map(str, idx.i)),
        ",".join(map(str, idx.j)),
        " ".join(parts),
    ])
