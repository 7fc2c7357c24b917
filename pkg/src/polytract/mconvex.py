"""M-convex sets (discrete polymatroids) and their operation algebra.

Points are plain tuples of ints.  A :class:`PointSet` is any nonempty set
of lattice points of one norm; :class:`MConvexSet` additionally satisfies
the symmetric exchange axiom.  Everything is exact and small-scale: the
exchange check is a direct quadratic scan and canonical forms search over
coordinate permutations.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Iterable, Iterator, Sequence

from .errors import (
    GuardExceededError,
    MalformedInputError,
    NotMConvexError,
    PreconditionError,
)

Point = tuple[int, ...]

DEFAULT_GUARD = 22


def default_guard() -> int:
    raw = os.environ.get("POLYTRACT_GUARD")
    if raw is None or raw.strip() == "":
        return DEFAULT_GUARD
    try:
        return int(raw)
    except ValueError as exc:
        raise MalformedInputError(f"POLYTRACT_GUARD must be an integer, got {raw!r}") from exc


# ---------------------------------------------------------------------------
# lattice helpers

def unit(n: int, i: int) -> Point:
    return tuple(1 if k == i else 0 for k in range(n))


def vadd(a: Sequence[int], b: Sequence[int]) -> Point:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Sequence[int], b: Sequence[int]) -> Point:
    return tuple(x - y for x, y in zip(a, b))


def vle(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def vinf(a: Sequence[int], b: Sequence[int]) -> Point:
    return tuple(min(x, y) for x, y in zip(a, b))


def vsup(a: Sequence[int], b: Sequence[int]) -> Point:
    return tuple(max(x, y) for x, y in zip(a, b))


def norm(a: Sequence[int]) -> int:
    return sum(a)


def simplex_size(n: int, r: int) -> int:
    """Number of lattice points of the r-dilated simplex in n coordinates."""
    if n == 0:
        return 1 if r == 0 else 0
    return comb(n + r - 1, r)


def lattice_points(n: int, r: int) -> list[Point]:
    """All points of Delta^r_n in lexicographically decreasing order."""
    if n == 0:
        return [()] if r == 0 else []
    out: list[Point] = []

    def rec(prefix: list[int], left: int, slots: int) -> None:
        if slots == 1:
            out.append(tuple(prefix + [left]))
            return
        for v in range(left, -1, -1):
            prefix.append(v)
            rec(prefix, left - v, slots - 1)
            prefix.pop()

    rec([], r, n)
    return out


def multiset_to_point(n: int, indices: Iterable[int]) -> Point:
    v = [0] * n
    for i in indices:
        v[i] += 1
    return tuple(v)


def point_to_multiset(p: Sequence[int]) -> tuple[int, ...]:
    """Sorted index tuple with coordinate i repeated p[i] times."""
    return tuple(i for i, c in enumerate(p) for _ in range(c))


# ---------------------------------------------------------------------------
# point sets

class PointSet:
    """A nonempty finite set of lattice points in N^n of common norm r."""

    def __init__(self, n: int, r: int, points: Iterable[Sequence[int]]):
        if not isinstance(n, int) or n < 0:
            raise MalformedInputError(f"n must be a nonnegative integer, got {n!r}")
        if not isinstance(r, int) or r < 0:
            raise MalformedInputError(f"r must be a nonnegative integer, got {r!r}")
        pts = set()
        for p in points:
            q = tuple(int(x) for x in p)
            if len(q) != n:
                raise MalformedInputError(f"point {q} does not have length {n}")
            if any(x < 0 for x in q):
                raise MalformedInputError(f"point {q} has a negative entry")
            if sum(q) != r:
                raise MalformedInputError(f"point {q} does not have norm {r}")
            pts.add(q)
        if not pts:
            raise MalformedInputError("a point set must be nonempty")
        self.n = n
        self.r = r
        self.points: tuple[Point, ...] = tuple(sorted(pts))
        self._members = frozenset(pts)

    # container protocol
    def __contains__(self, p: object) -> bool:
        return p in self._members

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PointSet):
            return NotImplemented
        return (self.n, self.r, self.points) == (other.n, other.r, other.points)

    def __hash__(self) -> int:
        return hash((self.n, self.r, self.points))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n}, r={self.r}, bases={list(self.points)})"

    @property
    def bases(self) -> tuple[Point, ...]:
        return self.points

    @cached_property
    def delta_minus(self) -> Point:
        return tuple(min(p[i] for p in self.points) for i in range(self.n))

    @cached_property
    def delta_plus(self) -> Point:
        return tuple(max(p[i] for p in self.points) for i in range(self.n))

    @property
    def delta(self) -> Point:
        return vadd(self.delta_minus, self.delta_plus)

    @property
    def omega(self) -> Point:
        return vsub(self.delta_plus, self.delta_minus)

    @property
    def effective_rank(self) -> int:
        return self.r - norm(self.delta_minus)

    @cached_property
    def reduced_points(self) -> tuple[Point, ...]:
        dm = self.delta_minus
        return tuple(sorted(vsub(p, dm) for p in self.points))

    @cached_property
    def reduced_members(self) -> frozenset:
        return frozenset(self.reduced_points)

    def reduce(self, p: Sequence[int]) -> Point:
        return vsub(p, self.delta_minus)

    def unreduce(self, p: Sequence[int]) -> Point:
        return vadd(p, self.delta_minus)

    def reduction(self) -> "PointSet":
        return type(self)._raw(self.n, self.effective_rank, self.reduced_points)

    @classmethod
    def _raw(cls, n: int, r: int, points: Iterable[Point]) -> "PointSet":
        """Construct without re-validating (callers guarantee the invariants)."""
        obj = cls.__new__(cls)
        pts = frozenset(points)
        if not pts:
            raise PreconditionError("operation produced an empty set")
        obj.n, obj.r = n, r
        obj.points = tuple(sorted(pts))
        obj._members = pts
        return obj


class MConvexSet(PointSet):
    """A point set satisfying the symmetric exchange axiom."""

    def __init__(self, n: int, r: int, bases: Iterable[Sequence[int]], check: bool = True):
        super().__init__(n, r, bases)
        if check:
            w = exchange_witness(self.points, self._members)
            if w is not None:
                raise NotMConvexError(f"exchange axiom fails: {w}")

    @classmethod
    def from_points(cls, points: Iterable[Sequence[int]]) -> "MConvexSet":
        pts = [tuple(p) for p in points]
        if not pts:
            raise MalformedInputError("a point set must be nonempty")
        return cls(len(pts[0]), sum(pts[0]), pts)


def simplex(n: int, r: int) -> MConvexSet:
    """The full simplex Delta^r_n."""
    return MConvexSet._raw(n, r, lattice_points(n, r))


# ---------------------------------------------------------------------------
# exchange axiom

def exchange_witness(points: Sequence[Point], members: frozenset | None = None) -> dict | None:
    """Return a violating (alpha, beta, i) triple, or None if M-convex."""
    if members is None:
        members = frozenset(points)
    for a in points:
        n = len(a)
        for b in points:
            if a == b:
                continue
            for i in range(n):
                if a[i] <= b[i]:
                    continue
                ok = False
                for j in range(n):
                    if a[j] >= b[j]:
                        continue
                    a2 = list(a)
                    a2[i] -= 1
                    a2[j] += 1
                    b2 = list(b)
                    b2[i] += 1
                    b2[j] -= 1
                    if tuple(a2) in members and tuple(b2) in members:
                        ok = True
                        break
                if not ok:
                    return {"alpha": list(a), "beta": list(b), "i": i}
    return None


def is_m_convex(n: int, r: int, points: Iterable[Sequence[int]]) -> bool:
    ps = PointSet(n, r, points)
    return exchange_witness(ps.points, ps._members) is None


def as_mconvex(ps: PointSet) -> MConvexSet:
    if isinstance(ps, MConvexSet):
        return ps
    return MConvexSet(ps.n, ps.r, ps.points)


# ---------------------------------------------------------------------------
# invariants

@dataclass(frozen=True)
class Invariants:
    delta_minus: Point
    delta_plus: Point
    delta: Point
    omega: Point
    effective_rank: int
    reduction: MConvexSet


def invariants_of(J: PointSet) -> Invariants:
    return Invariants(
        J.delta_minus, J.delta_plus, J.delta, J.omega, J.effective_rank, J.reduction()
    )


def is_matroid_translate(J: PointSet) -> bool:
    return all(w <= 1 for w in J.omega)


def is_proper(J: PointSet) -> bool:
    return not is_matroid_translate(J)


# ---------------------------------------------------------------------------
# translation, duality, minors

def translate(J: MConvexSet, tau: Sequence[int]) -> MConvexSet:
    tau = tuple(tau)
    if len(tau) != J.n:
        raise MalformedInputError(f"translation vector has length {len(tau)}, expected {J.n}")
    pts = [vadd(p, tau) for p in J.points]
    if any(x < 0 for p in pts for x in p):
        raise PreconditionError("translation leaves the nonnegative orthant")
    return MConvexSet._raw(J.n, J.r + norm(tau), pts)


def dual(J: MConvexSet) -> MConvexSet:
    d = J.delta
    return MConvexSet._raw(J.n, norm(d) - J.r, [vsub(d, p) for p in J.points])


def _check_vec(J: PointSet, v: Sequence[int], name: str) -> Point:
    v = tuple(int(x) for x in v)
    if len(v) != J.n:
        raise MalformedInputError(f"{name} has length {len(v)}, expected {J.n}")
    return v


def contract(J: MConvexSet, mu: Sequence[int]) -> MConvexSet:
    mu = _check_vec(J, mu, "mu")
    if any(x < 0 for x in mu):
        raise PreconditionError("contraction vector must be nonnegative")
    low = vadd(mu, J.delta_minus)
    pts = [vsub(p, mu) for p in J.points if vle(low, p)]
    if not pts:
        raise PreconditionError(f"{list(mu)} is not independent in J")
    return MConvexSet._raw(J.n, J.r - norm(mu), pts)


def delete(J: MConvexSet, nu: Sequence[int]) -> MConvexSet:
    nu = _check_vec(J, nu, "nu")
    if any(x < 0 for x in nu):
        raise PreconditionError("deletion vector must be nonnegative")
    high = vsub(J.delta_plus, nu)
    pts = [p for p in J.points if vle(p, high)]
    if not pts:
        raise PreconditionError(f"{list(nu)} is not coindependent in J")
    return MConvexSet._raw(J.n, J.r, pts)


def is_independent(J: PointSet, mu: Sequence[int]) -> bool:
    low = vadd(mu, J.delta_minus)
    return any(vle(low, p) for p in J.points)


def is_coindependent(J: PointSet, nu: Sequence[int]) -> bool:
    high = vsub(J.delta_plus, nu)
    return any(vle(p, high) for p in J.points)


@dataclass(frozen=True)
class EmbeddedMinor:
    """The minor J\\nu/mu + tau together with its embedding into J."""

    minor: MConvexSet
    nu: Point
    mu: Point
    tau: Point

    @property
    def shift(self) -> Point:
        return vsub(self.mu, self.tau)

    def embed(self, p: Sequence[int]) -> Point:
        return vadd(p, self.shift)


def embedded_minor(J: MConvexSet, nu: Sequence[int], mu: Sequence[int],
                   tau: Sequence[int] | None = None) -> EmbeddedMinor:
    nu = _check_vec(J, nu, "nu")
    mu = _check_vec(J, mu, "mu")
    tau = (0,) * J.n if tau is None else _check_vec(J, tau, "tau")
    m = translate(contract(delete(J, nu), mu), tau)
    return EmbeddedMinor(m, nu, mu, tau)


def commute_minors(J: MConvexSet, nu: Sequence[int], mu: Sequence[int]) -> tuple[Point, Point, Point]:
    """Vectors (nu', mu', tau') with (J\\nu)/mu' = (J/mu)\\nu' + tau'."""
    nu = _check_vec(J, nu, "nu")
    mu = _check_vec(J, mu, "mu")
    lo, hi = vadd(J.delta_minus, mu), vsub(J.delta_plus, nu)
    if not any(vle(lo, p) and vle(p, hi) for p in J.points):
        raise PreconditionError("no basis lies between delta^- + mu and delta^+ - nu")
    Jm = contract(J, mu)
    Jn = delete(J, nu)
    zero = (0,) * J.n
    nu2 = vsup(zero, vadd(vsub(nu, J.delta_plus), vadd(Jm.delta_plus, mu)))
    mu2 = vsup(zero, vadd(vsub(J.delta_minus, Jn.delta_minus), mu))
    # the shift is mu - mu', i.e. inf{mu, delta^-_{J\\nu} - delta^-_J}
    tau2 = vsub(mu, mu2)
    return nu2, mu2, tau2


def minor_duality_shift(J: MConvexSet, nu: Sequence[int]) -> Point:
    """Shift s with dual(J\\nu) = dual(J)/nu + s."""
    nu = _check_vec(J, nu, "nu")
    Jn = delete(J, nu)
    return vsub(vadd(Jn.delta, nu), J.delta)


def contraction_duality_shift(J: MConvexSet, mu: Sequence[int]) -> Point:
    """Shift s with dual(J/mu) = dual(J)\\mu + s."""
    mu = _check_vec(J, mu, "mu")
    Jm = contract(J, mu)
    return vsub(vadd(Jm.delta, mu), J.delta)


# ---------------------------------------------------------------------------
# permutation and extension of variables

def permute(J: MConvexSet, sigma: Sequence[int]) -> MConvexSet:
    """Move coordinate i to position sigma[i] (0-based)."""
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(J.n)):
        raise MalformedInputError(f"{list(sigma)} is not a permutation of range({J.n})")
    pts = []
    for p in J.points:
        q = [0] * J.n
        for i, v in enumerate(p):
            q[sigma[i]] = v
        pts.append(tuple(q))
    return MConvexSet._raw(J.n, J.r, pts)


def extend(J: MConvexSet) -> MConvexSet:
    return MConvexSet._raw(J.n + 1, J.r, [p + (0,) for p in J.points])


def restrict(J: MConvexSet) -> MConvexSet:
    if J.n == 0 or any(p[-1] != 0 for p in J.points):
        raise PreconditionError("last coordinate is not identically zero")
    return MConvexSet._raw(J.n - 1, J.r, [p[:-1] for p in J.points])


# ---------------------------------------------------------------------------
# canonical form

def canonical_form(J: MConvexSet) -> MConvexSet:
    red = J.reduced_points
    w = J.omega
    keep = [i for i in range(J.n) if w[i] > 0]
    proj = [tuple(p[i] for i in keep) for p in red]
    m = len(keep)
    keys = [(w[keep[c]], tuple(sorted(q[c] for q in proj))) for c in range(m)]
    # coordinates grouped by an invariant key; only permute inside groups
    groups: dict = {}
    for c in range(m):
        groups.setdefault(keys[c], []).append(c)
    ordered = [groups[k] for k in sorted(groups)]
    best = None
    for choice in itertools.product(*(itertools.permutations(g) for g in ordered)):
        order = [c for block in choice for c in block]
        cand = sorted(tuple(q[c] for c in order) for q in proj)
        if best is None or cand < best:
            best = cand
    return MConvexSet._raw(m, J.effective_rank, best)


def combinatorially_equivalent(J1: MConvexSet, J2: MConvexSet) -> bool:
    return canonical_form(J1) == canonical_form(J2)


# ---------------------------------------------------------------------------
# direct sums and decomposition

def direct_sum(J1: MConvexSet, J2: MConvexSet) -> MConvexSet:
    pts = [a + b for a in J1.points for b in J2.points]
    return MConvexSet._raw(J1.n + J2.n, J1.r + J2.r, pts)


@dataclass(frozen=True)
class Decomposition:
    components: tuple[MConvexSet, ...]
    blocks: tuple[tuple[int, ...], ...]

    @property
    def count(self) -> int:
        return len(self.blocks)

    @property
    def permutation(self) -> tuple[int, ...]:
        """sigma with permute(direct sum of components, sigma) == J."""
        order = [i for b in self.blocks for i in b]
        return tuple(order)

    def reassemble(self) -> MConvexSet:
        total = self.components[0]
        for c in self.components[1:]:
            total = direct_sum(total, c)
        return permute(total, self.permutation)


def exchange_graph_components(J: PointSet) -> list[tuple[int, ...]]:
    """Connected components of the coordinate graph i ~ j whenever some
    basis alpha has alpha - e_i + e_j in J as well."""
    n = J.n
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in J.points:
        for i in range(n):
            if p[i] == 0:
                continue
            for j in range(n):
                if j == i:
                    continue
                q = list(p)
                q[i] -= 1
                q[j] += 1
                if tuple(q) in J:
                    parent[find(i)] = find(j)
    comps: dict[int, list[int]] = {}
    for i in range(n):
        comps.setdefault(find(i), []).append(i)
    return sorted(tuple(c) for c in comps.values())


def decompose(J: MConvexSet) -> Decomposition:
    blocks = exchange_graph_components(J)
    comps = []
    for b in blocks:
        pts = {tuple(p[i] for i in b) for p in J.points}
        r = sum(next(iter(pts)))
        comps.append(MConvexSet._raw(len(b), r, pts))
    return Decomposition(tuple(comps), tuple(blocks))


def component_count(J: PointSet) -> int:
    return len(exchange_graph_components(J))


# ---------------------------------------------------------------------------
# rank functions and Whittle minors

class RankFunction:
    """A set function on subsets of range(n), stored by bitmask."""

    def __init__(self, n: int, values: Sequence[int]):
        if len(values) != 1 << n:
            raise MalformedInputError("rank function needs one value per subset")
        self.n = n
        self.values = tuple(int(v) for v in values)

    @staticmethod
    def mask(S: Iterable[int]) -> int:
        m = 0
        for i in S:
            m |= 1 << i
        return m

    def __call__(self, S: Iterable[int] | int) -> int:
        m = S if isinstance(S, int) else self.mask(S)
        return self.values[m]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RankFunction) and (self.n, self.values) == (other.n, other.values)

    def __repr__(self) -> str:
        return f"RankFunction(n={self.n}, values={self.values})"

    @property
    def total(self) -> int:
        return self.values[-1]

    def is_polymatroid(self) -> bool:
        v = self.values
        if v[0] != 0:
            return False
        for m in range(1 << self.n):
            for i in range(self.n):
                if m >> i & 1:
                    continue
                if v[m | 1 << i] < v[m]:
                    return False
                for j in range(i + 1, self.n):
                    if m >> j & 1:
                        continue
                    if v[m | 1 << i] + v[m | 1 << j] < v[m | 1 << i | 1 << j] + v[m]:
                        return False
        return True


def rank_function(J: PointSet) -> RankFunction:
    n = J.n
    vals = []
    for m in range(1 << n):
        idx = [i for i in range(n) if m >> i & 1]
        vals.append(max(sum(p[i] for i in idx) for p in J.points))
    return RankFunction(n, vals)


def _drop_index(rf: RankFunction, i: int, fn) -> RankFunction:
    others = [k for k in range(rf.n) if k != i]
    vals = []
    for m in range(1 << (rf.n - 1)):
        full = 0
        for pos, k in enumerate(others):
            if m >> pos & 1:
                full |= 1 << k
        vals.append(fn(full))
    return RankFunction(rf.n - 1, vals)


def whittle_delete(rf: RankFunction, i: int) -> RankFunction:
    return _drop_index(rf, i, lambda m: rf(m))


def whittle_contract(rf: RankFunction, i: int) -> RankFunction:
    ri = rf(1 << i)
    return _drop_index(rf, i, lambda m: rf(m | 1 << i) - ri)


def bases_from_rank_function(rf: RankFunction) -> MConvexSet:
    """Lattice points alpha of norm r([n]) with alpha_S <= r(S) for all S."""
    n, r = rf.n, rf.total
    masks = range(1, 1 << n)
    pts = []
    for p in lattice_points(n, r):
        if all(sum(p[k] for k in range(n) if m >> k & 1) <= rf(m) for m in masks):
            pts.append(p)
    return MConvexSet._raw(n, r, pts)


def whittle_identification(J: MConvexSet, i: int) -> tuple[MConvexSet, MConvexSet]:
    """The embedded-minor counterparts of the Whittle deletion and contraction
    at coordinate i, with coordinate i dropped."""
    mu = tuple((J.delta_plus[i] - J.delta_minus[i]) if k == i else 0 for k in range(J.n))
    tau = tuple(-J.delta_minus[i] if k == i else 0 for k in range(J.n))
    d = translate(delete(J, mu), tau)
    c = translate(contract(J, mu), tau)

    def drop(K: MConvexSet) -> MConvexSet:
        return MConvexSet._raw(K.n - 1, K.r, [p[:i] + p[i + 1:] for p in K.points])

    return drop(d), drop(c)


# ---------------------------------------------------------------------------
# enumeration

def enumerate_mconvex(n: int, r: int, guard: int | None = None) -> Iterator[MConvexSet]:
    """Every M-convex subset of Delta^r_n, each exactly once.

    M-convex sets of rank r correspond bijectively to integer polymatroid
    rank functions with value r on the ground set, so this enumerates those
    by backtracking over subsets in bitmask order with local monotonicity and
    submodularity bounds, then reads off the lattice points.
    """
    if n < 0 or r < 0:
        raise MalformedInputError("n and r must be nonnegative")
    guard = default_guard() if guard is None else guard
    size = simplex_size(n, r)
    if size > guard:
        raise GuardExceededError(f"|Delta^{r}_{n}| = {size} exceeds the guard {guard}")
    if n == 0:
        if r == 0:
            yield MConvexSet._raw(0, 0, [()])
        return
    full = (1 << n) - 1
    pts = lattice_points(n, r)
    sums = [[sum(p[k] for k in range(n) if m >> k & 1) for m in range(1 << n)] for p in pts]
    f = [0] * (1 << n)
    members = [[k for k in range(n) if m >> k & 1] for m in range(1 << n)]

    def rec(m: int) -> Iterator[MConvexSet]:
        if m > full:
            chosen = [p for p, s in zip(pts, sums) if all(s[q] <= f[q] for q in range(1, full + 1))]
            yield MConvexSet._raw(n, r, chosen)
            return
        elems = members[m]
        lo = max(f[m ^ (1 << i)] for i in elems)
        hi = r
        for a, b in itertools.combinations(elems, 2):
            hi = min(hi, f[m ^ (1 << a)] + f[m ^ (1 << b)] - f[m ^ (1 << a) ^ (1 << b)])
        if m == full:
            lo = max(lo, r)
        for v in range(lo, hi + 1):
            f[m] = v
            yield from rec(m + 1)

    yield from rec(1)


def all_subsets(n: int, r: int) -> Iterator[PointSet]:
    """Every nonempty subset of Delta^r_n as a PointSet."""
    pts = lattice_points(n, r)
    for k in range(1, len(pts) + 1):
        for combo in itertools.combinations(pts, k):
            yield PointSet._raw(n, r, combo)
