"""Hives and Littlewood-Richardson coefficients.

Vertices of the hive triangle are the points (a, b, c) of Delta^r_3, with
(r,0,0) lower left, (0,r,0) lower right and (0,0,r) on top.  A rhombus is
two unit triangles sharing an edge; the shared edge carries the obtuse
vertices, and a labeling is a hive when every obtuse sum is at least the
corresponding acute sum.  Reading labels as tropical log-values, these
are exactly the 3-term relations of the full simplex Delta^r_3.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import MalformedInputError, PreconditionError, SupportMismatchError
from .mconvex import Point, lattice_points, simplex
from .representations import Representation, verify
from .tracts import TractId

Rhombus = tuple[tuple[Point, Point], tuple[Point, Point]]  # (obtuse, acute)


def _e(a: int) -> Point:
    return tuple(1 if k == a else 0 for k in range(3))


def _add(*ps: Sequence[int]) -> Point:
    return tuple(sum(x) for x in zip(*ps))


def rhombus_inequalities(r: int) -> list[Rhombus]:
    """One rhombus per alpha in Delta^{r-2}_3 and direction a: obtuse vertices
    alpha+e_a+e_b, alpha+e_a+e_c and acute vertices alpha+2e_a, alpha+e_b+e_c."""
    if r < 1:
        raise PreconditionError("hives need r >= 1")
    out = []
    for alpha in sorted(lattice_points(3, r - 2)) if r >= 2 else []:
        for a in range(3):
            b, c = (x for x in range(3) if x != a)
            ea, eb, ec = _e(a), _e(b), _e(c)
            obtuse = (_add(alpha, ea, eb), _add(alpha, ea, ec))
            acute = (_add(alpha, ea, ea), _add(alpha, eb, ec))
            out.append((obtuse, acute))
    return out


def small_triangles(r: int) -> list[tuple[Point, Point, Point]]:
    """Upward triangles beta+e_a and downward triangles gamma+e_a+e_b."""
    up = [tuple(_add(beta, _e(a)) for a in range(3)) for beta in lattice_points(3, r - 1)]
    down = []
    if r >= 2:
        for g in lattice_points(3, r - 2):
            down.append((_add(g, _e(0), _e(1)), _add(g, _e(0), _e(2)), _add(g, _e(1), _e(2))))
    return up + down


def rhombi_by_adjacency(r: int) -> set[tuple[frozenset, frozenset]]:
    """Rhombi from pairs of small triangles sharing an edge, as
    (shared edge, opposite vertices)."""
    tris = small_triangles(r)
    out = set()
    for t1, t2 in itertools.combinations(tris, 2):
        shared = set(t1) & set(t2)
        if len(shared) == 2:
            rest = (set(t1) | set(t2)) - shared
            out.add((frozenset(shared), frozenset(rest)))
    return out


@dataclass
class HiveLabeling:
    r: int
    labels: dict[Point, Fraction]

    def __getitem__(self, p: Point) -> Fraction:
        return self.labels[p]


def is_hive(h: HiveLabeling) -> bool:
    verts = lattice_points(3, h.r)
    missing = [v for v in verts if v not in h.labels]
    if missing:
        raise MalformedInputError(f"labels missing at {missing[:3]}")
    L = h.labels
    return all(L[o1] + L[o2] >= L[a1] + L[a2] for (o1, o2), (a1, a2) in rhombus_inequalities(h.r))


def violated_rhombi(h: HiveLabeling) -> list[Rhombus]:
    L = h.labels
    return [rh for rh in rhombus_inequalities(h.r)
            if L[rh[0][0]] + L[rh[0][1]] < L[rh[1][0]] + L[rh[1][1]]]


# ---------------------------------------------------------------------------
# partitions and border

def _partition(p: Sequence[int], r: int, name: str) -> list[int]:
    p = [int(x) for x in p]
    if any(x < 0 for x in p) or any(p[k] < p[k + 1] for k in range(len(p) - 1)):
        raise MalformedInputError(f"{name}={p} is not a partition")
    p = [x for x in p if x > 0]
    if len(p) > r:
        raise MalformedInputError(f"{name}={p} has more than {r} parts")
    return p + [0] * (r - len(p))


def border_labels(lam: Sequence[int], mu: Sequence[int], nu: Sequence[int], r: int) -> dict[Point, int]:
    """Border of the hive: partial sums of nu up the left edge, of lambda
    down the right edge, and |lambda| plus partial sums of mu along the
    bottom.  The top corner is 0."""
    lam = _partition(lam, r, "lambda")
    mu = _partition(mu, r, "mu")
    nu = _partition(nu, r, "nu")
    if sum(nu) != sum(lam) + sum(mu):
        raise MalformedInputError("|nu| must equal |lambda| + |mu|")
    out: dict[Point, int] = {}
    for a in range(r + 1):
        out[(a, 0, r - a)] = sum(nu[:a])
    for b in range(r + 1):
        out[(0, b, r - b)] = sum(lam[:b])
    for a in range(r + 1):
        out[(a, r - a, 0)] = sum(lam) + sum(mu[:a])
    return out


def interior_vertices(r: int) -> list[Point]:
    """Interior vertices row by row from the top, left to right."""
    out = []
    for c in range(r - 1, 0, -1):
        for b in range(1, r - c):
            out.append((r - c - b, b, c))
    return out


def a_priori_bounds(r: int, border: dict[Point, int]) -> dict[Point, tuple[int, int]]:
    """Integer bounds valid for every hive with this border.

    Lower: concavity along the row through v (two adjacent rhombi give
    2f(q) >= f(q-d) + f(q+d)), so f(v) is at least the interpolation of the
    row's border endpoints.  Upper: a rhombus gives
    f(q+e2-e1) - f(q) >= f(q+e3-e1+e2-e1) - f(q+e3-e1), i.e. horizontal
    differences shrink moving up, so each is at most the bottom-edge
    difference below it; summing from the row's left end bounds f(v).
    """
    out = {}
    for v in interior_vertices(r):
        a, b, c = v
        m = r - c
        left, right = border[(m, 0, c)], border[(0, m, c)]
        lo = Fraction(left * (m - b) + right * b, m)
        lo_int = -((-lo.numerator) // lo.denominator)
        hi = left
        for t in range(b):
            # step from (m-t, t, c) to (m-t-1, t+1, c), bounded by the bottom step below it
            q = (m - t + c, t, 0)
            q2 = (m - t + c - 1, t + 1, 0)
            hi += border[q2] - border[q]
        out[v] = (lo_int, hi)
    return out


def _hive_search(r: int, border: dict[Point, int]) -> Iterator[dict[Point, int]]:
    rhombi = rhombus_inequalities(r)
    bounds = a_priori_bounds(r, border)
    inner = interior_vertices(r)
    assigned = dict(border)
    # rhombi to test when a vertex gets fixed
    touching = {v: [rh for rh in rhombi if v in rh[0] or v in rh[1]] for v in inner}
    pos = {v: k for k, v in enumerate(inner)}

    def ready(rh: Rhombus, upto: int) -> bool:
        return all(p in border or pos[p] <= upto for p in rh[0] + rh[1])

    checks = {v: [rh for rh in touching[v] if ready(rh, pos[v]) and not ready(rh, pos[v] - 1)] for v in inner}

    def rec(k: int) -> Iterator[dict[Point, int]]:
        if k == len(inner):
            yield dict(assigned)
            return
        v = inner[k]
        low, high = bounds[v]
        for (o1, o2), (a1, a2) in touching[v]:
            known = [p for p in (o1, o2, a1, a2) if p != v and p in assigned]
            if len(known) < 3:
                continue
            if v == o1:
                low = max(low, assigned[a1] + assigned[a2] - assigned[o2])
            elif v == o2:
                low = max(low, assigned[a1] + assigned[a2] - assigned[o1])
            elif v == a1:
                high = min(high, assigned[o1] + assigned[o2] - assigned[a2])
            else:
                high = min(high, assigned[o1] + assigned[o2] - assigned[a1])
        for x in range(low, high + 1):
            assigned[v] = x
            if all(assigned[o1] + assigned[o2] >= assigned[a1] + assigned[a2]
                   for (o1, o2), (a1, a2) in checks[v]):
                yield from rec(k + 1)
        assigned.pop(v, None)

    if not inner:
        L = dict(border)
        if all(L[o1] + L[o2] >= L[a1] + L[a2] for (o1, o2), (a1, a2) in rhombi):
            yield L
        return
    yield from rec(0)


def integral_hives(lam: Sequence[int], mu: Sequence[int], nu: Sequence[int], r: int) -> list[HiveLabeling]:
    border = border_labels(lam, mu, nu, r)
    return [HiveLabeling(r, {p: Fraction(v) for p, v in h.items()}) for h in _hive_search(r, border)]


def lr_coefficient(lam: Sequence[int], mu: Sequence[int], nu: Sequence[int], r: int | None = None) -> int:
    if r is None:
        r = max(len([x for x in p if x]) for p in (lam, mu, nu)) or 1
    border = border_labels(lam, mu, nu, r)
    return sum(1 for _ in _hive_search(r, border))


# ---------------------------------------------------------------------------
# hives as tropical representations

def hive_to_representation(h: HiveLabeling, tract=TractId.T0Z) -> Representation:
    J = simplex(3, h.r)
    vals = {p: h.labels[p] for p in J.points}
    if tract == TractId.T0Z or tract == "t0z":
        if any(Fraction(v).denominator != 1 for v in vals.values()):
            raise MalformedInputError("integral tropical representations need integer labels")
    return Representation.from_bases(J, tract, vals)


def representation_to_hive(rho: Representation) -> HiveLabeling:
    if rho.J.n != 3 or set(rho.J.points) != set(lattice_points(3, rho.J.r)):
        raise SupportMismatchError("hives correspond to representations of the full simplex in 3 coordinates")
    if rho.tract not in (TractId.T0, TractId.T0Z):
        raise SupportMismatchError("hives correspond to tropical representations")
    return HiveLabeling(rho.J.r, {b: Fraction(v) for b, v in rho.items_by_basis()})


def hive_verifies(h: HiveLabeling) -> bool:
    return verify(hive_to_representation(h, TractId.T0), "strong").ok


# ---------------------------------------------------------------------------
# the tableau rule, as an independent oracle

def lr_tableau_oracle(lam: Sequence[int], mu: Sequence[int], nu: Sequence[int]) -> int:
    """Count semistandard fillings of nu/lambda with content mu whose
    reverse reading word (right to left, top to bottom) is a lattice word."""
    lam = [x for x in lam if x]
    mu = [x for x in mu if x]
    nu = [x for x in nu if x]
    if sum(nu) != sum(lam) + sum(mu):
        return 0
    if len(lam) > len(nu) or any(l > n for l, n in zip(lam, nu)):
        return 0
    rows = len(nu)
    lam = lam + [0] * (rows - len(lam))
    cells = [(i, j) for i in range(rows) for j in range(nu[i] - 1, lam[i] - 1, -1)]
    # reading order: rows top to bottom, each right to left
    fill: dict[tuple[int, int], int] = {}
    counts = [0] * (len(mu) + 1)
    total = 0

    def ok(i: int, j: int, v: int) -> bool:
        if (i, j + 1) in fill and fill[(i, j + 1)] < v:
            return False
        if i > 0 and j < nu[i - 1] and j >= lam[i - 1] and fill[(i - 1, j)] >= v:
            return False
        return True

    def rec(k: int) -> None:
        nonlocal total
        if k == len(cells):
            total += 1
            return
        i, j = cells[k]
        for v in range(1, len(mu) + 1):
            if counts[v] >= mu[v - 1]:
                continue
            if v > 1 and counts[v] + 1 > counts[v - 1]:
                continue
            if not ok(i, j, v):
                continue
            fill[(i, j)] = v
            counts[v] += 1
            rec(k + 1)
            counts[v] -= 1
            del fill[(i, j)]

    if not mu:
        return 1 if lam[:len(nu)] == nu else 0
    rec(0)
    return total


def partitions(total: int, max_parts: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of total with at most max_parts parts, largest first."""
    if max_part is None:
        max_part = total
    if total == 0:
        yield ()
        return
    if max_parts == 0:
        return
    for first in range(min(total, max_part), 0, -1):
        for rest in partitions(total - first, max_parts - 1, first):
            yield (first,) + rest
