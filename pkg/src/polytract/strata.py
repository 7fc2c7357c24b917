"""Polygrassmannian strata over K and their tropical (Dressian) constraints.

Over the Krasner hyperfield a point of the Polygrassmannian is a support
set P of Delta^r_n whose characteristic function satisfies every
unbounded Plücker relation; the strata are labeled by those supports.
Over the tropical hyperfield each relation restricted to a stratum says
that the maximum of the monomial log-values is attained twice, which is
recorded here as a linear constraint on v = log-values at the bases.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterator

from .errors import GuardExceededError
from .mconvex import MConvexSet, Point, PointSet, all_subsets, default_guard, simplex_size
from .plucker import enumerate_relations


def _check_guard(n: int, r: int, guard: int | None) -> None:
    guard = default_guard() if guard is None else guard
    if simplex_size(n, r) > guard:
        raise GuardExceededError(f"|Delta^{r}_{n}| exceeds the guard {guard}")


def polygrassmannian_strata(n: int, r: int, guard: int | None = None) -> Iterator[MConvexSet]:
    """Supports satisfying all unbounded K-Plücker relations, in subset order.

    Brute force over the 2^|Delta^r_n| - 1 nonempty subsets; no M-convexity
    test is used, so the output can be compared against enumerate_mconvex.
    """
    _check_guard(n, r, guard)
    for P in all_subsets(n, r):
        if all(rel.support_size != 1 for rel in enumerate_relations(P, "full", bounded=False, guard=guard)):
            yield MConvexSet._raw(n, r, P.points)


@dataclass(frozen=True)
class TropicalConstraint:
    """Either sum(v(lhs)) >= sum(v(rhs)), sum(v(lhs)) == sum(v(rhs)), or a
    'max attained twice' condition over the listed monomials when the
    relation does not reduce to a single linear constraint."""

    kind: str  # ">=", "==" or "max2"
    lhs: tuple[Point, ...]
    rhs: tuple[Point, ...]
    monomials: tuple[tuple[tuple[Point, Point], int], ...] = ()

    def format(self) -> str:
        if self.kind == "max2":
            inner = ", ".join(f"{m}*[{_fmt_mono(mono)}]" for mono, m in self.monomials)
            return f"max attained twice among {inner}"
        return f"{_fmt_side(self.lhs)} {self.kind} {_fmt_side(self.rhs)}"

    def holds(self, v: dict) -> bool:
        if self.kind == "max2":
            vals = []
            for (b, g), m in self.monomials:
                vals += [v[b] + v[g]] * m
            top = max(vals)
            return sum(1 for x in vals if x == top) >= 2
        a = sum(v[p] for p in self.lhs)
        b = sum(v[p] for p in self.rhs)
        return a >= b if self.kind == ">=" else a == b

    def as_dict(self) -> dict:
        out = {"kind": self.kind, "text": self.format()}
        if self.kind == "max2":
            out["monomials"] = [{"bases": [list(b), list(g)], "multiplicity": m} for (b, g), m in self.monomials]
        else:
            out["lhs"] = [list(p) for p in self.lhs]
            out["rhs"] = [list(p) for p in self.rhs]
        return out


def _fmt_point(p: Point) -> str:
    return "(" + ",".join(map(str, p)) + ")"


def _fmt_mono(mono: tuple[Point, Point]) -> str:
    return "v" + _fmt_point(mono[0]) + "+v" + _fmt_point(mono[1])


def _fmt_side(pts: tuple[Point, ...]) -> str:
    counts = Counter(pts)
    return "+".join((f"{m}" if m > 1 else "") + "v" + _fmt_point(p) for p, m in sorted(counts.items()))


def _constraint(monos: Counter) -> TropicalConstraint | None:
    items = sorted(monos.items())
    total = sum(m for _, m in items)
    if total < 2:
        return None
    if len(items) == 1:
        return None  # a single repeated monomial is always null
    if len(items) == 2:
        (m1, c1), (m2, c2) = items
        if c1 == 1 and c2 == 1:
            return TropicalConstraint("==", m1, m2)
        if c1 >= 2 and c2 == 1:
            return TropicalConstraint(">=", m1, m2)
        if c2 >= 2 and c1 == 1:
            return TropicalConstraint(">=", m2, m1)
        return None
    return TropicalConstraint("max2", (), (), tuple(items))


def dressian_constraints(J: PointSet) -> list[TropicalConstraint]:
    """Distinct tropical constraints from the bounded relations of J, on
    unreduced bases.  Relations that hold for every choice of values are
    dropped, so singletons get no constraints."""
    out: list[TropicalConstraint] = []
    seen = set()
    for rel in enumerate_relations(J, "full"):
        monos = Counter(
            tuple(sorted((J.unreduce(t.beta), J.unreduce(t.gamma)))) for t in rel.nonzero_terms
        )
        c = _constraint(monos)
        if c is None:
            continue
        key = (c.kind, tuple(sorted(c.lhs)), tuple(sorted(c.rhs)), c.monomials)
        if c.kind == "==":
            key = (c.kind, tuple(sorted((tuple(sorted(c.lhs)), tuple(sorted(c.rhs))))), (), ())
        if key in seen:
            continue
        seen.add(key)
        out.append(c)
    return out


def dressian(n: int, r: int, guard: int | None = None) -> list[tuple[MConvexSet, list[TropicalConstraint]]]:
    """Each Polygrassmannian stratum of Delta^r_n with its constraint list."""
    return [(J, dressian_constraints(J)) for J in polygrassmannian_strata(n, r, guard)]
