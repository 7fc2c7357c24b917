"""Concrete tracts: unit arithmetic, null-set membership, morphisms.

Each tract works on raw unit payloads:

========  ===========================================
K, F2     the int 1
Fpm, F3   +1 or -1
S         +1 or -1
T0, T0Z   log-value e (Fraction, resp. int) for e**e
T1, Tinf  positive Fraction
========  ===========================================

Zero is never a payload; formal sums are multisets of units.  The public
:class:`TractElement` wraps a payload (or ``None`` for zero) together
with its tract.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import MalformedInputError, PreconditionError, TractMismatchError


class TractId(str, Enum):
    K = "k"
    FPM = "fpm"
    F2 = "f2"
    F3 = "f3"
    S = "s"
    T0 = "t0"
    T0Z = "t0z"
    T1 = "t1"
    TINF = "tinf"


def tract_id(x: "TractId | str") -> TractId:
    if isinstance(x, TractId):
        return x
    try:
        return TractId(str(x).lower())
    except ValueError as exc:
        raise MalformedInputError(f"unknown tract {x!r}") from exc


class Tract:
    """Payload-level arithmetic for one concrete tract."""

    id: TractId
    one_is_minus_one: bool
    idempotent: bool
    near_idempotent: bool
    degenerate: bool
    fusion: bool = True
    finite_units: tuple | None = None

    def one(self):
        raise NotImplementedError

    def minus_one(self):
        return self.one() if self.one_is_minus_one else self.neg(self.one())

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def power(self, a, k: int):
        out = self.one()
        base = a if k >= 0 else self.inv(a)
        for _ in range(abs(k)):
            out = self.mul(out, base)
        return out

    def is_null(self, terms: Sequence) -> bool:
        raise NotImplementedError

    def parse(self, s: str):
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError

    def validate(self, a):
        """Return the canonical payload or raise."""
        raise NotImplementedError

    def random_unit(self, rng: random.Random):
        raise NotImplementedError

    def sign(self, s: int):
        """Image of the integer sign s in {+1, -1}."""
        return self.one() if s > 0 else self.minus_one()

    def __repr__(self) -> str:
        return f"<tract {self.id.value}>"


class _Krasner(Tract):
    id = TractId.K
    one_is_minus_one = True
    idempotent = True
    near_idempotent = True
    degenerate = True
    finite_units = (1,)

    def one(self):
        return 1

    def mul(self, a, b):
        return 1

    def inv(self, a):
        return 1

    def neg(self, a):
        return 1

    def is_null(self, terms):
        return len(terms) != 1

    def parse(self, s):
        if str(s).strip() not in ("1", "+1"):
            raise MalformedInputError(f"K has the single unit 1, got {s!r}")
        return 1

    def format(self, a):
        return "1"

    def validate(self, a):
        if a != 1:
            raise MalformedInputError(f"{a!r} is not a unit of K")
        return 1

    def random_unit(self, rng):
        return 1


class _SignLike(Tract):
    finite_units = (1, -1)
    one_is_minus_one = False
    idempotent = False
    near_idempotent = False
    degenerate = False

    def one(self):
        return 1

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return a

    def neg(self, a):
        return -a

    def parse(self, s):
        t = str(s).strip()
        if t in ("1", "+1"):
            return 1
        if t == "-1":
            return -1
        raise MalformedInputError(f"expected +1 or -1, got {s!r}")

    def format(self, a):
        return "+1" if a == 1 else "-1"

    def validate(self, a):
        if a not in (1, -1):
            raise MalformedInputError(f"{a!r} is not a sign")
        return int(a)

    def random_unit(self, rng):
        return rng.choice((1, -1))


class _RegularPartialField(_SignLike):
    id = TractId.FPM

    def is_null(self, terms):
        return sum(terms) == 0


class _F3(_SignLike):
    id = TractId.F3

    def is_null(self, terms):
        return sum(terms) % 3 == 0


class _Sign(_SignLike):
    id = TractId.S

    def is_null(self, terms):
        if not terms:
            return True
        return 1 in terms and -1 in terms


class _F2(Tract):
    id = TractId.F2
    one_is_minus_one = True
    idempotent = False
    near_idempotent = False
    degenerate = False
    finite_units = (1,)

    def one(self):
        return 1

    def mul(self, a, b):
        return 1

    def inv(self, a):
        return 1

    def neg(self, a):
        return 1

    def is_null(self, terms):
        return len(terms) % 2 == 0

    parse = _Krasner.parse
    format = _Krasner.format
    validate = _Krasner.validate

    def random_unit(self, rng):
        return 1


def _fraction(s) -> Fraction:
    try:
        return Fraction(str(s).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedInputError(f"not an exact rational: {s!r}") from exc


def _fmt_fraction(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class _Tropical(Tract):
    """Log-domain tropical tract: payload e stands for the element e**e."""

    id = TractId.T0
    one_is_minus_one = True
    idempotent = True
    near_idempotent = True
    degenerate = False

    def one(self):
        return Fraction(0)

    def mul(self, a, b):
        return a + b

    def inv(self, a):
        return -a

    def neg(self, a):
        return a

    def power(self, a, k):
        return a * k

    def is_null(self, terms):
        if not terms:
            return True
        m = max(terms)
        return sum(1 for t in terms if t == m) >= 2

    def parse(self, s):
        return self.validate(_fraction(s))

    def format(self, a):
        return _fmt_fraction(a)

    def validate(self, a):
        return Fraction(a)

    def random_unit(self, rng):
        return Fraction(rng.randint(-6, 6), rng.choice((1, 1, 2, 3)))


class _TropicalZ(_Tropical):
    id = TractId.T0Z

    def one(self):
        return 0

    def validate(self, a):
        q = Fraction(a)
        if q.denominator != 1:
            raise MalformedInputError(f"T0Z log-values are integers, got {a!r}")
        return int(q)

    def random_unit(self, rng):
        return rng.randint(-6, 6)


class _Triangular(Tract):
    """Positive rationals; null sums are side lengths of a polygon."""

    id = TractId.T1
    one_is_minus_one = True
    idempotent = True
    near_idempotent = True
    degenerate = False

    def one(self):
        return Fraction(1)

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return 1 / a

    def neg(self, a):
        return a

    def power(self, a, k):
        return a ** k

    def is_null(self, terms):
        if not terms:
            return True
        if len(terms) < 2:
            return False
        return 2 * max(terms) <= sum(terms)

    def parse(self, s):
        return self.validate(_fraction(s))

    def format(self, a):
        return _fmt_fraction(a)

    def validate(self, a):
        q = Fraction(a)
        if q <= 0:
            raise MalformedInputError(f"units of this tract are positive, got {a!r}")
        return q

    def random_unit(self, rng):
        return Fraction(rng.randint(1, 6), rng.randint(1, 6))


class _DegenerateTriangular(_Triangular):
    id = TractId.TINF
    degenerate = True

    def is_null(self, terms):
        if not terms:
            return True
        if len(terms) >= 3:
            return True
        return len(terms) == 2 and terms[0] == terms[1]


_TRACTS: dict[TractId, Tract] = {
    t.id: t
    for t in (
        _Krasner(), _RegularPartialField(), _F2(), _F3(), _Sign(),
        _Tropical(), _TropicalZ(), _Triangular(), _DegenerateTriangular(),
    )
}


def get_tract(x: "TractId | str | Tract") -> Tract:
    if isinstance(x, Tract):
        return x
    return _TRACTS[tract_id(x)]


ALL_TRACTS: tuple[TractId, ...] = tuple(_TRACTS)


# ---------------------------------------------------------------------------
# element-level API

@dataclass(frozen=True)
class TractElement:
    tract: TractId
    payload: object = None  # None encodes zero

    @property
    def is_zero(self) -> bool:
        return self.payload is None

    def __str__(self) -> str:
        return format_element(self)


@dataclass(frozen=True)
class FormalSum:
    tract: TractId
    terms: tuple = field(default_factory=tuple)

    @classmethod
    def of(cls, tract: "TractId | str", elements: Iterable) -> "FormalSum":
        tid = tract_id(tract)
        terms = []
        for e in elements:
            p = e.payload if isinstance(e, TractElement) else e
            if p is not None:
                terms.append(p)
        return cls(tid, tuple(terms))

    def __add__(self, other: "FormalSum") -> "FormalSum":
        if self.tract != other.tract:
            raise TractMismatchError("formal sums over different tracts")
        return FormalSum(self.tract, self.terms + other.terms)

    def scale(self, c) -> "FormalSum":
        T = get_tract(self.tract)
        return FormalSum(self.tract, tuple(T.mul(c, t) for t in self.terms))


def element(tract: "TractId | str", payload) -> TractElement:
    tid = tract_id(tract)
    if payload is None:
        return TractElement(tid, None)
    return TractElement(tid, get_tract(tid).validate(payload))


def zero(tract: "TractId | str") -> TractElement:
    return TractElement(tract_id(tract), None)


def one(tract: "TractId | str") -> TractElement:
    T = get_tract(tract)
    return TractElement(T.id, T.one())


def _same(a: TractElement, b: TractElement) -> Tract:
    if a.tract != b.tract:
        raise TractMismatchError(f"{a.tract.value} vs {b.tract.value}")
    return get_tract(a.tract)


def mul(a: TractElement, b: TractElement) -> TractElement:
    T = _same(a, b)
    if a.is_zero or b.is_zero:
        return TractElement(T.id, None)
    return TractElement(T.id, T.mul(a.payload, b.payload))


def inv(a: TractElement) -> TractElement:
    if a.is_zero:
        raise PreconditionError("zero has no inverse")
    T = get_tract(a.tract)
    return TractElement(T.id, T.inv(a.payload))


def neg(a: TractElement) -> TractElement:
    if a.is_zero:
        return a
    T = get_tract(a.tract)
    return TractElement(T.id, T.neg(a.payload))


def is_null(s: FormalSum) -> bool:
    return get_tract(s.tract).is_null(list(s.terms))


def parse_element(tract: "TractId | str", s: str) -> TractElement:
    T = get_tract(tract)
    tropical = T.id in (TractId.T0, TractId.T0Z)
    if str(s).strip() == ("-inf" if tropical else "0"):
        return TractElement(T.id, None)
    return TractElement(T.id, T.parse(s))


def format_element(a: TractElement) -> str:
    if a.is_zero:
        return "-inf" if tract_id(a.tract) in (TractId.T0, TractId.T0Z) else "0"
    return get_tract(a.tract).format(a.payload)


# ---------------------------------------------------------------------------
# morphisms

@dataclass(frozen=True)
class TractMorphism:
    source: TractId
    target: TractId
    name: str
    fn: Callable = field(compare=False, repr=False)

    def __call__(self, payload):
        return self.fn(payload)

    def apply(self, a: TractElement) -> TractElement:
        if a.tract != self.source:
            raise TractMismatchError(f"morphism from {self.source.value} applied to {a.tract.value}")
        if a.is_zero:
            return TractElement(self.target, None)
        return TractElement(self.target, self.fn(a.payload))


def morphism(src: "TractId | str", dst: "TractId | str") -> TractMorphism | None:
    """Look up the catalog morphism src -> dst, or None when absent."""
    s, d = tract_id(src), tract_id(dst)
    S, D = get_tract(s), get_tract(d)
    if s == d:
        return TractMorphism(s, d, "identity", lambda a: a)
    if d == TractId.K:
        return TractMorphism(s, d, "terminal", lambda a: 1)
    if s == TractId.FPM:
        return TractMorphism(s, d, "initial", lambda a: D.one() if a == 1 else D.minus_one())
    if s == TractId.T0Z and d == TractId.T0:
        return TractMorphism(s, d, "inclusion", lambda a: Fraction(a))
    if s == TractId.T1 and d == TractId.TINF:
        return TractMorphism(s, d, "identity on positive rationals", lambda a: a)
    return None


def catalog() -> list[TractMorphism]:
    out = []
    for s in ALL_TRACTS:
        for d in ALL_TRACTS:
            m = morphism(s, d)
            if m is not None:
                out.append(m)
    return out


def generator_sums(tract: "TractId | str", rng: random.Random | None = None,
                   max_len: int = 4, samples: int = 200) -> list[tuple]:
    """A family of formal sums used to spot-check null preservation:
    every sum of length <= max_len for finite unit groups, random sums
    (with forced near-null shapes) otherwise."""
    T = get_tract(tract)
    if T.finite_units is not None:
        out = []
        units = T.finite_units

        def rec(prefix: list, k: int) -> None:
            out.append(tuple(prefix))
            if k == 0:
                return
            for u in units:
                if prefix and u < prefix[-1]:
                    continue
                prefix.append(u)
                rec(prefix, k - 1)
                prefix.pop()

        rec([], max_len)
        return out
    rng = rng or random.Random(0)
    out = [()]
    for _ in range(samples):
        k = rng.randint(1, max_len)
        terms = [T.random_unit(rng) for _ in range(k)]
        if k >= 2 and rng.random() < 0.5:
            terms[1] = terms[0]
        out.append(tuple(terms))
    return out


def preserves_null(m: TractMorphism, rng: random.Random | None = None) -> bool:
    S, D = get_tract(m.source), get_tract(m.target)
    if D.one() != m(S.one()) or D.minus_one() != m(S.minus_one()):
        return False
    for terms in generator_sums(m.source, rng):
        if S.is_null(list(terms)) and not D.is_null([m(t) for t in terms]):
            return False
    return True
