"""Exact rational exponent vectors and their componentwise partial order.

Exponent vectors are plain tuples of nonnegative rationals.  Entries are
normalized to ``int`` when integral and ``fractions.Fraction`` otherwise;
the two compare and hash interchangeably, so mixed tuples are safe as dict
keys.  A single sentinel ``INF`` sits above every vector, which is how
contacts of a series with itself and heights of leaf bars are encoded.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]
ExpVec = tuple  # tuple of Rational entries


class Comparison(Enum):
    """Outcome of comparing two vectors componentwise."""

    LEQ = "LEQ"
    GEQ = "GEQ"
    EQUAL = "EQUAL"
    INCOMPARABLE = "INCOMPARABLE"


class _Infinity:
    """Sentinel above every exponent vector."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "INF"


INF = _Infinity()


def rat(value, den=None) -> Rational:
    """Exact rational from an int, Fraction or 'p/q' string, normalized to int when integral."""
    if den is not None:
        value = Fraction(value, den)
    elif isinstance(value, str):
        value = Fraction(value)
    elif isinstance(value, float):
        raise TypeError("floating point values are not accepted; use Fraction or str")
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value)
    if not isinstance(value, (int, Fraction)):
        raise TypeError(f"not an exact rational: {value!r}")
    return value


def vec(entries: Iterable) -> ExpVec:
    """Exponent vector with nonnegative normalized entries."""
    out = tuple(rat(e) for e in entries)
    if any(e < 0 for e in out):
        raise ValueError(f"exponent vector has a negative entry: {out}")
    return out


def compare(a: ExpVec, b: ExpVec) -> Comparison:
    """Componentwise partial order; INF compares above every finite vector."""
    a_inf = a is INF
    b_inf = b is INF
    if a_inf or b_inf:
        if a_inf and b_inf:
            return Comparison.EQUAL
        return Comparison.GEQ if a_inf else Comparison.LEQ
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(b)}")
    le = all(x <= y for x, y in zip(a, b))
    ge = all(x >= y for x, y in zip(a, b))
    if le and ge:
        return Comparison.EQUAL
    if le:
        return Comparison.LEQ
    if ge:
        return Comparison.GEQ
    return Comparison.INCOMPARABLE


def leq(a: ExpVec, b: ExpVec) -> bool:
    """a <= b in the partial order (equality allowed)."""
    return compare(a, b) in (Comparison.LEQ, Comparison.EQUAL)


def less(a: ExpVec, b: ExpVec) -> bool:
    """a < b: comparable, not equal."""
    return compare(a, b) is Comparison.LEQ


class ComparabilityError(ValueError):
    """A set expected to be totally ordered contains an incomparable pair."""


def minimum(vectors: Iterable) -> object:
    """Smallest element of a set of pairwise comparable vectors (INF allowed).

    Raises ComparabilityError when two finite members are incomparable,
    which signals that the inputs cannot come from contacts of roots
    sharing a common factor of monomial-times-unit shape.
    """
    best = None
    seen = False
    for v in vectors:
        seen = True
        if best is None or best is INF:
            best = v
            continue
        if v is INF:
            continue
        c = compare(v, best)
        if c is Comparison.INCOMPARABLE:
            raise ComparabilityError(
                f"contacts violate comparability: {v} vs {best}"
            )
        if c is Comparison.LEQ:
            best = v
    if not seen:
        raise ValueError("minimum of an empty set")
    return best


def dot(c: Sequence, a: Sequence) -> Rational:
    """Standard inner product; exact."""
    if len(c) != len(a):
        raise ValueError(f"dimension mismatch: {len(c)} vs {len(a)}")
    return rat(sum(Fraction(x) * Fraction(y) for x, y in zip(c, a)))


def scale(m, a: Sequence) -> ExpVec:
    """m * a componentwise."""
    return tuple(rat(Fraction(m) * Fraction(x)) for x in a)


def add(a: Sequence, b: Sequence) -> ExpVec:
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(b)}")
    return tuple(rat(Fraction(x) + Fraction(y)) for x, y in zip(a, b))


def sub(a: Sequence, b: Sequence) -> tuple:
    """a - b componentwise; may be negative, so no vec() normalization."""
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(b)}")
    return tuple(rat(Fraction(x) - Fraction(y)) for x, y in zip(a, b))


def pareto_minimal(points: Iterable) -> list:
    """Pareto-minimal elements under the componentwise order.

    Points are tuples of rationals.  Sorted by total coordinate sum first:
    any dominator of p has strictly smaller sum, so it suffices to check
    new points against the already accepted minimal ones.
    """
    ordered = sorted(set(points), key=lambda p: (sum(p), p))
    minimal: list = []
    for p in ordered:
        if not any(all(x <= y for x, y in zip(m, p)) for m in minimal):
            minimal.append(p)
    return minimal


def rat_str(x: Rational) -> str:
    """Canonical string form 'p' or 'p/q'."""
    return str(x)


def vec_str(a) -> str:
    if a is INF:
        return "inf"
    return "(" + ",".join(rat_str(x) for x in a) + ")"
