"""Boolean assignments on finite and infinite vertex sets, and the convergence metric.

Bit-order convention, fixed once and reused by every serialization in this
package: vertex 0 is the least significant bit of a packed bitvector, and
position i of a 0/1 string is the value at vertex i.

Infinite assignments are restricted to the eventually constant ones: a
finite prefix followed by a constant tail.  These are the finitely
describable points on which images, distances, and fixed-point residuals
can be computed exactly.  Distances are exact dyadic values (0 or 2^-k),
never floats: two points at distance below 2^-k agree on every index from
0 through k.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Iterator

__all__ = [
    "Assignment",
    "DyadicDistance",
    "EventuallyConstantAssignment",
    "DEFAULT_ENUMERATION_CAP",
    "enumerate_assignments",
    "metric_distance",
    "same_outside",
]

DEFAULT_ENUMERATION_CAP = 24


@dataclass(frozen=True)
class Assignment:
    """A point of 2^V for V = {0..n-1}, packed into one integer."""

    n: int
    bits: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"length must be non-negative, got {self.n}")
        if not 0 <= self.bits < (1 << self.n):
            raise ValueError(f"bits {self.bits} out of range for length {self.n}")

    def bit(self, v: int) -> int:
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} outside 0..{self.n - 1}")
        return (self.bits >> v) & 1

    def flip(self, v: int) -> "Assignment":
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} outside 0..{self.n - 1}")
        return Assignment(self.n, self.bits ^ (1 << v))

    @classmethod
    def from_string(cls, text: str) -> "Assignment":
        """Parse a 0/1 string; position i is the value at vertex i."""
        if any(c not in "01" for c in text):
            raise ValueError(f"assignment string must be over 0/1, got {text!r}")
        bits = 0
        for i, c in enumerate(text):
            if c == "1":
                bits |= 1 << i
        return cls(len(text), bits)

    def to_string(self) -> str:
        return "".join(str((self.bits >> i) & 1) for i in range(self.n))

    def __str__(self) -> str:
        return self.to_string()


def enumerate_assignments(n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> Iterator[Assignment]:
    """All 2^n assignments in ascending integer order (vertex-0 bit varies fastest)."""
    if n > cap:
        raise ValueError(f"length {n} over enumeration cap {cap}")
    for bits in range(1 << n):
        yield Assignment(n, bits)


def same_outside(a: Assignment, b: Assignment, inside: Iterable[int]) -> bool:
    """True iff ``a`` and ``b`` agree at every vertex not in ``inside``."""
    if a.n != b.n:
        raise ValueError(f"length mismatch: {a.n} != {b.n}")
    inside_mask = 0
    for v in inside:
        if not 0 <= v < a.n:
            raise ValueError(f"vertex {v} outside 0..{a.n - 1}")
        inside_mask |= 1 << v
    outside_mask = ((1 << a.n) - 1) & ~inside_mask
    return (a.bits ^ b.bits) & outside_mask == 0


@dataclass(frozen=True)
class EventuallyConstantAssignment:
    """A point of 2^omega: finite prefix, then one bit repeated forever.

    Kept in canonical form (the last prefix bit differs from the tail), so
    structural equality is pointwise equality.  The text form is
    ``"<prefix>|<tail>"``, e.g. ``"0001|0"``; the empty prefix is ``"|0"``.
    """

    prefix: tuple[int, ...] = ()
    tail: int = 0

    def __post_init__(self) -> None:
        if self.tail not in (0, 1):
            raise ValueError(f"tail must be 0 or 1, got {self.tail}")
        if any(b not in (0, 1) for b in self.prefix):
            raise ValueError("prefix bits must be 0 or 1")
        prefix = self.prefix
        while prefix and prefix[-1] == self.tail:
            prefix = prefix[:-1]
        if prefix is not self.prefix:
            object.__setattr__(self, "prefix", prefix)

    @classmethod
    def constant(cls, bit: int) -> "EventuallyConstantAssignment":
        return cls((), bit)

    @classmethod
    def single_one(cls, k: int) -> "EventuallyConstantAssignment":
        """The point with a 1 at index k and 0 everywhere else."""
        if k < 0:
            raise ValueError(f"index must be non-negative, got {k}")
        return cls((0,) * k + (1,), 0)

    @classmethod
    def from_text(cls, text: str) -> "EventuallyConstantAssignment":
        head, sep, tail_text = text.partition("|")
        if not sep or tail_text not in ("0", "1"):
            raise ValueError(f"expected '<prefix bits>|<tail bit>', got {text!r}")
        if any(c not in "01" for c in head):
            raise ValueError(f"prefix must be over 0/1, got {head!r}")
        return cls(tuple(int(c) for c in head), int(tail_text))

    def to_text(self) -> str:
        return "".join(str(b) for b in self.prefix) + "|" + str(self.tail)

    def value_at(self, i: int) -> int:
        if i < 0:
            raise ValueError(f"index must be non-negative, got {i}")
        return self.prefix[i] if i < len(self.prefix) else self.tail

    @property
    def prefix_length(self) -> int:
        return len(self.prefix)

    def __str__(self) -> str:
        return self.to_text()


@total_ordering
@dataclass(frozen=True)
class DyadicDistance:
    """An exact distance value: zero, or 2^-exponent for exponent >= 0."""

    exponent: int | None  # None encodes zero

    def __post_init__(self) -> None:
        if self.exponent is not None and self.exponent < 0:
            raise ValueError(f"exponent must be non-negative, got {self.exponent}")

    @classmethod
    def zero(cls) -> "DyadicDistance":
        return cls(None)

    @classmethod
    def inverse_power(cls, k: int) -> "DyadicDistance":
        return cls(k)

    @property
    def is_zero(self) -> bool:
        return self.exponent is None

    def __lt__(self, other: "DyadicDistance") -> bool:
        if not isinstance(other, DyadicDistance):
            return NotImplemented
        if self.exponent is None:
            return other.exponent is not None
        if other.exponent is None:
            return False
        return self.exponent > other.exponent

    def as_fraction(self) -> Fraction:
        if self.exponent is None:
            return Fraction(0)
        return Fraction(1, 1 << self.exponent)

    def __str__(self) -> str:
        if self.exponent is None:
            return "0"
        if self.exponent == 0:
            return "1"
        return f"2^-{self.exponent}"


def metric_distance(
    x: EventuallyConstantAssignment, y: EventuallyConstantAssignment
) -> DyadicDistance:
    """First-difference distance: 0 if x = y pointwise, else 2^-k for the least k with x_k != y_k.

    Decidable because beyond both prefixes the points are their constant
    tails: if no difference shows up through the longer prefix, the points
    differ exactly when the tails do, first at that prefix length.
    """
    limit = max(len(x.prefix), len(y.prefix))
    for i in range(limit):
        if x.value_at(i) != y.value_at(i):
            return DyadicDistance.inverse_power(i)
    if x.tail != y.tail:
        return DyadicDistance.inverse_power(limit)
    return DyadicDistance.zero()
