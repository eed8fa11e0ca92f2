"""Exact half-integer quantum numbers and bounded symmetric eigenvalue ladders.

Everything downstream indexes states by eigenvalues that may be half-integers
(the qubit case has half-width 1/2).  Values are stored as doubled integers so
that ladder arithmetic and comparisons stay exact; floats only appear when a
value is explicitly converted.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering


@total_ordering
@dataclass(frozen=True)
class HalfInt:
    """A number of the form doubled/2 with doubled an exact integer."""

    doubled: int

    def __post_init__(self):
        if not isinstance(self.doubled, int):
            raise TypeError(f"doubled must be int, got {type(self.doubled).__name__}")

    @classmethod
    def from_value(cls, v) -> "HalfInt":
        """Build from an int/float lying exactly on the half-integer grid."""
        if isinstance(v, HalfInt):
            return v
        d = 2 * v
        if d != round(d):
            raise ValueError(f"{v!r} is not a half-integer")
        return cls(int(round(d)))

    @property
    def value(self) -> float:
        return self.doubled / 2

    def is_integer(self) -> bool:
        return self.doubled % 2 == 0

    def __add__(self, other: "HalfInt") -> "HalfInt":
        return HalfInt(self.doubled + other.doubled)

    def __sub__(self, other: "HalfInt") -> "HalfInt":
        return HalfInt(self.doubled - other.doubled)

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.doubled)

    def __abs__(self) -> "HalfInt":
        return HalfInt(abs(self.doubled))

    def __lt__(self, other: "HalfInt") -> bool:
        return self.doubled < other.doubled

    def __float__(self) -> float:
        return self.doubled / 2

    def __str__(self) -> str:
        if self.doubled % 2 == 0:
            return str(self.doubled // 2)
        return f"{self.doubled}/2"

    def __repr__(self) -> str:
        return f"HalfInt({self.doubled})"


def as_halfint(v) -> HalfInt:
    """Coerce HalfInt | int | float to HalfInt."""
    return HalfInt.from_value(v)


@dataclass(frozen=True)
class Spectrum:
    """The eigenvalue ladder -x, -x+1, ..., +x for a half-integer x >= 0.

    A spectrum is a pure value type: two spectra are equal iff their
    half-widths are.
    """

    half_width: HalfInt

    def __init__(self, half_width):
        object.__setattr__(self, "half_width", as_halfint(half_width))
        if self.half_width.doubled < 0:
            raise ValueError(f"half_width must be >= 0, got {self.half_width}")

    @property
    def dimension(self) -> int:
        """Number of ladder values, 2*half_width + 1."""
        return self.half_width.doubled + 1

    def values(self) -> list[HalfInt]:
        """Ladder values in ascending order; length equals dimension."""
        hw2 = self.half_width.doubled
        return [HalfInt(d) for d in range(-hw2, hw2 + 1, 2)]

    def values_doubled(self) -> range:
        """Doubled ladder values as a range (ascending, step 2)."""
        hw2 = self.half_width.doubled
        return range(-hw2, hw2 + 1, 2)

    def index_of(self, v: HalfInt) -> int | None:
        """Index of v on the ladder, or None if off-range or off-step."""
        v = as_halfint(v)
        hw2 = self.half_width.doubled
        if abs(v.doubled) > hw2 or (v.doubled - hw2) % 2 != 0:
            return None
        return (v.doubled + hw2) // 2

    def contains(self, v: HalfInt) -> bool:
        return self.index_of(v) is not None

    def __str__(self) -> str:
        return f"Spectrum(±{self.half_width})"
