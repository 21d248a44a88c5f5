"""Exponent vectors of monomials.

An exponent vector is a point of N_0^n, the exponent ``m`` of a monomial
``x^m = x_1^{m_1} ... x_n^{m_n}``.  Support and total degree are cached on
first access because the rest of the library queries them constantly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable


@dataclass(frozen=True)
class ExponentVector:
    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.coords, tuple):
            object.__setattr__(self, "coords", tuple(self.coords))
        for c in self.coords:
            if not isinstance(c, int):
                raise ValueError(f"exponent entries must be exact integers, got {c!r}")
            if c < 0:
                raise ValueError(f"exponent entries must be nonnegative, got {c}")

    @cached_property
    def length(self) -> int:
        """Total degree |m| = sum of the coordinates."""
        return sum(self.coords)

    @cached_property
    def support(self) -> tuple[int, ...]:
        """Sorted indices of the nonzero coordinates."""
        return tuple(j for j, c in enumerate(self.coords) if c)

    @cached_property
    def support_mask(self) -> int:
        return sum(1 << j for j in self.support)

    @property
    def grlex_key(self) -> tuple[int, tuple[int, ...]]:
        """Sort key for the graded lexicographic order (degree, then lex)."""
        return (self.length, self.coords)

    def leq(self, other: "ExponentVector") -> bool:
        """Componentwise comparison m <= q."""
        return all(a <= b for a, b in zip(self.coords, other.coords))

    def __add__(self, other: "ExponentVector") -> "ExponentVector":
        if len(self.coords) != len(other.coords):
            raise ValueError("dimension mismatch")
        return ExponentVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)


def ev(*coords: int) -> ExponentVector:
    """Shorthand constructor: ev(2, 0, 1) == ExponentVector((2, 0, 1))."""
    return ExponentVector(tuple(coords))


def as_exponent_vector(value: ExponentVector | Iterable[int]) -> ExponentVector:
    if isinstance(value, ExponentVector):
        return value
    return ExponentVector(tuple(value))
