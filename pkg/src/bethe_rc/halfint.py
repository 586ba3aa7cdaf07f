"""Exact half-integer arithmetic.

Bethe quantum numbers are half-integers whose integer/half-odd parity
carries physical meaning, so they are stored exactly as doubled integers
rather than floats.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True, order=True)
class HalfInt:
    """A number of the form doubled/2 with doubled an exact integer."""

    doubled: int

    def __post_init__(self) -> None:
        if not isinstance(self.doubled, int):
            raise TypeError(f"doubled must be int, got {type(self.doubled).__name__}")

    # ---- construction helpers ----

    @classmethod
    def from_float(cls, x: float, tol: float = 1e-6) -> "HalfInt":
        """Snap a float to the nearest half-integer; reject if farther than tol."""
        d = round(2.0 * x)
        if abs(2.0 * x - d) > 2.0 * tol:
            raise ValueError(f"{x!r} is not within {tol} of a half-integer")
        return cls(int(d))

    # ---- queries ----

    @property
    def is_integer(self) -> bool:
        return self.doubled % 2 == 0

    @property
    def is_half_odd(self) -> bool:
        return self.doubled % 2 != 0

    def as_fraction(self) -> Fraction:
        return Fraction(self.doubled, 2)

    def __float__(self) -> float:
        return self.doubled / 2.0

    # ---- exact arithmetic ----

    def __add__(self, other: "HalfInt | int") -> "HalfInt":
        if isinstance(other, HalfInt):
            return HalfInt(self.doubled + other.doubled)
        if isinstance(other, int):
            return HalfInt(self.doubled + 2 * other)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other: "HalfInt | int") -> "HalfInt":
        if isinstance(other, HalfInt):
            return HalfInt(self.doubled - other.doubled)
        if isinstance(other, int):
            return HalfInt(self.doubled - 2 * other)
        return NotImplemented

    def __rsub__(self, other: "HalfInt | int") -> "HalfInt":
        if isinstance(other, int):
            return HalfInt(2 * other - self.doubled)
        return NotImplemented

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.doubled)

    def __mul__(self, k: int) -> "HalfInt":
        if isinstance(k, int):
            return HalfInt(self.doubled * k)
        return NotImplemented

    __rmul__ = __mul__

    def __str__(self) -> str:
        if self.is_integer:
            return str(self.doubled // 2)
        return f"{self.doubled}/2"

    def __repr__(self) -> str:
        return f"HalfInt({self.doubled})"
