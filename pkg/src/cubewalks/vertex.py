"""Bit-packed hypercube vertices and the spin operation.

A vertex of {-1,+1}^n is stored as an n-bit integer: bit i set means
coordinate i equals +1. Coordinates are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass

# Four 64-bit words in the accelerated kernels.
MAX_DIM = 256


@dataclass(frozen=True)
class Vertex:
    """Immutable point of the n-dimensional hypercube."""

    n: int
    bits: int

    def __post_init__(self):
        if not 1 <= self.n <= MAX_DIM:
            raise ValueError(f"dimension must be in [1, {MAX_DIM}], got {self.n}")
        if self.bits >> self.n:
            raise ValueError("bits set beyond dimension")

    def coordinate(self, i: int) -> int:
        """The value (+1 or -1) of coordinate i."""
        if not 0 <= i < self.n:
            raise ValueError(f"coordinate {i} out of range for dimension {self.n}")
        return 1 if (self.bits >> i) & 1 else -1

    def to_tuple(self) -> tuple[int, ...]:
        return tuple(self.coordinate(i) for i in range(self.n))


def spin(v: Vertex, j: int) -> Vertex:
    """Flip coordinate j of v; an involution."""
    if not 0 <= j < v.n:
        raise ValueError(f"spin index {j} out of range for dimension {v.n}")
    return Vertex(v.n, v.bits ^ (1 << j))


def hamming(a: Vertex, b: Vertex) -> int:
    """Number of coordinates where a and b differ."""
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} != {b.n}")
    return (a.bits ^ b.bits).bit_count()


def all_plus(n: int) -> Vertex:
    """The vertex (+1, ..., +1)."""
    return Vertex(n, (1 << n) - 1)


def all_minus(n: int) -> Vertex:
    """The vertex (-1, ..., -1)."""
    return Vertex(n, 0)
