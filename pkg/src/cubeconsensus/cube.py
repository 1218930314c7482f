"""Vertices of the n-dimensional hypercube and the primitive operations on them.

A vertex is a 0/1 vector of length n, stored packed (bit i-1 of an integer
holds coordinate i).  All coordinate indices in the public API are 1-based;
the packed representation is 0-based internally.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Tuple

MAX_DIMENSION = 1024
DEFAULT_ENUMERATION_GUARD = 25


class DimensionMismatchError(ValueError):
    """Two vertices (or a vertex and a profile) of different dimensions were mixed."""


class GuardExceededError(RuntimeError):
    """An exponential-size computation was refused because it exceeds its guard limit."""


@dataclass(frozen=True, slots=True)
class Vertex:
    """An immutable vertex of Q_n: `bits` packs coordinate i into bit i-1."""

    n: int
    bits: int

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_DIMENSION:
            raise ValueError(f"dimension must be in 1..{MAX_DIMENSION}, got {self.n}")
        if not 0 <= self.bits < (1 << self.n):
            raise ValueError(
                f"packed bits {self.bits:#x} not canonical for dimension {self.n}"
            )

    @classmethod
    def from_bitstring(cls, s: str) -> "Vertex":
        """Parse the text form: coordinate 1 is the leftmost character."""
        if not s or any(c not in "01" for c in s):
            raise ValueError(f"not a 0/1 bitstring: {s!r}")
        bits = 0
        for i, c in enumerate(s):
            if c == "1":
                bits |= 1 << i
        return cls(len(s), bits)

    @classmethod
    def from_coords(cls, coords) -> "Vertex":
        return cls.from_bitstring("".join(str(int(c)) for c in coords))

    def to_bitstring(self) -> str:
        return "".join("1" if (self.bits >> i) & 1 else "0" for i in range(self.n))

    def coord(self, j: int) -> int:
        """Coordinate j, 1-based."""
        if not 1 <= j <= self.n:
            raise IndexError(f"coordinate {j} out of range 1..{self.n}")
        return (self.bits >> (j - 1)) & 1

    def complement(self) -> "Vertex":
        return Vertex(self.n, self.bits ^ ((1 << self.n) - 1))

    def __xor__(self, other: "Vertex") -> "Vertex":
        return xor(self, other)

    def __str__(self) -> str:
        return self.to_bitstring()


def zero(n: int) -> Vertex:
    """The all-zeros vertex of Q_n."""
    return Vertex(n, 0)


def ones(n: int) -> Vertex:
    """The all-ones vertex of Q_n."""
    return Vertex(n, (1 << n) - 1)


def unit_vertex(n: int, j: int) -> Vertex:
    """The vertex with a single 1 in coordinate j (1-based)."""
    if not 1 <= j <= n:
        raise ValueError(f"coordinate {j} out of range 1..{n}")
    return Vertex(n, 1 << (j - 1))


def _check_dims(u: Vertex, v: Vertex) -> None:
    if u.n != v.n:
        raise DimensionMismatchError(f"dimension mismatch: {u.n} vs {v.n}")


def xor(u: Vertex, v: Vertex) -> Vertex:
    """Coordinatewise modulo-2 sum."""
    _check_dims(u, v)
    return Vertex(u.n, u.bits ^ v.bits)


def hamming(u: Vertex, v: Vertex) -> int:
    """Number of coordinates where u and v differ."""
    _check_dims(u, v)
    return (u.bits ^ v.bits).bit_count()


def norm(u: Vertex) -> int:
    """Number of ones in u (the distance from the all-zeros vertex)."""
    return u.bits.bit_count()


def leq(u: Vertex, v: Vertex) -> bool:
    """Coordinatewise order: the one-set of u is contained in the one-set of v."""
    _check_dims(u, v)
    return u.bits & ~v.bits == 0


def enumerate_vertices(
    n: int, guard: int = DEFAULT_ENUMERATION_GUARD
) -> Iterator[Tuple[Vertex, Optional[int]]]:
    """Yield all 2^n vertices in reflected Gray-code order.

    Each item is (vertex, flipped) where `flipped` is the 1-based coordinate
    that changed from the previous vertex (None for the first).  Consecutive
    vertices are at Hamming distance 1, which lets scans update per-ballot
    distances incrementally.
    """
    if n > guard:
        raise GuardExceededError(
            f"refusing to enumerate 2^{n} vertices (guard limit {guard}); "
            "raise the guard explicitly if you really want this"
        )
    g = 0
    yield Vertex(n, 0), None
    for i in range(1, 1 << n):
        j = (i & -i).bit_length() - 1  # trailing zeros of i
        g ^= 1 << j
        yield Vertex(n, g), j + 1
