"""Profiles (ballot sequences) on the n-cube and the remoteness measures.

A profile is an ordered, non-empty sequence of vertices of equal dimension.
Internally the ballots are packed into a (k, words) uint64 matrix so that
distance computations are bit-parallel via popcount.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, List, Sequence, Tuple, Union

import numpy as np

from .cube import DimensionMismatchError, MAX_DIMENSION, Vertex, zero

_WORD_BITS = 64

Number = Union[int, float]

# Exact integer power sums are used whenever they fit comfortably in int64;
# larger integral exponents fall back to arbitrary-precision Python ints.
_INT64_SAFE = 1 << 62


def check_exponent(p: float) -> float:
    p = float(p)
    if not np.isfinite(p) or p < 1:
        raise ValueError(f"exponent must be a finite real >= 1, got {p}")
    return p


def _pack_matrix(matrix: np.ndarray) -> np.ndarray:
    """Pack a (k, n) 0/1 matrix into (k, words) uint64, little-endian bit order."""
    k, n = matrix.shape
    words = (n + _WORD_BITS - 1) // _WORD_BITS
    packed = np.packbits(matrix, axis=1, bitorder="little")
    padded = np.zeros((k, words * 8), dtype=np.uint8)
    padded[:, : packed.shape[1]] = packed
    return padded.view(np.uint64)


class Profile:
    """An ordered non-empty sequence of ballots (vertices of one dimension)."""

    __slots__ = ("n", "k", "_words")

    def __init__(self, entries: Iterable[Vertex]):
        entries = list(entries)
        if not entries:
            raise ValueError("a profile must contain at least one ballot")
        n = entries[0].n
        for e in entries:
            if e.n != n:
                raise DimensionMismatchError(
                    f"mixed dimensions in profile: {n} vs {e.n}"
                )
        self.n = n
        self.k = len(entries)
        words = (n + _WORD_BITS - 1) // _WORD_BITS
        buf = b"".join(e.bits.to_bytes(words * 8, "little") for e in entries)
        self._words = np.frombuffer(buf, dtype=np.uint64).reshape(self.k, words)

    @classmethod
    def _from_words(cls, n: int, words: np.ndarray) -> "Profile":
        self = object.__new__(cls)
        self.n = n
        self.k = words.shape[0]
        self._words = words
        return self

    @classmethod
    def from_matrix(cls, matrix: np.ndarray) -> "Profile":
        """Build a profile from a (k, n) array of 0/1 values, one ballot per row."""
        matrix = np.asarray(matrix)
        if matrix.ndim != 2 or matrix.shape[0] < 1:
            raise ValueError(f"expected a non-empty 2-D ballot matrix, got shape {matrix.shape}")
        n = matrix.shape[1]
        if not 1 <= n <= MAX_DIMENSION:
            raise ValueError(f"dimension must be in 1..{MAX_DIMENSION}, got {n}")
        matrix = matrix.astype(np.uint8, copy=False)
        if not np.isin(matrix, (0, 1)).all():
            raise ValueError("ballot matrix entries must be 0 or 1")
        return cls._from_words(n, _pack_matrix(matrix))

    @classmethod
    def from_bitstrings(cls, strings: Sequence[str]) -> "Profile":
        return cls(Vertex.from_bitstring(s) for s in strings)

    @classmethod
    def from_ints(cls, n: int, values: Iterable[int]) -> "Profile":
        return cls(Vertex(n, v) for v in values)

    # -- sequence protocol -------------------------------------------------

    def __len__(self) -> int:
        return self.k

    def __getitem__(self, i: int) -> Vertex:
        row = self._words[i]
        return Vertex(self.n, int.from_bytes(row.tobytes(), "little"))

    def __iter__(self) -> Iterator[Vertex]:
        for i in range(self.k):
            yield self[i]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Profile):
            return NotImplemented
        return self.n == other.n and np.array_equal(self._words, other._words)

    def __repr__(self) -> str:
        return f"Profile(n={self.n}, k={self.k})"

    # -- bulk views --------------------------------------------------------

    def as_ints(self) -> List[int]:
        return [v.bits for v in self]

    def to_bitstrings(self) -> List[str]:
        return [v.to_bitstring() for v in self]

    def bit_matrix(self) -> np.ndarray:
        """The (k, n) 0/1 matrix of ballots, one row per ballot."""
        bytes_view = self._words.view(np.uint8).reshape(self.k, -1)
        bits = np.unpackbits(bytes_view, axis=1, bitorder="little")
        return bits[:, : self.n]

    def _vertex_words(self, x: Vertex) -> np.ndarray:
        words = self._words.shape[1]
        return np.frombuffer(x.bits.to_bytes(words * 8, "little"), dtype=np.uint64)

    def distances(self, x: Vertex) -> np.ndarray:
        """Hamming distance from x to every ballot, as an int64 array of length k."""
        if x.n != self.n:
            raise DimensionMismatchError(f"dimension mismatch: {x.n} vs {self.n}")
        return np.bitwise_count(self._words ^ self._vertex_words(x)).sum(
            axis=1, dtype=np.int64
        )

    def entry_norms(self) -> np.ndarray:
        return np.bitwise_count(self._words).sum(axis=1, dtype=np.int64)


@dataclass(frozen=True)
class ColumnStats:
    """Per-coordinate counts of ones across a profile."""

    n: int
    k: int
    sums: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.sums) != self.n:
            raise ValueError("one column sum per coordinate required")
        if any(not 0 <= c <= self.k for c in self.sums):
            raise ValueError("column sums must lie in 0..k")


def column_sums(pi: Profile) -> ColumnStats:
    """Count, for each coordinate, how many ballots have a 1 there."""
    sums = pi.bit_matrix().sum(axis=0, dtype=np.int64)
    return ColumnStats(pi.n, pi.k, tuple(int(c) for c in sums))


def translate(pi: Profile, v: Vertex) -> Profile:
    """Apply x -> x XOR v to every ballot."""
    if v.n != pi.n:
        raise DimensionMismatchError(f"dimension mismatch: {v.n} vs {pi.n}")
    return Profile._from_words(pi.n, pi._words ^ pi._vertex_words(v))


def concat(pi1: Profile, pi2: Profile) -> Profile:
    """The ballots of pi1 followed by the ballots of pi2."""
    if pi1.n != pi2.n:
        raise DimensionMismatchError(f"dimension mismatch: {pi1.n} vs {pi2.n}")
    return Profile._from_words(pi1.n, np.vstack([pi1._words, pi2._words]))


def profile_norm(pi: Profile) -> int:
    """Maximum number of ones over the ballots; the eccentricity of the origin."""
    return int(pi.entry_norms().max())


def eccentricity(x: Vertex, pi: Profile) -> int:
    """Maximum distance from x to a ballot."""
    return int(pi.distances(x).max())


def status(x: Vertex, pi: Profile) -> int:
    """Sum of distances from x to the ballots."""
    return int(pi.distances(x).sum())


def _power_sum(dists: np.ndarray, n: int, p: float) -> Number:
    """Sum of p-th powers of the given distances; exact for integral p."""
    p = check_exponent(p)
    if p == 1.0:
        return int(dists.sum())
    if p.is_integer():
        ip = int(p)
        if len(dists) * (max(n, 1) ** ip) < _INT64_SAFE:
            table = np.arange(n + 1, dtype=np.int64) ** ip
            return int(table[dists].sum())
        values, counts = np.unique(dists, return_counts=True)
        return sum(int(c) * int(v) ** ip for v, c in zip(values, counts))
    table = np.arange(n + 1, dtype=np.float64) ** p
    return float(table[dists].sum())


def lp_status(x: Vertex, pi: Profile, p: float) -> Number:
    """Sum of p-th powers of the distances from x to the ballots.

    p = 1 reproduces `status` exactly; p = 2 is the square status.
    """
    return _power_sum(pi.distances(x), pi.n, p)


def square_status(x: Vertex, pi: Profile) -> int:
    return lp_status(x, pi, 2)


def char_p(pi: Profile, p: float) -> Number:
    """Sum of p-th powers of the ballot norms; the l_p remoteness of the origin."""
    return _power_sum(pi.entry_norms(), pi.n, p)
