"""Consensus functions on the n-cube.

Median and anti-median come in closed form from column sums: the majority
(resp. minority) vertex, expanded by every subset of the tied coordinates.
Center and the l_p functions scan all 2^n vertices in Gray-code order,
updating the k ballot distances incrementally (one coordinate flips per
step, so each distance changes by exactly +-1).
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from .cube import GuardExceededError, Vertex
from .profiles import (
    Number,
    Profile,
    check_exponent,
    column_sums,
    _INT64_SAFE,
)

DEFAULT_SCAN_GUARD = 25
DEFAULT_TIE_EXPANSION_GUARD = 20

# Absolute tolerance for argmin collection when scores are floating point
# (non-integral p).  Exact ties must not be split by rounding.
FLOAT_SCORE_TOL = 1e-9

# Below this much total work the pure-Python scan beats numpy call overhead.
_SMALL_SCAN_WORK = 2_000_000


@dataclass(frozen=True)
class TieSet:
    """Coordinates where exactly half the ballots vote 1."""

    coordinates: FrozenSet[int]  # 1-based

    @property
    def cs(self) -> int:
        return len(self.coordinates)


@dataclass(frozen=True)
class ConsensusOutcome:
    """The complete optimal vertex set together with the optimal score."""

    winners: FrozenSet[Vertex]
    score: Number
    function: str
    p: Optional[float] = None

    def sorted_winners(self) -> List[str]:
        return sorted(v.to_bitstring() for v in self.winners)

    def to_dict(self) -> Dict[str, object]:
        d: Dict[str, object] = {
            "function": self.function,
            "winners": self.sorted_winners(),
            "score": self.score,
        }
        if self.p is not None:
            d["p"] = self.p
        return d


def maj(pi: Profile) -> Vertex:
    """The majority vertex: coordinate i is 1 iff strictly more than half vote 1."""
    stats = column_sums(pi)
    bits = 0
    for i, c in enumerate(stats.sums):
        if 2 * c > stats.k:
            bits |= 1 << i
    return Vertex(pi.n, bits)


def min_vertex(pi: Profile) -> Vertex:
    """The minority vertex: coordinate i is 1 iff strictly fewer than half vote 1."""
    stats = column_sums(pi)
    bits = 0
    for i, c in enumerate(stats.sums):
        if 2 * c < stats.k:
            bits |= 1 << i
    return Vertex(pi.n, bits)


def condorcet_ties(pi: Profile) -> TieSet:
    """The coordinates tied at exactly half the ballots (empty when k is odd)."""
    stats = column_sums(pi)
    return TieSet(
        frozenset(i + 1 for i, c in enumerate(stats.sums) if 2 * c == stats.k)
    )


def _expand_ties(seed: Vertex, tie_coords: Sequence[int], guard: int) -> FrozenSet[Vertex]:
    """seed XOR (every subset of the unit vertices at the tied coordinates)."""
    ties = sorted(tie_coords)
    if len(ties) > guard:
        raise GuardExceededError(
            f"{len(ties)} tied coordinates would expand to 2^{len(ties)} winners "
            f"(guard limit {guard}); pass max_tie_expansion to override"
        )
    winners = []
    for mask in range(1 << len(ties)):
        bits = seed.bits
        for t, j in enumerate(ties):
            if (mask >> t) & 1:
                bits ^= 1 << (j - 1)
        winners.append(Vertex(seed.n, bits))
    return frozenset(winners)


def median(
    pi: Profile, max_tie_expansion: int = DEFAULT_TIE_EXPANSION_GUARD
) -> ConsensusOutcome:
    """The full set of status-minimizing vertices, in closed form.

    The status decomposes per coordinate, so the optimum is the majority
    vertex and the optimal set is its expansion over the tied coordinates;
    no 2^n scan is needed.
    """
    stats = column_sums(pi)
    ties = condorcet_ties(pi)
    winners = _expand_ties(maj(pi), ties.coordinates, max_tie_expansion)
    score = sum(min(c, stats.k - c) for c in stats.sums)
    return ConsensusOutcome(winners, score, "med")


def anti_median(
    pi: Profile, max_tie_expansion: int = DEFAULT_TIE_EXPANSION_GUARD
) -> ConsensusOutcome:
    """The full set of status-maximizing vertices, in closed form."""
    stats = column_sums(pi)
    ties = condorcet_ties(pi)
    winners = _expand_ties(min_vertex(pi), ties.coordinates, max_tie_expansion)
    score = sum(max(c, stats.k - c) for c in stats.sums)
    return ConsensusOutcome(winners, score, "am")


# ---------------------------------------------------------------------------
# Gray-code scans for center and l_p.


def _power_table(n: int, k: int, p: float) -> Tuple[Sequence[Number], bool]:
    """Table of d^p for d in 0..n; second item tells whether scores are exact ints."""
    if p.is_integer():
        ip = int(p)
        if k * (max(n, 1) ** ip) < _INT64_SAFE:
            return np.arange(n + 1, dtype=np.int64) ** ip, True
        return [d**ip for d in range(n + 1)], True
    return np.arange(n + 1, dtype=np.float64) ** p, False


def _scan_segment_python(
    pi: Profile,
    objective: str,
    table: Optional[Sequence[Number]],
    start: int,
    stop: int,
) -> Tuple[Number, List[int]]:
    """Scan Gray-code positions [start, stop); return (best, candidate vertex ints).

    Candidates may contain near-misses; the caller filters against the merged
    best score.
    """
    ballots = pi.as_ints()
    if isinstance(table, np.ndarray):
        table = table.tolist()  # native int/float scores
    g = start ^ (start >> 1)
    dvec = [(g ^ b).bit_count() for b in ballots]
    if objective == "ecc":
        score: Number = max(dvec)
    else:
        score = sum(table[d] for d in dvec)
    best = score
    cands = [g]
    for i in range(start + 1, stop):
        j = (i & -i).bit_length() - 1
        g ^= 1 << j
        newbit = (g >> j) & 1
        for t, b in enumerate(ballots):
            if ((b >> j) & 1) == newbit:
                dvec[t] -= 1
            else:
                dvec[t] += 1
        if objective == "ecc":
            score = max(dvec)
        else:
            score = sum(table[d] for d in dvec)
        if score < best - FLOAT_SCORE_TOL:
            best = score
            cands = [g]
        elif score <= best + FLOAT_SCORE_TOL:
            cands.append(g)
    return best, cands


def _scan_segment_numpy(
    pi: Profile,
    objective: str,
    table: Optional[np.ndarray],
    start: int,
    stop: int,
) -> Tuple[Number, List[int]]:
    """Same contract as the Python segment scan, with vectorized distance updates."""
    n = pi.n
    bits = pi.bit_matrix().astype(np.int32)
    # Per-coordinate distance deltas when the scan point's coordinate becomes 1.
    cols_to_1 = [np.ascontiguousarray(1 - 2 * bits[:, j]) for j in range(n)]
    cols_to_0 = [-c for c in cols_to_1]
    exact = table is None or np.issubdtype(np.asarray(table).dtype, np.integer)
    tol = 0 if exact else FLOAT_SCORE_TOL

    g = start ^ (start >> 1)
    dvec = pi.distances(Vertex(n, g)).astype(np.int32)
    if objective == "ecc":
        score: Number = int(dvec.max())
    else:
        score = table[dvec].sum()
        score = int(score) if exact else float(score)
    best = score
    cands = [g]
    for i in range(start + 1, stop):
        j = (i & -i).bit_length() - 1
        g ^= 1 << j
        dvec += cols_to_1[j] if (g >> j) & 1 else cols_to_0[j]
        if objective == "ecc":
            score = int(dvec.max())
        else:
            s = table[dvec].sum()
            score = int(s) if exact else float(s)
        if score < best - tol:
            best = score
            cands = [g]
        elif score <= best + tol:
            cands.append(g)
    return best, cands


def _gray_scan(
    pi: Profile,
    objective: str,
    p: Optional[float],
    max_scan_n: int,
    workers: int,
) -> Tuple[Number, FrozenSet[Vertex]]:
    n = pi.n
    if n > max_scan_n:
        raise GuardExceededError(
            f"refusing a full scan of 2^{n} vertices (guard limit {max_scan_n}); "
            "pass max_scan_n to override"
        )
    if objective == "ecc":
        table = None
        exact = True
    else:
        table, exact = _power_table(n, pi.k, p)
    total = 1 << n
    use_numpy = total * pi.k > _SMALL_SCAN_WORK and not isinstance(table, list)
    segment = _scan_segment_numpy if use_numpy else _scan_segment_python

    workers = max(1, workers)
    if workers == 1 or total < 4 * workers:
        results = [segment(pi, objective, table, 0, total)]
    else:
        bounds = np.linspace(0, total, workers + 1, dtype=np.int64)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(
                pool.map(
                    lambda se: segment(pi, objective, table, int(se[0]), int(se[1])),
                    zip(bounds[:-1], bounds[1:]),
                )
            )
    tol = 0 if exact else FLOAT_SCORE_TOL
    best = min(r[0] for r in results)
    winner_ints = set()
    for _seg_best, cands in results:
        winner_ints.update(cands)
    # Segment candidate lists may hold near-misses relative to the merged
    # best, so re-score the survivors before declaring winners.
    if exact:
        winners = frozenset(
            Vertex(n, g)
            for g in winner_ints
            if _score_of(pi, objective, table, g) == best
        )
    else:
        winners = frozenset(
            Vertex(n, g)
            for g in winner_ints
            if _score_of(pi, objective, table, g) <= best + tol
        )
    return best, winners


def _score_of(pi: Profile, objective: str, table, g: int) -> Number:
    d = pi.distances(Vertex(pi.n, g))
    if objective == "ecc":
        return int(d.max())
    if isinstance(table, list):
        return sum(table[x] for x in d)
    s = np.asarray(table)[d].sum()
    return int(s) if np.issubdtype(np.asarray(table).dtype, np.integer) else float(s)


def center(
    pi: Profile, max_scan_n: int = DEFAULT_SCAN_GUARD, workers: int = 1
) -> ConsensusOutcome:
    """The full set of eccentricity-minimizing vertices, by exhaustive scan."""
    best, winners = _gray_scan(pi, "ecc", None, max_scan_n, workers)
    return ConsensusOutcome(winners, best, "cen")


def lp_consensus(
    pi: Profile,
    p: float,
    max_scan_n: int = DEFAULT_SCAN_GUARD,
    workers: int = 1,
) -> ConsensusOutcome:
    """The full set of vertices minimizing the sum of p-th powers of distances.

    p = 1 agrees with the closed-form median; p = 2 is the mean function.
    """
    p = check_exponent(p)
    best, winners = _gray_scan(pi, "lp", p, max_scan_n, workers)
    return ConsensusOutcome(winners, best, "lp", p=p)


def mean(
    pi: Profile, max_scan_n: int = DEFAULT_SCAN_GUARD, workers: int = 1
) -> ConsensusOutcome:
    """Alias for the l_2 consensus."""
    return lp_consensus(pi, 2, max_scan_n=max_scan_n, workers=workers)
