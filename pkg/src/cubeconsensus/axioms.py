"""Mechanical axiom checking for consensus functions on the n-cube.

Hosts the naive brute-force oracle (the independent ground truth for every
closed form), the degenerate example functions f1/f2/f3, and checkers for
the translation, consistency, majority, minority and restricted-range
axioms, in exhaustive or seeded-randomized mode.  Failing verdicts always
carry a replayable counterexample witness.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, Iterator, List, Optional, Union

from .consensus import (
    FLOAT_SCORE_TOL,
    anti_median,
    center,
    condorcet_ties,
    lp_consensus,
    maj,
    median,
    min_vertex,
)
from .cube import GuardExceededError, Vertex, xor
from .profiles import Profile, check_exponent, concat, translate

DEFAULT_ORACLE_GUARD = 25


class InvariantError(RuntimeError):
    """A consensus function broke its contract (empty or ill-typed output)."""


WinnerSet = FrozenSet[Vertex]


@dataclass(frozen=True)
class ConsensusFunction:
    """A named map from profiles to non-empty winner sets.

    Every call is checked against the range contract: the output must be a
    non-empty set of vertices of the profile's dimension.  Results are
    memoized for small profiles since the axiom checkers revisit translated
    copies of the same profile many times.
    """

    name: str
    fn: Callable[[Profile], WinnerSet]
    _cache: Dict[tuple, WinnerSet] = field(
        default_factory=dict, compare=False, repr=False
    )

    def __call__(self, pi: Profile) -> WinnerSet:
        key = None
        if pi.k <= 16 and pi.n <= 16:
            key = (pi.n, tuple(pi.as_ints()))
            cached = self._cache.get(key)
            if cached is not None:
                return cached
        out = frozenset(self.fn(pi))
        if not out:
            raise InvariantError(f"{self.name} returned an empty winner set")
        for v in out:
            if not isinstance(v, Vertex) or v.n != pi.n:
                raise InvariantError(
                    f"{self.name} returned a non-vertex or wrong-dimension winner"
                )
        if key is not None:
            self._cache[key] = out
        return out


def builtin(name: str, p: Optional[float] = None) -> ConsensusFunction:
    """The built-in consensus functions: med, cen, mean, lp(p), am, f1, f2, f3."""
    if name == "med":
        return ConsensusFunction("med", lambda pi: median(pi).winners)
    if name == "am":
        return ConsensusFunction("am", lambda pi: anti_median(pi).winners)
    if name == "cen":
        return ConsensusFunction("cen", lambda pi: center(pi).winners)
    if name == "mean":
        return ConsensusFunction("mean", lambda pi: lp_consensus(pi, 2).winners)
    if name == "lp":
        if p is None:
            raise ValueError("lp requires an exponent p")
        p = check_exponent(p)
        return ConsensusFunction(f"lp({p:g})", lambda pi: lp_consensus(pi, p).winners)
    if name == "f1":
        # projection onto the first ballot
        return ConsensusFunction("f1", lambda pi: frozenset([pi[0]]))
    if name == "f2":
        # constant function returning the whole vertex set
        return ConsensusFunction(
            "f2", lambda pi: frozenset(Vertex(pi.n, b) for b in range(1 << pi.n))
        )
    if name == "f3":
        # support: the set of vertices appearing in the profile
        return ConsensusFunction("f3", lambda pi: frozenset(pi))
    raise ValueError(f"unknown builtin consensus function: {name!r}")


# ---------------------------------------------------------------------------
# Brute-force oracle.

OBJECTIVES = ("eccentricity", "status", "lp_status")


def oracle_argopt(
    pi: Profile,
    objective: str,
    sense: str,
    p: Optional[float] = None,
    guard: int = DEFAULT_ORACLE_GUARD,
) -> "OracleOutcome":
    """Exact optimum by evaluating every vertex, deliberately naively.

    No Gray-code increments, no column tricks: an independent cross-check
    for the fast paths in the consensus module.
    """
    if objective not in OBJECTIVES:
        raise ValueError(f"unknown objective {objective!r}")
    if sense not in ("minimize", "maximize"):
        raise ValueError(f"sense must be minimize or maximize, got {sense!r}")
    n = pi.n
    if n > guard:
        raise GuardExceededError(
            f"oracle refuses 2^{n} vertices (guard limit {guard})"
        )
    ballots = pi.as_ints()
    float_scores = False
    if objective == "lp_status":
        p = check_exponent(p if p is not None else 1)
        float_scores = not float(p).is_integer()
        ip = None if float_scores else int(p)

    def score(x: int):
        ds = [(x ^ b).bit_count() for b in ballots]
        if objective == "eccentricity":
            return max(ds)
        if objective == "status":
            return sum(ds)
        if float_scores:
            return float(sum(d**p for d in ds))
        return sum(d**ip for d in ds)

    tol = FLOAT_SCORE_TOL if float_scores else 0
    best = None
    cands: List[int] = []
    for x in range(1 << n):
        s = score(x)
        if best is None:
            best, cands = s, [x]
        elif sense == "minimize":
            if s < best - tol:
                best, cands = s, [x]
            elif s <= best + tol:
                cands.append(x)
                best = min(best, s)
        else:
            if s > best + tol:
                best, cands = s, [x]
            elif s >= best - tol:
                cands.append(x)
                best = max(best, s)
    if tol:
        if sense == "minimize":
            cands = [x for x in cands if score(x) <= best + tol]
        else:
            cands = [x for x in cands if score(x) >= best - tol]
    return OracleOutcome(
        winners=frozenset(Vertex(n, x) for x in cands),
        score=best,
        objective=objective,
        sense=sense,
        p=p if objective == "lp_status" else None,
    )


@dataclass(frozen=True)
class OracleOutcome:
    winners: WinnerSet
    score: Union[int, float]
    objective: str
    sense: str
    p: Optional[float] = None


def oracle_function(
    objective: str,
    sense: str,
    p: Optional[float] = None,
    guard: int = DEFAULT_ORACLE_GUARD,
) -> ConsensusFunction:
    """Wrap the oracle as a consensus function for use in axiom checks."""
    tag = f"oracle-{objective}-{sense}" + (f"-p{p:g}" if p is not None else "")
    return ConsensusFunction(
        tag, lambda pi: oracle_argopt(pi, objective, sense, p=p, guard=guard).winners
    )


# ---------------------------------------------------------------------------
# Profile enumeration and sampling.


def enumerate_profiles(n: int, k_max: int) -> Iterator[Profile]:
    """All profiles of dimension n with length 1..k_max.

    Order is lexicographic over (k, entries-as-integers), which keeps report
    output stable.
    """
    for k in range(1, k_max + 1):
        for combo in itertools.product(range(1 << n), repeat=k):
            yield Profile.from_ints(n, combo)


def profile_space_size(n: int, k_max: int) -> int:
    return sum((1 << n) ** k for k in range(1, k_max + 1))


def random_profile(rng: random.Random, n: int, k: int) -> Profile:
    return Profile.from_ints(n, [rng.randrange(1 << n) for _ in range(k)])


@dataclass(frozen=True)
class Exhaustive:
    """Iterate every profile with dimension n_min..n_max and length <= k_max."""

    n_max: int = 3
    k_max: int = 3
    n_min: int = 1

    def describe(self) -> Dict[str, object]:
        return {
            "mode": "exhaustive",
            "n_min": self.n_min,
            "n_max": self.n_max,
            "k_max": self.k_max,
        }


@dataclass(frozen=True)
class Randomized:
    """Sample `trials` random profiles (dimension <= n_max, length <= k_max)."""

    trials: int = 200
    seed: int = 0
    n_max: int = 8
    k_max: int = 6

    def describe(self) -> Dict[str, object]:
        return {
            "mode": "randomized",
            "trials": self.trials,
            "seed": self.seed,
            "n_max": self.n_max,
            "k_max": self.k_max,
        }


Mode = Union[Exhaustive, Randomized]


def _iter_profiles(mode: Mode) -> Iterator[Profile]:
    if isinstance(mode, Exhaustive):
        for n in range(mode.n_min, mode.n_max + 1):
            yield from enumerate_profiles(n, mode.k_max)
    else:
        rng = random.Random(mode.seed)
        for _ in range(mode.trials):
            n = rng.randint(1, mode.n_max)
            k = rng.randint(1, mode.k_max)
            yield random_profile(rng, n, k)


def _pass_result(mode: Mode) -> str:
    return "holds" if isinstance(mode, Exhaustive) else "holds-within-trials"


def _seed(mode: Mode) -> Optional[int]:
    return mode.seed if isinstance(mode, Randomized) else None


@dataclass(frozen=True)
class AxiomVerdict:
    """Outcome of one axiom check on one function."""

    axiom: str
    function: str
    mode: Dict[str, object]
    result: str  # holds | fails | holds-within-trials | inapplicable
    witness: Optional[Dict[str, object]] = None
    seed: Optional[int] = None
    profiles_checked: int = 0

    def __post_init__(self) -> None:
        if self.result == "fails" and self.witness is None:
            raise InvariantError("a failing verdict must carry a witness")

    @property
    def holds(self) -> bool:
        return self.result in ("holds", "holds-within-trials")

    def to_dict(self) -> Dict[str, object]:
        d: Dict[str, object] = {
            "axiom": self.axiom,
            "function": self.function,
            "mode": self.mode,
            "result": self.result,
            "profiles_checked": self.profiles_checked,
        }
        if self.witness is not None:
            d["witness"] = self.witness
        if self.seed is not None:
            d["seed"] = self.seed
        return d


def _bitstrings(vs: WinnerSet) -> List[str]:
    return sorted(v.to_bitstring() for v in vs)


# ---------------------------------------------------------------------------
# Axiom checkers.


def check_translation(f: ConsensusFunction, mode: Mode) -> AxiomVerdict:
    """Translation: u in f(pi) iff u XOR v in f(pi XOR v), for all u, v."""
    checked = 0
    for pi in _iter_profiles(mode):
        checked += 1
        base = f(pi)
        n = pi.n
        if isinstance(mode, Exhaustive):
            shifts: Iterator[int] = iter(range(1 << n))
        else:
            rng = random.Random((mode.seed, checked).__hash__())
            shifts = iter([rng.randrange(1 << n) for _ in range(3)])
        for vb in shifts:
            v = Vertex(n, vb)
            expected = frozenset(xor(w, v) for w in base)
            actual = f(translate(pi, v))
            if expected != actual:
                u = next(iter(expected.symmetric_difference(actual)))
                return AxiomVerdict(
                    axiom="T",
                    function=f.name,
                    mode=mode.describe(),
                    result="fails",
                    witness={
                        "profile": pi.to_bitstrings(),
                        "v": v.to_bitstring(),
                        "u": u.to_bitstring(),
                        "translated_base_winners": _bitstrings(expected),
                        "translated_profile_winners": _bitstrings(actual),
                    },
                    seed=_seed(mode),
                    profiles_checked=checked,
                )
    return AxiomVerdict(
        axiom="T",
        function=f.name,
        mode=mode.describe(),
        result=_pass_result(mode),
        seed=_seed(mode),
        profiles_checked=checked,
    )


def check_agreement(
    f: ConsensusFunction, g: ConsensusFunction, x0: Vertex, mode: Mode
) -> AxiomVerdict:
    """Agreement at x0: x0 in f(pi) iff x0 in g(pi), over profiles of x0's dimension."""
    n = x0.n
    checked = 0
    if isinstance(mode, Exhaustive):
        profiles: Iterator[Profile] = enumerate_profiles(n, mode.k_max)
    else:
        rng = random.Random(mode.seed)
        profiles = (
            random_profile(rng, n, rng.randint(1, mode.k_max))
            for _ in range(mode.trials)
        )
    for pi in profiles:
        checked += 1
        in_f = x0 in f(pi)
        in_g = x0 in g(pi)
        if in_f != in_g:
            return AxiomVerdict(
                axiom=f"Agreement({x0.to_bitstring()})",
                function=f"{f.name}/{g.name}",
                mode=mode.describe(),
                result="fails",
                witness={
                    "profile": pi.to_bitstrings(),
                    "x0": x0.to_bitstring(),
                    "in_first": in_f,
                    "in_second": in_g,
                },
                seed=_seed(mode),
                profiles_checked=checked,
            )
    return AxiomVerdict(
        axiom=f"Agreement({x0.to_bitstring()})",
        function=f"{f.name}/{g.name}",
        mode=mode.describe(),
        result=_pass_result(mode),
        seed=_seed(mode),
        profiles_checked=checked,
    )


def verify_theorem1(
    f: ConsensusFunction,
    g: ConsensusFunction,
    x0: Union[Vertex, Callable[[int], Vertex]],
    bounds: Exhaustive,
) -> AxiomVerdict:
    """Translation-invariant functions that agree at one vertex must be equal.

    Confirms, within the exhaustive bounds, that agreement at x0 forces
    f(pi) = g(pi) everywhere.  A discrepancy here while both functions pass
    the translation check indicates an implementation bug, so this doubles
    as the suite's self-diagnostic.
    """
    label = f"{f.name}/{g.name}"
    for h in (f, g):
        t = check_translation(h, bounds)
        if not t.holds:
            return AxiomVerdict(
                axiom="Theorem1",
                function=label,
                mode=bounds.describe(),
                result="inapplicable",
                witness={"reason": f"{h.name} violates (T)", "detail": t.witness},
            )
    x0_for = (lambda n: x0) if isinstance(x0, Vertex) else x0
    n_range = (
        [x0.n] if isinstance(x0, Vertex) else range(bounds.n_min, bounds.n_max + 1)
    )
    checked = 0
    for n in n_range:
        anchor = x0_for(n)
        for pi in enumerate_profiles(n, bounds.k_max):
            checked += 1
            if (anchor in f(pi)) != (anchor in g(pi)):
                return AxiomVerdict(
                    axiom="Theorem1",
                    function=label,
                    mode=bounds.describe(),
                    result="inapplicable",
                    witness={
                        "reason": "functions do not agree at the anchor vertex",
                        "profile": pi.to_bitstrings(),
                        "x0": anchor.to_bitstring(),
                    },
                )
            left, right = f(pi), g(pi)
            if left != right:
                return AxiomVerdict(
                    axiom="Theorem1",
                    function=label,
                    mode=bounds.describe(),
                    result="fails",
                    witness={
                        "profile": pi.to_bitstrings(),
                        "first_winners": _bitstrings(left),
                        "second_winners": _bitstrings(right),
                    },
                    profiles_checked=checked,
                )
    return AxiomVerdict(
        axiom="Theorem1",
        function=label,
        mode=bounds.describe(),
        result="holds",
        profiles_checked=checked,
    )


def check_consistency(f: ConsensusFunction, mode: Mode) -> AxiomVerdict:
    """Consistency: shared winners of two profiles are exactly the winners of
    their concatenation."""
    checked = 0

    def pairs() -> Iterator[tuple]:
        if isinstance(mode, Exhaustive):
            for n in range(mode.n_min, mode.n_max + 1):
                space = list(enumerate_profiles(n, mode.k_max))
                for pi1 in space:
                    for pi2 in space:
                        yield pi1, pi2
        else:
            rng = random.Random(mode.seed)
            for _ in range(mode.trials):
                n = rng.randint(1, mode.n_max)
                yield (
                    random_profile(rng, n, rng.randint(1, mode.k_max)),
                    random_profile(rng, n, rng.randint(1, mode.k_max)),
                )

    for pi1, pi2 in pairs():
        checked += 1
        w1, w2 = f(pi1), f(pi2)
        inter = w1 & w2
        if not inter:
            continue
        joint = f(concat(pi1, pi2))
        if joint != inter:
            return AxiomVerdict(
                axiom="C",
                function=f.name,
                mode=mode.describe(),
                result="fails",
                witness={
                    "profile1": pi1.to_bitstrings(),
                    "profile2": pi2.to_bitstrings(),
                    "intersection": _bitstrings(inter),
                    "concatenation_winners": _bitstrings(joint),
                },
                seed=_seed(mode),
                profiles_checked=checked,
            )
    return AxiomVerdict(
        axiom="C",
        function=f.name,
        mode=mode.describe(),
        result=_pass_result(mode),
        seed=_seed(mode),
        profiles_checked=checked,
    )


def _membership_check(
    f: ConsensusFunction,
    mode: Mode,
    axiom: str,
    required: Callable[[Profile], Vertex],
) -> AxiomVerdict:
    checked = 0
    for pi in _iter_profiles(mode):
        checked += 1
        must = required(pi)
        winners = f(pi)
        if must not in winners:
            return AxiomVerdict(
                axiom=axiom,
                function=f.name,
                mode=mode.describe(),
                result="fails",
                witness={
                    "profile": pi.to_bitstrings(),
                    "required_member": must.to_bitstring(),
                    "winners": _bitstrings(winners),
                },
                seed=_seed(mode),
                profiles_checked=checked,
            )
    return AxiomVerdict(
        axiom=axiom,
        function=f.name,
        mode=mode.describe(),
        result=_pass_result(mode),
        seed=_seed(mode),
        profiles_checked=checked,
    )


def check_maj(f: ConsensusFunction, mode: Mode) -> AxiomVerdict:
    """The majority vertex belongs to every winner set."""
    return _membership_check(f, mode, "Maj", maj)


def check_min(f: ConsensusFunction, mode: Mode) -> AxiomVerdict:
    """The minority vertex belongs to every winner set."""
    return _membership_check(f, mode, "Min", min_vertex)


def check_rr(f: ConsensusFunction, mode: Mode) -> AxiomVerdict:
    """Restricted range: at most 2^(number of tied coordinates) winners."""
    checked = 0
    for pi in _iter_profiles(mode):
        checked += 1
        bound = 1 << condorcet_ties(pi).cs
        winners = f(pi)
        if len(winners) > bound:
            return AxiomVerdict(
                axiom="RR",
                function=f.name,
                mode=mode.describe(),
                result="fails",
                witness={
                    "profile": pi.to_bitstrings(),
                    "winner_count": len(winners),
                    "bound": bound,
                    "winners": _bitstrings(winners),
                },
                seed=_seed(mode),
                profiles_checked=checked,
            )
    return AxiomVerdict(
        axiom="RR",
        function=f.name,
        mode=mode.describe(),
        result=_pass_result(mode),
        seed=_seed(mode),
        profiles_checked=checked,
    )


def check_intersection_condition(
    f: ConsensusFunction,
    dimension: int,
    guard: int = DEFAULT_ORACLE_GUARD,
    k_max: int = 2,
) -> AxiomVerdict:
    """Do all single-vertex winner sets share a common vertex?

    Together with translation and consistency this is the hypothesis set
    forcing f to be the constant full-set function; when all three hold the
    conclusion is verified on every profile with length <= k_max.
    """
    n = dimension
    if n > guard:
        raise GuardExceededError(f"refusing 2^{n} single-vertex profiles")
    inter: Optional[WinnerSet] = None
    for b in range(1 << n):
        w = f(Profile([Vertex(n, b)]))
        inter = w if inter is None else (inter & w)
        if not inter:
            break
    mode = {"mode": "exhaustive", "n": n, "k_max": k_max}
    if not inter:
        return AxiomVerdict(
            axiom="IntersectionCondition",
            function=f.name,
            mode=mode,
            result="fails",
            witness={"failed_hypothesis": "intersection", "intersection": []},
            profiles_checked=1 << n,
        )
    t = check_translation(f, Exhaustive(n, k_max, n_min=n))
    if not t.holds:
        return AxiomVerdict(
            axiom="IntersectionCondition",
            function=f.name,
            mode=mode,
            result="fails",
            witness={"failed_hypothesis": "T", "detail": t.witness},
            profiles_checked=t.profiles_checked,
        )
    c = check_consistency(f, Exhaustive(n, k_max, n_min=n))
    if not c.holds:
        return AxiomVerdict(
            axiom="IntersectionCondition",
            function=f.name,
            mode=mode,
            result="fails",
            witness={"failed_hypothesis": "C", "detail": c.witness},
            profiles_checked=c.profiles_checked,
        )
    full = frozenset(Vertex(n, b) for b in range(1 << n))
    checked = 0
    for pi in enumerate_profiles(n, k_max):
        checked += 1
        if f(pi) != full:
            return AxiomVerdict(
                axiom="IntersectionCondition",
                function=f.name,
                mode=mode,
                result="fails",
                witness={
                    "failed_hypothesis": "conclusion",
                    "profile": pi.to_bitstrings(),
                    "winners": _bitstrings(f(pi)),
                },
                profiles_checked=checked,
            )
    return AxiomVerdict(
        axiom="IntersectionCondition",
        function=f.name,
        mode=mode,
        result="holds",
        witness={"intersection": _bitstrings(inter)},
        profiles_checked=checked,
    )
