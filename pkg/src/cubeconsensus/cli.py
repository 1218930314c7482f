"""Command-line front end: approval ballots in, consensus sets and axiom reports out.

Ballot files come in two formats:

* line format: one 0/1 string per ballot, '#' comments and blank lines ignored
* JSON: {"n": int, "candidates": [str]?, "ballots": [str]}

Winners are always emitted sorted by bitstring, so output is deterministic
and usable for golden-file testing.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, TextIO, Union

from . import axioms as axlab
from . import consensus
from .cube import GuardExceededError, Vertex
from .profiles import Profile, eccentricity, lp_status, status

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_GUARD = 3
EXIT_INVARIANT = 4


class BallotParseError(ValueError):
    """A ballot file failed validation; the message carries line diagnostics."""


@dataclass(frozen=True)
class BallotFile:
    """A validated approval-ballot file."""

    n: int
    ballots: List[str]
    candidates: Optional[List[str]] = None

    def __post_init__(self) -> None:
        if not self.ballots:
            raise BallotParseError("ballot file contains zero ballots")
        for i, b in enumerate(self.ballots):
            if len(b) != self.n:
                raise BallotParseError(
                    f"ballot {i + 1} has length {len(b)}, expected {self.n}"
                )
            bad = next((c for c in b if c not in "01"), None)
            if bad is not None:
                raise BallotParseError(
                    f"ballot {i + 1} contains illegal character {bad!r}"
                )
        if self.candidates is not None:
            if len(self.candidates) != self.n:
                raise BallotParseError(
                    f"{len(self.candidates)} candidate names for {self.n} coordinates"
                )
            if len(set(self.candidates)) != len(self.candidates):
                raise BallotParseError("duplicate candidate names")

    def profile(self) -> Profile:
        return Profile.from_bitstrings(self.ballots)

    def names_for(self, bitstring: str) -> List[str]:
        assert self.candidates is not None
        return [c for c, b in zip(self.candidates, bitstring) if b == "1"]

    def to_text(self) -> str:
        return "".join(b + "\n" for b in self.ballots)

    def to_json_obj(self) -> Dict[str, object]:
        obj: Dict[str, object] = {"n": self.n, "ballots": list(self.ballots)}
        if self.candidates is not None:
            obj["candidates"] = list(self.candidates)
        return obj


def parse_ballots(source: Union[str, TextIO]) -> BallotFile:
    """Parse a ballot file in either the line format or the JSON format."""
    text = source if isinstance(source, str) else source.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return _parse_json(text)
    return _parse_lines(text)


def _parse_json(text: str) -> BallotFile:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BallotParseError(f"invalid JSON ballot file: {exc}") from exc
    if not isinstance(obj, dict):
        raise BallotParseError("JSON ballot file must be an object")
    try:
        n = int(obj["n"])
        ballots = list(obj["ballots"])
    except KeyError as exc:
        raise BallotParseError(f"JSON ballot file missing key {exc}") from exc
    candidates = obj.get("candidates")
    if candidates is not None:
        candidates = [str(c) for c in candidates]
    return BallotFile(n, [str(b) for b in ballots], candidates)


def _parse_lines(text: str) -> BallotFile:
    ballots: List[str] = []
    n: Optional[int] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        bad = next((c for c in line if c not in "01"), None)
        if bad is not None:
            raise BallotParseError(
                f"line {lineno}: illegal character {bad!r} "
                f"(position {line.index(bad) + 1})"
            )
        if n is None:
            n = len(line)
        elif len(line) != n:
            raise BallotParseError(
                f"line {lineno}: ragged length {len(line)}, expected {n}"
            )
        ballots.append(line)
    if not ballots:
        raise BallotParseError("ballot file contains zero ballots")
    return BallotFile(n, ballots)


# ---------------------------------------------------------------------------
# Reporting helpers.


def _emit_json(obj: object, out: TextIO) -> None:
    out.write(json.dumps(obj, sort_keys=True) + "\n")


def _emit_outcome(
    outcome: consensus.ConsensusOutcome,
    ballots: BallotFile,
    fmt: str,
    out: TextIO,
) -> None:
    obj = outcome.to_dict()
    if ballots.candidates is not None:
        obj["winner_names"] = [ballots.names_for(w) for w in obj["winners"]]
    if fmt == "json":
        _emit_json(obj, out)
        return
    out.write(f"function: {outcome.function}\n")
    if outcome.p is not None:
        out.write(f"p: {outcome.p:g}\n")
    out.write(f"score: {outcome.score}\n")
    out.write("winners:\n")
    for w in outcome.sorted_winners():
        if ballots.candidates is not None:
            out.write(f"  {w}  {{{', '.join(ballots.names_for(w))}}}\n")
        else:
            out.write(f"  {w}\n")


def _builtin_target(name: str, p: Optional[float]) -> axlab.ConsensusFunction:
    if name == "lp":
        if p is None:
            raise BallotParseError("--target lp requires --p")
        return axlab.builtin("lp", p=p)
    return axlab.builtin(name)


def _axiom_battery(bounds: axlab.Exhaustive) -> List[axlab.AxiomVerdict]:
    """The full set of paper-claim checks at the given exhaustive bounds."""
    med = axlab.builtin("med")
    am = axlab.builtin("am")
    verdicts: List[axlab.AxiomVerdict] = []
    for f in (
        med,
        axlab.builtin("cen"),
        axlab.builtin("lp", p=1),
        axlab.builtin("lp", p=2),
        axlab.builtin("lp", p=2.5),
        am,
        axlab.builtin("f1"),
        axlab.builtin("f2"),
        axlab.builtin("f3"),
    ):
        verdicts.append(axlab.check_translation(f, bounds))
    verdicts.append(axlab.check_maj(med, bounds))
    verdicts.append(axlab.check_min(am, bounds))
    verdicts.append(axlab.check_rr(med, bounds))
    verdicts.append(axlab.check_rr(am, bounds))
    verdicts.append(axlab.check_rr(axlab.builtin("f2"), bounds))
    for name in ("f2", "med", "f3"):
        verdicts.append(
            axlab.check_intersection_condition(
                axlab.builtin(name), dimension=min(bounds.n_max, 3)
            )
        )
    return verdicts


def _target_battery(
    f: axlab.ConsensusFunction, bounds: axlab.Exhaustive
) -> List[axlab.AxiomVerdict]:
    return [
        axlab.check_translation(f, bounds),
        axlab.check_consistency(
            f, axlab.Exhaustive(min(bounds.n_max, 2), min(bounds.k_max, 2))
        ),
        axlab.check_maj(f, bounds),
        axlab.check_min(f, bounds),
        axlab.check_rr(f, bounds),
    ]


_SEARCH_CHECKS = {
    "T": axlab.check_translation,
    "C": axlab.check_consistency,
    "Maj": axlab.check_maj,
    "Min": axlab.check_min,
    "RR": axlab.check_rr,
}


def _emit_verdicts(verdicts: Sequence[axlab.AxiomVerdict], fmt: str, out: TextIO) -> None:
    if fmt == "json":
        _emit_json([v.to_dict() for v in verdicts], out)
        return
    for v in verdicts:
        out.write(f"{v.axiom:<22} {v.function:<28} {v.result}\n")
        if v.result == "fails":
            out.write(f"  witness: {json.dumps(v.witness, sort_keys=True)}\n")


# ---------------------------------------------------------------------------
# Entry point.


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cubeconsensus",
        description="Consensus functions and axiom checks for approval ballots "
        "on the n-cube.",
    )
    parser.add_argument(
        "function",
        choices=["med", "cen", "mean", "lp", "am", "maj", "score", "axioms", "search"],
        help="what to compute",
    )
    parser.add_argument(
        "ballots",
        nargs="?",
        help="ballot file; '-' or omitted reads stdin (unused by axioms/search)",
    )
    parser.add_argument("--p", type=float, default=None, help="exponent for lp/score")
    parser.add_argument("--format", choices=["text", "json"], default="text")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--vertex", help="bitstring to evaluate (score mode)")
    parser.add_argument("--max-scan-n", type=int, default=consensus.DEFAULT_SCAN_GUARD)
    parser.add_argument(
        "--max-tie-expansion", type=int, default=consensus.DEFAULT_TIE_EXPANSION_GUARD
    )
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument(
        "--exhaustive-bounds",
        default="3,3",
        metavar="N,K",
        help="dimension and profile-length bounds for axioms mode",
    )
    parser.add_argument(
        "--target",
        choices=["med", "cen", "mean", "lp", "am", "f1", "f2", "f3"],
        help="function under test (axioms/search modes)",
    )
    parser.add_argument(
        "--check", choices=sorted(_SEARCH_CHECKS), help="axiom to search (search mode)"
    )
    parser.add_argument(
        "--trials", type=int, default=500, help="random trials (search mode)"
    )
    return parser


def _parse_bounds(text: str) -> axlab.Exhaustive:
    try:
        n, k = (int(part) for part in text.split(","))
    except ValueError as exc:
        raise BallotParseError(f"--exhaustive-bounds expects N,K, got {text!r}") from exc
    if n < 1 or k < 1:
        raise BallotParseError("--exhaustive-bounds values must be >= 1")
    return axlab.Exhaustive(n, k)


def _read_ballots(args: argparse.Namespace) -> BallotFile:
    if args.ballots is None or args.ballots == "-":
        return parse_ballots(sys.stdin.read())
    with open(args.ballots, "r", encoding="utf-8") as fh:
        return parse_ballots(fh)


def _run(args: argparse.Namespace, out: TextIO) -> int:
    fmt = args.format
    mode = args.function

    if mode in ("med", "cen", "mean", "lp", "am"):
        ballots = _read_ballots(args)
        pi = ballots.profile()
        if mode == "med":
            outcome = consensus.median(pi, max_tie_expansion=args.max_tie_expansion)
        elif mode == "am":
            outcome = consensus.anti_median(
                pi, max_tie_expansion=args.max_tie_expansion
            )
        elif mode == "cen":
            outcome = consensus.center(
                pi, max_scan_n=args.max_scan_n, workers=args.workers
            )
        else:
            p = 2.0 if mode == "mean" else args.p
            if p is None:
                raise BallotParseError("lp requires --p")
            outcome = consensus.lp_consensus(
                pi, p, max_scan_n=args.max_scan_n, workers=args.workers
            )
        _emit_outcome(outcome, ballots, fmt, out)
        return EXIT_OK

    if mode == "maj":
        ballots = _read_ballots(args)
        pi = ballots.profile()
        ties = consensus.condorcet_ties(pi)
        obj = {
            "function": "maj",
            "majority": consensus.maj(pi).to_bitstring(),
            "minority": consensus.min_vertex(pi).to_bitstring(),
            "tie_coordinates": sorted(ties.coordinates),
            "condorcet_score": ties.cs,
        }
        if fmt == "json":
            _emit_json(obj, out)
        else:
            for key in ("majority", "minority", "tie_coordinates", "condorcet_score"):
                out.write(f"{key}: {obj[key]}\n")
        return EXIT_OK

    if mode == "score":
        if not args.vertex:
            raise BallotParseError("score mode requires --vertex")
        ballots = _read_ballots(args)
        pi = ballots.profile()
        x = Vertex.from_bitstring(args.vertex)
        p = args.p if args.p is not None else 2.0
        obj = {
            "vertex": x.to_bitstring(),
            "eccentricity": eccentricity(x, pi),
            "status": status(x, pi),
            "square_status": lp_status(x, pi, 2),
            "lp_status": lp_status(x, pi, p),
            "p": p,
        }
        if fmt == "json":
            _emit_json(obj, out)
        else:
            for key in ("vertex", "eccentricity", "status", "square_status", "p", "lp_status"):
                out.write(f"{key}: {obj[key]}\n")
        return EXIT_OK

    if mode == "axioms":
        bounds = _parse_bounds(args.exhaustive_bounds)
        if args.target:
            verdicts = _target_battery(_builtin_target(args.target, args.p), bounds)
        else:
            verdicts = _axiom_battery(bounds)
        _emit_verdicts(verdicts, fmt, out)
        return EXIT_OK

    if mode == "search":
        if not args.target or not args.check:
            raise BallotParseError("search mode requires --target and --check")
        bounds = _parse_bounds(args.exhaustive_bounds)
        rand = axlab.Randomized(
            trials=args.trials, seed=args.seed, n_max=bounds.n_max, k_max=bounds.k_max
        )
        f = _builtin_target(args.target, args.p)
        verdict = _SEARCH_CHECKS[args.check](f, rand)
        _emit_verdicts([verdict], fmt, out)
        return EXIT_OK

    raise AssertionError(f"unhandled mode {mode!r}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args, sys.stdout)
    except (BallotParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except GuardExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (axlab.InvariantError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    raise SystemExit(main())
