"""Scikit-learn style wrappers around the consensus functions.

Each estimator fits on a (k, n) 0/1 ballot matrix and exposes the optimal
vertex set as `winners_` (sorted bitstrings) with the optimal objective
value in `score_`.  `predict` snaps arbitrary 0/1 rows to the nearest
winner, so fitted consensus outcomes compose with pipeline-style code.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from . import consensus
from .profiles import Profile


def validate_ballot_matrix(X) -> np.ndarray:
    """Coerce to a (k, n) uint8 0/1 matrix, rejecting anything else."""
    X = np.asarray(X)
    if X.ndim != 2:
        raise ValueError(f"expected a 2-D ballot matrix, got {X.ndim}-D input")
    if X.shape[0] < 1 or X.shape[1] < 1:
        raise ValueError(f"ballot matrix must be non-empty, got shape {X.shape}")
    if not np.isin(X, (0, 1)).all():
        raise ValueError("ballot matrix entries must be 0 or 1")
    return X.astype(np.uint8, copy=False)


class _ConsensusEstimator(BaseEstimator):
    """Shared fit/predict machinery; subclasses supply `_solve`."""

    def _solve(self, profile: Profile) -> consensus.ConsensusOutcome:
        raise NotImplementedError

    def fit(self, X, y=None):
        X = validate_ballot_matrix(X)
        outcome = self._solve(Profile.from_matrix(X))
        self.n_features_in_ = X.shape[1]
        self.winners_ = outcome.sorted_winners()
        self.winner_matrix_ = np.array(
            [[int(c) for c in w] for w in self.winners_], dtype=np.uint8
        )
        self.score_ = outcome.score
        return self

    def predict(self, X):
        """Return, for each row, the nearest winner (ties break to the
        lexicographically smallest bitstring)."""
        if not hasattr(self, "winner_matrix_"):
            raise NotFittedError(f"{type(self).__name__} is not fitted yet")
        X = validate_ballot_matrix(X)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(
                f"expected {self.n_features_in_} columns, got {X.shape[1]}"
            )
        # winner_matrix_ rows are already in sorted order, and argmin takes
        # the first minimum, which implements the tie-break.
        dists = (X[:, None, :] != self.winner_matrix_[None, :, :]).sum(axis=2)
        return self.winner_matrix_[dists.argmin(axis=1)]


class MedianConsensus(_ConsensusEstimator):
    """Closed-form minimizer of the sum of Hamming distances."""

    def __init__(self, max_tie_expansion: int = consensus.DEFAULT_TIE_EXPANSION_GUARD):
        self.max_tie_expansion = max_tie_expansion

    def _solve(self, profile):
        return consensus.median(profile, max_tie_expansion=self.max_tie_expansion)


class AntiMedianConsensus(_ConsensusEstimator):
    """Closed-form maximizer of the sum of Hamming distances."""

    def __init__(self, max_tie_expansion: int = consensus.DEFAULT_TIE_EXPANSION_GUARD):
        self.max_tie_expansion = max_tie_expansion

    def _solve(self, profile):
        return consensus.anti_median(profile, max_tie_expansion=self.max_tie_expansion)


class CenterConsensus(_ConsensusEstimator):
    """Exhaustive minimizer of the maximum Hamming distance."""

    def __init__(
        self, max_scan_n: int = consensus.DEFAULT_SCAN_GUARD, workers: int = 1
    ):
        self.max_scan_n = max_scan_n
        self.workers = workers

    def _solve(self, profile):
        return consensus.center(
            profile, max_scan_n=self.max_scan_n, workers=self.workers
        )


class LpConsensus(_ConsensusEstimator):
    """Exhaustive minimizer of the sum of p-th powers of Hamming distances."""

    def __init__(
        self,
        p: float = 2.0,
        max_scan_n: int = consensus.DEFAULT_SCAN_GUARD,
        workers: int = 1,
    ):
        self.p = p
        self.max_scan_n = max_scan_n
        self.workers = workers

    def _solve(self, profile):
        return consensus.lp_consensus(
            profile, self.p, max_scan_n=self.max_scan_n, workers=self.workers
        )
