"""Scikit-learn compatible wrapper around the scoring core.

`ContripScorer` is a stateless transformer: each input row is a
(rating, consensus) pair and each output element is the fused score.
It exists so the score composes with pipelines, grid search and the
rest of the sklearn ecosystem; exact-arithmetic work stays in the
functional API.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .errors import DomainError
from .score import Weights, analytic_min


class ContripScorer(BaseEstimator, TransformerMixin):
    """Map (rating, consensus) pairs to consensus-fused scores.

    Parameters
    ----------
    alpha : float, default=0.5
        Coefficient of the consensus adjustment added to the rating.
    beta : float, default=10.0
        Divisor of the disagreement penalty.
    delta : float, default=100.0
        Divisor of the rating-differentiation offset.
    scaling : bool, default=True
        When True, transform returns scores rescaled onto [1, 5];
        otherwise the raw scores.

    Attributes
    ----------
    weights_ : Weights
        Validated coefficients, set by fit.
    scale_range_ : tuple of float
        (r_min, r_max, t_min, t_max) of the affine rescaling.
    n_features_in_ : int
        Always 2.
    """

    def __init__(self, alpha=0.5, beta=10.0, delta=100.0, scaling=True):
        self.alpha = alpha
        self.beta = beta
        self.delta = delta
        self.scaling = scaling

    def fit(self, X, y=None):
        """Validate parameters and input shape; computes the scale range."""
        self._check_pairs(X)
        self.weights_ = Weights(alpha=self.alpha, beta=self.beta, delta=self.delta)
        minimum = analytic_min(self.weights_)
        self.scale_range_ = (float(minimum.value), 5.0, 1.0, 5.0)
        self.n_features_in_ = 2
        return self

    def transform(self, X):
        """Score each (rating, consensus) row; returns shape (n,) float64."""
        check_is_fitted(self, "weights_")
        X = self._check_pairs(X)
        rating, consensus = X[:, 0], X[:, 1]
        alpha = float(self.weights_.alpha)
        beta = float(self.weights_.beta)
        delta = float(self.weights_.delta)
        term1 = np.minimum(5.0, rating + (consensus - 0.5) * alpha)
        raw = term1 - (1.0 - consensus) * rating / beta - (5.0 - rating) / delta
        if not self.scaling:
            return raw
        r_min, r_max, t_min, t_max = self.scale_range_
        scaled = (t_max - t_min) * (raw - r_min) / (r_max - r_min) + t_min
        return np.clip(scaled, t_min, t_max)

    @staticmethod
    def _check_pairs(X):
        X = check_array(X, dtype=np.float64)
        if X.shape[1] != 2:
            raise DomainError(f"expected 2 columns (rating, consensus), got {X.shape[1]}")
        bad_rating = np.flatnonzero((X[:, 0] < 1.0) | (X[:, 0] > 5.0))
        if bad_rating.size:
            row = int(bad_rating[0])
            raise DomainError(
                f"rating {X[row, 0]:g} at row {row} is outside the legal range [1, 5]"
            )
        bad_consensus = np.flatnonzero((X[:, 1] < 0.0) | (X[:, 1] > 1.0))
        if bad_consensus.size:
            row = int(bad_consensus[0])
            raise DomainError(
                f"consensus {X[row, 1]:g} at row {row} is outside the legal range [0, 1]"
            )
        return X
