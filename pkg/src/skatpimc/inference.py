"""Deal weighting from a card-location matrix.

A location matrix L is (32, 4) row-stochastic: L[c, loc] is the modeled
probability that card c started in location loc (hand 0, hand 1, hand 2,
skat).  Assuming independence across cards, a full deal's weight is the
product of its 32 per-card factors; weights are combined in the log
domain and normalized with a max shift so uniform rows give an exactly
uniform distribution.
"""

from __future__ import annotations

import logging

import numpy as np

from .state import Deal

logger = logging.getLogger(__name__)


def location_log_matrix(L: np.ndarray) -> np.ndarray:
    """Elementwise log of a location matrix, -inf for zero entries."""
    with np.errstate(divide="ignore"):
        return np.log(np.asarray(L, dtype=np.float64))


def deal_log_weight(L: np.ndarray, deal: Deal) -> float:
    """Log of the full 32-card product (Eq. 1 numerator); -inf if any
    factor is zero."""
    logL = location_log_matrix(L)
    return float(logL[np.arange(32), deal.location_vector()].sum())


def deal_weight(L: np.ndarray, deal: Deal) -> float:
    return float(np.exp(deal_log_weight(L, deal)))


def weight_distribution(L: np.ndarray, deals: list[Deal]) -> np.ndarray:
    """Normalized deal probabilities; uniform fallback when every deal
    has weight zero under L."""
    if not deals:
        raise ValueError("empty deal list")
    logL = location_log_matrix(L)
    locs = np.array([d.location_vector() for d in deals], dtype=np.int64)
    logw = logL[np.arange(32)[None, :], locs].sum(axis=1)
    return normalize_log_weights(logw)


def normalize_log_weights(logw: np.ndarray) -> np.ndarray:
    """exp-and-normalize with max shift; equal inputs give an exactly
    uniform vector (the shifted exponent is 0.0 for every entry)."""
    logw = np.asarray(logw, dtype=np.float64)
    peak = logw.max()
    if not np.isfinite(peak):
        logger.warning(
            "all %d deal weights underflowed to zero; falling back to uniform",
            logw.size,
        )
        return np.full(logw.size, 1.0 / logw.size)
    w = np.exp(logw - peak)
    return w / w.sum()
