"""Graph-level feature vectors built from a maximized GED-Walk group."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .graph import Graph
from .maximize import GroupResult, _Walks, maximize_lazy
from .walks import TailBoundConfig


@dataclass
class FeatureVector:
    values: np.ndarray
    group: GroupResult

    @property
    def score(self) -> float:
        return float(self.values[0])

    @property
    def histogram(self) -> np.ndarray:
        return self.values[1:]


def gain_histogram(gains: np.ndarray, bins: int) -> np.ndarray:
    """Equal-width histogram over [0, max(gains)]; the maximum lands in the last
    bin, and an all-zero input goes entirely to the first."""
    hist = np.zeros(bins)
    if len(gains) == 0:
        return hist
    top = float(gains.max())
    if top <= 0.0:
        hist[0] = len(gains)
        return hist
    idx = np.minimum((gains / top * bins).astype(np.int64), bins - 1)
    np.add.at(hist, np.clip(idx, 0, bins - 1), 1.0)
    return hist


def ged_feature_vector(
    g: Graph,
    k: int,
    bins: int,
    alpha: float,
    eps: float,
    cfg: Optional[TailBoundConfig] = None,
    threads: Optional[int] = None,
) -> FeatureVector:
    """``[GED_{<=ell}(S), histogram of marginal gains of the n - k non-members]``,
    with S from :func:`maximize_lazy` and gains taken at its final ell."""
    if not 1 <= k < g.n:
        raise ValueError(f"need 1 <= k < n, got k={k}, n={g.n}")
    if bins < 1:
        raise ValueError("need at least one bin")
    cfg = cfg or TailBoundConfig.for_graph(g, alpha)
    res = maximize_lazy(g, k, alpha, eps, cfg, threads)
    walks = _Walks(g, alpha, cfg, threads)
    mask = np.zeros(g.n, dtype=np.bool_)
    mask[res.members] = True
    walks.refresh(mask, res.ell)
    rest = np.flatnonzero(~mask)
    gains = np.array([walks.marginal(int(x)) for x in rest])
    values = np.concatenate([[res.score], gain_histogram(gains, bins)])
    return FeatureVector(values, res)
