"""Brute-force references for small graphs.

Nothing here touches the walk kernels: walks are enumerated explicitly,
either one by one (:func:`enumerate_phi`) or grouped by the set of vertices
they visit (:func:`visited_set_profile`).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .graph import Graph

MAX_WALKS = 5_000_000
MAX_PROFILE_N = 14


class GuardRailError(RuntimeError):
    """Instance too large for exhaustive enumeration."""


@dataclass(frozen=True)
class WalkEnumeration:
    length: int
    hit: float
    total: float


def _neighbors(g: Graph):
    return [
        list(zip(g.successors(v).tolist(), g.out_w[g.out_ptr[v]:g.out_ptr[v + 1]].tolist()))
        for v in range(g.n)
    ]


def enumerate_walks(g: Graph, group: Iterable[int], i: int, max_walks: int = MAX_WALKS) -> WalkEnumeration:
    """Depth-first enumeration of every i-walk.

    Weighted graphs contribute the product of arc weights along each walk.
    """
    S = set(group)
    nbrs = _neighbors(g)
    budget = [max_walks]
    hit = 0.0
    total = 0.0

    def dfs(v, depth, weight, touched):
        nonlocal hit, total
        if depth == i:
            budget[0] -= 1
            if budget[0] < 0:
                raise GuardRailError(f"more than {max_walks} walks of length {i}")
            total += weight
            if touched:
                hit += weight
            return
        for u, w in nbrs[v]:
            dfs(u, depth + 1, weight * w, touched or u in S)

    for v in range(g.n):
        dfs(v, 0, 1.0, v in S)
    if not g.weighted:
        hit, total = int(hit), int(total)
    return WalkEnumeration(i, hit, total)


def enumerate_phi(g: Graph, group: Iterable[int], i: int, max_walks: int = MAX_WALKS):
    """Number (or total weight) of i-walks visiting at least one group vertex."""
    return enumerate_walks(g, group, i, max_walks).hit


def visited_set_profile(g: Graph, max_len: int) -> np.ndarray:
    """``prof[i, mask]`` = number (weight) of i-walks whose visited vertex set is ``mask``.

    Walk prefixes are tracked as (visited set, end vertex) pairs, one arc at a
    time. Exponential in n; guarded to ``n <= MAX_PROFILE_N``.
    """
    n = g.n
    if n > MAX_PROFILE_N:
        raise GuardRailError(f"visited-set profile limited to n <= {MAX_PROFILE_N}")
    exact = not g.weighted and n * max(g.deg_max, 1.0) ** max_len < 2.0**62
    dtype = np.int64 if exact else np.float64
    size = 1 << n
    dp = np.zeros((size, n), dtype=dtype)
    dp[1 << np.arange(n), np.arange(n)] = 1
    masks = np.arange(size)
    src, dst, w = g.arcs()
    prof = np.zeros((max_len + 1, size), dtype=dtype)
    prof[0] = dp.sum(axis=1)
    for i in range(1, max_len + 1):
        new = np.zeros_like(dp)
        for u, v, wt in zip(src.tolist(), dst.tolist(), w.tolist()):
            contrib = dp[:, u] * wt if g.weighted else dp[:, u]  # unit weights stay integral
            np.add.at(new[:, v], masks | (1 << v), contrib)
        dp = new
        prof[i] = dp.sum(axis=1)
    return prof


def phi_from_profile(profile_row: np.ndarray, group: Iterable[int]):
    gmask = 0
    for v in group:
        gmask |= 1 << v
    masks = np.arange(len(profile_row))
    return profile_row[(masks & gmask) != 0].sum()


def exact_ged_truncated(g: Graph, group: Iterable[int], alpha: float, L: int,
                        profile: Optional[np.ndarray] = None) -> float:
    """sum_{i=1..L} alpha**i phi_i(S) from exhaustive walk enumeration."""
    group = list(group)
    if profile is None:
        profile = visited_set_profile(g, L)
    return float(sum(alpha**i * float(phi_from_profile(profile[i], group)) for i in range(1, L + 1)))


def katz_partial(g: Graph, x: int, alpha: float, ell: int) -> float:
    """sum_{i=1..ell} alpha**i omega_i(x) by repeated neighbor sums (walks starting at x)."""
    if ell < 1:
        raise ValueError("ell must be >= 1")
    nbrs = _neighbors(g)
    omega = [1.0] * g.n
    total = 0.0
    for i in range(1, ell + 1):
        omega = [sum(w * omega[u] for u, w in nbrs[v]) for v in range(g.n)]
        total += alpha**i * omega[x]
    return total


def exhaustive_best_group(g: Graph, k: int, alpha: float, eps: float, cfg=None,
                          max_subsets: int = 100_000):
    """Best k-subset by approximate GED score; lexicographically first on ties."""
    from math import comb

    from .walks import TailBoundConfig, ged_score

    if not 1 <= k <= g.n:
        raise ValueError("need 1 <= k <= n")
    if comb(g.n, k) > max_subsets:
        raise GuardRailError(f"C({g.n}, {k}) subsets exceed {max_subsets}")
    if cfg is None:
        kind = "combinatorial" if alpha * g.deg_max < 1 else "spectral"
        cfg = TailBoundConfig.for_graph(g, alpha, kind)
    best, best_score = None, -np.inf
    for group in itertools.combinations(range(g.n), k):
        score = ged_score(g, group, alpha, eps, cfg).partial
        if score > best_score:
            best, best_score = group, score
    return best, best_score


def is_vertex_cover(g: Graph, group: Iterable[int]) -> bool:
    S = set(group)
    src, dst, _ = g.edges()
    return all(u in S or v in S for u, v in zip(src.tolist(), dst.tolist()))


def min_vertex_cover_size(g: Graph) -> int:
    for k in range(g.n + 1):
        if any(is_vertex_cover(g, c) for c in itertools.combinations(range(g.n), k)):
            return k
    return g.n
