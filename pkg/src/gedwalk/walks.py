"""Level-by-level walk counting, tail bounds and the group scorer.

All per-vertex accumulators hold alpha-scaled values, i.e. level ``i`` stores
``alpha**i`` times a (weighted) walk count. Raw counts overflow quickly on
dense graphs; scaled values stay bounded by GED(V).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from ._kernels import Sweeper
from .errors import ConvergenceError, WalkOverflowError
from .graph import Graph

COMBINATORIAL = "combinatorial"
SPECTRAL = "spectral"
BOUND_KINDS = (COMBINATORIAL, SPECTRAL)
_BOUND_ALIASES = {"comb": COMBINATORIAL, "spec": SPECTRAL}


def group_mask(n: int, group: Iterable[int]) -> np.ndarray:
    mask = np.zeros(n, dtype=np.bool_)
    members = np.fromiter(group, dtype=np.int64)
    if len(members) and (members.min() < 0 or members.max() >= n):
        raise ValueError(f"group member outside 0..{n - 1}")
    mask[members] = True
    return mask


def forward_sweeper(g: Graph, threads: Optional[int] = None) -> Sweeper:
    """Pulls over in-neighbors: propagates walks by their end vertex."""
    return Sweeper(g.in_ptr, g.in_idx, g.in_w if g.weighted else None, threads)


def reverse_sweeper(g: Graph, threads: Optional[int] = None) -> Sweeper:
    """Pulls over out-neighbors: propagates walks by their start vertex."""
    return Sweeper(g.out_ptr, g.out_idx, g.out_w if g.weighted else None, threads)


def _check_finite(value: float, level: int) -> float:
    if not math.isfinite(value):
        raise WalkOverflowError(f"walk accumulator became non-finite at level {level}")
    return value


@dataclass
class LevelState:
    """Scaled hit/miss walk counts for one walk length.

    ``hit[v]`` is alpha**level times the number of walks ending at ``v`` that
    touch the group, ``miss[v]`` the same for walks avoiding it.
    """

    level: int
    hit: np.ndarray
    miss: np.ndarray
    mask: np.ndarray

    @classmethod
    def base(cls, n: int, group: Iterable[int] | np.ndarray) -> "LevelState":
        """Level 0: each vertex is its own 0-walk."""
        mask = group if isinstance(group, np.ndarray) and group.dtype == np.bool_ else group_mask(n, group)
        return cls(0, mask.astype(np.float64), (~mask).astype(np.float64), mask)

    def phi(self) -> float:
        """Scaled number of walks of this length that touch the group."""
        return float(self.hit.sum())

    def total(self) -> float:
        return float(self.hit.sum() + self.miss.sum())


def level_step(
    g: Graph,
    prev: LevelState,
    group: Iterable[int] | None,
    alpha: float,
    sweeper: Optional[Sweeper] = None,
) -> LevelState:
    """Advance ``prev`` by one arc.

    A walk ending in the group is a hit regardless of its prefix; otherwise it
    inherits hit/miss from its prefix. ``group=None`` reuses ``prev.mask``.
    """
    mask = prev.mask if group is None else group_mask(g.n, group)
    sw = sweeper or forward_sweeper(g)
    hit = np.empty(g.n)
    miss = np.empty(g.n)
    sw.hit_miss(prev.hit, prev.miss, mask, float(alpha), hit, miss)
    state = LevelState(prev.level + 1, hit, miss, mask)
    _check_finite(state.total(), state.level)
    return state


def phi_partial(g: Graph, group: Iterable[int], ell: int, alpha: float,
                threads: Optional[int] = None) -> float:
    """GED truncated after walks of length ``ell``."""
    if ell < 1:
        raise ValueError("ell must be >= 1")
    sw = forward_sweeper(g, threads)
    state = LevelState.base(g.n, group)
    total = 0.0
    for _ in range(ell):
        state = level_step(g, state, None, alpha, sw)
        total += state.phi()
    return total


def walk_sums(g: Graph, ell: int, alpha: float, threads: Optional[int] = None) -> np.ndarray:
    """``out[i] = alpha**i * sum_x omega_i(x)`` for ``i = 0..ell``, where
    omega_i(x) counts i-walks starting at x."""
    sw = reverse_sweeper(g, threads)
    none = np.zeros(g.n, dtype=np.bool_)
    cur = np.ones(g.n)
    nxt = np.empty(g.n)
    out = np.empty(ell + 1)
    out[0] = g.n
    for i in range(1, ell + 1):
        sw.masked_pull(cur, none, float(alpha), nxt)
        cur, nxt = nxt, cur
        out[i] = _check_finite(float(cur.sum()), i)
    return out


def sum_walks(g: Graph, ell: int, alpha: float, threads: Optional[int] = None) -> float:
    if ell < 0:
        raise ValueError("ell must be >= 0")
    return float(walk_sums(g, ell, alpha, threads)[ell])


# --- tail bounds --------------------------------------------------------------

@dataclass(frozen=True)
class TailBoundConfig:
    """Which tail bound to use and the constants it needs.

    ``deg_max`` feeds the combinatorial bound, ``sigma_hat`` (an
    over-estimate of the largest singular value) the spectral one.
    """

    kind: str
    alpha: float
    n: int
    deg_max: Optional[float] = None
    sigma_hat: Optional[float] = None

    def __post_init__(self):
        kind = _BOUND_ALIASES.get(self.kind, self.kind)
        if kind not in BOUND_KINDS:
            raise ValueError(f"unknown bound kind {self.kind!r}")
        object.__setattr__(self, "kind", kind)
        if kind == COMBINATORIAL and self.deg_max is None:
            raise ValueError("combinatorial bound needs deg_max")
        if kind == SPECTRAL and self.sigma_hat is None:
            raise ValueError("spectral bound needs sigma_hat")

    @classmethod
    def for_graph(cls, g: Graph, alpha: float, kind: str = COMBINATORIAL,
                  sigma_hat: Optional[float] = None, tol: float = 1e-6) -> "TailBoundConfig":
        kind = _BOUND_ALIASES.get(kind, kind)
        if kind == SPECTRAL and sigma_hat is None:
            sigma_hat = estimate_sigma_max(g, tol)
        return cls(kind, float(alpha), g.n, g.deg_max, sigma_hat)

    @property
    def rate(self) -> float:
        """Geometric decay ratio of the bound: alpha * deg_max or alpha * sigma_hat."""
        scale = self.deg_max if self.kind == COMBINATORIAL else self.sigma_hat
        return self.alpha * scale

    def check(self, alpha: Optional[float] = None) -> None:
        if alpha is not None and alpha != self.alpha:
            raise ValueError(f"alpha={alpha} differs from bound config alpha={self.alpha}")
        if not self.alpha > 0:
            raise ConvergenceError(f"alpha must be positive, got {self.alpha}")
        if self.rate >= 1.0:
            what = "deg_max" if self.kind == COMBINATORIAL else "sigma_max"
            raise ConvergenceError(
                f"alpha * {what} = {self.rate:.6g} >= 1; the {self.kind} bound does not converge"
            )

    def level_cap(self, eps: float) -> int:
        """Generous cap on the number of levels needed to push the bound below ``eps``."""
        r = self.rate
        if r <= 0.0:
            return 4
        span = 2.5 * math.log(max(self.n / eps, math.e)) + math.log(1.0 / (1.0 - r))
        return 4 * max(1, math.ceil(span / math.log(1.0 / r)))


def tail_bound(cfg: TailBoundConfig, ell: int, scaled_sum: float) -> float:
    """Upper bound on GED_{>ell}(V) given ``scaled_sum = alpha**ell * sum_x omega_ell(x)``."""
    cfg.check()
    if scaled_sum == 0.0:
        return 0.0
    r = cfg.rate
    factor = r / (1.0 - r)
    if cfg.kind == SPECTRAL:
        factor *= math.sqrt(cfg.n)
    return factor * scaled_sum


def estimate_sigma_max(g: Graph, tol: float = 1e-6, max_iters: int = 10_000, seed: int = 0) -> float:
    """Largest singular value of the (weighted) adjacency matrix by power iteration.

    Iterates on A (undirected) or A^T A (directed) and inflates the final
    ratio by ``1 + 10 * tol`` to err on the high side.
    """
    if g.n == 0 or g.num_arcs == 0:
        return 0.0
    A = g.adjacency()
    step = (lambda v: A @ v) if not g.directed else (lambda v: A.T @ (A @ v))
    rng = np.random.Generator(np.random.PCG64(seed))
    x = rng.random(g.n) + 0.5
    x /= np.linalg.norm(x)
    prev = 0.0
    ratio = 0.0
    for _ in range(max_iters):
        ratio = float(np.linalg.norm(A @ x))
        if ratio == 0.0:
            return 0.0
        if prev and abs(ratio - prev) < tol * ratio:
            break
        prev = ratio
        x = step(x)
        x /= np.linalg.norm(x)
    return ratio * (1.0 + 10.0 * tol)


def choose_alpha(mode: str, g: Graph, delta: float, tol: float = 1e-6) -> float:
    """alpha = delta / sigma_max (spectral) or delta / deg_max (combinatorial)."""
    if not 0.0 < delta < 1.0:
        raise ValueError("delta must lie in (0, 1)")
    mode = _BOUND_ALIASES.get(mode, mode)
    if mode == SPECTRAL:
        denom = estimate_sigma_max(g, tol)
    elif mode == COMBINATORIAL:
        denom = g.deg_max
    else:
        raise ValueError(f"unknown alpha mode {mode!r}")
    if denom <= 0:
        raise ConvergenceError("graph has no arcs; alpha is unconstrained")
    return delta / denom


# --- scorer -------------------------------------------------------------------

@dataclass
class ScoreResult:
    """``partial`` under-estimates GED(S) by at most ``tail_bound``."""

    partial: float
    tail_bound: float
    ell: int
    contributions: list = field(default_factory=list)

    @property
    def interval(self) -> tuple:
        return (self.partial, self.partial + self.tail_bound)


def ged_score(
    g: Graph,
    group: Iterable[int],
    alpha: float,
    eps: float,
    cfg: Optional[TailBoundConfig] = None,
    threads: Optional[int] = None,
) -> ScoreResult:
    """Approximate GED(group) to within additive ``eps``.

    Adds one walk length at a time until the tail bound drops below ``eps``.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    cfg = cfg or TailBoundConfig.for_graph(g, alpha)
    cfg.check(alpha)
    cap = cfg.level_cap(eps)
    sw = forward_sweeper(g, threads)
    state = LevelState.base(g.n, group)
    partial = 0.0
    contributions = []
    while True:
        state = level_step(g, state, None, alpha, sw)
        c = state.phi()
        partial += c
        contributions.append(c)
        bound = tail_bound(cfg, state.level, state.total())
        if bound < eps:
            return ScoreResult(partial, bound, state.level, contributions)
        if state.level >= cap:
            raise ConvergenceError(
                f"tail bound {bound:.3g} still >= eps={eps} after {cap} levels; "
                "sigma estimate or alpha inconsistent"
            )
