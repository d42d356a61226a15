"""Greedy GED-Walk maximization with certified (eps/k)-separation.

Candidates are ranked in two lazy priority queues, one on lower bounds
``L_ell(S, x)`` of the marginal gain and one on upper bounds
``U_ell(S, x) = L_ell(S, x) + B_ell(V)``. Stale priorities are valid upper
bounds on the current values because truncated marginal gains shrink as the
group grows, so a queue top whose value is fresh is the true maximizer.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import asdict, dataclass
from typing import Iterable, Optional

import numpy as np

from .errors import ConvergenceError
from .graph import Graph
from .walks import (
    TailBoundConfig,
    forward_sweeper,
    group_mask,
    phi_partial,
    reverse_sweeper,
    tail_bound,
    walk_sums,
)


@dataclass
class GroupResult:
    members: list
    gains: list
    ell: int
    score: float
    tail_bound: float
    evaluations: int = 0
    doublings: int = 0
    pops: int = 0
    strategy: str = "lazy"
    degenerate_picks: int = 0

    @property
    def interval(self) -> tuple:
        return (self.score, self.score + self.tail_bound)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["interval"] = list(self.interval)
        return d


def _miss_levels(sweeper, mask: np.ndarray, alpha: float, ell: int) -> np.ndarray:
    """Row i holds alpha**i times the number of i-walks ending (or, on the
    reverse sweeper, starting) at each vertex that avoid ``mask``."""
    n = len(mask)
    out = np.empty((ell + 1, n))
    out[0] = (~mask).astype(np.float64)
    for i in range(1, ell + 1):
        sweeper.masked_pull(out[i - 1], mask, alpha, out[i])
    return out


class _Walks:
    """Per-(S, ell) quantities shared by every candidate evaluation."""

    def __init__(self, g: Graph, alpha: float, cfg: TailBoundConfig, threads):
        self.g = g
        self.alpha = float(alpha)
        self.cfg = cfg
        self.fwd = forward_sweeper(g, threads)
        self.rev = reverse_sweeper(g, threads)
        self.mask = np.zeros(g.n, dtype=np.bool_)
        self.ell = 0
        self.miss = None
        self._sums = walk_sums(g, 1, alpha, threads)
        self._threads = threads
        self._a = np.empty(g.n)
        self._b = np.empty(g.n)

    def tail(self, ell: int) -> float:
        if len(self._sums) <= ell:
            self._sums = walk_sums(self.g, ell, self.alpha, self._threads)
        return tail_bound(self.cfg, ell, float(self._sums[ell]))

    def refresh(self, mask: np.ndarray, ell: int) -> None:
        self.mask = mask
        self.ell = ell
        self.miss = _miss_levels(self.fwd, mask, self.alpha, ell)

    def initial_bounds(self) -> np.ndarray:
        """sum_{i<=ell} alpha**i P_i(S, x), counting walks through x that avoid S
        once per visit of x; 0 for members of S."""
        psi = _miss_levels(self.rev, self.mask, self.alpha, self.ell)
        cum_psi = np.cumsum(psi, axis=0)
        # sum over p + q <= ell of phi_p * psi_q, minus the (0, 0) term
        total = np.einsum("pv,pv->v", self.miss, cum_psi[::-1])
        total -= self.miss[0] * psi[0]
        total[self.mask] = 0.0
        return total

    def marginal(self, x: int) -> float:
        """GED_{<=ell}(S + x) - GED_{<=ell}(S): scaled walks that visit x but avoid S.

        ``d[v]`` tracks such walks ending at v. Walks ending at x are exactly
        the S-avoiding walks ending at x, already known from ``self.miss``.
        """
        if self.mask[x]:
            return 0.0
        d, nxt = self._a, self._b
        d[:] = 0.0
        d[x] = 1.0
        total = 0.0
        for i in range(1, self.ell + 1):
            self.fwd.masked_pull(d, self.mask, self.alpha, nxt)
            nxt[x] = self.miss[i, x]
            total += float(nxt.sum())
            d, nxt = nxt, d
        return total


def marginal_partial(g: Graph, group: Iterable[int], x: int, ell: int, alpha: float,
                     threads: Optional[int] = None) -> float:
    """Exact truncated marginal gain L_ell(S, x)."""
    w = _Walks(g, alpha, _loose_cfg(g, alpha), threads)
    w.refresh(group_mask(g.n, group), ell)
    return w.marginal(x)


def init_gain_bounds(g: Graph, group: Iterable[int], ell: int, alpha: float,
                     threads: Optional[int] = None) -> np.ndarray:
    """Over-estimates of L_ell(S, x) for all x at once (0 for x in S)."""
    w = _Walks(g, alpha, _loose_cfg(g, alpha), threads)
    w.refresh(group_mask(g.n, group), ell)
    return w.initial_bounds()


def _loose_cfg(g: Graph, alpha: float) -> TailBoundConfig:
    # only used where no tail bound is evaluated
    return TailBoundConfig("combinatorial", alpha, g.n, deg_max=g.deg_max)


class _BoundQueues:
    """Max-queues on L and on U with lazy deletion via per-vertex versions.

    A rebuild stores the priorities as one numpy-sorted run scanned by a
    cursor; later pushes go to a heap. ``top`` merges the two, which orders
    entries exactly like a single heap of ``(-priority, vertex, version)``.
    """

    def __init__(self, L: np.ndarray, U: np.ndarray, n: int):
        self.L, self.U = L, U
        self.version = np.zeros(n, dtype=np.int64)
        self.active = np.zeros(n, dtype=np.bool_)
        self.heaps = {"L": [], "U": []}
        self.runs = {}

    def rebuild(self, members: np.ndarray) -> None:
        self.active[:] = False
        self.active[members] = True
        self.version[members] += 1
        for key, prio in (("L", self.L), ("U", self.U)):
            neg = -prio[members]
            order = np.lexsort((members, neg))
            xs = members[order]
            self.runs[key] = [neg[order].tolist(), xs.tolist(), self.version[xs].tolist(), 0]
            self.heaps[key] = []

    def push(self, x: int) -> None:
        self.version[x] += 1
        ver = self.version[x]
        heapq.heappush(self.heaps["L"], (-self.L[x], x, ver))
        heapq.heappush(self.heaps["U"], (-self.U[x], x, ver))

    def insert(self, x: int) -> None:
        self.active[x] = True
        self.push(x)

    def remove(self, x: int) -> None:
        self.active[x] = False

    def _live(self, x: int, ver: int) -> bool:
        return bool(self.active[x]) and ver == self.version[x]

    def top(self, key: str) -> Optional[int]:
        heap = self.heaps[key]
        while heap and not self._live(heap[0][1], heap[0][2]):
            heapq.heappop(heap)
        run = self.runs.get(key)
        best = heap[0] if heap else None
        if run is not None:
            neg, xs, vers, cur = run
            # stale run entries never revive: versions only grow
            while cur < len(xs) and not self._live(xs[cur], vers[cur]):
                cur += 1
            run[3] = cur
            if cur < len(xs):
                cand = (neg[cur], xs[cur], vers[cur])
                if best is None or cand < best:
                    best = cand
        return None if best is None else best[1]

    def any_active(self) -> bool:
        return bool(self.active.any())


def _greedy(g, k, alpha, eps, cfg, threads, eager, sample_size=None, rng=None) -> GroupResult:
    if not 1 <= k <= g.n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={g.n}")
    if eps <= 0:
        raise ValueError("eps must be positive")
    cfg = cfg or TailBoundConfig.for_graph(g, alpha)
    cfg.check(alpha)
    n = g.n
    walks = _Walks(g, alpha, cfg, threads)
    cap = cfg.level_cap(eps / k)
    L = np.zeros(n)
    U = np.zeros(n)
    fresh = np.full(n, -1, dtype=np.int64)
    epoch = 0
    queues = _BoundQueues(L, U, n)
    mask = np.zeros(n, dtype=np.bool_)
    members: list[int] = []
    gains: list[float] = []
    counters = {"evaluations": 0, "doublings": 0, "pops": 0, "degenerate_picks": 0}
    sep = eps / k
    ell = 1
    candidates = None
    sampled_for = -1

    def draw_candidates():
        rest = np.flatnonzero(~mask)
        if sample_size is None:
            return rest
        if sample_size >= len(rest):
            counters["degenerate_picks"] += 1
            return rest
        return np.sort(rng.choice(rest, size=sample_size, replace=False))

    def evaluate(x, bound):
        gain = walks.marginal(x)
        L[x] = gain
        U[x] = gain + bound
        fresh[x] = epoch
        counters["evaluations"] += 1
        queues.push(x)

    def lazy_update(key, bound):
        if eager:
            for x in np.flatnonzero(queues.active & (fresh != epoch)).tolist():
                evaluate(x, bound)
        while True:
            x = queues.top(key)
            counters["pops"] += 1
            if x is None or fresh[x] == epoch:
                return x
            evaluate(x, bound)

    while True:
        walks.refresh(mask.copy(), ell)
        bound = walks.tail(ell)
        init = walks.initial_bounds()
        L[:] = init
        U[:] = init + bound
        epoch += 1
        if candidates is None or sampled_for != len(members):
            candidates, sampled_for = draw_candidates(), len(members)
        queues.rebuild(candidates[~mask[candidates]])
        while True:
            if len(members) == k:
                score = phi_partial(g, members, ell, alpha, threads)
                return GroupResult(members, gains, ell, score, bound, **counters)
            if sampled_for != len(members):
                candidates, sampled_for = draw_candidates(), len(members)
                queues.rebuild(candidates)
            u = lazy_update("L", bound)
            queues.remove(u)
            v = lazy_update("U", bound) if queues.any_active() else None
            if v is not None and L[u] <= U[v] - sep:
                queues.insert(u)
                break
            members.append(int(u))
            gains.append(float(L[u]))
            mask[u] = True
            walks.refresh(mask.copy(), ell)
            epoch += 1
        ell *= 2
        counters["doublings"] += 1
        if ell > cap:
            raise ConvergenceError(
                f"no ({sep:.3g})-separation up to ell={ell // 2} (cap {cap}); "
                "check alpha against the bound's convergence limit"
            )


def maximize_lazy(
    g: Graph,
    k: int,
    alpha: float,
    eps: float,
    cfg: Optional[TailBoundConfig] = None,
    threads: Optional[int] = None,
    eager: bool = False,
) -> GroupResult:
    """Greedy group of size k with GED(S) >= (1 - 1/e) OPT - eps.

    ``eager=True`` refreshes every stale candidate before each queue read;
    it selects the same group and only changes the counters.
    """
    return _greedy(g, k, alpha, eps, cfg, threads, eager)


def stochastic_sample_size(n: int, k: int, eta: float) -> int:
    return math.ceil(n / k * math.log(1.0 / eta))


def maximize_stochastic(
    g: Graph,
    k: int,
    alpha: float,
    eps: float,
    eta: float,
    seed: int = 0,
    cfg: Optional[TailBoundConfig] = None,
    threads: Optional[int] = None,
) -> GroupResult:
    """Stochastic greedy: each pick only considers a fresh uniform sample of
    ceil(n/k ln(1/eta)) non-members, kept across ell-doublings of that pick."""
    if not 0.0 < eta < 1.0:
        raise ValueError("eta must lie in (0, 1)")
    rng = np.random.Generator(np.random.PCG64(seed))
    res = _greedy(g, k, alpha, eps, cfg, threads, False,
                  sample_size=stochastic_sample_size(g.n, k, eta), rng=rng)
    res.strategy = "stochastic"
    return res


def group_degree_greedy(g: Graph, k: int) -> list:
    """Max-coverage greedy on edges: repeatedly take the vertex incident to the
    most uncovered edges (smallest id on ties)."""
    if not 0 <= k <= g.n:
        raise ValueError("need 0 <= k <= n")
    src, dst, _ = g.edges()
    nbrs = [[] for _ in range(g.n)]
    for e, (u, v) in enumerate(zip(src.tolist(), dst.tolist())):
        nbrs[u].append((v, e))
        nbrs[v].append((u, e))
    uncovered = np.array([len(a) for a in nbrs], dtype=np.int64)
    covered = np.zeros(len(src), dtype=np.bool_)
    chosen = []
    taken = np.zeros(g.n, dtype=np.bool_)
    for _ in range(k):
        score = np.where(taken, -1, uncovered)
        u = int(np.argmax(score))
        chosen.append(u)
        taken[u] = True
        for v, e in nbrs[u]:
            if not covered[e]:
                covered[e] = True
                uncovered[v] -= 1
        uncovered[u] = 0
    return chosen
