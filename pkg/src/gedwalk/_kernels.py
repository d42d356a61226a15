"""Pull-style CSR kernels over a vertex range ``[lo, hi)``.

Every output entry is written by exactly one call and summed over its
neighbor list in CSR order, so results do not depend on how the vertex range
is split across workers.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from numba import njit


@njit(nogil=True, cache=True)
def _masked_pull(ptr, idx, w, src, mask, scale, out, lo, hi):
    for v in range(lo, hi):
        if mask[v]:
            out[v] = 0.0
            continue
        acc = 0.0
        for e in range(ptr[v], ptr[v + 1]):
            acc += w[e] * src[idx[e]]
        out[v] = scale * acc


@njit(nogil=True, cache=True)
def _hit_miss(ptr, idx, w, hit, miss, mask, scale, new_hit, new_miss, lo, hi):
    for v in range(lo, hi):
        h = 0.0
        m = 0.0
        for e in range(ptr[v], ptr[v + 1]):
            u = idx[e]
            h += w[e] * hit[u]
            m += w[e] * miss[u]
        if mask[v]:
            new_hit[v] = scale * (h + m)
            new_miss[v] = 0.0
        else:
            new_hit[v] = scale * h
            new_miss[v] = scale * m


@njit(nogil=True, cache=True)
def _masked_pull_unit(ptr, idx, w, src, mask, scale, out, lo, hi):
    for v in range(lo, hi):
        if mask[v]:
            out[v] = 0.0
            continue
        acc = 0.0
        for e in range(ptr[v], ptr[v + 1]):
            acc += src[idx[e]]
        out[v] = scale * acc


@njit(nogil=True, cache=True)
def _hit_miss_unit(ptr, idx, w, hit, miss, mask, scale, new_hit, new_miss, lo, hi):
    for v in range(lo, hi):
        h = 0.0
        m = 0.0
        for e in range(ptr[v], ptr[v + 1]):
            u = idx[e]
            h += hit[u]
            m += miss[u]
        if mask[v]:
            new_hit[v] = scale * (h + m)
            new_miss[v] = 0.0
        else:
            new_hit[v] = scale * h
            new_miss[v] = scale * m


_PARALLEL_MIN = 1 << 14
_pools: dict[int, ThreadPoolExecutor] = {}


def _pool(threads: int) -> ThreadPoolExecutor:
    if threads not in _pools:
        _pools[threads] = ThreadPoolExecutor(max_workers=threads, thread_name_prefix="gedwalk")
    return _pools[threads]


def _ranges(ptr: np.ndarray, parts: int):
    """Split ``0..n`` into ``parts`` ranges of roughly equal arc count."""
    n = len(ptr) - 1
    cuts = np.searchsorted(ptr, np.linspace(0, ptr[-1], parts + 1)[1:-1])
    bounds = np.unique(np.concatenate([[0], np.clip(cuts, 0, n), [n]]))
    return list(zip(bounds[:-1].tolist(), bounds[1:].tolist()))


def default_threads() -> int:
    return int(os.environ.get("GEDWALK_THREADS", "1"))


class Sweeper:
    """Runs the kernels over one CSR view, optionally across worker threads.

    ``w=None`` means unit weights and selects kernels that never read them.
    """

    def __init__(self, ptr, idx, w, threads: int | None = None):
        self.ptr, self.idx = ptr, idx
        self.unit = w is None
        self.w = np.ones(1) if w is None else w
        self.n = len(ptr) - 1
        self.threads = max(1, threads if threads is not None else default_threads())
        if self.threads > 1 and self.n >= _PARALLEL_MIN:
            self._ranges = _ranges(ptr, 4 * self.threads)
        else:
            self._ranges = [(0, self.n)]

    def _run(self, kernel, *args):
        if len(self._ranges) == 1:
            kernel(self.ptr, self.idx, self.w, *args, 0, self.n)
            return
        futures = [
            _pool(self.threads).submit(kernel, self.ptr, self.idx, self.w, *args, lo, hi)
            for lo, hi in self._ranges
        ]
        for f in futures:
            f.result()

    def masked_pull(self, src, mask, scale, out):
        """out[v] = 0 if mask[v] else scale * sum_{u -> v} w(u, v) src[u]."""
        self._run(_masked_pull_unit if self.unit else _masked_pull, src, mask, scale, out)
        return out

    def hit_miss(self, hit, miss, mask, scale, new_hit, new_miss):
        self._run(_hit_miss_unit if self.unit else _hit_miss, hit, miss, mask, scale, new_hit, new_miss)
        return new_hit, new_miss
