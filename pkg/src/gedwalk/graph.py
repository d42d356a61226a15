"""Immutable CSR graphs, edge-list I/O, preprocessing and random generators."""

from __future__ import annotations

from dataclasses import dataclass, field
from os import PathLike
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy.sparse.csgraph import connected_components

from .errors import GraphFormatError

COMMENT_PREFIXES = ("#", "%")


@dataclass(frozen=True, eq=False)
class Graph:
    """A simple graph stored as forward (out) and reverse (in) CSR arrays.

    Undirected graphs store every edge as two arcs and share one CSR for both
    views. Unweighted graphs carry unit weights so that the walk kernels have
    a single code path; ``weighted`` records whether weights were supplied.
    """

    n: int
    directed: bool
    out_ptr: np.ndarray
    out_idx: np.ndarray
    out_w: np.ndarray
    in_ptr: np.ndarray
    in_idx: np.ndarray
    in_w: np.ndarray
    weighted: bool = False
    labels: Optional[np.ndarray] = None
    deg_max: float = field(init=False)

    def __post_init__(self):
        if self.n == 0:
            dmax = 0.0
        elif self.weighted:
            sums = np.add.reduceat(self.out_w, self.out_ptr[:-1]) if len(self.out_w) else None
            if sums is None:
                dmax = 0.0
            else:
                # reduceat misbehaves on empty segments
                sums = np.where(np.diff(self.out_ptr) > 0, sums, 0.0)
                dmax = float(sums.max())
        else:
            dmax = float(np.diff(self.out_ptr).max())
        object.__setattr__(self, "deg_max", dmax)
        for name in ("out_ptr", "out_idx", "out_w", "in_ptr", "in_idx", "in_w"):
            getattr(self, name).setflags(write=False)

    @property
    def num_arcs(self) -> int:
        return int(self.out_ptr[-1])

    @property
    def m(self) -> int:
        return self.num_arcs if self.directed else self.num_arcs // 2

    def out_degrees(self) -> np.ndarray:
        return np.diff(self.out_ptr)

    def in_degrees(self) -> np.ndarray:
        return np.diff(self.in_ptr)

    def successors(self, v: int) -> np.ndarray:
        return self.out_idx[self.out_ptr[v]:self.out_ptr[v + 1]]

    def predecessors(self, v: int) -> np.ndarray:
        return self.in_idx[self.in_ptr[v]:self.in_ptr[v + 1]]

    def arcs(self):
        """Return ``(src, dst, w)`` arrays of all stored arcs, sorted by (src, dst)."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), self.out_degrees())
        return src, self.out_idx.copy(), self.out_w.copy()

    def edges(self):
        """Return ``(src, dst, w)``; undirected graphs list each edge once with src < dst."""
        src, dst, w = self.arcs()
        if not self.directed:
            keep = src < dst
            src, dst, w = src[keep], dst[keep], w[keep]
        return src, dst, w

    def label_of(self, v: int) -> int:
        return int(self.labels[v]) if self.labels is not None else int(v)

    def adjacency(self):
        """Weighted adjacency as a scipy CSR matrix with A[u, v] = w(u, v)."""
        from scipy.sparse import csr_matrix
        return csr_matrix((self.out_w, self.out_idx, self.out_ptr), shape=(self.n, self.n))

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and self.directed == other.directed
            and self.weighted == other.weighted
            and np.array_equal(self.out_ptr, other.out_ptr)
            and np.array_equal(self.out_idx, other.out_idx)
            and np.array_equal(self.out_w, other.out_w)
            and np.array_equal(self.in_ptr, other.in_ptr)
            and np.array_equal(self.in_idx, other.in_idx)
            and np.array_equal(self.in_w, other.in_w)
        )

    __hash__ = None

    def __repr__(self):
        kind = "directed" if self.directed else "undirected"
        w = ", weighted" if self.weighted else ""
        return f"Graph(n={self.n}, m={self.m}, {kind}{w}, deg_max={self.deg_max:g})"

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[Sequence[int]] | np.ndarray,
        weights: Optional[Sequence[float]] = None,
        directed: bool = False,
        labels: Optional[Sequence[int]] = None,
    ) -> "Graph":
        """Build a graph on vertices ``0..n-1``.

        Self-loops are dropped and duplicates collapsed (first occurrence wins,
        including its weight). Undirected edges may be listed in either or
        both orientations.
        """
        e = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if len(e) and (e.min() < 0 or e.max() >= n):
            raise GraphFormatError(f"edge endpoint outside 0..{n - 1}")
        weighted = weights is not None
        w = np.ones(len(e)) if weights is None else np.asarray(weights, dtype=np.float64)
        if len(w) != len(e):
            raise GraphFormatError("weights and edges differ in length")
        if weighted and len(w) and not ((w > 0) & (w <= 1)).all():
            raise GraphFormatError("edge weights must lie in (0, 1]")
        keep = e[:, 0] != e[:, 1]
        e, w = e[keep], w[keep]
        if not directed:
            e = np.sort(e, axis=1)
        # first occurrence of each (u, v) in input order
        key = e[:, 0] * max(n, 1) + e[:, 1]
        _, first = np.unique(key, return_index=True)
        first.sort()
        e, w = e[first], w[first]
        if directed:
            src, dst, ww = e[:, 0], e[:, 1], w
        else:
            src = np.concatenate([e[:, 0], e[:, 1]])
            dst = np.concatenate([e[:, 1], e[:, 0]])
            ww = np.concatenate([w, w])
        out_ptr, out_idx, out_w = _csr(n, src, dst, ww)
        if directed:
            in_ptr, in_idx, in_w = _csr(n, dst, src, ww)
        else:
            in_ptr, in_idx, in_w = out_ptr, out_idx, out_w
        lab = None if labels is None else np.asarray(labels, dtype=np.int64)
        return cls(n, directed, out_ptr, out_idx, out_w, in_ptr, in_idx, in_w, weighted, lab)


def _csr(n, src, dst, w):
    order = np.lexsort((dst, src))
    src, dst, w = src[order], dst[order], w[order]
    ptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=ptr[1:])
    # int32 neighbor ids halve the memory traffic of every sweep
    return ptr, np.ascontiguousarray(dst, dtype=np.int32), np.ascontiguousarray(w, dtype=np.float64)


def load_edge_list(
    path: str | PathLike, directed: bool = False, one_indexed: bool = False
) -> Graph:
    """Read a whitespace-separated ``u v [w]`` edge list.

    Original ids are remapped to ``0..n-1`` in order of first appearance and
    kept as ``Graph.labels``. Lines starting with ``#`` or ``%`` are comments.
    """
    try:
        with open(path) as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise GraphFormatError(f"cannot read {path}: {exc}") from exc

    ids: dict[int, int] = {}
    edges: list[tuple[int, int]] = []
    weights: list[float] = []
    has_weights = None
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith(COMMENT_PREFIXES):
            continue
        tok = line.split()
        if len(tok) not in (2, 3):
            raise GraphFormatError(f"{path}:{lineno}: expected 'u v' or 'u v w', got {line!r}")
        if has_weights is None:
            has_weights = len(tok) == 3
        elif has_weights != (len(tok) == 3):
            raise GraphFormatError(f"{path}:{lineno}: weight column present on some lines only")
        try:
            u, v = int(tok[0]), int(tok[1])
        except ValueError:
            raise GraphFormatError(f"{path}:{lineno}: malformed vertex id in {line!r}") from None
        if one_indexed and (u < 1 or v < 1):
            raise GraphFormatError(f"{path}:{lineno}: vertex id < 1 in one-indexed input")
        if not one_indexed and (u < 0 or v < 0):
            raise GraphFormatError(f"{path}:{lineno}: negative vertex id")
        if has_weights:
            try:
                wt = float(tok[2])
            except ValueError:
                raise GraphFormatError(f"{path}:{lineno}: malformed weight {tok[2]!r}") from None
            if not 0.0 < wt <= 1.0:
                raise GraphFormatError(f"{path}:{lineno}: weight {wt} outside (0, 1]")
            weights.append(wt)
        edges.append((ids.setdefault(u, len(ids)), ids.setdefault(v, len(ids))))

    labels = np.fromiter(ids.keys(), dtype=np.int64, count=len(ids))
    return Graph.from_edges(
        len(ids), edges, weights if has_weights else None, directed=directed, labels=labels
    )


def write_edge_list(g: Graph, path: str | PathLike) -> None:
    src, dst, w = g.edges()
    with open(path, "w") as fh:
        fh.write(f"# n={g.n} m={g.m} {'directed' if g.directed else 'undirected'}\n")
        for i in range(len(src)):
            u, v = g.label_of(src[i]), g.label_of(dst[i])
            fh.write(f"{u} {v} {w[i]!r}\n" if g.weighted else f"{u} {v}\n")


def induced_subgraph(g: Graph, vertices: np.ndarray) -> Graph:
    """Subgraph on ``vertices`` (kept in ascending order), ids remapped contiguously."""
    vertices = np.sort(np.asarray(vertices, dtype=np.int64))
    remap = np.full(g.n, -1, dtype=np.int64)
    remap[vertices] = np.arange(len(vertices))
    src, dst, w = g.arcs()
    keep = (remap[src] >= 0) & (remap[dst] >= 0)
    labels = np.array([g.label_of(v) for v in vertices], dtype=np.int64)
    return Graph.from_edges(
        len(vertices),
        np.stack([remap[src[keep]], remap[dst[keep]]], axis=1),
        w[keep] if g.weighted else None,
        directed=g.directed,
        labels=labels,
    )


def largest_connected_component(g: Graph) -> Graph:
    """Induced subgraph on the largest (weakly) connected component.

    Ties go to the component containing the smallest original id.
    """
    if g.n == 0:
        return g
    _, comp = connected_components(g.adjacency(), directed=g.directed, connection="weak")
    sizes = np.bincount(comp)
    labels = g.labels if g.labels is not None else np.arange(g.n)
    min_label = np.full(len(sizes), np.iinfo(np.int64).max)
    np.minimum.at(min_label, comp, labels)
    best = min(range(len(sizes)), key=lambda c: (-sizes[c], min_label[c]))
    if sizes[best] == g.n:
        return g
    return induced_subgraph(g, np.flatnonzero(comp == best))


def reverse(g: Graph) -> Graph:
    """Graph with every arc flipped; undirected graphs are returned unchanged."""
    if not g.directed:
        return g
    return Graph(g.n, True, g.in_ptr, g.in_idx, g.in_w, g.out_ptr, g.out_idx, g.out_w,
                 g.weighted, g.labels)


def normalize_symmetric(g: Graph) -> Graph:
    """Reweight an undirected, unweighted graph with w(u, v) = 1/sqrt(deg u * deg v)."""
    if g.directed:
        raise GraphFormatError("symmetric normalization needs an undirected graph")
    if g.weighted:
        raise GraphFormatError("symmetric normalization needs an unweighted graph")
    deg = g.out_degrees().astype(np.float64)
    if g.n and deg.min() == 0:
        raise GraphFormatError(f"vertex {int(np.argmin(deg))} is isolated")
    src, dst, _ = g.arcs()
    w = 1.0 / np.sqrt(deg[src] * deg[dst])
    np.minimum(w, 1.0, out=w)
    return Graph(g.n, False, g.out_ptr, g.out_idx, w, g.out_ptr, g.out_idx, w, True, g.labels)


# --- generators -------------------------------------------------------------

@dataclass(frozen=True)
class GeneratorSpec:
    """``param`` is the edge probability for erdos-renyi and the attach
    degree for barabasi-albert."""

    model: str
    n: int
    param: float
    seed: int = 0

    MODELS = ("erdos-renyi", "barabasi-albert")
    ALIASES = {"er": "erdos-renyi", "ba": "barabasi-albert"}

    def __post_init__(self):
        model = self.ALIASES.get(self.model, self.model)
        if model not in self.MODELS:
            raise ValueError(f"unknown generator model {self.model!r}")
        object.__setattr__(self, "model", model)
        if self.n < 1:
            raise ValueError("generator needs n >= 1")
        if model == "erdos-renyi" and not 0.0 <= self.param <= 1.0:
            raise ValueError("edge probability must lie in [0, 1]")
        if model == "barabasi-albert" and not (
            float(self.param).is_integer() and 1 <= self.param < self.n
        ):
            raise ValueError("attach degree must be an integer in [1, n)")

    @classmethod
    def parse(cls, text: str) -> "GeneratorSpec":
        """Parse ``MODEL,n,param,seed`` (seed optional)."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) not in (3, 4):
            raise ValueError(f"expected MODEL,n,param[,seed], got {text!r}")
        seed = int(parts[3]) if len(parts) == 4 else 0
        return cls(parts[0], int(parts[1]), float(parts[2]), seed)

    def build(self) -> Graph:
        if self.model == "erdos-renyi":
            return gen_erdos_renyi(self.n, self.param, self.seed)
        return gen_barabasi_albert(self.n, int(self.param), self.seed)

    def describe(self) -> str:
        return f"{self.model},{self.n},{self.param:g},{self.seed}"


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed & 0xFFFF_FFFF_FFFF_FFFF))


def gen_erdos_renyi(n: int, p: float, seed: int) -> Graph:
    """G(n, p) via geometric skipping over the linearised pair index.

    Pair (u, v), u < v, has index v(v-1)/2 + u. Gaps between consecutive
    included pairs are geometric, which is equivalent to independent coin
    flips but runs in O(n + m).
    """
    GeneratorSpec("erdos-renyi", n, p, seed)
    total = n * (n - 1) // 2
    if p <= 0.0 or total == 0:
        return Graph.from_edges(n, np.empty((0, 2), dtype=np.int64))
    if p >= 1.0:
        idx = np.arange(total, dtype=np.int64)
    else:
        rng = _rng(seed)
        chunks = []
        pos = -1
        batch = max(1024, int(1.1 * total * p) + 1024)
        while pos < total:
            # clipping keeps the cumsum from overflowing when p is tiny; any gap
            # past the end stops the scan either way
            gaps = np.minimum(rng.geometric(p, size=batch), total + 1)
            steps = pos + np.cumsum(gaps)
            chunks.append(steps[steps < total])
            pos = int(steps[-1])
        idx = np.concatenate(chunks)
    v = ((1 + np.sqrt(1 + 8 * idx.astype(np.float64))) // 2).astype(np.int64)
    # repair float rounding at triangular-number boundaries
    v -= (v * (v - 1) // 2 > idx)
    v += ((v + 1) * v // 2 <= idx)
    u = idx - v * (v - 1) // 2
    return Graph.from_edges(n, np.stack([u, v], axis=1))


def gen_barabasi_albert(n: int, attach_degree: int, seed: int) -> Graph:
    """Preferential attachment grown from a clique on ``attach_degree`` vertices.

    Each new vertex picks ``attach_degree`` distinct targets with probability
    proportional to current degree (rejection on repeats). With
    ``attach_degree == 1`` the bootstrap vertex has degree 0 and is chosen
    uniformly, i.e. deterministically.
    """
    a = attach_degree
    if not (isinstance(a, (int, np.integer)) and 1 <= a < n):
        raise ValueError("attach degree must be an integer in [1, n)")
    rng = _rng(seed)
    src: list[int] = []
    dst: list[int] = []
    for u in range(a):
        for v in range(u + 1, a):
            src.append(u)
            dst.append(v)
    # every edge endpoint once: sampling an entry is degree-proportional
    endpoints = np.empty(2 * (a * (a - 1) // 2 + a * (n - a)), dtype=np.int64)
    filled = 2 * len(src)
    endpoints[:filled] = src + dst
    for t in range(a, n):
        if filled:
            chosen: list[int] = []
            while len(chosen) < a:
                picks = endpoints[rng.integers(0, filled, size=2 * (a - len(chosen)))]
                for c in picks.tolist():
                    if c not in chosen:
                        chosen.append(c)
                        if len(chosen) == a:
                            break
        else:
            chosen = rng.choice(t, size=a, replace=False).tolist()
        for c in chosen:
            src.append(t)
            dst.append(c)
        endpoints[filled:filled + 2 * a:2] = t
        endpoints[filled + 1:filled + 2 * a:2] = chosen
        filled += 2 * a
    return Graph.from_edges(n, np.stack([np.array(src, dtype=np.int64),
                                         np.array(dst, dtype=np.int64)], axis=1))
