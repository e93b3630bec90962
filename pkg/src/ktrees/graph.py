"""Graph containers, random graph models and kappa-core peeling.

Vertices are the dense integers ``0..n-1``.  A graph is an ordered edge
sequence (an ``(m, 2)`` integer array); the order is the insertion order of
the random graph process, and parallel edges are allowed.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidArgument
from .streams import as_generator


def _as_edge_array(edges) -> np.ndarray:
    arr = np.asarray(edges, dtype=np.int64)
    if arr.size == 0:
        arr = np.zeros((0, 2), dtype=np.int64)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise InvalidArgument(f"edges must have shape (m, 2), got {arr.shape}")
    return arr


@dataclass(frozen=True, eq=False)
class Graph:
    """An undirected multigraph on ``n`` vertices without self-loops."""

    n: int
    edges: np.ndarray = field(default_factory=lambda: np.zeros((0, 2), dtype=np.int64))

    def __post_init__(self):
        if self.n < 0:
            raise InvalidArgument(f"vertex count must be non-negative, got {self.n}")
        arr = _as_edge_array(self.edges)
        if len(arr):
            if arr.min() < 0 or arr.max() >= self.n:
                raise InvalidArgument(f"edge endpoint out of range for n={self.n}")
            if np.any(arr[:, 0] == arr[:, 1]):
                raise InvalidArgument("self-loops are not allowed")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "edges", arr)

    @property
    def m(self) -> int:
        return len(self.edges)

    def __len__(self) -> int:
        return self.m

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.edges, other.edges)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def pairs(self) -> list[tuple[int, int]]:
        """The edge sequence as a list of ``(u, v)`` tuples."""
        return [(int(u), int(v)) for u, v in self.edges.tolist()]

    def prefix(self, m: int) -> "Graph":
        """The graph formed by the first ``m`` edges."""
        return Graph(self.n, self.edges[:m])

    def edge_subgraph(self, edge_ids: Iterable[int]) -> "Graph":
        ids = np.fromiter(edge_ids, dtype=np.int64)
        return Graph(self.n, self.edges[ids])

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph, relabelled to ``0..len(vertices)-1``.

        Returns the subgraph and the list mapping new labels to old ones.
        """
        keep = sorted(set(int(v) for v in vertices))
        index = np.full(self.n, -1, dtype=np.int64)
        index[keep] = np.arange(len(keep))
        mapped = index[self.edges] if self.m else np.zeros((0, 2), dtype=np.int64)
        inside = (mapped >= 0).all(axis=1) if self.m else np.zeros(0, dtype=bool)
        return Graph(len(keep), mapped[inside]), keep

    def degrees(self) -> np.ndarray:
        return np.bincount(self.edges.ravel(), minlength=self.n)

    def adjacency(self) -> list[list[int]]:
        """Neighbour lists; a parallel edge contributes one entry per copy."""
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges.tolist():
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def connected_components(self) -> list[set[int]]:
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges.tolist():
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
        groups: dict[int, set[int]] = {}
        for v in range(self.n):
            groups.setdefault(find(v), set()).add(v)
        return sorted(groups.values(), key=min)


@dataclass(frozen=True, eq=False)
class WeightedGraph:
    graph: Graph
    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.float64).reshape(-1).copy()
        if len(w) != self.graph.m:
            raise InvalidArgument(f"{len(w)} weights for {self.graph.m} edges")
        if len(w) and (np.isnan(w).any() or w.min() < 0):
            raise InvalidArgument("weights must be non-negative reals")
        w.flags.writeable = False
        object.__setattr__(self, "weights", w)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def m(self) -> int:
        return self.graph.m

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self.n}, m={self.m})"

    @classmethod
    def from_triples(cls, n: int, triples: Sequence[tuple[int, int, float]]) -> "WeightedGraph":
        edges = [(u, v) for u, v, _ in triples]
        return cls(Graph(n, edges), [w for _, _, w in triples])


@dataclass(frozen=True)
class WeightDistribution:
    """Edge weight law with a known density slope at zero.

    ``kind`` is one of ``uniform01``, ``uniform`` (on ``[0, param]``) or
    ``exponential`` (with rate ``param``).
    """

    kind: str = "uniform01"
    param: float = 1.0

    def __post_init__(self):
        if self.kind not in ("uniform01", "uniform", "exponential"):
            raise InvalidArgument(f"unknown weight distribution {self.kind!r}")
        if not (self.param > 0 and math.isfinite(self.param)):
            raise InvalidArgument(f"distribution parameter must be positive, got {self.param}")
        if self.kind == "uniform01" and self.param != 1.0:
            raise InvalidArgument("uniform01 takes no parameter")

    @property
    def slope(self) -> float:
        """``a`` with ``P[X <= eps] ~ a * eps`` as ``eps -> 0``."""
        if self.kind == "uniform":
            return 1.0 / self.param
        return self.param if self.kind == "exponential" else 1.0

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        u = rng.random(size)
        if self.kind == "uniform01":
            return u
        if self.kind == "uniform":
            return u * self.param
        return -np.log1p(-u) / self.param

    @classmethod
    def parse(cls, text: str) -> "WeightDistribution":
        """Parse ``uniform01``, ``uniform:<b>`` or ``exp:<rate>``."""
        name, _, arg = text.strip().partition(":")
        try:
            if name == "uniform01" and not arg:
                return cls()
            if name == "uniform" and arg:
                return cls("uniform", float(arg))
            if name in ("exp", "exponential") and arg:
                return cls("exponential", float(arg))
        except ValueError as exc:
            raise InvalidArgument(f"bad distribution description {text!r}") from exc
        raise InvalidArgument(f"bad distribution description {text!r}")

    def __str__(self) -> str:
        if self.kind == "uniform01":
            return "uniform01"
        if self.kind == "uniform":
            return f"uniform:{self.param:g}"
        return f"exp:{self.param:g}"


@dataclass(frozen=True)
class CoreResult:
    kappa: int
    vertices: frozenset
    induced_edge_count: int

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def density(self) -> float:
        """Average degree ``2|E|/|V|`` of the core (0 when empty)."""
        return 2.0 * self.induced_edge_count / len(self.vertices) if self.vertices else 0.0


def pair_count(n: int) -> int:
    return n * (n - 1) // 2


def decode_pairs(codes: np.ndarray) -> np.ndarray:
    """Map pair codes ``v(v-1)/2 + u`` (``u < v``) back to ``(u, v)`` rows."""
    c = np.asarray(codes, dtype=np.int64)
    v = np.floor((1.0 + np.sqrt(1.0 + 8.0 * c.astype(np.float64))) / 2.0).astype(np.int64)
    # float sqrt can be off by one for large codes
    v -= (v * (v - 1) // 2 > c).astype(np.int64)
    v += ((v + 1) * v // 2 <= c).astype(np.int64)
    u = c - v * (v - 1) // 2
    return np.stack([u, v], axis=1)


def _sample_codes(total: int, m: int, rng: np.random.Generator) -> np.ndarray:
    # Partial Fisher-Yates over 0..total-1 with a sparse swap table.  Draw i
    # depends only on the first i stream values, so prefixes of a longer
    # sample coincide with shorter samples from the same seed.
    if m == 0:
        return np.zeros(0, dtype=np.int64)
    picks = rng.integers(np.arange(m, dtype=np.int64), total, dtype=np.int64).tolist()
    swapped: dict[int, int] = {}
    out = []
    for i, j in enumerate(picks):
        vj = swapped.get(j, j)
        swapped[j] = swapped.get(i, i)
        out.append(vj)
    return np.array(out, dtype=np.int64)


def gen_gnm(n: int, m: int, seed) -> Graph:
    """Uniform random graph with exactly ``m`` edges, in random process order."""
    total = pair_count(n)
    if n < 0 or not 0 <= m <= total:
        raise InvalidArgument(f"need 0 <= m <= {total} for n={n}, got m={m}")
    rng = as_generator(seed)
    return Graph(n, decode_pairs(_sample_codes(total, m, rng)))


def gen_gnp(n: int, p: float, seed) -> Graph:
    """Binomial random graph: each pair present independently with probability ``p``.

    The edge count is drawn from ``Bin(n(n-1)/2, p)`` and the edge set is then
    uniform given the count, which is the same law.
    """
    if not 0.0 <= p <= 1.0:
        raise InvalidArgument(f"p must lie in [0, 1], got {p}")
    if n < 0:
        raise InvalidArgument(f"vertex count must be non-negative, got {n}")
    rng = as_generator(seed)
    total = pair_count(n)
    m = int(rng.binomial(total, p)) if total else 0
    return Graph(n, decode_pairs(_sample_codes(total, m, rng)))


def gen_weighted_complete(n: int, dist: WeightDistribution, seed) -> WeightedGraph:
    """Complete graph with i.i.d. weights, edges sorted by (weight, pair code)."""
    if n < 1:
        raise InvalidArgument(f"need n >= 1, got {n}")
    rng = as_generator(seed)
    total = pair_count(n)
    weights = dist.sample(rng, total)
    order = np.argsort(weights, kind="stable")
    return WeightedGraph(Graph(n, decode_pairs(order)), weights[order])


def kcore(g: Graph, kappa: int, *, peel_order: Sequence[int] | None = None) -> CoreResult:
    """Largest induced subgraph of minimum degree at least ``kappa``.

    Vertices of current degree below ``kappa`` are peeled until none remain.
    ``peel_order`` only changes the order in which such vertices are taken;
    the result is the same for every order.
    """
    if kappa < 0:
        raise InvalidArgument(f"kappa must be non-negative, got {kappa}")
    deg = g.degrees().tolist()
    adj = g.adjacency()
    alive = [True] * g.n
    order = range(g.n) if peel_order is None else peel_order
    stack = deque(v for v in order if deg[v] < kappa)
    queued = [False] * g.n
    for v in stack:
        queued[v] = True
    while stack:
        v = stack.popleft()
        alive[v] = False
        for w in adj[v]:
            if alive[w]:
                deg[w] -= 1
                if deg[w] < kappa and not queued[w]:
                    queued[w] = True
                    stack.append(w)
    verts = frozenset(v for v in range(g.n) if alive[v])
    edges = sum(1 for u, v in g.edges.tolist() if alive[u] and alive[v])
    return CoreResult(kappa, verts, edges)
