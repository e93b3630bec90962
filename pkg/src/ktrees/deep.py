"""k-deeply connected components and the layered normal representation.

A vertex set is k-deeply connected when its induced subgraph holds k
edge-disjoint spanning trees.  Maximal such sets partition the vertices,
and two endpoints of an edge share a component exactly when a second copy
of that edge would be dependent in the union of k graphic matroids.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateInput, InvalidArgument, NotDeeplyConnected
from .graph import Graph, kcore
from .matroid import DisjointSet, ForestFamily, rank_of


@dataclass(frozen=True)
class DeepPartition:
    """Partition of ``0..n-1`` into k-deeply connected components.

    Components are ordered by their smallest vertex and ``component_id[v]``
    indexes into that order.  ``basis`` is the maximal independent edge set
    (edge ids) built while computing the partition.
    """

    k: int
    component_id: np.ndarray
    components: tuple[frozenset, ...]
    basis: frozenset = field(default=frozenset(), compare=False)

    @property
    def nontrivial(self) -> tuple[frozenset, ...]:
        return tuple(c for c in self.components if len(c) >= 2)

    @property
    def largest(self) -> int:
        """Size of the largest non-trivial component, 0 if there is none."""
        return max((len(c) for c in self.nontrivial), default=0)

    @classmethod
    def from_labels(cls, k: int, labels, basis=frozenset()) -> "DeepPartition":
        groups: dict[int, list[int]] = {}
        for v, lab in enumerate(labels):
            groups.setdefault(lab, []).append(v)
        comps = sorted((frozenset(vs) for vs in groups.values()), key=min)
        cid = np.empty(len(labels), dtype=np.int64)
        for i, c in enumerate(comps):
            cid[list(c)] = i
        return cls(k, cid, tuple(comps), frozenset(basis))


def components(g: Graph, k: int, *, method: str = "incremental") -> DeepPartition:
    """k-deeply connected components of ``g``.

    ``method="incremental"`` reads the partition off a contracting forest
    family fed with every edge.  ``method="probe"`` builds a plain family and
    then tests a duplicate of every edge, merging the endpoints of each
    duplicate that comes back dependent; it is slower and serves as a
    cross-check.
    """
    if k < 1:
        raise InvalidArgument(f"tree multiplicity must be >= 1, got {k}")
    pairs = g.edges.tolist()
    if method == "incremental":
        fam = ForestFamily(g.n, k)
        for eid, (u, v) in enumerate(pairs):
            fam.try_insert(u, v, eid)
        return DeepPartition.from_labels(k, fam.component_labels(), fam.members)
    if method != "probe":
        raise InvalidArgument(f"unknown method {method!r}")
    fam = ForestFamily(g.n, k, contract=False)
    for eid, (u, v) in enumerate(pairs):
        fam.try_insert(u, v, eid)
    dsu = DisjointSet(g.n)
    for u, v in pairs:
        if dsu.find(u) != dsu.find(v) and not fam.probe(u, v):
            dsu.union(u, v)
    return DeepPartition.from_labels(k, [dsu.find(v) for v in range(g.n)], fam.members)


def is_k_deeply_connected(g: Graph, k: int) -> bool:
    if g.n < 1:
        raise InvalidArgument("need at least one vertex")
    return rank_of(g, k) == k * (g.n - 1)


@dataclass(frozen=True)
class Layers:
    """Normal representation: layer 0 is the (k+1)-core.

    ``down_edges[v]`` lists the k edges ``(v, w)`` joining a vertex ``v`` of a
    positive layer to lower layers.
    """

    k: int
    layers: tuple[frozenset, ...]
    down_edges: dict

    def layer_of(self) -> dict[int, int]:
        return {v: t for t, layer in enumerate(self.layers) for v in layer}


def normal_representation(g: Graph, k: int) -> Layers:
    """Layer a k-deeply connected graph by peeling vertices of degree exactly k.

    Among peelable vertices the lowest id goes first.  A peeled vertex sits
    one layer above the highest of its k neighbours still present at peel
    time, so it has exactly k edges downwards and at least one into the layer
    just below.
    """
    if k < 2:
        raise InvalidArgument(f"normal representation needs k >= 2, got {k}")
    if g.n < 2:
        raise DegenerateInput("normal representation needs at least two vertices")
    if not is_k_deeply_connected(g, k):
        raise NotDeeplyConnected(f"graph on {g.n} vertices is not {k}-deeply connected")
    deg = g.degrees().tolist()
    incident: list[list[int]] = [[] for _ in range(g.n)]
    pairs = g.edges.tolist()
    for eid, (u, v) in enumerate(pairs):
        incident[u].append(eid)
        incident[v].append(eid)
    alive = [True] * g.n
    heap = [v for v in range(g.n) if deg[v] == k]
    heapq.heapify(heap)
    peeled: list[tuple[int, list[tuple[int, int]]]] = []
    remaining = g.n
    while heap and remaining > 1:
        v = heapq.heappop(heap)
        if not alive[v] or deg[v] != k:
            continue
        alive[v] = False
        remaining -= 1
        down = []
        for eid in incident[v]:
            a, b = pairs[eid]
            w = b if a == v else a
            if alive[w]:
                down.append((v, w))
                deg[w] -= 1
                if deg[w] == k:
                    heapq.heappush(heap, w)
        peeled.append((v, down))
    core = frozenset(v for v in range(g.n) if alive[v])
    if len(core) < 2:
        # only multigraphs get here: a simple k-deeply connected graph keeps a
        # non-empty (k+1)-core
        raise DegenerateInput("peeling exhausted the graph; the (k+1)-core is empty")
    assert core == kcore(g, k + 1).vertices
    layer = {v: 0 for v in core}
    down_edges: dict[int, list[tuple[int, int]]] = {}
    for v, down in reversed(peeled):
        layer[v] = 1 + max(layer[w] for _, w in down)
        down_edges[v] = down
    depth = max(layer.values())
    buckets: list[set[int]] = [set() for _ in range(depth + 1)]
    for v, t in layer.items():
        buckets[t].add(v)
    return Layers(k, tuple(frozenset(b) for b in buckets), down_edges)
