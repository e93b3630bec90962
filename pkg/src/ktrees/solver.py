"""Greedy minimum-weight union of k edge-disjoint spanning trees.

Edges are scanned by increasing (weight, id) and kept whenever they remain
independent in the union of k graphic matroids.  This is Kruskal's
algorithm with "joins two components" replaced by "joins two k-deeply
connected components".
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .deep import DeepPartition
from .errors import InstanceTooLarge, InvalidArgument
from .graph import WeightedGraph, gen_gnm, kcore, pair_count
from .matroid import DisjointSet, ForestFamily


@dataclass(frozen=True)
class Solution:
    k: int
    chosen_edges: tuple[int, ...]
    total_weight: float
    forests: tuple[frozenset, ...]
    feasible: bool

    @property
    def rank(self) -> int:
        return len(self.chosen_edges)


def edge_order(wg: WeightedGraph) -> np.ndarray:
    """Edge ids sorted by (weight, id)."""
    return np.lexsort((np.arange(wg.m), wg.weights))


def min_weight_union(wg: WeightedGraph, k: int) -> Solution:
    """Minimum-weight basis of the k-forest union matroid of ``wg``.

    Stops as soon as ``k(n-1)`` edges are accepted.  When the graph does not
    hold k edge-disjoint spanning trees the maximal independent set found is
    returned with ``feasible=False``.
    """
    if k < 1:
        raise InvalidArgument(f"tree multiplicity must be >= 1, got {k}")
    n = wg.n
    target = k * (n - 1) if n else 0
    fam = ForestFamily(n, k)
    pairs = wg.graph.edges
    for eid in edge_order(wg).tolist():
        if fam.rank >= target:
            break
        u, v = pairs[eid]
        fam.try_insert(int(u), int(v), eid)
    chosen = tuple(sorted(fam.members))
    total = math.fsum(wg.weights[list(chosen)].tolist()) if chosen else 0.0
    return Solution(k, chosen, total, tuple(fam.extract_forests()), len(chosen) == target)


def _splits_into_spanning_trees(n: int, pairs: list[tuple[int, int]], k: int) -> bool:
    # Backtracking over forest assignments; edges are exactly k(n-1), so k
    # acyclic classes are automatically spanning trees.
    parents = [list(range(n)) for _ in range(k)]

    def find(p, x):
        while p[x] != x:
            x = p[x]
        return x

    def place(idx):
        if idx == len(pairs):
            return True
        u, v = pairs[idx]
        tried_empty = False
        for i in range(k):
            p = parents[i]
            ru, rv = find(p, u), find(p, v)
            if ru == rv:
                continue
            # forests that are still edgeless are interchangeable
            empty = all(p[x] == x for x in range(n))
            if empty:
                if tried_empty:
                    continue
                tried_empty = True
            p[ru] = rv
            if place(idx + 1):
                return True
            p[ru] = ru
        return False

    return place(0)


def brute_force_min_union(wg: WeightedGraph, k: int) -> float | None:
    """Exhaustive minimum over all ``k(n-1)``-edge subsets that split into k spanning trees.

    Returns None when no such subset exists.  Limited to 16 edges.
    """
    if wg.m > 16:
        raise InstanceTooLarge(f"brute-force optimum handles at most 16 edges, got {wg.m}")
    if k < 1:
        raise InvalidArgument(f"tree multiplicity must be >= 1, got {k}")
    n = wg.n
    size = k * (n - 1)
    if size == 0:
        return 0.0
    pairs = wg.graph.pairs()
    weights = wg.weights.tolist()
    best = None
    for subset in itertools.combinations(range(wg.m), size):
        total = math.fsum(weights[i] for i in subset)
        if best is not None and total >= best:
            continue
        if _splits_into_spanning_trees(n, [pairs[i] for i in subset], k):
            best = total
    return best


def is_spanning_tree(n: int, pairs: list[tuple[int, int]]) -> bool:
    if len(pairs) != n - 1:
        return False
    dsu = DisjointSet(n)
    for u, v in pairs:
        if dsu.find(u) == dsu.find(v):
            return False
        dsu.union(u, v)
    return True


@dataclass(frozen=True)
class Checkpoint:
    m: int
    rank: int
    largest_nontrivial_component: int
    nontrivial_component_count: int
    core_size: int
    core_edges: int


@dataclass(frozen=True)
class ProcessTrace:
    n: int
    k: int
    seed: int
    checkpoints: tuple[Checkpoint, ...]


def run_process(n: int, k: int, m_checkpoints, seed: int) -> ProcessTrace:
    """Grow a uniform random graph edge by edge and record statistics at checkpoints.

    The edge order is a random permutation of all pairs (the prefix of
    ``gen_gnm``), so each checkpoint graph is distributed as G(n, m).  The
    deep partition comes from the same contracting family that tracks the
    rank; the (k+1)-core is peeled from the prefix graph.
    """
    marks = [int(m) for m in m_checkpoints]
    if any(b < a for a, b in zip(marks, marks[1:])):
        raise InvalidArgument("checkpoints must be sorted ascending")
    if k < 1:
        raise InvalidArgument(f"tree multiplicity must be >= 1, got {k}")
    if marks and (marks[0] < 0 or marks[-1] > pair_count(n)):
        raise InvalidArgument(f"checkpoints must lie in [0, {pair_count(n)}]")
    g = gen_gnm(n, marks[-1] if marks else 0, seed)
    pairs = g.edges.tolist()
    fam = ForestFamily(n, k)
    rows = []
    done = 0
    for m in marks:
        for eid in range(done, m):
            u, v = pairs[eid]
            fam.try_insert(u, v, eid)
        done = m
        part = DeepPartition.from_labels(k, fam.component_labels())
        core = kcore(g.prefix(m), k + 1)
        rows.append(Checkpoint(m, fam.rank, part.largest, len(part.nontrivial),
                               core.size, core.induced_edge_count))
    return ProcessTrace(n, k, seed, tuple(rows))

