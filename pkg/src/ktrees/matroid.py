"""Union of k graphic matroids, kept as k edge-disjoint forests.

An edge set is independent in the union matroid when it splits into k
forests.  :class:`ForestFamily` stores such a split for a growing set of
accepted edges.  Insertion runs a breadth-first augmenting search over the
exchange structure: an edge ``x`` may enter forest ``i`` by evicting any edge
``y`` on the ``i``-path between ``x``'s endpoints, and the search stops as
soon as some forest takes an edge without closing a cycle.

With ``contract=True`` (the default) the family also maintains the
k-deeply connected components of the accepted edges.  Every forest spans
each component as a subtree, so components are contracted to single nodes:
an edge inside a component is dependent without any search, and searches
only walk the contracted forests.  ``contract=False`` keeps the plain
search over the raw forests and is the reference the fast path is tested
against.
"""

from __future__ import annotations

import enum
import itertools
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .errors import InstanceTooLarge, InvalidArgument
from .graph import Graph

_NEW = -1  # label of the edge being inserted, before it has an id


class DisjointSet:
    """Union-find with path halving and union by size."""

    __slots__ = ("parent", "size")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> int:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return ra

    def attach(self, root: int, other: int) -> None:
        """Hang root ``other`` under root ``root``."""
        self.parent[other] = root
        self.size[root] += self.size[other]


class Status(enum.Enum):
    INSERTED = "inserted"
    DEPENDENT = "dependent"


@dataclass(frozen=True)
class InsertOutcome:
    """Result of :meth:`ForestFamily.try_insert`.

    ``exchanges`` lists the ``(edge, from_forest, to_forest)`` moves applied
    to existing members, and ``forest`` is where the new edge landed.  For a
    dependent edge ``witness`` optionally holds a vertex set that spans more
    than ``k(|set| - 1)`` edges once the new edge is added.
    """

    status: Status
    exchanges: tuple = ()
    forest: int | None = None
    witness: frozenset | None = None

    @property
    def inserted(self) -> bool:
        return self.status is Status.INSERTED


@dataclass
class ForestFamily:
    n: int
    k: int
    contract: bool = True
    _ends: dict = field(default_factory=dict, init=False, repr=False)
    _forest_of: dict = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        if self.n < 0:
            raise InvalidArgument(f"vertex count must be non-negative, got {self.n}")
        if self.k < 1:
            raise InvalidArgument(f"tree multiplicity must be >= 1, got {self.k}")
        self._forests = [set() for _ in range(self.k)]
        # Spans never shrink: an exchange replaces edges by edges of the same
        # span, so per-forest connectivity is a union-find without deletions.
        self._tree_uf = [DisjointSet(self.n) for _ in range(self.k)]
        # Deep components; stays all-singletons when contract=False.
        self._comp = DisjointSet(self.n)
        # Contracted forests over component representatives: incident edge
        # ids per node, and the edge to the parent in a rooted orientation.
        self._adj = [dict() for _ in range(self.k)]
        self._up = [dict() for _ in range(self.k)]
        self._next_id = 0

    # ------------------------------------------------------------------ queries

    @property
    def rank(self) -> int:
        """Number of accepted edges, i.e. the rank of everything offered so far."""
        return len(self._ends)

    @property
    def members(self) -> frozenset:
        return frozenset(self._ends)

    def edge(self, eid: int) -> tuple[int, int]:
        return self._ends[eid]

    def edge_pairs(self) -> list[tuple[int, int]]:
        """Endpoints of every member edge."""
        return list(self._ends.values())

    def forest_of(self, eid: int) -> int:
        return self._forest_of[eid]

    def extract_forests(self) -> list[frozenset]:
        """The k pairwise disjoint forests, as sets of edge ids."""
        return [frozenset(f) for f in self._forests]

    def component_of(self, v: int) -> int:
        """Representative of the deep component containing ``v``."""
        self._require_contract()
        return self._comp.find(v)

    def component_labels(self) -> list[int]:
        self._require_contract()
        find = self._comp.find
        return [find(v) for v in range(self.n)]

    def component_vertices(self, v: int) -> set[int]:
        self._require_contract()
        find = self._comp.find
        r = find(v)
        return {w for w in range(self.n) if find(w) == r}

    def _require_contract(self):
        if not self.contract:
            raise RuntimeError("deep components are only tracked with contract=True")

    # ---------------------------------------------------------------- mutation

    def try_insert(self, u: int, v: int, eid: int | None = None, *,
                   diagnose: bool = False) -> InsertOutcome:
        """Accept edge ``(u, v)`` if the members stay a union of k forests.

        ``eid`` names the edge (defaults to a fresh counter value).  A
        dependent edge leaves the family untouched; with ``diagnose=True`` its
        outcome carries the witnessing vertex set.
        """
        self._check_endpoints(u, v)
        if eid is None:
            eid = self._next_id
        if eid in self._ends or eid < 0:
            raise InvalidArgument(f"edge id {eid} is negative or already a member")
        find = self._comp.find
        a, b = find(u), find(v)
        if a == b:
            witness = frozenset(self.component_vertices(u)) if diagnose else None
            return InsertOutcome(Status.DEPENDENT, witness=witness)
        x, sink, label = self._search(a, b)
        if x is None:
            if self.contract:
                raise RuntimeError("edge between distinct deep components was rejected")
            witness = frozenset(self._span(label, a, b)) if diagnose else None
            return InsertOutcome(Status.DEPENDENT, witness=witness)
        self._next_id = max(self._next_id, eid + 1)
        self._ends[eid] = (u, v)
        moves, forest = self._augment(x, sink, label, eid, a, b)
        if self.contract:
            self._absorb(a, b)
        return InsertOutcome(Status.INSERTED, exchanges=tuple(moves), forest=forest)

    def probe(self, u: int, v: int) -> bool:
        """Would ``(u, v)`` be accepted?  Never modifies the family."""
        self._check_endpoints(u, v)
        find = self._comp.find
        a, b = find(u), find(v)
        if a == b:
            return False
        return self._search(a, b)[0] is not None

    def dependent_set(self, u: int, v: int) -> frozenset | None:
        """Witness vertex set for a dependent ``(u, v)``, or None if independent."""
        self._check_endpoints(u, v)
        find = self._comp.find
        a, b = find(u), find(v)
        if a == b:
            return frozenset(self.component_vertices(u))
        x, _, label = self._search(a, b)
        if x is not None:
            return None
        return frozenset(self._span(label, a, b))

    def _check_endpoints(self, u, v):
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise InvalidArgument(f"endpoint out of range: ({u}, {v}) with n={self.n}")
        if u == v:
            raise InvalidArgument(f"self-loop ({u}, {u}) is not an edge")

    # ------------------------------------------------------------------ search

    def _other(self, e: int, s: int) -> int:
        u, v = self._ends[e]
        find = self._comp.find
        fu = find(u)
        return find(v) if fu == s else fu

    def _toward(self, e: int, s: int) -> tuple[int, int, int]:
        """Node across edge ``e`` from node ``s``, then the raw endpoints on ``s``'s and the far side."""
        u, v = self._ends[e]
        find = self._comp.find
        fu = find(u)
        return (find(v), u, v) if fu == s else (fu, v, u)

    def _fresh_path(self, i: int, a: int, b: int, lab: dict) -> list[int]:
        """Unlabeled edges on the ``a``-``b`` path of contracted forest ``i``.

        ``lab`` is a scratch union-find (child class -> parent class) in which
        every labeled edge of the forest is contracted; a class is named by
        its topmost node.  Climbing both ends in turn therefore costs at most
        twice the number of edges returned, and those edges are contracted
        before returning.
        """
        up = self._up[i]
        find = self._comp.find

        def lf(x):
            root = x
            while root in lab:
                root = lab[root]
            while x != root:
                lab[x], x = root, lab[x]
            return root

        ca, cb = lf(a), lf(b)
        if ca == cb:
            return []
        trail_a, trail_b = [ca], [cb]
        edges_a: list[int] = []
        edges_b: list[int] = []
        pos_a, pos_b = {ca: 0}, {cb: 0}
        while True:
            if ca in pos_b:
                meet, cut_a, cut_b = ca, len(edges_a), pos_b[ca]
                break
            if cb in pos_a:
                meet, cut_a, cut_b = cb, pos_a[cb], len(edges_b)
                break
            moved = False
            step = up.get(ca)
            if step is not None:
                ca = lf(find(step[1]))
                pos_a[ca] = len(trail_a)
                trail_a.append(ca)
                edges_a.append(step[0])
                moved = True
            step = up.get(cb)
            if step is not None:
                cb = lf(find(step[1]))
                pos_b[cb] = len(trail_b)
                trail_b.append(cb)
                edges_b.append(step[0])
                moved = True
            if not moved:
                raise RuntimeError(f"nodes {a} and {b} are not in one tree of forest {i}")
        for c in trail_a[:cut_a]:
            lab[c] = meet
        for c in trail_b[:cut_b]:
            lab[c] = meet
        return edges_a[:cut_a] + edges_b[:cut_b]

    def _search(self, a: int, b: int):
        """Breadth-first augmenting search for a new edge between nodes ``a`` and ``b``.

        Returns ``(x, i, label)`` where ``x`` can enter forest ``i`` directly,
        or ``(None, -1, label)`` when no augmenting sequence exists.  ``label``
        maps each reached edge to the edge that would take its place.
        """
        find = self._comp.find
        ends = self._ends
        forest_of = self._forest_of
        k = self.k
        tree_find = [uf.find for uf in self._tree_uf]
        labs = [dict() for _ in range(k)]
        label = {_NEW: _NEW}
        queue = deque([_NEW])
        while queue:
            x = queue.popleft()
            if x == _NEW:
                xa, xb, fx = a, b, -1
            else:
                u, v = ends[x]
                xa, xb, fx = find(u), find(v), forest_of[x]
            for i in range(k):
                if i != fx and tree_find[i](xa) != tree_find[i](xb):
                    return x, i, label
            for i in range(k):
                if i == fx:
                    continue
                fresh = self._fresh_path(i, xa, xb, labs[i])
                fresh.sort()
                for y in fresh:
                    label[y] = x
                    queue.append(y)
        return None, -1, label

    def _span(self, label, a, b) -> set[int]:
        find = self._comp.find
        nodes = {a, b}
        for e in label:
            if e != _NEW:
                u, v = self._ends[e]
                nodes.add(find(u))
                nodes.add(find(v))
        if not self.contract:
            return nodes
        return {w for w in range(self.n) if find(w) in nodes}

    # ------------------------------------------------------------ augmentation

    def _augment(self, x, sink, label, eid, a, b):
        moves = []
        cur, to = x, sink
        while cur != _NEW:
            frm = self._forest_of[cur]
            moves.append((cur, frm, to))
            to, cur = frm, label[cur]
        forest = to
        if not moves:
            self._link(sink, eid, a, b)
            return moves, forest

        find = self._comp.find
        starts: dict[int, list[int]] = {}
        for e, frm, _ in moves:
            self._detach(frm, e)
        for e, frm, dst in moves:
            self._attach(dst, e)
        self._attach(forest, eid)
        for e, frm, dst in moves:
            u, v = self._ends[e]
            starts.setdefault(frm, []).extend((find(u), find(v)))
            starts.setdefault(dst, []).append(find(u))
        starts.setdefault(forest, []).append(a)
        sx = eid if x == _NEW else x
        u, v = self._ends[sx]
        self._tree_uf[sink].union(u, v)
        for i, nodes in starts.items():
            seen: set[int] = set()
            for s in nodes:
                if s not in seen:
                    seen |= self._reroot(i, s)
        return moves, forest

    def _attach(self, i, e):
        self._forests[i].add(e)
        self._forest_of[e] = i
        u, v = self._ends[e]
        find = self._comp.find
        adj = self._adj[i]
        for s in (find(u), find(v)):
            adj.setdefault(s, set()).add(e)

    def _detach(self, i, e):
        self._forests[i].discard(e)
        u, v = self._ends[e]
        find = self._comp.find
        adj = self._adj[i]
        for s in (find(u), find(v)):
            edges = adj[s]
            edges.discard(e)
            if not edges:
                del adj[s]

    def _link(self, i, e, a, b):
        """Join two trees of forest ``i`` by the new edge ``e``."""
        uf = self._tree_uf[i]
        if uf.size[uf.find(a)] < uf.size[uf.find(b)]:
            low, high = a, b
        else:
            low, high = b, a
        self._reroot(i, low)
        self._attach(i, e)
        self._up[i][low] = (e, self._toward(e, low)[2])
        uf.union(a, b)

    def _reroot(self, i: int, start: int) -> set[int]:
        """Re-orient the tree of forest ``i`` containing ``start`` towards ``start``."""
        adj = self._adj[i]
        up = self._up[i]
        toward = self._toward
        up.pop(start, None)
        seen = {start}
        stack = [start]
        while stack:
            s = stack.pop()
            for e in adj.get(s, ()):
                t, near, _ = toward(e, s)
                if t not in seen:
                    seen.add(t)
                    up[t] = (e, near)
                    stack.append(t)
        return seen

    # ----------------------------------------------------------- contraction

    def _closure(self, a: int, b: int):
        """Nodes of the tight set forced by a second copy of edge ``(a, b)``, if any."""
        x, _, label = self._search(a, b)
        if x is not None:
            return None
        find = self._comp.find
        nodes = {a, b}
        for e in label:
            if e != _NEW:
                u, v = self._ends[e]
                nodes.add(find(u))
                nodes.add(find(v))
        return nodes

    def _absorb(self, a: int, b: int) -> None:
        # A new component must contain the accepted edge.  The duplicate probe
        # finds a tight core around it; the rest of the component is reachable
        # from the non-root merged nodes, so their edges are probed in turn.
        group = self._closure(a, b)
        if group is None:
            return
        find = self._comp.find
        pending: deque[int] = deque()
        while group is not None:
            pending.extend(self._merge(group))
            group = None
            while pending:
                u, v = self._ends[pending.popleft()]
                fu, fv = find(u), find(v)
                if fu != fv:
                    group = self._closure(fu, fv)
                    if group is not None:
                        break

    def _merge(self, group: set[int]) -> list[int]:
        size = self._comp.size
        root = max(group, key=lambda s: (size[s], -s))
        small = sorted(s for s in group if s != root)
        other = self._other
        find = self._comp.find
        outward = []
        for i in range(self.k):
            adj, up = self._adj[i], self._up[i]
            top = None
            for s in group:
                step = up.get(s)
                if step is not None and find(step[1]) not in group:
                    top = step
            root_edges = adj.setdefault(root, set())
            for s in small:
                for e in adj.pop(s, ()):
                    if other(e, s) in group:
                        root_edges.discard(e)
                    else:
                        root_edges.add(e)
                        outward.append(e)
                up.pop(s, None)
            if top is None:
                up.pop(root, None)
            else:
                up[root] = top
            if not root_edges:
                del adj[root]
        for s in small:
            self._comp.attach(root, s)
        return outward

    # ------------------------------------------------------------- checking

    def check_invariants(self) -> None:
        """Raise AssertionError if any internal structure is inconsistent."""
        all_edges = set()
        for i, forest in enumerate(self._forests):
            assert not (all_edges & forest), "forests overlap"
            all_edges |= forest
            uf = DisjointSet(self.n)
            for e in forest:
                u, v = self._ends[e]
                assert uf.find(u) != uf.find(v), f"forest {i} has a cycle"
                uf.union(u, v)
                assert self._forest_of[e] == i
            for w in range(self.n):
                same = uf.find(w) == uf.find(0)
                assert same == (self._tree_uf[i].find(w) == self._tree_uf[i].find(0))
        assert all_edges == set(self._ends), "forest union differs from members"
        find = self._comp.find
        for i in range(self.k):
            expected: dict[int, set] = {}
            for e in self._forests[i]:
                u, v = self._ends[e]
                if find(u) != find(v):
                    expected.setdefault(find(u), set()).add(e)
                    expected.setdefault(find(v), set()).add(e)
            assert expected == self._adj[i], f"contracted adjacency of forest {i} is stale"
            for s, (e, w) in self._up[i].items():
                assert s == find(s) and e in self._adj[i][s]
                assert find(w) == self._other(e, s)
            for s in self._adj[i]:
                steps = 0
                while s in self._up[i]:
                    s = find(self._up[i][s][1])
                    steps += 1
                    assert steps <= self.n, f"parent pointers of forest {i} cycle"
        if self.contract:
            groups: dict[int, list[int]] = {}
            for w in range(self.n):
                groups.setdefault(find(w), []).append(w)
            for members in groups.values():
                if len(members) < 2:
                    continue
                inside = set(members)
                for i in range(self.k):
                    count = sum(1 for e in self._forests[i]
                                if self._ends[e][0] in inside and self._ends[e][1] in inside)
                    assert count == len(members) - 1, "component not spanned by every forest"


def rank_of(g: Graph, k: int) -> int:
    """Rank of the edge set of ``g`` in the union of k graphic matroids."""
    if k < 1:
        raise InvalidArgument(f"tree multiplicity must be >= 1, got {k}")
    fam = ForestFamily(g.n, k)
    for eid, (u, v) in enumerate(g.edges.tolist()):
        fam.try_insert(u, v, eid)
    return fam.rank


def extract_forests(fam: ForestFamily) -> list[frozenset]:
    return fam.extract_forests()


def _sparse_subsets(n: int, pairs, k: int) -> np.ndarray:
    """Boolean mask over all edge subsets: no vertex set of size m spans > k(m-1) of them."""
    m = len(pairs)
    subsets = np.arange(1 << m, dtype=np.int64)
    ok = np.ones(1 << m, dtype=bool)
    bits = (subsets[:, None] >> np.arange(m)) & 1
    for size in range(2, n + 1):
        for verts in itertools.combinations(range(n), size):
            vs = set(verts)
            inside = np.array([u in vs and v in vs for u, v in pairs], dtype=bool)
            if inside.sum() <= k * (size - 1):
                continue
            ok &= bits[:, inside].sum(axis=1) <= k * (size - 1)
    return ok


def brute_force_rank(g: Graph, k: int) -> int:
    """Rank by exhaustive search over edge subsets and vertex subsets.

    Only usable for at most 20 edges.  Relies on nothing but the counting
    criterion: a subset splits into k forests iff no m vertices span more
    than ``k(m-1)`` of its edges.
    """
    if g.m > 20:
        raise InstanceTooLarge(f"brute-force rank handles at most 20 edges, got {g.m}")
    if k < 1:
        raise InvalidArgument(f"tree multiplicity must be >= 1, got {k}")
    pairs = g.pairs()
    used = sorted({w for e in pairs for w in e})
    relabel = {w: i for i, w in enumerate(used)}
    pairs = [(relabel[u], relabel[v]) for u, v in pairs]
    ok = _sparse_subsets(len(used), pairs, k)
    sizes = np.array([bin(s).count("1") for s in range(1 << g.m)])
    return int(sizes[ok].max())
