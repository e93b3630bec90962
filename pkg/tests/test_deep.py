import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import complete_pairs, random_multigraph, small_graphs
from ktrees.deep import components, is_k_deeply_connected, normal_representation
from ktrees.errors import DegenerateInput, InvalidArgument, NotDeeplyConnected
from ktrees.graph import Graph, gen_gnm, kcore
from ktrees.matroid import brute_force_rank


def brute_components(g, k):
    """Maximal vertex sets whose induced subgraph has k(|S|-1) independent edges."""
    tight = []
    for size in range(2, g.n + 1):
        for verts in itertools.combinations(range(g.n), size):
            sub, _ = g.induced(verts)
            if sub.m >= k * (size - 1) and brute_force_rank(sub, k) == k * (size - 1):
                tight.append(frozenset(verts))
    maximal = [s for s in tight if not any(s < t for t in tight)]
    covered = set().union(*maximal) if maximal else set()
    return sorted(maximal + [frozenset([v]) for v in range(g.n) if v not in covered], key=min)


class TestComponents:
    def test_tree_all_singletons(self):
        g = Graph(6, [(0, 1), (1, 2), (1, 3), (3, 4), (4, 5)])
        assert components(g, 2).nontrivial == ()

    def test_k4(self, k4):
        part = components(k4, 2)
        assert part.components == (frozenset(range(4)),)
        assert part.largest == 4

    def test_two_k4(self):
        pairs = complete_pairs(4) + [(u + 4, v + 4) for u, v in complete_pairs(4)] + [(3, 4)]
        part = components(Graph(8, pairs), 2)
        assert part.nontrivial == (frozenset(range(4)), frozenset(range(4, 8)))
        assert part.component_id.tolist() == [0] * 4 + [1] * 4

    def test_k1_is_connectivity(self):
        rng = random.Random(4)
        for _ in range(50):
            g = random_multigraph(rng, rng.randint(2, 20), rng.randint(0, 20))
            comps = list(components(g, 1).components)
            assert comps == g.connected_components()

    def test_bad_k(self, k4):
        with pytest.raises(InvalidArgument):
            components(k4, 0)
        with pytest.raises(InvalidArgument):
            components(k4, 2, method="magic")

    def test_matches_brute_force(self):
        rng = random.Random(77)
        for _ in range(60):
            n = rng.randint(2, 6)
            g = random_multigraph(rng, n, rng.randint(0, 12))
            k = rng.randint(1, 3)
            expect = brute_components(g, k)
            assert list(components(g, k).components) == expect
            assert list(components(g, k, method="probe").components) == expect

    @pytest.mark.parametrize("seed", range(8))
    def test_incremental_matches_probe(self, seed):
        rng = random.Random(seed)
        n = rng.randint(15, 60)
        k = rng.randint(1, 3)
        g = gen_gnm(n, rng.randint(n, min(4 * k * n, n * (n - 1) // 2)), seed)
        assert components(g, k).components == components(g, k, method="probe").components

    @settings(max_examples=100, deadline=None)
    @given(small_graphs(max_n=8, max_m=22), st.integers(1, 3))
    def test_refinement(self, g, k):
        coarse = components(g, k)
        for comp in components(g, k + 1).components:
            ids = {int(coarse.component_id[v]) for v in comp}
            assert len(ids) == 1

    @settings(max_examples=100, deadline=None)
    @given(small_graphs(max_n=7, max_m=18), st.integers(2, 3))
    def test_certificate_and_maximality(self, g, k):
        for comp in components(g, k).nontrivial:
            sub, _ = g.induced(comp)
            assert is_k_deeply_connected(sub, k)
            assert sub.m >= k * (len(comp) - 1)
            if len({tuple(sorted(e)) for e in sub.pairs()}) == sub.m:
                # a simple deeply connected graph keeps a non-empty (k+1)-core
                assert kcore(sub, k + 1).size > 0
            for w in set(range(g.n)) - comp:
                bigger, _ = g.induced(comp | {w})
                assert not is_k_deeply_connected(bigger, k)

    @settings(max_examples=100, deadline=None)
    @given(small_graphs(max_n=9, max_m=25), st.integers(1, 3))
    def test_edges_outside_core_are_in_basis(self, g, k):
        part = components(g, k)
        core = kcore(g, k + 1).vertices
        for eid, (u, v) in enumerate(g.pairs()):
            if u not in core or v not in core:
                assert eid in part.basis


@pytest.mark.parametrize("k", [2, 3])
def test_smallest_simple_component_is_complete(k):
    # in a simple graph a non-trivial component needs >= 2k vertices and mean degree >= 2k - 1
    rng = random.Random(k)
    seen = 0
    for _ in range(80):
        n = rng.randint(2 * k, 14)
        g = gen_gnm(n, rng.randint(0, n * (n - 1) // 2), rng.randrange(2**32))
        for comp in components(g, k).nontrivial:
            sub, _ = g.induced(sorted(comp))
            assert len(comp) >= 2 * k
            assert 2 * sub.m / len(comp) >= 2 * k - 1
            seen += 1
    assert seen > 20


class TestDeepConnectivity:
    def test_examples(self, k4):
        assert is_k_deeply_connected(k4, 2)
        assert not is_k_deeply_connected(Graph(3, complete_pairs(3)), 2)
        assert is_k_deeply_connected(Graph(2, [(0, 1)]), 1)
        assert is_k_deeply_connected(Graph(1), 3)

    def test_empty_graph(self):
        with pytest.raises(InvalidArgument):
            is_k_deeply_connected(Graph(0), 1)


class TestNormalRepresentation:
    def test_k4(self, k4):
        rep = normal_representation(k4, 2)
        assert rep.layers == (frozenset(range(4)),)
        assert rep.down_edges == {}

    def test_k4_plus_vertex(self):
        g = Graph(5, complete_pairs(4) + [(4, 0), (4, 1)])
        rep = normal_representation(g, 2)
        assert rep.layers == (frozenset(range(4)), frozenset({4}))
        assert sorted(rep.down_edges[4]) == [(4, 0), (4, 1)]

    def test_not_deeply_connected(self):
        with pytest.raises(NotDeeplyConnected):
            normal_representation(Graph(3, complete_pairs(3)), 2)

    def test_degenerate(self):
        with pytest.raises(DegenerateInput):
            normal_representation(Graph(1), 2)
        with pytest.raises(DegenerateInput):
            normal_representation(Graph(2, [(0, 1), (0, 1)]), 2)

    def test_k_too_small(self, k4):
        with pytest.raises(InvalidArgument):
            normal_representation(k4, 1)

    @staticmethod
    def check_layers(g, k, rep):
        layer = rep.layer_of()
        assert set(layer) == set(range(g.n))
        assert rep.layers[0] == kcore(g, k + 1).vertices
        for v, down in rep.down_edges.items():
            t = layer[v]
            assert t >= 1 and len(down) == k
            assert all(layer[w] < t for _, w in down)
            assert any(layer[w] == t - 1 for _, w in down)

    def test_layers_on_grown_instances(self):
        # grow a 2- or 3-deeply connected graph by attaching vertices with k edges
        rng = random.Random(12)
        for _ in range(40):
            k = rng.choice((2, 3))
            base = 2 * k
            pairs = complete_pairs(base)
            n = base
            for _ in range(rng.randint(1, 12)):
                targets = rng.sample(range(n), k)
                pairs += [(n, t) for t in targets]
                n += 1
            g = Graph(n, pairs)
            rep = normal_representation(g, k)
            self.check_layers(g, k, rep)

    def test_layers_on_random_components(self):
        for seed in range(10):
            g = gen_gnm(40, 140, seed)
            part = components(g, 2)
            for comp in part.nontrivial:
                sub, _ = g.induced(comp)
                self.check_layers(sub, 2, normal_representation(sub, 2))
