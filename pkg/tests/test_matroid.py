import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import complete_pairs, random_multigraph, small_graphs
from ktrees.errors import InstanceTooLarge, InvalidArgument
from ktrees.graph import Graph, gen_gnm
from ktrees.matroid import (
    DisjointSet,
    ForestFamily,
    Status,
    brute_force_rank,
    extract_forests,
    rank_of,
)


def is_forest(n, pairs):
    dsu = DisjointSet(n)
    for u, v in pairs:
        if dsu.find(u) == dsu.find(v):
            return False
        dsu.union(u, v)
    return True


def two_coloring_exists(n, pairs):
    # exhaustive search over 2-colourings into two spanning trees
    for mask in range(1 << len(pairs)):
        a = [e for i, e in enumerate(pairs) if mask >> i & 1]
        b = [e for i, e in enumerate(pairs) if not mask >> i & 1]
        if len(a) == len(b) == n - 1 and is_forest(n, a) and is_forest(n, b):
            return True
    return False


class TestTryInsert:
    def test_first_edge(self):
        fam = ForestFamily(4, 2)
        out = fam.try_insert(0, 1)
        assert out.status is Status.INSERTED and out.exchanges == ()

    @pytest.mark.parametrize("order", list(itertools.permutations(range(6)))[::37])
    def test_k4_all_inserted_then_duplicate_dependent(self, order):
        pairs = complete_pairs(4)
        assert two_coloring_exists(4, pairs)
        for contract in (True, False):
            fam = ForestFamily(4, 2, contract=contract)
            for i in order:
                assert fam.try_insert(*pairs[i], eid=i).inserted
            fam.check_invariants()
            before = [set(f) for f in fam.extract_forests()]
            out = fam.try_insert(0, 1, diagnose=True)
            assert out.status is Status.DEPENDENT
            assert out.witness == frozenset(range(4))
            assert [set(f) for f in fam.extract_forests()] == before

    def test_errors(self):
        fam = ForestFamily(3, 2)
        with pytest.raises(InvalidArgument):
            fam.try_insert(0, 3)
        with pytest.raises(InvalidArgument):
            fam.try_insert(1, 1)
        fam.try_insert(0, 1, eid=5)
        with pytest.raises(InvalidArgument):
            fam.try_insert(1, 2, eid=5)

    def test_bad_construction(self):
        with pytest.raises(InvalidArgument):
            ForestFamily(3, 0)

    def test_exchange_reported(self):
        # k=2 on a triangle plus a chord forces a swap for some order
        fam = ForestFamily(3, 2)
        outs = [fam.try_insert(u, v) for u, v in [(0, 1), (0, 1), (1, 2), (0, 2)]]
        assert all(o.inserted for o in outs)
        fam.check_invariants()
        moved = [m for o in outs for m in o.exchanges]
        for eid, src, dst in moved:
            assert src != dst and fam.forest_of(eid) in range(2)

    def test_plain_witness_is_overfull(self):
        rng = random.Random(8)
        for _ in range(200):
            g = random_multigraph(rng, rng.randint(2, 7), rng.randint(1, 14))
            k = rng.randint(1, 3)
            for contract in (True, False):
                fam = ForestFamily(g.n, k, contract=contract)
                for u, v in g.pairs():
                    out = fam.try_insert(u, v, diagnose=True)
                    if not out.inserted:
                        w = out.witness
                        inside = sum(1 for a, b in fam.edge_pairs() if a in w and b in w)
                        assert u in w and v in w
                        assert inside + 1 > k * (len(w) - 1)

    def test_probe_does_not_modify(self):
        g = gen_gnm(20, 60, 2)
        fam = ForestFamily(20, 2)
        for u, v in g.pairs():
            fam.try_insert(u, v)
        snapshot = [set(f) for f in fam.extract_forests()]
        for u, v in g.pairs():
            fam.probe(u, v)
        assert [set(f) for f in fam.extract_forests()] == snapshot
        fam.check_invariants()


class TestRank:
    def test_k3_triangle(self):
        assert rank_of(Graph(3, complete_pairs(3)), 2) == 3
        assert brute_force_rank(Graph(3, complete_pairs(3)), 2) == 3

    def test_k4(self, k4):
        assert rank_of(k4, 1) == 3
        assert rank_of(k4, 2) == brute_force_rank(k4, 2) == 6

    def test_k4_with_duplicate(self):
        g = Graph(4, complete_pairs(4) + [(0, 1)])
        assert rank_of(g, 2) == brute_force_rank(g, 2) == 6

    def test_bowtie(self):
        g = Graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
        assert brute_force_rank(g, 1) == rank_of(g, 1) == 4

    def test_guard(self):
        with pytest.raises(InstanceTooLarge):
            brute_force_rank(Graph(8, complete_pairs(7)), 2)

    def test_extract_empty(self):
        assert extract_forests(ForestFamily(5, 3)) == [frozenset()] * 3

    def test_extract_k4(self, k4):
        fam = ForestFamily(4, 2)
        for i, (u, v) in enumerate(k4.pairs()):
            fam.try_insert(u, v, i)
        forests = extract_forests(fam)
        pairs = k4.pairs()
        assert forests[0].isdisjoint(forests[1])
        for f in forests:
            assert len(f) == 3 and is_forest(4, [pairs[i] for i in f])

    def test_oracle_equivalence_random(self):
        rng = random.Random(2024)
        for _ in range(500):
            n = rng.randint(2, 7)
            g = random_multigraph(rng, n, rng.randint(0, 12))
            k = rng.choice((1, 2, 3))
            assert rank_of(g, k) == brute_force_rank(g, k)


class TestProperties:
    @settings(max_examples=200, deadline=None)
    @given(small_graphs(), st.integers(1, 3), st.randoms(use_true_random=False))
    def test_order_invariance(self, g, k, rnd):
        base = rank_of(g, k)
        pairs = g.pairs()
        for _ in range(20):
            rnd.shuffle(pairs)
            assert rank_of(Graph(g.n, pairs), k) == base

    @settings(max_examples=200, deadline=None)
    @given(small_graphs(max_n=7, max_m=14), st.integers(1, 3), st.data())
    def test_submodularity(self, g, k, data):
        ids = list(range(g.m))
        a = set(data.draw(st.sets(st.sampled_from(ids))) if ids else set())
        b = set(data.draw(st.sets(st.sampled_from(ids))) if ids else set())

        def rk(s):
            return rank_of(g.edge_subgraph(sorted(s)), k)

        assert rk(a) + rk(b) >= rk(a | b) + rk(a & b)

    @settings(max_examples=200, deadline=None)
    @given(small_graphs(max_n=8, max_m=25), st.integers(1, 4))
    def test_monotone_unit_steps(self, g, k):
        for contract in (True, False):
            fam = ForestFamily(g.n, k, contract=contract)
            prev = 0
            for u, v in g.pairs():
                out = fam.try_insert(u, v)
                assert fam.rank - prev == (1 if out.inserted else 0)
                prev = fam.rank
            fam.check_invariants()

    @settings(max_examples=200, deadline=None)
    @given(small_graphs(max_n=9, max_m=25))
    def test_k1_is_spanning_forest(self, g):
        assert rank_of(g, 1) == g.n - len(g.connected_components())

    @pytest.mark.parametrize("seed", range(12))
    def test_contracted_matches_plain(self, seed):
        rng = random.Random(seed)
        n = rng.randint(10, 40)
        k = rng.randint(1, 4)
        g = gen_gnm(n, rng.randint(n, min(n * (n - 1) // 2, 4 * k * n)), seed)
        fast, slow = ForestFamily(n, k), ForestFamily(n, k, contract=False)
        for i, (u, v) in enumerate(g.pairs()):
            assert fast.try_insert(u, v, i).inserted == slow.try_insert(u, v, i).inserted
        fast.check_invariants()
        slow.check_invariants()
