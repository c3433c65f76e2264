import random
from itertools import combinations

import pytest

from conftest import seeded_graph
from oracles import (
    bipartitions,
    canonical_levels,
    chain_cost_respecting,
    exhaustive_optimum,
    split_partitions,
    to_nx,
    toggled,
)
from threshold_edit.generators import random_split
from threshold_edit.graph import Graph, apply_edits, bits, mask_of
from threshold_edit.recognition import compute_split_partition, is_threshold
from threshold_edit.subexp import (
    CostLabels,
    SplitCore,
    cheap_radius,
    enumerate_bipartitions,
    enumerate_split_partitions,
    label_guesses,
    max_expensive,
    solve_alg,
    solve_split_threshold,
    split_cost,
    unbreak_alg,
)

K3 = Graph.from_edges(3, [(0, 1), (0, 2), (1, 2)])
P4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])


def masks(parts):
    return {(mask_of(c), mask_of(i)) for c, i in parts}


def split_instance(seed: int, n: int, p: float = 0.5):
    g = random_split(random.Random(seed), n, p)
    part = compute_split_partition(g)
    return g, part.clique_mask, part.indep_mask


def cross_pairs(clique: int, indep: int):
    return [(min(c, x), max(c, x)) for c in bits(clique) for x in bits(indep)]


class TestParameters:
    def test_cheap_radius(self):
        assert [cheap_radius(k) for k in (0, 1, 2, 4, 9, 10)] == [0, 2, 3, 4, 6, 7]

    def test_max_expensive_never_exceeds_radius(self):
        for k in range(60):
            assert max_expensive(k) <= cheap_radius(k)
            # expensive vertices carry > radius edits each, every edit has two ends
            assert max_expensive(k) * (cheap_radius(k) + 1) <= 2 * k

    def test_label_guesses_sizes(self):
        sizes = [m.bit_count() for m in label_guesses(0b11111, 4)]
        assert sizes[0] == 0 and max(sizes) == max_expensive(4)


class TestSplitPartitions:
    def test_k3(self):
        assert set(enumerate_split_partitions(K3, 0)) == {(0b111, 0), (0b011, 0b100), (0b101, 0b010), (0b110, 0b001)}

    def test_p4(self):
        assert (0b0110, 0b1001) in enumerate_split_partitions(P4, 0)

    def test_sorted_by_forced_cost(self):
        g = seeded_graph(3, 7)
        costs = [split_cost(g, c, i) for c, i in enumerate_split_partitions(g, 3)]
        assert costs == sorted(costs) and max(costs) <= 3

    @pytest.mark.parametrize("seed", range(50))
    def test_completeness_audit(self, seed):
        rng = random.Random(seed)
        n, k = rng.randint(1, 7), rng.randint(0, 2)
        g = seeded_graph(seed, n, rng.choice((0.3, 0.5, 0.7)))
        got = set(enumerate_split_partitions(g, k))
        h0 = to_nx(g)
        pairs = list(combinations(range(n), 2))
        want = set()
        for size in range(k + 1):
            for f in combinations(pairs, size):
                want |= masks(split_partitions(toggled(h0, f)))
        assert want <= got


class TestBipartitions:
    def test_k23(self):
        g = Graph.from_edges(5, [(a, b) for a in (0, 1) for b in (2, 3, 4)])
        assert (0b00011, 0b11100) in enumerate_bipartitions(g, 0)

    def test_2k2(self):
        g = Graph.from_edges(4, [(0, 1), (2, 3)])
        h = to_nx(g)
        costs = [chain_cost_respecting(h, set(bits(a)), set(bits(b)), 1) for a, b in enumerate_bipartitions(g, 1)]
        assert 1 in costs

    def test_vertex_zero_on_side_a(self):
        g = seeded_graph(5, 6, 0.4)
        assert all(a & 1 for a, _ in enumerate_bipartitions(g, 2))

    @pytest.mark.parametrize("small_factor", [5.0, 0.5])
    @pytest.mark.parametrize("seed", range(30))
    def test_completeness_audit(self, seed, small_factor):
        rng = random.Random(1000 + seed)
        n, k = rng.randint(2, 7), rng.randint(1, 2)
        g = seeded_graph(1000 + seed, n, 0.35)
        h = to_nx(g)
        best = None
        for a, b in bipartitions(range(n)):
            c = chain_cost_respecting(h, a, b, k)
            if c is not None and (best is None or c < best):
                best = c
        found = None
        for a, b in enumerate_bipartitions(g, k, small_factor):
            c = chain_cost_respecting(h, set(bits(a)), set(bits(b)), k)
            if c is not None and (found is None or c < found):
                found = c
        assert found == best


class TestUnbreak:
    def test_complete_split_is_free(self):
        g = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
        assert len(unbreak_alg(g, 0b11, 0b1100, 0, CostLabels(), "edit")) == 0

    def test_two_crossed_edges(self):
        # all cheap forces the cheap part to be complete: two additions
        g = Graph.from_edges(4, [(0, 1), (0, 2), (1, 3)])
        assert unbreak_alg(g, 0b11, 0b1100, 1, CostLabels(), "edit") is None
        f = unbreak_alg(g, 0b11, 0b1100, 2, CostLabels(), "edit")
        assert f.pairs == {(0, 3), (1, 2)}
        # the splitting-pair search finds the single edit
        assert solve_alg(g, 0b11, 0b1100, 1, 0b1111, CostLabels(), "edit").pairs == {(0, 3)}

    @pytest.mark.parametrize("variant", ["edit", "complete", "delete"])
    def test_answers_are_valid(self, variant):
        for seed in range(40):
            g, c, i = split_instance(seed, random.Random(seed).randint(2, 7))
            for exp in label_guesses(g.all_mask, 3):
                f = unbreak_alg(g, c, i, 3, CostLabels(frozenset(bits(exp))), variant)
                if f is not None:
                    assert is_threshold(apply_edits(g, f)).yes
                    assert set(f.pairs) <= set(cross_pairs(c, i))

    def test_optimal_on_unbreakable_optima(self):
        """Whenever an optimum has cheap clique levels below cheap independent ones."""
        checked = 0
        for seed in range(1000):
            rng = random.Random(500 + seed)
            g, c, i = split_instance(500 + seed, rng.randint(2, 8), 0.85)
            k = rng.randint(1, 3)
            h0 = to_nx(g)
            pairs = cross_pairs(c, i)
            opt = exhaustive_optimum(h0, k, "threshold", pairs=pairs)
            if opt is None:
                continue
            radius = cheap_radius(k)
            for f in combinations(pairs, opt):
                h = toggled(h0, f)
                if not is_threshold(apply_edits(g, f)).yes:
                    continue
                load = {v: sum(v in p for p in f) for v in range(g.n)}
                exp = frozenset(v for v in range(g.n) if load[v] > radius)
                lev = canonical_levels(h, set(bits(c)), set(bits(i)))
                top_c = max((lev[v] for v in bits(c) if v not in exp), default=-1)
                low_i = min((lev[v] for v in bits(i) if v not in exp), default=10**9)
                if len(exp) <= max_expensive(k) and top_c <= low_i:
                    got = unbreak_alg(g, c, i, k, CostLabels(exp), "edit")
                    assert got is not None and len(got) == opt
                    checked += 1
                    break
        assert checked >= 30


class TestSolveAlg:
    def test_empty_set(self):
        g, c, i = split_instance(1, 6)
        assert len(solve_alg(g, c, i, 0, 0, CostLabels(), "edit")) == 0

    def test_threshold_is_free(self):
        g = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2)])
        assert len(solve_alg(g, 0b11, 0b1100, 0, 0b1111, CostLabels(), "edit")) == 0

    @pytest.mark.parametrize("variant", ["edit", "complete", "delete"])
    def test_matches_exhaustive(self, variant):
        for seed in range(200):
            rng = random.Random(seed)
            g, c, i = split_instance(seed, rng.randint(1, 9))
            k = rng.randint(0, 3)
            want = exhaustive_optimum(to_nx(g), k, "threshold", variant, cross_pairs(c, i))
            got = solve_split_threshold(g, c, i, k, variant)
            assert (None if got is None else got[0]) == want, seed

    def test_memo_does_not_change_answers(self):
        for seed in range(50):
            rng = random.Random(seed)
            g, c, i = split_instance(seed, rng.randint(3, 9))
            k = rng.randint(0, 3)
            for exp in label_guesses(g.all_mask, k):
                labels = CostLabels(frozenset(bits(exp)))
                a = solve_alg(g, c, i, k, g.all_mask, labels, "edit", memo=True)
                b = solve_alg(g, c, i, k, g.all_mask, labels, "edit", memo=False)
                assert (a is None) == (b is None)
                if a is not None:
                    assert len(a) == len(b)

    def test_blocks_partition_the_segment(self):
        g, c, i = split_instance(7, 9)
        core = SplitCore(g, c, i, "edit", 0, 2)
        u = next(bits(i))
        v = next(bits(c))
        nu = g.adj[u] & c & ~(1 << v)
        nv = g.adj[v] & i & ~(1 << u)
        blk = core.blocks(g.all_mask, u, v, nu, nv, 0)
        assert blk.upper | blk.middle | blk.lower == g.all_mask
        assert not (blk.upper & blk.lower)
        assert blk.lower >> u & 1 and blk.upper >> v & 1
