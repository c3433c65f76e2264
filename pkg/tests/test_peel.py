import random
from itertools import combinations

import pytest

from oracles import exhaustive_optimum, to_nx
from threshold_edit.generators import random_split
from threshold_edit.graph import Graph, apply_edits, bits
from threshold_edit.peel import INF, PeelSearch, peel_split_threshold
from threshold_edit.recognition import compute_split_partition, is_threshold
from threshold_edit.subexp import solve_split_threshold


def split_instance(seed: int, n: int):
    g = random_split(random.Random(seed), n)
    part = compute_split_partition(g)
    return g, part.clique_mask, part.indep_mask


def cross_pairs(clique: int, indep: int):
    return [(min(c, x), max(c, x)) for c in bits(clique) for x in bits(indep)]


def test_peel_costs():
    # C = {0, 1}, I = {2, 3}; 0 ~ 2, 1 ~ 3
    g = Graph.from_edges(4, [(0, 1), (0, 2), (1, 3)])
    s = PeelSearch(g, 0b11, 0b1100, "edit")
    assert s.peel_cost(0, 0b1111) == 1  # missing 0-3
    assert s.peel_cost(2, 0b1111) == 1  # edge 0-2
    assert PeelSearch(g, 0b11, 0b1100, "delete").peel_cost(0, 0b1111) == INF
    assert PeelSearch(g, 0b11, 0b1100, "complete").peel_cost(2, 0b1111) == INF


def test_lower_bound_counts_disjoint_incomparable_pairs():
    # two independent vertices with private clique neighbours
    g = Graph.from_edges(4, [(0, 1), (0, 2), (1, 3)])
    assert PeelSearch(g, 0b11, 0b1100, "edit").lower_bound(0b1111) == 1


def test_twins_wait_for_each_other():
    g = Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
    s = PeelSearch(g, 0b11, 0b11100, "edit")
    assert s.twin_before[3] == 1 << 2 and s.twin_before[4] == 1 << 3


def test_threshold_input_costs_nothing():
    g = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2)])
    assert peel_split_threshold(g, 0b11, 0b1100, 0, "edit") == (0, frozenset())


@pytest.mark.parametrize("variant", ["edit", "complete", "delete"])
def test_matches_exhaustive(variant):
    for seed in range(200):
        rng = random.Random(seed)
        g, c, i = split_instance(seed, rng.randint(1, 9))
        k = rng.randint(0, 3)
        want = exhaustive_optimum(to_nx(g), k, "threshold", variant, cross_pairs(c, i))
        got = peel_split_threshold(g, c, i, k, variant)
        assert (None if got is None else got[0]) == want, seed
        if got is not None:
            assert len(got[1]) == got[0]
            assert is_threshold(apply_edits(g, got[1])).yes


@pytest.mark.parametrize("variant", ["edit", "complete", "delete"])
def test_agrees_with_splitting_pair_search(variant):
    for seed in range(60):
        rng = random.Random(10_000 + seed)
        g, c, i = split_instance(10_000 + seed, rng.randint(8, 13))
        k = rng.randint(0, 4)
        a = peel_split_threshold(g, c, i, k, variant)
        b = solve_split_threshold(g, c, i, k, variant)
        assert (None if a is None else a[0]) == (None if b is None else b[0]), seed
