"""Compare the incomparable-pair obstruction listing with the plain 4-subset scan."""
from __future__ import annotations

import random
from itertools import combinations

from threshold_edit.generators import random_graph
from threshold_edit.kernel import obstruction_subsets
from threshold_edit.recognition import THRESHOLD, is_obstruction


def naive(g):
    return [vs for vs in combinations(range(g.n), 4) if is_obstruction(g, vs, THRESHOLD)]


def main(count: int = 300, seed: int = 0):
    rng = random.Random(seed)
    for i in range(count):
        g = random_graph(rng, rng.randint(0, 11), rng.random())
        fast = [vs for vs, _ in obstruction_subsets(g, THRESHOLD)]
        assert fast == naive(g), f"graph {i} differs"
    print(f"{count} graphs: identical obstruction lists")


if __name__ == "__main__":
    main()
