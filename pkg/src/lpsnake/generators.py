"""Seeded random and exhaustive generators for trees and nested collections.

Random maximal nested collections are produced by the recursive rule
"choose a uniformly random member of the current connected component as its
maximum, then recurse into the components of the rest"; every maximal
nested collection arises this way, so the generator has full support.
All randomness is drawn from an explicit ``random.Random(seed)``.
"""

import random
from itertools import product

from .trees import ClusterContext, Tree

DEFAULT_SEED = 20240911


def random_tree(n, rng):
    """Uniform labeled tree on 0..n-1 (random Pruefer sequence)."""
    if n == 1:
        return Tree([0], [])
    if n == 2:
        return Tree([0, 1], [(0, 1)])
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    import heapq
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    u, w = leaves
    edges.append((u, w))
    return Tree(range(n), edges)


def random_maximal_nested_collection(tree, rng):
    family = []
    stack = [frozenset(tree.vertices)]
    while stack:
        comp = stack.pop()
        family.append(comp)
        top = rng.choice(sorted(comp))
        stack.extend(tree.components(comp - {top}))
    return family


def random_context(n, rng):
    tree = random_tree(n, rng)
    return ClusterContext(tree, random_maximal_nested_collection(tree, rng))


def random_contexts(count, max_n, seed=DEFAULT_SEED, min_n=2):
    """Deterministic stream of ``count`` random contexts with 2 <= n <= max_n."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(min_n, max_n)
        out.append(random_context(n, rng))
    return out


def all_maximal_nested_collections(tree):
    """Every maximal nested collection on the tree (exhaustive; small n only)."""

    def expand(comp):
        comp = frozenset(comp)
        choices = []
        for top in sorted(comp):
            sub = [expand(c) for c in tree.components(comp - {top})]
            for pick in product(*sub) if sub else [()]:
                fam = [comp]
                for part in pick:
                    fam.extend(part)
                choices.append(fam)
        return choices

    return expand(tree.vertices)


def all_labeled_trees(n):
    """All labeled trees on 0..n-1 via Pruefer sequences."""
    if n == 1:
        yield Tree([0], [])
        return
    if n == 2:
        yield Tree([0, 1], [(0, 1)])
        return
    for seq in product(range(n), repeat=n - 2):
        degree = [1] * n
        for v in seq:
            degree[v] += 1
        import heapq
        leaves = [v for v in range(n) if degree[v] == 1]
        heapq.heapify(leaves)
        edges = []
        for v in seq:
            leaf = heapq.heappop(leaves)
            edges.append((leaf, v))
            degree[v] -= 1
            if degree[v] == 1:
                heapq.heappush(leaves, v)
        u, w = leaves
        edges.append((u, w))
        yield Tree(range(n), edges)
