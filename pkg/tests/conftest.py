"""Shared fixtures.

``ctx0`` is the running ten-vertex example used throughout: a caterpillar
tree on labels 0..9 (path 1-2-3-4-5-6-7 with legs 8, 9, 0 at 3, 4, 5) with
the maximal nested collection

    {6} < {5,6} < {5,6,0} < {5,6,7,0} < {4,5,6,7,0},
    {2} < {1,2},   {8},   {1,...,8,0},   {0,...,9}.

Its order has maximum 9; companion labels are 10..14 for the leaves
0, 1, 7, 8, 9 in that order.
"""

import pytest

from lpsnake import ClusterContext, Tree


def fset(*elements):
    return frozenset(elements)


CTX0_EDGES = [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (3, 8), (4, 9),
              (5, 0)]
CTX0_FAMILY = [
    fset(6), fset(5, 6), fset(5, 6, 0), fset(5, 6, 7, 0),
    fset(4, 5, 6, 7, 0), fset(2), fset(1, 2), fset(8),
    fset(1, 2, 3, 4, 5, 6, 7, 8, 0), frozenset(range(10)),
]


@pytest.fixture(scope='session')
def ctx0():
    return ClusterContext(Tree(range(10), CTX0_EDGES), CTX0_FAMILY)


@pytest.fixture(scope='session')
def path3_ctx():
    """Path 1-2-3 with the chain collection {2} < {1,2} < {1,2,3}."""
    return ClusterContext(Tree([1, 2, 3], [(1, 2), (2, 3)]),
                          [fset(2), fset(1, 2), fset(1, 2, 3)])


def edge_by_labels(graph, labels, wset=None, squared=None):
    """The unique edge with the given endpoint-label multiset (and weight)."""
    found = graph.find_edges(labels=labels, wset=wset, squared=squared)
    assert len(found) == 1, 'expected one edge %r, found %d' % (labels,
                                                                len(found))
    return found[0]
