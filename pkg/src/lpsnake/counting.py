"""Determinantal matching counts and negative continued fractions.

The count matrix of a weakly rooted set has the branch-depth values f(v)
on the diagonal, -1 between adjacent rooted-portion vertices, 0 elsewhere;
its determinant (computed by fraction-free Bareiss elimination over exact
integers) equals the number of admissible matchings.  For path-shaped
rooted portions the matrix is tridiagonal and the determinant is the
continuant of the f-sequence, i.e. the numerator of the negative continued
fraction [[f_1, ..., f_s]].

For triangulated polygons two vertex-count conventions are exposed: the
crossing-arc count per boundary vertex, and that count plus one (the
triangle count, the frieze quiddity).  Enumeration of perfect matchings is
the ground truth; the report says which convention agrees with it.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotWeaklyRooted, VertexNotInRootedPortion
from . import matchings, snakegraph, typea


def f_value(ctx, target_set, v):
    """1 + sum over below branches of (minimal swallowed depth - 1).

    The depth m_i is minimal with the chain set inside the target set; the
    sentinel depth c_i + 1 (the empty chain set) always qualifies.
    """
    target_set = frozenset(target_set)
    cls = ctx.classify_set(target_set)
    if not cls.is_buildable:
        raise NotWeaklyRooted('%r is not weakly rooted' % sorted(target_set))
    if v not in cls.rooted_portion:
        raise VertexNotInRootedPortion('%r not in the rooted portion' % (v,))
    bd = ctx.branch(v)
    total = 1
    for i in range(1, bd.r + 1):
        m = next(j for j in range(1, bd.c(i) + 2)
                 if bd.chain_set(i, j) <= target_set)
        total += m - 1
    return total


def count_matrix(ctx, target_set):
    """(matrix, vertex order) with rows indexed by the sorted rooted portion."""
    target_set = frozenset(target_set)
    cls = ctx.classify_set(target_set)
    if not cls.is_buildable:
        raise NotWeaklyRooted('%r is not weakly rooted' % sorted(target_set))
    order = sorted(cls.rooted_portion)
    n = len(order)
    mat = [[0] * n for _ in range(n)]
    for a, u in enumerate(order):
        mat[a][a] = f_value(ctx, target_set, u)
        for b, w in enumerate(order):
            if a != b and w in ctx.tree.neighbors(u):
                mat[a][b] = -1
    return mat, order


def det_bareiss(matrix):
    """Exact integer determinant by fraction-free elimination."""
    n = len(matrix)
    if n == 0:
        return 1
    m = [row[:] for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if pivot is None:
                return 0
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for r in range(k + 1, n):
            for c in range(k + 1, n):
                m[r][c] = (m[r][c] * m[k][k] - m[r][k] * m[k][c]) // prev
            m[r][k] = 0
        prev = m[k][k]
    return sign * m[-1][-1]


def count_matchings(ctx, target_set, check=False):
    """det of the count matrix; with ``check`` also the enumeration count."""
    mat, _ = count_matrix(ctx, target_set)
    det = det_bareiss(mat)
    if not check:
        return det
    graph = snakegraph.build_snake_graph(ctx, target_set)
    enum = len(matchings.enumerate_admissible(graph))
    return det, enum


# ---------------------------------------------------------------------------
# negative continued fractions


@dataclass(frozen=True)
class NegativeCF:
    entries: tuple
    continuant: int          # tridiagonal determinant; always defined
    value: object            # Fraction, or None when a tail vanishes
    division_by_zero: bool


def continuant(entries):
    """det of the tridiagonal matrix with ``entries`` on the diagonal."""
    prev2, prev1 = 0, 1
    for f in entries:
        prev2, prev1 = prev1, f * prev1 - prev2
    return prev1


def negative_cf(entries):
    """f1 - 1/(f2 - 1/(...)); the continuant is computed unconditionally."""
    entries = tuple(entries)
    if not entries:
        raise ValueError('need at least one entry')
    value = None
    blew_up = False
    for f in reversed(entries):
        if value is None:
            value = Fraction(f)
        else:
            if value == 0:
                blew_up = True
                value = None
                break
            value = Fraction(f) - 1 / value
    return NegativeCF(entries, continuant(entries), value, blew_up)


def polygon_matching_counts(polygon, triangulation, gamma):
    """Both boundary-vertex count conventions against brute enumeration.

    ``arc_count`` uses, per boundary vertex strictly between the endpoints
    of gamma, the number of crossed arcs at that vertex; ``quiddity`` adds
    one (the number of incident triangles).  Enumeration of the perfect
    matchings of the snake graph is authoritative.
    """
    a, b = gamma
    crossed = typea.crossing_sequence(polygon, triangulation, gamma)
    n = len(polygon)
    ia = polygon.index[a]
    inner = sorted((v for v in polygon.vertices
                    if polygon.strictly_between(a, b, v)),
                   key=lambda v: (polygon.index[v] - ia) % n)
    fs = [sum(1 for arc in crossed if v in arc) for v in inner]
    graph = typea.build_ms_snake_graph(polygon, triangulation, gamma)
    enumerated = len(typea.perfect_matchings(graph))
    arc_count = continuant(fs)
    quiddity = continuant([f + 1 for f in fs])
    return {
        'fs': fs,
        'arc_count': arc_count,
        'quiddity': quiddity,
        'enumerated': enumerated,
        'arc_count_matches': arc_count == enumerated,
        'quiddity_matches': quiddity == enumerated,
    }
