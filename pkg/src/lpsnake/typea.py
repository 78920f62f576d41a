"""Classical snake graphs from triangulated polygons, and the path bridge.

A polygon is a cyclic sequence of distinct vertex labels; a triangulation
is a maximal set of pairwise non-crossing internal arcs together with a
weight for every arc, boundary sides included (defaulting to one formal
variable per arc).  The snake graph of an arc gamma is the usual chain of
quadrilateral tiles, one per crossed arc, with consecutive tiles glued
along the third side of the triangle between them.  Perfect matchings are
enumerated exactly and the weighted matching sum divided by the crossed
arc weights gives the expansion of gamma.

The path bridge realizes a path-shaped tree as a polygon: close the
extended path into a cycle with an extra side weighted by the full vertex
set, and put one internal arc per collection member between its two
neighbors.  Snake graphs of polygon arcs then expand the set variables of
the corresponding intervals.
"""

from .errors import (AdjacentEndpoints, ArcInTriangulation, NotAPath,
                     NotConnected)
from .symbolic import Monomial, RationalExpr, xvar_key, yvar_key


def _pair(u, w):
    return frozenset((u, w))


class Polygon:
    """Vertices in cyclic order; boundary sides are implicit arcs."""

    def __init__(self, vertices):
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError('polygon vertices must be distinct')
        self.index = {v: i for i, v in enumerate(self.vertices)}
        n = len(self.vertices)
        self.boundary = frozenset(_pair(self.vertices[i], self.vertices[(i + 1) % n])
                                  for i in range(n))

    def __len__(self):
        return len(self.vertices)

    def strictly_between(self, a, b, c):
        """True iff c lies strictly inside the cyclic open interval (a, b)."""
        ia, ib, ic = self.index[a], self.index[b], self.index[c]
        n = len(self.vertices)
        if c == a or c == b:
            return False
        return (ic - ia) % n < (ib - ia) % n


class Triangulation:
    """Internal arcs plus arc weights (weights cover boundary sides too)."""

    def __init__(self, polygon, internal_arcs, weights=None):
        self.polygon = polygon
        self.internal = frozenset(_pair(*a) for a in internal_arcs)
        n = len(polygon)
        if n >= 4 and len(self.internal) != n - 3:
            raise ValueError('a triangulation of an %d-gon has %d internal arcs'
                             % (n, n - 3))
        for a in self.internal:
            u, w = tuple(a)
            if _pair(u, w) in polygon.boundary:
                raise ValueError('%r is a boundary side' % (sorted(a),))
        for a in self.internal:
            for b in self.internal:
                if a != b and self._cross(a, b):
                    raise ValueError('arcs %r and %r cross'
                                     % (sorted(a), sorted(b)))
        self.weights = {}
        for a in self.internal | polygon.boundary:
            if weights is not None and _pair(*a) in weights:
                self.weights[_pair(*a)] = weights[_pair(*a)]
            elif weights is None:
                u, w = sorted(a)
                self.weights[_pair(*a)] = Monomial.variable(xvar_key(u, w))
            else:
                self.weights[_pair(*a)] = Monomial(1)
        self._triangles = None

    def _cross(self, a, b):
        (u, w), (x, y) = tuple(a), tuple(b)
        p = self.polygon
        return (p.strictly_between(u, w, x) != p.strictly_between(u, w, y)
                and x not in a and y not in a
                and p.strictly_between(x, y, u) != p.strictly_between(x, y, w))

    def arc_weight(self, u, w):
        return self.weights[_pair(u, w)]

    def triangles(self):
        """All triangular faces.  In a triangulated polygon every 3-clique
        of the arc set bounds a face, so triple enumeration is exact."""
        if self._triangles is None:
            arcs = self.internal | self.polygon.boundary
            verts = self.polygon.vertices
            n = len(verts)
            out = []
            for i in range(n):
                for j in range(i + 1, n):
                    if _pair(verts[i], verts[j]) not in arcs:
                        continue
                    for k in range(j + 1, n):
                        if (_pair(verts[i], verts[k]) in arcs
                                and _pair(verts[j], verts[k]) in arcs):
                            out.append(frozenset((verts[i], verts[j], verts[k])))
            self._triangles = sorted(
                out, key=lambda t: sorted(self.polygon.index[v] for v in t))
        return self._triangles


def crossing_sequence(polygon, triangulation, gamma):
    """Arcs of the triangulation crossed by gamma, ordered along gamma.

    Combinatorial crossing: each arc must have one endpoint strictly inside
    each of the two open sides of gamma.  The order is recovered by walking
    the triangle strip from the endpoint ``gamma[0]``.
    """
    a, b = gamma
    if _pair(a, b) in triangulation.internal:
        raise ArcInTriangulation('%r is already an arc' % (sorted((a, b)),))
    if _pair(a, b) in polygon.boundary:
        raise AdjacentEndpoints('%r are neighboring vertices' % (sorted((a, b)),))
    crossed = {arc for arc in triangulation.internal
               if _crosses(polygon, a, b, arc)}
    assert crossed, 'a non-arc chord crosses at least one arc'
    triangles = triangulation.triangles()
    # first crossed arc: the one bounding a triangle that contains a
    start = [t for t in triangles if a in t
             and any(arc <= t for arc in crossed)]
    assert len(start) == 1
    current = start[0]
    sequence = []
    prev_arc = None
    while True:
        sides = [arc for arc in crossed if arc <= current and arc != prev_arc]
        if not sides:
            assert b in current, 'strip must end at the far endpoint'
            break
        assert len(sides) == 1
        arc = sides[0]
        sequence.append(arc)
        nxt = [t for t in triangles if arc <= t and t != current]
        assert len(nxt) == 1
        current = nxt[0]
        prev_arc = arc
    assert set(sequence) == crossed
    return sequence


def _crosses(polygon, a, b, arc):
    x, y = tuple(arc)
    if x in (a, b) or y in (a, b):
        return False
    inside_x = polygon.strictly_between(a, b, x)
    inside_y = polygon.strictly_between(a, b, y)
    return inside_x != inside_y


class PlanarSnakeGraph:
    """Tile chain of a polygon arc; nodes carry polygon labels.

    ``tiles[m]`` records the crossed arc, the four corner node ids, the
    diagonal node pair and the node pair shared with the next tile.
    ``turns[m]`` is True when tiles m, m+1, m+2 do not lie in a straight
    line (the two consecutive shared sides meet in a corner).
    """

    def __init__(self, nodes, edges, diagonals, tiles, turns, crossed):
        self.nodes = nodes          # id -> polygon label
        self.edges = edges          # id -> (node pair tuple, weight Monomial)
        self.diagonals = diagonals  # id -> (node pair tuple, arc frozenset)
        self.tiles = tiles
        self.turns = turns
        self.crossed = crossed

    def node_label(self, nid):
        return self.nodes[nid]

    def incident_edges(self, nid):
        return [eid for eid, (ns, _) in self.edges.items() if nid in ns]


def build_ms_snake_graph(polygon, triangulation, gamma):
    """Snake graph of gamma with edge weights inherited from the arcs."""
    a, b = gamma
    crossed = crossing_sequence(polygon, triangulation, gamma)
    triangles = triangulation.triangles()

    def other_triangle(arc, known):
        cands = [t for t in triangles if arc <= t and t != known]
        assert len(cands) == 1
        return cands[0]

    start = [t for t in triangles if a in t and crossed[0] <= t]
    assert len(start) == 1
    delta = start[0]

    nodes, edges, diagonals, tiles = {}, {}, {}, []
    counter = {'n': 0, 'e': 0}

    def new_node(label):
        nid = counter['n']
        counter['n'] += 1
        nodes[nid] = label
        return nid

    def new_edge(n1, n2, arc):
        eid = counter['e']
        counter['e'] += 1
        edges[eid] = (tuple(sorted((n1, n2))), triangulation.arc_weight(*arc))
        return eid

    # first tile
    tau = crossed[0]
    p, q = sorted(tau, key=polygon.index.get)
    x = next(iter(delta - tau))            # apex on the a side
    delta2 = other_triangle(tau, delta)
    y = next(iter(delta2 - tau))
    node_of = {p: new_node(p), q: new_node(q), x: new_node(x), y: new_node(y)}
    side_edges = {}
    for (u, w) in ((x, p), (x, q), (y, p), (y, q)):
        side_edges[_pair(u, w)] = new_edge(node_of[u], node_of[w], (u, w))
    diagonals[0] = ((node_of[p], node_of[q]), tau)
    tiles.append({'arc': tau, 'corners': dict(node_of),
                  'diagonal': (node_of[p], node_of[q]), 'shared_next': None})
    shared_labels = []

    prev_tau, prev_delta, prev_nodes = tau, delta2, node_of
    for m, tau_next in enumerate(crossed[1:], start=1):
        assert tau_next <= prev_delta
        sides = {_pair(u, w) for u in prev_delta for w in prev_delta if u != w}
        (third,) = sides - {prev_tau, tau_next}
        # nodes shared with the previous tile: endpoints of the third side
        shared = tuple(third)
        (x_next,) = prev_delta - tau_next      # opposite apex, an old node
        (fresh_label,) = tau_next - third
        delta_next = other_triangle(tau_next, prev_delta)
        (y_next,) = delta_next - tau_next
        node_of = {}
        for v in shared:
            node_of[v] = prev_nodes[v]
        node_of[fresh_label] = new_node(fresh_label)
        node_of[y_next] = new_node(y_next)
        pn, qn = tuple(tau_next)
        for (u, w) in ((x_next, pn), (x_next, qn), (y_next, pn), (y_next, qn)):
            if _pair(u, w) == third:
                continue
            side_edges[_pair(u, w)] = new_edge(node_of[u], node_of[w], (u, w))
        diagonals[m] = ((node_of[pn], node_of[qn]), tau_next)
        tiles[-1]['shared_next'] = tuple(sorted(prev_nodes[v] for v in shared))
        shared_labels.append(third)
        tiles.append({'arc': tau_next, 'corners': dict(node_of),
                      'diagonal': (node_of[pn], node_of[qn]),
                      'shared_next': None})
        prev_tau, prev_delta, prev_nodes = tau_next, delta_next, node_of

    turns = []
    for m in range(len(shared_labels) - 1):
        turns.append(bool(shared_labels[m] & shared_labels[m + 1]))
    return PlanarSnakeGraph(nodes, edges, diagonals, tiles, turns, crossed)


def is_zigzag(graph):
    """True when no three consecutive tiles lie in a straight line."""
    return all(graph.turns)


def perfect_matchings(graph):
    """All perfect matchings, as sorted tuples of edge ids."""
    node_edges = {nid: [] for nid in graph.nodes}
    for eid, (ns, _) in graph.edges.items():
        for nid in ns:
            node_edges[nid].append(eid)
    order = sorted(graph.nodes)
    out = []

    def extend(covered, chosen, idx):
        while idx < len(order) and order[idx] in covered:
            idx += 1
        if idx == len(order):
            out.append(tuple(sorted(chosen)))
            return
        nid = order[idx]
        for eid in node_edges[nid]:
            n1, n2 = graph.edges[eid][0]
            if n1 in covered or n2 in covered:
                continue
            extend(covered | {n1, n2}, chosen + [eid], idx + 1)

    extend(frozenset(), [], 0)
    out.sort()
    return out


def matching_weight(graph, matching):
    w = Monomial(1)
    for eid in matching:
        w = w * graph.edges[eid][1]
    return w


def expand_arc(polygon, triangulation, gamma):
    """Weighted matching expansion of the arc gamma as a RationalExpr."""
    graph = build_ms_snake_graph(polygon, triangulation, gamma)
    total = RationalExpr.zero()
    for m in perfect_matchings(graph):
        total = total + RationalExpr.from_monomial(matching_weight(graph, m))
    denom = Monomial(1)
    for arc in graph.crossed:
        denom = denom * triangulation.arc_weight(*arc)
    return total / RationalExpr.from_monomial(denom)


# ---------------------------------------------------------------------------
# path-shaped trees as polygons


def path_lp_bridge(ctx, x, y):
    """Polygon form of a path-shaped context plus the arc for [x, y].

    Returns (polygon, triangulation, gamma, target_set): the polygon closes
    the extended path with a side weighted by the full vertex set, internal
    arcs carry the members of the collection, and the arc between x and y
    expands the set of base vertices strictly between them.
    """
    tree = ctx.tree
    if any(len(tree.adj[v]) > 2 for v in tree.vertices):
        raise NotAPath('the base tree is not a path')
    ends = sorted(v for v in tree.vertices if len(tree.adj.get(v, ())) <= 1)
    if len(tree.vertices) == 1:
        order = [list(tree.vertices)[0]]
    else:
        order = ctx.extended.path(ends[0], ends[1])
    ext = ctx.extended
    cycle = [ext.companions[order[0]]] + order + [ext.companions[order[-1]]]
    polygon = Polygon(cycle)
    weights = {}
    n = len(cycle)
    for i in range(n):
        u, w = cycle[i], cycle[(i + 1) % n]
        weights[_pair(u, w)] = Monomial(1)
    weights[_pair(cycle[0], cycle[-1])] = Monomial.variable(
        yvar_key(tree.vertices))
    arcs = []
    full = frozenset(tree.vertices)
    for member in sorted(ctx.collection, key=lambda s: (len(s), sorted(s))):
        if member == full:
            continue
        nbrs = sorted(ext.neighbors_of_set(member))
        assert len(nbrs) == 2
        arcs.append(tuple(nbrs))
        weights[_pair(*nbrs)] = Monomial.variable(yvar_key(member))
    triangulation = Triangulation(polygon, arcs, weights)
    if x not in cycle or y not in cycle:
        raise NotConnected('%r, %r are not extended-path vertices' % (x, y))
    segment = ext.path(x, y)
    target = frozenset(segment[1:-1]) & tree.vertices
    return polygon, triangulation, (x, y), target


def bridge_expansion(ctx, x, y):
    """Expansion of the interval set between x and y via the polygon model."""
    polygon, triangulation, gamma, target = path_lp_bridge(ctx, x, y)
    if not target:
        return RationalExpr.from_int(1), target
    if _pair(*gamma) in triangulation.internal | polygon.boundary:
        # the interval is a collection member (or the full set): a plain variable
        return RationalExpr.from_monomial(
            Monomial.variable(yvar_key(target))), target
    return expand_arc(polygon, triangulation, gamma), target
