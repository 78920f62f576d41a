"""Hypergraph snake graphs for weakly rooted vertex subsets.

Construction pipeline, following the weighted-polygon route:

1. For a base vertex v whose singleton is not a collection member, every
   pair (l, k) of companion leaves with the distinguished below-neighbor
   a_1 on the l side yields a weighted polygon, a fan triangulation at v,
   and a classical snake graph of the arc (a_1, a_i) -- a *component* snake
   graph, a zigzag whose tile diagonals are the chain sets of the two
   branches involved.

2. All component snake graphs of v are glued into the singleton graph G_v
   by identifying nodes with equal structural keys (same label, same
   location on same-labeled tiles).  Same-weight edge fragments merge per
   structural class so that an edge weighted by a set C ends up with
   exactly one endpoint per neighbor of C (two per neighbor for squared
   weights).  The identified vertices v_opt and v_fix get their special
   valences.

3. For a weakly rooted S, each graph G_v (v in the rooted portion) is
   trimmed: for every below-neighbor branch swallowed by S, the subchain
   of diagonals below the minimal chain set inside S is cut away and the
   valence of the v node on that diagonal drops.  The trimmed graphs are
   glued pairwise along their unique (v, w) boundary edges.

Nodes carry a valence a+b (written a "circled plus" b in the source
material): a matched edge set must meet the node at least a and at most
a+b times.  Edges carry a weight -- unit, Y_C, or Y_C squared -- and a
boundary/internal kind computed per trimmed part.
"""

from .errors import (MissingGlueEdge, NotWeaklyRooted, SetInCollection,
                     UnknownEdgeId, VertexNotInRootedPortion)
from .symbolic import Monomial, yvar_key
from .trees import IN_COLLECTION
from . import typea

BOUNDARY = 'boundary'
INTERNAL = 'internal'


class SnakeNode:
    __slots__ = ('id', 'label', 'a', 'b', 'is_v_opt', 'is_v_fix', 'key')

    def __init__(self, nid, label, a=1, b=0, is_v_opt=False, is_v_fix=False,
                 key=None):
        self.id = nid
        self.label = label
        self.a = a
        self.b = b
        self.is_v_opt = is_v_opt
        self.is_v_fix = is_v_fix
        self.key = key

    @property
    def valence(self):
        return (self.a, self.b)

    def __repr__(self):
        return 'SnakeNode(%d, label=%r, %d+%d)' % (self.id, self.label,
                                                   self.a, self.b)


class SnakeEdge:
    __slots__ = ('id', 'nodes', 'wset', 'squared', 'origin', 'kind')

    def __init__(self, eid, nodes, wset=None, squared=False, origin=None,
                 kind=None):
        self.id = eid
        self.nodes = tuple(sorted(nodes))
        self.wset = frozenset(wset) if wset is not None else None
        self.squared = squared
        self.origin = origin
        self.kind = kind

    def weight_monomial(self):
        if self.wset is None:
            return Monomial(1)
        return Monomial.variable(yvar_key(self.wset), 2 if self.squared else 1)

    def weight_set(self):
        """W(e): the empty set for unit edges, else the defining subset."""
        return self.wset if self.wset is not None else frozenset()

    def __repr__(self):
        w = '1' if self.wset is None else 'Y%r%s' % (
            sorted(self.wset), '^2' if self.squared else '')
        return 'SnakeEdge(%d, %r, %s)' % (self.id, self.nodes, w)


class SnakeDiagonal:
    __slots__ = ('id', 'nodes', 'label')

    def __init__(self, did, nodes, label):
        self.id = did
        self.nodes = tuple(sorted(nodes))
        self.label = frozenset(label)

    def __repr__(self):
        return 'SnakeDiagonal(%d, %r, %r)' % (self.id, self.nodes,
                                              sorted(self.label))


class SnakeGraph:
    """Immutable-by-convention container for nodes, edges and diagonals."""

    def __init__(self, ctx, owner):
        self.ctx = ctx
        self.owner = frozenset(owner)
        self.nodes = {}
        self.edges = {}
        self.diagonals = {}
        # set by glue(): the two constituent graphs, the glued edge, and the
        # maps from final edge ids back to per-part edge ids
        self.glue_info = None

    # -- construction helpers ------------------------------------------------

    def add_node(self, label, a=1, b=0, key=None, **flags):
        nid = len(self.nodes)
        while nid in self.nodes:
            nid += 1
        self.nodes[nid] = SnakeNode(nid, label, a, b, key=key, **flags)
        return nid

    def add_edge(self, nodes, wset=None, squared=False, origin=None, kind=None):
        eid = len(self.edges)
        while eid in self.edges:
            eid += 1
        self.edges[eid] = SnakeEdge(eid, nodes, wset, squared, origin, kind)
        return eid

    def add_diagonal(self, nodes, label):
        did = len(self.diagonals)
        while did in self.diagonals:
            did += 1
        self.diagonals[did] = SnakeDiagonal(did, nodes, label)
        return did

    # -- queries --------------------------------------------------------------

    def node_diagonals(self, nid):
        return [d for d in self.diagonals.values() if nid in d.nodes]

    def edge_diagonal_labels(self, edge):
        out = set()
        nodeset = set(edge.nodes)
        for d in self.diagonals.values():
            if nodeset & set(d.nodes):
                out.add(d.label)
        return out

    def incident_edges(self, nid):
        return [e for e in self.edges.values() if nid in e.nodes]

    def ell(self):
        """Product of the diagonal label variables (always square-free)."""
        labels = [d.label for d in self.diagonals.values()]
        assert len(labels) == len(set(labels)), 'diagonal labels must be distinct'
        m = Monomial(1)
        for label in labels:
            m = m * Monomial.variable(yvar_key(label))
        return m

    def copy(self):
        g = SnakeGraph(self.ctx, self.owner)
        g.glue_info = self.glue_info
        for n in self.nodes.values():
            g.nodes[n.id] = SnakeNode(n.id, n.label, n.a, n.b, n.is_v_opt,
                                      n.is_v_fix, n.key)
        for e in self.edges.values():
            g.edges[e.id] = SnakeEdge(e.id, e.nodes, e.wset, e.squared,
                                      e.origin, e.kind)
        for d in self.diagonals.values():
            g.diagonals[d.id] = SnakeDiagonal(d.id, d.nodes, d.label)
        return g

    def canonical(self, with_maps=False):
        """Deterministically relabeled copy: ids depend only on structure."""
        node_order = sorted(self.nodes.values(),
                            key=lambda n: (n.label, str(n.key), n.id))
        remap = {n.id: i for i, n in enumerate(node_order)}
        g = SnakeGraph(self.ctx, self.owner)
        g.glue_info = self.glue_info
        for i, n in enumerate(node_order):
            g.nodes[i] = SnakeNode(i, n.label, n.a, n.b, n.is_v_opt,
                                   n.is_v_fix, n.key)
        def wkey(e):
            return (() if e.wset is None else tuple(sorted(e.wset)),
                    e.squared, tuple(sorted(remap[n] for n in e.nodes)))
        edge_remap = {}
        for i, e in enumerate(sorted(self.edges.values(), key=wkey)):
            edge_remap[e.id] = i
            g.edges[i] = SnakeEdge(i, [remap[n] for n in e.nodes], e.wset,
                                   e.squared, e.origin, e.kind)
        for i, d in enumerate(sorted(self.diagonals.values(),
                                     key=lambda d: tuple(sorted(d.label)))):
            g.diagonals[i] = SnakeDiagonal(i, [remap[n] for n in d.nodes],
                                           d.label)
        if with_maps:
            return g, remap, edge_remap
        return g

    # -- convenience for tests -------------------------------------------------

    def edge_weight_multiset(self):
        out = []
        for e in sorted(self.edges.values(), key=lambda e: e.id):
            if e.wset is None:
                out.append('1')
            else:
                out.append('Y%s%s' % (sorted(e.wset), '^2' if e.squared else ''))
        return sorted(out)

    def find_edges(self, labels=None, wset=None, squared=None):
        out = []
        for e in self.edges.values():
            if labels is not None:
                got = sorted(self.nodes[n].label for n in e.nodes)
                if got != sorted(labels):
                    continue
            if wset is not None and e.wset != (frozenset(wset) if wset else None):
                continue
            if squared is not None and e.squared != squared:
                continue
            out.append(e)
        return out


# ---------------------------------------------------------------------------
# component snake graphs


class ComponentSnakeGraph:
    """A single component snake graph: the planar graph plus key data.

    ``node_keys`` maps planar node ids to structural keys:
      ('v', branch, level)  -> diagonal corner labeled v (normalized to
                               ('vopt',) resp. ('vfix',) for level-1 corners),
      ('b', branch, level, u) -> diagonal corner labeled u,
      ('end', u)            -> chain-end apex labeled u.
    ``tile_levels`` lists (branch, level) per tile; diagonals are labeled
    by the corresponding chain sets.
    """

    def __init__(self, ctx, v, leaf_l, leaf_k, planar, pos_label, tile_levels,
                 node_keys, branch_data):
        self.ctx = ctx
        self.v = v
        self.leaf_l = leaf_l
        self.leaf_k = leaf_k
        self.planar = planar
        self.pos_label = pos_label
        self.tile_levels = tile_levels
        self.node_keys = node_keys
        self.branch_data = branch_data

    @property
    def tile_count(self):
        return len(self.planar.tiles)

    def diagonal_labels(self):
        return [self.branch_data.chain_set(br, lv)
                for br, lv in self.tile_levels]

    def node_label(self, nid):
        return self.pos_label[self.planar.nodes[nid]]

    def is_zigzag(self):
        return typea.is_zigzag(self.planar)

    def edge_records(self):
        """(endpoint keys, wset, squared) per planar edge."""
        out = []
        for eid, (ns, weight) in sorted(self.planar.edges.items()):
            wset, squared = _weight_parts(weight)
            out.append((frozenset(self.node_keys[n] for n in ns), wset,
                        squared, eid))
        return out


def _weight_parts(mono):
    if not mono.exps:
        return None, False
    assert len(mono.exps) == 1 and mono.coeff == 1
    (var, power), = mono.exps
    assert var[0] == 'Y' and power in (1, 2)
    return frozenset(var[1]), power == 2


def _companion_sides(ctx, v, bd):
    """Split companion leaves by whether a_1 lies on the path to them."""
    a1 = bd.order[0]
    side_a, side_b = [], []
    for leaf in sorted(ctx.extended.leaves):
        if a1 in ctx.path(v, leaf):
            side_a.append(leaf)
        else:
            side_b.append(leaf)
    return side_a, side_b


def build_component(ctx, v, leaf_l, leaf_k, a1=None):
    """Component snake graph H_{l,k} for the singleton v.

    Builds the (c_1 + c_i + 3)-gon with the fan triangulation at v, weights
    every arc by the construction rules, and takes the snake graph of the
    arc between a_1 and a_i.  ``a1`` picks the distinguished below neighbor
    (the construction depends on the choice; the default is canonical).
    """
    if frozenset((v,)) in ctx.collection:
        raise SetInCollection('%r is a collection member' % v)
    bd = ctx.branch(v, a1)
    a1 = bd.order[0]
    side_a, side_b = _companion_sides(ctx, v, bd)
    if leaf_l not in side_a:
        raise ValueError('%r does not lie beyond the distinguished neighbor'
                         % (leaf_l,))
    if leaf_k not in side_b:
        raise ValueError('%r lies beyond the distinguished neighbor' % (leaf_k,))
    path_lk = ctx.path(leaf_l, leaf_k)
    (ai,) = set(bd.order) & set(ctx.path(v, leaf_k)) - {v}
    i = bd.order.index(ai) + 1
    c1, ci = bd.c(1), bd.c(i)

    def b_vertex(branch, level):
        members = ctx.extended.neighbors_of_set(bd.chain_set(branch, level))
        (u,) = (members & set(path_lk)) - {v}
        return u

    b1 = [b_vertex(1, j) for j in range(1, c1 + 1)]
    bi = [b_vertex(i, j) for j in range(1, ci + 1)]

    # polygon positions, cyclically: b_{i,1}..b_{i,c_i}, a_i, v, a_1,
    # b_{1,c_1}..b_{1,1}
    labels = bi + [ai, v, a1] + list(reversed(b1))
    positions = list(range(len(labels)))
    pos_label = dict(zip(positions, labels))
    pos_of = {'v': ci + 1, 'a_i': ci, 'a_1': ci + 2}
    polygon = typea.Polygon(positions)

    weights = {}
    arcs = []
    level_of_arc = {}
    for j in range(1, ci + 1):
        arc = frozenset((pos_of['v'], j - 1))
        arcs.append(tuple(arc))
        weights[arc] = Monomial.variable(yvar_key(bd.chain_set(i, j)))
        level_of_arc[arc] = (i, j)
    for j in range(1, c1 + 1):
        arc = frozenset((pos_of['v'], len(labels) - j))
        arcs.append(tuple(arc))
        weights[arc] = Monomial.variable(yvar_key(bd.chain_set(1, j)))
        level_of_arc[arc] = (1, j)

    unit = Monomial(1)
    weights[frozenset((pos_of['a_i'], pos_of['v']))] = unit
    weights[frozenset((pos_of['v'], pos_of['a_1']))] = unit
    weights[frozenset((pos_of['a_1'], pos_of['a_1'] + 1))] = \
        _end_weight(ctx, a1, b1[-1])
    if ci:
        weights[frozenset((ci - 1, pos_of['a_i']))] = _end_weight(ctx, ai, bi[-1])
    for branch, seq in ((1, b1), (i, bi)):
        for j in range(1, len(seq)):
            u, nxt = seq[j - 1], seq[j]
            if branch == 1:
                pair = frozenset((len(labels) - j, len(labels) - j - 1))
            else:
                pair = frozenset((j - 1, j))
            weights[pair] = _middle_weight(ctx, v, bd, branch, j, u, nxt)
    closing = frozenset((len(labels) - 1, 0))
    weights[closing] = Monomial.variable(yvar_key(ctx.i_of[v]))

    triangulation = typea.Triangulation(polygon, arcs, weights)
    gamma = (pos_of['a_1'], pos_of['a_i'])
    planar = typea.build_ms_snake_graph(polygon, triangulation, gamma)

    # tile order must walk branch 1 outside-in, then branch i inside-out
    expected = [(1, j) for j in range(c1, 0, -1)] + \
               [(i, j) for j in range(1, ci + 1)]
    tile_levels = [level_of_arc[arc] for arc in planar.crossed]
    assert tile_levels == expected, 'component tiles out of order'

    node_keys = {}
    for m, tile in enumerate(planar.tiles):
        br, lv = tile_levels[m]
        n1, n2 = tile['diagonal']
        if pos_label[planar.nodes[n1]] == v:
            vn, bn = n1, n2
        else:
            vn, bn = n2, n1
        assert pos_label[planar.nodes[vn]] == v
        node_keys[vn] = _vkey(br, lv, bd.r)
        node_keys[bn] = ('b', br, lv, pos_label[planar.nodes[bn]])
    for nid in planar.nodes:
        if nid not in node_keys:
            node_keys[nid] = ('end', pos_label[planar.nodes[nid]])
    label_map = {nid: pos_label[pos] for nid, pos in planar.nodes.items()}
    return ComponentSnakeGraph(ctx, v, leaf_l, leaf_k, planar, label_map,
                               tile_levels, node_keys, bd)


def _vkey(branch, level, r):
    if branch == 1 and level == 1:
        return ('vopt',)
    if branch >= 2 and level == 1:
        return ('vfix',)
    return ('v', branch, level)


def _end_weight(ctx, a, u):
    """Weight of the polygon side between a chain end a and its outer b."""
    if u in ctx.extended.neighbors(a):
        return Monomial(1)
    zs = [z for z in ctx.covers(a)
          if u in ctx.extended.neighbors_of_set(ctx.i_of[z])]
    assert len(zs) == 1
    return Monomial.variable(yvar_key(ctx.i_of[zs[0]]))


def _middle_weight(ctx, v, bd, branch, j, u, nxt):
    """Weight of the side between b_{branch,j} and b_{branch,j+1}."""
    peak = bd.peak(branch, j)
    nxt_peak = bd.peak(branch, j + 1)
    if peak in ctx.extended.neighbors(u):
        assert nxt == peak
        return Monomial(1)
    inner = bd.chain_set(branch, j + 1)
    if u in ctx.extended.neighbors_of_set(inner):
        assert nxt == u
        path = set(ctx.path(v, peak))
        if ctx.extended.neighbors(u) & path:
            return Monomial(1)
        (inside,) = ctx.extended.neighbors(u) & inner
        (comp,) = [c for c in ctx.tree.components(inner - path)
                   if inside in c]
        return Monomial.variable(yvar_key(comp), 2)
    zs = [z for z in ctx.covers(peak) - {nxt_peak}
          if u in ctx.extended.neighbors_of_set(ctx.i_of[z])]
    assert len(zs) == 1 and nxt == peak
    return Monomial.variable(yvar_key(ctx.i_of[zs[0]]))


# ---------------------------------------------------------------------------
# singleton snake graphs


def _member_hyperedge_graph(ctx, member):
    """The snake graph of a collection member: one hyperedge, no diagonals."""
    g = SnakeGraph(ctx, member)
    nbrs = sorted(ctx.extended.neighbors_of_set(member))
    ids = [g.add_node(u, key=('end', u)) for u in nbrs]
    g.add_edge(ids, wset=member, kind=BOUNDARY)
    return g.canonical()


def build_singleton(ctx, v, a1=None):
    """The snake graph G_v of a singleton, glued from its components."""
    single = frozenset((v,))
    if single in ctx.collection:
        return _member_hyperedge_graph(ctx, single)
    bd = ctx.branch(v, a1)
    side_a, side_b = _companion_sides(ctx, v, bd)
    components = [build_component(ctx, v, l, k, a1=a1)
                  for l in side_a for k in side_b]
    assert components

    node_label = {}
    for comp in components:
        for nid, key in comp.node_keys.items():
            label = comp.pos_label[nid]
            assert node_label.setdefault(key, label) == label

    # merge edges by structural class
    classes = {}
    for comp in components:
        for keys, wset, squared, _ in comp.edge_records():
            cls = _edge_class(keys, wset, squared, ctx.i_of[v])
            entry = classes.setdefault(cls, (set(), wset, squared))
            entry[0].update(keys)

    diag_nodes = {}
    for comp in components:
        for m, (br, lv) in enumerate(comp.tile_levels):
            label = bd.chain_set(br, lv)
            pair = comp.planar.tiles[m]['diagonal']
            diag_nodes.setdefault(label, set()).update(
                comp.node_keys[n] for n in pair)

    g = SnakeGraph(ctx, single)
    id_of = {}
    for key in sorted(node_label, key=str):
        id_of[key] = g.add_node(node_label[key], key=key,
                                is_v_opt=key == ('vopt',),
                                is_v_fix=key == ('vfix',))
    for cls in sorted(classes, key=str):
        keys, wset, squared = classes[cls]
        g.add_edge([id_of[k] for k in keys], wset=wset, squared=squared,
                   origin=v)
    for label in sorted(diag_nodes, key=sorted):
        g.add_diagonal([id_of[k] for k in diag_nodes[label]], label)

    # valence census: v_opt gets 1+(p-2), v_fix gets (r-1)+0, the below
    # chain ends and the peak nodes get 1+(degree-2), the rest 1+0
    below = set(bd.order[:bd.r])
    peak_on = {}
    for i in range(1, bd.r + 1):
        for j in range(2, bd.c(i) + 1):
            peak_on[('b', i, j, bd.peak(i, j - 1))] = bd.peak(i, j - 1)
    for key, nid in id_of.items():
        node = g.nodes[nid]
        if key == ('vfix',):
            node.a, node.b = bd.r - 1, 0
        elif key == ('vopt',):
            node.a, node.b = 1, bd.p - 2
        elif key[0] == 'end' and key[1] in below:
            node.a, node.b = 1, ctx.extended.degree(key[1]) - 2
        elif key in peak_on:
            node.a, node.b = 1, ctx.extended.degree(peak_on[key]) - 2
        else:
            node.a, node.b = 1, 0
    _check_edge_incidences(ctx, v, g)
    _assign_kinds(g)
    return g.canonical()


def _assign_kinds(g):
    """Per-part boundary/internal rule: an edge is a boundary edge when it
    meets at most one diagonal or meets a diagonal carrying its own weight
    set; otherwise internal.  Evaluated on the owning (trimmed) graph;
    edges identified while gluing are flagged internal separately and are
    not reclassified."""
    for e in g.edges.values():
        if e.kind == INTERNAL and e.origin is None:
            continue
        labels = g.edge_diagonal_labels(e)
        if len(labels) <= 1 or (e.wset is not None and e.wset in labels):
            e.kind = BOUNDARY
        else:
            e.kind = INTERNAL


def _edge_class(keys, wset, squared, i_v):
    if wset is None:
        return ('unit', frozenset(keys))
    if squared:
        levels = sorted((k[1], k[2]) for k in keys if k[0] == 'b')
        branch, level = levels[0]
        return ('sq', tuple(sorted(wset)), branch, level)
    if wset == i_v:
        return ('center',)
    vkeys = [k for k in keys if k[0] in ('v', 'vopt', 'vfix')]
    if vkeys:
        assert len(vkeys) == 1
        return ('cross', vkeys[0], tuple(sorted(wset)))
    return ('braid', tuple(sorted(wset)))


def _check_edge_incidences(ctx, v, g):
    """Every weighted edge and diagonal meets the neighbor pattern of its set."""
    for e in g.edges.values():
        if e.wset is None:
            continue
        labels = sorted(g.nodes[n].label for n in e.nodes)
        nbrs = ctx.extended.neighbors_of_set(e.wset)
        if not e.squared:
            assert labels == sorted(nbrs), \
                'edge %r misses the neighbor pattern of %r' % (e, sorted(e.wset))
        else:
            assert all(labels.count(u) == 2 for u in set(labels))
            assert set(labels) <= nbrs
    for d in g.diagonals.values():
        labels = sorted(g.nodes[n].label for n in d.nodes)
        assert labels == sorted(ctx.extended.neighbors_of_set(d.label))


def classify_edge(graph, eid):
    """Boundary/internal kind of an edge (assigned structurally at build)."""
    if eid not in graph.edges:
        raise UnknownEdgeId('no edge %r' % (eid,))
    return graph.edges[eid].kind


# ---------------------------------------------------------------------------
# trimming


def trim(ctx, graph, target_set):
    """Cut G_v down to the graph of {v} together with the swallowed chains.

    For each below-neighbor branch of v contained in the target set, with m
    minimal such that the chain set at depth m sits inside the set: edges
    meeting a strictly smaller diagonal (or the guaranteed cut vertex when
    none exists) are deleted, the v node of the depth-m diagonal loses one
    from the first valence coordinate, diagonals at depth >= m disappear,
    and dead nodes are swept.
    """
    target_set = frozenset(target_set)
    cls = ctx.classify_set(target_set)
    if not cls.is_buildable:
        raise NotWeaklyRooted('%r is not weakly rooted' % sorted(target_set))
    (v,) = graph.owner
    if v not in cls.rooted_portion:
        raise VertexNotInRootedPortion('%r not in the rooted portion of %r'
                                       % (v, sorted(target_set)))
    bd = _branch_for_graph(ctx, graph, v)
    g = graph.copy()
    swallowed = []
    for idx, a in enumerate(bd.order[:bd.r], start=1):
        if a not in target_set or a in cls.rooted_portion:
            continue
        m = next(j for j in range(1, bd.c(idx) + 1)
                 if bd.chain_set(idx, j) < target_set)
        cut_label = bd.chain_set(idx, m)
        swallowed.append(cut_label)
        smaller = [d for d in g.diagonals.values() if d.label < cut_label]
        if smaller:
            doomed = set()
            for d in smaller:
                doomed.update(d.nodes)
            dead_edges = [e.id for e in g.edges.values()
                          if set(e.nodes) & doomed]
        else:
            assert m == bd.c(idx)
            peak = bd.peak(idx, m)
            cands = [n for n in g.nodes.values() if n.label == peak
                     and not g.node_diagonals(n.id)]
            assert len(cands) == 1, 'cut vertex must be unique'
            dead_edges = [e.id for e in g.edges.values()
                          if cands[0].id in e.nodes]
        for eid in dead_edges:
            del g.edges[eid]
        _sweep_isolated(g)
        (diag,) = [d for d in g.diagonals.values() if d.label == cut_label]
        (vnode,) = [g.nodes[n] for n in diag.nodes if g.nodes[n].label == v]
        vnode.a -= 1
        assert vnode.a >= 0
        for did in [d.id for d in g.diagonals.values()
                    if d.label <= cut_label]:
            del g.diagonals[did]
        for node in [n for n in g.nodes.values() if (n.a, n.b) == (0, 0)]:
            for e in g.incident_edges(node.id):
                del g.edges[e.id]
            del g.nodes[node.id]
        _sweep_isolated(g)
    _assign_kinds(g)
    g.owner = frozenset((v,)).union(*swallowed) if swallowed else frozenset((v,))
    return g.canonical()


def _branch_for_graph(ctx, graph, v):
    """Branch data matching the orientation the graph was built with.

    The distinguished neighbor a_1 is recovered from the v_opt node: it
    lies on the diagonal carrying the top chain set of the first branch,
    which contains a_1 and no other neighbor of v.
    """
    default = ctx.branch(v)
    for node in graph.nodes.values():
        if node.is_v_opt:
            diags = graph.node_diagonals(node.id)
            if not diags:
                break
            label = max((d.label for d in diags), key=len)
            for a in default.order[:default.r]:
                if a in label:
                    return ctx.branch(v, a)
    return default


def _sweep_isolated(g):
    used = set()
    for e in g.edges.values():
        used.update(e.nodes)
    for nid in [nid for nid in g.nodes if nid not in used]:
        del g.nodes[nid]
    for d in list(g.diagonals.values()):
        kept = [n for n in d.nodes if n in g.nodes]
        if kept != list(d.nodes):
            g.diagonals[d.id] = SnakeDiagonal(d.id, kept, d.label)


# ---------------------------------------------------------------------------
# gluing


def find_glue_edge(graph, v, w):
    """The unique unit binary edge joining labels v and w, not yet glued."""
    cands = []
    for e in graph.edges.values():
        if e.wset is not None or len(e.nodes) != 2 or e.origin is None:
            continue
        labels = sorted(graph.nodes[n].label for n in e.nodes)
        if labels == sorted((v, w)):
            cands.append(e)
    if len(cands) != 1:
        raise MissingGlueEdge('expected one (%r, %r) edge, found %d'
                              % (v, w, len(cands)))
    return cands[0]


def glue(ctx, graph_a, graph_b, pair):
    """Identify the (v, w) boundary edges of the two graphs.

    The two matched endpoints each get the coordinate-wise valence sum with
    one subtracted from the first coordinate; the identified edge becomes
    internal.
    """
    v, w = pair
    ea = find_glue_edge(graph_a, v, w)
    eb = find_glue_edge(graph_b, v, w)
    g = graph_a.copy()
    a_by_label = {g.nodes[n].label: g.nodes[n] for n in ea.nodes}
    b_by_label = {graph_b.nodes[n].label: graph_b.nodes[n] for n in eb.nodes}
    remap = {}
    for label in (v, w):
        na, nb = a_by_label[label], b_by_label[label]
        remap[nb.id] = na.id
        na.a = na.a + nb.a - 1
        na.b = na.b + nb.b
        assert na.a >= 0
        na.is_v_opt = na.is_v_opt or nb.is_v_opt
        na.is_v_fix = na.is_v_fix or nb.is_v_fix
    for n in graph_b.nodes.values():
        if n.id in remap:
            continue
        remap[n.id] = g.add_node(n.label, n.a, n.b,
                                 key=('part', min(graph_b.owner), n.key),
                                 is_v_opt=n.is_v_opt, is_v_fix=n.is_v_fix)
    b_edge_ids = {}
    for e in graph_b.edges.values():
        if e.id == eb.id:
            continue
        b_edge_ids[e.id] = g.add_edge([remap[n] for n in e.nodes],
                                      wset=e.wset, squared=e.squared,
                                      origin=e.origin, kind=e.kind)
    labels_a = {d.label for d in g.diagonals.values()}
    for d in graph_b.diagonals.values():
        assert d.label not in labels_a, 'diagonal labels stay distinct'
        g.add_diagonal([remap[n] for n in d.nodes], d.label)
    glue_edge = g.edges[ea.id]
    glue_edge.kind = INTERNAL
    glue_edge.origin = None
    g.owner = graph_a.owner | graph_b.owner
    final, _, edge_remap = g.canonical(with_maps=True)
    rev_a = {edge_remap[e.id]: e.id for e in graph_a.edges.values()
             if e.id != ea.id}
    rev_b = {edge_remap[new_id]: old_id
             for old_id, new_id in b_edge_ids.items()}
    final.glue_info = {
        'glue_edge': edge_remap[ea.id],
        'parts': (graph_a, graph_b),
        'part_glue_edges': (ea.id, eb.id),
        'reverse_maps': (rev_a, rev_b),
    }
    return final


# ---------------------------------------------------------------------------
# the full construction


def build_snake_graph(ctx, target_set):
    """Snake graph of a weakly rooted set: trim singletons, then glue."""
    target_set = frozenset(target_set)
    cls = ctx.classify_set(target_set)
    if not cls.is_buildable:
        raise NotWeaklyRooted('%r is not weakly rooted' % sorted(target_set))
    if target_set in ctx.collection:
        return _member_hyperedge_graph(ctx, target_set)
    portion = cls.rooted_portion
    order, parent = _bfs_order(ctx, portion, ctx.m_max(target_set))
    parts = {v: trim(ctx, build_singleton(ctx, v), target_set) for v in order}
    acc = parts[order[0]]
    for child in order[1:]:
        acc = glue(ctx, acc, parts[child], (parent[child], child))
    acc.owner = target_set
    return acc


def _bfs_order(ctx, portion, root):
    assert root in portion
    order, parent = [root], {}
    queue = [root]
    seen = {root}
    while queue:
        u = queue.pop(0)
        for nb in sorted(ctx.tree.neighbors(u)):
            if nb in portion and nb not in seen:
                seen.add(nb)
                parent[nb] = u
                order.append(nb)
                queue.append(nb)
    assert len(order) == len(portion), 'rooted portion must be connected'
    return order, parent


# ---------------------------------------------------------------------------
# positivity


def positivity_in_cluster(ctx, target_set):
    """True iff the expansion stays inside the cluster variables.

    Criterion: for every vertex v of the rooted portion, every branch depth
    j < c_i whose chain set escapes the target set has all components of
    (next chain set) minus [v, peak] inside the collection.
    """
    target_set = frozenset(target_set)
    cls = ctx.classify_set(target_set)
    if not cls.is_buildable:
        raise NotWeaklyRooted('%r is not weakly rooted' % sorted(target_set))
    for v in cls.rooted_portion:
        bd = ctx.branch(v)
        for i in range(1, bd.r + 1):
            for j in range(1, bd.c(i)):
                if bd.chain_set(i, j) <= target_set:
                    continue
                path = set(ctx.path(v, bd.peak(i, j)))
                rest = bd.chain_set(i, j + 1) - path
                for comp in ctx.tree.components(rest):
                    if comp not in ctx.collection:
                        return False
    return True
