"""Hyper T-paths: the incidence view of admissible matchings.

A complete hyper T-path for a weakly rooted set has one node per snake
graph vertex, one odd (weighted) connection per matching edge and one even
(labeled) connection per diagonal; its weight is the product of the odd
weights over the product of the even labels, so the T-path weights sum to
the set variable exactly as the matchings do.

Validation checks the structural items literally: endpoint patterns of
weighted connections, the boundary-node census (one node per neighbor of
the set, at most one per valence-0+b node), valence counts at boundary and
internal nodes, connectivity of the diagram, and the four interaction
items, which mirror the admissibility conditions of the underlying graph
(no straddling triangle, no doubled nested cycle, straddling boundary
pairs together, parallel internal pairs together).  The label-sequence
items along boundary-to-boundary walks need hypergraph path search and are
only evaluated in strict mode, with explicit path witnesses.
"""

from dataclasses import dataclass, field

from .errors import NotAdmissible
from . import matchings as matchings_mod
from . import snakegraph
from .symbolic import Monomial, RationalExpr


@dataclass(frozen=True)
class Connection:
    id: int
    parity: str                 # 'odd' | 'even'
    endpoints: tuple            # node ids
    wset: frozenset             # weight set (odd) or label (even)
    squared: bool = False
    source_id: int = None       # edge id (odd) / diagonal id (even)


class HyperTPath:
    def __init__(self, ctx, target_set, nodes, connections, graph=None):
        self.ctx = ctx
        self.target_set = frozenset(target_set)
        self.nodes = nodes            # id -> (label, (a, b))
        self.connections = connections
        self.graph = graph

    def odd(self):
        return [c for c in self.connections.values() if c.parity == 'odd']

    def even(self):
        return [c for c in self.connections.values() if c.parity == 'even']

    def weight(self):
        num = Monomial(1)
        for c in self.odd():
            if c.wset:
                num = num * Monomial.variable(('Y', tuple(sorted(c.wset))),
                                              2 if c.squared else 1)
        den = Monomial(1)
        for c in self.even():
            den = den * Monomial.variable(('Y', tuple(sorted(c.wset))))
        return RationalExpr.from_monomial(num) / RationalExpr.from_monomial(den)

    def toggled(self, edge_id):
        """Copy with the odd connection of ``edge_id`` added or removed."""
        assert self.graph is not None
        present = [cid for cid, c in self.connections.items()
                   if c.parity == 'odd' and c.source_id == edge_id]
        conns = dict(self.connections)
        if present:
            for cid in present:
                del conns[cid]
        else:
            e = self.graph.edges[edge_id]
            cid = max(conns, default=-1) + 1
            conns[cid] = Connection(cid, 'odd', e.nodes, e.weight_set() or
                                    frozenset(), e.squared, edge_id)
        return HyperTPath(self.ctx, self.target_set, dict(self.nodes), conns,
                          self.graph)

    def matched_edge_ids(self):
        return tuple(sorted(c.source_id for c in self.odd()))


def matching_to_tpath(graph, edge_ids, check=True):
    """Convert an admissible matching into its complete hyper T-path."""
    if check:
        report = matchings_mod.is_admissible(graph, edge_ids)
        if not report.ok:
            raise NotAdmissible('matching fails condition %r'
                                % (report.first_violation,))
    nodes = {nid: (n.label, (n.a, n.b)) for nid, n in graph.nodes.items()}
    conns = {}
    cid = 0
    for eid in sorted(edge_ids):
        e = graph.edges[eid]
        conns[cid] = Connection(cid, 'odd', e.nodes,
                                e.weight_set() or frozenset(), e.squared, eid)
        cid += 1
    for did in sorted(graph.diagonals):
        d = graph.diagonals[did]
        conns[cid] = Connection(cid, 'even', d.nodes, d.label, False, did)
        cid += 1
    return HyperTPath(graph.ctx, graph.owner, nodes, conns, graph)


@dataclass
class TPathReport:
    ok: bool
    violations: list = field(default_factory=list)
    strict_checked: bool = False

    def __bool__(self):
        return self.ok


def validate_tpath(ctx, target_set, alpha, strict=False):
    """Check the complete hyper T-path items; returns a report, never raises.

    Items checked always: weighted-connection endpoint patterns, boundary
    node census, boundary/internal valence counts, connectivity, and the
    four interaction items (reported as items 8..11).  Strict mode adds the
    label-sequence walks between boundary nodes (items 5 and 6) with path
    witnesses.
    """
    violations = []
    graph = alpha.graph
    if graph is None:
        graph = snakegraph.build_snake_graph(ctx, target_set)
    node_diag_count = {nid: 0 for nid in alpha.nodes}
    for c in alpha.even():
        for nid in c.endpoints:
            node_diag_count[nid] += 1
    node_odd_count = {nid: 0 for nid in alpha.nodes}
    for c in alpha.odd():
        for nid in c.endpoints:
            node_odd_count[nid] += 1

    # item 1: endpoint label patterns of weighted connections
    for c in alpha.odd() + alpha.even():
        if not c.wset:
            continue
        labels = sorted(alpha.nodes[nid][0] for nid in c.endpoints)
        nbrs = ctx.extended.neighbors_of_set(c.wset)
        if c.squared:
            good = (set(labels) <= nbrs
                    and all(labels.count(u) == 2 for u in set(labels)))
        else:
            good = labels == sorted(nbrs)
        if not good:
            violations.append((1, c.id))

    # items 2-4: boundary nodes and valence counts
    boundary = {nid for nid in alpha.nodes if node_diag_count[nid] == 0}
    blabels = sorted(alpha.nodes[nid][0] for nid in boundary)
    outside = ctx.extended.neighbors_of_set(alpha.target_set)
    b_nodes = {nid for nid in alpha.nodes if alpha.nodes[nid][1][0] == 0}
    expected = sorted(outside)
    extra = list(blabels)
    for u in expected:
        if u in extra:
            extra.remove(u)
        else:
            violations.append((2, u))
    for u in extra:
        if not any(nid in b_nodes and alpha.nodes[nid][0] == u
                   for nid in boundary):
            violations.append((2, u))
    for nid in alpha.nodes:
        a, b = alpha.nodes[nid][1]
        if nid in boundary:
            if not a <= node_odd_count[nid] <= a + b:
                violations.append((3, nid))
        else:
            if node_diag_count[nid] != a:
                violations.append((4, nid))
            if not a <= node_odd_count[nid] <= a + b:
                violations.append((4, nid))

    # connectivity of the diagram spanned by the connections
    active = {nid for nid in alpha.nodes
              if node_odd_count[nid] or node_diag_count[nid]}
    if active:
        seen = set()
        stack = [min(active)]
        while stack:
            nid = stack.pop()
            if nid in seen:
                continue
            seen.add(nid)
            for c in alpha.connections.values():
                if nid in c.endpoints:
                    stack.extend(c.endpoints)
        if seen != active:
            violations.append(('disconnected', tuple(sorted(active - seen))))

    # items 8-11 mirror the admissibility conditions of the graph
    matched = set(alpha.matched_edge_ids())
    tables = matchings_mod.condition_tables(graph)
    tag_to_item = {1: 8, 3: 9, 2: 10, 4: 11}
    for pair, tag in tables.forbidden.items():
        if pair <= matched:
            violations.append((tag_to_item[tag], tuple(sorted(pair))))
    for pair, tag in tables.forced.items():
        if len(pair & matched) == 1:
            violations.append((tag_to_item[tag], tuple(sorted(pair))))

    if strict:
        violations.extend(_strict_walk_checks(ctx, alpha, boundary))
    violations.sort(key=lambda vi: (str(vi[0]), str(vi[1:])))
    return TPathReport(not violations, violations, strict)


def _strict_walk_checks(ctx, alpha, boundary):
    """Items 5 and 6: even-connection labels along boundary-to-boundary paths.

    Both items follow the extended-tree path between the two boundary
    labels.  Below a pair of set elements the prescription lists the
    minimal sets of every path vertex except the join; toward a vertex
    above the order maximum it lists the minimal sets of the near side and
    stops two short of the far end.
    """
    out = []
    by_label = {}
    for nid in boundary:
        by_label.setdefault(alpha.nodes[nid][0], []).append(nid)
    target = alpha.target_set
    outside = sorted(ctx.extended.neighbors_of_set(target))
    top = ctx.m_max(target & ctx.tree.vertices) if target else None
    for xi, x in enumerate(outside):
        for y in outside[xi + 1:]:
            below_x = any(ctx.less_than(x, v) for v in target)
            below_y = any(ctx.less_than(y, v) for v in target)
            gamma_path = ctx.path(x, y)
            if below_x and below_y:
                join = _join_vertex(ctx, gamma_path)
                want = [frozenset(ctx.i_of[u])
                        for u in gamma_path if u != join and u in ctx.i_of]
                item = 5
            elif below_x and top is not None and ctx.less_than(top, y):
                # path x, u_l, ..., u_1, y: prescribed labels stop at u_2
                inner = gamma_path[:-2]
                want = [frozenset(ctx.i_of[u]) for u in inner if u in ctx.i_of]
                item = 6
            else:
                continue
            for nx in by_label.get(x, ()):
                for ny in by_label.get(y, ()):
                    for labels, witness in _paths(alpha, nx, ny):
                        # deeper chain diagonals may interleave; the
                        # prescribed labels must appear in the given order
                        seen = [lab for lab in labels if lab in set(want)]
                        if seen != [lab for lab in want if lab in set(seen)]:
                            out.append((item, (x, y, tuple(witness))))
                            break
    return out


def _join_vertex(ctx, gamma_path):
    best = None
    for u in gamma_path:
        if u in ctx.i_of or ctx.extended.is_companion(u):
            if best is None or ctx.less_than(best, u):
                best = u
    return best


def _paths(alpha, start, goal):
    """Hypergraph paths (distinct nodes and connections) from start to goal;
    yields (even labels in order, connection ids)."""
    results = []

    def step(nid, seen_nodes, used, labels, trail):
        if nid == goal:
            results.append((labels, trail))
            return
        for c in alpha.connections.values():
            if c.id in used or nid not in c.endpoints:
                continue
            for nxt in c.endpoints:
                if nxt == nid or nxt in seen_nodes:
                    continue
                step(nxt, seen_nodes | {nxt}, used | {c.id},
                     labels + ([c.wset] if c.parity == 'even' else []),
                     trail + [c.id])

    step(start, frozenset((start,)), frozenset(), [], [])
    return results
