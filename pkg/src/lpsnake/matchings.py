"""Admissible matchings of snake graphs and the weighted expansion.

A matching is an edge subset meeting every node with valence a+b at least
a and at most a+b times.  Admissibility adds four incidence conditions
relating edge weight sets to diagonal labels; conditions (1) and (3)
forbid certain pairs from appearing together, conditions (2) and (4) force
certain pairs to appear together.  All four are static pair patterns of
the graph, so the checker precomputes a forbidden-pair set and a
forced-pair set once; enumeration backtracks over edges with incremental
valence and forbidden-pair pruning and filters forced pairs at the leaves.
The brute-force subset filter is kept behind a flag as the ground truth
for small graphs.
"""

from dataclasses import dataclass, field

from .errors import NotAdmissible, UnknownEdgeId
from .snakegraph import BOUNDARY, INTERNAL
from .symbolic import Monomial, RationalExpr

BRUTE_FORCE_EDGE_LIMIT = 24


@dataclass(frozen=True)
class AdmissibilityReport:
    ok: bool
    first_violation: object = None      # 'valence' or condition number 1..4
    witnesses: tuple = ()

    def __bool__(self):
        return self.ok


@dataclass
class ConditionTables:
    """Static pair patterns of one graph plus the gluing-consistency flag."""
    forbidden: dict = field(default_factory=dict)   # pair -> condition no.
    forced: dict = field(default_factory=dict)      # pair -> condition no.
    check_gluing: bool = False
    skip: tuple = ()


def _edges_share_nodes(e1, e2):
    return bool(set(e1.nodes) & set(e2.nodes))


def _shares_diagonal(graph, edge, diagonal):
    return bool(set(edge.nodes) & set(diagonal.nodes))


def condition_tables(graph, skip=()):
    """Precompute the forbidden (conditions 1, 3) and forced (2, 4) pairs.

    ``skip`` lists condition numbers to leave out; used by the tests that
    show each condition is load-bearing.
    """
    tables = ConditionTables()
    edges = sorted(graph.edges.values(), key=lambda e: e.id)
    diagonals = sorted(graph.diagonals.values(), key=lambda d: d.id)
    edge_diags = {e.id: [d for d in diagonals if _shares_diagonal(graph, e, d)]
                  for e in edges}
    # glued (v, w) edges are internal by fiat but the gluing creates no new
    # condition-(4) pairs, so they neither join such pairs nor make a
    # boundary edge count as "incident to internal edges"
    def is_glued(e):
        return e.kind == INTERNAL and e.origin is None and e.wset is None
    internal = [e for e in edges if e.kind == INTERNAL and not is_glued(e)]
    touches_internal = {e.id: (e.kind == INTERNAL and not is_glued(e))
                        or any(_edges_share_nodes(e, f) for f in internal)
                        for e in edges}

    def put(table, e1, e2, tag):
        table.setdefault(frozenset((e1.id, e2.id)), tag)

    # the gluing consistency rule (below) is active unless condition (2)
    # is being skipped; skipped conditions propagate into the recursive
    # per-part checks
    tables.check_gluing = 2 not in skip
    tables.skip = tuple(sorted(skip))

    for i, e1 in enumerate(edges):
        for e2 in edges[i + 1:]:
            w1, w2 = e1.weight_set(), e2.weight_set()
            share = _edges_share_nodes(e1, e2)
            common = [d for d in edge_diags[e1.id] if d in edge_diags[e2.id]]
            # (1) sharing edges straddling a diagonal strictly between them
            if 1 not in skip and share:
                for d in common:
                    for lo, hi in ((e1, e2), (e2, e1)):
                        if (lo.weight_set() < d.label
                                and d.label < hi.weight_set()):
                            put(tables.forbidden, e1, e2, 1)
            # (2) disjoint boundary edges straddling a diagonal: together
            if 2 not in skip and not share and w1 and w2 \
                    and e1.kind == BOUNDARY and e2.kind == BOUNDARY:
                for d in common:
                    if (w1 < d.label < w2) or (w2 < d.label < w1):
                        put(tables.forced, e1, e2, 2)
            # (3) disjoint boundary edges carrying the labels of a nested
            # pair of diagonals seen by both
            if 3 not in skip and not share \
                    and e1.kind == BOUNDARY and e2.kind == BOUNDARY \
                    and len(common) >= 2:
                labels = {d.label for d in common}
                for lo, hi in ((e1, e2), (e2, e1)):
                    wl, wh = lo.weight_set(), hi.weight_set()
                    if wl in labels and wh in labels and wl < wh:
                        put(tables.forbidden, e1, e2, 3)
            # (4) sharing internal edges (or boundary edges leaning on
            # internal ones) with private endpoints on one diagonal: together
            if 4 not in skip and share:
                if is_glued(e1) or is_glued(e2):
                    continue
                both_internal = e1.kind == INTERNAL and e2.kind == INTERNAL
                both_leaning = (e1.kind == BOUNDARY and e2.kind == BOUNDARY
                                and touches_internal[e1.id]
                                and touches_internal[e2.id])
                if not (both_internal or both_leaning):
                    continue
                priv1 = set(e1.nodes) - set(e2.nodes)
                priv2 = set(e2.nodes) - set(e1.nodes)
                hit = False
                for d in diagonals:
                    if w1 <= d.label and w2 <= d.label \
                            and priv1 & set(d.nodes) and priv2 & set(d.nodes):
                        hit = True
                        break
                if hit:
                    put(tables.forced, e1, e2, 4)
    return tables


def is_matching(graph, edge_ids):
    counts = {nid: 0 for nid in graph.nodes}
    for eid in edge_ids:
        if eid not in graph.edges:
            raise UnknownEdgeId('no edge %r' % (eid,))
        for nid in graph.edges[eid].nodes:
            counts[nid] += 1
    for nid, n in graph.nodes.items():
        if not n.a <= counts[nid] <= n.a + n.b:
            return False, nid
    return True, None


def _cached_tables(graph, skip=()):
    cache = getattr(graph, '_tables_cache', None)
    if cache is None:
        cache = {}
        graph._tables_cache = cache
    key = tuple(sorted(skip))
    if key not in cache:
        cache[key] = condition_tables(graph, skip=key)
    return cache[key]


def _base_ok(graph, edge_ids, tables):
    """Valences plus the four pairwise patterns, without glue consistency."""
    ok, _ = is_matching(graph, edge_ids)
    if not ok:
        return False
    for pair, _tag in tables.forbidden.items():
        if pair <= edge_ids:
            return False
    for pair, _tag in tables.forced.items():
        if len(pair & edge_ids) == 1:
            return False
    return True


def _part_admissible(graph, edge_ids):
    tables = _cached_tables(graph)
    return _base_ok(graph, edge_ids, tables)         and _glue_side_violation(graph, edge_ids, tables) is None


def _glue_side_violation(graph, edge_ids, tables):
    """Gluing consistency: the matching must decompose along the last glue.

    With the glued edge present, both restrictions (each keeping a copy of
    it) must be admissible in their parts; without it, the glued edge must
    complete exactly one side to an admissible part matching.  The rule
    follows the gluing bijection and plays the role the straddle-forcing
    condition plays at identified vertices; it rejects, for example, the
    glue-free variant of a matching whose identified vertices have spare
    valence, which would otherwise be double counted.
    """
    if not tables.check_gluing:
        return None
    info = graph.glue_info
    if info is None:
        return None
    gid = info['glue_edge']
    part_a, part_b = info['parts']
    glue_a, glue_b = info['part_glue_edges']
    rev_a, rev_b = info['reverse_maps']
    p_a = frozenset(rev_a[e] for e in edge_ids if e in rev_a)
    p_b = frozenset(rev_b[e] for e in edge_ids if e in rev_b)
    if gid in edge_ids:
        if _part_admissible(part_a, p_a | {glue_a})                 and _part_admissible(part_b, p_b | {glue_b}):
            return None
        return (gid,)
    ok_a = _part_admissible(part_a, p_a | {glue_a})         and _part_admissible(part_b, p_b)
    ok_b = _part_admissible(part_a, p_a)         and _part_admissible(part_b, p_b | {glue_b})
    if ok_a != ok_b:
        return None
    return (gid,)


def is_admissible(graph, edge_ids, tables=None):
    """Evaluate the valence bounds and the four conditions literally."""
    edge_ids = frozenset(edge_ids)
    ok, bad_node = is_matching(graph, edge_ids)
    if not ok:
        return AdmissibilityReport(False, 'valence', (bad_node,))
    if tables is None:
        tables = condition_tables(graph)
    best = None
    for pair, tag in tables.forbidden.items():
        if pair <= edge_ids and (best is None or tag < best[0]):
            best = (tag, tuple(sorted(pair)))
    for pair, tag in tables.forced.items():
        if len(pair & edge_ids) == 1 and (best is None or tag < best[0]):
            best = (tag, tuple(sorted(pair)))
    if best is None:
        sides = _glue_side_violation(graph, edge_ids, tables)
        if sides is not None:
            best = (2, sides)
    if best is not None:
        return AdmissibilityReport(False, best[0], best[1])
    return AdmissibilityReport(True)


def enumerate_admissible(graph, brute_force=False, tables=None):
    """All admissible matchings, each once, sorted by their edge-id tuples."""
    if tables is None:
        tables = condition_tables(graph)
    if brute_force:
        return _enumerate_brute(graph, tables)
    edges = sorted(graph.edges.values(), key=lambda e: e.id)
    incident = {nid: [] for nid in graph.nodes}
    for e in edges:
        for nid in e.nodes:
            incident[nid].append(e.id)
    forbidden_partners = {}
    for pair, _ in tables.forbidden.items():
        x, y = tuple(pair)
        forbidden_partners.setdefault(x, set()).add(y)
        forbidden_partners.setdefault(y, set()).add(x)
    counts = {nid: 0 for nid in graph.nodes}
    undecided = {nid: len(incident[nid]) for nid in graph.nodes}
    chosen = []
    out = []

    def feasible():
        return all(counts[nid] + undecided[nid] >= graph.nodes[nid].a
                   for nid in graph.nodes)

    def walk(idx):
        if idx == len(edges):
            cset = frozenset(chosen)
            if all(counts[nid] >= graph.nodes[nid].a for nid in graph.nodes) \
                    and all(len(pair & cset) != 1 for pair in tables.forced) \
                    and _glue_side_violation(graph, cset, tables) is None:
                out.append(tuple(sorted(chosen)))
            return
        e = edges[idx]
        for nid in e.nodes:
            undecided[nid] -= 1
        # branch: leave the edge out
        if feasible():
            walk(idx + 1)
        # branch: take the edge
        bad = any(counts[nid] + 1 > graph.nodes[nid].a + graph.nodes[nid].b
                  for nid in e.nodes)
        if not bad and not (forbidden_partners.get(e.id, ()) and
                            forbidden_partners[e.id] & set(chosen)):
            for nid in e.nodes:
                counts[nid] += 1
            chosen.append(e.id)
            if feasible():
                walk(idx + 1)
            chosen.pop()
            for nid in e.nodes:
                counts[nid] -= 1
        for nid in e.nodes:
            undecided[nid] += 1

    walk(0)
    out.sort()
    return out


def _enumerate_brute(graph, tables):
    edges = sorted(graph.edges)
    assert len(edges) <= BRUTE_FORCE_EDGE_LIMIT, 'brute force capped'
    out = []
    for mask in range(1 << len(edges)):
        subset = [edges[i] for i in range(len(edges)) if mask >> i & 1]
        if is_admissible(graph, subset, tables).ok:
            out.append(tuple(sorted(subset)))
    out.sort()
    return out


def weight(graph, edge_ids, check=True):
    """wt(P): the product of the edge weights of an admissible matching."""
    if check:
        report = is_admissible(graph, edge_ids)
        if not report.ok:
            raise NotAdmissible('not admissible: condition %r at %r'
                                % (report.first_violation, report.witnesses))
    m = Monomial(1)
    for eid in edge_ids:
        if eid not in graph.edges:
            raise UnknownEdgeId('no edge %r' % (eid,))
        m = m * graph.edges[eid].weight_monomial()
    return m


def chi(graph, matchings=None):
    """The weighted matching sum divided by the diagonal product; exact."""
    if matchings is None:
        matchings = enumerate_admissible(graph)
    total = RationalExpr.zero()
    for p in matchings:
        total = total + RationalExpr.from_monomial(weight(graph, p, check=False))
    return total / RationalExpr.from_monomial(graph.ell())
