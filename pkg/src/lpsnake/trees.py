"""Trees, extended trees, nested collections and the induced order data.

A maximal nested collection on the vertex set of a tree is a family of
connected subsets, pairwise nested or disjoint, such that disjoint members
are never adjacent, with exactly one member per vertex.  It induces

* a bijection v -> I_v (smallest member containing v) with inverse
  I -> m(I) (the order-maximum of I),
* a partial order u < w iff u lies in I_w, extended to the companion
  leaves of the extended tree by placing them above everything,
* per-vertex branch data: for every neighbor a of v lying below v, the
  chain of members containing a but not v, together with their maxima.

Vertex subsets are passed around as frozensets; identity is structural.
All classes here are immutable after construction and safe to share.
"""

from dataclasses import dataclass

from .errors import NotConnected, NotMaximalNested


class Tree:
    """Finite unrooted tree on integer-labeled vertices."""

    def __init__(self, vertices, edges):
        self.vertices = frozenset(vertices)
        self.edges = frozenset(frozenset(e) for e in edges)
        for e in self.edges:
            if len(e) != 2:
                raise ValueError('self-loop or malformed edge: %r' % (set(e),))
            if not e <= self.vertices:
                raise ValueError('edge %r leaves the vertex set' % (set(e),))
        if len(self.edges) != len(self.vertices) - 1:
            raise ValueError('a tree on %d vertices has %d edges'
                             % (len(self.vertices), len(self.vertices) - 1))
        adj = {v: set() for v in self.vertices}
        for e in self.edges:
            u, w = tuple(e)
            adj[u].add(w)
            adj[w].add(u)
        self.adj = {v: frozenset(ns) for v, ns in adj.items()}
        if self.vertices and not self._is_connected(self.vertices):
            raise ValueError('graph is not connected')

    def _is_connected(self, subset):
        subset = set(subset)
        if not subset:
            return False
        seen = {next(iter(sorted(subset)))}
        stack = list(seen)
        while stack:
            v = stack.pop()
            for w in self.adj[v]:
                if w in subset and w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen == subset

    def is_connected_subset(self, subset):
        return self._is_connected(subset)

    def neighbors(self, v):
        return self.adj[v]

    def neighbors_of_set(self, subset):
        subset = frozenset(subset)
        out = set()
        for v in subset:
            out |= self.adj[v]
        return frozenset(out - subset)

    @property
    def leaves(self):
        return frozenset(v for v in self.vertices if len(self.adj[v]) == 1)

    def components(self, subset):
        """Connected components of the induced subgraph on ``subset``."""
        subset = set(subset)
        out = []
        while subset:
            v = min(subset)
            comp = {v}
            stack = [v]
            while stack:
                u = stack.pop()
                for w in self.adj[u]:
                    if w in subset and w not in comp:
                        comp.add(w)
                        stack.append(w)
            subset -= comp
            out.append(frozenset(comp))
        return out


class ExtendedTree:
    """A tree plus one fresh companion vertex attached to every leaf.

    Companion labels are deterministic: the leaves in ascending order get
    labels offset, offset+1, ... where offset = max(n, 1 + max label), so a
    0..n-1 labeling reproduces the plain ``n + rank`` rule and arbitrary
    integer labels cannot collide.
    """

    def __init__(self, base):
        self.base = base
        offset = max(len(base.vertices), max(base.vertices) + 1)
        self.companions = {}
        for rank, leaf in enumerate(sorted(base.leaves)):
            self.companions[leaf] = offset + rank
        self.companion_labels = frozenset(self.companions.values())
        self.vertices = base.vertices | self.companion_labels
        adj = {v: set(base.adj[v]) for v in base.vertices}
        for leaf, comp in self.companions.items():
            adj[leaf].add(comp)
            adj[comp] = {leaf}
        self.adj = {v: frozenset(ns) for v, ns in adj.items()}
        assert all(len(self.adj[v]) >= 2 for v in base.vertices)

    def is_companion(self, v):
        return v in self.companion_labels

    def neighbors(self, v):
        return self.adj[v]

    def degree(self, v):
        return len(self.adj[v])

    def neighbors_of_set(self, subset):
        subset = frozenset(subset)
        out = set()
        for v in subset:
            out |= self.adj[v]
        return frozenset(out - subset)

    def path(self, x, y):
        """Vertices on the unique x..y path, endpoints included."""
        prev = {x: None}
        stack = [x]
        while stack:
            v = stack.pop()
            if v == y:
                break
            for w in self.adj[v]:
                if w not in prev:
                    prev[w] = v
                    stack.append(w)
        if y not in prev:
            raise NotConnected('no path between %r and %r' % (x, y))
        out = []
        v = y
        while v is not None:
            out.append(v)
            v = prev[v]
        out.reverse()
        return out

    @property
    def leaves(self):
        return self.companion_labels


# ---------------------------------------------------------------------------
# nested collection validation


def validate_nested_collection(tree, family):
    """Check the nested-collection axioms; returns a ValidationReport.

    Total function: every violated rule is recorded, nothing raises.
    """
    family = [frozenset(s) for s in family]
    violations = []
    seen = set()
    for s in family:
        if s in seen:
            violations.append({'rule': 'duplicate-member', 'sets': [sorted(s)]})
        seen.add(s)
        if not s:
            violations.append({'rule': 'empty-member', 'sets': [sorted(s)]})
            continue
        if not s <= tree.vertices:
            violations.append({'rule': 'not-a-subset', 'sets': [sorted(s)]})
            continue
        if not tree.is_connected_subset(s):
            violations.append({'rule': 'not-connected', 'sets': [sorted(s)]})
    ok_members = [s for s in family if s and s <= tree.vertices
                  and tree.is_connected_subset(s)]
    for i in range(len(ok_members)):
        for j in range(i + 1, len(ok_members)):
            a, b = ok_members[i], ok_members[j]
            if a & b:
                if not (a <= b or b <= a):
                    violations.append({'rule': 'crossing-pair',
                                       'sets': [sorted(a), sorted(b)]})
            elif tree.neighbors_of_set(a) & b:
                # two disjoint adjacent members merge into one component
                violations.append({'rule': 'disjoint-union',
                                   'sets': [sorted(a), sorted(b)]})
    is_nested = not violations
    is_maximal = (is_nested and len(family) == len(tree.vertices)
                  and frozenset().union(*family, frozenset()) == tree.vertices)
    if is_maximal:
        # v -> smallest member containing v must be a bijection onto the family
        minimal = {}
        for v in tree.vertices:
            containing = [s for s in family if v in s]
            smallest = min(containing, key=len)
            assert all(smallest <= s for s in containing)
            minimal[v] = smallest
        is_maximal = len(set(minimal.values())) == len(family)
    return ValidationReport(is_nested, is_maximal, violations)


@dataclass(frozen=True)
class ValidationReport:
    is_nested: bool
    is_maximal: bool
    violations: list

    def to_json(self):
        return {'is_nested': self.is_nested, 'is_maximal': self.is_maximal,
                'violations': self.violations}


# ---------------------------------------------------------------------------
# branch data and context

IN_COLLECTION = 'in_collection'
ROOTED = 'rooted'
WEAKLY_ROOTED = 'weakly_rooted'
NOT_WEAKLY_ROOTED = 'not_weakly_rooted'


@dataclass(frozen=True)
class Classification:
    tag: str
    rooted_portion: frozenset

    @property
    def is_buildable(self):
        return self.tag in (IN_COLLECTION, ROOTED, WEAKLY_ROOTED)


@dataclass(frozen=True)
class BranchData:
    """Per-vertex neighbor chains in the extended tree.

    ``order`` lists the neighbors of v in the extended tree, the r below
    neighbors first (ascending labels, so a_1 is the smallest), then the
    above neighbors ascending.  ``chains[i]`` is the strictly decreasing
    chain of members containing order[i] but not v; empty for i >= r.
    ``peaks[i][j]`` is the order-maximum of chains[i][j].
    """
    v: int
    order: tuple
    r: int
    chains: tuple
    peaks: tuple

    @property
    def p(self):
        return len(self.order)

    def c(self, i):
        """Chain length c_i for the 1-based neighbor index i."""
        return len(self.chains[i - 1])

    def chain(self, i):
        return self.chains[i - 1]

    def chain_set(self, i, j):
        """I^i_j (1-based); the empty-set sentinel for j = c_i + 1."""
        if j == len(self.chains[i - 1]) + 1:
            return frozenset()
        return self.chains[i - 1][j - 1]

    def peak(self, i, j):
        return self.peaks[i - 1][j - 1]


class ClusterContext:
    """A tree with a maximal nested collection and all derived order data."""

    def __init__(self, tree, family):
        report = validate_nested_collection(tree, family)
        if not report.is_maximal:
            raise NotMaximalNested(
                'family is not a maximal nested collection: %r'
                % (report.violations,))
        self.tree = tree
        self.extended = ExtendedTree(tree)
        self.collection = frozenset(frozenset(s) for s in family)
        self.i_of = {}
        for v in tree.vertices:
            self.i_of[v] = min((s for s in self.collection if v in s), key=len)
        self.m_of = {}
        for v, s in self.i_of.items():
            assert s not in self.m_of, 'minimal-set map is not injective'
            self.m_of[s] = v
        self._branch_cache = {}

    # -- order -------------------------------------------------------------

    def less_than(self, u, w):
        """Strict order on extended vertices: u < w iff u lies in I_w,
        with companions above every base vertex."""
        if u == w:
            return False
        u_comp = self.extended.is_companion(u)
        w_comp = self.extended.is_companion(w)
        if w_comp:
            return not u_comp
        if u_comp:
            return False
        return u in self.i_of[w] and u != w

    def covers(self, v):
        """The lower covers of a base vertex: maxima of the components
        of I_v minus v."""
        return frozenset(self.m_max(c)
                         for c in self.tree.components(self.i_of[v] - {v}))

    def m_max(self, subset):
        """Order-maximum of a connected base vertex subset."""
        subset = frozenset(subset)
        if not subset:
            raise NotConnected('empty set has no maximum')
        if not self.tree.is_connected_subset(subset):
            raise NotConnected('%r is not connected' % (sorted(subset),))
        candidates = [v for v in subset
                      if all(u == v or self.less_than(u, v) for u in subset)]
        assert len(candidates) == 1, 'connected sets have a unique maximum'
        return candidates[0]

    def path(self, x, y):
        return self.extended.path(x, y)

    # -- branch data ---------------------------------------------------------

    def branch(self, v, a1=None):
        """Branch data for v; a1 overrides the distinguished below neighbor
        (default: the smallest label, making graphs reproducible)."""
        if (v, a1) in self._branch_cache:
            return self._branch_cache[(v, a1)]
        below, above = [], []
        for a in sorted(self.extended.neighbors(v)):
            if not self.extended.is_companion(a) and self.less_than(a, v):
                below.append(a)
            else:
                above.append(a)
        if a1 is not None:
            if a1 not in below:
                raise ValueError('%r is not a below neighbor of %r' % (a1, v))
            below.remove(a1)
            below.insert(0, a1)
        order = tuple(below + above)
        chains, peaks = [], []
        for a in order:
            if a in below:
                sets = sorted((s for s in self.collection
                               if a in s and v not in s), key=len, reverse=True)
                for big, small in zip(sets, sets[1:]):
                    assert small < big, 'chain members must be strictly nested'
                assert sets and sets[-1] == self.i_of[a]
                chains.append(tuple(sets))
                peaks.append(tuple(self.m_of[s] for s in sets))
            else:
                chains.append(())
                peaks.append(())
        data = BranchData(v, order, len(below), tuple(chains), tuple(peaks))
        self._branch_cache[(v, a1)] = data
        return data

    # -- classification ------------------------------------------------------

    def rooted_portion(self, subset):
        return frozenset(v for v in subset if not self.i_of[v] <= subset)

    def is_rooted(self, subset):
        subset = frozenset(subset)
        if not self.tree.is_connected_subset(subset):
            raise NotConnected('%r is not connected' % (sorted(subset),))
        top = self.m_max(subset)
        for i in subset:
            path_to_top = set(self.extended.path(i, top))
            for j in subset:
                if i == j:
                    continue
                if self.less_than(i, j) != (j in path_to_top):
                    return False
        return True

    def classify_set(self, subset):
        subset = frozenset(subset)
        if not subset:
            raise NotConnected('cannot classify the empty set')
        if not self.tree.is_connected_subset(subset):
            raise NotConnected('%r is not connected' % (sorted(subset),))
        portion = self.rooted_portion(subset)
        if subset in self.collection:
            return Classification(IN_COLLECTION, portion)
        if self.is_rooted(subset):
            return Classification(ROOTED, portion)
        if portion and self.tree.is_connected_subset(portion) \
                and self.is_rooted(portion):
            return Classification(WEAKLY_ROOTED, portion)
        return Classification(NOT_WEAKLY_ROOTED, portion)

    def compatible(self, a, b):
        """True iff {a, b} is again a nested collection."""
        a, b = frozenset(a), frozenset(b)
        for s in (a, b):
            if not self.tree.is_connected_subset(s):
                raise NotConnected('%r is not connected' % (sorted(s),))
        if a & b:
            return a <= b or b <= a
        return not (self.tree.neighbors_of_set(a) & b)

    # -- convenience ---------------------------------------------------------

    def incompatible_members(self, subset):
        """Members of the collection incompatible with ``subset``."""
        subset = frozenset(subset)
        return frozenset(s for s in self.collection
                         if not self.compatible(s, subset))

    def connected_subsets(self):
        """All nonempty connected vertex subsets of the base tree."""
        found = {frozenset((v,)) for v in self.tree.vertices}
        frontier = list(found)
        while frontier:
            s = frontier.pop()
            for w in self.tree.neighbors_of_set(s):
                t = s | {w}
                if t not in found:
                    found.add(t)
                    frontier.append(t)
        return sorted(found, key=lambda s: (len(s), sorted(s)))
