"""Mutation-formula oracle for the set variables, independent of snake graphs.

Three closed forms drive everything:

* the branch products A^i_j: for depth j below the chain bottom, the
  product of the sibling subtree variables at the peak times the square of
  the variable of (next chain set) minus the v-to-peak path; at the bottom,
  the product over all covers of the chain end;
* the singleton formula Y_v = Z(v) + sum A^i_j / (Y at depth j times Y at
  depth j+1) with Z(v) = Y_{I_v} over the product of the depth-1 chain
  variables;
* the adjoin formula for J_m = {v} plus the depth-m_i chain sets, which
  truncates the double sum at m_i and multiplies by the chain variables.

Larger sets reduce by peeling a leaf w of the induced subtree with
neighbor u:  Y_S * Y_w = Y_{S union w} + Y_{S minus u}, memoized per
context.  Everything is expressed in the cluster variables alone: any set
variable outside the collection is expanded recursively (well-founded
because such sets sit strictly below the vertex that produced them).

The only shared dependencies are the tree/order layer and exact
arithmetic; snake graphs are never consulted, which is what makes
verify_expansion a real check.
"""

from dataclasses import dataclass

from .errors import EmptySet, IndexOutOfRange, NotWeaklyRooted
from .symbolic import RationalExpr, rf_equal, yvar, yvar_key
from . import matchings, snakegraph


class OracleCache:
    """Per-context memo of fully reduced set-variable expressions."""

    def __init__(self, ctx):
        self.ctx = ctx
        self.memo = {}

    # -- building blocks -----------------------------------------------------

    def cluster_var(self, member):
        assert member in self.ctx.collection
        return yvar(member)

    def a_term(self, v, i, j, raw=False):
        """The branch product A^i_j (1-based i, j).

        With ``raw`` the factors stay as literal set variables; otherwise
        every factor outside the collection is expanded recursively.
        """
        ctx = self.ctx
        bd = ctx.branch(v)
        if not 1 <= i <= bd.r:
            raise IndexOutOfRange('branch index %r out of 1..%d' % (i, bd.r))
        if not 1 <= j <= bd.c(i):
            raise IndexOutOfRange('depth %r out of 1..%d' % (j, bd.c(i)))
        peak = bd.peak(i, j)
        if j == bd.c(i):
            term = RationalExpr.from_int(1)
            for z in sorted(ctx.covers(peak)):
                term = term * yvar(ctx.i_of[z])
            return term
        nxt_peak = bd.peak(i, j + 1)
        term = RationalExpr.from_int(1)
        for z in sorted(ctx.covers(peak) - {nxt_peak}):
            term = term * yvar(ctx.i_of[z])
        leftover = bd.chain_set(i, j + 1) - set(ctx.path(v, peak))
        square = RationalExpr.from_int(1)
        for comp in ctx.tree.components(leftover):
            factor = yvar(comp) if raw else self.y_set(comp)
            square = square * factor
        return term * square * square

    def z_term(self, v):
        """Z(v): the minimal containing set over its cover variables."""
        ctx = self.ctx
        expr = yvar(ctx.i_of[v])
        for z in sorted(ctx.covers(v)):
            expr = expr / yvar(ctx.i_of[z])
        return expr

    # -- the closed forms ------------------------------------------------------

    def y_singleton(self, v):
        ctx = self.ctx
        if frozenset((v,)) in ctx.collection:
            return yvar((v,))
        bd = ctx.branch(v)
        total = self.z_term(v)
        for i in range(1, bd.r + 1):
            for j in range(1, bd.c(i) + 1):
                denom = yvar(bd.chain_set(i, j)) * yvar(bd.chain_set(i, j + 1))
                total = total + self.a_term(v, i, j) / denom
        return total

    def y_jm(self, v, m):
        """The adjoin formula for {v} plus the depth-m_i chain sets."""
        ctx = self.ctx
        bd = ctx.branch(v)
        m = tuple(m)
        if len(m) != bd.r:
            raise IndexOutOfRange('need %d depths, got %d' % (bd.r, len(m)))
        for i, mi in enumerate(m, start=1):
            if not 1 <= mi <= bd.c(i) + 1:
                raise IndexOutOfRange('depth %r out of 1..%d' % (mi, bd.c(i) + 1))
        lead = yvar(ctx.i_of[v])
        for i in range(1, bd.r + 1):
            lead = lead / yvar(bd.chain_set(i, 1))
        total = lead
        for i in range(1, bd.r + 1):
            for j in range(1, m[i - 1]):
                denom = yvar(bd.chain_set(i, j)) * yvar(bd.chain_set(i, j + 1))
                total = total + self.a_term(v, i, j) / denom
        prefix = RationalExpr.from_int(1)
        for i in range(1, bd.r + 1):
            prefix = prefix * yvar(bd.chain_set(i, m[i - 1]))
        return prefix * total

    # -- general sets ------------------------------------------------------------

    def y_set(self, subset):
        """The set variable of any nonempty subset, in cluster variables.

        Disconnected sets factor over components; members of the collection
        are atoms; singletons use the closed form; anything else peels the
        largest-labeled leaf of the induced subtree.
        """
        subset = frozenset(subset)
        if not subset:
            raise EmptySet('the empty set is the constant 1, not a variable')
        return self._y(subset)

    def _y(self, subset):
        if not subset:
            return RationalExpr.from_int(1)
        if subset in self.memo:
            return self.memo[subset]
        ctx = self.ctx
        comps = ctx.tree.components(subset)
        if len(comps) > 1:
            expr = RationalExpr.from_int(1)
            for comp in comps:
                expr = expr * self._y(comp)
        elif subset in ctx.collection:
            expr = yvar(subset)
        elif len(subset) == 1:
            expr = self.y_singleton(next(iter(subset)))
        else:
            leaves = [v for v in subset
                      if len(ctx.tree.neighbors(v) & subset) == 1]
            v = max(leaves)
            (w,) = ctx.tree.neighbors(v) & subset
            expr = self._y(subset - {v}) * self._y(frozenset((v,))) \
                - self._y(subset - {v, w})
        self.memo[subset] = expr
        return expr

    # -- verification --------------------------------------------------------------

    def expand_off_cluster(self, expr):
        """Replace every set variable outside the collection recursively."""
        while True:
            bindings = {}
            for var in sorted(expr.variables()):
                kind, payload = var
                assert kind == 'Y'
                member = frozenset(payload)
                if member not in self.ctx.collection:
                    bindings[var] = self._y(member)
            if not bindings:
                return expr
            expr = expr.subs(bindings)

    def verify_expansion(self, target_set):
        """chi of the snake graph against the oracle value; exact."""
        target_set = frozenset(target_set)
        cls = self.ctx.classify_set(target_set)
        if not cls.is_buildable:
            raise NotWeaklyRooted('%r is not weakly rooted'
                                  % sorted(target_set))
        graph = snakegraph.build_snake_graph(self.ctx, target_set)
        lhs = self.expand_off_cluster(matchings.chi(graph))
        rhs = self._y(target_set)
        return VerificationResult(rf_equal(lhs, rhs), target_set, lhs, rhs)


@dataclass(frozen=True)
class VerificationResult:
    ok: bool
    target_set: frozenset
    expansion: RationalExpr
    oracle_value: RationalExpr

    def __bool__(self):
        return self.ok
