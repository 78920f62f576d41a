"""Exact multivariate Laurent-polynomial and rational-function arithmetic.

Variables are opaque sortable keys.  Two kinds are used in this package:

* ``('Y', (5, 6))`` -- the algebra element attached to the connected vertex
  subset {5, 6}; rendered ``Y[{5,6}]``.  The empty subset is not a variable,
  it is the constant 1 (use :func:`yvar`).
* ``('x', (1, 7))`` -- a formal arc variable of a triangulated polygon;
  rendered ``x[1,7]``.

A polynomial is stored as ``{exps: coeff}`` where ``exps`` is a tuple of
``(variable, exponent)`` pairs sorted by variable and ``coeff`` is a Python
int (arbitrary precision).  Exponents may be negative inside a
:class:`Monomial`; the numerator and denominator of a :class:`RationalExpr`
are kept exponent-nonnegative by normalization.

The normal form of a rational expression is deliberately cheap: numerator
and denominator are reduced by their common monomial content and integer
content, one side is divided out exactly when the other divides it, and the
leading denominator coefficient is made positive.  Full multivariate gcd is
never computed; equality testing cross-multiplies, so unreduced forms are
harmless.
"""

from fractions import Fraction
from math import gcd

from .errors import DivisionByZero

# ---------------------------------------------------------------------------
# variable keys


def yvar_key(subset):
    """Variable key for the set variable attached to ``subset``."""
    return ('Y', tuple(sorted(subset)))


def xvar_key(u, w):
    """Variable key for the formal arc variable of the polygon arc (u, w)."""
    return ('x', tuple(sorted((u, w))))


def render_var(var):
    kind, payload = var
    if kind == 'Y':
        return 'Y[{%s}]' % ','.join(str(e) for e in payload)
    if kind == 'x':
        return 'x[%s]' % ','.join(str(e) for e in payload)
    return repr(var)


# ---------------------------------------------------------------------------
# monomials


def _mul_exps(e1, e2):
    out = dict(e1)
    for v, k in e2:
        out[v] = out.get(v, 0) + k
        if out[v] == 0:
            del out[v]
    return tuple(sorted(out.items()))


class Monomial:
    """A single term ``coeff * prod(var**exp)``; exponents may be negative."""

    __slots__ = ('coeff', 'exps')

    def __init__(self, coeff=1, exps=()):
        self.coeff = coeff
        self.exps = tuple(sorted(dict(exps).items())) if coeff != 0 else ()
        if coeff != 0:
            self.exps = tuple((v, k) for v, k in self.exps if k != 0)

    @classmethod
    def variable(cls, var, power=1):
        return cls(1, ((var, power),))

    def __mul__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        c = self.coeff * other.coeff
        if c == 0:
            return Monomial(0)
        return Monomial(c, _mul_exps(self.exps, other.exps))

    def __eq__(self, other):
        return (isinstance(other, Monomial) and self.coeff == other.coeff
                and self.exps == other.exps)

    def __hash__(self):
        return hash((self.coeff, self.exps))

    def is_squarefree(self):
        return all(k == 1 for _, k in self.exps)

    def variables(self):
        return {v for v, _ in self.exps}

    def __str__(self):
        return _render_term(self.coeff, self.exps) or '1'

    __repr__ = __str__


def _render_term(coeff, exps):
    parts = []
    if coeff != 1 or not exps:
        parts.append(str(coeff))
    for v, k in exps:
        parts.append(render_var(v) if k == 1 else '%s^%d' % (render_var(v), k))
    return '*'.join(parts)


# ---------------------------------------------------------------------------
# polynomials


class Poly:
    """Sparse polynomial with integer coefficients.

    ``terms`` maps a sorted exponent tuple to a nonzero int.  Construction
    through the module helpers keeps the dict canonical, so structural
    equality of ``terms`` is polynomial equality.
    """

    __slots__ = ('terms',)

    def __init__(self, terms=None):
        self.terms = dict(terms) if terms else {}

    @classmethod
    def const(cls, c):
        return cls({(): c} if c else None)

    @classmethod
    def variable(cls, var, power=1):
        return cls({((var, power),): 1})

    @classmethod
    def from_monomial(cls, mono):
        if mono.coeff == 0:
            return cls()
        return cls({mono.exps: mono.coeff})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly(out)

    def __neg__(self):
        return Poly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return Poly()
            return Poly({e: c * other for e, c in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _mul_exps(e1, e2)
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        assert isinstance(k, int) and k >= 0
        result = Poly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def variables(self):
        out = set()
        for e in self.terms:
            out.update(v for v, _ in e)
        return out

    def leading(self):
        """Largest exponent tuple in the canonical term order."""
        return max(self.terms) if self.terms else ()

    def leading_coeff(self):
        return self.terms[self.leading()] if self.terms else 0

    def monomial_content(self):
        """Per-variable minimum exponent over all terms (0 if absent)."""
        if not self.terms:
            return {}
        content = None
        for e in self.terms:
            d = dict(e)
            if content is None:
                content = dict(d)
                continue
            for v in list(content):
                content[v] = min(content[v], d.get(v, 0))
            for v in d:
                if v not in content:
                    content[v] = min(0, d[v])
        return {v: k for v, k in content.items() if k != 0}

    def int_content(self):
        g = 0
        for c in self.terms.values():
            g = gcd(g, abs(c))
        return g

    def shift(self, exps):
        """Multiply by the (Laurent) monomial with exponent dict ``exps``."""
        shift = tuple(sorted(exps.items()))
        return Poly({_mul_exps(e, shift): c for e, c in self.terms.items()})

    def div_exact(self, divisor):
        """Return ``self / divisor`` if the division is exact, else None.

        Single-divisor multivariate division under the graded-lex order
        (a genuine monomial order, so the remainder's leading term drops
        strictly and the loop terminates).
        """
        if divisor.is_zero():
            raise DivisionByZero('polynomial division by zero')
        if self.is_zero():
            return Poly()
        var_order = sorted(self.variables() | divisor.variables())
        pos = {v: i for i, v in enumerate(var_order)}

        def grlex(exps):
            vec = [0] * len(var_order)
            for v, k in exps:
                vec[pos[v]] = k
            return (sum(vec), tuple(vec))

        rem = Poly(self.terms)
        quo = {}
        lead_d = max(divisor.terms, key=grlex)
        lead_dc = divisor.terms[lead_d]
        dd = dict(lead_d)
        while not rem.is_zero():
            lead_r = max(rem.terms, key=grlex)
            c = rem.terms[lead_r]
            if c % lead_dc != 0:
                return None
            rd = dict(lead_r)
            q = {v: rd.get(v, 0) - k for v, k in dd.items()}
            q.update({v: k for v, k in rd.items() if v not in dd})
            q = {v: k for v, k in q.items() if k != 0}
            if any(k < 0 for k in q.values()):
                return None
            qe = tuple(sorted(q.items()))
            qc = c // lead_dc
            quo[qe] = qc
            rem = rem - Poly({qe: qc}) * divisor
        return Poly(quo)

    def eval(self, point):
        """Evaluate at ``point`` (variable -> Fraction); exact."""
        total = Fraction(0)
        for e, c in self.terms.items():
            val = Fraction(c)
            for v, k in e:
                val *= point[v] ** k
            total += val
        return total

    def subs(self, bindings):
        """Substitute variables by RationalExpr values; returns RationalExpr."""
        total = RationalExpr.zero()
        for e, c in self.terms.items():
            term = RationalExpr.from_int(c)
            for v, k in e:
                assert k >= 0, 'substitution needs nonnegative exponents'
                base = bindings.get(v)
                if base is None:
                    base = RationalExpr(Poly.variable(v), Poly.const(1))
                for _ in range(k):
                    term = term * base
            total = total + term
        return total

    def sorted_terms(self):
        return sorted(self.terms.items(), reverse=True)

    def __str__(self):
        if not self.terms:
            return '0'
        parts = []
        for e, c in self.sorted_terms():
            body = _render_term(abs(c), e) or '1'
            if not parts:
                parts.append(body if c > 0 else '-' + body)
            else:
                parts.append(('+ ' if c > 0 else '- ') + body)
        return ' '.join(parts)

    __repr__ = __str__


# ---------------------------------------------------------------------------
# rational expressions


class RationalExpr:
    """Exact ratio of two polynomials, kept in the cheap normal form."""

    __slots__ = ('num', 'den')

    def __init__(self, num, den=None, normalize=True):
        if den is None:
            den = Poly.const(1)
        if den.is_zero():
            raise DivisionByZero('zero denominator')
        self.num = num
        self.den = den
        if normalize:
            self._normalize()

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls):
        return cls(Poly(), Poly.const(1), normalize=False)

    @classmethod
    def from_int(cls, c):
        return cls(Poly.const(c), Poly.const(1), normalize=False)

    @classmethod
    def from_monomial(cls, mono):
        num = {v: k for v, k in mono.exps if k > 0}
        den = {v: -k for v, k in mono.exps if k < 0}
        return cls(Poly({tuple(sorted(num.items())): mono.coeff}) if mono.coeff else Poly(),
                   Poly({tuple(sorted(den.items())): 1}))

    # -- normal form -------------------------------------------------------

    def _normalize(self):
        num, den = self.num, self.den
        if num.is_zero():
            self.num, self.den = Poly(), Poly.const(1)
            return
        # clear negative exponents (Laurent input) and common monomial content
        content_n = num.monomial_content()
        content_d = den.monomial_content()
        shift = {}
        for v in set(content_n) | set(content_d):
            m = min(content_n.get(v, 0), content_d.get(v, 0))
            if m != 0:
                shift[v] = -m
        if shift:
            num = num.shift(shift)
            den = den.shift(shift)
        g = gcd(num.int_content(), den.int_content())
        if g > 1:
            num = Poly({e: c // g for e, c in num.terms.items()})
            den = Poly({e: c // g for e, c in den.terms.items()})
        # exact cancellation when one side divides the other; after content
        # reduction a single-term side can only divide via a unit, so only
        # multi-term against multi-term is worth attempting
        if len(den.terms) > 1 and len(num.terms) > 1:
            q = num.div_exact(den)
            if q is not None:
                num, den = q, Poly.const(1)
            else:
                q = den.div_exact(num)
                if q is not None:
                    num, den = Poly.const(1), q
        elif den.terms == {(): -1}:
            num, den = -num, Poly.const(1)
        if den.leading_coeff() < 0:
            num, den = -num, -den
        self.num, self.den = num, den

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        return RationalExpr(self.num * other.den + other.num * self.den,
                            self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalExpr(-self.num, self.den, normalize=False)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        return RationalExpr(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other.num.is_zero():
            raise DivisionByZero('division by the zero expression')
        return RationalExpr(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __pow__(self, k):
        assert isinstance(k, int)
        if k < 0:
            return RationalExpr(self.den, self.num) ** (-k)
        return RationalExpr(self.num ** k, self.den ** k)

    def is_zero(self):
        return self.num.is_zero()

    def __eq__(self, other):
        """Structural equality of normal forms (use rf_equal for semantics)."""
        if not isinstance(other, (RationalExpr, int)):
            return NotImplemented
        other = _coerce(other)
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def variables(self):
        return self.num.variables() | self.den.variables()

    def subs(self, bindings):
        """Exact substitution ``variable -> RationalExpr``, renormalized."""
        bound = {k: _coerce(v) for k, v in bindings.items()}
        return self.num.subs(bound) / self.den.subs(bound)

    def eval(self, point):
        d = self.den.eval(point)
        if d == 0:
            raise DivisionByZero('denominator vanishes at sample point')
        return self.num.eval(point) / d

    def __str__(self):
        if self.den.terms == {(): 1}:
            return str(self.num)
        num = str(self.num)
        if len(self.num.terms) > 1:
            num = '(%s)' % num
        den = str(self.den)
        if len(self.den.terms) > 1:
            den = '(%s)' % den
        return '%s / %s' % (num, den)

    __repr__ = __str__


def _coerce(value):
    if isinstance(value, RationalExpr):
        return value
    if isinstance(value, int):
        return RationalExpr.from_int(value)
    if isinstance(value, Monomial):
        return RationalExpr.from_monomial(value)
    if isinstance(value, Poly):
        return RationalExpr(value)
    raise TypeError('cannot coerce %r' % (value,))


def yvar(subset):
    """The set variable Y_subset as a RationalExpr; Y of the empty set is 1."""
    subset = tuple(sorted(subset))
    if not subset:
        return RationalExpr.from_int(1)
    return RationalExpr(Poly.variable(yvar_key(subset)), normalize=False)


def xvar(u, w):
    return RationalExpr(Poly.variable(xvar_key(u, w)), normalize=False)


# ---------------------------------------------------------------------------
# equality


def _sample_points(variables, round_no):
    # deterministic pseudo-random rationals, nonzero, distinct across rounds
    pts = {}
    for i, v in enumerate(sorted(variables)):
        a = (round_no * 7919 + i * 104729 + 12345) % 30011 + 2
        b = (round_no * 15485863 + i * 32452843 + 7) % 1009 + 1
        pts[v] = Fraction(a, b)
    return pts

SCHWARTZ_ZIPPEL_ROUNDS = 3


def rf_equal(a, b):
    """Exact equality of rational expressions.

    Fast path: evaluate both sides at a few fixed pseudo-random rational
    points; a disagreement settles the answer.  Agreement is confirmed by
    exact cross-multiplication, so the result is never probabilistic.
    """
    a = _coerce(a)
    b = _coerce(b)
    variables = a.variables() | b.variables()
    round_no = 0
    checked = 0
    while checked < SCHWARTZ_ZIPPEL_ROUNDS and round_no < 50:
        pts = _sample_points(variables, round_no)
        round_no += 1
        try:
            va = a.eval(pts)
            vb = b.eval(pts)
        except DivisionByZero:
            continue
        if va != vb:
            return False
        checked += 1
    return (a.num * b.den) == (b.num * a.den)
