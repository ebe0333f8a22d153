"""Sparse multivariate polynomials over Q with named variables.

A polynomial is a dict mapping exponent tuples to nonzero rational
coefficients, attached to a ring context (ordered variable names plus a
monomial order).  Polynomials from different contexts never combine.

Exponent tuples are dense (one slot per ring variable) so they hash and
compare as plain tuples; the zero-exponent-free "sparse map" view of a
monomial is available through :func:`monomial_exponent_map`.  Order
comparisons are encoded as tuple keys so ``max(terms, key=ring.sort_key)``
picks the leading monomial.
"""

import re

from .scalars import QQ, format_rational, rational

LEX = "lex"
GRLEX = "grlex"
GREVLEX = "grevlex"
_ORDER_KINDS = (LEX, GRLEX, GREVLEX)


class ContextMismatchError(ValueError):
    """Raised when polynomials from different ring contexts are combined."""


class MonomialOrder:
    """A monomial order: lex, grlex or grevlex, with a variable priority.

    ``priority`` is a permutation of variable indices listed from most to
    least significant; identity when omitted.  All three orders are total,
    multiplicative and have 1 as their minimum.
    """

    __slots__ = ("kind", "priority")

    def __init__(self, kind=GREVLEX, priority=None):
        if kind not in _ORDER_KINDS:
            raise ValueError("unknown monomial order %r" % (kind,))
        self.kind = kind
        self.priority = None if priority is None else tuple(priority)

    def key_function(self, nvars):
        """Return a function mapping exponent tuples to sortable keys."""
        prio = self.priority
        if prio is not None and sorted(prio) != list(range(nvars)):
            raise ValueError("priority must be a permutation of 0..%d" % (nvars - 1))
        kind = self.kind
        if kind == LEX:
            if prio is None:
                return lambda e: e
            return lambda e: tuple(e[i] for i in prio)
        if kind == GRLEX:
            if prio is None:
                return lambda e: (sum(e),) + e
            return lambda e: (sum(e),) + tuple(e[i] for i in prio)
        # grevlex: total degree first, ties broken by the *smallest* trailing
        # exponent, i.e. reversed-negated comparison.
        if prio is None:
            return lambda e: (sum(e),) + tuple(-x for x in reversed(e))
        rev = tuple(reversed(prio))
        return lambda e: (sum(e),) + tuple(-e[i] for i in rev)

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and self.kind == other.kind
            and self.priority == other.priority
        )

    def __hash__(self):
        return hash((self.kind, self.priority))

    def __repr__(self):
        if self.priority is None:
            return "MonomialOrder(%r)" % (self.kind,)
        return "MonomialOrder(%r, priority=%r)" % (self.kind, self.priority)


class PolynomialRing:
    """Ring context Q[names] with a fixed monomial order."""

    __slots__ = ("names", "order", "nvars", "sort_key", "_index")

    def __init__(self, names, order=None):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        self.order = order if order is not None else MonomialOrder(GREVLEX)
        self.nvars = len(self.names)
        self.sort_key = self.order.key_function(self.nvars)
        self._index = {name: i for i, name in enumerate(self.names)}

    def __eq__(self, other):
        return (
            isinstance(other, PolynomialRing)
            and self.names == other.names
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.names, self.order))

    def __repr__(self):
        return "PolynomialRing(%s; %s)" % (", ".join(self.names), self.order.kind)

    def index(self, name):
        return self._index[name]

    def with_order(self, order):
        return PolynomialRing(self.names, order)

    # -- constructors ------------------------------------------------------

    def zero(self):
        return SparsePolynomial(self, {})

    def one(self):
        return self.constant(1)

    def constant(self, c):
        c = QQ(c)
        if c == 0:
            return self.zero()
        return SparsePolynomial(self, {(0,) * self.nvars: c})

    def variable(self, i):
        if isinstance(i, str):
            i = self._index[i]
        e = [0] * self.nvars
        e[i] = 1
        return SparsePolynomial(self, {tuple(e): QQ(1)})

    def variables(self):
        return [self.variable(i) for i in range(self.nvars)]

    def monomial(self, exponents, coeff=1):
        exponents = tuple(exponents)
        if len(exponents) != self.nvars:
            raise ValueError("exponent tuple has wrong length")
        c = QQ(coeff)
        if c == 0:
            return self.zero()
        return SparsePolynomial(self, {exponents: c})

    def from_terms(self, terms):
        """Build a polynomial from an iterable of (exponent tuple, coeff)."""
        acc = {}
        for e, c in terms:
            e = tuple(e)
            c = acc.get(e, QQ(0)) + QQ(c)
            if c == 0:
                acc.pop(e, None)
            else:
                acc[e] = c
        return SparsePolynomial(self, acc)

    def parse(self, text):
        return parse_polynomial(self, text)


def _check_context(a, b):
    if a.ring is not b.ring and a.ring != b.ring:
        raise ContextMismatchError(
            "polynomials live in different ring contexts: %r vs %r" % (a.ring, b.ring)
        )


class SparsePolynomial:
    """Immutable sparse polynomial: {exponent tuple: nonzero coefficient}."""

    __slots__ = ("ring", "terms", "_lead")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms
        self._lead = None

    # -- basic queries -----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        if not self.terms:
            return True
        zero = (0,) * self.ring.nvars
        return len(self.terms) == 1 and zero in self.terms

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        if not self.terms:
            return QQ(0)
        return next(iter(self.terms.values()))

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def lead_monomial(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        if self._lead is None:
            self._lead = max(self.terms, key=self.ring.sort_key)
        return self._lead

    def lead_coeff(self):
        return self.terms[self.lead_monomial()]

    def sorted_terms(self):
        """Terms in decreasing monomial order."""
        key = self.ring.sort_key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def coefficient(self, exponents):
        return self.terms.get(tuple(exponents), QQ(0))

    def monic(self):
        if not self.terms:
            return self
        lc = self.lead_coeff()
        if lc == 1:
            return self
        return SparsePolynomial(self.ring, {e: c / lc for e, c in self.terms.items()})

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, SparsePolynomial):
            other = self.ring.constant(other)
        _check_context(self, other)
        big, small = (self.terms, other.terms)
        if len(big) < len(small):
            big, small = small, big
        out = dict(big)
        for e, c in small.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s == 0:
                    del out[e]
                else:
                    out[e] = s
        return SparsePolynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return SparsePolynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, SparsePolynomial):
            other = self.ring.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, SparsePolynomial):
            c = QQ(other)
            if c == 0:
                return self.ring.zero()
            return SparsePolynomial(self.ring, {e: c * v for e, v in self.terms.items()})
        _check_context(self, other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(map(int.__add__, ea, eb))
                s = out.get(e)
                if s is None:
                    out[e] = ca * cb
                else:
                    s = s + ca * cb
                    if s == 0:
                        del out[e]
                    else:
                        out[e] = s
        return SparsePolynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        """Exact division; raises ValueError when the quotient is not exact."""
        if not isinstance(other, SparsePolynomial):
            c = QQ(other)
            if c == 0:
                raise ZeroDivisionError("division by zero")
            return SparsePolynomial(self.ring, {e: v / c for e, v in self.terms.items()})
        _check_context(self, other)
        q, r = divmod_polynomial(self, other)
        if not r.is_zero():
            raise ValueError("inexact polynomial division")
        return q

    def __eq__(self, other):
        if isinstance(other, SparsePolynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int,)) or type(other) is type(QQ(0)):
            return self.terms == self.ring.constant(other).terms
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- structure ----------------------------------------------------------

    def map_exponents(self, index_map):
        """Send variable i to variable index_map[i]; exponents of merged
        variables add.  Used for relabeling actions like x_s -> y_{w(s)}."""
        out = {}
        n = self.ring.nvars
        for e, c in self.terms.items():
            new = [0] * n
            for i, exp in enumerate(e):
                if exp:
                    new[index_map[i]] += exp
            key = tuple(new)
            s = out.get(key)
            if s is None:
                out[key] = c
            else:
                s = s + c
                if s == 0:
                    del out[key]
                else:
                    out[key] = s
        return SparsePolynomial(self.ring, out)

    def convert_to(self, ring):
        """Reinterpret in another ring context by matching variable names."""
        if ring == self.ring:
            return self
        index_map = [ring.index(name) for name in self.ring.names]
        out = {}
        for e, c in self.terms.items():
            new = [0] * ring.nvars
            for i, exp in enumerate(e):
                if exp:
                    new[index_map[i]] = exp
            out[tuple(new)] = c
        return SparsePolynomial(ring, out)

    def weighted_degree(self, weights):
        if not self.terms:
            return -1
        return max(sum(w * x for w, x in zip(weights, e)) for e in self.terms)

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def __repr__(self):
        return "SparsePolynomial(%s)" % (poly_to_string(self),)

    def __str__(self):
        return poly_to_string(self)


# -- monomial helpers -------------------------------------------------------

def monomial_mul(a, b):
    return tuple(map(int.__add__, a, b))


def monomial_divides(a, b):
    """True when monomial a divides monomial b."""
    return all(x <= y for x, y in zip(a, b))


def monomial_div(b, a):
    return tuple(map(int.__sub__, b, a))


def monomial_lcm(a, b):
    return tuple(map(max, a, b))


def monomial_gcd(a, b):
    return tuple(map(min, a, b))


def monomial_exponent_map(e):
    """Sparse view of an exponent tuple: {variable index: nonzero exponent}."""
    return {i: x for i, x in enumerate(e) if x}


def monomial_to_string(ring, e, lead_coeff=None):
    factors = []
    for i, exp in enumerate(e):
        if exp == 0:
            continue
        if exp == 1:
            factors.append(ring.names[i])
        else:
            factors.append("%s^%d" % (ring.names[i], exp))
    return "*".join(factors) if factors else "1"


# -- division ---------------------------------------------------------------

def divmod_polynomial(f, g):
    """Single-divisor polynomial division: f = q*g + r with no term of r
    divisible by the leading monomial of g."""
    _check_context(f, g)
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    ring = f.ring
    key = ring.sort_key
    lm_g = g.lead_monomial()
    lc_g = g.terms[lm_g]
    work = dict(f.terms)
    quotient = {}
    remainder = {}
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        if monomial_divides(lm_g, m):
            u = monomial_div(m, lm_g)
            factor = c / lc_g
            quotient[u] = quotient.get(u, QQ(0)) + factor
            for eg, cg in g.terms.items():
                if eg == lm_g:
                    continue
                e = monomial_mul(u, eg)
                s = work.get(e, QQ(0)) - factor * cg
                if s == 0:
                    work.pop(e, None)
                else:
                    work[e] = s
        else:
            remainder[m] = c
    quotient = {e: c for e, c in quotient.items() if c != 0}
    return SparsePolynomial(ring, quotient), SparsePolynomial(ring, remainder)


# -- elementary symmetric polynomials ----------------------------------------

def elementary_symmetric(ring, k, variables=None):
    """k-th elementary symmetric polynomial in the given variables.

    ``variables`` is a list of variable indices or names; all ring variables
    when omitted.  e_0 = 1 by the empty-product convention.
    """
    if variables is None:
        idx = list(range(ring.nvars))
    else:
        idx = [ring.index(v) if isinstance(v, str) else v for v in variables]
    if k < 0 or k > len(idx):
        raise ValueError("need 0 <= k <= number of variables, got k=%d" % k)
    # coefficient of t^k in prod (1 + x_i t), accumulated layer by layer
    layers = [ring.one()] + [ring.zero()] * k
    for i in idx:
        x = ring.variable(i)
        for j in range(k, 0, -1):
            layers[j] = layers[j] + x * layers[j - 1]
    return layers[k]


# -- text grammar -------------------------------------------------------------
#
# terms joined by + / -; a term is an optional rational coefficient ('a' or
# 'a/b') followed by '*'-separated 'var^exp' factors.  parse(print(f)) == f
# bit-exactly.

_TOKEN = re.compile(
    r"\s*(?:(?P<number>\d+(?:/\d+)?)|(?P<name>[A-Za-z][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*^()]))"
)


def _tokenize(text):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ValueError("bad character in polynomial at %r" % (text[pos:pos + 10],))
        pos = m.end()
        if m.group("number") is not None:
            tokens.append(("num", m.group("number")))
        elif m.group("name") is not None:
            tokens.append(("name", m.group("name")))
        else:
            tokens.append(("op", m.group("op")))
    return tokens


def parse_polynomial(ring, text):
    """Parse the textual polynomial grammar into a SparsePolynomial."""
    tokens = _tokenize(text)
    if not tokens:
        raise ValueError("empty polynomial text")
    result = ring.zero()
    i = 0
    n = len(tokens)
    while i < n:
        sign = QQ(1)
        while i < n and tokens[i] in (("op", "-"), ("op", "+")):
            if tokens[i] == ("op", "-"):
                sign = -sign
            i += 1
        if i >= n:
            raise ValueError("dangling sign in polynomial text")
        coeff = sign
        exps = [0] * ring.nvars
        saw_factor = False
        expect_factor = True
        while i < n:
            kind, value = tokens[i]
            if kind == "num" and expect_factor:
                coeff = coeff * rational(value)
                i += 1
                saw_factor = True
            elif kind == "name" and expect_factor:
                try:
                    vi = ring.index(value)
                except KeyError:
                    raise ValueError("unknown variable %r" % (value,)) from None
                exp = 1
                i += 1
                if i < n and tokens[i] == ("op", "^"):
                    i += 1
                    if i >= n or tokens[i][0] != "num" or "/" in tokens[i][1]:
                        raise ValueError("exponent must be a nonnegative integer")
                    exp = int(tokens[i][1])
                    i += 1
                exps[vi] += exp
                saw_factor = True
            elif kind == "op" and value == "*":
                i += 1
                expect_factor = True
                continue
            else:
                break
            expect_factor = False
        if not saw_factor:
            raise ValueError("empty term in polynomial text")
        result = result + ring.monomial(tuple(exps), coeff)
    return result


def poly_to_string(f):
    """Canonical printer: terms in decreasing order, '^' exponents, 'a/b'
    coefficients.  Round-trips bit-exactly through parse_polynomial."""
    if f.is_zero():
        return "0"
    ring = f.ring
    pieces = []
    for e, c in f.sorted_terms():
        mono = monomial_to_string(ring, e)
        if mono == "1":
            body = format_rational(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = "%s*%s" % (format_rational(abs(c)), mono)
        if not pieces:
            pieces.append(body if c > 0 else "-" + body)
        else:
            pieces.append(("+ " if c > 0 else "- ") + body)
    return " ".join(pieces)


# -- multivariate gcd ----------------------------------------------------------

def _coeff_gcd_poly(polys):
    """gcd of a list of polynomials (fold of poly_gcd)."""
    g = None
    for p in polys:
        g = p if g is None else poly_gcd(g, p)
        if g.is_constant() and not g.is_zero():
            return g.ring.one()
    return g


def _to_univariate(f, var):
    """View f as a univariate polynomial in variable ``var`` with
    SparsePolynomial coefficients (in the same ring, var removed)."""
    ring = f.ring
    coeffs = {}
    for e, c in f.terms.items():
        d = e[var]
        rest = list(e)
        rest[var] = 0
        key = tuple(rest)
        bucket = coeffs.setdefault(d, {})
        bucket[key] = bucket.get(key, QQ(0)) + c
    return {
        d: SparsePolynomial(ring, {e: c for e, c in bucket.items() if c != 0})
        for d, bucket in coeffs.items()
    }


def _from_univariate(ring, var, coeffs):
    out = {}
    for d, poly in coeffs.items():
        for e, c in poly.terms.items():
            ee = list(e)
            ee[var] += d
            out[tuple(ee)] = c
    return SparsePolynomial(ring, out)


def _uni_degree(coeffs):
    return max((d for d, p in coeffs.items() if not p.is_zero()), default=-1)


def _uni_prem(a, b, var_ring):
    """Pseudo-remainder of univariate-with-polynomial-coefficient dicts."""
    db = _uni_degree(b)
    lb = b[db]
    r = {d: p for d, p in a.items() if not p.is_zero()}
    while True:
        dr = _uni_degree(r)
        if dr < db:
            return r
        lr = r[dr]
        shift = dr - db
        new = {}
        for d, p in r.items():
            if d == dr:
                continue
            new[d] = p * lb
        for d, p in b.items():
            if d == db:
                continue
            e = d + shift
            q = new.get(e, var_ring.zero()) - p * lr
            new[e] = q
        r = {d: p for d, p in new.items() if not p.is_zero()}


def poly_gcd(f, g):
    """Monic gcd of two polynomials over Q (primitive PRS recursion)."""
    _check_context(f, g)
    ring = f.ring
    if f.is_zero():
        return g.monic() if not g.is_zero() else ring.zero()
    if g.is_zero():
        return f.monic()
    # pull out monomial content
    mf = tuple(map(min, *f.terms)) if len(f.terms) > 1 else next(iter(f.terms))
    mg = tuple(map(min, *g.terms)) if len(g.terms) > 1 else next(iter(g.terms))
    common = monomial_gcd(mf, mg)
    f = SparsePolynomial(ring, {monomial_div(e, mf): c for e, c in f.terms.items()})
    g = SparsePolynomial(ring, {monomial_div(e, mg): c for e, c in g.terms.items()})
    mono = ring.monomial(common)
    if len(f.terms) == 1 or len(g.terms) == 1:
        return mono.monic()
    core = _gcd_core(f, g)
    return (mono * core).monic()


def _gcd_core(f, g):
    ring = f.ring
    if f.is_constant() or g.is_constant():
        return ring.one()
    # main variable: last variable occurring in both supports
    support_f = set()
    support_g = set()
    for e in f.terms:
        support_f.update(i for i, x in enumerate(e) if x)
    for e in g.terms:
        support_g.update(i for i, x in enumerate(e) if x)
    both = sorted(support_f & support_g)
    if not both:
        return ring.one()
    var = both[-1]
    uf = _to_univariate(f, var)
    ug = _to_univariate(g, var)
    cf = _coeff_gcd_poly(list(uf.values()))
    cg = _coeff_gcd_poly(list(ug.values()))
    ppf = {d: p / cf for d, p in uf.items()}
    ppg = {d: p / cg for d, p in ug.items()}
    content = poly_gcd(cf, cg)
    a, b = ppf, ppg
    if _uni_degree(a) < _uni_degree(b):
        a, b = b, a
    while True:
        r = _uni_prem(a, b, ring)
        if not r:
            break
        cr = _coeff_gcd_poly(list(r.values()))
        r = {d: p / cr for d, p in r.items()}
        a, b = b, r
        if _uni_degree(b) == 0:
            return content
    gg = _from_univariate(ring, var, b)
    # primitive part in var
    cg2 = _coeff_gcd_poly(list(b.values()))
    if not (cg2.is_constant()):
        gg = _from_univariate(ring, var, {d: p / cg2 for d, p in b.items()})
    return (content * gg).monic()
