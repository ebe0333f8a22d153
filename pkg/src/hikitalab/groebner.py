"""Buchberger engine: reduced Groebner bases, normal forms, quotient data.

The engine works on raw term dicts keyed by packed-integer monomials (see
:mod:`hikitalab.packed`): integer comparison is the monomial order, so the
leading monomial of a dict is ``max(dict)`` and heaps of negated keys pop
terms in decreasing order.  Basis elements are kept monic.  Pair management
uses the Gebauer-Moeller refinements of Buchberger's coprime and chain
criteria; pair selection is the normal strategy (minimal lcm degree first,
ties broken by the monomial order, then by index), so runs are
deterministic and reduced bases are unique for a fixed order -- the tests
exercise this by permuting generator lists.

Computations carry an explicit resource budget; exceeding it raises
:class:`BudgetExceeded` rather than grinding on silently.
"""

import heapq
from dataclasses import dataclass

from .errors import BudgetExceeded
from .packed import PackedContext
from .poly import (
    MonomialOrder,
    PolynomialRing,
    SparsePolynomial,
    monomial_div,
    monomial_divides,
    monomial_lcm,
    parse_polynomial,
)
from .scalars import QQ


@dataclass(frozen=True)
class GroebnerBudget:
    """Resource limits; defaults are generous for the n <= 5 workloads."""

    max_basis: int = 20_000
    max_steps: int = 100_000_000
    max_standard_monomials: int = 1_000_000


DEFAULT_BUDGET = GroebnerBudget()


class Ideal:
    """A finite generating set in a fixed ring context."""

    def __init__(self, ring, generators):
        gens = []
        for g in generators:
            if not isinstance(g, SparsePolynomial):
                raise TypeError("ideal generators must be polynomials")
            if g.ring != ring:
                raise ValueError("generator in a different ring context")
            if g.is_zero():
                raise ValueError("zero generator")
            gens.append(g)
        if not gens:
            raise ValueError("ideal needs at least one generator")
        self.ring = ring
        self.generators = tuple(gens)

    def __len__(self):
        return len(self.generators)

    def __repr__(self):
        return "Ideal(%d generators in %r)" % (len(self.generators), self.ring)


class GroebnerBasis:
    """A reduced Groebner basis: monic, auto-reduced, sorted by leading
    monomial.  Instances are immutable and cache their reduction engine."""

    def __init__(self, ring, elements, source=None):
        self.ring = ring
        self.elements = tuple(elements)
        self.source = source
        self._cache = {}

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def leading_monomials(self):
        return [g.lead_monomial() for g in self.elements]

    def contains(self, f):
        return normal_form(f, self).is_zero()

    def _reducer(self):
        reducer = self._cache.get("reducer")
        if reducer is None:
            ctx = PackedContext(self.ring)
            reducer = _Reducer(ctx)
            for g in self.elements:
                terms = ctx.pack_dict(g.terms)
                reducer.add(max(terms), terms)
            self._cache["reducer"] = reducer
        return reducer

    def __repr__(self):
        return "GroebnerBasis(%d elements in %r)" % (len(self.elements), self.ring)


@dataclass
class QuotientProfile:
    """Dimension data of a quotient ring by a Groebner basis."""

    finite: bool
    dimension: int | None
    standard_monomials: tuple
    hilbert_series: tuple
    witness_variable: str | None = None


# -- raw-dict reduction machinery ---------------------------------------------


class _Reducer:
    """Shared full-reduction engine over a growing basis of monic dicts.

    The divisor cache maps a monomial to (checked_upto, index).  Hits stay
    valid when the basis grows; misses are rechecked only against the new
    tail of the basis.
    """

    __slots__ = ("ctx", "lms", "tails", "cache", "steps")

    def __init__(self, ctx):
        self.ctx = ctx
        self.lms = []
        self.tails = []  # list of (monomial, coeff) pairs, lead excluded
        self.cache = {}
        self.steps = 0

    def add(self, lm, terms):
        self.lms.append(lm)
        self.tails.append([(e, c) for e, c in terms.items() if e != lm])

    def terms_of(self, i):
        d = dict(self.tails[i])
        d[self.lms[i]] = QQ(1)
        return d

    def find_divisor(self, m):
        """Deterministic reducer choice: among basis elements whose lead
        divides m, the one with the shortest tail (ties: lowest index)."""
        checked, idx = self.cache.get(m, (0, None))
        lms = self.lms
        n = len(lms)
        if checked >= n:
            return idx
        ctx = self.ctx
        safe = m + ctx.safe
        gmask = ctx.guard_mask
        gexp = ctx.guard_expect
        tails = self.tails
        best = idx
        best_len = len(tails[idx]) if idx is not None else None
        for i in range(checked, n):
            if (safe - lms[i]) & gmask == gexp:
                li = len(tails[i])
                if best is None or li < best_len:
                    best, best_len = i, li
        self.cache[m] = (n, best)
        return best

    def reduce_full(self, work, max_steps):
        """Fully reduce the dict ``work`` (consumed) against the basis.

        Monomials are processed in decreasing order, so every tail term a
        reduction inserts is handled later and the remainder accumulates
        each monomial exactly once.
        """
        out = {}
        heap = [-m for m in work]
        heapq.heapify(heap)
        steps = self.steps
        tails = self.tails
        lms = self.lms
        pop = heapq.heappop
        push = heapq.heappush
        work_get = work.get
        find = self.find_divisor
        while heap:
            m = -pop(heap)
            c = work.pop(m, None)
            if c is None:
                continue
            idx = find(m)
            if idx is None:
                out[m] = c
                continue
            steps += 1
            if steps > max_steps:
                self.steps = steps
                raise BudgetExceeded(
                    "polynomial reduction", "more than %d reduction steps" % max_steps
                )
            cneg = -c
            base = m - lms[idx]
            # e = u * eg in packed form: (m - lm + mbias) + eg - mbias
            if base:
                for eg, cg in tails[idx]:
                    e = base + eg
                    s = work_get(e)
                    if s is None:
                        work[e] = cneg * cg
                        push(heap, -e)
                    else:
                        s = s + cneg * cg
                        if s == 0:
                            del work[e]
                        else:
                            work[e] = s
            else:
                for eg, cg in tails[idx]:
                    s = work_get(eg)
                    if s is None:
                        work[eg] = cneg * cg
                        push(heap, -eg)
                    else:
                        s = s + cneg * cg
                        if s == 0:
                            del work[eg]
                        else:
                            work[eg] = s
        self.steps = steps
        return out


def _monic_packed(terms):
    lm = max(terms)
    lc = terms[lm]
    if lc == 1:
        return lm, terms
    inv = QQ(1) / lc
    return lm, {e: c * inv for e, c in terms.items()}


# -- public operations ---------------------------------------------------------


def s_polynomial(f, g, order=None):
    """The S-polynomial lcm-cancellation combination of f and g."""
    if f.ring != g.ring:
        raise ValueError("polynomials in different ring contexts")
    if order is not None and order != f.ring.order:
        ring = f.ring.with_order(order)
        f = f.convert_to(ring)
        g = g.convert_to(ring)
    if f.is_zero() or g.is_zero():
        raise ValueError("S-polynomial of a zero polynomial")
    lm_f, lm_g = f.lead_monomial(), g.lead_monomial()
    lcm = monomial_lcm(lm_f, lm_g)
    mf = f.ring.monomial(monomial_div(lcm, lm_f), QQ(1) / f.lead_coeff())
    mg = f.ring.monomial(monomial_div(lcm, lm_g), QQ(1) / g.lead_coeff())
    return mf * f - mg * g


def buchberger(ideal, order=None, budget=None):
    """Compute the reduced Groebner basis of an ideal.

    ``order`` overrides the ring's monomial order (the generators are
    reinterpreted in a ring with the new order).
    """
    budget = budget or DEFAULT_BUDGET
    ring = ideal.ring
    gens = list(ideal.generators)
    if order is not None and order != ring.order:
        ring = ring.with_order(order)
        gens = [g.convert_to(ring) for g in gens]
    ctx = PackedContext(ring)

    reducer = _Reducer(ctx)
    lms = reducer.lms
    monomial_flags = []
    basis_alive = []  # indices that still generate pairs
    pairs = {}  # (i, j) i < j -> packed lcm
    heap = []
    pdeg = ctx.degree
    plcm = ctx.lcm

    def gm_add(terms):
        """Gebauer-Moeller pair update for a new monic element."""
        t = len(lms)
        if t + 1 > budget.max_basis:
            raise BudgetExceeded(
                "basis growth", "more than %d elements" % budget.max_basis
            )
        lm_t, terms = _monic_packed(terms)
        mbias = ctx.mbias
        # candidate new pairs; criterion M/F (lcm divisibility, equal-lcm
        # dedup), then the coprime criterion B at enqueue time.  Divisors
        # precede multiples in ascending lcm order, so scanning survivors
        # suffices (divisibility is transitive through dropped candidates).
        cand = sorted(
            ((plcm(lms[i], lm_t), i) for i in basis_alive),
            key=lambda t: (pdeg(t[0]), t[0], t[1]),
        )
        survivors = []
        for lcm_i, i in cand:
            drop = False
            for lcm_j, _ in survivors:
                if lcm_j == lcm_i or ctx.divides(lcm_j, lcm_i):
                    drop = True
                    break
            if not drop:
                survivors.append((lcm_i, i))
        # chain criterion against surviving old pairs
        for (i, j), lcm_ij in list(pairs.items()):
            if ctx.divides(lm_t, lcm_ij):
                if plcm(lms[i], lm_t) != lcm_ij and plcm(lms[j], lm_t) != lcm_ij:
                    del pairs[(i, j)]
        new_is_mono = len(terms) == 1
        for lcm_i, i in survivors:
            if lcm_i == lms[i] + lm_t - mbias:  # coprime leading monomials
                continue
            if new_is_mono and monomial_flags[i]:  # S-poly of monomials is 0
                continue
            pairs[(i, t)] = lcm_i
            heapq.heappush(heap, (pdeg(lcm_i), lcm_i, i, t))
        # older elements whose lm the new one divides stop generating pairs
        # (they remain usable as reducers)
        for i in list(basis_alive):
            if ctx.divides(lm_t, lms[i]):
                basis_alive.remove(i)
        basis_alive.append(t)
        reducer.add(lm_t, terms)
        monomial_flags.append(new_is_mono)

    # insertion pass: head-reduce each generator against those already
    # accepted (ascending leading monomials guarantee reducers come first)
    packed_gens = sorted((ctx.pack_dict(g.terms) for g in gens), key=max)
    for terms in packed_gens:
        reduced = reducer.reduce_full(dict(terms), budget.max_steps)
        if reduced:
            gm_add(reduced)

    while heap:
        deg, lcm_ij, i, j = heapq.heappop(heap)
        if pairs.pop((i, j), None) is None:
            continue
        # monic leads cancel in the S-polynomial, so combine the tails only
        ui = lcm_ij - lms[i]
        uj = lcm_ij - lms[j]
        s = {}
        for e, c in reducer.tails[i]:
            s[ui + e] = c
        for e, c in reducer.tails[j]:
            e2 = uj + e
            v = s.get(e2, QQ(0)) - c
            if v == 0:
                s.pop(e2, None)
            else:
                s[e2] = v
        if not s:
            continue
        reduced = reducer.reduce_full(s, budget.max_steps)
        if reduced:
            gm_add(reduced)

    # minimal basis: keep elements whose lm no other survivor's lm divides
    order_idx = sorted(range(len(lms)), key=lambda i: lms[i])
    minimal = []
    for i in order_idx:
        lm = lms[i]
        if any(ctx.divides(lms[j], lm) for j in minimal):
            continue
        minimal.append(i)

    # tail-reduce each survivor against the others
    final = []
    for i in minimal:
        other = _Reducer(ctx)
        for j in minimal:
            if j != i:
                other.add(lms[j], reducer.terms_of(j))
        reduced = other.reduce_full(reducer.terms_of(i), budget.max_steps)
        _, terms = _monic_packed(reduced)
        final.append(SparsePolynomial(ring, ctx.unpack_dict(terms)))
    final.sort(key=lambda g: ring.sort_key(g.lead_monomial()))
    return GroebnerBasis(ring, final, source=ideal)


def normal_form(f, gb, budget=None):
    """Remainder of f modulo a Groebner basis; zero iff f is in the ideal."""
    budget = budget or DEFAULT_BUDGET
    if f.ring != gb.ring:
        f = f.convert_to(gb.ring)
    if f.is_zero():
        return f
    reducer = gb._reducer()
    out = reducer.reduce_full(reducer.ctx.pack_dict(f.terms), budget.max_steps)
    return SparsePolynomial(gb.ring, reducer.ctx.unpack_dict(out))


def quotient_profile(gb, weights=None, budget=None):
    """Standard monomials, dimension and Hilbert series of ring/ideal.

    ``weights`` assigns a positive integer degree to each variable (all 1
    when omitted); the Hilbert series lists (weighted degree, count) pairs.
    Returns an infinite profile with a witness variable when some variable
    has no pure power among the leading monomials.
    """
    budget = budget or DEFAULT_BUDGET
    ring = gb.ring
    n = ring.nvars
    lms = gb.leading_monomials()
    if weights is None:
        weights = (1,) * n
    weights = tuple(weights)
    if len(weights) != n:
        raise ValueError("need one grading weight per variable")

    for i in range(n):
        if not any(
            all(e == 0 for k, e in enumerate(lm) if k != i) and lm[i] > 0
            for lm in lms
        ):
            return QuotientProfile(
                finite=False,
                dimension=None,
                standard_monomials=(),
                hilbert_series=(),
                witness_variable=ring.names[i],
            )

    def divisible(m):
        for lm in lms:
            ok = True
            for a, b in zip(lm, m):
                if a > b:
                    ok = False
                    break
            if ok:
                return True
        return False

    # standard monomials form an order ideal under divisibility, so grow
    # them from 1 variable by variable (children only extend slots at or
    # after the last incremented one, visiting each monomial exactly once)
    start = (0,) * n
    if divisible(start):
        return QuotientProfile(True, 0, (), (), None)
    standard = [start]
    stack = [(start, 0)]
    while stack:
        m, min_var = stack.pop()
        for i in range(min_var, n):
            child = list(m)
            child[i] += 1
            child = tuple(child)
            if not divisible(child):
                standard.append(child)
                if len(standard) > budget.max_standard_monomials:
                    raise BudgetExceeded(
                        "standard monomial enumeration",
                        "more than %d monomials" % budget.max_standard_monomials,
                    )
                stack.append((child, i))
    key = ring.sort_key
    standard.sort(key=key)
    series = {}
    for m in standard:
        d = sum(w * e for w, e in zip(weights, m))
        series[d] = series.get(d, 0) + 1
    return QuotientProfile(
        finite=True,
        dimension=len(standard),
        standard_monomials=tuple(standard),
        hilbert_series=tuple(sorted(series.items())),
        witness_variable=None,
    )


# -- ideal file format ----------------------------------------------------------
#
# one polynomial per line, '#' comments, and a header declaring the ring:
#     vars: x1, x2, y1, y2; order: grevlex

_ORDER_NAMES = {"lex", "grlex", "grevlex"}


def dump_ideal(ideal):
    lines = ["vars: %s; order: %s" % (", ".join(ideal.ring.names), ideal.ring.order.kind)]
    for g in ideal.generators:
        lines.append(str(g))
    return "\n".join(lines) + "\n"


def load_ideal(text):
    header = None
    body = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            header = line
        else:
            body.append(line)
    if header is None:
        raise ValueError("ideal file has no header line")
    if not header.startswith("vars:"):
        raise ValueError("header must start with 'vars:'")
    head, _, tail = header.partition(";")
    names = [v.strip() for v in head[len("vars:"):].split(",") if v.strip()]
    order_kind = "grevlex"
    tail = tail.strip()
    if tail:
        if not tail.startswith("order:"):
            raise ValueError("header tail must be 'order: <kind>'")
        order_kind = tail[len("order:"):].strip()
        if order_kind not in _ORDER_NAMES:
            raise ValueError("unknown order %r" % (order_kind,))
    ring = PolynomialRing(names, MonomialOrder(order_kind))
    gens = [parse_polynomial(ring, line) for line in body]
    if not gens:
        raise ValueError("ideal file has no generators")
    return Ideal(ring, gens)
