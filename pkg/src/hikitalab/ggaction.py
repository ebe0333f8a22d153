"""Symbolic Weyl-group action on matrix pairs over Q(y_1, ..., y_n).

The generator sigma_k right-multiplies the matrix by s_k(y) -- the identity
with the {k, k+1} block replaced by [[0, 1/(y_k - y_{k+1})],
[y_{k+1} - y_k, 0]] -- evaluated at the current formal diagonal
arrangement, and then swaps the arrangement's k-th and (k+1)-th entries.
Because each s_k(y) has determinant one, the action preserves determinants;
involution and braid identities hold symbolically and pin down the
arrangement bookkeeping.

The longest element has the closed form g[i][j] -> g[i][n+1-j] times a
ratio of products of differences of the y's; ``w0_word`` builds its reduced
word by the recursion (1, ..., n-1) followed by the word one size down, and
``apply_word`` and the closed form must agree exactly.

Everything here works with full symbolic seeds: an n x n matrix of fresh
indeterminates g11..gnn adjoined to the y-variables.
"""

import itertools
from dataclasses import dataclass

from .matrix import Matrix, det_bareiss, identity_matrix, minor
from .poly import MonomialOrder, PolynomialRing
from .ratfun import RationalFunction
from .scalars import QQ


def y_ring(n):
    return PolynomialRing(["y%d" % i for i in range(1, n + 1)], MonomialOrder())


def symbolic_ring(n):
    """y_1..y_n together with n^2 matrix indeterminates g11..gnn."""
    names = ["y%d" % i for i in range(1, n + 1)]
    names += ["g%d%d" % (i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    return PolynomialRing(names, MonomialOrder())


def _rf(poly):
    return RationalFunction(poly)


def _const(ring, c):
    return RationalFunction(ring.constant(c))


@dataclass
class GGPoint:
    """A matrix over Q(y) together with the current diagonal arrangement.

    ``perm`` is 0-based: the formal diagonal reads (y_{perm[0]+1}, ...).
    """

    ring: PolynomialRing
    n: int
    g: Matrix
    perm: tuple

    def __eq__(self, other):
        return (
            isinstance(other, GGPoint)
            and self.n == other.n
            and self.perm == other.perm
            and self.g == other.g
        )

    def determinant(self):
        return det_bareiss(self.g)


def symbolic_seed(n):
    """Fully symbolic point: independent indeterminates, identity arrangement."""
    ring = symbolic_ring(n)
    g = Matrix(
        [
            [_rf(ring.variable(n + (i * n) + j)) for j in range(n)]
            for i in range(n)
        ]
    )
    return GGPoint(ring=ring, n=n, g=g, perm=tuple(range(n)))


def sk_matrix(k, n, ring=None, arrangement=None):
    """s_k(y): identity with the {k, k+1} block replaced by
    [[0, 1/(y_k - y_{k+1})], [y_{k+1} - y_k, 0]].

    ``arrangement`` substitutes the current formal diagonal (0-based
    variable indices); identity arrangement by default.
    """
    if not (1 <= k <= n - 1):
        raise ValueError("need 1 <= k <= n-1")
    if ring is None:
        ring = y_ring(n)
    if arrangement is None:
        arrangement = tuple(range(n))
    ya = ring.variable(arrangement[k - 1])
    yb = ring.variable(arrangement[k])
    one = _const(ring, 1)
    zero = _const(ring, 0)
    rows = [
        [one if i == j else zero for j in range(n)] for i in range(n)
    ]
    rows[k - 1][k - 1] = zero
    rows[k][k] = zero
    rows[k - 1][k] = RationalFunction(ring.one(), ya - yb)
    rows[k][k - 1] = _rf(yb - ya)
    return Matrix(rows)


def sigma_k(pt, k):
    """One Weyl generator: right-multiply by s_k at the current arrangement,
    then transpose the arrangement's k-th and (k+1)-th entries."""
    s = sk_matrix(k, pt.n, ring=pt.ring, arrangement=pt.perm)
    perm = list(pt.perm)
    perm[k - 1], perm[k] = perm[k], perm[k - 1]
    return GGPoint(ring=pt.ring, n=pt.n, g=pt.g * s, perm=tuple(perm))


def apply_word(pt, word):
    """Left-to-right composition of the generators in ``word``."""
    for k in word:
        pt = sigma_k(pt, k)
    return pt


def w0_word(n):
    """Reduced word for the longest element: (1..n-1) then the word for n-1."""
    if n <= 1:
        return []
    return list(range(1, n)) + w0_word(n - 1)


def w0_closed_form(n, gmat=None, ring=None):
    """Closed form of the longest element's action on a matrix over Q(y):
    entry (i, j) becomes g[i][n+1-j] * prod_(l>j) (y_{n+1-j} - y_{n+1-l})
    / prod_(l<j) (y_{n+1-j} - y_{n+1-l})."""
    if gmat is None:
        seed = symbolic_seed(n)
        gmat, ring = seed.g, seed.ring
    elif ring is None:
        raise ValueError("ring required when gmat is supplied")
    yvar = [ring.variable(i) for i in range(n)]
    ratios = []
    for j in range(1, n + 1):
        num = ring.one()
        den = ring.one()
        for l in range(j + 1, n + 1):
            num = num * (yvar[n - j] - yvar[n - l])
        for l in range(1, j):
            den = den * (yvar[n - j] - yvar[n - l])
        ratios.append(RationalFunction(num, den))
    rows = []
    for i in range(n):
        rows.append([gmat.rows[i][n - j] * ratios[j - 1] for j in range(1, n + 1)])
    return Matrix(rows)


def w0_point(n):
    """Longest-element image of the symbolic seed, via the closed form."""
    seed = symbolic_seed(n)
    return GGPoint(
        ring=seed.ring,
        n=n,
        g=w0_closed_form(n, gmat=seed.g, ring=seed.ring),
        perm=tuple(reversed(range(n))),
    )


def delta_minor(gmat, row_set, col_set):
    """Minor over sorted 1-based row/column index sets."""
    rows = sorted(set(row_set))
    cols = sorted(set(col_set))
    if len(rows) != len(col_set) or len(rows) != len(set(col_set)):
        raise ValueError("row and column sets must have equal sizes")
    return minor(gmat, [r - 1 for r in rows], [c - 1 for c in cols])


def delta_of(gmat, row_set):
    """Principal-column minor: rows S against columns 1..|S|."""
    return delta_minor(gmat, row_set, range(1, len(set(row_set)) + 1))


# -- permutation seeds -----------------------------------------------------------


def perm_sign(w):
    sign = 1
    w = list(w)
    seen = [False] * len(w)
    for i in range(len(w)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = w[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def perm_matrix(ring, w):
    """Determinant-one signed permutation matrix: entries +-1 at (i, w(i)),
    the last row negated when the permutation is odd."""
    n = len(w)
    zero = _const(ring, 0)
    rows = [[zero for _ in range(n)] for _ in range(n)]
    for i in range(n):
        rows[i][w[i]] = _const(ring, 1)
    if perm_sign(w) < 0:
        rows[n - 1][w[n - 1]] = _const(ring, -1)
    return Matrix(rows)


@dataclass
class RestrictionReport:
    """Factorization of a principal minor of the transformed matrix."""

    S: tuple
    epsilon: int | None
    passed: bool


def restrict_w0_delta(n, S):
    """Factor Delta_S of the longest-element image: it must equal
    +- Delta_{S, last |S| columns}(g) * prod_(a > n-|S| >= b) (y_a - y_b),
    with the sign recorded (complement columns taken in increasing order)."""
    S = tuple(sorted(set(S)))
    i = len(S)
    if i == 0 or i >= n:
        raise ValueError("S must be a nonempty proper subset")
    seed = symbolic_seed(n)
    ring = seed.ring
    transformed = w0_closed_form(n, gmat=seed.g, ring=seed.ring)
    lhs = delta_minor(transformed, S, range(1, i + 1))
    tail_cols = range(n - i + 1, n + 1)
    target = delta_minor(seed.g, S, tail_cols)
    yvar = [ring.variable(t) for t in range(n)]
    for a in range(n - i + 1, n + 1):
        for b in range(1, n - i + 1):
            target = target * _rf(yvar[a - 1] - yvar[b - 1])
    if lhs == target:
        eps = 1
    elif lhs == -target:
        eps = -1
    else:
        eps = None
    return RestrictionReport(S=S, epsilon=eps, passed=eps is not None)


@dataclass
class FixedRingImage:
    """Evaluation of Delta_S * (w0 . Delta_{complement}) at a signed
    permutation-matrix point, compared against the predicted generator."""

    S: tuple
    w: tuple
    value: object  # SparsePolynomial over Q(y)
    nonzero: bool
    epsilon: int | None
    matches: bool


def image_in_fixed_ring(n, S, w):
    """Restriction of Delta_S * (w0 . Delta_{[n] minus S}) to the point with
    matrix P_w and diagonal y.

    Nonzero exactly when w(S) = {1..|S|}, in which case the value is a sign
    times prod_(s outside S, t <= |S|) (y_{w(s)} - y_t): the generator
    f_{[n] minus S, [i]} evaluated at x = w.y.  ``w`` is 0-based.
    """
    S = tuple(sorted(set(S)))
    i = len(S)
    if i == 0 or i >= n:
        raise ValueError("S must be a nonempty proper subset")
    if sorted(w) != list(range(n)):
        raise ValueError("w must be a permutation of 0..n-1")
    ring = y_ring(n)
    pw = perm_matrix(ring, w)
    transformed = w0_closed_form(n, gmat=pw, ring=ring)
    comp = tuple(s for s in range(1, n + 1) if s not in S)
    a_minor = delta_minor(pw, S, range(1, i + 1))
    b_minor = delta_minor(transformed, comp, range(1, n - i + 1))
    value = a_minor * b_minor
    w_image_of_S = {w[s - 1] + 1 for s in S}
    expected_nonzero = w_image_of_S == set(range(1, i + 1))
    if value.is_zero():
        return FixedRingImage(
            S=S, w=tuple(w), value=ring.zero(), nonzero=False, epsilon=None,
            matches=not expected_nonzero,
        )
    poly = value.as_polynomial()
    yvar = [ring.variable(t) for t in range(n)]
    target = ring.one()
    for s in comp:
        for t in range(1, i + 1):
            target = target * (yvar[w[s - 1]] - yvar[t - 1])
    if poly == target:
        eps = 1
    elif poly == -target:
        eps = -1
    else:
        eps = None
    return FixedRingImage(
        S=S, w=tuple(w), value=poly, nonzero=True, epsilon=eps,
        matches=expected_nonzero and eps is not None,
    )


def proper_subsets(n):
    """Nonempty proper subsets of {1..n} in (size, lex) order."""
    out = []
    for size in range(1, n):
        out.extend(itertools.combinations(range(1, n + 1), size))
    return out


def all_permutations(n):
    return list(itertools.permutations(range(n)))
