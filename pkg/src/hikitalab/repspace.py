"""Exact geometry of the bouquet representation space.

An element consists of stem maps x_i: C^i -> C^{i+1} and y_i: C^{i+1} -> C^i
for i <= n-2, plus n functionals alpha_i: C^{n-1} -> C and n vectors
beta_i: C -> C^{n-1} (index n is the framing pair).  The aggregates
phi = (alpha_1, ..., alpha_n) and psi = sum beta_i give the n x n product
phi.psi whose entry bookkeeping follows the convention M[i][j] =
alpha_j(beta_i), i.e. the transpose of the standard operator matrix.

Moment-map sign conventions are pinned by the telescoping test on flag
quotients:  y_k x_k = x_{k-1} y_{k-1} + nu_k Id along the stem,
psi.phi = x_{n-2} y_{n-2} + nu_{n-1} Id at the top, gamma_i = alpha_i(beta_i)
at bouquet vertices.  Any globally consistent alternative would fail the
quotient-eigenvalue checks, which compare against the closed forms in
:func:`hikitalab.quiver.lambda_delta_from_nu_gamma`.
"""

import itertools
from dataclasses import dataclass

from .errors import BudgetExceeded, FiberSolveError, StabilityError
from .matrix import (
    Matrix,
    char_poly_coeffs,
    identity_matrix,
    inverse,
    kernel_basis,
    rank,
    solve_affine,
    zero_matrix,
)
from .quiver import lambda_delta_from_nu_gamma
from .scalars import QQ


class BouquetRep:
    """A point of the bouquet representation space with the framing pair."""

    def __init__(self, n, x, y, alpha, beta):
        if n < 2:
            raise ValueError("need n >= 2")
        if len(x) != n - 2 or len(y) != n - 2:
            raise ValueError("need n-2 stem map pairs")
        for i, (xi, yi) in enumerate(zip(x, y), start=1):
            if xi.shape() != (i + 1, i):
                raise ValueError("x_%d must be %dx%d" % (i, i + 1, i))
            if yi.shape() != (i, i + 1):
                raise ValueError("y_%d must be %dx%d" % (i, i, i + 1))
        if len(alpha) != n or len(beta) != n:
            raise ValueError("need n alpha and beta maps (last = framing)")
        for a in alpha:
            if a.shape() != (1, n - 1):
                raise ValueError("alpha maps are 1x(n-1) rows")
        for b in beta:
            if b.shape() != (n - 1, 1):
                raise ValueError("beta maps are (n-1)x1 columns")
        self.n = n
        self.x = list(x)
        self.y = list(y)
        self.alpha = list(alpha)
        self.beta = list(beta)

    def phi(self):
        """n x (n-1) matrix with rows alpha_1, ..., alpha_n."""
        return Matrix([a.rows[0] for a in self.alpha])

    def psi(self):
        """(n-1) x n matrix with columns beta_1, ..., beta_n."""
        return Matrix([[b.rows[r][0] for b in self.beta] for r in range(self.n - 1)])


def phi_psi(rep):
    """The n x n pairing table M[i][j] = alpha_j(beta_i).

    This is the transpose of the standard matrix of the composite operator
    phi.psi: the operator sends e_i to the i-th row of M.
    """
    n = rep.n
    return Matrix(
        [
            [(rep.alpha[j] * rep.beta[i]).rows[0][0] for j in range(n)]
            for i in range(n)
        ]
    )


def phi_psi_operator(rep):
    """Standard matrix of phi.psi (columns are images of basis vectors)."""
    return rep.phi() * rep.psi()


def moment_map_raw(rep):
    """Per-vertex moment values before centrality is imposed.

    Returns (stem balances as matrices, bouquet scalars gamma_1..gamma_{n-1}).
    """
    n = rep.n
    balances = []
    for k in range(1, n - 1):
        yx = rep.y[k - 1] * rep.x[k - 1]
        if k >= 2:
            yx = yx - rep.x[k - 2] * rep.y[k - 2]
        balances.append(yx)
    top = rep.psi() * rep.phi()
    if n >= 3:
        top = top - rep.x[n - 3] * rep.y[n - 3]
    balances.append(top)
    gammas = [(rep.alpha[i] * rep.beta[i]).rows[0][0] for i in range(n - 1)]
    return balances, gammas


def framing_pairing(rep):
    """alpha_n(beta_n); forced to sum_j j nu_j - sum gamma_i on fibers."""
    return (rep.alpha[rep.n - 1] * rep.beta[rep.n - 1]).rows[0][0]


def moment_map(rep):
    """Central moment values (nu_1..nu_{n-1}; gamma_1..gamma_{n-1}).

    Raises ValueError when some stem balance is not a scalar matrix, i.e.
    the point does not sit over the center.
    """
    balances, gammas = moment_map_raw(rep)
    nu = []
    for k, b in enumerate(balances, start=1):
        c = b.rows[0][0]
        ident = identity_matrix(b.nrows).scale(c)
        if b != ident:
            raise ValueError("moment value at stem vertex %d is not central" % k)
        nu.append(c)
    return tuple(nu), tuple(gammas)


# -- stability ------------------------------------------------------------------


def key_stability_bruteforce(mat, max_n=16):
    """Does mat preserve no nonzero coordinate subspace of C^{n-1} in C^n?

    Enumerates all nonempty S in {1..n-1}; (False, S) reports the first
    invariant subspace found (columns of S supported inside S), ordering
    subsets by size then lexicographically.
    """
    n = mat.nrows
    if n > max_n:
        raise BudgetExceeded("subspace enumeration", "n=%d > %d" % (n, max_n))
    rows = mat.rows
    for size in range(1, n):
        for S in itertools.combinations(range(n - 1), size):
            inside = set(S)
            if all(rows[j][s] == 0 for s in S for j in range(n) if j not in inside):
                return False, tuple(s + 1 for s in S)
    return True, None


def key_stability_closure(mat):
    """Polynomial-time equivalent via reachability closures.

    In the digraph with an edge s -> j whenever mat[j][s] != 0, the smallest
    invariant coordinate set containing s is its reachability closure; mat
    preserves a nonzero coordinate subspace of C^{n-1} iff some closure
    avoids the last coordinate.
    """
    n = mat.nrows
    rows = mat.rows
    for s in range(n - 1):
        seen = {s}
        frontier = [s]
        escaped = False
        while frontier:
            v = frontier.pop()
            for j in range(n):
                if j not in seen and rows[j][v] != 0:
                    if j == n - 1:
                        escaped = True
                        frontier = []
                        break
                    seen.add(j)
                    frontier.append(j)
        if not escaped:
            return False, tuple(sorted(x + 1 for x in seen))
    return True, None


@dataclass
class StabilityReport:
    x_injective: tuple
    phi_injective: bool
    key_condition: bool
    witness: tuple | None
    stable: bool


def is_theta_stable(rep):
    """King stability for the all-ones parameter: stem maps and phi
    injective, and the phi.psi operator preserves no nonzero coordinate
    subspace of C^{n-1}."""
    x_inj = tuple(rank(xi) == xi.ncols for xi in rep.x)
    phi_inj = rank(rep.phi()) == rep.n - 1
    # phi_psi is the transpose of the operator matrix, so the coordinate
    # subspace test runs on its transpose
    key, witness = key_stability_closure(phi_psi(rep).transpose())
    return StabilityReport(
        x_injective=x_inj,
        phi_injective=phi_inj,
        key_condition=key,
        witness=witness,
        stable=all(x_inj) and phi_inj and key,
    )


# -- moment-map fibers ------------------------------------------------------------


def solve_cotangent_fiber(x_arrows, alphas, nu, gamma, seed_rng=None):
    """Solve the moment equations for (y, beta) given stem maps and alphas.

    The equations are affine in the unknowns, so this is one exact linear
    solve; free coordinates are filled from ``seed_rng`` (zeros when absent).
    Raises FiberSolveError when the system is inconsistent.
    """
    n = len(alphas)
    params = lambda_delta_from_nu_gamma(nu, gamma)
    nu = params.nu
    gamma = params.gamma
    if len(x_arrows) != n - 2:
        raise ValueError("need n-2 stem maps")

    # unknown layout: y_1 (1x2), ..., y_{n-2} ((n-2)x(n-1)), then
    # beta_1..beta_n ((n-1) entries each)
    offsets = []
    pos = 0
    for k in range(1, n - 1):
        offsets.append(pos)
        pos += k * (k + 1)
    beta_offset = pos
    pos += n * (n - 1)
    nunknowns = pos

    def y_index(k, r, c):
        return offsets[k - 1] + r * (k + 1) + c

    def beta_index(i, r):
        return beta_offset + i * (n - 1) + r

    rows = []
    rhs = []

    def new_row():
        rows.append([QQ(0)] * nunknowns)
        return rows[-1]

    # stem balances: y_k x_k - x_{k-1} y_{k-1} = nu_k Id  (k x k entries)
    for k in range(1, n - 1):
        xk = x_arrows[k - 1]
        for r in range(k):
            for c in range(k):
                row = new_row()
                for m in range(k + 1):
                    row[y_index(k, r, m)] += xk.rows[m][c]
                if k >= 2:
                    xprev = x_arrows[k - 2]
                    for m in range(k - 1):
                        row[y_index(k - 1, m, c)] -= xprev.rows[r][m]
                rhs.append(nu[k - 1] if r == c else QQ(0))

    # top balance: psi.phi - x_{n-2} y_{n-2} = nu_{n-1} Id  ((n-1)^2 entries)
    phi = Matrix([a.rows[0] for a in alphas])
    for r in range(n - 1):
        for c in range(n - 1):
            row = new_row()
            for i in range(n):
                row[beta_index(i, r)] += phi.rows[i][c]
            if n >= 3:
                xp = x_arrows[n - 3]
                for m in range(n - 2):
                    row[y_index(n - 2, m, c)] -= xp.rows[r][m]
            rhs.append(nu[n - 2] if r == c else QQ(0))

    # bouquet values: alpha_i beta_i = gamma_i, i < n
    for i in range(n - 1):
        row = new_row()
        for r in range(n - 1):
            row[beta_index(i, r)] += alphas[i].rows[0][r]
        rhs.append(gamma[i])

    solved = solve_affine(Matrix(rows), rhs)
    if solved is None:
        raise FiberSolveError("moment-map fiber system is inconsistent")
    particular, basis = solved
    u = list(particular)
    if seed_rng is not None:
        for vec in basis:
            t = seed_rng.rational()
            if t:
                u = [a + t * b for a, b in zip(u, vec)]

    ys = []
    for k in range(1, n - 1):
        ys.append(
            Matrix([[u[y_index(k, r, c)] for c in range(k + 1)] for r in range(k)])
        )
    betas = [
        Matrix([[u[beta_index(i, r)]] for r in range(n - 1)]) for i in range(n)
    ]
    rep = BouquetRep(n, list(x_arrows), ys, list(alphas), betas)
    got_nu, got_gamma = moment_map(rep)
    if got_nu != tuple(nu) or got_gamma != tuple(gamma):
        raise FiberSolveError("fiber solution failed the moment round-trip")
    return rep, len(basis)


def sample_generic_parameters(n, rng, max_attempts=64):
    """Seeded (nu, gamma) draws until the stability certificate passes.

    Needs n >= 3: for n = 2 the translation forces delta = lam, so no draw
    can decouple them.
    """
    from .quiver import stability_genericity_certificate

    if n < 3:
        raise ValueError("generic parameter sampling needs n >= 3")
    for _ in range(max_attempts):
        nu = [rng.nonzero_rational(25) for _ in range(n - 1)]
        weighted = sum((j + 1) * nu[j] for j in range(n - 1))
        gamma = [rng.nonzero_rational(25) for _ in range(n - 2)]
        gamma.append(weighted - sum(gamma))
        params = lambda_delta_from_nu_gamma(nu, gamma)
        ok, _ = stability_genericity_certificate(params.lam, params.delta)
        if ok:
            return params
    raise FiberSolveError(
        "no generic parameters after %d draws (seed %r)" % (max_attempts, rng.seed),
        seed=rng.seed,
    )


def sample_fiber_rep(n, nu, gamma, rng, max_retries=16):
    """Draw random injective (x, alpha), then solve for (y, beta).

    Retries with fresh draws when a draw is degenerate; reports the seed on
    exhaustion.
    """
    last = None
    for _ in range(max_retries):
        x_arrows = []
        ok = True
        for k in range(1, n - 1):
            xk = Matrix([[rng.rational() for _ in range(k)] for _ in range(k + 1)])
            if rank(xk) != k:
                ok = False
                break
            x_arrows.append(xk)
        if ok:
            alphas = [
                Matrix([[rng.rational() for _ in range(n - 1)]]) for _ in range(n)
            ]
            if rank(Matrix([a.rows[0] for a in alphas])) != n - 1:
                ok = False
        if ok:
            try:
                rep, freedom = solve_cotangent_fiber(x_arrows, alphas, nu, gamma, rng)
                return rep, freedom
            except FiberSolveError as exc:
                last = exc
    raise FiberSolveError(
        "no fiber representation after %d retries (seed %r)" % (max_retries, rng.seed),
        seed=rng.seed,
    )


# -- flags -------------------------------------------------------------------------


@dataclass
class FlaggedMatrix:
    """A traceless matrix with a full flag given by an ordered basis."""

    x: Matrix
    basis: Matrix  # columns v_1, ..., v_n

    def __post_init__(self):
        if self.x.trace() != 0:
            raise ValueError("flagged matrices are traceless")


@dataclass
class FlagReadout:
    flagged: FlaggedMatrix
    lam: tuple
    delta: tuple
    quotient_values: tuple  # phi.psi acting on F_k/F_{k-1}
    flag_preserved: bool
    nu: tuple | None
    gamma: tuple | None


def rep_to_flagged_matrix(rep):
    """Flag from the stem image chain plus the traceless phi.psi readout.

    The flag is F_k = image(phi x_{n-2} ... x_k), column-reduced with
    deterministic (leftmost-independent) pivoting; lambda_k is the action of
    the traceless part on F_k/F_{k-1} and delta its plain diagonal.
    """
    n = rep.n
    report = is_theta_stable(rep)
    if not (all(report.x_injective) and report.phi_injective):
        raise StabilityError("flag construction needs injective stem maps and phi")
    m_op = phi_psi_operator(rep)
    tr = m_op.trace()
    x = m_op - identity_matrix(n).scale(tr / QQ(n))

    # image chain bases, deterministic pivoting
    chain = [None] * (n - 1)
    mat = rep.phi()
    chain[n - 2] = mat
    for k in range(n - 2, 0, -1):
        mat = mat * rep.x[k - 1]
        chain[k - 1] = mat
    cols = []  # grows to the ordered basis
    for k in range(1, n):
        ck = chain[k - 1]
        for j in range(ck.ncols):
            trial = [row + [ck.rows[r][j]] for r, row in enumerate(cols)] if cols else [
                [ck.rows[r][j]] for r in range(n)
            ]
            tm = Matrix(trial)
            if rank(tm) == tm.ncols:
                cols = trial
                break
        if len(cols[0]) != k:
            raise StabilityError("image chain degenerate at step %d" % k)
    for j in range(n):
        trial = [row + [QQ(1) if r == j else QQ(0)] for r, row in enumerate(cols)]
        tm = Matrix(trial)
        if rank(tm) == n:
            cols = trial
            break
    basis = Matrix(cols)

    binv = inverse(basis)
    a_x = binv * x * basis
    a_m = binv * m_op * basis
    preserved = all(
        a_x.rows[i][j] == 0 and a_m.rows[i][j] == 0
        for j in range(n)
        for i in range(j + 1, n)
    )
    lam = tuple(a_x.rows[k][k] for k in range(n))
    quotients = tuple(a_m.rows[k][k] for k in range(n))
    delta = tuple(x.rows[k][k] for k in range(n))
    try:
        got_nu, got_gamma = moment_map(rep)
    except ValueError:
        got_nu, got_gamma = None, None
    return FlagReadout(
        flagged=FlaggedMatrix(x=x, basis=basis),
        lam=lam,
        delta=delta,
        quotient_values=quotients,
        flag_preserved=preserved,
        nu=got_nu,
        gamma=got_gamma,
    )


def in_Y(fm, lam, delta):
    """Exact membership: flag quotients act by lam and diag(x) == delta."""
    n = fm.x.nrows
    lam = [QQ(v) for v in lam]
    delta = [QQ(v) for v in delta]
    if fm.x.trace() != 0 or sum(lam) != 0 or sum(delta) != 0:
        raise ValueError("traceless data required: trace x, sum lam, sum delta")
    if fm.x.diagonal() != delta:
        return False
    a = inverse(fm.basis) * fm.x * fm.basis
    for j in range(n):
        for i in range(j + 1, n):
            if a.rows[i][j] != 0:
                return False
    return all(a.rows[k][k] == lam[k] for k in range(n))


# -- eigenvector loci and section values --------------------------------------------


def _char_poly_matches(x, lam):
    coeffs = char_poly_coeffs(x)
    target = [QQ(1)]
    for l in lam:
        nxt = [QQ(0)] * (len(target) + 1)
        for i, c in enumerate(target):
            nxt[i] += c  # multiply by t
            nxt[i + 1] -= c * l
        target = nxt
    return list(reversed(target)) == coeffs


def in_Z(x, lam, S, T):
    """Eigenvector support test: the lam_s-eigenvector lies in the
    coordinate subspace avoiding T, for every s in S.

    Requires pairwise distinct rational lam matching the exact spectrum of
    x (validated via the characteristic polynomial).
    """
    n = x.nrows
    lam = [QQ(v) for v in lam]
    if len(set(lam)) != len(lam):
        raise ValueError("eigenvalues must be pairwise distinct")
    if len(lam) != n:
        raise ValueError("need n eigenvalues")
    if not _char_poly_matches(x, lam):
        raise ValueError("matrix spectrum does not match the given eigenvalues")
    for s in S:
        eig = kernel_basis(x - identity_matrix(n).scale(lam[s - 1]))
        if len(eig) != 1:
            raise ValueError("eigenspace dimension != 1 at s=%d" % s)
        v = eig[0]
        if any(v[t - 1] != 0 for t in T):
            return False
    return True


def preserves_coordinate_subspace(x, keep):
    """Does x map the span of {e_i : i in keep} into itself?"""
    keep0 = [i - 1 for i in keep]
    inside = set(keep0)
    return all(
        x.rows[j][c] == 0 for c in keep0 for j in range(x.nrows) if j not in inside
    )


def disjointness_arithmetic(lam, delta, S, T):
    """Certify that the eigenvector locus for (S, T) misses the fixed
    diagonal locus: sum of delta over the complement of T differs from the
    sum of lam over S.  Needs |S| + |T| = n."""
    n = len(lam)
    if len(S) + len(T) != n:
        raise ValueError("need |S| + |T| = n")
    lam = [QQ(v) for v in lam]
    delta = [QQ(v) for v in delta]
    tset = set(T)
    return sum(delta[i - 1] for i in range(1, n + 1) if i not in tset) != sum(
        lam[s - 1] for s in S
    )


def codimension_identity(n, S, T):
    """(n - |T|) |T| == |S| |T| whenever |S| + |T| = n."""
    if len(S) + len(T) != n:
        raise ValueError("need |S| + |T| = n")
    return (n - len(T)) * len(T) == len(S) * len(T)


def adapted_flag_check(x, lam, basis):
    """Is the basis an x-adapted flag with quotient eigenvalues lam?"""
    n = x.nrows
    a = inverse(basis) * x * basis
    for j in range(n):
        for i in range(j + 1, n):
            if a.rows[i][j] != 0:
                return False
    return all(a.rows[k][k] == lam[k] for k in range(n))


def section_value(x, lam, s, t, basis):
    """The functional z_t composed with (x - lam_1) ... (x - lam_{s-1}),
    restricted to F_s and written on the flag basis.

    Returns a row of length s; the first s-1 entries vanish (the composite
    kills F_{s-1}), which the callers assert.
    """
    n = x.nrows
    lam = [QQ(v) for v in lam]
    if not adapted_flag_check(x, lam, basis):
        raise ValueError("flag is not adapted to x with the given eigenvalues")
    if not (1 <= s <= n and 1 <= t <= n):
        raise ValueError("need 1 <= s, t <= n")
    m = identity_matrix(n)
    for j in range(s - 1):
        m = m * (x - identity_matrix(n).scale(lam[j]))
    return [
        sum(m.rows[t - 1][r] * basis.rows[r][j] for r in range(n)) for j in range(s)
    ]


def section_vanishes_on_pairs(x, lam, S, T, basis):
    """Simultaneous vanishing of all section rows over S x T."""
    for s in S:
        for t in T:
            if any(v != 0 for v in section_value(x, lam, s, t, basis)):
                return False
    return True
