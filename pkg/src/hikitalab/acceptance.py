"""The acceptance suite: ten exact-arithmetic criteria, each pass/fail.

``quick`` keeps every computation at n <= 3-ish for a fast sanity pass;
``full`` runs the complete ranges.  All checks are tolerance-zero; nothing
is sampled without a fixed seed.
"""

import itertools
from dataclasses import dataclass

from . import ggaction as gg
from .hikita import (
    ambient_ring,
    f_polynomial,
    fixed_point_ring_analysis,
    hyperpolygon_dim_oracle,
    hyperpolygon_ring_analysis,
    subset_pairs,
    verify_complement_identity,
)
from .matrix import Matrix, identity_matrix, inverse, rank
from .quiver import (
    abundant_bouquet,
    bouquet_dimension_vector,
    genericity_certificate,
    in_sigma0,
    is_anisotropic,
    ringel_form,
)
from .repspace import (
    codimension_identity,
    disjointness_arithmetic,
    in_Y,
    in_Z,
    is_theta_stable,
    key_stability_bruteforce,
    key_stability_closure,
    moment_map,
    rep_to_flagged_matrix,
    sample_fiber_rep,
    sample_generic_parameters,
    section_value,
    section_vanishes_on_pairs,
)
from .rng import SeededRng
from .scalars import QQ


@dataclass
class CriterionResult:
    id: str
    name: str
    passed: bool
    detail: str


def _result(cid, name, passed, detail):
    return CriterionResult(id=cid, name=name, passed=bool(passed), detail=detail)


# -- C1 ------------------------------------------------------------------------


def criterion_fixed_point_dimensions(level="quick", seed=0):
    checks = []
    a2 = fixed_point_ring_analysis(2)
    checks.append(a2.dimension == 1 and a2.hilbert_series == ((0, 1),))
    a3 = fixed_point_ring_analysis(3)
    checks.append(a3.dimension == 5 and a3.hilbert_series == ((0, 1), (2, 4)))
    detail = "n=2 dim %d, n=3 dim %d series %s" % (
        a2.dimension,
        a3.dimension,
        list(a3.hilbert_series),
    )
    if level == "full":
        a4 = fixed_point_ring_analysis(4)
        a5 = fixed_point_ring_analysis(5)
        checks.append(a4.dimension > 0 and a5.dimension > 0)
        detail += "; recorded n=4 dim %d, n=5 dim %d" % (a4.dimension, a5.dimension)
    return _result(
        "C1",
        "fixed-point ring dimensions (n=2 -> 1, n=3 -> 5 = 1 + 4q^2)",
        all(checks),
        detail,
    )


# -- C2 ------------------------------------------------------------------------


def criterion_complement_identity(level="quick", seed=0):
    top = 5 if level == "full" else 3
    bad = []
    total = 0
    for n in range(2, top + 1):
        for pair, ok in verify_complement_identity(n):
            total += 1
            if not ok:
                bad.append((n, pair))
    return _result(
        "C2",
        "complement-pair identity modulo the Cartan-square ideal (n <= %d)" % top,
        not bad,
        "%d subset pairs checked%s" % (total, "" if not bad else "; failures %r" % bad),
    )


# -- C3 ------------------------------------------------------------------------


def criterion_quiver_criteria(level="quick", seed=0):
    checks = []
    sigma_top = 7 if level == "full" else 3
    for n in range(3, sigma_top + 1):
        ok, witness = in_sigma0(abundant_bouquet(n), bouquet_dimension_vector(n))
        checks.append(ok)
    for n in range(2, 13):
        q = abundant_bouquet(n)
        v = bouquet_dimension_vector(n)
        checks.append(ringel_form(q, v, v) == n - n * (n - 1) // 2)
        checks.append(is_anisotropic(q, v) == (n >= 4))
    return _result(
        "C3",
        "Sigma0 membership (3 <= n <= %d) and Ringel closed form (n <= 12)" % sigma_top,
        all(checks),
        "anisotropic exactly for n >= 4",
    )


# -- C4 ------------------------------------------------------------------------


def _expected_longest_element_matrix_4():
    """The 4 x 4 closed-form image, transcribed entry by entry."""
    ring = gg.symbolic_ring(4)
    y = [ring.variable(i) for i in range(4)]
    g = [[ring.variable(4 + 4 * i + j) for j in range(4)] for i in range(4)]
    from .ratfun import RationalFunction as RF

    col1 = RF((y[3] - y[0]) * (y[3] - y[1]) * (y[3] - y[2]))
    col2 = RF((y[2] - y[0]) * (y[2] - y[1]), (y[2] - y[3]))
    col3 = RF(y[1] - y[0], (y[1] - y[2]) * (y[1] - y[3]))
    col4 = RF(ring.one(), (y[0] - y[1]) * (y[0] - y[2]) * (y[0] - y[3]))
    rows = []
    for i in range(4):
        rows.append(
            [
                RF(g[i][3]) * col1,
                RF(g[i][2]) * col2,
                RF(g[i][1]) * col3,
                RF(g[i][0]) * col4,
            ]
        )
    return ring, Matrix(rows)


def criterion_weyl_action(level="quick", seed=0):
    top = 4 if level == "full" else 3
    checks = []
    for n in range(2, top + 1):
        seed_pt = gg.symbolic_seed(n)
        for k in range(1, n):
            checks.append(gg.apply_word(seed_pt, [k, k]) == seed_pt)
        for k in range(1, n - 1):
            checks.append(
                gg.apply_word(seed_pt, [k, k + 1, k])
                == gg.apply_word(seed_pt, [k + 1, k, k + 1])
            )
        for k in range(1, n):
            for j in range(k + 2, n):
                checks.append(
                    gg.apply_word(seed_pt, [k, j]) == gg.apply_word(seed_pt, [j, k])
                )
        checks.append(gg.apply_word(seed_pt, gg.w0_word(n)) == gg.w0_point(n))
    detail = "involution/braid/longest-element words agree symbolically, n <= %d" % top
    if level == "full":
        ring, expected = _expected_longest_element_matrix_4()
        got = gg.w0_closed_form(4)
        entry_matches = sum(
            got.rows[i][j] == expected.rows[i][j] for i in range(4) for j in range(4)
        )
        checks.append(entry_matches == 16)
        detail += "; 4x4 closed-form matrix matched %d/16 entries" % entry_matches
    return _result("C4", "Weyl-action identities", all(checks), detail)


# -- C5 ------------------------------------------------------------------------


def criterion_generator_reproduction(level="quick", seed=0):
    top = 4 if level == "full" else 3
    total = 0
    failed = 0
    for n in range(2, top + 1):
        for S in gg.proper_subsets(n):
            for w in gg.all_permutations(n):
                total += 1
                if not gg.image_in_fixed_ring(n, S, w).matches:
                    failed += 1
        # orbit sweep: y-relabelings of f_{A,[i]} give exactly {f_{A,T}}
        ring = ambient_ring(n)
        for A in gg.proper_subsets(n):
            i = n - len(A)
            base = f_polynomial(ring, A, range(1, i + 1))
            orbit = set()
            for w in gg.all_permutations(n):
                index_map = list(range(2 * n))
                for t in range(n):
                    index_map[n + t] = n + w[t]
                orbit.add(base.map_exponents(index_map))
            expected = {
                f_polynomial(ring, A, T)
                for T in itertools.combinations(range(1, n + 1), i)
            }
            total += 1
            if orbit != expected:
                failed += 1
    return _result(
        "C5",
        "generator reproduction through the Weyl action (n <= %d)" % top,
        failed == 0,
        "%d image and orbit cases, %d failures" % (total, failed),
    )


# -- C6 ------------------------------------------------------------------------


def _pattern_matrix(n, bits, cells):
    rows = [[QQ(0)] * n for _ in range(n)]
    for idx, (j, s) in enumerate(cells):
        if bits >> idx & 1:
            rows[j][s] = QQ(1)
    for d in range(n):
        rows[d][d] = QQ(1)
    return Matrix(rows)


def criterion_stability_oracles(level="quick", seed=0):
    top = 5 if level == "full" else 4
    random_runs = 1000 if level == "full" else 150
    mismatches = 0
    total = 0
    for n in range(2, top + 1):
        cells = [(j, s) for s in range(n - 1) for j in range(n) if j != s]
        for bits in range(1 << len(cells)):
            mat = _pattern_matrix(n, bits, cells)
            total += 1
            if key_stability_bruteforce(mat)[0] != key_stability_closure(mat)[0]:
                mismatches += 1
    rng = SeededRng(seed).derive(6)
    for run in range(random_runs):
        n = rng.integer(2, 8)
        rows = [
            [rng.rational(2) if rng.integer(0, 2) == 0 else QQ(0) for _ in range(n)]
            for _ in range(n)
        ]
        mat = Matrix(rows)
        total += 1
        if key_stability_bruteforce(mat)[0] != key_stability_closure(mat)[0]:
            mismatches += 1
    return _result(
        "C6",
        "coordinate-subspace stability: closure == brute force",
        mismatches == 0,
        "%d patterns (exhaustive over the %d relevant cells per size, n <= %d; "
        "%d random)" % (total, (top - 1) ** 2, top, random_runs),
    )


# -- C7 ------------------------------------------------------------------------


def criterion_fiber_pipeline(level="quick", seed=0):
    sizes = (3, 4, 5) if level == "full" else (3,)
    per_size = 100 if level == "full" else 12
    failures = []
    total = 0
    base = SeededRng(seed).derive(7)
    for n in sizes:
        for sample in range(per_size):
            total += 1
            rng = base.derive(1000 * n + sample)
            params = sample_generic_parameters(n, rng)
            rep, _ = sample_fiber_rep(n, params.nu, params.gamma, rng)
            got = moment_map(rep)
            if got != (params.nu, params.gamma):
                failures.append((n, sample, "moment round-trip"))
                continue
            readout = rep_to_flagged_matrix(rep)
            telescoped = tuple(
                sum(params.nu[k:n - 1], QQ(0)) for k in range(n)
            )
            if readout.quotient_values != telescoped or not readout.flag_preserved:
                failures.append((n, sample, "flag quotients"))
                continue
            if readout.lam != params.lam or readout.delta != params.delta:
                failures.append((n, sample, "lambda/delta readout"))
                continue
            if not in_Y(readout.flagged, params.lam, params.delta):
                failures.append((n, sample, "membership"))
                continue
            if not is_theta_stable(rep).stable:
                failures.append((n, sample, "stability"))
    return _result(
        "C7",
        "moment-map fiber pipeline (%d samples per n in %s)" % (per_size, list(sizes)),
        not failures,
        "%d samples; failures: %r" % (total, failures[:3]),
    )


# -- C8 ------------------------------------------------------------------------


def _random_invertible(n, rng):
    while True:
        mat = Matrix([[rng.rational(6) for _ in range(n)] for _ in range(n)])
        if rank(mat) == n:
            return mat


def _support_invertible(n, S, T, rng):
    """Invertible matrix whose columns in S vanish on the rows in T."""
    while True:
        rows = [[rng.rational(6) for _ in range(n)] for _ in range(n)]
        for t in T:
            for s in S:
                rows[t - 1][s - 1] = QQ(0)
        mat = Matrix(rows)
        if rank(mat) == n:
            return mat


def _distinct_lambda(n, rng):
    while True:
        vals = [rng.rational(30) for _ in range(n - 1)]
        vals.append(-sum(vals, QQ(0)))
        if len(set(vals)) == n:
            return vals


def criterion_section_machinery(level="quick", seed=0):
    sizes = (3, 4, 5) if level == "full" else (3,)
    rng = SeededRng(seed).derive(8)
    checks = []
    details = []
    for n in sizes:
        lam = _distinct_lambda(n, rng)
        diag = Matrix(
            [[lam[i] if i == j else QQ(0) for j in range(n)] for i in range(n)]
        )
        for trial in range(6 if level == "full" else 3):
            p = _random_invertible(n, rng)
            x = p * diag * inverse(p)
            # vanishing on F_{s-1} for every (s, t)
            for s in range(1, n + 1):
                for t in range(1, n + 1):
                    row = section_value(x, lam, s, t, p)
                    checks.append(all(v == 0 for v in row[: s - 1]))
        # vanishing over S x T coincides with the eigenvector-support locus
        for S_size in range(1, n):
            T_size = n - S_size
            S = tuple(range(1, S_size + 1))
            T = tuple(range(n - T_size + 1, n + 1))
            p_in = _support_invertible(n, S, T, rng)
            x_in = p_in * diag * inverse(p_in)
            checks.append(in_Z(x_in, lam, S, T))
            checks.append(section_vanishes_on_pairs(x_in, lam, S, T, p_in))
            p_out = _random_invertible(n, rng)
            x_out = p_out * diag * inverse(p_out)
            agree = section_vanishes_on_pairs(x_out, lam, S, T, p_out) == in_Z(
                x_out, lam, S, T
            )
            checks.append(agree)
        # disjointness for fully certified decoupled pairs
        while True:
            lam_g = _distinct_lambda(n, rng)
            delta_g = _distinct_lambda(n, rng)
            if genericity_certificate(lam_g, delta_g)[0]:
                break
        pair_count = 0
        for S, T in subset_pairs(n):
            checks.append(disjointness_arithmetic(lam_g, delta_g, S, T))
            checks.append(codimension_identity(n, S, T))
            pair_count += 1
        # empirical disjointness: eigenvector-support points avoid the diagonal
        for S_size in (1, n - 1):
            T_size = n - S_size
            S = tuple(range(1, S_size + 1))
            T = tuple(range(n - T_size + 1, n + 1))
            diag_g = Matrix(
                [[lam_g[i] if i == j else QQ(0) for j in range(n)] for i in range(n)]
            )
            for _ in range(4):
                p_in = _support_invertible(n, S, T, rng)
                x_in = p_in * diag_g * inverse(p_in)
                if in_Z(x_in, lam_g, S, T):
                    checks.append(list(x_in.diagonal()) != list(delta_g))
        details.append("n=%d: %d subset pairs certified disjoint" % (n, pair_count))
    return _result(
        "C8",
        "section vanishing, eigenvector loci, disjointness, codimension",
        all(checks),
        "; ".join(details),
    )


# -- C9 ------------------------------------------------------------------------


def criterion_hyperpolygon(level="quick", seed=0):
    top = 8 if level == "full" else 5
    dims = []
    ok = True
    for n in range(4, top + 1):
        analysis = hyperpolygon_ring_analysis(n)
        dims.append((n, analysis.dimension))
        ok = ok and analysis.dimension == analysis.oracle_dimension
    ok = ok and dims[0][1] == 5 and (top < 5 or dims[1][1] == 17)
    ok = ok and hyperpolygon_dim_oracle(4) == 5 and hyperpolygon_dim_oracle(5) == 17
    return _result(
        "C9",
        "hyperpolygon ring dimension == combinatorial oracle (4 <= n <= %d)" % top,
        ok,
        "dimensions %s" % (dims,),
    )


# -- C10 -----------------------------------------------------------------------


def _determinism_envelopes(seed):
    """Serialized no-timing envelopes for a fixed set of verbs."""
    from . import cli

    chunks = []
    outputs, status = cli.run_ring_hikita(3, hilbert=True)
    chunks.append(
        cli.render_envelope(
            cli.make_envelope("ring hikita", {"n": 3}, outputs, status, seed, 0)
        )
    )
    outputs, status = cli.run_ring_hyperpolygon(4)
    chunks.append(
        cli.render_envelope(
            cli.make_envelope("ring hyperpolygon", {"n": 4}, outputs, status, seed, 0)
        )
    )
    outputs, status = cli.run_quiver_check("abundant", 4, resolution=True)
    chunks.append(
        cli.render_envelope(
            cli.make_envelope("quiver check", {"n": 4}, outputs, status, seed, 0)
        )
    )
    outputs, status = cli.run_gg_verify(3, "generators")
    chunks.append(
        cli.render_envelope(
            cli.make_envelope("gg verify", {"n": 3}, outputs, status, seed, 0)
        )
    )
    outputs, status = cli.run_rep_sample(3, seed)
    chunks.append(
        cli.render_envelope(
            cli.make_envelope("rep sample", {"n": 3}, outputs, status, seed, 0)
        )
    )
    return "".join(chunks).encode()


def criterion_determinism(level="quick", seed=0):
    first = _determinism_envelopes(seed)
    second = _determinism_envelopes(seed)
    return _result(
        "C10",
        "byte-identical envelopes across two runs with the same seed",
        first == second,
        "%d bytes compared" % len(first),
    )


CRITERIA = [
    criterion_fixed_point_dimensions,
    criterion_complement_identity,
    criterion_quiver_criteria,
    criterion_weyl_action,
    criterion_generator_reproduction,
    criterion_stability_oracles,
    criterion_fiber_pipeline,
    criterion_section_machinery,
    criterion_hyperpolygon,
    criterion_determinism,
]


def run_suite(level="quick", seed=0):
    return [criterion(level=level, seed=seed) for criterion in CRITERIA]
