"""The two finite-dimensional graded algebras under comparison.

One side: the fixed-point ring presented as the Weyl-invariant fiber product
of two Cartans modulo the products prod_(s in S, t in T) (x_s - y_t) over
pairs of nonempty subsets with |S| + |T| = n.  The other: Konno's
presentation of the hyperpolygon cohomology ring, together with a purely
combinatorial dimension oracle that counts its monomial basis.

Grading convention: every ambient variable carries cohomological weight 2
(first Chern classes of line bundles); Hilbert series are reported both in
that weight and in plain polynomial degree.
"""

import itertools
from dataclasses import dataclass

from .groebner import (
    GroebnerBudget,
    Ideal,
    buchberger,
    normal_form,
    quotient_profile,
)
from .poly import MonomialOrder, PolynomialRing, elementary_symmetric


def ambient_ring(n, order=None):
    """Q[x_1..x_n, y_1..y_n] with grevlex by default."""
    names = ["x%d" % i for i in range(1, n + 1)] + ["y%d" % i for i in range(1, n + 1)]
    return PolynomialRing(names, order or MonomialOrder())


def f_polynomial(ring, S, T):
    """prod_(s in S, t in T) (x_s - y_t), expanded.

    S and T are nonempty subsets of {1..n}; the empty case would give the
    unit and collapse the quotient, so it is rejected.
    """
    n = ring.nvars // 2
    S, T = sorted(set(S)), sorted(set(T))
    if not S or not T:
        raise ValueError(
            "S and T must be nonempty: the empty product is 1, which would "
            "collapse the quotient (nonempty convention)"
        )
    if S[0] < 1 or S[-1] > n or T[0] < 1 or T[-1] > n:
        raise ValueError("subsets must lie in 1..%d" % n)
    f = ring.one()
    for s in S:
        xs = ring.variable(s - 1)
        for t in T:
            yt = ring.variable(n + t - 1)
            f = f * (xs - yt)
    return f


def subset_pairs(n):
    """All (S, T) with S, T nonempty and |S| + |T| = n, in a fixed order."""
    pairs = []
    universe = list(range(1, n + 1))
    for i in range(1, n):  # i = |T|, |S| = n - i
        for S in itertools.combinations(universe, n - i):
            for T in itertools.combinations(universe, i):
                pairs.append((S, T))
    return pairs


def cartan_square_ideal(ring):
    """Invariant-theory presentation of the fiber product of two Cartans:
    e_1 of each variable set vanishes and e_k(x) = e_k(y) for k >= 2."""
    n = ring.nvars // 2
    xs = list(range(n))
    ys = list(range(n, 2 * n))
    gens = [
        elementary_symmetric(ring, 1, xs),
        elementary_symmetric(ring, 1, ys),
    ]
    for k in range(2, n + 1):
        gens.append(
            elementary_symmetric(ring, k, xs) - elementary_symmetric(ring, k, ys)
        )
    return Ideal(ring, gens)


def hikita_ideal(ring):
    """Cartan-square generators plus every f_{S,T} with |S| + |T| = n."""
    n = ring.nvars // 2
    gens = list(cartan_square_ideal(ring).generators)
    for S, T in subset_pairs(n):
        gens.append(f_polynomial(ring, S, T))
    return Ideal(ring, gens)


def expected_generator_count(n):
    """Cartan generators plus sum over i of C(n, n-i) * C(n, i)."""
    from math import comb

    return (n + 1) + sum(comb(n, n - i) * comb(n, i) for i in range(1, n))


@dataclass
class RingAnalysis:
    n: int
    generator_count: int
    groebner_size: int
    dimension: int
    hilbert_series: tuple  # cohomological grading (weight 2 per variable)
    hilbert_series_polynomial: tuple  # plain polynomial degree
    standard_monomials: tuple


def fixed_point_ring_analysis(n, budget=None):
    """Groebner analysis of the fixed-point ring for a given n >= 2."""
    if n < 2:
        raise ValueError("need n >= 2")
    ring = ambient_ring(n)
    ideal = hikita_ideal(ring)
    gb = buchberger(ideal, budget=budget)
    profile2 = quotient_profile(gb, weights=(2,) * ring.nvars, budget=budget)
    profile1 = quotient_profile(gb, weights=(1,) * ring.nvars, budget=budget)
    if not profile2.finite:
        raise ArithmeticError(
            "fixed-point ring unexpectedly infinite; witness %s"
            % profile2.witness_variable
        )
    return RingAnalysis(
        n=n,
        generator_count=len(ideal.generators),
        groebner_size=len(gb),
        dimension=profile2.dimension,
        hilbert_series=profile2.hilbert_series,
        hilbert_series_polynomial=profile1.hilbert_series,
        standard_monomials=profile2.standard_monomials,
    )


def complement_sign(S, T):
    """(-1)^(|S| |T|), the sign relating f_{S,T} to its complement pair."""
    return -1 if (len(S) * len(T)) % 2 else 1


def verify_complement_identity(n, budget=None):
    """Check f_{S,T} == sign * f_{Sc,Tc} modulo the Cartan-square ideal.

    Returns a list of ((S, T), passed) in the subset_pairs order.
    """
    ring = ambient_ring(n)
    gb = buchberger(cartan_square_ideal(ring), budget=budget)
    universe = set(range(1, n + 1))
    results = []
    for S, T in subset_pairs(n):
        Sc = tuple(sorted(universe - set(S)))
        Tc = tuple(sorted(universe - set(T)))
        lhs = f_polynomial(ring, S, T) - complement_sign(S, T) * f_polynomial(
            ring, Sc, Tc
        )
        results.append(((S, T), normal_form(lhs, gb, budget=budget).is_zero()))
    return results


# -- hyperpolygon ring -----------------------------------------------------------


def hyperpolygon_ring(n, order=None):
    names = ["z%d" % i for i in range(1, n + 1)] + ["p"]
    return PolynomialRing(names, order or MonomialOrder())


def hyperpolygon_ideal(ring):
    """Konno's relations: p - z_i^2 for each i, plus all monomials of
    weighted degree exactly 2(n-2), where deg z_i = 2 and deg p = 4."""
    n = ring.nvars - 1
    if n < 4:
        raise ValueError("need n >= 4")
    gens = []
    p = ring.variable(n)
    for i in range(n):
        z = ring.variable(i)
        gens.append(p - z * z)
    target = n - 2  # half the weighted degree: sum a_i + 2 m = n - 2
    for m in range(target // 2 + 1):
        rest = target - 2 * m
        for combo in itertools.combinations_with_replacement(range(n), rest):
            exps = [0] * ring.nvars
            for i in combo:
                exps[i] += 1
            exps[n] = m
            gens.append(ring.monomial(tuple(exps)))
    return Ideal(ring, gens)


@dataclass
class HyperpolygonAnalysis:
    n: int
    generator_count: int
    groebner_size: int
    dimension: int
    hilbert_series: tuple
    oracle_dimension: int


def hyperpolygon_dim_oracle(n):
    """Count the monomial basis directly: squarefree z-monomials times
    powers of p with k + 2m <= n - 3 contribute sum C(n, k)."""
    from math import comb

    if n < 4:
        raise ValueError("need n >= 4")
    total = 0
    for m in range(0, (n - 3) // 2 + 1):
        for k in range(0, n - 3 - 2 * m + 1):
            total += comb(n, k)
    return total


def hyperpolygon_ring_analysis(n, budget=None):
    if n < 4:
        raise ValueError("need n >= 4")
    budget = budget or GroebnerBudget()
    ring = hyperpolygon_ring(n)
    ideal = hyperpolygon_ideal(ring)
    gb = buchberger(ideal, budget=budget)
    weights = (2,) * (ring.nvars - 1) + (4,)
    profile = quotient_profile(gb, weights=weights, budget=budget)
    if not profile.finite:
        raise ArithmeticError("hyperpolygon ring unexpectedly infinite")
    return HyperpolygonAnalysis(
        n=n,
        generator_count=len(ideal.generators),
        groebner_size=len(gb),
        dimension=profile.dimension,
        hilbert_series=profile.hilbert_series,
        oracle_dimension=hyperpolygon_dim_oracle(n),
    )
