"""Command-line frontend: deterministic JSON envelopes around the library.

Verbs:
    ring hikita --n N [--hilbert] [--emit-ideal FILE]
    ring hyperpolygon --n N
    gb compute --input FILE
    quiver check --family {bouquet|abundant|star} --n N [--resolution]
    rep sample --n N [--nu a,b,..] [--gamma a,b,..]
    rep stability --matrix FILE
    gg verify --n N --check {involution|braid|w0|restrict|generators}
    accept --level {quick|full}

Every run prints one result envelope:
    {schema_version, verb, inputs, outputs, status, seed, runtime_ms}
with status in {verified, failed, budget_exceeded, invalid_input} driving the
exit code (0 / 1 / 3 / 2).  Envelopes are byte-reproducible for fixed inputs
and seed; wall-clock timing is the one non-deterministic field and is forced
to 0 by --no-timing (the determinism criterion runs with timing disabled).

Budgets may be overridden with the environment variables
HIKITALAB_MAX_BASIS, HIKITALAB_MAX_STEPS and HIKITALAB_MAX_ENUM.
"""

import argparse
import json
import os
import sys
import time

from . import acceptance
from .errors import BudgetExceeded, FiberSolveError
from .groebner import (
    GroebnerBudget,
    buchberger,
    dump_ideal,
    load_ideal,
    quotient_profile,
)
from .hikita import (
    ambient_ring,
    fixed_point_ring_analysis,
    hikita_ideal,
    hyperpolygon_ring_analysis,
)
from .matrix import Matrix
from .quiver import (
    abundant_bouquet,
    admits_resolution,
    bouquet,
    bouquet_dimension_vector,
    is_anisotropic,
    ringel_form,
    star_dimension_vector,
    star_quiver,
)
from .repspace import (
    in_Y,
    is_theta_stable,
    key_stability_bruteforce,
    key_stability_closure,
    rep_to_flagged_matrix,
    sample_fiber_rep,
    sample_generic_parameters,
)
from .rng import SeededRng
from .scalars import QQ, format_rational, rational

SCHEMA_VERSION = 1
DEFAULT_SEED = 101

STATUS_VERIFIED = "verified"
STATUS_FAILED = "failed"
STATUS_BUDGET = "budget_exceeded"
STATUS_INVALID = "invalid_input"

EXIT_CODES = {
    STATUS_VERIFIED: 0,
    STATUS_FAILED: 1,
    STATUS_INVALID: 2,
    STATUS_BUDGET: 3,
}

# Documentation-grade coverage map: which CLI verb exercises which library
# operation.  The tests check that each operation is claimed exactly once
# and that every name resolves.
VERB_OPERATIONS = {
    "ring hikita": [
        "hikita.f_polynomial",
        "hikita.cartan_square_ideal",
        "hikita.hikita_ideal",
        "hikita.fixed_point_ring_analysis",
        "hikita.verify_complement_identity",
        "poly.elementary_symmetric",
    ],
    "ring hyperpolygon": [
        "hikita.hyperpolygon_ring_analysis",
        "hikita.hyperpolygon_dim_oracle",
    ],
    "gb compute": [
        "groebner.s_polynomial",
        "groebner.buchberger",
        "groebner.normal_form",
        "groebner.quotient_profile",
        "poly.parse_polynomial",
        "poly.poly_to_string",
    ],
    "quiver check": [
        "quiver.bouquet",
        "quiver.abundant_bouquet",
        "quiver.star_quiver",
        "quiver.ringel_form",
        "quiver.euler_form",
        "quiver.is_anisotropic",
        "quiver.in_sigma0",
        "quiver.admits_resolution",
        "quiver.crawley_boevey_trick",
        "quiver.nondegenerate_stability",
    ],
    "rep sample": [
        "repspace.solve_cotangent_fiber",
        "repspace.sample_fiber_rep",
        "repspace.moment_map",
        "repspace.phi_psi",
        "repspace.is_theta_stable",
        "repspace.rep_to_flagged_matrix",
        "repspace.in_Y",
        "quiver.lambda_delta_from_nu_gamma",
        "quiver.genericity_certificate",
    ],
    "rep stability": [
        "repspace.key_stability_bruteforce",
        "repspace.key_stability_closure",
        "matrix.det_bareiss",
    ],
    "gg verify": [
        "ggaction.sk_matrix",
        "ggaction.sigma_k",
        "ggaction.apply_word",
        "ggaction.w0_closed_form",
        "ggaction.delta_minor",
        "ggaction.restrict_w0_delta",
        "ggaction.image_in_fixed_ring",
    ],
    "accept": [
        "repspace.in_Z",
        "repspace.section_value",
        "repspace.disjointness_arithmetic",
    ],
}


def groebner_budget_from_env():
    kwargs = {}
    if os.environ.get("HIKITALAB_MAX_BASIS"):
        kwargs["max_basis"] = int(os.environ["HIKITALAB_MAX_BASIS"])
    if os.environ.get("HIKITALAB_MAX_STEPS"):
        kwargs["max_steps"] = int(os.environ["HIKITALAB_MAX_STEPS"])
    return GroebnerBudget(**kwargs)


def enumeration_budget_from_env():
    return int(os.environ.get("HIKITALAB_MAX_ENUM", 2_000_000))


# -- serialization helpers -------------------------------------------------------


def serialize_matrix(mat):
    return [[format_rational(e) for e in row] for row in mat.rows]


def parse_matrix(data):
    return Matrix([[rational(str(e)) for e in row] for row in data])


def serialize_rationals(values):
    return [format_rational(v) for v in values]


def parse_rational_list(text):
    return [rational(piece) for piece in text.split(",") if piece.strip()]


def series_to_json(series):
    return [[int(d), int(c)] for d, c in series]


def render_envelope(env, fmt="json"):
    if fmt == "json":
        return json.dumps(env, sort_keys=True, separators=(",", ":")) + "\n"
    lines = ["verb: %s" % env["verb"], "status: %s" % env["status"]]
    lines.append("seed: %d" % env["seed"])
    lines.append("runtime_ms: %d" % env["runtime_ms"])
    for key in sorted(env["inputs"]):
        lines.append("input %s: %r" % (key, env["inputs"][key]))
    for key in sorted(env["outputs"]):
        lines.append("%s: %r" % (key, env["outputs"][key]))
    return "\n".join(lines) + "\n"


def make_envelope(verb, inputs, outputs, status, seed, runtime_ms):
    return {
        "schema_version": SCHEMA_VERSION,
        "verb": verb,
        "inputs": inputs,
        "outputs": outputs,
        "status": status,
        "seed": seed,
        "runtime_ms": runtime_ms,
    }


# -- verb handlers ----------------------------------------------------------------


def run_ring_hikita(n, hilbert=False, emit_ideal=None, budget=None):
    analysis = fixed_point_ring_analysis(n, budget=budget)
    outputs = {
        "n": n,
        "generator_count": analysis.generator_count,
        "groebner_size": analysis.groebner_size,
        "dimension": analysis.dimension,
        "nonempty_subset_convention": True,
    }
    if hilbert:
        outputs["hilbert_series"] = series_to_json(analysis.hilbert_series)
        outputs["hilbert_series_polynomial_degree"] = series_to_json(
            analysis.hilbert_series_polynomial
        )
    if emit_ideal:
        with open(emit_ideal, "w") as fh:
            fh.write(dump_ideal(hikita_ideal(ambient_ring(n))))
        outputs["ideal_file"] = emit_ideal
    return outputs, STATUS_VERIFIED


def run_ring_hyperpolygon(n, budget=None):
    analysis = hyperpolygon_ring_analysis(n, budget=budget)
    status = (
        STATUS_VERIFIED if analysis.dimension == analysis.oracle_dimension
        else STATUS_FAILED
    )
    return {
        "n": n,
        "generator_count": analysis.generator_count,
        "groebner_size": analysis.groebner_size,
        "dimension": analysis.dimension,
        "oracle_dimension": analysis.oracle_dimension,
        "hilbert_series": series_to_json(analysis.hilbert_series),
    }, status


def run_gb_compute(path, budget=None):
    with open(path) as fh:
        ideal = load_ideal(fh.read())
    gb = buchberger(ideal, budget=budget)
    profile = quotient_profile(gb, budget=budget)
    outputs = {
        "variables": list(ideal.ring.names),
        "order": ideal.ring.order.kind,
        "generator_count": len(ideal.generators),
        "groebner_size": len(gb),
        "basis": [str(g) for g in gb],
        "finite": profile.finite,
    }
    if profile.finite:
        outputs["dimension"] = profile.dimension
        outputs["hilbert_series"] = series_to_json(profile.hilbert_series)
    else:
        outputs["witness_variable"] = profile.witness_variable
    return outputs, STATUS_VERIFIED


_FAMILIES = {
    "bouquet": (bouquet, lambda n: bouquet_dimension_vector(n, abundant=False)),
    "abundant": (abundant_bouquet, bouquet_dimension_vector),
    "star": (star_quiver, star_dimension_vector),
}


def run_quiver_check(family, n, resolution=False, budget=None):
    make, dimvec = _FAMILIES[family]
    q = make(n)
    v = dimvec(n)
    outputs = {
        "family": family,
        "n": n,
        "vertices": q.nvertices,
        "edges": q.nedges,
        "dimension_vector": list(v),
        "ringel_self": ringel_form(q, v, v),
        "anisotropic": is_anisotropic(q, v),
    }
    if resolution:
        record = admits_resolution(q, v, budget=budget or enumeration_budget_from_env())
        outputs.update(
            {
                "in_sigma0": record.in_sigma0,
                "sigma0_witness": list(record.sigma0_witness)
                if record.sigma0_witness
                else None,
                "indivisible": record.indivisible,
                "verdict": record.verdict,
                "kleinian_case": record.kleinian_case,
                "enumeration_size": record.enumeration_size,
            }
        )
    return outputs, STATUS_VERIFIED


def run_rep_sample(n, seed, nu=None, gamma=None):
    rng = SeededRng(seed)
    if nu is None or gamma is None:
        if n < 3:
            raise ValueError("generic parameter sampling needs n >= 3; pass --nu/--gamma")
        params = sample_generic_parameters(n, rng.derive(1))
    else:
        from .quiver import lambda_delta_from_nu_gamma

        params = lambda_delta_from_nu_gamma(nu, gamma)
    rep, freedom = sample_fiber_rep(n, params.nu, params.gamma, rng.derive(2))
    report = is_theta_stable(rep)
    readout = rep_to_flagged_matrix(rep) if report.stable else None
    outputs = {
        "n": n,
        "nu": serialize_rationals(params.nu),
        "gamma": serialize_rationals(params.gamma),
        "lam": serialize_rationals(params.lam),
        "delta": serialize_rationals(params.delta),
        "solution_freedom": freedom,
        "stable": report.stable,
        "x_arrows": [serialize_matrix(m) for m in rep.x],
        "y_arrows": [serialize_matrix(m) for m in rep.y],
        "alpha": [serialize_matrix(m) for m in rep.alpha],
        "beta": [serialize_matrix(m) for m in rep.beta],
    }
    status = STATUS_VERIFIED
    if readout is not None:
        outputs["flag_preserved"] = readout.flag_preserved
        outputs["lam_readout"] = serialize_rationals(readout.lam)
        outputs["delta_readout"] = serialize_rationals(readout.delta)
        outputs["in_Y"] = in_Y(readout.flagged, params.lam, params.delta)
        if not (
            readout.flag_preserved
            and tuple(readout.lam) == tuple(params.lam)
            and tuple(readout.delta) == tuple(params.delta)
            and outputs["in_Y"]
        ):
            status = STATUS_FAILED
    elif nu is None:
        status = STATUS_FAILED  # generic parameters must give stable samples
    return outputs, status


def run_rep_stability(path):
    with open(path) as fh:
        data = json.load(fh)
    if isinstance(data, dict):
        data = data["matrix"]
    mat = parse_matrix(data)
    if mat.nrows != mat.ncols:
        raise ValueError("stability check needs a square matrix")
    closure_ok, closure_wit = key_stability_closure(mat)
    brute_ok, brute_wit = key_stability_bruteforce(mat)
    agree = closure_ok == brute_ok
    return {
        "n": mat.nrows,
        "closure_verdict": closure_ok,
        "closure_witness": list(closure_wit) if closure_wit else None,
        "bruteforce_verdict": brute_ok,
        "bruteforce_witness": list(brute_wit) if brute_wit else None,
        "oracles_agree": agree,
    }, (STATUS_VERIFIED if agree else STATUS_FAILED)


def run_gg_verify(n, check):
    from . import ggaction as gg

    signs = []
    cases_total = 0
    cases_passed = 0
    if check == "involution":
        seed = gg.symbolic_seed(n)
        for k in range(1, n):
            cases_total += 1
            if gg.apply_word(seed, [k, k]) == seed:
                cases_passed += 1
    elif check == "braid":
        seed = gg.symbolic_seed(n)
        for k in range(1, n - 1):
            cases_total += 1
            if gg.apply_word(seed, [k, k + 1, k]) == gg.apply_word(
                seed, [k + 1, k, k + 1]
            ):
                cases_passed += 1
        for k in range(1, n):
            for j in range(k + 2, n):
                cases_total += 1
                if gg.apply_word(seed, [k, j]) == gg.apply_word(seed, [j, k]):
                    cases_passed += 1
    elif check == "w0":
        seed = gg.symbolic_seed(n)
        cases_total += 1
        if gg.apply_word(seed, gg.w0_word(n)) == gg.w0_point(n):
            cases_passed += 1
    elif check == "restrict":
        for S in gg.proper_subsets(n):
            cases_total += 1
            report = gg.restrict_w0_delta(n, S)
            if report.passed:
                cases_passed += 1
                signs.append({"S": list(S), "epsilon": report.epsilon})
    elif check == "generators":
        for S in gg.proper_subsets(n):
            for w in gg.all_permutations(n):
                cases_total += 1
                image = gg.image_in_fixed_ring(n, S, w)
                if image.matches:
                    cases_passed += 1
                    if image.nonzero:
                        signs.append(
                            {
                                "S": list(S),
                                "w": [x + 1 for x in w],
                                "epsilon": image.epsilon,
                            }
                        )
    else:
        raise ValueError("unknown check %r" % (check,))
    outputs = {
        "n": n,
        "check": check,
        "cases_total": cases_total,
        "cases_passed": cases_passed,
        "recorded_signs": signs,
    }
    return outputs, (
        STATUS_VERIFIED if cases_passed == cases_total else STATUS_FAILED
    )


def run_accept(level, seed):
    results = acceptance.run_suite(level=level, seed=seed)
    outputs = {
        "level": level,
        "criteria": [
            {
                "id": r.id,
                "name": r.name,
                "passed": r.passed,
                "detail": r.detail,
            }
            for r in results
        ],
        "all_passed": all(r.passed for r in results),
    }
    return outputs, (STATUS_VERIFIED if outputs["all_passed"] else STATUS_FAILED)


# -- argument parsing ---------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hikitalab",
        description="exact-arithmetic workbench: fixed-point rings, bouquet "
        "quiver varieties, Gelfand-Graev action",
    )
    parser.add_argument("--format", choices=["json", "text"], default="json")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument(
        "--no-timing",
        action="store_true",
        help="report runtime_ms as 0 for byte-reproducible envelopes",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    ring = sub.add_parser("ring", help="finite-dimensional graded rings")
    ring_sub = ring.add_subparsers(dest="ring_kind", required=True)
    hik = ring_sub.add_parser("hikita")
    hik.add_argument("--n", type=int, required=True)
    hik.add_argument("--hilbert", action="store_true")
    hik.add_argument("--emit-ideal", metavar="FILE")
    hyp = ring_sub.add_parser("hyperpolygon")
    hyp.add_argument("--n", type=int, required=True)

    gb = sub.add_parser("gb", help="Groebner bases")
    gb_sub = gb.add_subparsers(dest="gb_kind", required=True)
    gbc = gb_sub.add_parser("compute")
    gbc.add_argument("--input", required=True, metavar="FILE")

    qv = sub.add_parser("quiver", help="quiver families and criteria")
    qv_sub = qv.add_subparsers(dest="quiver_kind", required=True)
    qvc = qv_sub.add_parser("check")
    qvc.add_argument("--family", choices=sorted(_FAMILIES), required=True)
    qvc.add_argument("--n", type=int, required=True)
    qvc.add_argument("--resolution", action="store_true")

    rep = sub.add_parser("rep", help="bouquet representation space")
    rep_sub = rep.add_subparsers(dest="rep_kind", required=True)
    rps = rep_sub.add_parser("sample")
    rps.add_argument("--n", type=int, required=True)
    rps.add_argument("--nu", metavar="a,b,..")
    rps.add_argument("--gamma", metavar="a,b,..")
    rpst = rep_sub.add_parser("stability")
    rpst.add_argument("--matrix", required=True, metavar="FILE")

    gg = sub.add_parser("gg", help="Gelfand-Graev Weyl action")
    gg_sub = gg.add_subparsers(dest="gg_kind", required=True)
    ggv = gg_sub.add_parser("verify")
    ggv.add_argument("--n", type=int, required=True)
    ggv.add_argument(
        "--check",
        choices=["involution", "braid", "w0", "restrict", "generators"],
        required=True,
    )

    acc = sub.add_parser("accept", help="run the acceptance suite")
    acc.add_argument("--level", choices=["quick", "full"], default="quick")

    return parser


def dispatch(args):
    budget = groebner_budget_from_env()
    if args.verb == "ring" and args.ring_kind == "hikita":
        verb = "ring hikita"
        inputs = {"n": args.n, "hilbert": bool(args.hilbert)}
        outputs, status = run_ring_hikita(
            args.n, hilbert=args.hilbert, emit_ideal=args.emit_ideal, budget=budget
        )
    elif args.verb == "ring":
        verb = "ring hyperpolygon"
        inputs = {"n": args.n}
        outputs, status = run_ring_hyperpolygon(args.n, budget=budget)
    elif args.verb == "gb":
        verb = "gb compute"
        inputs = {"input": args.input}
        outputs, status = run_gb_compute(args.input, budget=budget)
    elif args.verb == "quiver":
        verb = "quiver check"
        inputs = {"family": args.family, "n": args.n, "resolution": bool(args.resolution)}
        outputs, status = run_quiver_check(
            args.family, args.n, resolution=args.resolution
        )
    elif args.verb == "rep" and args.rep_kind == "sample":
        verb = "rep sample"
        inputs = {"n": args.n, "nu": args.nu, "gamma": args.gamma}
        nu = parse_rational_list(args.nu) if args.nu else None
        gamma = parse_rational_list(args.gamma) if args.gamma else None
        outputs, status = run_rep_sample(args.n, args.seed, nu=nu, gamma=gamma)
    elif args.verb == "rep":
        verb = "rep stability"
        inputs = {"matrix": args.matrix}
        outputs, status = run_rep_stability(args.matrix)
    elif args.verb == "gg":
        verb = "gg verify"
        inputs = {"n": args.n, "check": args.check}
        outputs, status = run_gg_verify(args.n, args.check)
    elif args.verb == "accept":
        verb = "accept"
        inputs = {"level": args.level}
        outputs, status = run_accept(args.level, args.seed)
    else:  # pragma: no cover
        raise ValueError("unhandled verb")
    return verb, inputs, outputs, status


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.monotonic()
    try:
        verb, inputs, outputs, status = dispatch(args)
    except BudgetExceeded as exc:
        verb = args.verb
        inputs = {}
        outputs = {"error": str(exc), "phase": exc.phase}
        status = STATUS_BUDGET
    except (ValueError, KeyError, OSError, json.JSONDecodeError, FiberSolveError) as exc:
        verb = args.verb
        inputs = {}
        outputs = {"error": str(exc)}
        status = STATUS_INVALID
    runtime_ms = 0 if args.no_timing else int((time.monotonic() - start) * 1000)
    env = make_envelope(verb, inputs, outputs, status, args.seed, runtime_ms)
    sys.stdout.write(render_envelope(env, args.format))
    return EXIT_CODES[status]


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
