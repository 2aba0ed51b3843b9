import argparse
import json
import logging
import math
import os
import random
import sys
import time
from typing import Any, Dict, List, Optional

from . import config, discriminant, hopfact, ncpoly, poisson, rauto, report, structure
from .commpoly import CommPoly
from .exactfield import CycloElem
from .structure import GradedSpan

log = logging.getLogger(__name__)

OK_VERDICTS = ("MATCH", "PASS", "EXPLORE")


def _finish(args: argparse.Namespace, inputs: Dict[str, Any], results: Dict[str, Any],
            expected: Optional[Dict[str, Any]], verdict: str, started: float) -> int:
    rep = report.build_report(args.cmd, inputs, results, expected, verdict, started)
    if args.output:
        path = args.output
    else:
        config.ensure_output_dirs()
        path = report.default_report_path(args.cmd, inputs)
    report.save_report(path, rep)
    log.info("report written to %s", path)
    return 0 if verdict in OK_VERDICTS else 1


def _mu(n: int, m: int) -> CycloElem:
    """A primitive m-th root of unity, in a field that also holds the n-th roots."""
    L = math.lcm(n, m)
    return CycloElem.zeta(L, L // m)


def _action(args: argparse.Namespace) -> hopfact.LinearAction:
    # print(f"building action for {args.target} n={args.n} m={args.mu_order} k={args.k}")
    return hopfact.make_action(args.target, args.n, m=args.mu_order, k=args.k, family=args.family)


def _degree(args: argparse.Namespace) -> int:
    return args.degree if args.degree is not None else config.default_degree(args.n)


def _action_inputs(action: hopfact.LinearAction, **extra: Any) -> Dict[str, Any]:
    inputs = {
        "target": action.target,
        "n": action.n,
        "m": action.m,
        "k": action.k,
        "family": action.family,
        "lam": str(action.lam),
        "mu": str(action.mu),
    }
    inputs.update(extra)
    return inputs


def cmd_hopf_verify(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    n = args.n
    if n < 2:
        raise ValueError(f"Taft algebras need n > 1, got {n}")
    results = {}
    for j in range(1, n):
        if math.gcd(j, n) != 1:
            continue
        H = hopfact.taft_algebra(n, CycloElem.zeta(n, j))
        results[f"zeta{n}^{j}"] = hopfact.verify_hopf_axioms(H).as_dict()
    passed = all(r["passed"] for r in results.values())
    verdict = "PASS" if passed else "FAIL"
    print(f"hopf-verify: n={n} lambdas={len(results)} verdict={verdict}")
    return _finish(args, {"n": n}, {"lambdas": results}, None, verdict, started)


def _expected_family_count(n: int, m: int, target: str) -> int:
    if target == "qplane":
        return 2 if n % m == 0 else 0
    return 2 if m == n and n % 2 == 1 else 0


def cmd_classify(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    n = args.n
    m = args.mu_order or n
    degree = args.degree if args.degree is not None else config.MODULE_ALGEBRA_DEGREE
    found = hopfact.classify_linear_actions(n, _mu(n, m), args.target)
    results = found.as_dict()
    checks = [hopfact.verify_module_algebra(f.action, degree) for f in found.families]
    results["module_algebra"] = [c.as_dict() for c in checks]
    expected_count = _expected_family_count(n, m, args.target)
    ok = (
        len(found.families) == expected_count
        and all(c.passed for c in checks)
        and found.nondiagonal_excluded is not False
    )
    verdict = "MATCH" if ok else "MISMATCH"
    print(f"classify: target={args.target} n={n} m={m} families={len(found.families)} verdict={verdict}")
    inputs = {"target": args.target, "n": n, "m": m, "degree": degree}
    return _finish(args, inputs, results, {"families": expected_count}, verdict, started)


def _monomial_span(P: ncpoly.Presentation, D: int, keep) -> GradedSpan:
    return GradedSpan.of_monomials(P, D, [mono for mono in P.monomials(D) if keep(mono)])


def _generator_products(P: ncpoly.Presentation, D: int, gens: List[ncpoly.NCElem]) -> GradedSpan:
    layer = [P.one()]
    found = list(layer)
    while layer:
        layer = [a * g for a in layer for g in gens if ncpoly.filtration_degree(a * g) <= D]
        found.extend(layer)
    return GradedSpan.from_elements(P, D, found)


def cmd_fixed_ring(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    action = _action(args)
    D = _degree(args)
    A = action.algebra
    n, m = action.n, action.m
    span = structure.fixed_ring(action, D)
    results: Dict[str, Any] = {"fixed_ring": span.describe()}
    expected: Optional[Dict[str, Any]] = None
    verdict = "EXPLORE"

    if action.target in ("qplane", "weyl"):
        first, second = (m, n) if action.family == 1 else (n, m)
        target_span = _monomial_span(A, D, lambda e: e[0] % first == 0 and e[1] % second == 0)
        expected = {"basis": target_span.to_list()}
        verdict = "MATCH" if span == target_span else "MISMATCH"
    elif action.target == "affine3" and action.lam == action.mu:
        target_span = _monomial_span(A, D, lambda e: all(x % 3 == 0 for x in e))
        expected = {"basis": target_span.to_list()}
        verdict = "MATCH" if span == target_span else "MISMATCH"
    elif action.target == "qmatrices":
        gens = [A.monomial({"c": n}), A.monomial({"d": n})]
        gens += [A.monomial({"a": i, "b": n - i}) for i in range(n + 1)]
        listed = _generator_products(A, D, gens)
        extra = [str(b) for b in span.basis if not listed.contains(b)]
        expected = {"generators": [str(g) for g in gens]}
        results["extra"] = extra
        verdict = "MATCH" if span.contains_span(listed) else "MISMATCH"

    print(f"fixed-ring: target={action.target} n={n} m={m} degree={D} dimension={span.dimension} verdict={verdict}")
    return _finish(args, _action_inputs(action, degree=D), results, expected, verdict, started)


def _polyring_counterexample(s: hopfact.SmashProduct) -> ncpoly.NCElem:
    P = s.presentation
    return P.monomial({"u": 1, "g": 1}) + P.monomial({"v": 1, "g": 1, "x": 1}, 2)


def cmd_center(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    action = _action(args)
    D = _degree(args)
    s = hopfact.build_smash(action)
    span = structure.center_truncated(s, D)
    relations = [structure.check_center_relations(s, z) for z in span.basis]
    results: Dict[str, Any] = {
        "center": span.describe(),
        "relations": [r.as_dict() for r in relations],
        "g_powers_nontrivial": structure.g_powers_nontrivial_on(action, action.algebra.generators[0]),
    }
    relations_ok = all(r.passed for r in relations)
    expected: Optional[Dict[str, Any]] = None
    verdict = "EXPLORE"

    if action.target in ("qplane", "weyl") and action.m == action.n:
        n = action.n
        A = action.algebra
        lifted = [s.lift(A.monomial(mono)) for mono in A.monomials(D) if mono[0] % n == 0 and mono[1] % n == 0]
        target_span = GradedSpan.from_elements(s.presentation, D, lifted)
        expected = {"basis": target_span.to_list()}
        verdict = "MATCH" if span == target_span and relations_ok else "MISMATCH"
    elif action.target == "polyring" and action.n == 2 and D >= 1:
        witness = _polyring_counterexample(s)
        expected = {"contains": str(witness)}
        verdict = "MATCH" if span.contains(witness) and relations_ok else "MISMATCH"
    elif not relations_ok:
        verdict = "FAIL"

    print(f"center: target={action.target} n={action.n} m={action.m} degree={D} dimension={span.dimension} verdict={verdict}")
    return _finish(args, _action_inputs(action, degree=D), results, expected, verdict, started)


def cmd_prime(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    action = _action(args)
    s = hopfact.build_smash(action)
    prime, witness = hopfact.is_prime_smash(s)
    expected = action.m == action.n
    verdict = "MATCH" if prime == expected else "MISMATCH"
    results = {"prime": prime, "witness": None if witness is None else str(witness)}
    print(f"prime: target={action.target} n={action.n} m={action.m} prime={prime} verdict={verdict}")
    return _finish(args, _action_inputs(action), results, {"prime": expected}, verdict, started)


def _normality_candidates(case: str, coeffs: poisson.PoissonCoefficients, N: int) -> List[tuple]:
    z1, z2, z3 = CommPoly.gens(poisson.Z_VARS, N)
    if case == "plane":
        return [("z1", z1, True), ("z2", z2, False), ("z2*z3 + theta*z1", z2 * z3 + z1 * coeffs.theta, True)]
    prime = z1 * z2 * z3 + z1 * z1 * coeffs.theta + z3 * (coeffs.b2 / coeffs.b1)
    return [("z1", z1, False), ("z1*z2*z3 + theta*z1^2 + (b2/b1)*z3", prime, True)]


def cmd_poisson(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    n = args.n
    target = args.target
    case = "plane" if target == "qplane" else "weyl"
    k = args.k if args.k is not None else (1 if case == "plane" else -2)
    lift = poisson.canonical_lift(n, k, case)
    coeffs = poisson.prop33_coefficients(n, lift, case)
    N = coeffs.mu.conductor

    induced = poisson.induced_poisson_algebra(poisson.specialization_context(n, lift, target))
    B, pair, C = poisson.prop33_ore_data(n, lift, case)
    table_match = {
        f"{{{a},{b}}}": induced.generator_bracket(a, b) == C.generator_bracket(a, b)
        for i, a in enumerate(poisson.Z_VARS)
        for b in poisson.Z_VARS[i + 1:]
    }
    ore = poisson.verify_poisson_ore(B, pair, C)
    normality = {}
    for label, y, want in _normality_candidates(case, coeffs, N):
        normality[label] = {"normal": poisson.is_poisson_normal(C, y), "expected": want}
    delta = poisson.delta_power(n, lift, target)
    q_skew = poisson.check_q_skew(lift, target)
    sign = poisson.check_mu_product_sign(n)

    results: Dict[str, Any] = {
        "lift": lift,
        "coefficients": coeffs.as_dict(),
        "induced_table": induced.table(),
        "closed_table": C.table(),
        "table_match": table_match,
        "ore": ore.as_dict(),
        "normality": normality,
        "delta_power": delta.as_dict(),
        "q_skew": q_skew,
        "mu_product_sign": sign,
    }
    ok = (
        all(table_match.values())
        and ore.passed
        and all(v["normal"] == v["expected"] for v in normality.values())
        and delta.holds
        and q_skew["holds"]
        and sign
    )
    if case == "plane":
        inner = poisson.check_alpha_inner(B, pair, coeffs.theta)
        results["alpha_inner"] = inner
        ok = ok and all(inner.values())
    else:
        results["c1_equals_minus_b1"] = coeffs.c1 == -coeffs.b1
        ok = ok and results["c1_equals_minus_b1"]
    verdict = "MATCH" if ok else "MISMATCH"
    print(f"poisson: target={target} n={n} k={k} theta={coeffs.theta} verdict={verdict}")
    inputs = {"target": target, "n": n, "k": k}
    return _finish(args, inputs, results, {"theta": str(coeffs.theta)}, verdict, started)


def _heavy_allowed(args: argparse.Namespace) -> bool:
    return args.heavy or os.getenv(config.HEAVY_ENV_VAR, "") == "1"


def cmd_disc(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    n, target = args.n, args.target
    if target not in ("qplane", "weyl"):
        raise ValueError(f"discriminants are computed for qplane and weyl, not {target}")
    if args.algebra == "rmu":
        k = args.k if args.k is not None else (1 if target == "qplane" else -2)
        d = discriminant.rmu_decomposition(n, k, target)
    else:
        k = args.k
        d = discriminant.smash_decomposition(n, target, k)
    omega = d.rank
    if omega >= config.HEAVY_MIN_RANK and not _heavy_allowed(args):
        raise ValueError(f"rank {omega} >= {config.HEAVY_MIN_RANK} needs --heavy")

    form = discriminant.trace_form(d)
    disc = discriminant.discriminant(d, method=args.method, form=form)
    results: Dict[str, Any] = {
        "omega": omega,
        "trace_symmetric": form.is_symmetric(),
        "discriminant": str(disc),
        "terms": disc.to_json(),
    }
    if args.algebra == "rmu":
        variants = discriminant.expected_rmu(n, k, target)
        matches = {name: discriminant.equal_up_to_unit(disc, poly) for name, poly in variants.items()}
        census = discriminant.degree_census(d, {"u": 2, "v": 1, "x": 1})
        weighted = disc.weighted_degree((2 * n, n, n))
        results.update({"variants": matches, "degree_census": census, "weighted_degree": weighted})
        expected = {name: str(poly) for name, poly in variants.items()}
        expected["degree_census"] = 2 * n ** 3 * (n - 1)
        ok = any(matches.values()) and census == expected["degree_census"] and weighted == 2 * census
    else:
        target_poly = discriminant.expected_smash(n)
        results["azumaya"] = discriminant.azumaya_report(disc)
        expected = {"discriminant": str(target_poly)}
        ok = discriminant.equal_up_to_unit(disc, target_poly)
    ok = ok and results["trace_symmetric"]
    verdict = "MATCH" if ok else "MISMATCH"
    print(f"disc: target={target} n={n} algebra={args.algebra} omega={omega} verdict={verdict}")
    inputs = {"target": target, "n": n, "k": k, "algebra": args.algebra, "method": args.method}
    return _finish(args, inputs, results, expected, verdict, started)


def _same_map(e1: rauto.Endomorphism, e2: rauto.Endomorphism) -> bool:
    return all(e1.images[g] == e2.images[g] for g in rauto.GENERATORS)


def _check_endomorphism(e: rauto.Endomorphism) -> Dict[str, Any]:
    kind, params = rauto.parity(e)
    hom = rauto.is_homomorphism(e)
    return {
        "homomorphism": hom,
        "parity": kind,
        "linear_type": rauto.linear_type(e),
        "params": None if params is None else params.as_dict(),
        "bijective_on_slice": hom and rauto.is_bijective_on_slice(e),
        "disc_preserved": hom and rauto.check_disc_preservation(e),
    }


def _rauto_suite(rng: random.Random, draws: int) -> Dict[str, Any]:
    failures: List[str] = []
    table = {("even", "even"): "even", ("odd", "odd"): "even", ("even", "odd"): "odd", ("odd", "even"): "odd"}
    built = []
    for i in range(draws):
        odd = i % 2 == 1
        p = rauto.random_params(rng, odd=odd)
        e = rauto.build_odd(p) if odd else rauto.build_even(p)
        built.append(("odd" if odd else "even", e))
        if not rauto.is_homomorphism(e):
            failures.append(f"draw {i}: not a homomorphism")
        elif not rauto.is_bijective_on_slice(e):
            failures.append(f"draw {i}: not bijective on the slice")
        if not rauto.check_disc_preservation(e):
            failures.append(f"draw {i}: discriminant ideal not preserved")
        if not odd and not _same_map(rauto.compose(e, rauto.build_even(rauto.inverse_even(p))), rauto.identity()):
            failures.append(f"draw {i}: inverse formula fails")
    for i in range(draws):
        (k1, e1), (k2, e2) = rng.choice(built), rng.choice(built)
        got = rauto.parity(rauto.compose(e1, e2))[0]
        if got != table[(k1, k2)]:
            failures.append(f"pair {i}: {k1} * {k2} gave {got}")
    psi = rauto.build_odd(rauto.OddParams(1, 1))
    psi_squared = rauto.parity(rauto.compose(psi, psi))[0]
    if psi_squared != "even":
        failures.append(f"psi o psi is {psi_squared}")
    S = rauto.restricted_algebra().presentation
    inner_maps = {}
    for label, n in (("1 + u x", S.monomial({"u": 1, "x": 1})), ("1 + u g x", S.monomial({"u": 1, "g": 1, "x": 1}))):
        e = rauto.inner(n)
        found = _check_endomorphism(e)
        inner_maps[label] = found
        if not (found["homomorphism"] and found["bijective_on_slice"] and found["disc_preserved"]):
            failures.append(f"conjugation by {label} is not a restricted automorphism")
        if found["linear_type"] != "even":
            failures.append(f"conjugation by {label} has linear type {found['linear_type']}")
    theta = rng.choice([c for c in range(-3, 4) if c])
    search = rauto.search_restricted(theta, rng.choice((1, -1)), rng=rng)
    return {
        "draws": draws,
        "failures": failures,
        "psi_squared": psi_squared,
        "inner": inner_maps,
        "search": search.as_dict(),
        "passed": not failures and search.passed,
    }


def cmd_rauto(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    if args.input:
        with open(args.input, "r", encoding="utf-8") as f:
            e = rauto.endomorphism_from_dict(json.load(f))
        results = _check_endomorphism(e)
        ok = results["homomorphism"] and results["bijective_on_slice"] and results["linear_type"] != "neither"
        inputs: Dict[str, Any] = {"input": os.path.basename(args.input)}
    else:
        draws = args.draws or config.RAUTO_BUDGET.draws
        results = _rauto_suite(random.Random(args.seed), draws)
        ok = results["passed"]
        inputs = {"seed": args.seed, "draws": draws}
    verdict = "PASS" if ok else "FAIL"
    print(f"rauto: {' '.join(f'{k}={v}' for k, v in inputs.items())} verdict={verdict}")
    return _finish(args, inputs, results, None, verdict, started)


def _builtin_presentations(n: int) -> List[ncpoly.Presentation]:
    mu = CycloElem.zeta(n)
    found = [
        ncpoly.quantum_plane(mu),
        ncpoly.quantum_weyl(mu),
        ncpoly.polynomial_ring(("u", "v"), n),
        ncpoly.quantum_matrices(mu),
        ncpoly.taft_presentation(n, mu),
        ncpoly.ore_family(1, "qplane"),
        ncpoly.ore_family(-2, "weyl"),
        hopfact.build_smash(hopfact.make_action("qplane", n)).presentation,
    ]
    if n == 3:
        found.append(ncpoly.quantum_affine3(mu, mu))
    if n % 2 == 1:
        found.append(hopfact.build_smash(hopfact.make_action("weyl", n)).presentation)
    return found


def cmd_confluence(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    if args.presentation:
        presentations = [ncpoly.load_presentation(args.presentation)]
        inputs: Dict[str, Any] = {"presentation": os.path.basename(args.presentation)}
    else:
        presentations = _builtin_presentations(args.n)
        inputs = {"n": args.n}
    checks = [ncpoly.verify_confluence(p).as_dict() for p in presentations]
    passed = all(c["passed"] for c in checks)
    verdict = "PASS" if passed else "FAIL"
    print(f"confluence: presentations={len(checks)} verdict={verdict}")
    return _finish(args, inputs, {"presentations": checks}, None, verdict, started)


def _add_action_args(p: argparse.ArgumentParser, targets=config.TARGETS) -> None:
    p.add_argument("--target", choices=targets, default="qplane")
    p.add_argument("--n", type=int, default=2, help="Taft parameter n")
    p.add_argument("--mu-order", type=int, default=None, help="order m of mu (default n)")
    p.add_argument("--k", type=int, default=None, help="lam = mu^k")
    p.add_argument("--family", type=int, choices=(1, 2), default=1)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="taftsmash")
    parser.add_argument("--verbose", action="store_true", help="Debug logging on stderr")
    parser.add_argument("--output", default=None, help="Report path (default under outputs/reports)")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p_hopf = sub.add_parser("hopf-verify", help="Check the Hopf axioms of H_n(lam) for every primitive lam")
    p_hopf.add_argument("--n", type=int, default=2)
    p_hopf.set_defaults(func=cmd_hopf_verify)

    p_classify = sub.add_parser("classify", help="Classify linear Taft actions on qplane or weyl")
    p_classify.add_argument("--target", choices=("qplane", "weyl"), default="qplane")
    p_classify.add_argument("--n", type=int, default=2)
    p_classify.add_argument("--mu-order", type=int, default=None)
    p_classify.add_argument("--degree", type=int, default=None, help="module-algebra check bound")
    p_classify.set_defaults(func=cmd_classify)

    p_fixed = sub.add_parser("fixed-ring", help="Fixed ring up to a degree bound")
    _add_action_args(p_fixed)
    p_fixed.add_argument("--degree", type=int, default=None, help="degree bound D (default 2n)")
    p_fixed.set_defaults(func=cmd_fixed_ring)

    p_center = sub.add_parser("center", help="Center of the smash product up to a degree bound")
    _add_action_args(p_center)
    p_center.add_argument("--degree", type=int, default=None, help="degree bound D (default 2n)")
    p_center.set_defaults(func=cmd_center)

    p_prime = sub.add_parser("prime", help="Primeness of the smash product")
    _add_action_args(p_prime, ("qplane", "weyl"))
    p_prime.set_defaults(func=cmd_prime)

    p_poisson = sub.add_parser("poisson", help="Induced Poisson structure on the center of the specialization")
    p_poisson.add_argument("--target", choices=("qplane", "weyl"), default="qplane")
    p_poisson.add_argument("--n", type=int, default=2)
    p_poisson.add_argument("--k", type=int, default=None)
    p_poisson.set_defaults(func=cmd_poisson)

    p_disc = sub.add_parser("disc", help="Discriminant over a central polynomial subalgebra")
    p_disc.add_argument("--target", choices=("qplane", "weyl"), default="qplane")
    p_disc.add_argument("--n", type=int, default=2)
    p_disc.add_argument("--k", type=int, default=None)
    p_disc.add_argument("--algebra", choices=("smash", "rmu"), default="smash")
    p_disc.add_argument("--method", choices=("auto", "bareiss", "interpolate"), default="auto")
    p_disc.add_argument("--heavy", action="store_true", help=f"Allow rank >= {config.HEAVY_MIN_RANK}")
    p_disc.set_defaults(func=cmd_disc)

    p_rauto = sub.add_parser("rauto", help="Restricted automorphisms of k_-1[u,v] # H_2(-1)")
    p_rauto.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    p_rauto.add_argument("--draws", type=int, default=None)
    p_rauto.add_argument("--input", default=None, help="Endomorphism JSON file to check")
    p_rauto.set_defaults(func=cmd_rauto)

    p_conf = sub.add_parser("confluence", help="Diamond-lemma check of the built-in presentations")
    p_conf.add_argument("--n", type=int, default=3)
    p_conf.add_argument("--presentation", default=None, help="Presentation JSON file to check")
    p_conf.set_defaults(func=cmd_confluence)

    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr)
    # print(f"parsed arguments: {args}")
    try:
        return args.func(args)
    except (poisson.JacobiViolation, poisson.NotCentralImage, structure.NotCentral) as exc:
        print(f"{args.cmd}: failed: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"{args.cmd}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
