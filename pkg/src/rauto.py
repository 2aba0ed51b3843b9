"""Restricted automorphisms of S = k_{-1}[u, v] # H_2(-1).

A restricted map sends g to eps g and x to theta x.  Even type:
    u -> alpha u,  v -> alpha (theta^-1 v + sum_i beta_i u^i x)
odd type:
    u -> alpha (u g - 2 v g x),  v -> alpha (theta^-1 v g + sum_i beta_i u^i g x)
with the beta indices odd.

The two templates do not exhaust the restricted maps: conjugation by 1 + s u x or by
1 + c u g x fixes g and x too.  What every restricted automorphism does have is a
degree-one part of pure even or pure odd shape, see linear_type.
"""
from __future__ import annotations

import logging
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, List, Mapping, Optional, Tuple

import sympy as sp

from . import config
from .exactfield import CycloElem, as_cyclo
from .hopfact import SmashProduct, build_smash, make_action
from .linalg import KeyIndex, kernel, rank, solve_in_span
from .ncpoly import NCElem, apply_endomorphism, element_from_list, element_to_list

log = logging.getLogger(__name__)

GENERATORS = ("u", "v", "g", "x")


@lru_cache(maxsize=None)
def restricted_algebra() -> SmashProduct:
    """S, built once so every endomorphism shares one presentation."""
    return build_smash(make_action("qplane", 2))


def _scalar(value) -> CycloElem:
    return as_cyclo(value, restricted_algebra().presentation.ring.conductor)


@dataclass(frozen=True)
class EvenParams:
    alpha: CycloElem
    theta: CycloElem
    eps: int = 1
    betas: Mapping[int, CycloElem] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", _scalar(self.alpha))
        object.__setattr__(self, "theta", _scalar(self.theta))
        object.__setattr__(self, "betas", {int(i): _scalar(b) for i, b in self.betas.items() if b})
        if not self.alpha or not self.theta:
            raise ValueError("alpha and theta must be nonzero")
        if self.eps not in (1, -1):
            raise ValueError(f"eps must be +1 or -1, got {self.eps}")
        bad = [i for i in self.betas if i < 1 or i % 2 == 0]
        if bad:
            raise ValueError(f"beta indices must be odd positive integers, got {bad}")

    def as_dict(self) -> Dict[str, Any]:
        return {
            "alpha": str(self.alpha),
            "theta": str(self.theta),
            "eps": self.eps,
            "betas": {str(i): str(b) for i, b in sorted(self.betas.items())},
        }


class OddParams(EvenParams):
    pass


@dataclass(frozen=True)
class Endomorphism:
    images: Dict[str, NCElem]
    restricted: bool = True

    def __call__(self, e: NCElem) -> NCElem:
        return apply_endomorphism(self.images, e)

    def describe(self) -> Dict[str, str]:
        return {name: str(self.images[name]) for name in GENERATORS}


def _term(exps: Mapping[str, int], coeff) -> NCElem:
    return restricted_algebra().presentation.monomial(exps, coeff)


def _restricted_images(p: EvenParams) -> Dict[str, NCElem]:
    return {"g": _term({"g": 1}, p.eps), "x": _term({"x": 1}, p.theta)}


def build_even(p: EvenParams) -> Endomorphism:
    images = _restricted_images(p)
    images["u"] = _term({"u": 1}, p.alpha)
    v = _term({"v": 1}, p.theta.inverse())
    for i, beta in sorted(p.betas.items()):
        v = v + _term({"u": i, "x": 1}, beta)
    images["v"] = v * p.alpha
    return Endomorphism(images)


def build_odd(p: OddParams) -> Endomorphism:
    images = _restricted_images(p)
    images["u"] = (_term({"u": 1, "g": 1}, 1) - _term({"v": 1, "g": 1, "x": 1}, 2)) * p.alpha
    v = _term({"v": 1, "g": 1}, p.theta.inverse())
    for i, beta in sorted(p.betas.items()):
        v = v + _term({"u": i, "g": 1, "x": 1}, beta)
    images["v"] = v * p.alpha
    return Endomorphism(images)


def identity() -> Endomorphism:
    return build_even(EvenParams(1, 1))


def is_homomorphism(e: Endomorphism) -> bool:
    P = restricted_algebra().presentation
    for label, word, rhs in P.relations():
        lhs = P.one()
        for name in word:
            lhs = lhs * e.images[name]
        if lhs != e(rhs):
            log.debug("relation %s is not preserved", label)
            return False
    return True


def compose(e1: Endomorphism, e2: Endomorphism) -> Endomorphism:
    """e1 after e2."""
    return Endomorphism({name: e1(e2.images[name]) for name in GENERATORS}, e1.restricted and e2.restricted)


def _single(e: NCElem, exps: Mapping[str, int]) -> Optional[CycloElem]:
    mono = e.presentation.exponents(exps)
    if len(e) == 1 and mono in dict(e.items()):
        return e.coefficient(mono)
    return None


def _tail_betas(rest: NCElem, alpha: CycloElem, g_power: int) -> Optional[Dict[int, CycloElem]]:
    betas: Dict[int, CycloElem] = {}
    for (i, j, g, x), c in rest.items():
        if j != 0 or g != g_power or x != 1 or i % 2 == 0:
            return None
        betas[i] = c / alpha
    return betas


def parity(e: Endomorphism) -> Tuple[str, Optional[EvenParams]]:
    """Match the images against the even and odd templates."""
    P = restricted_algebra().presentation
    eps = _single(e.images["g"], {"g": 1})
    theta = _single(e.images["x"], {"x": 1})
    if eps is None or theta is None or eps not in (1, -1):
        return "neither", None
    eps_int = 1 if eps == 1 else -1
    u_img, v_img = e.images["u"], e.images["v"]

    alpha = _single(u_img, {"u": 1})
    if alpha is not None:
        lead = v_img.coefficient({"v": 1})
        if lead and lead == alpha / theta:
            betas = _tail_betas(v_img - P.monomial({"v": 1}, lead), alpha, 0)
            if betas is not None:
                return "even", EvenParams(alpha, theta, eps_int, betas)
        return "neither", None

    alpha = u_img.coefficient({"u": 1, "g": 1})
    if alpha and len(u_img) == 2 and u_img.coefficient({"v": 1, "g": 1, "x": 1}) == alpha * -2:
        lead = v_img.coefficient({"v": 1, "g": 1})
        if lead and lead == alpha / theta:
            betas = _tail_betas(v_img - P.monomial({"v": 1, "g": 1}, lead), alpha, 1)
            if betas is not None:
                return "odd", OddParams(alpha, theta, eps_int, betas)
    return "neither", None


def linear_type(e: Endomorphism) -> str:
    """even or odd from the degree-one part of the image of v alone.

    Conjugation by 1 + s u x + c u g x fixes g and x but adds degree-two terms that
    neither template has; the degree-one part still carries the type.
    """
    P = restricted_algebra().presentation
    eps = _single(e.images["g"], {"g": 1})
    theta = _single(e.images["x"], {"x": 1})
    if eps is None or theta is None or eps not in (1, -1):
        return "neither"
    for name in ("u", "v"):
        if any(P.weight_of(m) == 0 for m, _ in e.images[name].items()):
            return "neither"
    linear = {m for m, _ in e.images["v"].items() if P.weight_of(m) == 1}
    for kind, lead, tail in (
        ("even", {"v": 1}, {"u": 1, "x": 1}),
        ("odd", {"v": 1, "g": 1}, {"u": 1, "g": 1, "x": 1}),
    ):
        lead_mono = P.exponents(lead)
        if lead_mono in linear and linear <= {lead_mono, P.exponents(tail)}:
            return kind
    return "neither"


def inverse_even(p: EvenParams) -> EvenParams:
    inv = p.alpha.inverse()
    betas = {i: -(b * p.alpha ** (1 - i)) for i, b in p.betas.items()}
    return EvenParams(inv, p.theta.inverse(), p.eps, betas)


def check_disc_preservation(e: Endomorphism) -> bool:
    """phi(u^2) is a nonzero multiple of u^2 and phi(v^2) = kappa v^2 + f(u^2)."""
    P = restricted_algebra().presentation
    u2 = P.monomial({"u": 2})
    v2 = P.monomial({"v": 2})
    image_u = e(u2)
    if _single(image_u, {"u": 2}) is None:
        return False
    image_v = e(v2)
    if not image_v.coefficient({"v": 2}):
        return False
    for (i, j, g, x), _ in (image_v - P.monomial({"v": 2}, image_v.coefficient({"v": 2}))).items():
        if j or g or x or i % 2:
            return False
    return True


def _slice_images(e: Endomorphism, degree: int) -> List[NCElem]:
    P = restricted_algebra().presentation
    return [e(P.monomial(mono)) for mono in P.monomials(degree)]


def generators_in_image(
    e: Endomorphism, degree: int = config.RAUTO_BUDGET.slice_degree, images: Optional[List[NCElem]] = None
) -> bool:
    """u, v, g and x are images of elements of degree <= degree."""
    P = restricted_algebra().presentation
    images = _slice_images(e, degree) if images is None else images
    vectors = [dict(image.items()) for image in images]
    for name in GENERATORS:
        if solve_in_span(vectors, dict(P.gen(name).items())) is None:
            log.debug("%s is not the image of anything of degree <= %d", name, degree)
            return False
    return True


def is_bijective_on_slice(e: Endomorphism, degree: int = config.RAUTO_BUDGET.slice_degree) -> bool:
    """Invertible on S / S_{> degree} (u, v of degree 1, g and x of degree 0) and onto.

    The rank test alone only sees the truncated quotient: v -> v + v^3 passes it without
    being onto.  Onto is certified by generators_in_image; S is noetherian, so a
    surjective endomorphism is also injective.
    """
    P = restricted_algebra().presentation
    images = _slice_images(e, degree)
    index = KeyIndex()
    rows = [index.row({m: c for m, c in image.items() if P.weight_of(m) <= degree}) for image in images]
    if rank(rows) != len(images):
        return False
    return generators_in_image(e, degree, images)


def inner(n: NCElem) -> Endomorphism:
    """Conjugation by the unit 1 + n, where n^2 = 0."""
    P = restricted_algebra().presentation
    if not (n * n).is_zero():
        raise ValueError(f"({n})^2 is not zero, 1 + n has no obvious inverse")
    c, c_inv = P.one() + n, P.one() - n
    return Endomorphism({name: c * P.gen(name) * c_inv for name in GENERATORS})


def random_params(rng: random.Random, odd: bool = False, budget: config.RautoBudget = config.RAUTO_BUDGET) -> EvenParams:
    span = budget.coefficient_range

    def nonzero() -> int:
        return rng.choice([c for c in range(-span, span + 1) if c])

    betas = {i: rng.randint(-span, span) for i in budget.beta_indices}
    cls = OddParams if odd else EvenParams
    return cls(nonzero(), nonzero(), rng.choice((1, -1)), betas)


@dataclass(frozen=True)
class SearchReport:
    draws: int
    samples: int
    homomorphisms: int
    automorphisms: int
    parities: Dict[str, int]
    linear_types: Dict[str, int]
    solution_dimension: int

    @property
    def beyond_template(self) -> int:
        """automorphisms whose images match neither template exactly."""
        return self.parities.get("neither", 0)

    @property
    def passed(self) -> bool:
        return self.automorphisms > 0 and self.linear_types.get("neither", 0) == 0

    def as_dict(self) -> Dict[str, Any]:
        return {
            "draws": self.draws,
            "samples": self.samples,
            "homomorphisms": self.homomorphisms,
            "automorphisms": self.automorphisms,
            "parities": dict(self.parities),
            "linear_types": dict(self.linear_types),
            "beyond_template": self.beyond_template,
            "solution_dimension": self.solution_dimension,
            "passed": self.passed,
        }


def _linear_solutions(theta: CycloElem, max_degree: int) -> Tuple[List[Any], List[Tuple[NCElem, NCElem]]]:
    """(U, V) of degree <= max_degree with the linear relations of a restricted map.

    g V = V g cuts out V; x v = v x + u then forces U = theta (x V - V x), and
    g U = -U g, x U = -U x follow.
    """
    P = restricted_algebra().presentation
    g, x = P.gen("g"), P.gen("x")
    monos = [P.monomial(m) for m in P.monomials(max_degree)]
    solutions = []
    for rel in kernel([dict((g * m - m * g).items()) for m in monos]):
        V = P.zero()
        for j, c in rel.items():
            V = V + monos[j] * c
        solutions.append(((x * V - V * x) * theta, V))
    return monos, solutions


def _to_sympy(c: CycloElem) -> sp.Rational:
    q = c.to_rational()
    return sp.Rational(int(q.numerator), int(q.denominator))


def quadratic_system(pairs: List[Tuple[NCElem, NCElem]], symbols: Tuple[sp.Symbol, ...]) -> List[sp.Expr]:
    """Coefficients of V U + U V for (U, V) = sum_k t_k pairs[k].

    Every other relation of S is linear in (U, V) once g and x are fixed, so this is the
    whole nonlinear part of the homomorphism condition.
    """
    coefficients: Dict[Any, sp.Expr] = {}
    for a, (_, Va) in enumerate(pairs):
        for b, (Ub, _) in enumerate(pairs):
            for mono, c in (Va * Ub + Ub * Va).items():
                coefficients[mono] = coefficients.get(mono, 0) + symbols[a] * symbols[b] * _to_sympy(c)
    equations = [sp.expand(expr) for expr in coefficients.values()]
    return [eq for eq in equations if eq != 0]


def _rational_points(
    pairs: List[Tuple[NCElem, NCElem]], rng: random.Random, span: int
) -> List[List[Fraction]]:
    """One rational point on each solution branch, free parameters drawn at random."""
    symbols = sp.symbols(f"t0:{len(pairs)}")
    equations = quadratic_system(pairs, symbols)
    branches = sp.solve(equations, symbols, dict=True) if equations else [{}]
    choices = [c for c in range(-span, span + 1) if c]
    points = []
    for branch in branches:
        free = {t: rng.choice(choices) for t in symbols if t not in branch}
        values = [sp.sympify(branch.get(t, t)).subs(free) for t in symbols]
        if all(v.is_Rational for v in values):
            points.append([Fraction(int(v.p), int(v.q)) for v in values])
    return points


def search_restricted(
    theta,
    eps: int,
    budget: config.RautoBudget = config.RAUTO_BUDGET,
    rng: Optional[random.Random] = None,
) -> SearchReport:
    """Bounded search over restricted endomorphisms with images of degree <= budget.max_degree.

    Each draw picks a few directions of the linear solution space, always one with a
    v or v g term, and solves V U + U V = 0 on them exactly.
    """
    rng = rng or random.Random(config.DEFAULT_SEED)
    theta = _scalar(theta)
    P = restricted_algebra().presentation
    _, solutions = _linear_solutions(theta, budget.max_degree)
    log.info("restricted search: %d-dimensional space of linear solutions", len(solutions))
    leads = [k for k, (_, V) in enumerate(solutions) if V.coefficient({"v": 1}) or V.coefficient({"v": 1, "g": 1})]
    if not leads:
        raise RuntimeError("no linear solution moves v, the search space is empty")
    fixed = {"g": P.monomial({"g": 1}, eps), "x": P.monomial({"x": 1}, theta)}

    parities: Counter = Counter()
    linear_types: Counter = Counter()
    samples = homs = autos = 0
    for _ in range(budget.search_samples):
        lead = rng.choice(leads)
        rest = [k for k in range(len(solutions)) if k != lead]
        support = [lead] + rng.sample(rest, rng.randint(0, min(budget.support_size, len(rest))))
        pairs = [solutions[k] for k in support]
        for point in _rational_points(pairs, rng, budget.coefficient_range):
            samples += 1
            U, V = P.zero(), P.zero()
            for (dU, dV), t in zip(pairs, point):
                if t:
                    U, V = U + dU * t, V + dV * t
            e = Endomorphism({"u": U, "v": V, **fixed})
            if not is_homomorphism(e):
                continue
            homs += 1
            if not is_bijective_on_slice(e, budget.slice_degree):
                continue
            autos += 1
            kind = parity(e)[0]
            parities[kind] += 1
            linear_types[linear_type(e)] += 1
            if kind == "neither":
                log.debug("automorphism outside the templates: %s", e.describe())
    log.info("restricted search: %d samples, %d homomorphisms, %d automorphisms", samples, homs, autos)
    return SearchReport(
        budget.search_samples, samples, homs, autos, dict(parities), dict(linear_types), len(solutions)
    )


def endomorphism_to_dict(e: Endomorphism) -> Dict[str, Any]:
    return {
        "schema": config.ENDOMORPHISM_SCHEMA,
        "restricted": e.restricted,
        "images": {name: element_to_list(e.images[name]) for name in GENERATORS},
    }


def endomorphism_from_dict(data: Mapping[str, Any]) -> Endomorphism:
    if data.get("schema") != config.ENDOMORPHISM_SCHEMA:
        raise ValueError(f"unsupported endomorphism schema {data.get('schema')!r}")
    P = restricted_algebra().presentation
    missing = [g for g in GENERATORS if g not in data["images"]]
    if missing:
        raise ValueError(f"no image given for {missing}")
    images = {name: element_from_list(P, data["images"][name]) for name in GENERATORS}
    return Endomorphism(images, bool(data.get("restricted", True)))
