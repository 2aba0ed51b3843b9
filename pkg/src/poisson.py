"""Poisson polynomial algebras and the brackets induced by specializing q.

The deformation family R = A_q[x; tau, delta] is specialized at q = eps; the central
lifts u^n, v^n, x^n give z1, z2, z3 and the bracket {s(a), s(b)} = s([a, b] / (q - eps)).
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Mapping, Optional, Sequence, Tuple

from .commpoly import CommPoly
from .exactfield import CycloElem, LaurentQ, laurent_div_at
from .ncpoly import NCElem, Presentation, ore_family, specialize
from .qcomb import q_factorial, q_int

log = logging.getLogger(__name__)

Z_VARS = ("z1", "z2", "z3")


class NotCentralImage(ValueError):
    pass


class JacobiViolation(ValueError):
    pass


class PoissonPolyAlgebra:
    """k[z_1..z_r] with {z_i, z_j} given on generator pairs i < j."""

    def __init__(self, variables: Sequence[str], table: Mapping[Tuple[str, str], CommPoly], conductor: int = 1):
        self.variables: Tuple[str, ...] = tuple(variables)
        self.conductor = conductor
        index = {v: i for i, v in enumerate(self.variables)}
        zero = CommPoly(self.variables, {}, conductor)
        self._table: Dict[Tuple[int, int], CommPoly] = {}
        for (a, b), value in table.items():
            i, j = index[a], index[b]
            if i == j:
                raise ValueError(f"{{{a}, {a}}} is zero by antisymmetry")
            if value.variables != self.variables:
                raise ValueError(f"bracket {{{a}, {b}}} lives in {value.variables}, not {self.variables}")
            if i > j:
                i, j, value = j, i, -value
            self._table[(i, j)] = value
        for i in range(len(self.variables)):
            for j in range(i + 1, len(self.variables)):
                self._table.setdefault((i, j), zero)
        for i in range(len(self.variables)):
            for j in range(i + 1, len(self.variables)):
                for k in range(j + 1, len(self.variables)):
                    value = self.jacobiator(*(self.gen(self.variables[t]) for t in (i, j, k)))
                    if value:
                        raise JacobiViolation(
                            f"Jacobi fails on ({self.variables[i]}, {self.variables[j]}, {self.variables[k]}): {value}"
                        )

    def gen(self, name: str) -> CommPoly:
        return CommPoly.variable(self.variables, name, self.conductor)

    def gens(self) -> Dict[str, CommPoly]:
        return {v: self.gen(v) for v in self.variables}

    def constant(self, value) -> CommPoly:
        return CommPoly.constant(self.variables, value, self.conductor)

    def generator_bracket(self, a: str, b: str) -> CommPoly:
        i, j = self.variables.index(a), self.variables.index(b)
        if i == j:
            return CommPoly(self.variables, {}, self.conductor)
        return self._table[(i, j)] if i < j else -self._table[(j, i)]

    def bracket(self, f: CommPoly, g: CommPoly) -> CommPoly:
        total = CommPoly(self.variables, {}, self.conductor)
        partial_f = {v: f.diff(v) for v in self.variables}
        partial_g = {v: g.diff(v) for v in self.variables}
        for (i, j), value in self._table.items():
            if not value:
                continue
            a, b = self.variables[i], self.variables[j]
            cross = partial_f[a] * partial_g[b] - partial_f[b] * partial_g[a]
            if cross:
                total = total + cross * value
        return total

    def jacobiator(self, a: CommPoly, b: CommPoly, c: CommPoly) -> CommPoly:
        return (
            self.bracket(a, self.bracket(b, c))
            + self.bracket(b, self.bracket(c, a))
            + self.bracket(c, self.bracket(a, b))
        )

    def table(self) -> Dict[str, str]:
        return {
            f"{{{self.variables[i]},{self.variables[j]}}}": str(value)
            for (i, j), value in sorted(self._table.items())
        }

    def __repr__(self) -> str:
        return f"PoissonPolyAlgebra({list(self.variables)}, {self.table()})"


def poisson_bracket(A: PoissonPolyAlgebra, f: CommPoly, g: CommPoly) -> CommPoly:
    return A.bracket(f, g)


def embed(poly: CommPoly, variables: Sequence[str]) -> CommPoly:
    """Read a polynomial in a sub-list of variables inside a longer variable list."""
    positions = [list(variables).index(v) for v in poly.variables]
    terms = {}
    for exps, c in poly.items():
        full = [0] * len(variables)
        for p, e in zip(positions, exps):
            full[p] = e
        terms[tuple(full)] = c
    return CommPoly(variables, terms, poly.conductor)


@dataclass(frozen=True)
class PoissonDerivationPair:
    alpha: Dict[str, CommPoly]
    beta: Dict[str, CommPoly]

    @staticmethod
    def _apply(images: Mapping[str, CommPoly], f: CommPoly) -> CommPoly:
        total = CommPoly(f.variables, {}, f.conductor)
        for v in f.variables:
            image = images.get(v)
            if image is not None and image:
                df = f.diff(v)
                if df:
                    total = total + df * image
        return total

    def apply_alpha(self, f: CommPoly) -> CommPoly:
        return self._apply(self.alpha, f)

    def apply_beta(self, f: CommPoly) -> CommPoly:
        return self._apply(self.beta, f)

    def as_dict(self) -> Dict[str, Dict[str, str]]:
        return {
            "alpha": {v: str(p) for v, p in self.alpha.items()},
            "beta": {v: str(p) for v, p in self.beta.items()},
        }


@dataclass
class SpecializationContext:
    family: Presentation
    eps: CycloElem
    n: int
    z_names: Tuple[str, ...] = Z_VARS
    _specialized: Optional[Presentation] = field(default=None, init=False, repr=False)

    def __post_init__(self) -> None:
        if not self.eps:
            raise ValueError("the specialization point must be nonzero")
        if self.family.ring.kind != "laurent_q":
            raise ValueError(f"{self.family.name} is not a deformation family")

    @property
    def specialized(self) -> Presentation:
        if self._specialized is None:
            self._specialized = specialize(self.family, self.eps)
        return self._specialized

    def lift(self, generator: str) -> NCElem:
        return self.family.monomial({generator: self.n})


def specialization_context(n: int, k: int, target: str = "qplane") -> SpecializationContext:
    if target == "weyl":
        k = canonical_lift(n, k, "weyl")
    return SpecializationContext(ore_family(k, target), CycloElem.zeta(n), n)


def induced_bracket(ctx: SpecializationContext, a_lift: NCElem, b_lift: NCElem) -> CommPoly:
    """s([a, b] / (q - eps)) written in the z-variables."""
    P = ctx.family
    if a_lift.presentation is not P or b_lift.presentation is not P:
        raise ValueError("lifts must live in the deformation family")
    variables = ctx.z_names[: len(P.generators)]
    comm = a_lift * b_lift - b_lift * a_lift
    terms = {}
    for mono, c in comm.items():
        value = laurent_div_at(c, ctx.eps)
        if not value:
            continue
        if any(e % ctx.n for e in mono):
            raise NotCentralImage(f"bracket term {P.generators} ^ {mono} is not a polynomial in the n-th powers")
        terms[tuple(e // ctx.n for e in mono)] = value
    return CommPoly(variables, terms, ctx.eps.conductor)


def induced_poisson_algebra(ctx: SpecializationContext) -> PoissonPolyAlgebra:
    """The bracket table on z1 = u^n, z2 = v^n, z3 = x^n computed from the PBW engine."""
    gens = ctx.family.generators
    variables = ctx.z_names[: len(gens)]
    table = {}
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            table[(variables[i], variables[j])] = induced_bracket(ctx, ctx.lift(gens[i]), ctx.lift(gens[j]))
    log.debug("induced bracket table at %s: %s", ctx.eps, {key: str(v) for key, v in table.items()})
    return PoissonPolyAlgebra(variables, table, ctx.eps.conductor)


@dataclass(frozen=True)
class PoissonCoefficients:
    n: int
    k: int
    case: str
    mu: CycloElem
    b1: CycloElem
    b2: Optional[CycloElem]
    c1: CycloElem
    c2: CycloElem
    theta: CycloElem

    def as_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "k": self.k,
            "case": self.case,
            "b1": str(self.b1),
            "b2": None if self.b2 is None else str(self.b2),
            "c1": str(self.c1),
            "c2": str(self.c2),
            "theta": str(self.theta),
        }


def canonical_lift(n: int, k: int, case: str = "plane") -> int:
    """validate (n, k) and return the lift the closed forms hold for: k itself, or -2 for weyl."""
    if case not in ("plane", "weyl"):
        raise ValueError(f"case must be plane or weyl, got {case!r}")
    if n < 2:
        raise ValueError(f"n must be > 1, got {n}")
    if case == "weyl" and n % 2 == 0:
        raise ValueError(f"the weyl case needs n odd, got n={n}")
    if k % n == 0:
        raise ValueError("k = 0 mod n does not give a Taft action")
    if math.gcd(k, n) != 1:
        raise ValueError(f"gcd(k, n) must be 1, got k={k}, n={n}")
    if case == "weyl":
        if (k + 2) % n:
            raise ValueError(f"the weyl case needs k = -2 mod n, got k={k}")
        # R_mu only sees k mod n, the induced bracket sees the lift
        return -2
    return k


def prop33_coefficients(n: int, k: int, case: str = "plane") -> PoissonCoefficients:
    """b1, b2, c1, c2 and theta = c2 / (c1 - b1) at q = mu = zeta_n."""
    k = canonical_lift(n, k, case)
    mu = CycloElem.zeta(n)
    q = LaurentQ.q(n)
    one = LaurentQ.const(CycloElem.rational(1, n), n)
    b1 = laurent_div_at(q ** (n * n) - one, mu)
    c1 = laurent_div_at(q ** ((k + 1) * n * n) - one, mu)
    if c1 != b1 * (k + 1):
        raise RuntimeError(f"c1 = {c1} differs from (k+1) b1 = {b1 * (k + 1)}")
    c2 = laurent_div_at(q_factorial(n, q ** k), mu) * (-1) ** (n + 1)
    b2 = laurent_div_at(q_factorial(n, q), mu) if case == "weyl" else None
    theta = c2 / (c1 - b1)
    return PoissonCoefficients(n, k, case, mu, b1, b2, c1, c2, theta)


def prop33_ore_data(n: int, k: int, case: str = "plane") -> Tuple[PoissonPolyAlgebra, PoissonDerivationPair, PoissonPolyAlgebra]:
    """B = k[z1, z2], the pair (alpha, beta) and C = B[z3; alpha, beta] in closed form."""
    coeffs = prop33_coefficients(n, k, case)
    N = coeffs.mu.conductor
    base = Z_VARS[:2]
    z1, z2 = CommPoly.gens(base, N)
    b12 = z1 * z2 * coeffs.b1
    if coeffs.b2 is not None:
        b12 = b12 + coeffs.b2
    B = PoissonPolyAlgebra(base, {("z1", "z2"): b12}, N)
    pair = PoissonDerivationPair(
        alpha={"z1": z1 * coeffs.b1, "z2": z2 * coeffs.c1},
        beta={"z1": CommPoly(base, {}, N), "z2": z1 * coeffs.c2},
    )
    C = poisson_ore_extension(B, pair, "z3")
    return B, pair, C


def prop33_algebra(n: int, k: int, case: str = "plane") -> PoissonPolyAlgebra:
    return prop33_ore_data(n, k, case)[2]


def poisson_ore_extension(B: PoissonPolyAlgebra, pair: PoissonDerivationPair, name: str) -> PoissonPolyAlgebra:
    """B[z; alpha, beta]_P with {z, a} = alpha(a) z + beta(a)."""
    variables = B.variables + (name,)
    z = CommPoly.variable(variables, name, B.conductor)
    table: Dict[Tuple[str, str], CommPoly] = {}
    for i, a in enumerate(B.variables):
        for b in B.variables[i + 1:]:
            table[(a, b)] = embed(B.generator_bracket(a, b), variables)
        table[(name, a)] = embed(pair.alpha[a], variables) * z + embed(pair.beta[a], variables)
    return PoissonPolyAlgebra(variables, table, B.conductor)


@dataclass(frozen=True)
class OreCheck:
    passed: bool
    checks: Dict[str, bool]
    failures: Tuple[str, ...] = ()

    def as_dict(self) -> Dict[str, Any]:
        return {"passed": self.passed, "checks": dict(self.checks), "failures": list(self.failures)}


def verify_poisson_ore(B: PoissonPolyAlgebra, pair: PoissonDerivationPair, C: PoissonPolyAlgebra) -> OreCheck:
    if C.variables[:-1] != B.variables:
        raise ValueError(f"{C.variables} does not extend {B.variables} by one variable")
    z = C.variables[-1]
    failures = []
    checks = {"alpha_derivation": True, "beta_identity": True, "ore_table": True}
    gens = B.gens()
    names = B.variables
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            fa, fb = gens[a], gens[b]
            ab = B.bracket(fa, fb)
            alpha_a, alpha_b = pair.apply_alpha(fa), pair.apply_alpha(fb)
            beta_a, beta_b = pair.apply_beta(fa), pair.apply_beta(fb)
            if pair.apply_alpha(ab) != B.bracket(alpha_a, fb) + B.bracket(fa, alpha_b):
                checks["alpha_derivation"] = False
                failures.append(f"alpha({{{a},{b}}})")
            lhs = pair.apply_beta(ab) - B.bracket(beta_a, fb) - B.bracket(fa, beta_b)
            if lhs != alpha_a * beta_b - beta_a * alpha_b:
                checks["beta_identity"] = False
                failures.append(f"beta({{{a},{b}}})")
            if C.generator_bracket(a, b) != embed(ab, C.variables):
                checks["ore_table"] = False
                failures.append(f"{{{a},{b}}} in C")
    zc = C.gen(z)
    for a in names:
        expected = embed(pair.alpha[a], C.variables) * zc + embed(pair.beta[a], C.variables)
        if C.generator_bracket(z, a) != expected:
            checks["ore_table"] = False
            failures.append(f"{{{z},{a}}} in C")
    return OreCheck(all(checks.values()), checks, tuple(failures))


def is_poisson_normal(A: PoissonPolyAlgebra, y: CommPoly) -> bool:
    if not y:
        raise ValueError("the zero polynomial is not a normal element")
    return all(A.bracket(y, A.gen(v)).is_divisible_by(y) for v in A.variables)


def check_alpha_inner(B: PoissonPolyAlgebra, pair: PoissonDerivationPair, theta: CycloElem) -> Dict[str, bool]:
    """beta(z_i) = d alpha(z_i) + {z_i, d} for d = theta z1 / z2, multiplied through by z2^2."""
    num = B.gen("z1") * theta
    den = B.gen("z2")
    result = {}
    for v in B.variables:
        zi = B.gen(v)
        lhs = den * den * pair.apply_beta(zi)
        rhs = num * den * pair.apply_alpha(zi) + den * B.bracket(zi, num) - num * B.bracket(zi, den)
        result[v] = lhs == rhs
    return result


def _base_part(e: NCElem, x_index: int, power: int) -> NCElem:
    P = e.presentation
    terms = {}
    for mono, c in e.items():
        if mono[x_index] == power:
            lowered = list(mono)
            lowered[x_index] = 0
            terms[tuple(lowered)] = c
        elif mono[x_index] != 1 - power:
            raise ValueError(f"{e} is not of the form tau(r) x + delta(r)")
    return P.element(terms)


def ore_maps(R: Presentation, variable: str = "x") -> Tuple[Callable[[NCElem], NCElem], Callable[[NCElem], NCElem]]:
    """tau and delta read off from x r = tau(r) x + delta(r)."""
    xi = R.index(variable)
    x = R.gen(variable)

    def split(r: NCElem) -> NCElem:
        if any(mono[xi] for mono, _ in r.items()):
            raise ValueError(f"{r} involves {variable}")
        return x * r

    def tau(r: NCElem) -> NCElem:
        return _base_part(split(r), xi, 1)

    def delta(r: NCElem) -> NCElem:
        return _base_part(split(r), xi, 0)

    return tau, delta


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    holds: bool
    lhs: str
    rhs: str

    def as_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "holds": self.holds, "lhs": self.lhs, "rhs": self.rhs}


def delta_power(n: int, k: int, target: str = "qplane") -> IdentityCheck:
    """delta^n(v^n) against prod_i q^(n-i-1) [n-i]_(q^k) u^n."""
    R = ore_family(k, target)
    _, delta = ore_maps(R)
    q = LaurentQ.q()
    e = R.monomial({"v": n})
    for _ in range(n):
        e = delta(e)
    factor = LaurentQ.const(CycloElem.rational(1), 1)
    for i in range(n):
        factor = factor * q ** (n - i - 1) * q_int(n - i, q ** k)
    expected = R.monomial({"u": n}, factor)
    return IdentityCheck(f"delta^{n}(v^{n}) k={k} {target}", e == expected, str(e), str(expected))


def check_q_skew(k: int, target: str = "qplane") -> Dict[str, Any]:
    """tau delta = q^(-k) delta tau on u and v."""
    R = ore_family(k, target)
    tau, delta = ore_maps(R)
    ratio = LaurentQ.q() ** (-k)
    result: Dict[str, Any] = {"ratio": str(ratio)}
    for name in ("u", "v"):
        r = R.gen(name)
        result[name] = tau(delta(r)) == delta(tau(r)) * ratio
    result["holds"] = result["u"] and result["v"]
    return result


def check_mu_product_sign(n: int) -> bool:
    mu = CycloElem.zeta(n)
    product = CycloElem.rational(1, n)
    for i in range(n):
        product = product * mu ** (n - i - 1)
    return product == (-1) ** (n + 1)
