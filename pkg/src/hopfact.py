"""Taft algebras, their linear actions on quantum planes and smash products."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Optional, Tuple

import sympy as sp

from . import config
from .exactfield import CycloElem, root_order
from .ncpoly import (
    Monomial,
    NCElem,
    Presentation,
    element_to_list,
    polynomial_ring,
    presentation_to_dict,
    quantum_affine3,
    quantum_matrices,
    quantum_plane,
    quantum_weyl,
    taft_presentation,
    verify_confluence,
)
from .qcomb import q_binomial

log = logging.getLogger(__name__)

TaftMonomial = Tuple[int, int]
Tensor = Dict[Tuple[Monomial, ...], CycloElem]


class InvalidAction(ValueError):
    pass


class UnsupportedTarget(ValueError):
    pass


def _acc(target: Tensor, key: Tuple[Monomial, ...], value: CycloElem) -> None:
    s = target[key] + value if key in target else value
    if s:
        target[key] = s
    else:
        target.pop(key, None)


@dataclass(frozen=True)
class TaftAlgebra:
    n: int
    lam: CycloElem
    presentation: Presentation

    def basis(self) -> List[TaftMonomial]:
        return [(l, k) for l in range(self.n) for k in range(self.n)]

    def element(self, l: int, k: int, coeff=1) -> NCElem:
        return self.presentation.monomial({"g": l, "x": k}, coeff)


def taft_algebra(n: int, lam: CycloElem) -> TaftAlgebra:
    if n < 2:
        raise ValueError(f"Taft algebras need n > 1, got {n}")
    if root_order(lam) != n:
        raise ValueError(f"{lam} is not a primitive {n}-th root of unity")
    return TaftAlgebra(n, lam, taft_presentation(n, lam))


def coproduct(H: TaftAlgebra, l: int, k: int) -> Tensor:
    """Delta(g^l x^k) = sum_i [k, i]_lam g^(l+i) x^(k-i) (x) g^l x^i."""
    if not (0 <= l < H.n and 0 <= k < H.n):
        raise ValueError(f"g^{l} x^{k} is not a basis monomial of H_{H.n}")
    out: Tensor = {}
    for i in range(k + 1):
        _acc(out, (((l + i) % H.n, k - i), (l, i)), q_binomial(k, i, H.lam))
    return out


def _tensor_mul(H: TaftAlgebra, s: Tensor, t: Tensor) -> Tensor:
    mul = H.presentation._mono_mul
    out: Tensor = {}
    for (a, b), c1 in s.items():
        for (c, d), c2 in t.items():
            for left, v1 in mul(a, c).items():
                for right, v2 in mul(b, d).items():
                    _acc(out, (left, right), c1 * c2 * v1 * v2)
    return out


def _tensor_pow(H: TaftAlgebra, t: Tensor, power: int) -> Tensor:
    one = ((0, 0), (0, 0))
    result: Tensor = {one: CycloElem.rational(1, H.lam.conductor)}
    for _ in range(power):
        result = _tensor_mul(H, result, t)
    return result


def counit(H: TaftAlgebra, e: NCElem) -> CycloElem:
    total = CycloElem.rational(0, H.lam.conductor)
    for (l, k), c in e.items():
        if k == 0:
            total = total + c
    return total


def antipode(H: TaftAlgebra, e: NCElem) -> NCElem:
    """S(g) = g^(n-1), S(x) = -g^(n-1) x, extended anti-multiplicatively."""
    P = H.presentation
    s_g = P.monomial({"g": H.n - 1})
    s_x = -(s_g * P.gen("x"))
    out = P.zero()
    for (l, k), c in e.items():
        out = out + (s_x ** k) * (s_g ** l) * c
    return out


@dataclass(frozen=True)
class VerificationReport:
    subject: str
    passed: bool
    checks: Dict[str, bool]
    failure: Optional[str] = None

    def as_dict(self) -> Dict[str, Any]:
        return {"subject": self.subject, "passed": self.passed, "checks": dict(self.checks), "failure": self.failure}


def verify_hopf_axioms(H: TaftAlgebra) -> VerificationReport:
    P = H.presentation
    basis = H.basis()
    checks: Dict[str, bool] = {}

    coassoc = True
    counit_ok = True
    antipode_ok = True
    for l, k in basis:
        delta = coproduct(H, l, k)
        left: Tensor = {}
        right: Tensor = {}
        for (m1, m2), c in delta.items():
            for (a1, a2), v in coproduct(H, *m1).items():
                _acc(left, (a1, a2, m2), c * v)
            for (a1, a2), v in coproduct(H, *m2).items():
                _acc(right, (m1, a1, a2), c * v)
        coassoc = coassoc and left == right

        b = H.element(l, k)
        eps_b = counit(H, b)
        via_left = P.zero()
        via_right = P.zero()
        s_left = P.zero()
        s_right = P.zero()
        for (m1, m2), c in delta.items():
            e1, e2 = P.monomial(m1), P.monomial(m2)
            via_left = via_left + e2 * (counit(H, e1) * c)
            via_right = via_right + e1 * (counit(H, e2) * c)
            s_left = s_left + antipode(H, e1) * e2 * c
            s_right = s_right + e1 * antipode(H, e2) * c
        counit_ok = counit_ok and via_left == b and via_right == b
        antipode_ok = antipode_ok and s_left == P.scalar(eps_b) and s_right == P.scalar(eps_b)

    checks["coassociativity"] = coassoc
    checks["counit"] = counit_ok
    checks["antipode"] = antipode_ok

    delta_g = coproduct(H, 1 % H.n, 0)
    delta_x = coproduct(H, 0, 1)
    unit = {((0, 0), (0, 0)): CycloElem.rational(1, H.lam.conductor)}
    checks["coproduct_relation_g^n"] = _tensor_pow(H, delta_g, H.n) == unit
    checks["coproduct_relation_x^n"] = _tensor_pow(H, delta_x, H.n) == {}
    xg = _tensor_mul(H, delta_x, delta_g)
    gx = {key: v * H.lam for key, v in _tensor_mul(H, delta_g, delta_x).items()}
    checks["coproduct_relation_xg"] = xg == gx
    checks["coproduct_multiplicative"] = all(
        _tensor_mul(H, _tensor_pow(H, delta_g, l), _tensor_pow(H, delta_x, k)) == coproduct(H, l, k)
        for l, k in basis
    )
    checks["counit_multiplicative"] = all(
        counit(H, H.element(*a) * H.element(*b)) == counit(H, H.element(*a)) * counit(H, H.element(*b))
        for a in basis
        for b in basis
    )
    passed = all(checks.values())
    failure = None if passed else ", ".join(name for name, ok in checks.items() if not ok)
    return VerificationReport(f"H_{H.n}({H.lam})", passed, checks, failure)


# actions


@dataclass(frozen=True)
class LinearAction:
    target: str
    n: int
    lam: CycloElem
    mu: CycloElem
    k: Optional[int]
    eta: CycloElem
    family: int
    algebra: Presentation
    g_images: Dict[str, NCElem]
    x_images: Dict[str, NCElem]
    _g_cache: Dict[Monomial, NCElem] = field(default_factory=dict, init=False, repr=False, compare=False)
    _x_cache: Dict[Monomial, NCElem] = field(default_factory=dict, init=False, repr=False, compare=False)

    @property
    def m(self) -> int:
        return root_order(self.mu)

    def _g_mono(self, mono: Monomial) -> NCElem:
        hit = self._g_cache.get(mono)
        if hit is not None:
            return hit
        A = self.algebra
        i = next((j for j, e in enumerate(mono) if e), None)
        if i is None:
            result = A.one()
        else:
            rest = list(mono)
            rest[i] -= 1
            result = self.g_images[A.generators[i]] * self._g_mono(tuple(rest))
        self._g_cache[mono] = result
        return result

    def _x_mono(self, mono: Monomial) -> NCElem:
        hit = self._x_cache.get(mono)
        if hit is not None:
            return hit
        A = self.algebra
        i = next((j for j, e in enumerate(mono) if e), None)
        if i is None:
            result = A.zero()
        else:
            rest = list(mono)
            rest[i] -= 1
            rest_mono = tuple(rest)
            first = A.generators[i]
            # x(r r') = g(r) x(r') + x(r) r'
            result = self.g_images[first] * self._x_mono(rest_mono) + self.x_images[first] * A.monomial(rest_mono)
        self._x_cache[mono] = result
        return result

    def g_of(self, e: NCElem) -> NCElem:
        out = self.algebra.zero()
        for mono, c in e.items():
            out = out + self._g_mono(mono) * c
        return out

    def x_of(self, e: NCElem) -> NCElem:
        out = self.algebra.zero()
        for mono, c in e.items():
            out = out + self._x_mono(mono) * c
        return out

    def act(self, h: TaftMonomial, e: NCElem) -> NCElem:
        l, k = h
        for _ in range(k):
            e = self.x_of(e)
        for _ in range(l % self.n):
            e = self.g_of(e)
        return e

    def describe(self) -> Dict[str, Any]:
        return {
            "target": self.target,
            "n": self.n,
            "m": self.m,
            "k": self.k,
            "family": self.family,
            "lam": str(self.lam),
            "mu": str(self.mu),
            "eta": str(self.eta),
            "g": {name: str(img) for name, img in self.g_images.items()},
            "x": {name: str(img) for name, img in self.x_images.items()},
        }


def act(action: LinearAction, h: TaftMonomial, e: NCElem) -> NCElem:
    return action.act(h, e)


def _discrete_log(base: CycloElem, value: CycloElem, n: int) -> Optional[int]:
    power = CycloElem.rational(1, base.conductor)
    for k in range(n):
        if power == value:
            return k
        power = power * base
    return None


def make_action(
    target: str,
    n: int,
    m: Optional[int] = None,
    k: Optional[int] = None,
    eta=1,
    family: int = 1,
    mu: Optional[CycloElem] = None,
    lam: Optional[CycloElem] = None,
) -> LinearAction:
    """Build one of the standard linear actions of H_n(lam).

    With no overrides mu is zeta_n^(n/m) and lam is zeta_n (or mu^k when k is given);
    the weyl and quantum-matrix targets force lam = mu^-2 (family 1) or mu^2 (family 2).
    """
    if target not in config.TARGETS:
        raise UnsupportedTarget(f"unknown target {target!r}")
    if family not in (1, 2):
        raise InvalidAction(f"family must be 1 or 2, got {family}")
    if n < 2:
        raise InvalidAction(f"n must be > 1, got {n}")
    N = n

    if target == "polyring":
        mu = CycloElem.rational(1, N)
    elif mu is None:
        m = n if m is None else m
        if m < 1 or n % m:
            raise InvalidAction(f"mu of order {m} needs m | n, and {m} does not divide {n}")
        mu = CycloElem.zeta(N, n // m)
    else:
        mu = mu.embed(math.lcm(N, mu.conductor))
    m_actual = root_order(mu)
    if n % m_actual:
        raise InvalidAction(f"mu of order {m_actual} needs m | n")

    if target == "weyl":
        if n % 2 == 0 or m_actual != n:
            raise InvalidAction("the weyl target needs n odd and |mu| = n")
        if family == 1:
            k = -2 if k is None else k
            if (k + 2) % n:
                raise InvalidAction(f"weyl family (1) needs k = -2 mod n, got {k}")
        else:
            k = 2 if k is None else k
            if (k - 2) % n:
                raise InvalidAction(f"weyl family (2) needs k = 2 mod n, got {k}")
        lam = mu ** k
    elif target == "qmatrices":
        if n % 2 == 0 or m_actual != n:
            raise InvalidAction("the quantum-matrix target needs n odd and |mu| = n")
        k = -2 if k is None else k
        if (k + 2) % n:
            raise InvalidAction(f"quantum matrices need k = -2 mod n, got {k}")
        lam = mu ** k
    elif target == "affine3":
        if n != 3 or m_actual != 3:
            raise InvalidAction("the quantum affine 3-space action is defined for n = |mu| = 3")
        k = 1 if k is None else k
        lam = mu ** k
    elif lam is None:
        if k is not None:
            if m_actual != n:
                raise InvalidAction("lam = mu^k needs |mu| = n")
            lam = mu ** k
        else:
            lam = CycloElem.zeta(N, 1)
    if root_order(lam) != n:
        raise InvalidAction(f"lam = {lam} is not a primitive {n}-th root of unity")
    if k is None and m_actual == n:
        k = _discrete_log(mu, lam, n)

    eta = eta if isinstance(eta, CycloElem) else CycloElem.rational(eta, N)
    if not eta:
        raise InvalidAction("eta must be nonzero")

    if target == "qplane":
        A = quantum_plane(mu)
    elif target == "weyl":
        A = quantum_weyl(mu)
    elif target == "polyring":
        A = polynomial_ring(("u", "v"), N)
    elif target == "affine3":
        A = quantum_affine3(mu, lam)
    else:
        A = quantum_matrices(mu)
    gen = A.gen
    zero = A.zero()

    if target == "affine3":
        g_images = {"u": gen("u") * mu, "v": gen("v") * (lam * mu), "w": gen("w") * (lam * lam * mu)}
        x_images = {"u": zero, "v": gen("u") * eta, "w": gen("v") * eta}
    elif target == "qmatrices":
        inv = mu ** -1
        g_images = {"a": gen("a") * mu, "b": gen("b") * mu, "c": gen("c") * inv, "d": gen("d") * inv}
        x_images = {"a": zero, "b": zero, "c": gen("a") * eta, "d": gen("b") * eta}
    elif family == 1:
        g_images = {"u": gen("u") * mu, "v": gen("v") * (lam * mu)}
        x_images = {"u": zero, "v": gen("u") * eta}
    else:
        g_images = {"u": gen("u") * (lam * mu ** -1), "v": gen("v") * mu ** -1}
        x_images = {"u": gen("v") * eta, "v": zero}

    action = LinearAction(target, n, lam, mu, k, eta, family, A, g_images, x_images)
    log.debug("action %s", action.describe())
    return action


def verify_module_algebra(action: LinearAction, degree_bound: int) -> VerificationReport:
    if degree_bound < 2:
        raise ValueError("degree_bound must be at least 2")
    A = action.algebra
    checks: Dict[str, bool] = {}
    failure: Optional[str] = None

    def note(name: str, ok: bool, detail: str) -> None:
        nonlocal failure
        checks[name] = checks.get(name, True) and ok
        if not ok and failure is None:
            failure = detail

    note("unit", action.g_of(A.one()) == A.one() and action.x_of(A.one()).is_zero(), "h(1) != eps(h) 1")

    for name in A.generators:
        r = A.gen(name)
        image = r
        for _ in range(action.n):
            image = action.g_of(image)
        note("g^n_identity", image == r, f"g^n({name}) != {name}")
        note("x^n_zero", action.act((0, action.n), r).is_zero(), f"x^n({name}) != 0")
        lhs = action.x_of(action.g_of(r))
        rhs = action.g_of(action.x_of(r)) * action.lam
        note("taft_relation", lhs == rhs, f"x(g({name})) != lam g(x({name}))")

    monos = A.monomials(degree_bound)
    for a in monos:
        ra = A.monomial(a)
        da = A.weight_of(a)
        for b in monos:
            if da + A.weight_of(b) > degree_bound:
                continue
            rb = A.monomial(b)
            prod = ra * rb
            ok_g = action.g_of(prod) == action.g_of(ra) * action.g_of(rb)
            note("g_multiplicative", ok_g, f"g({ra} * {rb})")
            ok_x = action.x_of(prod) == action.g_of(ra) * action.x_of(rb) + action.x_of(ra) * rb
            note("x_leibniz", ok_x, f"x({ra} * {rb})")
    passed = all(checks.values())
    return VerificationReport(f"{action.target} family {action.family}", passed, checks, failure)


# classification


@dataclass(frozen=True)
class ActionFamily:
    family: int
    constraint: str
    action: LinearAction

    def as_dict(self) -> Dict[str, Any]:
        return {"family": self.family, "constraint": self.constraint, "eta": "free", "representative": self.action.describe()}


@dataclass(frozen=True)
class Classification:
    n: int
    m: int
    target: str
    families: List[ActionFamily]
    derivation: List[str]
    nondiagonal_excluded: Optional[bool]

    def as_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "m": self.m,
            "target": self.target,
            "families": [f.as_dict() for f in self.families],
            "derivation": list(self.derivation),
            "nondiagonal_excluded": self.nondiagonal_excluded,
        }


_a1, _a2, _b1, _b2 = sp.symbols("a1 a2 b1 b2")
_alpha, _beta, _lam, _mu, _kappa = sp.symbols("alpha beta lam mu kappa")


def _relation_image(G: sp.Matrix, X: sp.Matrix, mu, kappa) -> Dict[str, sp.Expr]:
    """Coefficients of x(uv - mu vu - kappa) on u^2, uv, v^2, 1 with vu = mu^-1 (uv - kappa)."""

    def prod(l1, l2):
        p, r = l1
        s, t = l2
        return {"u^2": p * s, "uv": p * t + r * s / mu, "v^2": r * t, "1": -r * s * kappa / mu}

    def column(M, j):
        return (M[0, j], M[1, j])

    u, v = (1, 0), (0, 1)
    x_uv = [prod(column(G, 0), column(X, 1)), prod(column(X, 0), v)]
    x_vu = [prod(column(G, 1), column(X, 0)), prod(column(X, 1), u)]
    return {
        key: sp.expand(sum(d[key] for d in x_uv) - mu * sum(d[key] for d in x_vu))
        for key in ("u^2", "uv", "v^2", "1")
    }


def diagonal_reduction(kappa: int) -> List[str]:
    """Re-derive the two diagonal families from x g = lam g x, x^2 = 0 and the relation."""
    lines: List[str] = []
    X = sp.Matrix([[_a1, _b1], [_a2, _b2]])
    G = sp.diag(_alpha, _beta)
    E = X * G - _lam * G * X
    for entry, var in ((E[0, 0], _a1), (E[1, 1], _b2)):
        cofactor = sp.factor(sp.cancel(entry / var))
        if cofactor.has(var):
            raise RuntimeError(f"unexpected entry {entry} of x g - lam g x")
        lines.append(f"{sp.factor(entry)} = 0 with {cofactor} != 0 gives {var} = 0")
    X0 = X.subs({_a1: 0, _b2: 0})
    square = sp.expand(X0 * X0)
    lines.append(f"x^2 = {square[0, 0]} * I, so a2*b1 = 0")

    for zero_var, free_var, branch in ((_a2, _b1, 1), (_b1, _a2, 2)):
        Xb = X0.subs(zero_var, 0)
        image = _relation_image(G, Xb, _mu, kappa)
        nonzero = {key: sp.factor(val) for key, val in image.items() if sp.simplify(val) != 0}
        solved: Dict[sp.Symbol, sp.Expr] = {}

        def absorb(expr: sp.Expr) -> None:
            eq = sp.cancel(expr.subs(solved) / free_var)
            unknown = next((sym for sym in (_alpha, _beta) if eq.has(sym)), None)
            if unknown is None:
                return
            for sol in sp.solve(eq, unknown, dict=True):
                solved.update({key: sp.simplify(val) for key, val in sol.items()})

        for val in nonzero.values():
            absorb(val)
        for entry in sp.expand(Xb * G - _lam * G * Xb):
            absorb(entry)
        images = ", ".join(f"{key} = {val}" for key, val in sorted(solved.items(), key=lambda kv: str(kv[0])))
        lines.append(f"branch {zero_var} = 0: relation image {nonzero} forces {images} (family {branch})")
    return lines


def nondiagonal_excluded(n: int, kappa: int) -> Tuple[bool, List[str]]:
    """For mu = -1, show g(u) = alpha v, g(v) = beta u admits no nonzero x."""
    s, t = sp.symbols("s t")
    X = sp.Matrix([[_a1, _b1], [_a2, _b2]])
    G = sp.Matrix([[0, _beta], [_alpha, 0]])
    lam_poly = sp.cyclotomic_poly(n, _lam)
    equations = list(X * G - _lam * G * X)
    equations += list(_relation_image(G, X, -1, kappa).values())
    equations += list(X * X)
    equations += [lam_poly, s * _alpha * _beta - 1]
    gens = (_a1, _a2, _b1, _b2, _alpha, _beta, _lam, s, t)
    lines = []
    excluded = True
    for var in (_a1, _a2, _b1, _b2):
        basis = sp.groebner([sp.expand(e) for e in equations] + [t * var - 1], *gens, order="grevlex")
        inconsistent = list(basis.exprs) == [1]
        lines.append(f"non-diagonal g with {var} != 0: {'inconsistent' if inconsistent else 'consistent'}")
        excluded = excluded and inconsistent
    return excluded, lines


def classify_linear_actions(n: int, mu: CycloElem, target: str) -> Classification:
    m = root_order(mu)
    if m < 2:
        raise ValueError("mu must have order greater than 1")
    if target not in ("qplane", "weyl"):
        raise UnsupportedTarget(f"classification covers qplane and weyl, not {target}")
    kappa = 1 if target == "weyl" else 0
    derivation = diagonal_reduction(kappa)
    excluded: Optional[bool] = None
    if mu == -1 and n % 2 == 0:
        excluded, lines = nondiagonal_excluded(n, kappa)
        derivation.extend(lines)

    families: List[ActionFamily] = []
    if n % m == 0:
        if target == "qplane":
            families.append(ActionFamily(1, "g(u)=mu u, g(v)=lam mu v, x(u)=0, x(v)=eta u",
                                         make_action(target, n, mu=mu, family=1)))
            families.append(ActionFamily(2, "g(u)=lam mu^-1 u, g(v)=mu^-1 v, x(u)=eta v, x(v)=0",
                                         make_action(target, n, mu=mu, family=2)))
        elif m == n and n % 2 == 1:
            families.append(ActionFamily(1, "lam = mu^-2", make_action(target, n, mu=mu, family=1)))
            families.append(ActionFamily(2, "lam = mu^2", make_action(target, n, mu=mu, family=2)))
        else:
            derivation.append("weyl relation forces lam = mu^-2 (or mu^2), which is not primitive of order n")
    log.debug("classified n=%d m=%d %s: %d families", n, m, target, len(families))
    return Classification(n, m, target, families, derivation, excluded)


# smash products


@dataclass(frozen=True)
class SmashProduct:
    action: LinearAction
    presentation: Presentation

    @property
    def algebra_generators(self) -> Tuple[str, ...]:
        return self.action.algebra.generators

    def lift(self, r: NCElem) -> NCElem:
        """r # 1."""
        extra = (0, 0)
        return self.presentation.element({mono + extra: c for mono, c in r.items()})

    def hopf(self, l: int, k: int, coeff=1) -> NCElem:
        """1 # g^l x^k."""
        size = len(self.algebra_generators)
        return self.presentation.monomial((0,) * size + (l, k), coeff)

    def split(self, z: NCElem) -> Dict[TaftMonomial, NCElem]:
        """z = sum r_{i,j} # g^i x^j."""
        A = self.action.algebra
        size = len(A.generators)
        parts: Dict[TaftMonomial, Dict[Monomial, CycloElem]] = {}
        for mono, c in z.items():
            parts.setdefault((mono[size], mono[size + 1]), {})[mono[:size]] = c
        return {key: A.element(terms) for key, terms in sorted(parts.items())}


def build_smash(action: LinearAction) -> SmashProduct:
    A = action.algebra
    names = A.generators + ("g", "x")
    size = len(A.generators)

    def terms(e: NCElem, g: int, x: int) -> List[Tuple[CycloElem, Tuple[int, ...]]]:
        return [(c, mono + (g, x)) for mono, c in e.items()]

    rules: Dict[Tuple[str, str], list] = {}
    for (later, earlier), rhs in A.swap_rules.items():
        rules[(later, earlier)] = terms(rhs, 0, 0)
    for name in A.generators:
        rules[("g", name)] = terms(action.g_images[name], 1, 0)
        rules[("x", name)] = terms(action.g_images[name], 0, 1) + terms(action.x_images[name], 0, 0)
    rules[("x", "g")] = [(action.lam, (0,) * size + (1, 1))]
    weights = dict(zip(A.generators, A.weights))
    weights.update({"g": 0, "x": 0})
    P = Presentation(
        f"{A.name}#H{action.n}",
        names,
        A.ring,
        swap_rules=rules,
        power_rules={**A.power_rules, "g": (action.n, 1), "x": (action.n, 0)},
        weights=weights,
    )
    report = verify_confluence(P)
    if not report.passed:
        raise InvalidAction(f"the action does not define a smash product: overlap {report.failure['overlap']}")
    return SmashProduct(action, P)


def is_prime_smash(s: SmashProduct) -> Tuple[bool, Optional[NCElem]]:
    """Look for 0 != a in A^<x> with g(a) = lam^(n-1) a among u^i v^(jn)."""
    action = s.action
    if action.target not in ("qplane", "weyl") or action.family != 1:
        raise UnsupportedTarget("primeness search covers the family (1) actions on qplane and weyl")
    A = action.algebra
    target = action.lam ** (action.n - 1)
    for j in (0, action.n):
        for i in range(2 * action.n + 1):
            a = A.monomial({"u": i, "v": j})
            if action.x_of(a).is_zero() and action.g_of(a) == a * target:
                return True, a
    return False, None


def action_to_dict(action: LinearAction) -> Dict[str, Any]:
    return {
        "target": action.target,
        "n": action.n,
        "k": action.k,
        "family": action.family,
        "lam": action.lam.to_json(),
        "mu": action.mu.to_json(),
        "eta": action.eta.to_json(),
        "algebra": presentation_to_dict(action.algebra),
        "g_images": {name: element_to_list(img) for name, img in action.g_images.items()},
        "x_images": {name: element_to_list(img) for name, img in action.x_images.items()},
    }


def modify_action(
    action: LinearAction,
    g_images: Optional[Dict[str, NCElem]] = None,
    x_images: Optional[Dict[str, NCElem]] = None,
) -> LinearAction:
    """Same action with some generator images replaced (used to build corrupted inputs)."""
    return replace(
        action,
        g_images={**action.g_images, **(g_images or {})},
        x_images={**action.x_images, **(x_images or {})},
    )
