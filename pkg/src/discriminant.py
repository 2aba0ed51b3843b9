"""Regular traces and discriminants over central polynomial subalgebras."""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import sympy as sp

from . import config
from .commpoly import CommPoly
from .exactfield import CycloElem
from .hopfact import build_smash, make_action
from .linalg import det, det_bareiss, interpolate
from .ncpoly import Monomial, NCElem, Presentation, ore_family, polynomial_ring, specialize
from .poisson import prop33_coefficients

log = logging.getLogger(__name__)


class SingularTraceForm(ArithmeticError):
    pass


@dataclass(frozen=True)
class CentralBasisDecomposition:
    """A free module over k[z_i], z_i = (generator)^period, with a monomial basis."""

    presentation: Presentation
    central_vars: Tuple[Tuple[str, str], ...]
    period: int
    module_basis: Tuple[Monomial, ...]

    @property
    def rank(self) -> int:
        return len(self.module_basis)

    @property
    def variables(self) -> Tuple[str, ...]:
        return tuple(z for z, _ in self.central_vars)

    @property
    def conductor(self) -> int:
        return self.presentation.ring.conductor

    def central_positions(self) -> Dict[int, int]:
        """generator index -> central variable index"""
        return {self.presentation.index(g): i for i, (_, g) in enumerate(self.central_vars)}


def central_basis(presentation: Presentation, central_vars: Sequence[Tuple[str, str]], period: int) -> CentralBasisDecomposition:
    central = {g for _, g in central_vars}
    powers = presentation.power_rules
    ranges = []
    for g in presentation.generators:
        if g in central:
            ranges.append(range(period))
        elif g in powers:
            ranges.append(range(powers[g][0]))
        else:
            raise ValueError(f"{g} is neither central-periodic nor truncated in {presentation.name}")
    basis = tuple(sorted(itertools.product(*ranges), key=lambda m: (sum(m), tuple(-e for e in m))))
    return CentralBasisDecomposition(presentation, tuple(central_vars), period, basis)


def rmu_decomposition(n: int, k: int, target: str = "qplane") -> CentralBasisDecomposition:
    """R_mu = R / (q - mu) over C_mu = k[u^n, v^n, x^n]."""
    P = specialize(ore_family(k, target), CycloElem.zeta(n))
    return central_basis(P, (("z1", "u"), ("z2", "v"), ("z3", "x")), n)


def smash_decomposition(n: int, target: str = "qplane", k: Optional[int] = None) -> CentralBasisDecomposition:
    """A # H_n over k[u^n, v^n] (m = n, family (1))."""
    s = build_smash(make_action(target, n, k=k))
    return central_basis(s.presentation, (("z1", "u"), ("z2", "v")), n)


def trivial_decomposition() -> CentralBasisDecomposition:
    return central_basis(polynomial_ring(("u",)), (("z1", "u"),), 1)


def _decompose_terms(terms: Mapping[Monomial, CycloElem], d: CentralBasisDecomposition) -> Dict[Monomial, CommPoly]:
    positions = d.central_positions()
    size = len(d.central_vars)
    grouped: Dict[Monomial, Dict[Tuple[int, ...], CycloElem]] = {}
    for mono, c in terms.items():
        central = [0] * size
        rest = list(mono)
        for gi, zi in positions.items():
            central[zi], rest[gi] = divmod(mono[gi], d.period)
        bucket = grouped.setdefault(tuple(rest), {})
        key = tuple(central)
        bucket[key] = bucket[key] + c if key in bucket else c
    return {b: CommPoly(d.variables, t, d.conductor) for b, t in grouped.items() if any(t.values())}


def decompose_over_center(e: NCElem, d: CentralBasisDecomposition) -> Dict[Monomial, CommPoly]:
    """e = sum_b p_b(z) * b over the module basis."""
    if e.presentation is not d.presentation:
        raise ValueError(f"{e} does not live in {d.presentation.name}")
    return {b: p for b, p in _decompose_terms(dict(e.items()), d).items() if p}


def _monomial_trace(mono: Monomial, d: CentralBasisDecomposition) -> CommPoly:
    total = CommPoly(d.variables, {}, d.conductor)
    for b in d.module_basis:
        image = _decompose_terms(d.presentation.multiply_monomials(mono, b), d)
        if b in image:
            total = total + image[b]
    return total


def regular_trace(e: NCElem, d: CentralBasisDecomposition) -> CommPoly:
    """Trace of left multiplication by e on the free module."""
    total = CommPoly(d.variables, {}, d.conductor)
    for b, poly in decompose_over_center(e, d).items():
        trace_b = _monomial_trace(b, d)
        if trace_b:
            total = total + poly * trace_b
    return total


@dataclass(frozen=True)
class TraceForm:
    variables: Tuple[str, ...]
    matrix: Tuple[Tuple[CommPoly, ...], ...]

    @property
    def size(self) -> int:
        return len(self.matrix)

    def is_symmetric(self) -> bool:
        return all(
            self.matrix[i][j] == self.matrix[j][i]
            for i in range(self.size)
            for j in range(i + 1, self.size)
        )

    def degree_bounds(self) -> List[int]:
        """Per-variable upper bounds for the degree of the determinant."""
        bounds = []
        for v in self.variables:
            degs = [[entry.degree(v) if entry else 0 for entry in row] for row in self.matrix]
            by_rows = sum(max(row) for row in degs)
            by_cols = sum(max(col) for col in zip(*degs))
            bounds.append(min(by_rows, by_cols))
        return bounds


def trace_form(d: CentralBasisDecomposition) -> TraceForm:
    traces = {b: _monomial_trace(b, d) for b in d.module_basis}
    zero = CommPoly(d.variables, {}, d.conductor)
    rows = []
    for bi in d.module_basis:
        row = []
        for bj in d.module_basis:
            entry = zero
            for b, poly in _decompose_terms(d.presentation.multiply_monomials(bi, bj), d).items():
                if traces[b]:
                    entry = entry + poly * traces[b]
            row.append(entry)
        rows.append(tuple(row))
    log.debug("trace form of %s: rank %d", d.presentation.name, d.rank)
    return TraceForm(d.variables, tuple(rows))


def _interpolated_det(form: TraceForm, conductor: int) -> CommPoly:
    bounds = form.degree_bounds()
    grids = [list(range(1, b + 2)) for b in bounds]
    log.info("interpolating determinant: degree bounds %s", bounds)

    def value_at(point: Tuple[int, ...]) -> CycloElem:
        values = dict(zip(form.variables, point))
        return det([[entry.evaluate(values) for entry in row] for row in form.matrix])

    return interpolate(form.variables, grids, value_at, conductor)


def discriminant(d: CentralBasisDecomposition, method: str = "auto", form: Optional[TraceForm] = None) -> CommPoly:
    """det(tr(b_i b_j)), divided by its lex-leading coefficient."""
    if method not in ("auto", "bareiss", "interpolate"):
        raise ValueError(f"unknown determinant method {method!r}")
    form = form or trace_form(d)
    if method == "auto":
        method = "bareiss" if form.size <= config.BAREISS_MAX_RANK else "interpolate"
    log.info("discriminant of %s: rank %d via %s", d.presentation.name, form.size, method)
    if method == "bareiss":
        value = det_bareiss([list(row) for row in form.matrix])
    else:
        value = _interpolated_det(form, d.conductor)
    if not value:
        raise SingularTraceForm(f"the trace form of {d.presentation.name} is singular")
    return value.unit_normalized()


def equal_up_to_unit(p: CommPoly, q: CommPoly) -> bool:
    if not p or not q:
        return not p and not q
    if p.variables != q.variables:
        return False
    return p.unit_normalized() == q.unit_normalized()


def degree_census(d: CentralBasisDecomposition, weights: Mapping[str, int]) -> int:
    w = [weights.get(g, 0) for g in d.presentation.generators]
    return sum(d.presentation.weight_of(b, w) for b in d.module_basis)


def exponent_alpha(n: int) -> int:
    return n * n * (n - 1)


def expected_rmu(n: int, k: int, target: str = "qplane") -> Dict[str, CommPoly]:
    """Closed forms for d(R_mu / C_mu); the weyl case carries both printed variants."""
    case = "plane" if target == "qplane" else "weyl"
    coeffs = prop33_coefficients(n, k, case)
    z1, z2, z3 = CommPoly.gens(("z1", "z2", "z3"), n)
    alpha = exponent_alpha(n)
    if case == "plane":
        return {"statement": z1 ** alpha * (z2 * z3 + z1 * coeffs.theta) ** alpha}
    head = z1 * z2 * z3 + z1 * z1 * coeffs.theta
    return {
        "statement": (head + z3 * (coeffs.b2 / coeffs.b1)) ** alpha,
        "proof": (head + z3) ** alpha,
    }


def expected_smash(n: int) -> CommPoly:
    """u^(2 n^4 (n - 1)) = z1^(2 n^3 (n - 1))."""
    z1 = CommPoly.variable(("z1", "z2"), "z1", n)
    return z1 ** (2 * n ** 3 * (n - 1))


def _to_sympy(p: CommPoly) -> Optional[sp.Expr]:
    if not all(c.is_rational() for _, c in p.items()):
        return None
    symbols = sp.symbols(" ".join(p.variables))
    if not isinstance(symbols, tuple):
        symbols = (symbols,)
    expr = sp.Integer(0)
    for exps, c in p.items():
        r = c.to_rational()
        term = sp.Rational(int(r.numerator), int(r.denominator))
        for s, e in zip(symbols, exps):
            term = term * s ** e
        expr = expr + term
    return expr


def azumaya_report(disc: CommPoly) -> Dict[str, Any]:
    """The zero locus of the discriminant; its complement is the Azumaya locus."""
    report: Dict[str, Any] = {"discriminant": str(disc)}
    if disc.is_monomial():
        (exps, _), = disc.items()
        vanishing = [v for v, e in zip(disc.variables, exps) if e]
        report["zero_locus"] = " or ".join(f"{v} = 0" for v in vanishing) or "empty"
        report["factors"] = {v: e for v, e in zip(disc.variables, exps) if e}
        return report
    expr = _to_sympy(disc)
    if expr is None:
        report["zero_locus"] = f"{disc} = 0"
        return report
    _, factors = sp.factor_list(expr)
    report["factors"] = {str(f): int(e) for f, e in factors}
    report["zero_locus"] = " or ".join(f"{f} = 0" for f, _ in factors)
    return report
