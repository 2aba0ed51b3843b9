"""Degree-truncated weight spaces, invariants, fixed rings and centers.

Every span here is a finite-dimensional slice: the elements of filtration degree <= D
of an (infinite-dimensional) subspace, found by exact elimination.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from .exactfield import CycloElem
from .hopfact import LinearAction, SmashProduct
from .linalg import kernel, rref
from .ncpoly import Monomial, NCElem, Presentation, commutator, format_monomial

log = logging.getLogger(__name__)


class NotCentral(ValueError):
    pass


def _order_key(P: Presentation, mono: Monomial) -> Tuple[int, Tuple[int, ...]]:
    return (P.weight_of(mono), tuple(-e for e in mono))


@dataclass(frozen=True)
class GradedSpan:
    """Span of elements of degree <= degree_bound, kept in reduced echelon form."""

    presentation: Presentation
    degree_bound: int
    basis: Tuple[NCElem, ...] = field(default_factory=tuple)

    @classmethod
    def from_elements(cls, presentation: Presentation, degree_bound: int, elements: Sequence[NCElem]) -> "GradedSpan":
        monos = sorted({m for e in elements for m, _ in e.items()}, key=lambda m: _order_key(presentation, m))
        column = {m: i for i, m in enumerate(monos)}
        rows = [{column[m]: c for m, c in e.items()} for e in elements]
        reduced = rref(rows)
        basis = tuple(presentation.element({monos[c]: v for c, v in row.items()}) for _, row in reduced)
        return cls(presentation, degree_bound, basis)

    @classmethod
    def of_monomials(cls, presentation: Presentation, degree_bound: int, monos: Sequence[Any]) -> "GradedSpan":
        return cls.from_elements(presentation, degree_bound, [presentation.monomial(m) for m in monos])

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def _same_space(self, other: "GradedSpan") -> None:
        if other.presentation is not self.presentation:
            raise ValueError(f"spans live in {self.presentation.name} and {other.presentation.name}")

    def contains(self, e: NCElem) -> bool:
        if e.is_zero():
            return True
        return GradedSpan.from_elements(self.presentation, self.degree_bound, list(self.basis) + [e]).dimension == self.dimension

    def contains_span(self, other: "GradedSpan") -> bool:
        self._same_space(other)
        return all(self.contains(b) for b in other.basis)

    def intersect(self, other: "GradedSpan") -> "GradedSpan":
        self._same_space(other)
        images = [dict(b.items()) for b in self.basis] + [dict((-b).items()) for b in other.basis]
        size = len(self.basis)
        common = []
        for rel in kernel(images):
            e = self.presentation.zero()
            for j, c in rel.items():
                if j < size:
                    e = e + self.basis[j] * c
            if e:
                common.append(e)
        return GradedSpan.from_elements(self.presentation, min(self.degree_bound, other.degree_bound), common)

    def leading_monomials(self) -> List[Monomial]:
        """Pivot monomial of each basis element."""
        key = lambda m: _order_key(self.presentation, m)
        return [min((m for m, _ in b.items()), key=key) for b in self.basis]

    def is_monomial_span(self) -> bool:
        return all(len(b) == 1 for b in self.basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedSpan) or other.presentation is not self.presentation:
            return False
        return self.basis == other.basis

    __hash__ = None

    def to_list(self) -> List[str]:
        return [str(b) for b in self.basis]

    def describe(self) -> Dict[str, Any]:
        gens = self.presentation.generators
        return {
            "presentation": self.presentation.name,
            "degree_bound": self.degree_bound,
            "dimension": self.dimension,
            "basis": self.to_list(),
            "leading": [format_monomial(gens, m) for m in self.leading_monomials()],
        }


def _slice(action: LinearAction, D: int) -> List[NCElem]:
    if D < 0:
        raise ValueError(f"degree bound must be >= 0, got {D}")
    A = action.algebra
    return [A.monomial(m) for m in A.monomials(D)]


def _kernel_span(P: Presentation, D: int, sources: List[NCElem], images: List[Dict[Any, CycloElem]]) -> GradedSpan:
    found = []
    for rel in kernel(images):
        e = P.zero()
        for j, c in rel.items():
            e = e + sources[j] * c
        found.append(e)
    return GradedSpan.from_elements(P, D, found)


def weight_space(action: LinearAction, k: int, D: int) -> GradedSpan:
    """R(k) = {r : g(r) = lam^k r} in degree <= D."""
    monos = _slice(action, D)
    eigen = action.lam ** k
    images = [dict((action.g_of(m) - m * eigen).items()) for m in monos]
    span = _kernel_span(action.algebra, D, monos, images)
    log.debug("weight space k=%d D=%d: dimension %d", k, D, span.dimension)
    return span


def x_invariants(action: LinearAction, D: int) -> GradedSpan:
    monos = _slice(action, D)
    images = [dict(action.x_of(m).items()) for m in monos]
    span = _kernel_span(action.algebra, D, monos, images)
    log.debug("x-invariants D=%d: dimension %d", D, span.dimension)
    return span


def fixed_ring(action: LinearAction, D: int) -> GradedSpan:
    return x_invariants(action, D).intersect(weight_space(action, 0, D))


def center_truncated(
    s: Union[SmashProduct, Presentation],
    D: int,
    weights: Optional[Sequence[int]] = None,
) -> GradedSpan:
    """Elements of degree <= D commuting with every generator."""
    if D < 0:
        raise ValueError(f"degree bound must be >= 0, got {D}")
    P = s.presentation if isinstance(s, SmashProduct) else s
    monos = [P.monomial(m) for m in P.monomials(D, weights)]
    gens = [P.gen(g) for g in P.generators]
    images: List[Dict[Any, CycloElem]] = []
    for m in monos:
        image: Dict[Any, CycloElem] = {}
        for i, y in enumerate(gens):
            for mono, c in commutator(m, y).items():
                image[(i, mono)] = c
        images.append(image)
    log.debug("center of %s: %d monomials, %d generators", P.name, len(monos), len(gens))
    return _kernel_span(P, D, monos, images)


@dataclass(frozen=True)
class CenterRelationsReport:
    passed: bool
    components: Dict[Tuple[int, int], str]
    checks: List[Dict[str, Any]]

    def as_dict(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "components": {f"{i},{j}": r for (i, j), r in self.components.items()},
            "checks": list(self.checks),
        }


def check_center_relations(s: SmashProduct, z: NCElem) -> CenterRelationsReport:
    """For central z = sum r_ij # g^i x^j: r_ij in R(j) and x(r_ij) = (1 - lam^(i+j-1)) r_i,j-1."""
    P = s.presentation
    for name in P.generators:
        if commutator(z, P.gen(name)):
            raise NotCentral(f"{z} does not commute with {name}")
    action = s.action
    A = action.algebra
    parts = s.split(z)
    checks: List[Dict[str, Any]] = []
    for i in range(action.n):
        for j in range(action.n):
            r = parts.get((i, j), A.zero())
            below = parts.get((i, j - 1), A.zero())
            if r.is_zero() and below.is_zero():
                continue
            checks.append(_relation_check(action, i, j, r, below))
    passed = all(c["in_weight_space"] and c["x_relation"] for c in checks)
    return CenterRelationsReport(passed, {key: str(r) for key, r in parts.items()}, checks)


def _relation_check(action: LinearAction, i: int, j: int, r: NCElem, below: NCElem) -> Dict[str, Any]:
    in_weight = action.g_of(r) == r * action.lam ** j
    expected = below * (1 - action.lam ** (i + j - 1)) if j > 0 else action.algebra.zero()
    return {"i": i, "j": j, "in_weight_space": in_weight, "x_relation": action.x_of(r) == expected}


def g_powers_nontrivial_on(action: LinearAction, generator: str = "u") -> bool:
    """No power g^i with 0 < i < n fixes the generator."""
    r = action.algebra.gen(generator)
    image = r
    for _ in range(1, action.n):
        image = action.g_of(image)
        if image == r:
            return False
    return True
