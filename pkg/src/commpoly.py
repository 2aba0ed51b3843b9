"""Commutative polynomials with cyclotomic coefficients.

A ``CommPoly`` wraps a sympy ``PolyElement`` of ``number_field(N)[variables]`` in lex
order, first variable most significant. Coefficients go in and come out as
``CycloElem``; polynomials with different conductors meet in Q(zeta_lcm).
"""
from __future__ import annotations

import math
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from sympy.polys.orderings import lex
from sympy.polys.rings import PolyRing

from .exactfield import CycloElem, NotDivisible, as_cyclo, from_domain, number_field, to_domain

Exps = Tuple[int, ...]


@lru_cache(maxsize=None)
def sympy_ring(variables: Tuple[str, ...], conductor: int) -> PolyRing:
    return PolyRing(variables, number_field(conductor), lex)


class CommPoly:
    __slots__ = ("variables", "conductor", "_poly")

    def __init__(self, variables: Sequence[str], terms: Optional[Mapping[Exps, object]] = None, conductor: int = 1):
        self.variables: Tuple[str, ...] = tuple(variables)
        cleaned: Dict[Exps, CycloElem] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(self.variables) or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for variables {self.variables}")
            c = as_cyclo(c, conductor)
            cleaned[exps] = cleaned[exps] + c if exps in cleaned else c
        conductor = math.lcm(conductor, *(c.conductor for c in cleaned.values()))
        self.conductor = conductor
        ring = sympy_ring(self.variables, conductor)
        self._poly = ring.from_dict({e: to_domain(c, conductor) for e, c in cleaned.items() if c})

    @classmethod
    def _wrap(cls, variables: Tuple[str, ...], poly, conductor: int) -> "CommPoly":
        obj = cls.__new__(cls)
        obj.variables = variables
        obj.conductor = conductor
        obj._poly = poly
        return obj

    @classmethod
    def constant(cls, variables: Sequence[str], value=1, conductor: int = 1) -> "CommPoly":
        return cls(variables, {(0,) * len(variables): value}, conductor)

    @classmethod
    def variable(cls, variables: Sequence[str], name: str, conductor: int = 1) -> "CommPoly":
        exps = [0] * len(variables)
        exps[list(variables).index(name)] = 1
        return cls(variables, {tuple(exps): 1}, conductor)

    @classmethod
    def gens(cls, variables: Sequence[str], conductor: int = 1) -> List["CommPoly"]:
        return [cls.variable(variables, v, conductor) for v in variables]

    def items(self) -> List[Tuple[Exps, CycloElem]]:
        return [(e, from_domain(c, self.conductor)) for e, c in self._poly.items()]

    def terms(self) -> List[Tuple[Exps, CycloElem]]:
        return sorted(self.items(), key=lambda t: t[0], reverse=True)

    def coefficient(self, exps: Sequence[int]) -> CycloElem:
        c = self._poly.get(tuple(exps))
        if c is None:
            return CycloElem.rational(0, self.conductor)
        return from_domain(c, self.conductor)

    def is_zero(self) -> bool:
        return not self._poly

    def __bool__(self) -> bool:
        return bool(self._poly)

    def __len__(self) -> int:
        return len(self._poly)

    @classmethod
    def from_sympy_poly(cls, variables: Sequence[str], poly, conductor: int) -> "CommPoly":
        """Adopt an element of ``sympy_ring(variables, conductor)``."""
        return cls._wrap(tuple(variables), poly, conductor)

    def sympy_poly(self, conductor: Optional[int] = None):
        """The underlying sympy polynomial, over Q(zeta_conductor) when given."""
        if conductor is None or conductor == self.conductor:
            return self._poly
        ring = sympy_ring(self.variables, conductor)
        return ring.from_dict(
            {e: to_domain(from_domain(c, self.conductor), conductor) for e, c in self._poly.items()}
        )

    def _lift(self, other) -> "CommPoly":
        if isinstance(other, CommPoly):
            if other.variables != self.variables:
                raise ValueError(f"variable mismatch: {self.variables} vs {other.variables}")
            return other
        c = as_cyclo(other, self.conductor)
        return CommPoly.constant(self.variables, c, math.lcm(self.conductor, c.conductor))

    def _merge_conductor(self, other: "CommPoly") -> int:
        return math.lcm(self.conductor, other.conductor)

    def _align(self, other) -> Tuple[object, object, int]:
        other = self._lift(other)
        conductor = self._merge_conductor(other)
        return self.sympy_poly(conductor), other.sympy_poly(conductor), conductor

    def __add__(self, other) -> "CommPoly":
        a, b, conductor = self._align(other)
        return CommPoly._wrap(self.variables, a + b, conductor)

    __radd__ = __add__

    def __neg__(self) -> "CommPoly":
        return CommPoly._wrap(self.variables, -self._poly, self.conductor)

    def __sub__(self, other) -> "CommPoly":
        a, b, conductor = self._align(other)
        return CommPoly._wrap(self.variables, a - b, conductor)

    def __rsub__(self, other) -> "CommPoly":
        return (-self) + other

    def __mul__(self, other) -> "CommPoly":
        if not isinstance(other, CommPoly):
            c = as_cyclo(other, self.conductor)
            conductor = math.lcm(self.conductor, c.conductor)
            return CommPoly._wrap(self.variables, self.sympy_poly(conductor).mul_ground(to_domain(c, conductor)), conductor)
        a, b, conductor = self._align(other)
        return CommPoly._wrap(self.variables, a * b, conductor)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "CommPoly":
        if exponent < 0:
            raise ValueError("negative powers of polynomials are not polynomials")
        return CommPoly._wrap(self.variables, self._poly ** exponent, self.conductor)

    def __eq__(self, other) -> bool:
        try:
            a, b, _ = self._align(other)
        except (ValueError, TypeError):
            return False
        return a == b

    __hash__ = None

    def diff(self, name: str) -> "CommPoly":
        return CommPoly._wrap(self.variables, self._poly.diff(self.variables.index(name)), self.conductor)

    def leading(self) -> Tuple[Exps, CycloElem]:
        """Lexicographically largest term, first variable most significant."""
        if not self._poly:
            raise ValueError("the zero polynomial has no leading term")
        return self._poly.LM, from_domain(self._poly.LC, self.conductor)

    def divmod(self, divisor: "CommPoly") -> Tuple["CommPoly", "CommPoly"]:
        """Multivariate division by the lex leading term of ``divisor``."""
        a, b, conductor = self._align(divisor)
        if not b:
            raise ZeroDivisionError("division by the zero polynomial")
        quo, rem = a.div(b)
        return CommPoly._wrap(self.variables, quo, conductor), CommPoly._wrap(self.variables, rem, conductor)

    def exact_div(self, divisor) -> "CommPoly":
        quo, rem = self.divmod(divisor)
        if rem:
            raise NotDivisible(f"{divisor} does not divide {self}")
        return quo

    def is_divisible_by(self, divisor: "CommPoly") -> bool:
        return not self.divmod(divisor)[1]

    def evaluate(self, point: Union[Mapping[str, object], Sequence[object]]) -> CycloElem:
        if isinstance(point, Mapping):
            point = [point[v] for v in self.variables]
        values = [as_cyclo(p, self.conductor) for p in point]
        conductor = math.lcm(self.conductor, *(v.conductor for v in values))
        field = number_field(conductor)
        args = [to_domain(v, conductor) for v in values]
        total = field.zero
        for e, c in self.sympy_poly(conductor).items():
            term = c
            for v, k in zip(args, e):
                if k:
                    term = term * v ** k
            total = total + term
        return from_domain(total, conductor)

    def degree(self, name: str) -> int:
        i = self.variables.index(name)
        return max((e[i] for e in self._poly), default=0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self._poly), default=0)

    def weighted_degree(self, weights: Sequence[int]) -> int:
        return max((sum(w * k for w, k in zip(weights, e)) for e in self._poly), default=0)

    def is_monomial(self) -> bool:
        return len(self._poly) == 1

    def unit_normalized(self) -> "CommPoly":
        return CommPoly._wrap(self.variables, self._poly.monic(), self.conductor)

    def __repr__(self) -> str:
        return f"CommPoly({self})"

    def __str__(self) -> str:
        if not self._poly:
            return "0"
        parts = []
        for exps, c in self.terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, exps) if k
            )
            coeff = str(c)
            if not c.is_rational():
                coeff = f"({coeff})"
            if not mono:
                parts.append(coeff)
            elif coeff == "1":
                parts.append(mono)
            elif coeff == "-1":
                parts.append(f"-{mono}")
            else:
                parts.append(f"{coeff}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> List[Dict[str, object]]:
        return [{"exponents": list(e), "coeff": c.to_json()} for e, c in sorted(self.items(), key=lambda t: t[0])]
