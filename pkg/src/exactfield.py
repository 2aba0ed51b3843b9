"""Exact scalars: cyclotomic field elements and Laurent polynomials in q.

A ``CycloElem`` lives in Q(zeta_N) and is stored as its reduced residue modulo the
N-th cyclotomic polynomial, using sympy's dense univariate routines over ``QQ``.
Elements with different conductors are combined inside Q(zeta_lcm).
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Tuple, Union

from sympy import cyclotomic_poly as _sympy_cyclotomic_poly
from sympy import I, divisors, pi, totient
from sympy import exp as _sympy_exp
from sympy.polys.densearith import dup_add, dup_mul, dup_neg, dup_rem, dup_sub
from sympy.polys.densebasic import dup_strip
from sympy.polys.domains import QQ
from sympy.polys.euclidtools import dup_invert


class NotDivisible(ArithmeticError):
    pass


Rational = type(QQ(1))
RationalLike = Union[int, Fraction, "Rational"]


def to_rational(value) -> Rational:
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, str):
        num, _, den = value.partition("/")
        return QQ(int(num), int(den or 1))
    if isinstance(value, Rational):
        return value
    raise TypeError(f"cannot read {value!r} as a rational number")


def format_rational(value: Rational) -> str:
    num, den = int(value.numerator), int(value.denominator)
    return str(num) if den == 1 else f"{num}/{den}"


@lru_cache(maxsize=None)
def cyclotomic_poly(N: int) -> Tuple[Rational, ...]:
    """Coefficients of Phi_N over QQ, highest degree first."""
    if N < 1:
        raise ValueError(f"conductor must be positive, got {N}")
    poly = _sympy_cyclotomic_poly(N, polys=True)
    return tuple(QQ(int(c)) for c in poly.all_coeffs())


@lru_cache(maxsize=None)
def field_degree(N: int) -> int:
    return int(totient(N))


def _reduce(rep: List[Rational], N: int) -> Tuple[Rational, ...]:
    rep = dup_strip(rep)
    if len(rep) > field_degree(N):
        rep = dup_rem(rep, list(cyclotomic_poly(N)), QQ)
    return tuple(rep)


def _embed_rep(rep: Tuple[Rational, ...], source: int, target: int) -> Tuple[Rational, ...]:
    if source == target or len(rep) <= 1:
        return rep
    step = target // source
    # zeta_source = zeta_target ** step
    spread: List[Rational] = []
    for i, c in enumerate(rep):
        spread.append(c)
        if i < len(rep) - 1:
            spread.extend([QQ(0)] * (step - 1))
    return _reduce(spread, target)


class CycloElem:
    """Element of Q(zeta_N) in the power basis 1, zeta, ..., zeta^(phi(N)-1)."""

    __slots__ = ("conductor", "_rep")

    def __init__(self, conductor: int, rep: Iterable[Rational] = ()):
        if conductor < 1:
            raise ValueError(f"conductor must be positive, got {conductor}")
        self.conductor = conductor
        self._rep = _reduce([to_rational(c) for c in rep], conductor)

    @classmethod
    def _raw(cls, conductor: int, rep: Tuple[Rational, ...]) -> "CycloElem":
        obj = cls.__new__(cls)
        obj.conductor = conductor
        obj._rep = rep
        return obj

    @classmethod
    def rational(cls, value: RationalLike, conductor: int = 1) -> "CycloElem":
        c = to_rational(value)
        return cls._raw(conductor, (c,) if c else ())

    @classmethod
    def zeta(cls, conductor: int, power: int = 1) -> "CycloElem":
        power %= conductor
        return cls(conductor, [QQ(1)] + [QQ(0)] * power)

    @classmethod
    def from_coeffs(cls, conductor: int, coeffs: Iterable[RationalLike]) -> "CycloElem":
        """Build from power-basis coefficients, constant term first."""
        return cls(conductor, [to_rational(c) for c in reversed(list(coeffs))])

    @property
    def coeffs(self) -> Tuple[Rational, ...]:
        low_first = list(reversed(self._rep))
        low_first.extend([QQ(0)] * (field_degree(self.conductor) - len(low_first)))
        return tuple(low_first)

    def is_zero(self) -> bool:
        return not self._rep

    def __bool__(self) -> bool:
        return bool(self._rep)

    def is_rational(self) -> bool:
        return len(self._rep) <= 1

    def to_rational(self) -> Rational:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self._rep[0] if self._rep else QQ(0)

    def embed(self, conductor: int) -> "CycloElem":
        if conductor % self.conductor:
            raise ValueError(f"Q(zeta_{self.conductor}) does not embed in Q(zeta_{conductor})")
        return CycloElem._raw(conductor, _embed_rep(self._rep, self.conductor, conductor))

    def _coerce(self, other) -> Tuple["CycloElem", "CycloElem"]:
        if isinstance(other, CycloElem):
            if other.conductor == self.conductor:
                return self, other
            target = math.lcm(self.conductor, other.conductor)
            return self.embed(target), other.embed(target)
        try:
            return self, CycloElem.rational(to_rational(other), self.conductor)
        except TypeError:
            return NotImplemented, NotImplemented

    def __add__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        if len(a._rep) <= 1 and len(b._rep) <= 1:
            return CycloElem.rational((a._rep[0] if a._rep else 0) + (b._rep[0] if b._rep else 0), a.conductor)
        return CycloElem._raw(a.conductor, tuple(dup_add(list(a._rep), list(b._rep), QQ)))

    __radd__ = __add__

    def __neg__(self) -> "CycloElem":
        return CycloElem._raw(self.conductor, tuple(dup_neg(list(self._rep), QQ)))

    def __sub__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return CycloElem._raw(a.conductor, tuple(dup_sub(list(a._rep), list(b._rep), QQ)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        if not a._rep or not b._rep:
            return CycloElem._raw(a.conductor, ())
        if len(a._rep) == 1 and len(b._rep) == 1:
            return CycloElem._raw(a.conductor, (a._rep[0] * b._rep[0],))
        return CycloElem._raw(a.conductor, _reduce(dup_mul(list(a._rep), list(b._rep), QQ), a.conductor))

    __rmul__ = __mul__

    def inverse(self) -> "CycloElem":
        if not self._rep:
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if len(self._rep) == 1:
            return CycloElem._raw(self.conductor, (QQ(1) / self._rep[0],))
        inv = dup_invert(list(self._rep), list(cyclotomic_poly(self.conductor)), QQ)
        return CycloElem._raw(self.conductor, _reduce(inv, self.conductor))

    def __truediv__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, exponent: int) -> "CycloElem":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = CycloElem.rational(1, self.conductor)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentQ):
            return NotImplemented
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return a._rep == b._rep

    def __hash__(self) -> int:
        # equal values across conductors must hash alike
        if len(self._rep) <= 1:
            return hash(self.to_rational())
        return hash("CycloElem")

    def __repr__(self) -> str:
        return f"CycloElem({self.conductor}, {self})"

    def __str__(self) -> str:
        if self.is_rational():
            return format_rational(self.to_rational())
        parts = []
        for power, c in enumerate(self.coeffs):
            if not c:
                continue
            base = "1" if power == 0 else f"z{self.conductor}" + (f"^{power}" if power > 1 else "")
            if power == 0:
                parts.append(format_rational(c))
            elif c == 1:
                parts.append(base)
            elif c == -1:
                parts.append(f"-{base}")
            else:
                parts.append(f"{format_rational(c)}*{base}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> Dict[str, object]:
        return {"conductor": self.conductor, "coeffs": [format_rational(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: Dict[str, object]) -> "CycloElem":
        return cls.from_coeffs(int(data["conductor"]), [to_rational(c) for c in data["coeffs"]])


def root_order(value: CycloElem) -> int:
    """Multiplicative order of a root of unity in Q(zeta_N)."""
    bound = math.lcm(2, value.conductor)
    for d in divisors(bound):
        if value ** int(d) == 1:
            return int(d)
    raise ValueError(f"{value} is not a root of unity")


def as_cyclo(value, conductor: int = 1) -> CycloElem:
    if isinstance(value, CycloElem):
        return value
    return CycloElem.rational(to_rational(value), conductor)


@lru_cache(maxsize=None)
def number_field(N: int):
    """sympy domain for Q(zeta_N): ``QQ`` when phi(N) = 1, else ``QQ<zeta_N>`` modulo Phi_N."""
    if field_degree(N) == 1:
        return QQ
    K = QQ.algebraic_field(_sympy_exp(2 * pi * I / N))
    if tuple(K.mod.to_list()) != cyclotomic_poly(N):
        raise RuntimeError(f"minimal polynomial of zeta_{N} is {K.mod.to_list()}, not Phi_{N}")
    return K


def to_domain(value: CycloElem, N: int):
    """``value`` as an element of ``number_field(N)``; N must be a multiple of its conductor."""
    rep = value.embed(N)._rep
    K = number_field(N)
    if K is QQ:
        return rep[0] if rep else QQ.zero
    return K.new(list(rep))


def from_domain(element, N: int) -> CycloElem:
    if number_field(N) is QQ:
        return CycloElem.rational(element, N)
    return CycloElem._raw(N, tuple(element.to_list()))


class LaurentQ:
    """Laurent polynomial in q with cyclotomic coefficients."""

    __slots__ = ("conductor", "_terms")

    def __init__(self, terms: Dict[int, object] | None = None, conductor: int = 1):
        cleaned: Dict[int, CycloElem] = {}
        for exp, c in (terms or {}).items():
            c = as_cyclo(c, conductor)
            if c:
                cleaned[int(exp)] = c
        self.conductor = conductor
        self._terms = cleaned

    @classmethod
    def q(cls, conductor: int = 1) -> "LaurentQ":
        return cls({1: CycloElem.rational(1, conductor)}, conductor)

    @classmethod
    def const(cls, value, conductor: int = 1) -> "LaurentQ":
        if isinstance(value, CycloElem):
            conductor = math.lcm(conductor, value.conductor)
        return cls({0: value}, conductor)

    @classmethod
    def monomial(cls, exp: int, coeff=1, conductor: int = 1) -> "LaurentQ":
        return cls({exp: coeff}, conductor)

    def terms(self) -> List[Tuple[int, CycloElem]]:
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def _lift(self, other) -> "LaurentQ":
        if isinstance(other, LaurentQ):
            return other
        if isinstance(other, CycloElem):
            return LaurentQ.const(other, self.conductor)
        return LaurentQ.const(CycloElem.rational(to_rational(other), self.conductor), self.conductor)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out[e] + c if e in out else c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentQ(out, math.lcm(self.conductor, other.conductor))

    __radd__ = __add__

    def __neg__(self) -> "LaurentQ":
        return LaurentQ({e: -c for e, c in self._terms.items()}, self.conductor)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        out: Dict[int, CycloElem] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out[e] + c1 * c2 if e in out else c1 * c2
        return LaurentQ(out, math.lcm(self.conductor, other.conductor))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "LaurentQ":
        if exponent < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials are units in k[q, q^-1]")
            (e, c), = self._terms.items()
            return LaurentQ({-e * (-exponent): c ** exponent}, self.conductor)
        result = LaurentQ.const(CycloElem.rational(1, self.conductor), self.conductor)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other) -> bool:
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None

    def min_exp(self) -> int:
        return min(self._terms) if self._terms else 0

    def max_exp(self) -> int:
        return max(self._terms) if self._terms else 0

    def evaluate(self, eps: CycloElem) -> CycloElem:
        total = CycloElem.rational(0, eps.conductor)
        for e, c in self._terms.items():
            total = total + c * eps ** e
        return total

    def substitute(self, value):
        """Compose: the value of this polynomial at q = value (scalar or LaurentQ)."""
        if isinstance(value, CycloElem):
            return self.evaluate(value)
        value = self._lift(value)
        total = LaurentQ({}, math.lcm(self.conductor, value.conductor))
        for e, c in self._terms.items():
            total = total + value ** e * c
        return total

    def exact_quo(self, other) -> "LaurentQ":
        other = self._lift(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if self.is_zero():
            return LaurentQ({}, self.conductor)
        sa, sb = self.min_exp(), other.min_exp()
        rem = {e - sa: c for e, c in self._terms.items()}
        div = {e - sb: c for e, c in other._terms.items()}
        top = max(div)
        lead = div[top]
        quo: Dict[int, CycloElem] = {}
        while rem and max(rem) >= top:
            d = max(rem)
            c = rem[d] / lead
            quo[d - top] = c
            for e, v in div.items():
                key = d - top + e
                s = rem.get(key, CycloElem.rational(0, c.conductor)) - c * v
                if s:
                    rem[key] = s
                else:
                    rem.pop(key, None)
        if rem:
            raise NotDivisible(f"{other} does not divide {self}")
        return LaurentQ({e + sa - sb: c for e, c in quo.items()}, math.lcm(self.conductor, other.conductor))

    def __repr__(self) -> str:
        return f"LaurentQ({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.terms():
            mono = "" if e == 0 else ("q" if e == 1 else f"q^{e}")
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

    def to_json(self) -> Dict[str, object]:
        return {"conductor": self.conductor, "laurent": [[e, c.to_json()] for e, c in self.terms()]}

    @classmethod
    def from_json(cls, data: Dict[str, object]) -> "LaurentQ":
        conductor = int(data["conductor"])
        return cls({int(e): CycloElem.from_json(c) for e, c in data["laurent"]}, conductor)


def laurent_div_at(p: LaurentQ, eps: CycloElem) -> CycloElem:
    """Value at q = eps of p / (q - eps); p must vanish at eps."""
    if eps.is_zero():
        raise ValueError("specialization point must be nonzero")
    if p.is_zero():
        return CycloElem.rational(0, eps.conductor)
    shift = min(0, p.min_exp())
    top = p.max_exp() - shift
    coeffs = [CycloElem.rational(0, eps.conductor)] * (top + 1)
    for e, c in p.terms():
        coeffs[e - shift] = c
    # synthetic division of the polynomial q^(-shift) * p by (q - eps)
    quotient = [coeffs[top]]
    for i in range(top - 1, 0, -1):
        quotient.append(coeffs[i] + eps * quotient[-1])
    remainder = coeffs[0] + eps * quotient[-1] if top > 0 else coeffs[0]
    if remainder:
        raise NotDivisible(f"{p} does not vanish at q = {eps}")
    value = CycloElem.rational(0, eps.conductor)
    for c in quotient:
        value = value * eps + c
    return value * eps ** shift


def decode_scalar(data: Dict[str, object]):
    if "laurent" in data:
        return LaurentQ.from_json(data)
    return CycloElem.from_json(data)
