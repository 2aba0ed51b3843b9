"""PBW normal forms for presented algebras.

A presentation lists its generators in a fixed order; a normal monomial is an exponent
vector read as the ordered product gen_0^e_0 gen_1^e_1 ...  Products are rewritten with
one swap rule per misordered pair (later * earlier -> normal element) and power rules
gen^p -> scalar.  Coefficients are central: cyclotomic scalars for specializations and
Laurent polynomials in q for the deformation family.
"""
from __future__ import annotations

import functools
import json
import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from . import config
from .exactfield import CycloElem, LaurentQ, decode_scalar, to_rational

log = logging.getLogger(__name__)

Monomial = Tuple[int, ...]
Coeff = Union[CycloElem, LaurentQ]
TermSpec = Tuple[Any, Union[Mapping[str, int], Sequence[int]]]


class PresentationMismatch(ValueError):
    pass


@dataclass(frozen=True)
class CoeffRing:
    kind: str  # "cyclotomic" or "laurent_q"
    conductor: int

    def __post_init__(self) -> None:
        if self.kind not in ("cyclotomic", "laurent_q"):
            raise ValueError(f"unknown coefficient ring {self.kind!r}")

    def coerce(self, value) -> Coeff:
        if self.kind == "laurent_q":
            if isinstance(value, LaurentQ):
                return value
            if isinstance(value, CycloElem):
                return LaurentQ.const(value, self.conductor)
            return LaurentQ.const(CycloElem.rational(to_rational(value), self.conductor), self.conductor)
        if isinstance(value, LaurentQ):
            raise ValueError("a Laurent coefficient needs a laurent_q presentation")
        if isinstance(value, CycloElem):
            if self.conductor % value.conductor == 0:
                return value.embed(self.conductor)
            return value
        return CycloElem.rational(to_rational(value), self.conductor)

    def one(self) -> Coeff:
        return self.coerce(1)

    def zero(self) -> Coeff:
        return self.coerce(0)


def cyclotomic(conductor: int) -> CoeffRing:
    return CoeffRing("cyclotomic", conductor)


def laurent_q(conductor: int = 1) -> CoeffRing:
    return CoeffRing("laurent_q", conductor)


def _accumulate(target: Dict[Monomial, Coeff], mono: Monomial, coeff: Coeff) -> None:
    if mono in target:
        s = target[mono] + coeff
        if s:
            target[mono] = s
        else:
            del target[mono]
    elif coeff:
        target[mono] = coeff


def format_monomial(generators: Sequence[str], mono: Monomial) -> str:
    parts = []
    for name, e in zip(generators, mono):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def format_coefficient(c: Coeff) -> str:
    text = str(c)
    if isinstance(c, LaurentQ) or (isinstance(c, CycloElem) and not c.is_rational()):
        if len(getattr(c, "_terms", {})) > 1 or " " in text:
            return f"({text})"
    return text


class Presentation:
    """Ordered generators with swap rules, power rules, weights and a coefficient ring."""

    def __init__(
        self,
        name: str,
        generators: Sequence[str],
        ring: CoeffRing,
        swap_rules: Optional[Mapping[Tuple[str, str], Iterable[TermSpec]]] = None,
        power_rules: Optional[Mapping[str, Tuple[int, Any]]] = None,
        weights: Optional[Mapping[str, int]] = None,
    ):
        if len(set(generators)) != len(generators):
            raise ValueError(f"duplicate generators in {generators}")
        self.name = name
        self.generators: Tuple[str, ...] = tuple(generators)
        self.ring = ring
        self._index = {g: i for i, g in enumerate(self.generators)}
        weights = dict(weights or {})
        self.weights: Tuple[int, ...] = tuple(int(weights.get(g, 1)) for g in self.generators)
        self._one = ring.one()

        self._powers: Dict[int, Tuple[int, Coeff]] = {}
        for g, (p, value) in (power_rules or {}).items():
            if p < 1:
                raise ValueError(f"power rule for {g} needs a positive exponent")
            self._powers[self.index(g)] = (int(p), ring.coerce(value))

        self._swaps: Dict[Tuple[int, int], Dict[Monomial, Coeff]] = {}
        for (later, earlier), rhs in (swap_rules or {}).items():
            j, i = self.index(later), self.index(earlier)
            if j <= i:
                raise ValueError(f"swap rule {later}*{earlier} is not misordered")
            self._swaps[(j, i)] = self._terms_from_spec(rhs)
        for j in range(len(self.generators)):
            for i in range(j):
                if (j, i) not in self._swaps:
                    mono = [0] * len(self.generators)
                    mono[i] = mono[j] = 1
                    self._swaps[(j, i)] = {tuple(mono): self._one}
        self._validate_rules()

        # bounded per-presentation memo of the rewriting engine
        self._times_gen = functools.lru_cache(maxsize=config.PBW_CACHE_SIZE)(self._times_gen_uncached)
        self._mono_mul = functools.lru_cache(maxsize=config.PBW_CACHE_SIZE)(self._mono_mul_uncached)
        log.debug("presentation %s: %d generators, %d swap rules", name, len(self.generators), len(self._swaps))

    # construction helpers

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"{name!r} is not a generator of {self.name}") from None

    def exponents(self, spec: Union[Mapping[str, int], Sequence[int]]) -> Monomial:
        if isinstance(spec, Mapping):
            mono = [0] * len(self.generators)
            for g, e in spec.items():
                mono[self.index(g)] = int(e)
            return tuple(mono)
        mono = tuple(int(e) for e in spec)
        if len(mono) != len(self.generators):
            raise ValueError(f"exponent vector {mono} has wrong length for {self.name}")
        return mono

    def _terms_from_spec(self, spec: Iterable[TermSpec]) -> Dict[Monomial, Coeff]:
        terms: Dict[Monomial, Coeff] = {}
        for coeff, exps in spec:
            _accumulate(terms, self.exponents(exps), self.ring.coerce(coeff))
        return terms

    def _validate_rules(self) -> None:
        for (j, i), terms in self._swaps.items():
            bound = self.weights[j] + self.weights[i]
            for mono in terms:
                if not self.is_normal(mono):
                    raise ValueError(f"rule {self.generators[j]}*{self.generators[i]} has non-normal term")
                if self.weight_of(mono) > bound:
                    raise ValueError(f"rule {self.generators[j]}*{self.generators[i]} raises the filtration")

    def is_normal(self, mono: Monomial) -> bool:
        if any(e < 0 for e in mono):
            return False
        return all(mono[i] < p for i, (p, _) in self._powers.items())

    def weight_of(self, mono: Monomial, weights: Optional[Sequence[int]] = None) -> int:
        weights = self.weights if weights is None else weights
        return sum(w * e for w, e in zip(weights, mono))

    # the rewriting engine

    def clear_caches(self) -> None:
        self._times_gen.cache_clear()
        self._mono_mul.cache_clear()

    def cache_sizes(self) -> Tuple[int, int]:
        return self._times_gen.cache_info().currsize, self._mono_mul.cache_info().currsize

    def _times_gen_uncached(self, mono: Monomial, j: int) -> Dict[Monomial, Coeff]:
        last = len(mono) - 1
        while last > j and mono[last] == 0:
            last -= 1
        result: Dict[Monomial, Coeff] = {}
        if last <= j:
            exps = list(mono)
            exps[j] += 1
            rule = self._powers.get(j)
            if rule is not None and exps[j] >= rule[0]:
                exps[j] -= rule[0]
                if rule[1]:
                    result[tuple(exps)] = rule[1]
            else:
                result[tuple(exps)] = self._one
        else:
            head = list(mono)
            head[last] -= 1
            head_mono = tuple(head)
            for rmono, rc in self._swaps[(last, j)].items():
                for m, c in self._mono_mul(head_mono, rmono).items():
                    _accumulate(result, m, c * rc)
        return result

    def _mono_mul_uncached(self, a: Monomial, b: Monomial) -> Dict[Monomial, Coeff]:
        last = len(b) - 1
        while last >= 0 and b[last] == 0:
            last -= 1
        if last < 0:
            result = {a: self._one}
        else:
            rest = list(b)
            rest[last] -= 1
            result = {}
            for m, c in self._mono_mul(a, tuple(rest)).items():
                for m2, c2 in self._times_gen(m, last).items():
                    _accumulate(result, m2, c * c2)
        return result

    def multiply_monomials(self, a: Monomial, b: Monomial) -> Dict[Monomial, Coeff]:
        return dict(self._mono_mul(a, b))

    # element constructors

    def element(self, terms: Optional[Mapping[Monomial, Any]] = None) -> "NCElem":
        return NCElem(self, terms)

    def zero(self) -> "NCElem":
        return NCElem(self, {})

    def one(self) -> "NCElem":
        return self.scalar(1)

    def scalar(self, value) -> "NCElem":
        return NCElem(self, {(0,) * len(self.generators): value})

    def gen(self, name: str) -> "NCElem":
        return self.monomial({name: 1})

    def gens(self) -> Dict[str, "NCElem"]:
        return {g: self.gen(g) for g in self.generators}

    def monomial(self, exps: Union[Mapping[str, int], Sequence[int]], coeff=1) -> "NCElem":
        mono = self.exponents(exps)
        if self.is_normal(mono):
            return NCElem(self, {mono: coeff})
        word: List[str] = []
        for name, e in zip(self.generators, mono):
            word.extend([name] * e)
        return normal_form(self, word, coeff)

    def monomials(self, max_degree: int, weights: Optional[Sequence[int]] = None) -> List[Monomial]:
        """Normal monomials of weighted degree <= max_degree, lowest degree first."""
        weights = tuple(self.weights if weights is None else weights)
        bounds = []
        for i, w in enumerate(weights):
            if i in self._powers:
                bounds.append(self._powers[i][0] - 1)
            elif w > 0:
                bounds.append(max_degree // w)
            else:
                raise ValueError(f"generator {self.generators[i]} has weight 0 and no truncation")
        found: List[Monomial] = []

        def walk(pos: int, budget: int, prefix: List[int]) -> None:
            if pos == len(weights):
                found.append(tuple(prefix))
                return
            top = bounds[pos] if weights[pos] == 0 else min(bounds[pos], budget // weights[pos])
            for e in range(top + 1):
                prefix.append(e)
                walk(pos + 1, budget - e * weights[pos], prefix)
                prefix.pop()

        walk(0, max_degree, [])
        return sorted(found, key=lambda m: (self.weight_of(m, weights), tuple(-e for e in m)))

    # rules as elements

    def swap_rule(self, later: str, earlier: str) -> "NCElem":
        return NCElem(self, self._swaps[(self.index(later), self.index(earlier))])

    @property
    def swap_rules(self) -> Dict[Tuple[str, str], "NCElem"]:
        return {
            (self.generators[j], self.generators[i]): NCElem(self, terms)
            for (j, i), terms in sorted(self._swaps.items())
        }

    @property
    def power_rules(self) -> Dict[str, Tuple[int, Coeff]]:
        return {self.generators[i]: rule for i, rule in sorted(self._powers.items())}

    def relations(self) -> List[Tuple[str, Tuple[str, ...], "NCElem"]]:
        """Defining relations as (label, word, normal right-hand side)."""
        rels = []
        for (later, earlier), rhs in self.swap_rules.items():
            rels.append((f"{later}*{earlier}", (later, earlier), rhs))
        for g, (p, value) in self.power_rules.items():
            rels.append((f"{g}^{p}", (g,) * p, self.scalar(value)))
        return rels

    def __repr__(self) -> str:
        return f"Presentation({self.name!r}, {list(self.generators)}, {self.ring.kind}({self.ring.conductor}))"


class NCElem:
    """Normal-form element: exponent vector -> nonzero coefficient."""

    __slots__ = ("presentation", "_terms")

    def __init__(self, presentation: Presentation, terms: Optional[Mapping[Monomial, Any]] = None):
        self.presentation = presentation
        cleaned: Dict[Monomial, Coeff] = {}
        for mono, c in (terms or {}).items():
            c = presentation.ring.coerce(c)
            if c:
                cleaned[tuple(mono)] = c
        self._terms = cleaned

    @classmethod
    def _raw(cls, presentation: Presentation, terms: Dict[Monomial, Coeff]) -> "NCElem":
        obj = cls.__new__(cls)
        obj.presentation = presentation
        obj._terms = terms
        return obj

    def items(self) -> Iterator[Tuple[Monomial, Coeff]]:
        return iter(self._terms.items())

    def terms(self) -> List[Tuple[Monomial, Coeff]]:
        return sorted(self._terms.items(), reverse=True)

    def monomials(self) -> List[Monomial]:
        return sorted(self._terms)

    def coefficient(self, mono: Union[Mapping[str, int], Sequence[int]]) -> Coeff:
        mono = self.presentation.exponents(mono)
        return self._terms.get(mono, self.presentation.ring.zero())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_scalar(self) -> bool:
        return all(not any(m) for m in self._terms)

    def _other(self, other) -> "NCElem":
        if isinstance(other, NCElem):
            if other.presentation is not self.presentation:
                raise PresentationMismatch(
                    f"cannot combine elements of {self.presentation.name} and {other.presentation.name}"
                )
            return other
        return self.presentation.scalar(other)

    def __add__(self, other) -> "NCElem":
        other = self._other(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            _accumulate(out, m, c)
        return NCElem._raw(self.presentation, out)

    __radd__ = __add__

    def __neg__(self) -> "NCElem":
        return NCElem._raw(self.presentation, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "NCElem":
        return self + (-self._other(other))

    def __rsub__(self, other) -> "NCElem":
        return (-self) + other

    def __mul__(self, other) -> "NCElem":
        if not isinstance(other, NCElem):
            c = self.presentation.ring.coerce(other)
            if not c:
                return self.presentation.zero()
            return NCElem._raw(self.presentation, {m: v * c for m, v in self._terms.items()})
        other = self._other(other)
        pres = self.presentation
        out: Dict[Monomial, Coeff] = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                cab = ca * cb
                for m, c in pres._mono_mul(ma, mb).items():
                    _accumulate(out, m, cab * c)
        return NCElem._raw(pres, out)

    def __rmul__(self, other) -> "NCElem":
        # scalars are central
        return self * other

    def __pow__(self, exponent: int) -> "NCElem":
        if exponent < 0:
            raise ValueError("negative powers are not defined")
        result = self.presentation.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other) -> bool:
        try:
            other = self._other(other)
        except (PresentationMismatch, TypeError, ValueError):
            return False
        return self._terms == other._terms

    __hash__ = None

    def map_coefficients(self, fn, presentation: Presentation) -> "NCElem":
        return NCElem(presentation, {m: fn(c) for m, c in self._terms.items()})

    def __repr__(self) -> str:
        return f"NCElem({self.presentation.name}: {self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        gens = self.presentation.generators
        parts = []
        for mono, c in self.terms():
            name = format_monomial(gens, mono)
            coeff = format_coefficient(c)
            if name == "1":
                parts.append(coeff)
            elif coeff == "1":
                parts.append(name)
            elif coeff == "-1":
                parts.append(f"-{name}")
            else:
                parts.append(f"{coeff}*{name}")
        return " + ".join(parts).replace("+ -", "- ")


def commutator(a: NCElem, b: NCElem) -> NCElem:
    return a * b - b * a


def normal_form(presentation: Presentation, word: Iterable[str], coeff=1) -> NCElem:
    """Rewrite coeff * w_1 w_2 ... w_r into normal form."""
    result = presentation.scalar(coeff)
    for name in word:
        result = result * presentation.gen(name)
    return result


@dataclass(frozen=True)
class ConfluenceReport:
    presentation: str
    passed: bool
    overlaps_checked: int
    failure: Optional[Dict[str, str]] = None

    def as_dict(self) -> Dict[str, Any]:
        return {
            "presentation": self.presentation,
            "passed": self.passed,
            "overlaps_checked": self.overlaps_checked,
            "failure": self.failure,
        }


def verify_confluence(p: Presentation) -> ConfluenceReport:
    """Resolve every overlap of swap and power rules both ways and compare."""
    gens = p.generators
    checked = 0

    def fail(word: str, left: NCElem, right: NCElem) -> ConfluenceReport:
        log.debug("confluence of %s fails at %s", p.name, word)
        return ConfluenceReport(p.name, False, checked, {"overlap": word, "left": str(left), "right": str(right)})

    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            for k in range(j + 1, len(gens)):
                checked += 1
                left = p.swap_rule(gens[k], gens[j]) * p.gen(gens[i])
                right = p.gen(gens[k]) * p.swap_rule(gens[j], gens[i])
                if left != right:
                    return fail(f"{gens[k]}*{gens[j]}*{gens[i]}", left, right)

    for j, (power, value) in sorted(p._powers.items()):
        below = [0] * len(gens)
        below[j] = power - 1
        partial = p.monomial(below)
        for i in range(len(gens)):
            if i == j:
                continue
            checked += 1
            if i < j:
                left = p.gen(gens[i]) * value
                right = partial * p.swap_rule(gens[j], gens[i])
                word = f"{gens[j]}^{power}*{gens[i]}"
            else:
                left = p.gen(gens[i]) * value
                right = p.swap_rule(gens[i], gens[j]) * partial
                word = f"{gens[i]}*{gens[j]}^{power}"
            if left != right:
                return fail(word, left, right)

    log.debug("confluence of %s: %d overlaps resolve", p.name, checked)
    return ConfluenceReport(p.name, True, checked)


def apply_endomorphism(images: Mapping[str, NCElem], e: NCElem) -> NCElem:
    """Evaluate the algebra map gen -> images[gen] on e."""
    source = e.presentation
    missing = [g for g in source.generators if g not in images]
    if missing:
        raise ValueError(f"no image given for {missing}")
    target = next(iter(images.values())).presentation
    powers: Dict[Tuple[str, int], NCElem] = {}

    def power(g: str, k: int) -> NCElem:
        if (g, k) not in powers:
            powers[(g, k)] = images[g] ** k if k < 2 else power(g, k - 1) * images[g]
        return powers[(g, k)]

    out = target.zero()
    for mono, c in e.items():
        term = target.scalar(c)
        for g, k in zip(source.generators, mono):
            if k:
                term = term * power(g, k)
        out = out + term
    return out


def filtration_degree(e: NCElem, weights: Optional[Union[Sequence[int], Mapping[str, int]]] = None) -> int:
    p = e.presentation
    if isinstance(weights, Mapping):
        weights = [weights.get(g, 0) for g in p.generators]
    if not e:
        return 0
    return max(p.weight_of(mono, weights) for mono, _ in e.items())


# built-in presentations


def quantum_plane(mu: CycloElem) -> Presentation:
    return Presentation(
        "qplane",
        ("u", "v"),
        cyclotomic(mu.conductor),
        swap_rules={("v", "u"): [(mu ** -1, {"u": 1, "v": 1})]},
    )


def quantum_weyl(mu: CycloElem) -> Presentation:
    inv = mu ** -1
    return Presentation(
        "weyl",
        ("u", "v"),
        cyclotomic(mu.conductor),
        swap_rules={("v", "u"): [(inv, {"u": 1, "v": 1}), (-inv, {})]},
    )


def polynomial_ring(generators: Sequence[str] = ("u", "v"), conductor: int = 1) -> Presentation:
    return Presentation("polyring", tuple(generators), cyclotomic(conductor))


def quantum_affine3(mu: CycloElem, lam: CycloElem) -> Presentation:
    # uv = mu vu, vw = lam mu wv, wu = mu uw
    N = math.lcm(mu.conductor, lam.conductor)
    return Presentation(
        "affine3",
        ("u", "v", "w"),
        cyclotomic(N),
        swap_rules={
            ("v", "u"): [(mu ** -1, {"u": 1, "v": 1})],
            ("w", "v"): [((lam * mu) ** -1, {"v": 1, "w": 1})],
            ("w", "u"): [(mu, {"u": 1, "w": 1})],
        },
    )


def quantum_matrices(mu: CycloElem) -> Presentation:
    inv = mu ** -1
    return Presentation(
        "qmatrices",
        ("a", "b", "c", "d"),
        cyclotomic(mu.conductor),
        swap_rules={
            ("b", "a"): [(inv, {"a": 1, "b": 1})],
            ("c", "a"): [(inv, {"a": 1, "c": 1})],
            ("d", "a"): [(1, {"a": 1, "d": 1}), (inv - mu, {"b": 1, "c": 1})],
            ("c", "b"): [(1, {"b": 1, "c": 1})],
            ("d", "b"): [(inv, {"b": 1, "d": 1})],
            ("d", "c"): [(inv, {"c": 1, "d": 1})],
        },
    )


def taft_presentation(n: int, lam: CycloElem) -> Presentation:
    return Presentation(
        f"taft{n}",
        ("g", "x"),
        cyclotomic(lam.conductor),
        swap_rules={("x", "g"): [(lam, {"g": 1, "x": 1})]},
        power_rules={"g": (n, 1), "x": (n, 0)},
        weights={"g": 0, "x": 0},
    )


def ore_family(k: int, target: str = "qplane") -> Presentation:
    """The k[q^{+-1}]-algebra A_q[x; tau, delta] with x u = q u x, x v = q^(k+1) v x + u."""
    if target not in ("qplane", "weyl"):
        raise ValueError(f"the deformation family is defined over qplane or weyl, not {target}")
    q = LaurentQ.q()
    inv = q ** -1
    vu: List[TermSpec] = [(inv, {"u": 1, "v": 1})]
    if target == "weyl":
        vu.append((-inv, {}))
    return Presentation(
        f"R[{target},k={k}]",
        ("u", "v", "x"),
        laurent_q(),
        swap_rules={
            ("v", "u"): vu,
            ("x", "u"): [(q, {"u": 1, "x": 1})],
            ("x", "v"): [(q ** (k + 1), {"v": 1, "x": 1}), (1, {"u": 1})],
        },
    )


def specialize(p: Presentation, eps: CycloElem) -> Presentation:
    """The presentation of R/(q - eps): every Laurent coefficient evaluated at eps."""
    if p.ring.kind != "laurent_q":
        raise ValueError(f"{p.name} has no deformation parameter")
    rules = {
        pair: [(c.evaluate(eps), mono) for mono, c in rhs.items()]
        for pair, rhs in p.swap_rules.items()
    }
    powers = {g: (e, value.evaluate(eps)) for g, (e, value) in p.power_rules.items()}
    return Presentation(
        f"{p.name}@{eps}",
        p.generators,
        cyclotomic(math.lcm(eps.conductor, p.ring.conductor)),
        swap_rules=rules,
        power_rules=powers,
        weights=dict(zip(p.generators, p.weights)),
    )


def specialize_element(e: NCElem, presentation: Presentation, eps: CycloElem) -> NCElem:
    return e.map_coefficients(lambda c: c.evaluate(eps), presentation)


# structured text format


def element_to_list(e: NCElem) -> List[Dict[str, Any]]:
    return [{"exponents": list(mono), "coeff": c.to_json()} for mono, c in sorted(e.items())]


def element_from_list(p: Presentation, data: Iterable[Mapping[str, Any]]) -> NCElem:
    out = p.zero()
    for term in data:
        out = out + p.monomial(term["exponents"], decode_scalar(term["coeff"]))
    return out


def presentation_to_dict(p: Presentation) -> Dict[str, Any]:
    return {
        "schema": config.PRESENTATION_SCHEMA,
        "name": p.name,
        "generators": list(p.generators),
        "coeff_ring": {"kind": p.ring.kind, "conductor": p.ring.conductor},
        "weights": list(p.weights),
        "swap_rules": [
            {"later": later, "earlier": earlier, "rhs": element_to_list(rhs)}
            for (later, earlier), rhs in p.swap_rules.items()
        ],
        "power_rules": [
            {"generator": g, "exponent": e, "value": value.to_json()}
            for g, (e, value) in p.power_rules.items()
        ],
    }


def presentation_from_dict(data: Mapping[str, Any]) -> Presentation:
    if data.get("schema") != config.PRESENTATION_SCHEMA:
        raise ValueError(f"unsupported presentation schema {data.get('schema')!r}")
    gens = list(data["generators"])
    ring = CoeffRing(data["coeff_ring"]["kind"], int(data["coeff_ring"]["conductor"]))
    rules = {
        (r["later"], r["earlier"]): [(decode_scalar(t["coeff"]), t["exponents"]) for t in r["rhs"]]
        for r in data["swap_rules"]
    }
    powers = {r["generator"]: (int(r["exponent"]), decode_scalar(r["value"])) for r in data["power_rules"]}
    return Presentation(
        data["name"],
        gens,
        ring,
        swap_rules=rules,
        power_rules=powers,
        weights=dict(zip(gens, data["weights"])),
    )


def save_presentation(path: str, p: Presentation) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(presentation_to_dict(p), f, indent=2, sort_keys=True)
        f.write("\n")


def load_presentation(path: str) -> Presentation:
    with open(path, "r", encoding="utf-8") as f:
        return presentation_from_dict(json.load(f))
