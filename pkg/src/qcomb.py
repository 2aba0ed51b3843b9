from __future__ import annotations

from functools import lru_cache
from typing import Union

from .exactfield import CycloElem, LaurentQ, to_rational

Scalar = Union[CycloElem, LaurentQ]


def _as_scalar(lam) -> Scalar:
    if isinstance(lam, (CycloElem, LaurentQ)):
        return lam
    return CycloElem.rational(to_rational(lam), 1)


def _one_like(lam: Scalar) -> Scalar:
    if isinstance(lam, LaurentQ):
        return LaurentQ.const(CycloElem.rational(1, lam.conductor), lam.conductor)
    return CycloElem.rational(1, lam.conductor)


def q_int(n: int, lam) -> Scalar:
    """[n]_lam = 1 + lam + ... + lam^(n-1), by the sum form."""
    if n < 0:
        raise ValueError(f"q-integers need n >= 0, got {n}")
    lam = _as_scalar(lam)
    one = _one_like(lam)
    total = one - one
    term = one
    for _ in range(n):
        total = total + term
        term = term * lam
    return total


def q_factorial(n: int, lam) -> Scalar:
    if n < 0:
        raise ValueError(f"q-factorials need n >= 0, got {n}")
    lam = _as_scalar(lam)
    result = _one_like(lam)
    for i in range(1, n + 1):
        result = result * q_int(i, lam)
    return result


@lru_cache(maxsize=None)
def _symbolic_binomial(k: int, i: int) -> LaurentQ:
    q = LaurentQ.q()
    numerator = q_factorial(k, q)
    return numerator.exact_quo(q_factorial(i, q) * q_factorial(k - i, q))


def q_binomial(k: int, i: int, lam) -> Scalar:
    """Gaussian binomial [k choose i] at lam.

    Always expanded over k[q, q^-1] first and then substituted, so roots of
    unity never meet a vanishing denominator.
    """
    lam = _as_scalar(lam)
    if i < 0 or i > k:
        one = _one_like(lam)
        return one - one
    return _symbolic_binomial(k, i).substitute(lam)


def check_pascal_identity(k: int, q: LaurentQ | None = None) -> bool:
    """[k,1]_{q^2} + q [k,2]_q == [k+1,2]_q as Laurent polynomials."""
    if k < 2:
        raise ValueError(f"the identity is stated for k >= 2, got {k}")
    q = q if q is not None else LaurentQ.q()
    lhs = q_binomial(k, 1, q * q) + q * q_binomial(k, 2, q)
    return lhs == q_binomial(k + 1, 2, q)
