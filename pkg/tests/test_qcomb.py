import pytest

from src.exactfield import CycloElem, LaurentQ
from src.qcomb import check_pascal_identity, q_binomial, q_factorial, q_int


def test_q_integers():
    q = LaurentQ.q()
    assert q_int(0, q) == 0
    assert q_int(3, q) == 1 + q + q * q
    assert q_int(2, -1) == 0
    assert q_int(1, CycloElem.zeta(5)) == 1
    assert q_int(4, CycloElem.zeta(4)) == 0
    with pytest.raises(ValueError):
        q_int(-1, q)


def test_q_factorials():
    q = LaurentQ.q()
    assert q_factorial(0, q) == 1
    assert q_factorial(2, q) == 1 + q
    assert q_factorial(3, q) == (1 + q) * (1 + q + q * q)
    assert q_factorial(2, -1) == 0


def test_q_binomial_edges():
    q = LaurentQ.q()
    assert q_binomial(5, 0, q) == 1
    assert q_binomial(5, 5, q) == 1
    assert q_binomial(2, 1, q) == 1 + q
    assert q_binomial(3, 4, q) == 0


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_q_binomial_vanishes_at_primitive_roots(n):
    lam = CycloElem.zeta(n)
    for i in range(1, n):
        assert q_binomial(n, i, lam) == 0


def test_q_binomial_product_identity():
    """[k]! = [i]! [k-i]! [k, i] with q symbolic"""
    q = LaurentQ.q()
    for k in range(9):
        for i in range(k + 1):
            assert q_factorial(k, q) == q_factorial(i, q) * q_factorial(k - i, q) * q_binomial(k, i, q)
            assert q_binomial(k, i, q) == q_binomial(k, k - i, q)


@pytest.mark.parametrize("k", range(2, 11))
def test_pascal_identity(k):
    assert check_pascal_identity(k)


def test_pascal_identity_needs_k_at_least_two():
    with pytest.raises(ValueError):
        check_pascal_identity(1)
