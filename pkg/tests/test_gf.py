import pytest

from padic_ramlab.gf import FiniteFieldParams, is_prime


def test_prime_validation():
    with pytest.raises(ValueError):
        FiniteFieldParams(4)
    with pytest.raises(ValueError):
        FiniteFieldParams(3, 0)


def test_is_prime_small():
    assert [n for n in range(2, 20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_prime_field_arithmetic():
    k = FiniteFieldParams(5)
    assert k.add(3, 4) == 2
    assert k.mul(3, 4) == 2
    assert k.neg(2) == 3
    assert k.inv(3) == 2
    assert k.pow(2, 4) == 1
    assert k.frobenius(2) == 2 ** 5 % 5


def test_gf4_modulus_is_first_irreducible():
    k = FiniteFieldParams(2, 2)
    # x^2 + x + 1 is the only (hence first) irreducible quadratic over F_2
    assert k.modulus == (1, 1, 1)


@pytest.mark.parametrize("p,f", [(2, 2), (2, 3), (3, 2), (5, 2)])
def test_field_axioms_exhaustive(p, f):
    k = FiniteFieldParams(p, f)
    els = list(k.elements())
    assert len(els) == p**f
    for a in els:
        assert k.add(a, k.neg(a)) == 0
        if a:
            assert k.mul(a, k.inv(a)) == 1
    # spot-check associativity and distributivity on a subset
    sub = els[: min(len(els), 9)]
    for a in sub:
        for b in sub:
            for c in sub:
                assert k.mul(a, k.add(b, c)) == k.add(k.mul(a, b), k.mul(a, c))


@pytest.mark.parametrize("p,f", [(2, 2), (3, 2), (2, 3)])
def test_frobenius_is_field_automorphism_of_order_f(p, f):
    k = FiniteFieldParams(p, f)
    for a in k.elements():
        img = a
        for _ in range(f):
            img = k.frobenius(img)
        assert img == a  # frobenius^f = id
        assert k.frobenius_pow(k.frobenius_pow(a, 1), -1) == a
    for a in k.elements():
        for b in k.elements():
            assert k.frobenius(k.mul(a, b)) == k.mul(k.frobenius(a), k.frobenius(b))
            assert k.frobenius(k.add(a, b)) == k.add(k.frobenius(a), k.frobenius(b))


def test_prime_subfield_detection():
    k = FiniteFieldParams(3, 2)
    assert [a for a in k.elements() if k.in_prime_field(a)] == [0, 1, 2]
