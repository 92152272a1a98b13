"""Field construction, arithmetic, Frobenius powers, and embeddings."""

import itertools
import random

import pytest

from mrgrid import (
    arith,
    embed,
    field_from_dict,
    frobenius,
    make_extension,
    make_field,
)
from mrgrid.errors import (
    DivisionByZero,
    FieldMismatch,
    IncompatibleSubfield,
    NoDesignatedSubfield,
    NonPrimeCharacteristic,
    ReducibleModulus,
)
from mrgrid.gf import is_irreducible


def test_prime_field_modulus_is_x(gf2):
    assert gf2.modulus == (0, 1)
    assert gf2.order == 2


def test_gf8_default_modulus_matches_exhaustive_scan():
    # oracle: scan the four monic degree-3 candidates with nonzero
    # constant term in ascending base-2 value and keep the irreducible
    # ones (a cubic over GF(2) is reducible iff it has a root)
    candidates = []
    for low in range(8):
        coeffs = (low & 1, (low >> 1) & 1, (low >> 2) & 1, 1)
        if coeffs[0] == 0:
            continue  # divisible by x
        f0 = coeffs[0] ^ 0  # value at 0
        f1 = sum(coeffs) % 2  # value at 1
        if f0 and f1:
            candidates.append(coeffs)
    assert candidates[0] == (1, 1, 0, 1)  # x^3 + x + 1 comes first
    assert make_field(2, 3).modulus == (1, 1, 0, 1)


def test_non_prime_characteristic_rejected():
    with pytest.raises(NonPrimeCharacteristic):
        make_field(4, 1)


def test_reducible_modulus_rejected():
    with pytest.raises(ReducibleModulus):
        make_field(2, 2, modulus=[1, 0, 1])  # x^2 + 1 = (x+1)^2
    with pytest.raises(ReducibleModulus):
        make_field(2, 3, modulus=[1, 1, 0])  # not monic of degree 3


def test_is_irreducible_agrees_with_trial_division():
    # oracle: trial division by every lower-degree monic polynomial
    rng = random.Random(0)
    from mrgrid.gf import _pmod, _ptrim

    def divides(g, f, p):
        return not _pmod(f, g, p)

    def brute(f, p):
        d = len(f) - 1
        for e in range(1, d):
            for low in range(p ** e):
                g = []
                v = low
                for _ in range(e):
                    g.append(v % p)
                    v //= p
                g.append(1)
                if divides(tuple(g), f, p):
                    return False
        return True

    for _ in range(120):
        p = rng.choice([2, 3, 5])
        d = rng.randrange(2, 6)
        f = tuple(rng.randrange(p) for _ in range(d)) + (1,)
        if not _ptrim(f[:-1]) and f[0] == 0:
            continue
        assert is_irreducible(f, p) == brute(f, p), f


def test_gf2_addition(gf2):
    one = gf2.one()
    assert (one + one).code == 0


def test_gf8_multiplication_hand_oracle(gf8):
    # x * x^2 = x^3, and x^3 = x + 1 modulo x^3 + x + 1
    x = gf8.gen()
    assert (x * (x * x)).coeffs == (1, 1, 0)


def test_gf5_division(gf5):
    assert (gf5.one() / gf5.element(2)).code == 3
    with pytest.raises(DivisionByZero):
        gf5.one() / gf5.zero()


def test_arith_dispatch(gf5):
    a, b = gf5.element(3), gf5.element(4)
    assert arith(a, b, "add").code == 2
    assert arith(a, b, "sub").code == 4
    assert arith(a, b, "mul").code == 2
    assert arith(a, b, "div").code == 2  # 3 * 4^-1 = 3 * 4 = 12 = 2
    with pytest.raises(ValueError):
        arith(a, b, "pow")


def test_field_mismatch_is_an_error(gf5, gf8):
    with pytest.raises(FieldMismatch):
        gf5.one() + gf8.one()
    # same parameters constructed twice are the same field
    assert make_field(5) is make_field(5)


@pytest.mark.parametrize("p,d", [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1),
                                 (2, 3), (3, 2), (2, 4), (13, 1)])
def test_field_axioms_exhaustive_small(p, d):
    f = make_field(p, d)
    if f.order <= 16:
        triples = itertools.product(range(f.order), repeat=3)
    else:
        rng = random.Random(p * 100 + d)
        triples = ((rng.randrange(f.order), rng.randrange(f.order),
                    rng.randrange(f.order)) for _ in range(1000))
    for a, b, c in triples:
        assert f.add(a, b) == f.add(b, a)
        assert f.mul(a, b) == f.mul(b, a)
        assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
        assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
        assert f.add(a, f.neg(a)) == 0
        if a:
            assert f.mul(a, f.inv(a)) == 1


@pytest.mark.parametrize("p,d", [(2, 5), (2, 6), (3, 3), (5, 2), (2, 13)])
def test_field_axioms_random_larger(p, d):
    f = make_field(p, d)
    rng = random.Random(p * 1000 + d)
    for _ in range(1000):
        a, b, c = (rng.randrange(f.order) for _ in range(3))
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
        assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
        if a:
            assert f.mul(a, f.inv(a)) == 1


def test_frobenius_gf4_squares(gf2):
    f4 = make_field(2, 2, subfield_degree=1)
    x = f4.gen()
    assert frobenius(x, 1).coeffs == (1, 1)  # x^2 = x + 1 mod x^2+x+1
    assert frobenius(x, 0) == x
    assert frobenius(f4.one(), 1) == f4.one()


def test_frobenius_requires_subfield(gf8):
    with pytest.raises(NoDesignatedSubfield):
        frobenius(gf8.gen(), 1)


def test_frobenius_is_ring_homomorphism():
    f = make_field(2, 6, subfield_degree=2)
    rng = random.Random(3)
    for _ in range(300):
        a = f.random_element(rng)
        b = f.random_element(rng)
        assert frobenius(a + b, 1) == frobenius(a, 1) + frobenius(b, 1)
        assert frobenius(a * b, 1) == frobenius(a, 1) * frobenius(b, 1)


def test_frobenius_power_s_is_identity():
    base = make_field(2, 2)
    f = make_extension(base, 3)  # GF(4^3), q = 4, s = 3
    rng = random.Random(9)
    for _ in range(200):
        a = f.random_element(rng)
        assert frobenius(a, 3) == a
    # and frobenius fixes exactly the designated subfield for i = 1
    fixed = {c for c in range(f.order) if f.frob_code(c, 1) == c}
    assert fixed == set(f.subfield_elements())
    assert len(fixed) == 4


def test_embed_constants(gf2, gf8):
    assert embed(gf2.zero(), gf8).code == 0
    assert embed(gf2.one(), gf8).code == 1
    # all four GF(2) pairs respect addition
    for a in range(2):
        for b in range(2):
            ea = embed(gf2.from_code(a), gf8)
            eb = embed(gf2.from_code(b), gf8)
            assert embed(gf2.from_code(a ^ b), gf8) == ea + eb


def test_embed_is_ring_homomorphism(gf8):
    big = make_extension(gf8, 2)
    rng = random.Random(11)
    for _ in range(1000):
        a = gf8.random_element(rng)
        b = gf8.random_element(rng)
        assert embed(a + b, big) == embed(a, big) + embed(b, big)
        assert embed(a * b, big) == embed(a, big) * embed(b, big)
    assert embed(gf8.one(), big) == big.one()
    # injectivity
    images = {embed(gf8.from_code(c), big).code for c in range(8)}
    assert len(images) == 8


def test_embed_incompatible_subfield(gf8, gf16_q2):
    with pytest.raises(IncompatibleSubfield):
        embed(gf8.one(), gf16_q2)  # GF(16) designates GF(2), not GF(8)


def test_embed_commutes_with_frobenius(gf8):
    # embedding then raising to the q-th power fixes embedded elements
    big = make_extension(gf8, 3)
    rng = random.Random(13)
    for _ in range(100):
        a = gf8.random_element(rng)
        assert frobenius(embed(a, big), 1) == embed(a, big)


def test_field_json_roundtrip(gf8):
    data = {"p": 2, "d": 3, "modulus": [1, 1, 0, 1]}
    assert field_from_dict(data) is gf8
    assert gf8.to_dict() == data
    big = make_extension(gf8, 2)
    assert field_from_dict(big.to_dict()) is big


def test_element_json_is_coefficient_list(gf8):
    e = gf8.element([1, 1, 0])
    assert list(e.coeffs) == [1, 1, 0]
    assert gf8.element(e.coeffs) == e


def test_pow_matches_repeated_multiplication(gf13, gf256):
    rng = random.Random(17)
    for f in (gf13, gf256):
        for _ in range(50):
            a = rng.randrange(1, f.order)
            e = rng.randrange(0, 200)
            acc = 1
            for _ in range(e):
                acc = f.mul(acc, a)
            assert f.pow(a, e) == acc
