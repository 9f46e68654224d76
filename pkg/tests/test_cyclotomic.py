import random
from fractions import Fraction

import pytest

from etf_forge.core.cyclotomic import (
    Cyclotomic,
    cyclotomic_polynomial,
    euler_phi,
    quadratic_residue_sum,
    root_of_unity,
)
from etf_forge.core.elimination import rank
from etf_forge.core.exceptions import OrderMismatchError, UsageError


def _random_element(rng, m):
    return Cyclotomic.from_exponents(m, {k: Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for k in range(m)})


@pytest.mark.parametrize("m, expected", [
    (1, (-1, 1)),
    (3, (1, 1, 1)),
    (4, (1, 0, 1)),
    (6, (1, -1, 1)),
    (12, (1, 0, -1, 0, 1)),
])
def test_cyclotomic_polynomial(m, expected):
    assert cyclotomic_polynomial(m) == expected
    assert euler_phi(m) == len(expected) - 1


def test_sum_of_all_roots_vanishes():
    for m in (3, 5, 7, 8, 9, 12):
        total = sum((root_of_unity(m, k) for k in range(m)), Cyclotomic.zero(m))
        assert total.is_zero()


def test_canonical_form_is_unique():
    z = root_of_unity(7, 1)
    assert z ** 7 == 1
    assert root_of_unity(7, 9) == z * z
    assert root_of_unity(7, -1) == z.conj()
    assert hash(root_of_unity(7, 8)) == hash(z)
    # zeta^6 = -(1 + zeta + ... + zeta^5) in the power basis of Q(zeta_7)
    assert root_of_unity(7, 6).coeffs == tuple(Fraction(-1) for _ in range(6))


@pytest.mark.parametrize("m", [5, 7, 12])
def test_ring_axioms(m):
    rng = random.Random(m)
    for _ in range(25):
        a, b, c = (_random_element(rng, m) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a - a == 0
        if a:
            assert a * a.inverse() == 1
            assert (b / a) * a == b


def test_norm_and_galois():
    z = root_of_unity(5, 1)
    assert (1 - z).norm() == 5
    assert z.galois(2) == z * z
    with pytest.raises(UsageError):
        z.galois(5)


@pytest.mark.parametrize("p", [7, 11, 19, 23])
def test_quadratic_residue_sum(p):
    z = root_of_unity(p, 1)
    a = quadratic_residue_sum(p)
    squares = {(t * t) % p for t in range(1, p)}
    assert a == sum((z ** t for t in squares), Cyclotomic.zero(p))
    assert a + a.conj() == -1
    assert a * a.conj() == Fraction(p + 1, 4)
    g = a - a.conj()
    assert g * g == -p
    assert g.is_purely_imaginary()


def test_rational_elements_hash_like_their_value():
    three = Cyclotomic.rational(7, 3)
    half = Cyclotomic.rational(7, Fraction(1, 2))
    assert three == 3 and hash(three) == hash(3)
    assert len({three, 3}) == 1
    assert half in {Fraction(1, 2)}
    assert {half: "x"}[Fraction(1, 2)] == "x"
    assert root_of_unity(7, 1) not in {1}


def test_lift_embeds_subfield():
    z3 = root_of_unity(3, 1)
    lifted = z3.lift(12)
    assert lifted == root_of_unity(12, 4)
    assert lifted * lifted * lifted == 1
    with pytest.raises(OrderMismatchError):
        z3.lift(8)


def test_order_mismatch_is_rejected():
    with pytest.raises(OrderMismatchError):
        root_of_unity(3, 1) + root_of_unity(5, 1)


def test_rationals_coerce():
    z = root_of_unity(4, 1)
    assert z * z == -1
    assert (z + 1) * (z - 1) == -2
    assert Cyclotomic.rational(4, Fraction(1, 2)) * 2 == 1
    assert z.is_purely_imaginary() and not z.is_real()


def test_approx_matches_exact_value():
    z = root_of_unity(8, 1)
    assert abs((z * z).approx() - 1j) < 1e-12
    assert abs(quadratic_residue_sum(7).approx() - complex(-0.5, 7 ** 0.5 / 2)) < 1e-12


def test_rank_over_cyclotomic_field():
    z = root_of_unity(3, 1)
    one = Cyclotomic.one(3)
    rows = [[one, z], [z, z * z], [one, one]]
    assert rank(rows) == 2
    assert rank([[one, z], [z, z * z]]) == 1
    assert rank([]) == 0
