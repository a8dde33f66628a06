from fractions import Fraction

import pytest

from hallforge.scalars import (
    Scalar,
    gl_size,
    grassmannian_size,
    phi,
    qbinom,
    qfact,
    qint,
    sqrt_q,
    tau,
    zero,
)
from hallforge.fqlinalg import all_matrices, subspaces_of_dim

PRIMES = (2, 3, 5)


@pytest.mark.parametrize("q", PRIMES)
def test_sqrt_squares_to_q(q):
    v = sqrt_q(q)
    assert v * v == q
    assert (v ** 2).b == 0


def test_inverse_of_v_rationalizes():
    v = sqrt_q(2)
    assert v ** -1 == Scalar(Fraction(0), Fraction(1, 2), 2)
    assert v * v ** -1 == 1


def test_difference_of_squares():
    for q in PRIMES:
        v = sqrt_q(q)
        assert (1 + v) * (1 - v) == 1 - q


def test_field_axioms_sample():
    v = sqrt_q(3)
    x = Scalar(Fraction(2, 3), Fraction(-1, 2), 3)
    y = Scalar(Fraction(1), Fraction(4), 3)
    z = Scalar(Fraction(-5, 7), Fraction(1, 3), 3)
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert x * x.inverse() == 1
    assert (x / y) * y == x


def test_zero_division_rejected():
    with pytest.raises(ZeroDivisionError):
        zero(2).inverse()


def test_mixed_primes_rejected():
    with pytest.raises(ValueError):
        sqrt_q(2) + sqrt_q(3)


def test_nonprime_rejected():
    with pytest.raises(ValueError):
        sqrt_q(4)
    with pytest.raises(ValueError):
        sqrt_q(9)


def test_qint_examples():
    v = sqrt_q(2)
    assert qint(2, 2) == v + v ** -1
    assert qint(0, 3) == 0
    assert qint(1, 3) == 1


def test_qbinom_examples():
    assert qbinom(7, 0, 2) == 1
    assert qbinom(2, 1, 2) == qint(2, 2)
    assert qbinom(1, 3, 2) == 0  # r > m >= 0 vanishes


@pytest.mark.parametrize("q", PRIMES)
def test_qbinom_symmetry(q):
    for m in range(9):
        for r in range(m + 1):
            assert qbinom(m, r, q) == qbinom(m, m - r, q)


def test_phi_and_tau_values():
    # phi evaluates at t = v^2 = q
    assert phi(0, 2) == 1
    assert phi(2, 2) == Fraction(3)  # (1-2)(1-4)
    assert tau("any", 1, 2) == Fraction(-1)  # 1/(1-2)
    assert tau("any", 1, 3) == Fraction(-1, 2)
    assert tau("i", 2, 2) == phi(2, 2).inverse()


def test_grassmannian_values():
    assert grassmannian_size(0, 5, 2) == 1
    assert grassmannian_size(1, 2, 2) == 3
    assert grassmannian_size(1, 3, 3) == 13
    assert grassmannian_size(3, 2, 2) == 0


@pytest.mark.parametrize("q", (2, 3))
def test_grassmannian_matches_enumeration(q):
    for u in range(5):
        for s in range(u + 1):
            got = grassmannian_size(s, u, q)
            assert got.is_integer()
            assert got.as_integer() == len(subspaces_of_dim(u, s, q))


def test_gl_size_values():
    assert gl_size(0, 5) == 1
    assert gl_size(1, 3) == 2
    assert gl_size(2, 2) == 6


@pytest.mark.parametrize("q", (2, 3))
def test_gl_size_matches_enumeration(q):
    for r in range(3):
        brute = sum(1 for m in all_matrices(r, r, q) if m.is_invertible())
        assert gl_size(r, q) == brute


@pytest.mark.parametrize("q", PRIMES)
def test_vbinom_vanishing(q):
    v = sqrt_q(q)
    for u in range(1, 7):
        total = zero(q)
        for s in range(u + 1):
            total = total + Scalar(Fraction((-1) ** s), Fraction(0), q) * v ** (
                (u - 1) * s
            ) * qbinom(u, s, q)
        assert not total


@pytest.mark.parametrize("q", PRIMES)
def test_divided_power_prefactor(q):
    v = sqrt_q(q)
    for r in range(6):
        lhs = v ** (-r * (r - 1) // 2) * Scalar(Fraction(gl_size(r, q)), Fraction(0), q) / qfact(
            r, q
        )
        assert lhs == Scalar(Fraction((q - 1) ** r), Fraction(0), q) * v ** (r * (r - 1))


def test_json_roundtrip():
    x = Scalar(Fraction(-3, 7), Fraction(5, 2), 3)
    assert Scalar.from_json(x.to_json()) == x


def test_powers_of_v_track_parity():
    v = sqrt_q(5)
    for k in range(-6, 7):
        w = v ** k
        if k % 2 == 0:
            assert w.b == 0
        else:
            assert w.a == 0
