from fractions import Fraction

import pytest

from conftest import random_integral
from lattice_errors import (
    DivisionByZero,
    InputFormatError,
    MixedRings,
    NonIntegralEntries,
    NotRamified,
    UnsupportedDiscriminant,
)
from quadratic_ring import (
    SUPPORTED_DISCRIMINANTS,
    KElem,
    KRational,
    canonical_associate,
    default_pi,
    divides,
    element_from_json,
    euclid_divmod,
    format_element,
    gcd,
    generator,
    is_unit,
    make_ring,
    parse_element,
    ramified_prime,
    ramified_primes,
    reduce_mod,
    residue_map,
    units,
)


@pytest.mark.parametrize('d,count', [(-3, 6), (-4, 4), (-7, 2), (-8, 2), (-11, 2)])
def test_unit_groups(d, count):
    """Unit search finds w_k units, all of norm one."""
    ring = make_ring(d)
    assert ring.unit_count == count
    assert len(units(ring)) == count
    assert all(is_unit(e) for e in units(ring))


@pytest.mark.parametrize('d', [-1, -5, -15, -20, 5, 0])
def test_unsupported_discriminants(d):
    with pytest.raises(UnsupportedDiscriminant):
        make_ring(d)


@pytest.mark.parametrize('d', SUPPORTED_DISCRIMINANTS)
def test_generator_satisfies_its_minimal_polynomial(d):
    ring = make_ring(d)
    g = generator(ring)
    assert g.v == 1 and g.is_integral()
    assert g * g - g * g.trace() + g.norm() == 0
    assert ring.different_generator * ring.different_generator == d


def test_half_coordinates_and_integrality(eisenstein):
    omega = KElem(eisenstein, -1, 1)
    assert omega.is_integral()
    assert omega.norm() == 1
    assert omega.trace() == -1
    assert omega ** 3 == 1
    assert not KElem(eisenstein, 1, 0).is_integral()
    assert KElem(eisenstein, 1, 0) == Fraction(1, 2)


def test_arithmetic_closes_over_the_field(rng):
    ring = make_ring(-7)
    for _ in range(50):
        x = random_integral(rng, ring)
        y = random_integral(rng, ring)
        assert (x + y) - y == x
        assert x * y == y * x
        assert (x * y).norm() == x.norm() * y.norm()
        if not y.is_zero():
            assert (x / y) * y == x
            assert y * y.inverse() == 1


def test_division_by_zero(gaussian):
    with pytest.raises(DivisionByZero):
        KElem(gaussian, 0, 0).inverse()
    with pytest.raises(DivisionByZero):
        euclid_divmod(KElem(gaussian, 2, 0), KElem(gaussian, 0, 0))


def test_mixed_rings_are_rejected(eisenstein, gaussian):
    with pytest.raises(MixedRings):
        KElem(eisenstein, 2, 0) + KElem(gaussian, 2, 0)


@pytest.mark.parametrize('d', SUPPORTED_DISCRIMINANTS)
def test_euclidean_division(d, rng):
    """Remainders are strictly smaller in norm for every norm-Euclidean order."""
    ring = make_ring(d)
    for _ in range(200):
        a = random_integral(rng, ring, 20)
        b = random_integral(rng, ring, 6)
        if b.is_zero():
            continue
        q, r = euclid_divmod(a, b)
        assert q.is_integral() and r.is_integral()
        assert a == q * b + r
        assert r.norm() < b.norm()


def test_euclidean_division_needs_integral_operands(eisenstein):
    with pytest.raises(NonIntegralEntries):
        euclid_divmod(KElem(eisenstein, 1, 0), KElem(eisenstein, 2, 0))


@pytest.mark.parametrize('d', SUPPORTED_DISCRIMINANTS)
def test_reduce_mod_depends_only_on_the_coset(d, rng):
    ring = make_ring(d)
    for _ in range(100):
        a = random_integral(rng, ring, 10)
        b = random_integral(rng, ring, 5)
        k = random_integral(rng, ring, 5)
        if b.is_zero():
            continue
        r = reduce_mod(a, b)
        assert divides(b, a - r)
        assert reduce_mod(a + k * b, b) == r


@pytest.mark.parametrize('d', SUPPORTED_DISCRIMINANTS)
def test_canonical_associate_is_a_class_invariant(d, rng):
    ring = make_ring(d)
    for _ in range(50):
        x = random_integral(rng, ring, 6)
        c, e = canonical_associate(x)
        assert c == e * x
        assert is_unit(e)
        for unit in units(ring):
            assert canonical_associate(unit * x)[0] == c


def test_gcd(rng):
    ring = make_ring(-7)
    assert gcd(KElem(ring, 12, 0), KElem(ring, 8, 0)) == KElem(ring, 4, 0)
    for _ in range(50):
        a = random_integral(rng, ring, 8)
        b = random_integral(rng, ring, 8)
        c = random_integral(rng, ring, 3)
        if c.is_zero():
            continue
        g = gcd(a * c, b * c)
        assert divides(g, a * c) and divides(g, b * c)
        assert divides(c, g)


def test_canonical_ramified_primes(eisenstein, gaussian):
    assert default_pi(eisenstein) == KElem(eisenstein, 0, 2)
    assert default_pi(gaussian) == KElem(gaussian, 2, 1)
    assert ramified_primes(make_ring(-8)) == [2]
    assert ramified_prime(make_ring(-11), 11).norm() == 11
    with pytest.raises(NotRamified):
        ramified_prime(gaussian, 3)


@pytest.mark.parametrize('d', SUPPORTED_DISCRIMINANTS)
def test_residue_map_is_a_ring_homomorphism(d, rng):
    ring = make_ring(d)
    for p in ramified_primes(ring):
        pi = ramified_prime(ring, p)
        reduce = residue_map(ring, pi)
        assert reduce.p == p
        assert reduce(pi) == 0
        assert reduce(KElem(ring, 2, 0)) == 1
        for _ in range(50):
            x = random_integral(rng, ring, 10)
            y = random_integral(rng, ring, 10)
            assert reduce(x + y) == (reduce(x) + reduce(y)) % p
            assert reduce(x * y) == (reduce(x) * reduce(y)) % p
            assert reduce(x.conjugate()) == reduce(x)


def test_text_forms(eisenstein, gaussian):
    x = KElem(eisenstein, 1, 1)
    assert format_element(x) == "1/2+1/2*sqrt(-3)"
    assert parse_element("1/2+1/2*sqrt(-3)", eisenstein) == x
    assert parse_element("-pi", gaussian) == KElem(gaussian, -2, -1)
    assert parse_element("w", eisenstein) == generator(eisenstein)
    assert parse_element("3/4", gaussian) == Fraction(3, 4)
    assert KRational(eisenstein, 1, 1, 3).to_json() == "1/6+1/6*sqrt(-3)"
    assert KElem(gaussian, 2, 1).to_json() == [2, 1]


def test_text_form_errors(eisenstein):
    with pytest.raises(InputFormatError):
        parse_element("i", eisenstein, field='x')
    with pytest.raises(MixedRings):
        parse_element("1+sqrt(-4)", eisenstein)
    with pytest.raises(InputFormatError) as info:
        element_from_json(True, eisenstein, field='gram[0][1]')
    assert info.value.field == 'gram[0][1]'
    with pytest.raises(InputFormatError):
        element_from_json([1, 2, 3], eisenstein)
    assert element_from_json([0, 2], eisenstein) == default_pi(eisenstein)


def test_worked_divisions(gaussian, eisenstein):
    q, r = euclid_divmod(KElem(gaussian, 10, 0), KElem(gaussian, 2, 1))
    assert (q, r) == (KElem(gaussian, 4, -2), KElem(gaussian, 2, 0))
    q, r = euclid_divmod(KElem(eisenstein, 6, 0), KElem(eisenstein, 0, 2))
    assert (q, r) == (KElem(eisenstein, 0, -2), KElem(eisenstein, 0, 0))


def test_printed_forms(gaussian, eisenstein):
    assert format_element(KElem(gaussian, 2, 1)) == "1+1/2*sqrt(-4)"
    assert format_element(generator(eisenstein)) == "-1/2+1/2*sqrt(-3)"
    assert format_element(KElem(eisenstein, 6, 0)) == "3"


def test_ramified_prime_rejects_prime_powers_and_zero(gaussian):
    with pytest.raises(NotRamified):
        ramified_prime(make_ring(-8), 4)
    with pytest.raises(NotRamified):
        ramified_prime(gaussian, 0)
    assert ramified_primes(make_ring(-4)) == [2]
    assert ramified_primes(make_ring(-11)) == [11]
