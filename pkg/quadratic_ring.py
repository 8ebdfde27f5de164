"""
Exact arithmetic in imaginary-quadratic fields k = Q(sqrt(D)) and their maximal orders.

Elements are stored in half coordinates: (u + v*sqrt(D)) / (2*den). The orders
supported are the five norm-Euclidean ones, D in {-3, -4, -7, -8, -11}, so Euclidean
division (and therefore gcd, Hermite and Smith forms) is available.
"""

import logging
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, List, Optional, Tuple, Union

from sympy import isprime, primefactors

from lattice_errors import (
    DivisionByZero,
    InputFormatError,
    MixedRings,
    NonIntegralEntries,
    NotRamified,
    UnsupportedDiscriminant,
)

logger = logging.getLogger(__name__)

SUPPORTED_DISCRIMINANTS = (-3, -4, -7, -8, -11)

Scalar = Union[int, Fraction, 'KRational']


@dataclass(frozen=True)
class RingDesc:
    """The maximal order O_k of k = Q(sqrt(discriminant))."""
    discriminant: int
    unit_count: int

    @property
    def different_generator(self) -> 'KElem':
        """sqrt(D), which generates the different of O_k."""
        return KElem(self, 0, 2)

    @property
    def name(self) -> str:
        return f"O_k(D={self.discriminant})"

    def __str__(self) -> str:
        return self.name


@lru_cache(maxsize=None)
def make_ring(discriminant: int) -> RingDesc:
    """
    Build the descriptor for one of the supported orders.

    Raises:
        UnsupportedDiscriminant: for any D outside the norm-Euclidean set.
    """
    if discriminant not in SUPPORTED_DISCRIMINANTS:
        raise UnsupportedDiscriminant(
            f"Discriminant {discriminant} is not one of {list(SUPPORTED_DISCRIMINANTS)}")
    unit_count = {-3: 6, -4: 4}.get(discriminant, 2)
    ring = RingDesc(discriminant, unit_count)
    found = len(units(ring))
    if found != unit_count:
        raise UnsupportedDiscriminant(f"Unit search found {found} units for D={discriminant}")
    logger.debug(f"Created ring {ring.name} with {unit_count} units")
    return ring


class KRational:
    """
    An element of k, (u + v*sqrt(D)) / (2*den) in lowest terms.

    Instances are immutable; arithmetic returns a KElem whenever the result has
    denominator one.
    """

    __slots__ = ('ring', 'u', 'v', 'den')

    def __init__(self, ring: RingDesc, u: int, v: int, den: int = 1):
        if den == 0:
            raise DivisionByZero("Zero denominator")
        if den < 0:
            u, v, den = -u, -v, -den
        g = math.gcd(math.gcd(u, v), den)
        if g > 1:
            u, v, den = u // g, v // g, den // g
        object.__setattr__(self, 'ring', ring)
        object.__setattr__(self, 'u', u)
        object.__setattr__(self, 'v', v)
        object.__setattr__(self, 'den', den)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @staticmethod
    def build(ring: RingDesc, u: int, v: int, den: int = 1) -> 'KRational':
        value = KRational(ring, u, v, den)
        if value.den == 1:
            return KElem(ring, value.u, value.v)
        return value

    @staticmethod
    def from_rational(ring: RingDesc, q: Union[int, Fraction]) -> 'KRational':
        q = Fraction(q)
        return KRational.build(ring, 2 * q.numerator, 0, q.denominator)

    # -- structure -------------------------------------------------------
    @property
    def numerator(self) -> 'KElem':
        return KElem(self.ring, self.u, self.v)

    @property
    def denominator(self) -> int:
        return self.den

    def is_zero(self) -> bool:
        return self.u == 0 and self.v == 0

    def is_integral(self) -> bool:
        return self.den == 1 and (self.u - self.v * self.ring.discriminant) % 2 == 0

    def rational_value(self) -> Fraction:
        if self.v != 0:
            raise ValueError(f"{self} is not rational")
        return Fraction(self.u, 2 * self.den)

    def to_integral(self) -> 'KElem':
        if not self.is_integral():
            raise NonIntegralEntries(f"{self} is not in {self.ring.name}")
        return KElem(self.ring, self.u, self.v)

    def real_part(self) -> Fraction:
        return Fraction(self.u, 2 * self.den)

    def sqrt_coefficient(self) -> Fraction:
        """b in a + b*sqrt(D)."""
        return Fraction(self.v, 2 * self.den)

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other) -> Optional['KRational']:
        if isinstance(other, KRational):
            if other.ring.discriminant != self.ring.discriminant:
                raise MixedRings(f"Cannot combine {self.ring.name} and {other.ring.name}")
            return other
        if isinstance(other, (int, Fraction)):
            return KRational.from_rational(self.ring, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return KRational.build(self.ring, self.u * o.den + o.u * self.den,
                               self.v * o.den + o.v * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return KRational.build(self.ring, -self.u, -self.v, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self.ring.discriminant
        u = self.u * o.u + self.v * o.v * d
        v = self.u * o.v + self.v * o.u
        return KRational.build(self.ring, u, v, 2 * self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> 'KRational':
        if self.is_zero():
            raise DivisionByZero(f"{self} has no inverse")
        m = self.u * self.u - self.ring.discriminant * self.v * self.v
        return KRational.build(self.ring, 4 * self.den * self.u, -4 * self.den * self.v, m)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = KRational.from_rational(self.ring, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conj(self) -> 'KRational':
        return KRational.build(self.ring, self.u, -self.v, self.den)

    def conjugate(self) -> 'KRational':
        return self.conj()

    def norm(self) -> Fraction:
        return Fraction(self.u * self.u - self.ring.discriminant * self.v * self.v,
                        4 * self.den * self.den)

    def trace(self) -> Fraction:
        return Fraction(self.u, self.den)

    # -- comparison / hashing -------------------------------------------
    def __eq__(self, other):
        if isinstance(other, KRational):
            return (self.ring.discriminant == other.ring.discriminant and self.u == other.u
                    and self.v == other.v and self.den == other.den)
        if isinstance(other, (int, Fraction)):
            return self.v == 0 and Fraction(self.u, 2 * self.den) == other
        return NotImplemented

    def __hash__(self):
        if self.v == 0:
            return hash(Fraction(self.u, 2 * self.den))
        return hash((self.ring.discriminant, self.u, self.v, self.den))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"{type(self).__name__}({self.ring.discriminant}, {format_element(self)!r})"

    def __str__(self):
        return format_element(self)

    def to_json(self):
        """[u, v] for integral coordinates, the reduced text form otherwise."""
        if self.den == 1:
            return [self.u, self.v]
        return format_element(self)


class KElem(KRational):
    """(u + v*sqrt(D)) / 2 with integer u, v; integral iff u = v*D (mod 2)."""

    __slots__ = ()

    def __init__(self, ring: RingDesc, u: int, v: int):
        super().__init__(ring, u, v, 1)


def elem(ring: RingDesc, value: Union[int, Fraction, KRational]) -> KRational:
    """Lift an integer or rational into k."""
    if isinstance(value, KRational):
        return value
    return KRational.from_rational(ring, value)


def one(ring: RingDesc) -> KElem:
    return KElem(ring, 2, 0)


def zero(ring: RingDesc) -> KElem:
    return KElem(ring, 0, 0)


# -- units, generators, primes --------------------------------------------

@lru_cache(maxsize=None)
def units(ring: RingDesc) -> Tuple[KElem, ...]:
    """All units of O_k, found by a box search on norm(x) = 1, largest (u, v) first."""
    d = ring.discriminant
    found = []
    for u in range(-2, 3):
        for v in range(-2, 3):
            if (u - v * d) % 2 == 0 and u * u - d * v * v == 4:
                found.append(KElem(ring, u, v))
    found.sort(key=lambda e: (e.u, e.v), reverse=True)
    return tuple(found)


def generator(ring: RingDesc) -> KElem:
    """omega for D=-3, i for D=-4, (D+sqrt(D))/2 otherwise. Always has v = 1."""
    d = ring.discriminant
    if d == -3:
        return KElem(ring, -1, 1)
    if d == -4:
        return KElem(ring, 0, 1)
    return KElem(ring, d, 1)


def _height(x: KRational) -> Fraction:
    if x.ring.discriminant % 2 == 0:
        return Fraction(abs(x.u), 2) + abs(x.v)
    return Fraction(abs(x.u) + abs(x.v))


def canonical_associate(x: KElem) -> Tuple[KElem, KElem]:
    """
    Pick the canonical generator of the ideal (x).

    Among the associates with trace >= 0, the one of least coordinate height wins,
    ties going to the lexicographically largest (u, v).

    Returns:
        (c, e) with c = e * x and e a unit.
    """
    ring = x.ring
    if x.is_zero():
        return x, one(ring)
    candidates = [(e * x, e) for e in units(ring)]
    candidates = [(c, e) for c, e in candidates if c.u >= 0]
    c, e = max(candidates, key=lambda ce: (-_height(ce[0]), ce[0].u, ce[0].v))
    return c, e


def is_unit(x: KRational) -> bool:
    return x.is_integral() and x.norm() == 1


def _round_toward_zero_ties(q: Fraction) -> int:
    f = math.floor(q)
    frac = q - f
    if frac > Fraction(1, 2):
        return f + 1
    if frac < Fraction(1, 2):
        return f
    return f if f >= 0 else f + 1


def _round_half_up(q: Fraction) -> int:
    return math.floor(q + Fraction(1, 2))


def _round_quotient(x: KRational, rounder: Callable[[Fraction], int]) -> KElem:
    ring = x.ring
    big_u = Fraction(x.u, x.den)
    big_v = Fraction(x.v, x.den)
    v = rounder(big_v)
    parity = (v * ring.discriminant) % 2
    u = 2 * rounder((big_u - parity) / 2) + parity
    return KElem(ring, u, v)


def _check_pair(a: KRational, b: KRational):
    if a.ring.discriminant != b.ring.discriminant:
        raise MixedRings(f"Cannot combine {a.ring.name} and {b.ring.name}")
    if not (a.is_integral() and b.is_integral()):
        raise NonIntegralEntries(f"Euclidean division needs integral operands, got {a}, {b}")


def euclid_divmod(a: KElem, b: KElem) -> Tuple[KElem, KElem]:
    """
    Euclidean division a = q*b + r with norm(r) < norm(b).

    a/b = (U + V*sqrt(D))/2 is rounded by taking v = round(V) and u the nearest
    integer to U of the parity that makes q integral; ties go toward zero.
    """
    _check_pair(a, b)
    if b.is_zero():
        raise DivisionByZero(f"Division of {a} by zero")
    q = _round_quotient(a / b, _round_toward_zero_ties)
    r = a - q * b
    return q, r


def reduce_mod(a: KElem, b: KElem) -> KElem:
    """Remainder of a modulo (b) that depends only on the coset a + (b)."""
    _check_pair(a, b)
    if b.is_zero():
        return a
    q = _round_quotient(a / b, _round_half_up)
    return a - q * b


def gcd(a: KElem, b: KElem) -> KElem:
    """Canonical generator of the ideal (a, b)."""
    _check_pair(a, b)
    while not b.is_zero():
        _, r = euclid_divmod(a, b)
        a, b = b, r
    return canonical_associate(a)[0]


def divides(a: KElem, b: KElem) -> bool:
    """True when a | b in O_k."""
    if a.is_zero():
        return b.is_zero()
    return (b / a).is_integral()


def ramified_prime(ring: RingDesc, p: int) -> KElem:
    """
    Canonical generator of the prime of O_k above a ramified rational prime p.

    Raises:
        NotRamified: if p does not divide the discriminant.
    """
    if p < 2 or ring.discriminant % p != 0 or not isprime(p):
        raise NotRamified(f"{p} is not a ramified prime of {ring.name}")
    d = ring.discriminant
    bound = math.isqrt(4 * p) + 1
    for u in range(-bound, bound + 1):
        for v in range(-bound, bound + 1):
            if (u - v * d) % 2 == 0 and u * u - d * v * v == 4 * p:
                return canonical_associate(KElem(ring, u, v))[0]
    raise NotRamified(f"No element of norm {p} in {ring.name}")


def ramified_primes(ring: RingDesc) -> List[int]:
    return primefactors(abs(ring.discriminant))


def default_pi(ring: RingDesc) -> KElem:
    """The ramified prime the catalog chains use (the only one for D=-3, -4)."""
    return ramified_prime(ring, ramified_primes(ring)[0])


@dataclass(frozen=True)
class ResidueField:
    """The reduction map O_k -> O_k/(pi) = F_p for a ramified prime pi."""
    ring: RingDesc
    pi: KElem
    p: int
    root: int

    def __call__(self, x: KRational) -> int:
        if not x.is_integral():
            raise NonIntegralEntries(f"{x} is not integral, cannot reduce mod {self.pi}")
        g = generator(self.ring)
        c1 = x.v
        c0 = (x.u - x.v * g.u) // 2
        return (c0 + c1 * self.root) % self.p


def residue_map(ring: RingDesc, pi: KElem) -> ResidueField:
    p = pi.norm()
    if p.denominator != 1 or ring.discriminant % int(p) != 0:
        raise NotRamified(f"{pi} does not generate a ramified prime of {ring.name}")
    p = int(p)
    g = generator(ring)
    for a in range(p):
        if ((g - a) / pi).is_integral():
            return ResidueField(ring, pi, p, a)
    raise NotRamified(f"{pi} does not generate a prime ideal")


# -- text and JSON forms ---------------------------------------------------

_SQRT_RE = re.compile(r'^(.*?)([+-]?)\s*([0-9/]*)\s*\*?\s*sqrt\(\s*(-?\d+)\s*\)$')


def _fraction(text: str, field: Optional[str]) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputFormatError(f"Cannot read rational number {text!r}", field=field)


def format_element(x: KRational) -> str:
    """Reduced text form a+b*sqrt(D)."""
    a = x.real_part()
    b = x.sqrt_coefficient()
    d = x.ring.discriminant
    if b == 0:
        return str(a)
    if a == 0:
        return f"{b}*sqrt({d})"
    if b > 0:
        return f"{a}+{b}*sqrt({d})"
    return f"{a}-{-b}*sqrt({d})"


def parse_element(text: str, ring: RingDesc, field: Optional[str] = None) -> KRational:
    """
    Read an element from text: "a+b*sqrt(D)", "p/q", "pi", "i", "w"/"omega",
    each optionally negated.
    """
    s = text.strip().replace(' ', '')
    negate = False
    if s.startswith('-') and s[1:] in ('pi', 'i', 'w', 'omega'):
        negate, s = True, s[1:]
    if s in ('pi', 'i', 'w', 'omega'):
        if s == 'pi':
            value = default_pi(ring)
        elif s == 'i':
            if ring.discriminant != -4:
                raise InputFormatError(f"'i' is only defined for D=-4", field=field)
            value = KElem(ring, 0, 1)
        else:
            if ring.discriminant != -3:
                raise InputFormatError(f"'{s}' is only defined for D=-3", field=field)
            value = generator(ring)
        return -value if negate else value
    if 'sqrt' in s:
        m = _SQRT_RE.match(s)
        if not m:
            raise InputFormatError(f"Cannot parse element {text!r}", field=field)
        head, sign, coeff, d = m.groups()
        if int(d) != ring.discriminant:
            raise MixedRings(f"Element {text!r} lives in D={d}, expected {ring.discriminant}",
                             field=field)
        a = _fraction(head, field) if head else Fraction(0)
        b = _fraction(coeff, field) if coeff else Fraction(1)
        if sign == '-':
            b = -b
    else:
        a, b = _fraction(s, field), Fraction(0)
    den = a.denominator * b.denominator // math.gcd(a.denominator, b.denominator)
    u = a * 2 * den
    v = b * 2 * den
    return KRational.build(ring, int(u), int(v), den)


def element_from_json(value, ring: RingDesc, field: Optional[str] = None) -> KRational:
    """Accept [u, v], an integer, or a text form."""
    if isinstance(value, bool):
        raise InputFormatError(f"Boolean is not a ring element", field=field)
    if isinstance(value, list):
        if len(value) != 2 or not all(isinstance(c, int) and not isinstance(c, bool) for c in value):
            raise InputFormatError(f"Element pair must be [u, v] with integers", field=field)
        return KElem(ring, value[0], value[1])
    if isinstance(value, int):
        return KRational.from_rational(ring, value)
    if isinstance(value, str):
        return parse_element(value, ring, field)
    raise InputFormatError(f"Cannot read ring element {value!r}", field=field)
