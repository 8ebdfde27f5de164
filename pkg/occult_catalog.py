"""
Catalog of the four occult cases: profiles, lattice builders and verifiers.

Each profile records the lattice invariants stated for the case; the builder
realizes them with an explicit block Gram matrix and the verifier checks a lattice
against the profile.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from sympy import factorint, isprime

from exact_linalg import ExactMatrix, det
from form_converter import (
    duals_agree,
    sym_from_herm_gaussian,
    sym_from_herm_scaled,
    trace_sym_form,
    zform_disc_group,
    zform_signature,
)
from hermitian_lattice import (
    HermLattice,
    contains,
    disc_group,
    dual,
    is_self_dual,
    reduce_mod_pi,
    scale,
    signature,
    standard_lattice,
    verify_chain,
)
from lattice_errors import BadD, InputFormatError, LatticeError, UnknownCase, WrongDiscriminant
from quadratic_ring import KElem, RingDesc, default_pi, make_ring

logger = logging.getLogger(__name__)

ISOMETRY_NOTE = "profile-verified, isometry-class unverified"


class CaseName(Enum):
    CUBIC_SURFACES = "cubic-surfaces"
    CUBIC_THREEFOLDS = "cubic-threefolds"
    GENUS3 = "genus3"
    GENUS4 = "genus4"


def star_degree(d: int, n: int) -> int:
    """Degree of the polarization on the *-moduli: d^(n-1) for odd n, d^(n-2) for even n."""
    _check_d(d)
    if n < 1:
        raise InputFormatError("n must be positive", field='n')
    return d ** (n - 1) if n % 2 else d ** (n - 2)


def star_t_function(d: int, n: int, p: int) -> int:
    """t(p) = 2*floor((n-1)/2) for primes p dividing d, else 0."""
    _check_d(d)
    if n < 1:
        raise InputFormatError("n must be positive", field='n')
    if not isprime(p):
        raise InputFormatError(f"{p} is not prime", field='p')
    return 2 * ((n - 1) // 2) if d % p == 0 else 0


def _check_d(d: int):
    if not isinstance(d, int) or d <= 1 or any(e > 1 for e in factorint(d).values()):
        raise BadD(f"d must be a square-free integer > 1, got {d}", field='d')


@dataclass
class CaseProfile:
    name: str
    discriminant: int
    d: Optional[int]
    n: int
    signature: Tuple[int, int]
    dim_a: int
    pol_degree: int
    quotient_1: List[int]
    quotient_2: List[int]
    zrank: int
    excluded_cycle_t: int
    radical_dimension: int
    l_level_facts: Dict[str, Any] = field(default_factory=dict)
    eigenspace_dimension: Optional[int] = None

    def to_json(self) -> dict:
        return {
            'name': self.name,
            'discriminant': self.discriminant,
            'd': self.d,
            'n': self.n,
            'signature': list(self.signature),
            'dim_A': self.dim_a,
            'pol_degree': self.pol_degree,
            'quotient_1': self.quotient_1,
            'quotient_2': self.quotient_2,
            'zrank': self.zrank,
            'excluded_cycle_t': self.excluded_cycle_t,
            'radical_dimension': self.radical_dimension,
            'L_level_facts': self.l_level_facts,
            'eigenspace_dimension': self.eigenspace_dimension,
        }


@dataclass
class CheckResult:
    id: str
    expected: Any
    actual: Any
    passed: bool

    def to_json(self) -> dict:
        return {'id': self.id, 'expected': self.expected, 'actual': self.actual, 'pass': self.passed}


@dataclass
class CaseReport:
    case: str
    checks: List[CheckResult] = field(default_factory=list)
    note: str = ISOMETRY_NOTE

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed_checks(self) -> List[str]:
        return [c.id for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {
            'case': self.case,
            'checks': [c.to_json() for c in self.checks],
            'pass': self.passed,
            'note': self.note,
        }


# -- block Gram matrices -----------------------------------------------------

def g4_block(ring: RingDesc) -> ExactMatrix:
    """3*I_4 + pi*T with T antisymmetric, t12 = t34 = t24 = 1, t13 = -1."""
    pi = default_pi(ring)
    t = [[0] * 4 for _ in range(4)]
    for (i, j, value) in ((0, 1, 1), (2, 3, 1), (0, 2, -1), (1, 3, 1)):
        t[i][j] = value
        t[j][i] = -value
    rows = [[(3 if i == j else 0) + pi * t[i][j] for j in range(4)] for i in range(4)]
    return ExactMatrix(rows, ring)


def e_block(ring: RingDesc) -> ExactMatrix:
    """[[3, pi], [-pi, 0]], signature (1, 1)."""
    pi = default_pi(ring)
    return ExactMatrix([[3, pi], [-pi, 0]], ring)


def b2_block(ring: RingDesc) -> ExactMatrix:
    """[[2, 1+i], [1-i, 2]] over the Gaussian integers."""
    pi = default_pi(ring)
    return ExactMatrix([[2, pi], [pi.conjugate(), 2]], ring)


def unary(ring: RingDesc, value: int) -> ExactMatrix:
    return ExactMatrix([[value]], ring)


class OccultCatalog:
    """Registry of the occult cases."""

    def __init__(self):
        self.profiles: Dict[str, CaseProfile] = {
            CaseName.CUBIC_SURFACES.value: CaseProfile(
                name=CaseName.CUBIC_SURFACES.value,
                discriminant=-3, d=None, n=5, signature=(4, 1), dim_a=5, pol_degree=1,
                quotient_1=[], quotient_2=[3] * 5, zrank=10,
                excluded_cycle_t=1, radical_dimension=0,
            ),
            CaseName.CUBIC_THREEFOLDS.value: CaseProfile(
                name=CaseName.CUBIC_THREEFOLDS.value,
                discriminant=-3, d=3, n=11, signature=(10, 1), dim_a=11, pol_degree=3 ** 10,
                quotient_1=[3] * 10, quotient_2=[3], zrank=22,
                excluded_cycle_t=3, radical_dimension=10,
                l_level_facts={
                    'dual_over_pi_inverse': [3],
                    'dual_quotient': [3] * 12,
                    'symmetric_discriminant': [3],
                    'symmetric_signature': [20, 2],
                },
                eigenspace_dimension=10,
            ),
            CaseName.GENUS3.value: CaseProfile(
                name=CaseName.GENUS3.value,
                discriminant=-4, d=2, n=7, signature=(6, 1), dim_a=7, pol_degree=2 ** 6,
                quotient_1=[2] * 6, quotient_2=[2], zrank=14,
                excluded_cycle_t=2, radical_dimension=6,
                l_level_facts={
                    'dual_over_pi_inverse': [2],
                    'dual_quotient': [2] * 8,
                    'symmetric_discriminant': [2] * 8,
                    'symmetric_signature': [12, 2],
                    'duals_agree': True,
                },
                eigenspace_dimension=6,
            ),
            CaseName.GENUS4.value: CaseProfile(
                name=CaseName.GENUS4.value,
                discriminant=-3, d=3, n=10, signature=(9, 1), dim_a=10, pol_degree=3 ** 8,
                quotient_1=[3] * 8, quotient_2=[3, 3], zrank=20,
                excluded_cycle_t=2, radical_dimension=8,
                l_level_facts={
                    'dual_over_pi_inverse': [3, 3],
                    'dual_quotient': [3] * 12,
                    'symmetric_discriminant': [3, 3],
                    'symmetric_signature': [18, 2],
                },
                eigenspace_dimension=9,
            ),
        }

    def list_cases(self) -> List[str]:
        return [c.value for c in CaseName]

    def get_profile(self, name: str) -> CaseProfile:
        if name not in self.profiles:
            raise UnknownCase(f"Unknown case {name!r}; expected one of {self.list_cases()}",
                              field='case')
        return self.profiles[name]

    def build(self, name: str) -> HermLattice:
        """Block-Gram lattice realizing the profile of `name`."""
        profile = self.get_profile(name)
        ring = make_ring(profile.discriminant)
        if name == CaseName.CUBIC_SURFACES.value:
            gram = ExactMatrix.diagonal([1, 1, 1, 1, -1], ring)
        elif name == CaseName.CUBIC_THREEFOLDS.value:
            gram = ExactMatrix.block_diagonal([g4_block(ring), g4_block(ring), e_block(ring),
                                               unary(ring, 1)])
        elif name == CaseName.GENUS3.value:
            gram = ExactMatrix.block_diagonal([b2_block(ring)] * 3 + [unary(ring, -1)])
        else:
            gram = ExactMatrix.block_diagonal([g4_block(ring), g4_block(ring), unary(ring, 1),
                                               unary(ring, -1)])
        logger.debug(f"Built {name} lattice of rank {gram.nrows} over {ring.name}")
        return standard_lattice(ring, gram)

    def verify(self, name: str, lattice: Optional[HermLattice] = None) -> CaseReport:
        """
        Check a lattice against the profile of `name` (the built lattice by default).

        Raises:
            UnknownCase: for an unknown name.
            WrongDiscriminant: if the lattice lives over another ring.
        """
        profile = self.get_profile(name)
        if lattice is None:
            lattice = self.build(name)
        if lattice.ring.discriminant != profile.discriminant:
            raise WrongDiscriminant(
                f"{name} lives over D={profile.discriminant}, lattice is over D={lattice.ring.discriminant}")
        report = CaseReport(case=name)
        pi = default_pi(lattice.ring)

        def check(check_id: str, expected, compute):
            try:
                actual = compute()
            except LatticeError as e:
                actual = f"{type(e).__name__}: {e.message}"
            report.checks.append(CheckResult(check_id, expected, actual, actual == expected))

        check('rank', profile.n, lambda: lattice.rank)
        if lattice.rank != profile.n:
            logger.info(f"{name}: rank {lattice.rank} does not match profile, remaining checks skipped")
            return report

        check('signature', list(profile.signature), lambda: list(signature(lattice)))
        chain = None
        try:
            chain = verify_chain(lattice, pi)
        except LatticeError as e:
            report.checks.append(CheckResult('chain', True, f"{type(e).__name__}: {e.message}", False))
        if chain is not None:
            check('chain', True, lambda: chain.holds)
            check('quotient_1', profile.quotient_1,
                  lambda: list(chain.inner.shape) if chain.holds else None)
            check('quotient_2', profile.quotient_2,
                  lambda: list(chain.outer.shape) if chain.holds else None)
            check('chain_order', chain.total_order,
                  lambda: chain.inner.order * chain.outer.order if chain.holds else None)
        if name == CaseName.CUBIC_SURFACES.value:
            check('self_dual', True, lambda: is_self_dual(lattice))
        check('radical_dimension', profile.radical_dimension,
              lambda: reduce_mod_pi(lattice, pi).radical_dimension)
        check('trace_signature', [2 * profile.signature[0], 2 * profile.signature[1]],
              lambda: list(zform_signature(trace_sym_form(lattice))))
        if profile.l_level_facts:
            self._check_l_level(profile, lattice, pi, check)
        logger.info(f"{name}: {'pass' if report.passed else 'FAIL ' + str(report.failed_checks())}")
        return report

    def _check_l_level(self, profile: CaseProfile, lattice: HermLattice, pi: KElem, check):
        facts = profile.l_level_facts
        big_l = scale(dual(lattice), pi)
        l_dual = dual(big_l)
        l_pi_inv = scale(big_l, pi.inverse())

        def dual_over_pi_inverse():
            if not contains(l_dual, l_pi_inv):
                return None
            return list(disc_group(l_pi_inv, l_dual).shape)

        check('L_dual_over_pi_inverse', facts['dual_over_pi_inverse'], dual_over_pi_inverse)
        check('L_dual_quotient', facts['dual_quotient'], lambda: list(disc_group(big_l, l_dual).shape))
        if profile.discriminant == -3:
            zform = lambda: sym_from_herm_scaled(big_l)
        else:
            zform = lambda: sym_from_herm_gaussian(big_l)
        check('L_zrank', profile.zrank, lambda: zform().zrank)
        check('L_symmetric_discriminant', facts['symmetric_discriminant'],
              lambda: list(zform_disc_group(zform()).shape))
        check('L_symmetric_signature', facts['symmetric_signature'],
              lambda: list(zform_signature(zform())))
        if 'duals_agree' in facts:
            check('L_duals_agree', facts['duals_agree'], lambda: duals_agree(big_l, zform()))

    def verify_all(self) -> Dict[str, CaseReport]:
        return {name: self.verify(name) for name in self.list_cases()}


# Global catalog instance
_catalog: Optional[OccultCatalog] = None


def get_occult_catalog() -> OccultCatalog:
    """Get the global catalog instance."""
    global _catalog
    if _catalog is None:
        _catalog = OccultCatalog()
    return _catalog


def case_profile(name: str) -> CaseProfile:
    return get_occult_catalog().get_profile(name)


def build_case_lattice(name: str) -> HermLattice:
    return get_occult_catalog().build(name)


def verify_case(name: str, lattice: Optional[HermLattice] = None) -> CaseReport:
    return get_occult_catalog().verify(name, lattice)


def verify_all() -> Dict[str, CaseReport]:
    return get_occult_catalog().verify_all()
