"""
Hermitian O_k-lattices.

A HermSpace is k^n with a nonsingular hermitian Gram matrix G and the form
h(x, y) = x^T G conj(y), linear in the first slot. A HermLattice is the O_k-span of
the columns of a nonsingular basis matrix B; its lattice Gram is B^T G conj(B).
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from sympy import GF, ZZ, factorint, isprime
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

from exact_linalg import (
    ExactMatrix,
    congruence_diagonalize,
    det,
    inertia,
    inverse,
    matrix_from_json,
    parse_ring_tag,
    snf,
    solve,
    span,
)
from lattice_errors import (
    InputFormatError,
    NonIntegralLattice,
    NotASublattice,
    NotHermitian,
    NotRamifiedElement,
    SingularGram,
    SingularMatrix,
    ZeroScalar,
)
from quadratic_ring import KElem, KRational, RingDesc, elem, generator, residue_map

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HermSpace:
    ring: RingDesc
    gram: ExactMatrix

    def __post_init__(self):
        if not self.gram.is_hermitian():
            raise NotHermitian("Gram matrix is not hermitian", field='gram')
        if det(self.gram) == 0:
            raise SingularGram("Gram matrix is singular", field='gram')

    @property
    def dim(self) -> int:
        return self.gram.nrows

    def h(self, x: Sequence, y: Sequence) -> KRational:
        """h(x, y) = sum x_i G_ij conj(y_j)."""
        total = elem(self.ring, 0)
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for j, yj in enumerate(y):
                if yj != 0:
                    total = total + xi * self.gram[i, j] * yj.conjugate()
        return total


@dataclass(frozen=True)
class HermLattice:
    space: HermSpace
    basis: ExactMatrix

    def __post_init__(self):
        if self.basis.shape != (self.space.dim, self.space.dim):
            raise SingularGram(f"Basis shape {self.basis.shape} does not fit dimension {self.space.dim}",
                               field='basis')
        if det(self.basis) == 0:
            raise SingularGram("Lattice basis is singular", field='basis')

    @property
    def ring(self) -> RingDesc:
        return self.space.ring

    @property
    def rank(self) -> int:
        return self.space.dim

    def gram(self) -> ExactMatrix:
        """Lattice Gram with entries h(b_i, b_j)."""
        return self.basis.transpose() * self.space.gram * self.basis.conj()

    def is_integral(self) -> bool:
        return self.gram().is_integral()

    def canonical_basis(self) -> ExactMatrix:
        return span(self.basis)

    def coordinates(self, x: Sequence) -> List[KRational]:
        """Coordinates of an ambient vector in the lattice basis."""
        col = ExactMatrix.from_columns([list(x)], self.ring)
        return solve(self.basis, col).column(0)

    def contains_vector(self, x: Sequence) -> bool:
        return all(c.is_integral() for c in self.coordinates(x))

    def __eq__(self, other):
        if not isinstance(other, HermLattice):
            return NotImplemented
        return self.space.gram == other.space.gram and contains(self, other) and contains(other, self)

    def __hash__(self):
        return hash((self.space.gram, self.canonical_basis()))

    def to_json(self) -> dict:
        return {
            'ring': self.ring.discriminant,
            'gram': self.space.gram.to_json(),
            'basis': self.basis.to_json(),
        }


def lattice_from_json(data, field: str = 'lattice') -> HermLattice:
    """{"ring": D, "gram": matrix, "basis": matrix (optional)}"""
    if not isinstance(data, dict) or 'gram' not in data:
        raise InputFormatError("Lattice must be an object with 'gram'", field=field)
    ring = parse_ring_tag(data.get('ring'), f"{field}.ring")
    if ring is None:
        raise InputFormatError("Hermitian lattices need a discriminant ring", field=f"{field}.ring")
    gram = matrix_from_json(data['gram'], f"{field}.gram", ring=ring)
    space = HermSpace(ring, ExactMatrix(gram.rows(), ring))
    if data.get('basis') is None:
        return HermLattice(space, ExactMatrix.identity(space.dim, ring))
    basis = matrix_from_json(data['basis'], f"{field}.basis", ring=ring)
    return HermLattice(space, ExactMatrix(basis.rows(), ring))


def standard_lattice(ring: RingDesc, gram: ExactMatrix) -> HermLattice:
    """O_k^n inside the space with Gram matrix `gram`."""
    space = HermSpace(ring, ExactMatrix(gram.rows(), ring))
    return HermLattice(space, ExactMatrix.identity(space.dim, ring))


def lattice_from_generators(space: HermSpace, generators: ExactMatrix) -> HermLattice:
    """The O_k-span of the columns of `generators`; it must have full rank."""
    basis = span(ExactMatrix(generators.rows(), space.ring, ncols=generators.ncols))
    if basis.ncols != space.dim:
        raise SingularGram(f"Generators span rank {basis.ncols}, expected {space.dim}")
    return HermLattice(space, basis)


def contains(outer: HermLattice, inner: HermLattice) -> bool:
    """True when inner is a sublattice of outer."""
    return _transition(outer, inner).is_integral()


def _transition(outer: HermLattice, inner: HermLattice) -> ExactMatrix:
    # inner.B = outer.B * C
    return solve(outer.basis, inner.basis)


def dual(lattice: HermLattice) -> HermLattice:
    """L^v = {x : h(x, L) in O_k}, with basis B M^{-T} for the lattice Gram M."""
    m = lattice.gram()
    try:
        m_inv = inverse(m)
    except SingularMatrix:
        raise SingularGram("Lattice Gram is singular")
    return HermLattice(lattice.space, lattice.basis * m_inv.transpose())


def scale(lattice: HermLattice, alpha: Union[int, Fraction, KRational]) -> HermLattice:
    """alpha * L in the same space."""
    if alpha == 0:
        raise ZeroScalar("Cannot scale a lattice by zero")
    return HermLattice(lattice.space, lattice.basis.scale(elem(lattice.ring, alpha)))


# -- discriminant groups ---------------------------------------------------

def _multiplication_matrix(d: KElem) -> List[List[int]]:
    """Z-matrix of multiplication by d on the basis {1, g} of O_k."""
    g = generator(d.ring)

    def coords(x: KRational) -> Tuple[int, int]:
        x = x.to_integral()
        return (x.u - x.v * g.u) // 2, x.v

    a0, a1 = coords(d)
    b0, b1 = coords(d * g)
    return [[a0, b0], [a1, b1]]


def cyclic_factors(d, ring: Optional[RingDesc]) -> List[int]:
    """Invariant factors (> 1) of the abelian group R/(d)."""
    if ring is None or not isinstance(d, KRational):
        n = abs(int(d))
        return [n] if n > 1 else []
    m = DomainMatrix([[ZZ(x) for x in row] for row in _multiplication_matrix(d)], (2, 2), ZZ)
    return [abs(int(f)) for f in invariant_factors(m) if abs(int(f)) > 1]


def primary_shape(factors: Sequence[int]) -> List[int]:
    """Split cyclic orders into prime-power cyclic orders, sorted."""
    shape = []
    for f in factors:
        for p, e in factorint(abs(f)).items():
            shape.append(p ** e)
    return sorted(shape)


def describe_shape(shape: Sequence[int]) -> str:
    """Readable form such as "(Z/3)^10" or "Z/2 x Z/4"; "0" for the trivial group."""
    if not shape:
        return "0"
    parts = []
    for order, count in sorted(Counter(shape).items()):
        parts.append(f"Z/{order}" if count == 1 else f"(Z/{order})^{count}")
    return " x ".join(parts)


@dataclass(frozen=True)
class DiscGroup:
    divisors: Tuple
    order: int
    shape: Tuple[int, ...]

    def describe(self) -> str:
        return describe_shape(self.shape)

    def to_json(self) -> dict:
        return {
            'divisors': [d.to_json() if isinstance(d, KRational) else int(d) for d in self.divisors],
            'order': self.order,
            'shape': list(self.shape),
        }


def group_from_divisors(divisors: Sequence, ring: Optional[RingDesc]) -> DiscGroup:
    """Finite group R^n / diag(divisors) R^n, keeping only nontrivial divisors."""
    nontrivial = []
    factors: List[int] = []
    for d in divisors:
        if d == 0:
            raise SingularGram("Quotient is infinite")
        cyc = cyclic_factors(d, ring)
        if cyc:
            nontrivial.append(d)
            factors.extend(cyc)
    order = 1
    for f in factors:
        order *= f
    return DiscGroup(tuple(nontrivial), order, tuple(primary_shape(factors)))


def disc_group(sub: HermLattice, sup: Optional[HermLattice] = None) -> DiscGroup:
    """
    The finite quotient sup / sub; sup defaults to dual(sub).

    Raises:
        NotASublattice: if sub is not contained in sup, or the two lie in different spaces.
    """
    if sup is None:
        sup = dual(sub)
    elif sub.ring != sup.ring or sub.space.gram != sup.space.gram:
        raise NotASublattice("Lattices lie in different hermitian spaces", field='sup.gram')
    c = _transition(sup, sub)
    if not c.is_integral():
        raise NotASublattice("First lattice is not contained in the second")
    result = snf(c)
    group = group_from_divisors(result.divisors, sub.ring)
    logger.debug(f"Quotient of rank {sub.rank} lattices: {group.describe()}")
    return group


def is_self_dual(lattice: HermLattice) -> bool:
    return dual(lattice) == lattice


def signature(lattice: HermLattice) -> Tuple[int, int]:
    diag, _ = congruence_diagonalize(lattice.gram())
    return inertia(diag)


def is_positive_definite(lattice: HermLattice) -> bool:
    return signature(lattice) == (lattice.rank, 0)


# -- chains ----------------------------------------------------------------

def _check_ramified(ring: RingDesc, pi) -> KElem:
    pi = elem(ring, pi)
    if not pi.is_integral():
        raise NotRamifiedElement(f"{pi} is not integral")
    n = pi.norm()
    if n.denominator != 1 or n < 2 or ring.discriminant % int(n) != 0 or not isprime(int(n)):
        raise NotRamifiedElement(f"{pi} does not generate a ramified prime of {ring.name}")
    return pi.to_integral()


@dataclass
class ChainReport:
    """Outcome of checking Lambda in Lambda^v in pi^-1 Lambda."""
    holds: bool
    pi: KElem
    rank: int
    inner: Optional[DiscGroup] = None
    outer: Optional[DiscGroup] = None
    total_order: int = 0
    multiplicative: bool = False
    degenerate: bool = False
    notes: List[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            'holds': self.holds,
            'pi': self.pi.to_json(),
            'rank': self.rank,
            'quotient_1': self.inner.to_json() if self.inner else None,
            'quotient_2': self.outer.to_json() if self.outer else None,
            'total_order': self.total_order,
            'multiplicative': self.multiplicative,
            'degenerate': self.degenerate,
            'notes': list(self.notes),
        }


def verify_chain(lattice: HermLattice, pi) -> ChainReport:
    """Check Lambda in Lambda^v in pi^-1 Lambda and report both quotients."""
    pi = _check_ramified(lattice.ring, pi)
    report = ChainReport(holds=False, pi=pi, rank=lattice.rank)
    total = int(pi.norm()) ** lattice.rank
    report.total_order = total
    lam_dual = dual(lattice)
    outer = scale(lattice, pi.inverse())
    if not contains(lam_dual, lattice):
        report.notes.append("lattice is not integral")
        logger.info("Chain fails: lattice is not contained in its dual")
        return report
    if not contains(outer, lam_dual):
        report.notes.append("dual is not contained in pi^-1 lattice")
        logger.info("Chain fails: dual is not contained in pi^-1 lattice")
        return report
    report.holds = True
    report.inner = disc_group(lattice, lam_dual)
    report.outer = disc_group(lam_dual, outer)
    report.multiplicative = report.inner.order * report.outer.order == total
    report.degenerate = report.inner.order == 1 or report.outer.order == 1
    if report.degenerate:
        logger.warning(f"Chain holds only degenerately ({report.inner.describe()}, "
                       f"{report.outer.describe()})")
    return report


# -- reduction mod pi -------------------------------------------------------

@dataclass
class ResidueForm:
    """The F_p-valued form on Lambda / pi Lambda and its radical."""
    p: int
    matrix: List[List[int]]
    rank: int
    radical_dimension: int
    radical_basis: List[List[int]]

    def to_json(self) -> dict:
        return {
            'p': self.p,
            'matrix': self.matrix,
            'rank': self.rank,
            'radical_dimension': self.radical_dimension,
            'radical_basis': self.radical_basis,
        }


def reduce_mod_pi(lattice: HermLattice, pi) -> ResidueForm:
    """
    Reduce the lattice Gram modulo a ramified prime pi.

    Conjugation is trivial on O_k/(pi) = F_p, so the result is a symmetric form.
    Its radical is (pi Lambda^v intersected with Lambda) / pi Lambda.
    """
    pi = _check_ramified(lattice.ring, pi)
    m = lattice.gram()
    if not m.is_integral():
        raise NonIntegralLattice("Lattice Gram has non-integral entries")
    reduce = residue_map(lattice.ring, pi)
    p = reduce.p
    values = [[reduce(x) for x in row] for row in m.rows()]
    field_ = GF(p)
    n = lattice.rank
    dm = DomainMatrix([[field_(x) for x in row] for row in values], (n, n), field_)
    r = dm.rank()
    basis: List[List[int]] = []
    if r < n:
        null = dm.transpose().nullspace()
        basis = [[int(x) % p for x in row] for row in null.to_Matrix().tolist()]
    logger.debug(f"Residue form mod {pi}: rank {r}, radical dimension {n - r}")
    return ResidueForm(p, values, r, n - r, basis)
