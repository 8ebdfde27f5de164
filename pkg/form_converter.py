"""
Correspondences between hermitian O_k-lattices and Z-lattices with an O_k-action.

A hermitian lattice L with basis b_1..b_n is viewed as a free Z-module on
{b_1..b_n, g*b_1..g*b_n}, g the canonical generator of O_k. Each recipe below turns
h into a Z-valued form on that basis, and back.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from sympy import ZZ
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
    rank,
    span,
)
from hermitian_lattice import (
    DiscGroup,
    HermLattice,
    HermSpace,
    primary_shape,
)
from lattice_errors import (
    ActionIncompatible,
    InputFormatError,
    NonIntegralLattice,
    SingularGram,
    WrongDiscriminant,
)
from quadratic_ring import KRational, RingDesc, elem, generator

logger = logging.getLogger(__name__)

ALTERNATING = 'alternating'
SYMMETRIC = 'symmetric'


def action_matrix(ring: RingDesc, n: int) -> ExactMatrix:
    """Multiplication by g on {b_1..b_n, g*b_1..g*b_n}: [[0, -N*I], [I, tr*I]]."""
    g = generator(ring)
    tr, nm = g.trace(), g.norm()
    rows = [[0] * (2 * n) for _ in range(2 * n)]
    for j in range(n):
        rows[j][n + j] = -nm
        rows[n + j][j] = 1
        rows[n + j][n + j] = tr
    return ExactMatrix(rows)


@dataclass(frozen=True)
class ZFormWithAction:
    """A Z-valued form S of even rank together with the action J of g."""
    ring: RingDesc
    S: ExactMatrix
    J: ExactMatrix
    kind: str

    @property
    def zrank(self) -> int:
        return self.S.nrows

    def check_action(self):
        """
        Raises:
            ActionIncompatible: if J misses the minimal polynomial of g, is not
                self-adjoint up to conjugation, or S has the wrong symmetry.
        """
        n2 = self.S.nrows
        if not self.S.is_square() or self.J.shape != (n2, n2) or n2 % 2:
            raise ActionIncompatible("S and J must be square of the same even size")
        if not self.J.is_integral():
            raise ActionIncompatible("J must be an integer matrix")
        g = generator(self.ring)
        tr, nm = g.trace(), g.norm()
        ident = ExactMatrix.identity(n2)
        if not (self.J * self.J - self.J.scale(tr) + ident.scale(nm)).is_zero():
            raise ActionIncompatible(f"J does not satisfy x^2 - {tr}x + {nm} = 0")
        j_conj = ident.scale(tr) - self.J
        if self.J.transpose() * self.S != self.S * j_conj:
            raise ActionIncompatible("J is not adjoint to its conjugate under S")
        if self.kind == ALTERNATING and not self.S.is_alternating():
            raise ActionIncompatible("S is not alternating")
        if self.kind == SYMMETRIC and not self.S.is_symmetric():
            raise ActionIncompatible("S is not symmetric")

    def is_unimodular(self) -> bool:
        return abs(det(self.S)) == 1

    def to_json(self) -> dict:
        return {
            'ring': self.ring.discriminant,
            'kind': self.kind,
            'zrank': self.zrank,
            'S': self.S.to_json(),
            'J': self.J.to_json(),
        }


def zform_from_json(data, field: str = 'zform') -> ZFormWithAction:
    """{"ring": D, "kind": "alternating"|"symmetric", "S": matrix, "J": matrix (optional)}"""
    if not isinstance(data, dict) or 'S' not in data:
        raise InputFormatError("Z-form must be an object with 'S'", field=field)
    ring = parse_ring_tag(data.get('ring'), f"{field}.ring")
    if ring is None:
        raise InputFormatError("Z-form needs the discriminant of the acting order", field=f"{field}.ring")
    kind = data.get('kind', SYMMETRIC)
    if kind not in (ALTERNATING, SYMMETRIC):
        raise InputFormatError(f"Unknown form kind {kind!r}", field=f"{field}.kind")
    s = matrix_from_json(data['S'], f"{field}.S")
    if s.ring is not None:
        raise InputFormatError("S must have rational entries", field=f"{field}.S")
    if data.get('J') is None:
        j = action_matrix(ring, s.nrows // 2)
    else:
        j = matrix_from_json(data['J'], f"{field}.J")
    return ZFormWithAction(ring, s, j, kind)


# -- lattice -> Z-form ---------------------------------------------------

def z_form_of(lattice: HermLattice, value: Callable[[KRational], Fraction]) -> ExactMatrix:
    """Entries value(h(z_i, z_j)) on the Z-basis {b_j} + {g*b_j}."""
    m = lattice.gram()
    n = lattice.rank
    g = generator(lattice.ring)
    factors = (
        (elem(lattice.ring, 1), g.conjugate()),
        (g, g * g.conjugate()),
    )
    rows = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
    for bi in range(2):
        for bj in range(2):
            f = factors[bi][bj]
            for i in range(n):
                for j in range(n):
                    rows[bi * n + i][bj * n + j] = value(f * m[i, j])
    return ExactMatrix(rows)


def _require_integral(lattice: HermLattice):
    if not lattice.is_integral():
        raise NonIntegralLattice("Lattice Gram has non-integral entries")


def trace_alt_form(lattice: HermLattice) -> ZFormWithAction:
    """<x, y> = tr(h(x, y) / sqrt(D)), an alternating Z-form."""
    _require_integral(lattice)
    sqrt_d = lattice.ring.different_generator
    s = z_form_of(lattice, lambda x: (x / sqrt_d).trace())
    return ZFormWithAction(lattice.ring, s, action_matrix(lattice.ring, lattice.rank), ALTERNATING)


alt_from_herm = trace_alt_form


def trace_sym_form(lattice: HermLattice) -> ZFormWithAction:
    """s(x, y) = tr(h(x, y)); signature (p, q) becomes (2p, 2q)."""
    _require_integral(lattice)
    s = z_form_of(lattice, lambda x: x.trace())
    return ZFormWithAction(lattice.ring, s, action_matrix(lattice.ring, lattice.rank), SYMMETRIC)


def _require_discriminant(ring: RingDesc, d: int):
    if ring.discriminant != d:
        raise WrongDiscriminant(f"This correspondence needs D={d}, got D={ring.discriminant}")


def sym_from_herm_scaled(lattice: HermLattice) -> ZFormWithAction:
    """(x, y) = tr(h(x, y)) / 3 over the Eisenstein integers."""
    _require_discriminant(lattice.ring, -3)
    s = z_form_of(lattice, lambda x: x.trace() / 3)
    return ZFormWithAction(lattice.ring, s, action_matrix(lattice.ring, lattice.rank), SYMMETRIC)


def sym_from_herm_gaussian(lattice: HermLattice) -> ZFormWithAction:
    """(x, y) = tr(h(x, y)) / 2 over the Gaussian integers."""
    _require_discriminant(lattice.ring, -4)
    s = z_form_of(lattice, lambda x: x.trace() / 2)
    return ZFormWithAction(lattice.ring, s, action_matrix(lattice.ring, lattice.rank), SYMMETRIC)


# -- Z-form -> lattice ---------------------------------------------------

def _sqrt_d_matrix(z: ZFormWithAction) -> ExactMatrix:
    # sqrt(D) = 2g - tr(g)
    tr = generator(z.ring).trace()
    return z.J.scale(2) - ExactMatrix.identity(z.zrank).scale(tr)


def _choose_frame(z: ZFormWithAction) -> List[int]:
    """Greedily pick standard vectors e_i so that {e_i, J e_i} stay independent."""
    n2 = z.zrank
    chosen: List[int] = []
    cols: List[List[Fraction]] = []
    for i in range(n2):
        e = [Fraction(int(k == i)) for k in range(n2)]
        je = z.J.column(i)
        trial = ExactMatrix.from_columns(cols + [e, je])
        if rank(trial) == len(cols) + 2:
            chosen.append(i)
            cols += [e, je]
        if len(chosen) == n2 // 2:
            break
    return chosen


def _herm_from_zform(z: ZFormWithAction, hz: ExactMatrix) -> HermLattice:
    """
    Build the hermitian lattice from the k-valued matrix hz = (h(e_i, e_j)) on Z^{2n}.

    The frame f_1..f_n identifies Q^{2n} with k^n; the lattice is the O_k-span of the
    standard vectors.
    """
    n = z.zrank // 2
    ring = z.ring
    frame = _choose_frame(z)
    f = ExactMatrix.from_columns(
        [[Fraction(int(k == i)) for k in range(z.zrank)] for i in frame] +
        [z.J.column(i) for i in frame])
    f_inv = inverse(f)
    g = generator(ring)
    gens = [[elem(ring, f_inv[j, i]) + g * f_inv[n + j, i] for i in range(z.zrank)]
            for j in range(n)]
    gram = ExactMatrix([[hz[a, b] for b in frame] for a in frame], ring)
    space = HermSpace(ring, gram)
    basis = span(ExactMatrix(gens, ring))
    if basis.ncols != n:
        raise SingularGram("Standard vectors do not span a full-rank O_k-lattice")
    lattice = HermLattice(space, basis)
    logger.debug(f"Recovered rank {n} hermitian lattice from Z-rank {z.zrank} form")
    return lattice


def herm_from_alt(z: ZFormWithAction) -> HermLattice:
    """h(x, y) = (<sqrt(D) x, y> + <x, y> sqrt(D)) / 2."""
    z.check_action()
    if z.kind != ALTERNATING:
        raise ActionIncompatible("Expected an alternating form")
    r = _sqrt_d_matrix(z)
    sqrt_d = z.ring.different_generator
    hz = ((r.transpose() * z.S) + z.S.scale(sqrt_d)).scale(Fraction(1, 2))
    return _herm_from_zform(z, hz)


def herm_from_sym_scaled(z: ZFormWithAction) -> HermLattice:
    """h(x, y) = (3/2) ((x, y) + (sqrt(D) x, y) / sqrt(D)) over the Eisenstein integers."""
    _require_discriminant(z.ring, -3)
    z.check_action()
    if z.kind != SYMMETRIC:
        raise ActionIncompatible("Expected a symmetric form")
    r = _sqrt_d_matrix(z)
    sqrt_d = z.ring.different_generator
    hz = (z.S + (r.transpose() * z.S).scale(sqrt_d.inverse())).scale(Fraction(3, 2))
    return _herm_from_zform(z, hz)


def herm_from_sym_gaussian(z: ZFormWithAction) -> HermLattice:
    """h(x, y) = (x, y) + (x, i y) i, with J the action of i."""
    _require_discriminant(z.ring, -4)
    z.check_action()
    if z.kind != SYMMETRIC:
        raise ActionIncompatible("Expected a symmetric form")
    i = generator(z.ring)
    hz = z.S + (z.S * z.J).scale(i)
    return _herm_from_zform(z, hz)


# -- Z-form invariants -----------------------------------------------------

def zform_disc_group(z: ZFormWithAction) -> DiscGroup:
    """S^{-1} Z^{2n} / Z^{2n} for an integral nondegenerate form."""
    if not z.S.is_integral():
        raise NonIntegralLattice("Z-form has non-integral entries")
    size = z.zrank
    dm = DomainMatrix([[ZZ(int(x)) for x in row] for row in z.S.rows()], (size, size), ZZ)
    factors = [abs(int(f)) for f in invariant_factors(dm)]
    if any(f == 0 for f in factors) or len(factors) < size:
        raise SingularGram("Z-form is degenerate")
    nontrivial = [f for f in factors if f > 1]
    order = 1
    for f in nontrivial:
        order *= f
    return DiscGroup(tuple(nontrivial), order, tuple(primary_shape(nontrivial)))


def zform_signature(z: ZFormWithAction) -> Tuple[int, int]:
    if z.kind != SYMMETRIC:
        raise ActionIncompatible("Signature is defined for symmetric forms only")
    diag, _ = congruence_diagonalize(z.S)
    return inertia(diag)


def _z_coordinates(x: KRational) -> Tuple[Fraction, Fraction]:
    """x = a + c*g with rational a, c."""
    g = generator(x.ring)
    c = Fraction(x.v, x.den)
    a = Fraction(x.u, 2 * x.den) - c * Fraction(g.u, 2)
    return a, c


def duals_agree(lattice: HermLattice, z: ZFormWithAction) -> bool:
    """
    True when the dual of the Z-lattice under S equals the hermitian dual of L,
    both written in the Z-basis {b_j} + {g*b_j}.
    """
    n = lattice.rank
    c = inverse(lattice.gram()).transpose()
    g = generator(lattice.ring)
    columns = []
    for mult in (elem(lattice.ring, 1), g):
        for j in range(n):
            coords = [_z_coordinates(mult * c[i, j]) for i in range(n)]
            columns.append([a for a, _ in coords] + [cc for _, cc in coords])
    w = ExactMatrix.from_columns(columns)
    s_dual = inverse(z.S).transpose()
    transition = inverse(w) * s_dual
    return transition.is_integral() and inverse(transition).is_integral()


class FormConverter:
    """Registry of the supported form correspondences."""

    def __init__(self):
        self.supported_conversions: Dict[str, Dict] = {
            'herm-to-alt': {
                'source': 'lattice', 'target': 'zform',
                'discriminants': None, 'handler': alt_from_herm,
            },
            'alt-to-herm': {
                'source': 'zform', 'target': 'lattice',
                'discriminants': None, 'handler': herm_from_alt,
            },
            'herm-to-sym-scaled': {
                'source': 'lattice', 'target': 'zform',
                'discriminants': [-3], 'handler': sym_from_herm_scaled,
            },
            'sym-to-herm-scaled': {
                'source': 'zform', 'target': 'lattice',
                'discriminants': [-3], 'handler': herm_from_sym_scaled,
            },
            'herm-to-sym-gaussian': {
                'source': 'lattice', 'target': 'zform',
                'discriminants': [-4], 'handler': sym_from_herm_gaussian,
            },
            'sym-to-herm-gaussian': {
                'source': 'zform', 'target': 'lattice',
                'discriminants': [-4], 'handler': herm_from_sym_gaussian,
            },
            'herm-to-trace-sym': {
                'source': 'lattice', 'target': 'zform',
                'discriminants': None, 'handler': trace_sym_form,
            },
        }

    def kinds(self) -> List[str]:
        return sorted(self.supported_conversions)

    def source_of(self, kind: str) -> str:
        return self._config(kind)['source']

    def _config(self, kind: str) -> Dict:
        if kind not in self.supported_conversions:
            raise InputFormatError(f"Unsupported conversion type: {kind}", field='kind')
        return self.supported_conversions[kind]

    def convert(self, kind: str, source):
        """Apply the named correspondence to a HermLattice or ZFormWithAction."""
        config = self._config(kind)
        ring = source.ring
        if config['discriminants'] and ring.discriminant not in config['discriminants']:
            raise WrongDiscriminant(f"{kind} needs D in {config['discriminants']}, got {ring.discriminant}")
        logger.info(f"Converting with {kind} over {ring.name}")
        return config['handler'](source)


# Global converter instance
_form_converter: Optional[FormConverter] = None


def get_form_converter() -> FormConverter:
    """Get the global form converter instance."""
    global _form_converter
    if _form_converter is None:
        _form_converter = FormConverter()
    return _form_converter
