"""
Lattice-level special cycles: vectors with h(x, x) = t in a definite lattice,
perpendicular lattices, and the nonemptiness test for the divisor of x.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from exact_linalg import ExactMatrix, kernel
from form_converter import z_form_of
from hermitian_lattice import HermLattice, is_positive_definite, signature, standard_lattice
from lattice_config import get_settings
from lattice_errors import (
    InputFormatError,
    IsotropicVector,
    NotDefinite,
    NotInLattice,
    WrongSignature,
)
from quadratic_ring import KElem, KRational, elem, generator

logger = logging.getLogger(__name__)

Vector = Tuple[KElem, ...]


def _vector_key(vec: Sequence[KRational]) -> Tuple:
    return tuple((x.u, x.v) for x in vec)


@dataclass(frozen=True)
class RepSolutionSet:
    """All lattice vectors x with h(x, x) = t, in canonical order."""
    t: int
    vectors: Tuple[Vector, ...]

    @property
    def count(self) -> int:
        return len(self.vectors)

    def to_json(self) -> dict:
        return {
            't': self.t,
            'count': self.count,
            'vectors': [[x.to_json() for x in vec] for vec in self.vectors],
        }


class _Cholesky:
    """Exact decomposition Q(w) = sum_i q_ii (w_i + sum_{j>i} q_ij w_j)^2."""

    def __init__(self, a: ExactMatrix):
        n = a.nrows
        q = [list(r) for r in a.rows()]
        for i in range(n):
            if q[i][i] <= 0:
                raise NotDefinite("Form is not positive definite")
            for j in range(i + 1, n):
                q[j][i] = q[i][j]
                q[i][j] = q[i][j] / q[i][i]
            for k in range(i + 1, n):
                for l in range(k, n):
                    q[k][l] = q[k][l] - q[k][i] * q[i][l]
        self.q = q
        self.n = n

    def center(self, i: int, w: List[int]) -> Fraction:
        return sum((self.q[i][j] * w[j] for j in range(i + 1, self.n)), Fraction(0))

    def candidates(self, i: int, w: List[int], budget: Fraction) -> List[Tuple[int, Fraction]]:
        """Values of w_i that keep the partial sum within budget, with the new budget."""
        c = self.center(i, w)
        qi = self.q[i][i]
        radius = budget / qi
        slack = math.isqrt(math.floor(radius)) + 1
        lo = math.floor(-c) - slack
        hi = math.ceil(-c) + slack
        out = []
        for z in range(lo, hi + 1):
            rest = budget - qi * (z + c) ** 2
            if rest >= 0:
                out.append((z, rest))
        return out


def _search(chol: _Cholesky, level: int, w: List[int], budget: Fraction, bound: Fraction,
            found: List[Tuple[Fraction, Tuple[int, ...]]]):
    if level < 0:
        value = bound - budget
        if value > 0:
            found.append((value, tuple(w)))
        return
    for z, rest in chol.candidates(level, w, budget):
        w[level] = z
        _search(chol, level - 1, w, rest, bound, found)
    w[level] = 0


def _short_vectors(lattice: HermLattice, bound: int, threads: int) -> List[Tuple[Fraction, Vector]]:
    """All nonzero x with 0 < h(x, x) <= bound, as (h(x, x), lattice coordinates)."""
    if not is_positive_definite(lattice):
        raise NotDefinite("Enumeration needs a positive definite lattice")
    n = lattice.rank
    max_rank = get_settings().max_rank
    if n > max_rank:
        raise InputFormatError(f"Enumeration is limited to rank {max_rank}, got {n}", field='lattice.rank')
    a = z_form_of(lattice, lambda x: x.trace() / 2)
    chol = _Cholesky(a)
    bound = Fraction(bound)
    top = 2 * n - 1
    branches = chol.candidates(top, [0] * (2 * n), bound)

    def run(branch):
        z, rest = branch
        w = [0] * (2 * n)
        w[top] = z
        found: List[Tuple[Fraction, Tuple[int, ...]]] = []
        _search(chol, top - 1, w, rest, bound, found)
        return found

    if threads > 1 and len(branches) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(run, branches))
    else:
        parts = [run(b) for b in branches]

    ring = lattice.ring
    g = generator(ring)
    results = []
    for part in parts:
        for value, w in part:
            vec = tuple(KElem(ring, 2 * w[j] + w[n + j] * g.u, w[n + j]) for j in range(n))
            results.append((value, vec))
    logger.debug(f"Enumerated {len(results)} vectors with h(x,x) <= {bound} "
                 f"over {len(branches)} branches")
    return results


def _threads(threads: Optional[int]) -> int:
    return threads if threads is not None else get_settings().threads


def enumerate_vectors(lattice: HermLattice, t: int, threads: Optional[int] = None) -> RepSolutionSet:
    """
    Solve h(x, x) = t over a positive definite lattice.

    The search runs over 2n integer coordinates of the trace form with exact
    rational Cholesky bounds; the zero vector is never a solution.
    """
    if t < 1:
        if not is_positive_definite(lattice):
            raise NotDefinite("Enumeration needs a positive definite lattice")
        return RepSolutionSet(t, ())
    found = _short_vectors(lattice, t, _threads(threads))
    vectors = sorted((vec for value, vec in found if value == t), key=_vector_key)
    return RepSolutionSet(t, tuple(vectors))


def rep_count(lattice: HermLattice, t: int, threads: Optional[int] = None) -> int:
    return enumerate_vectors(lattice, t, threads).count


def rep_count_table(lattice: HermLattice, t_max: int, threads: Optional[int] = None) -> Dict[int, int]:
    """Number of vectors with h(x, x) = t for t = 1..t_max."""
    table = {t: 0 for t in range(1, t_max + 1)}
    if t_max < 1:
        return table
    for value, _ in _short_vectors(lattice, t_max, _threads(threads)):
        if value.denominator == 1:
            table[int(value)] += 1
    return table


# -- perpendicular lattices ---------------------------------------------------

def _lattice_vector(lattice: HermLattice, x: Sequence) -> List[KRational]:
    if len(x) != lattice.rank:
        raise InputFormatError(f"Vector has {len(x)} coordinates, lattice rank is {lattice.rank}",
                               field='x')
    coords = [elem(lattice.ring, c) for c in x]
    if not all(c.is_integral() for c in coords):
        raise NotInLattice("Vector coordinates are not integral")
    return coords


def norm_of(lattice: HermLattice, coords: Sequence[KRational]) -> Fraction:
    """h(x, x) for x given in lattice coordinates."""
    m = lattice.gram()
    total = elem(lattice.ring, 0)
    for i, a in enumerate(coords):
        for j, b in enumerate(coords):
            if a != 0 and b != 0:
                total = total + a * m[i, j] * b.conjugate()
    return total.rational_value()


def perp_basis(lattice: HermLattice, x: Sequence) -> ExactMatrix:
    """Lattice coordinates of an O_k-basis of L intersected with x^perp."""
    coords = _lattice_vector(lattice, x)
    if norm_of(lattice, coords) == 0:
        raise IsotropicVector("h(x, x) = 0")
    m = lattice.gram()
    row = [sum((m[i, j] * coords[j].conjugate() for j in range(lattice.rank)),
               elem(lattice.ring, 0)) for i in range(lattice.rank)]
    return kernel(ExactMatrix([row], lattice.ring))


def perp_lattice(lattice: HermLattice, x: Sequence) -> HermLattice:
    """L intersected with x^perp, with the restricted form, as a lattice of rank n-1."""
    if lattice.rank < 2:
        raise InputFormatError("Perpendicular lattice needs rank at least 2", field='x')
    k = perp_basis(lattice, x)
    restricted = k.transpose() * lattice.gram() * k.conj()
    return standard_lattice(lattice.ring, restricted)


def dx_nonempty(lattice: HermLattice, x: Sequence) -> bool:
    """
    For L of signature (n-1, 1): true iff x^perp still contains a negative line,
    which happens exactly when h(x, x) > 0.
    """
    n = lattice.rank
    if signature(lattice) != (n - 1, 1):
        raise WrongSignature(f"Expected signature ({n - 1}, 1)")
    coords = _lattice_vector(lattice, x)
    if all(c == 0 for c in coords):
        raise InputFormatError("x must be nonzero", field='x')
    value = norm_of(lattice, coords)
    if value == 0:
        raise IsotropicVector("h(x, x) = 0")
    return value > 0
