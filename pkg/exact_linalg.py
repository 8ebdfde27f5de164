"""
Exact matrix algebra over Z, Q, O_k and k.

Matrices over Z and Q hold Fraction entries and carry no ring; matrices over O_k
and k hold KRational entries and carry their RingDesc. Hermite and Smith forms need
a Euclidean ring, so they run over Z or O_k only.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from lattice_errors import (
    InputFormatError,
    MixedRings,
    NonIntegralEntries,
    NotHermitian,
    SingularMatrix,
)
from quadratic_ring import (
    KRational,
    RingDesc,
    canonical_associate,
    element_from_json,
    elem,
    euclid_divmod,
    make_ring,
    reduce_mod,
)

logger = logging.getLogger(__name__)

Entry = Union[Fraction, KRational]


def _is_integral(x: Entry) -> bool:
    if isinstance(x, KRational):
        return x.is_integral()
    return x.denominator == 1


def _norm(x: Entry) -> Fraction:
    if isinstance(x, KRational):
        return x.norm()
    return abs(x)


def _conj(x: Entry) -> Entry:
    return x.conjugate()


def _is_zero(x: Entry) -> bool:
    return x == 0


class _IntegerEuclid:
    """Euclidean structure of Z on Fraction entries with denominator one."""

    def divmod(self, a: Fraction, b: Fraction) -> Tuple[Fraction, Fraction]:
        q = Fraction(a.numerator // b.numerator)
        return q, a - q * b

    def reduce_mod(self, a: Fraction, b: Fraction) -> Fraction:
        if b == 0:
            return a
        return Fraction(a.numerator % abs(b.numerator))

    def canonical(self, x: Fraction) -> Tuple[Fraction, Fraction]:
        return (abs(x), Fraction(1 if x >= 0 else -1))


class _OrderEuclid:
    """Euclidean structure of O_k."""

    def __init__(self, ring: RingDesc):
        self.ring = ring

    def divmod(self, a, b):
        return euclid_divmod(a, b)

    def reduce_mod(self, a, b):
        return reduce_mod(a, b)

    def canonical(self, x):
        return canonical_associate(x)


class ExactMatrix:
    """An immutable matrix with exact entries; columns are vectors."""

    __slots__ = ('_rows', 'ring', 'nrows', 'ncols')

    def __init__(self, rows: Sequence[Sequence], ring: Optional[RingDesc] = None,
                 ncols: Optional[int] = None):
        rows = [list(r) for r in rows]
        if not rows:
            raise InputFormatError("Matrix needs at least one row", field='entries')
        width = len(rows[0]) if ncols is None else ncols
        if any(len(r) != width for r in rows):
            raise InputFormatError("Matrix rows have different lengths", field='entries')
        for r in rows:
            for x in r:
                if isinstance(x, KRational):
                    if ring is None:
                        ring = x.ring
                    elif x.ring.discriminant != ring.discriminant:
                        raise MixedRings(f"Entry {x} is not in {ring.name}")
        if ring is None:
            converted = tuple(tuple(Fraction(x) for x in r) for r in rows)
        else:
            converted = tuple(tuple(elem(ring, x) for x in r) for r in rows)
        object.__setattr__(self, '_rows', converted)
        object.__setattr__(self, 'ring', ring)
        object.__setattr__(self, 'nrows', len(rows))
        object.__setattr__(self, 'ncols', width)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    # -- constructors ----------------------------------------------------
    @classmethod
    def identity(cls, n: int, ring: Optional[RingDesc] = None) -> 'ExactMatrix':
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], ring)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, ring: Optional[RingDesc] = None) -> 'ExactMatrix':
        return cls([[0] * ncols for _ in range(nrows)], ring, ncols=ncols)

    @classmethod
    def diagonal(cls, values: Sequence, ring: Optional[RingDesc] = None) -> 'ExactMatrix':
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], ring)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], ring: Optional[RingDesc] = None,
                     nrows: Optional[int] = None) -> 'ExactMatrix':
        if not columns:
            if nrows is None:
                raise InputFormatError("Cannot infer height of an empty column list")
            return cls([[] for _ in range(nrows)], ring, ncols=0)
        height = len(columns[0])
        return cls([[c[i] for c in columns] for i in range(height)], ring)

    @classmethod
    def block_diagonal(cls, blocks: Sequence['ExactMatrix']) -> 'ExactMatrix':
        ring = _common_ring(*blocks)
        n = sum(b.nrows for b in blocks)
        m = sum(b.ncols for b in blocks)
        rows = [[0] * m for _ in range(n)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.nrows):
                for j in range(b.ncols):
                    rows[r0 + i][c0 + j] = b[i, j]
            r0 += b.nrows
            c0 += b.ncols
        return cls(rows, ring, ncols=m)

    # -- access ----------------------------------------------------------
    def __getitem__(self, index: Tuple[int, int]) -> Entry:
        i, j = index
        return self._rows[i][j]

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.nrows, self.ncols)

    def rows(self) -> List[List[Entry]]:
        return [list(r) for r in self._rows]

    def row(self, i: int) -> List[Entry]:
        return list(self._rows[i])

    def column(self, j: int) -> List[Entry]:
        return [r[j] for r in self._rows]

    def columns(self) -> List[List[Entry]]:
        return [self.column(j) for j in range(self.ncols)]

    def select_columns(self, indices: Iterable[int]) -> 'ExactMatrix':
        indices = list(indices)
        return ExactMatrix([[r[j] for j in indices] for r in self._rows], self.ring,
                           ncols=len(indices))

    def hstack(self, other: 'ExactMatrix') -> 'ExactMatrix':
        ring = _common_ring(self, other)
        return ExactMatrix([list(a) + list(b) for a, b in zip(self._rows, other._rows)], ring,
                           ncols=self.ncols + other.ncols)

    def entries(self) -> Iterable[Entry]:
        for r in self._rows:
            yield from r

    # -- predicates ------------------------------------------------------
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_integral(self) -> bool:
        return all(_is_integral(x) for x in self.entries())

    def is_zero(self) -> bool:
        return all(_is_zero(x) for x in self.entries())

    def is_hermitian(self) -> bool:
        if not self.is_square():
            return False
        return all(self[i, j] == _conj(self[j, i])
                   for i in range(self.nrows) for j in range(i, self.ncols))

    def is_symmetric(self) -> bool:
        return self.is_square() and self == self.transpose()

    def is_alternating(self) -> bool:
        return self.is_square() and self == -self.transpose() and \
            all(self[i, i] == 0 for i in range(self.nrows))

    @property
    def ring_tag(self) -> Union[int, str]:
        if self.ring is not None:
            return self.ring.discriminant
        return 'Z' if self.is_integral() else 'Q'

    # -- algebra ---------------------------------------------------------
    def map(self, fn) -> 'ExactMatrix':
        return ExactMatrix([[fn(x) for x in r] for r in self._rows], self.ring, ncols=self.ncols)

    def transpose(self) -> 'ExactMatrix':
        if self.ncols == 0:
            raise InputFormatError("Cannot transpose a matrix without columns")
        return ExactMatrix([[self._rows[i][j] for i in range(self.nrows)]
                            for j in range(self.ncols)], self.ring, ncols=self.nrows)

    def conj(self) -> 'ExactMatrix':
        return self.map(_conj)

    def conjugate_transpose(self) -> 'ExactMatrix':
        return self.transpose().conj()

    def __add__(self, other: 'ExactMatrix') -> 'ExactMatrix':
        if self.shape != other.shape:
            raise InputFormatError(f"Shape mismatch {self.shape} + {other.shape}")
        ring = _common_ring(self, other)
        return ExactMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)],
                           ring, ncols=self.ncols)

    def __neg__(self) -> 'ExactMatrix':
        return self.map(lambda x: -x)

    def __sub__(self, other: 'ExactMatrix') -> 'ExactMatrix':
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, ExactMatrix):
            return self.matmul(other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> 'ExactMatrix':
        ring = self.ring
        if isinstance(c, KRational):
            if ring is not None and ring.discriminant != c.ring.discriminant:
                raise MixedRings(f"Scalar {c} is not in {ring.name}")
            ring = c.ring
        return ExactMatrix([[c * x for x in r] for r in self._rows], ring, ncols=self.ncols)

    def matmul(self, other: 'ExactMatrix') -> 'ExactMatrix':
        if self.ncols != other.nrows:
            raise InputFormatError(f"Shape mismatch {self.shape} x {other.shape}")
        ring = _common_ring(self, other)
        cols = other.columns()
        rows = []
        for r in self._rows:
            rows.append([_dot(r, c) for c in cols])
        return ExactMatrix(rows, ring, ncols=other.ncols)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, self._rows))

    def __repr__(self):
        body = '; '.join(', '.join(str(x) for x in r) for r in self._rows)
        return f"ExactMatrix[{self.ring_tag}]({body})"

    # -- JSON ------------------------------------------------------------
    def to_json(self) -> dict:
        def entry(x):
            if isinstance(x, KRational):
                return x.to_json()
            return x.numerator if x.denominator == 1 else str(x)
        return {
            'ring': self.ring_tag,
            'rows': self.nrows,
            'cols': self.ncols,
            'entries': [[entry(x) for x in r] for r in self._rows],
        }


def _common_ring(*matrices: ExactMatrix) -> Optional[RingDesc]:
    ring = None
    for m in matrices:
        if m.ring is None:
            continue
        if ring is not None and ring.discriminant != m.ring.discriminant:
            raise MixedRings(f"Cannot combine matrices over {ring.name} and {m.ring.name}")
        ring = m.ring
    return ring


def _dot(a: Sequence[Entry], b: Sequence[Entry]) -> Entry:
    total = Fraction(0)
    for x, y in zip(a, b):
        if x != 0 and y != 0:
            total = x * y + total
    return total


def parse_ring_tag(tag, field: str = 'ring') -> Optional[RingDesc]:
    """Δ (int or numeric string) -> RingDesc; "Z"/"Q" -> None."""
    if isinstance(tag, str) and tag.upper() in ('Z', 'Q'):
        return None
    try:
        d = int(tag)
    except (TypeError, ValueError):
        raise InputFormatError(f"Unknown ring tag {tag!r}", field=field)
    return make_ring(d)


def matrix_from_rows(rows, ring: Optional[RingDesc], field: str = 'entries') -> ExactMatrix:
    """Read a nested list of entries (JSON pairs, numbers, or text forms)."""
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise InputFormatError("Matrix entries must be a non-empty list of rows", field=field)
    converted = []
    for i, r in enumerate(rows):
        row = []
        for j, x in enumerate(r):
            path = f"{field}[{i}][{j}]"
            if ring is None:
                if isinstance(x, bool) or not isinstance(x, (int, str)):
                    raise InputFormatError(f"Rational entry expected, got {x!r}", field=path)
                try:
                    row.append(Fraction(x))
                except (ValueError, ZeroDivisionError):
                    raise InputFormatError(f"Cannot read rational number {x!r}", field=path)
            else:
                row.append(element_from_json(x, ring, field=path))
        converted.append(row)
    return ExactMatrix(converted, ring)


def matrix_from_json(data, field: str = 'matrix', ring: Optional[RingDesc] = None) -> ExactMatrix:
    """
    Read the interchange form {"ring", "rows", "cols", "entries"}.

    A bare nested list is accepted too, read over `ring`.
    """
    if isinstance(data, list):
        return matrix_from_rows(data, ring, field=field)
    if not isinstance(data, dict) or 'entries' not in data:
        raise InputFormatError("Matrix must be an object with 'entries'", field=field)
    mring = parse_ring_tag(data['ring'], f"{field}.ring") if 'ring' in data else ring
    m = matrix_from_rows(data['entries'], mring, field=f"{field}.entries")
    if data.get('ring') == 'Z' and not m.is_integral():
        raise NonIntegralEntries("Matrix tagged Z has non-integer entries", field=f"{field}.entries")
    if 'rows' in data and data['rows'] != m.nrows:
        raise InputFormatError(f"Declared {data['rows']} rows, found {m.nrows}", field=f"{field}.rows")
    if 'cols' in data and data['cols'] != m.ncols:
        raise InputFormatError(f"Declared {data['cols']} cols, found {m.ncols}", field=f"{field}.cols")
    return m


# -- elimination -------------------------------------------------------

def det(m: ExactMatrix) -> Entry:
    """Determinant by fraction-free (Bareiss) elimination."""
    if not m.is_square():
        raise InputFormatError(f"Determinant of non-square {m.shape} matrix")
    a = m.rows()
    n = m.nrows
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return _lift(m, 0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
        prev = a[k][k]
    return _lift(m, sign * a[n - 1][n - 1])


def _lift(m: ExactMatrix, x) -> Entry:
    return elem(m.ring, x) if m.ring is not None else Fraction(x)


def _row_reduce(m: ExactMatrix) -> Tuple[List[List[Entry]], List[int]]:
    """Reduced row echelon form and pivot columns."""
    a = m.rows()
    pivots = []
    r = 0
    for c in range(m.ncols):
        p = next((i for i in range(r, m.nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m.nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m.nrows:
            break
    return a, pivots


def rank(m: ExactMatrix) -> int:
    if m.ncols == 0:
        return 0
    return len(_row_reduce(m)[1])


def solve(m: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Solve m x = b for square nonsingular m; b may hold several right-hand sides."""
    if not m.is_square() or b.nrows != m.nrows:
        raise InputFormatError(f"Cannot solve {m.shape} system with right-hand side {b.shape}")
    augmented = m.hstack(b)
    a, pivots = _row_reduce(augmented)
    if pivots[:m.ncols] != list(range(m.ncols)):
        raise SingularMatrix("Matrix is singular")
    ring = _common_ring(m, b)
    return ExactMatrix([row[m.ncols:] for row in a], ring, ncols=b.ncols)


def inverse(m: ExactMatrix) -> ExactMatrix:
    return solve(m, ExactMatrix.identity(m.nrows, m.ring))


# -- Euclidean normal forms ---------------------------------------------

def _euclid_for(m: ExactMatrix, field: str = 'matrix.entries'):
    if not m.is_integral():
        raise NonIntegralEntries(f"Normal forms need integral entries over {m.ring_tag}", field=field)
    return _OrderEuclid(m.ring) if m.ring is not None else _IntegerEuclid()


def _col_addmul(a: List[List[Entry]], dst: int, src: int, c):
    """column dst += c * column src"""
    for r in a:
        if r[src] != 0:
            r[dst] = r[dst] + c * r[src]


def _col_swap(a: List[List[Entry]], i: int, j: int):
    for r in a:
        r[i], r[j] = r[j], r[i]


def _col_scale(a: List[List[Entry]], j: int, c):
    for r in a:
        r[j] = c * r[j]


def hnf(m: ExactMatrix) -> Tuple[ExactMatrix, ExactMatrix]:
    """
    Column-style Hermite normal form H = m * T with T unimodular.

    Rows are processed top to bottom; each row that gains a pivot puts it in the
    leftmost free column as a canonical associate, and reduces that row's entries in
    earlier pivot columns to coset-canonical remainders. Zero columns end up on the
    right.
    """
    euclid = _euclid_for(m)
    a = m.rows()
    n = m.ncols
    t = ExactMatrix.identity(n, m.ring).rows()
    pivot_cols: List[int] = []
    col = 0
    for i in range(m.nrows):
        if col >= n:
            break
        while True:
            nonzero = [j for j in range(col, n) if a[i][j] != 0]
            if not nonzero:
                break
            jmin = min(nonzero, key=lambda j: (_norm(a[i][j]), j))
            if jmin != col:
                _col_swap(a, jmin, col)
                _col_swap(t, jmin, col)
            cleared = True
            for j in range(col + 1, n):
                if a[i][j] != 0:
                    q, _ = euclid.divmod(a[i][j], a[i][col])
                    _col_addmul(a, j, col, -q)
                    _col_addmul(t, j, col, -q)
                    if a[i][j] != 0:
                        cleared = False
            if cleared:
                break
        if a[i][col] == 0:
            continue
        _, unit = euclid.canonical(a[i][col])
        if unit != 1:
            _col_scale(a, col, unit)
            _col_scale(t, col, unit)
        pivot = a[i][col]
        for pc in pivot_cols:
            x = a[i][pc]
            r = euclid.reduce_mod(x, pivot)
            if r != x:
                q = (x - r) / pivot
                _col_addmul(a, pc, col, -q)
                _col_addmul(t, pc, col, -q)
        pivot_cols.append(col)
        col += 1
    return ExactMatrix(a, m.ring, ncols=n), ExactMatrix(t, m.ring, ncols=n)


@dataclass(frozen=True)
class SnfResult:
    """U * M * V = diag(divisors), U and V unimodular."""
    U: ExactMatrix
    V: ExactMatrix
    divisors: Tuple[Entry, ...]

    @property
    def diagonal(self) -> ExactMatrix:
        ring = self.U.ring
        rows = [[0] * self.V.nrows for _ in range(self.U.nrows)]
        for k, d in enumerate(self.divisors):
            rows[k][k] = d
        return ExactMatrix(rows, ring, ncols=self.V.nrows)

    def to_json(self) -> dict:
        return {
            'divisors': [d.to_json() if isinstance(d, KRational) else int(d) for d in self.divisors],
            'U': self.U.to_json(),
            'V': self.V.to_json(),
        }


def snf(m: ExactMatrix) -> SnfResult:
    """
    Smith normal form by Euclidean sweeps.

    Each step moves a least-norm entry to the pivot, clears its row and column by
    division with remainder, and folds in a row whose entries the pivot fails to
    divide until the pivot divides the whole remaining block.
    """
    euclid = _euclid_for(m)
    rows, cols = m.nrows, m.ncols
    a = m.rows()
    u = ExactMatrix.identity(rows, m.ring).rows()
    v = ExactMatrix.identity(cols, m.ring).rows()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def add_row(dst, src, c):
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def swap_cols(i, j):
        _col_swap(a, i, j)
        _col_swap(v, i, j)

    def add_col(dst, src, c):
        _col_addmul(a, dst, src, c)
        _col_addmul(v, dst, src, c)

    divisors: List[Entry] = []
    sweeps = 0
    for t in range(min(rows, cols)):
        while True:
            cells = [(i, t) for i in range(t, rows) if a[i][t] != 0] + \
                    [(t, j) for j in range(t + 1, cols) if a[t][j] != 0]
            if not cells:
                cells = [(i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j] != 0]
                if not cells:
                    break
            pi, pj = min(cells, key=lambda c: (_norm(a[c[0]][c[1]]), c))
            if pi != t:
                swap_rows(pi, t)
            if pj != t:
                swap_cols(pj, t)
            sweeps += 1
            pivot = a[t][t]
            for i in range(t + 1, rows):
                if a[i][t] != 0:
                    q, _ = euclid.divmod(a[i][t], pivot)
                    add_row(i, t, -q)
            for j in range(t + 1, cols):
                if a[t][j] != 0:
                    q, _ = euclid.divmod(a[t][j], pivot)
                    add_col(j, t, -q)
            if any(a[i][t] != 0 for i in range(t + 1, rows)) or \
                    any(a[t][j] != 0 for j in range(t + 1, cols)):
                continue
            bad = next((i for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if a[i][j] != 0 and not _divides(pivot, a[i][j])), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] == 0:
            divisors.append(a[t][t])
            continue
        _, unit = euclid.canonical(a[t][t])
        if unit != 1:
            a[t] = [unit * x for x in a[t]]
            u[t] = [unit * x for x in u[t]]
        divisors.append(a[t][t])
    logger.debug(f"SNF of {rows}x{cols} matrix finished after {sweeps} sweeps")
    return SnfResult(ExactMatrix(u, m.ring, ncols=rows), ExactMatrix(v, m.ring, ncols=cols),
                     tuple(divisors))


def _divides(a: Entry, b: Entry) -> bool:
    q = b / a
    return _is_integral(q)


# -- hermitian congruence ------------------------------------------------

def congruence_diagonalize(g: ExactMatrix) -> Tuple[List[Fraction], ExactMatrix]:
    """
    Diagonalize a hermitian Gram matrix by basis changes.

    With h(x, y) = x^T G conj(y), the returned P satisfies P^T G conj(P) = diag(d).
    A zero pivot with a nonzero off-diagonal entry g_tk is repaired by
    e_t <- e_t + g_tk * e_k, which gives the diagonal entry 2*|g_tk|^2.
    """
    if not g.is_hermitian():
        raise NotHermitian("Gram matrix is not hermitian")
    n = g.nrows
    a = g.rows()
    p = ExactMatrix.identity(n, g.ring).rows()

    def add(j, k, c):
        # e_j <- e_j + c e_k
        a[j] = [x + c * y for x, y in zip(a[j], a[k])]
        cc = _conj(c)
        for r in a:
            r[j] = r[j] + cc * r[k]
        for r in p:
            r[j] = r[j] + c * r[k]

    def swap(j, k):
        a[j], a[k] = a[k], a[j]
        _col_swap(a, j, k)
        _col_swap(p, j, k)

    for t in range(n):
        if a[t][t] == 0:
            s = next((s for s in range(t + 1, n) if a[s][s] != 0), None)
            if s is not None:
                swap(t, s)
            else:
                k = next((k for k in range(t + 1, n) if a[t][k] != 0), None)
                if k is None:
                    continue
                add(t, k, a[t][k])
        pivot = a[t][t]
        for k in range(t + 1, n):
            if a[k][t] != 0:
                add(k, t, -a[k][t] / pivot)
    diag = []
    for t in range(n):
        x = a[t][t]
        diag.append(x.rational_value() if isinstance(x, KRational) else Fraction(x))
    return diag, ExactMatrix(p, g.ring, ncols=n)


def inertia(diag: Sequence[Fraction]) -> Tuple[int, int]:
    return (sum(1 for d in diag if d > 0), sum(1 for d in diag if d < 0))


# -- kernels and spans ---------------------------------------------------

def clearing_denominator(m: ExactMatrix) -> int:
    """Least positive integer c with c*m integral."""
    c = 1
    for x in m.entries():
        if isinstance(x, KRational):
            # (u + v sqrt(D)) / (2 den) times 2 den is always integral
            d = x.den if (x * x.den).is_integral() else 2 * x.den
        else:
            d = x.denominator
        c = c * d // math.gcd(c, d)
    return c


def kernel(m: ExactMatrix) -> ExactMatrix:
    """
    Saturated integral kernel {x in R^n : m x = 0} for R = Z or O_k.

    Columns of the result form a basis; the result may have zero columns.
    """
    c = clearing_denominator(m)
    h, t = hnf(m.scale(c))
    zero_cols = [j for j in range(h.ncols) if all(h[i, j] == 0 for i in range(h.nrows))]
    return t.select_columns(zero_cols)


def span(generators: ExactMatrix) -> ExactMatrix:
    """Canonical basis (HNF columns) of the R-module spanned by the columns."""
    c = clearing_denominator(generators)
    h, _ = hnf(generators.scale(c))
    nonzero = [j for j in range(h.ncols) if any(h[i, j] != 0 for i in range(h.nrows))]
    return h.select_columns(nonzero).scale(Fraction(1, c))
