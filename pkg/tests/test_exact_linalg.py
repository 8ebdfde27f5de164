from fractions import Fraction

import pytest
from sympy import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

from conftest import random_hermitian, random_integral, random_unimodular, random_unimodular_free
from exact_linalg import (
    ExactMatrix,
    congruence_diagonalize,
    det,
    hnf,
    inertia,
    inverse,
    kernel,
    matrix_from_json,
    rank,
    snf,
    solve,
    span,
)
from lattice_errors import InputFormatError, NonIntegralEntries, NotHermitian, SingularMatrix
from quadratic_ring import KElem, divides, is_unit, make_ring


def test_shape_checks():
    with pytest.raises(InputFormatError):
        ExactMatrix([[1, 2], [3]])
    with pytest.raises(InputFormatError):
        ExactMatrix([])


def test_matrix_interchange_form(eisenstein):
    data = {'ring': -3, 'rows': 2, 'cols': 2, 'entries': [[3, 'pi'], ['-pi', 0]]}
    m = matrix_from_json(data)
    assert m.ring == eisenstein
    assert m[0, 1] == KElem(eisenstein, 0, 2)
    assert m.is_hermitian()
    assert m.to_json() == {'ring': -3, 'rows': 2, 'cols': 2,
                           'entries': [[[6, 0], [0, 2]], [[0, -2], [0, 0]]]}


def test_matrix_interchange_errors():
    with pytest.raises(InputFormatError) as info:
        matrix_from_json({'ring': 'Z', 'rows': 3, 'entries': [[1, 2]]})
    assert info.value.field == 'matrix.rows'
    with pytest.raises(NonIntegralEntries):
        matrix_from_json({'ring': 'Z', 'entries': [['1/2']]})
    with pytest.raises(InputFormatError) as info:
        matrix_from_json({'ring': 'Q', 'entries': [[1, 'x']]})
    assert info.value.field == 'matrix.entries[0][1]'


def test_determinant_and_inverse():
    m = ExactMatrix([[2, 1], [1, 1]])
    assert det(m) == 1
    assert inverse(m) * m == ExactMatrix.identity(2)
    with pytest.raises(SingularMatrix):
        inverse(ExactMatrix([[1, 2], [2, 4]]))


def test_solve_over_the_field(rng):
    ring = make_ring(-7)
    m = random_hermitian(rng, ring, 3)
    b = ExactMatrix([[random_integral(rng, ring)] for _ in range(3)], ring)
    x = solve(m, b)
    assert m * x == b


def test_integer_hermite_form():
    h, t = hnf(ExactMatrix([[2, 4], [3, 5]]))
    assert h == ExactMatrix([[2, 0], [0, 1]])
    assert h == ExactMatrix([[2, 4], [3, 5]]) * t
    assert abs(det(t)) == 1


def test_hermite_form_over_order(rng):
    ring = make_ring(-3)
    for _ in range(10):
        m = ExactMatrix([[random_integral(rng, ring) for _ in range(3)] for _ in range(3)], ring)
        h, t = hnf(m)
        assert h == m * t
        assert is_unit(det(t))
        for i in range(3):
            for j in range(i + 1, 3):
                assert h[i, j] == 0


def test_hermite_form_needs_integral_entries():
    with pytest.raises(NonIntegralEntries):
        hnf(ExactMatrix([[Fraction(1, 2)]]))
    with pytest.raises(NonIntegralEntries) as info:
        snf(ExactMatrix([[1, Fraction(1, 3)]]))
    assert info.value.field == 'matrix.entries'


def test_integer_smith_form():
    m = ExactMatrix([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    result = snf(m)
    assert result.divisors == (2, 6, 12)
    assert result.U * m * result.V == result.diagonal


def test_integer_smith_form_matches_invariant_factors(rng):
    for _ in range(20):
        rows = [[rng.randint(-9, 9) for _ in range(4)] for _ in range(4)]
        m = ExactMatrix(rows)
        if det(m) == 0:
            continue
        oracle = invariant_factors(DomainMatrix([[ZZ(x) for x in r] for r in rows], (4, 4), ZZ))
        assert [int(d) for d in snf(m).divisors] == [abs(int(f)) for f in oracle]


def test_smith_form_over_order(rng):
    ring = make_ring(-4)
    for _ in range(10):
        m = ExactMatrix([[random_integral(rng, ring, 3) for _ in range(3)] for _ in range(2)], ring)
        result = snf(m)
        assert result.U * m * result.V == result.diagonal
        assert is_unit(det(result.U)) and is_unit(det(result.V))
        divisors = result.divisors
        for a, b in zip(divisors, divisors[1:]):
            assert divides(a, b)


def test_smith_form_norms_multiply_to_determinant(rng):
    ring = make_ring(-11)
    for _ in range(10):
        m = ExactMatrix([[random_integral(rng, ring, 3) for _ in range(3)] for _ in range(3)], ring)
        d = det(m)
        if d == 0:
            continue
        product = 1
        for x in snf(m).divisors:
            product *= x.norm()
        assert product == d.norm()


def test_congruence_diagonalize(eisenstein, rng):
    pi = KElem(eisenstein, 0, 2)
    g = ExactMatrix([[3, pi], [-pi, 0]], eisenstein)
    diag, p = congruence_diagonalize(g)
    assert inertia(diag) == (1, 1)
    assert p.transpose() * g * p.conj() == ExactMatrix.diagonal(diag, eisenstein)

    for _ in range(10):
        g = random_hermitian(rng, eisenstein, 4)
        diag, p = congruence_diagonalize(g)
        assert p.transpose() * g * p.conj() == ExactMatrix.diagonal(diag, eisenstein)
        assert det(p) != 0


def test_zero_pivot_repair():
    diag, p = congruence_diagonalize(ExactMatrix([[0, 1], [1, 0]]))
    assert inertia(diag) == (1, 1)
    assert 0 not in diag


def test_congruence_diagonalize_rejects_non_hermitian(eisenstein):
    pi = KElem(eisenstein, 0, 2)
    with pytest.raises(NotHermitian):
        congruence_diagonalize(ExactMatrix([[1, pi], [pi, 1]], eisenstein))


def test_kernel_and_span():
    m = ExactMatrix([[1, 2, 3]])
    k = kernel(m)
    assert k.shape == (3, 2)
    assert (m * k).is_zero()
    assert rank(k) == 2
    assert span(ExactMatrix([[2, 4], [0, 6]])) == span(ExactMatrix([[2, 0], [0, 6]]))


def test_kernel_over_order(gaussian):
    i = KElem(gaussian, 0, 1)
    m = ExactMatrix([[1, i], [i, -1]], gaussian)
    k = kernel(m)
    assert k.ncols == 1
    assert (m * k).is_zero()
    assert span(m.scale(Fraction(1, 2))).ncols == 1


def test_hermite_form_of_gaussian_row(gaussian):
    pi = KElem(gaussian, 2, 1)
    h, _ = hnf(ExactMatrix([[2, pi]], gaussian))
    assert h == ExactMatrix([[pi, 0]], gaussian)


def test_worked_diagonalizations(gaussian, eisenstein):
    pi = KElem(gaussian, 2, 1)
    diag, _ = congruence_diagonalize(ExactMatrix([[2, pi], [pi.conjugate(), 2]], gaussian))
    assert diag == [2, 1]
    sqrt3 = KElem(eisenstein, 0, 2)
    diag, _ = congruence_diagonalize(ExactMatrix([[3, sqrt3], [-sqrt3, 0]], eisenstein))
    assert diag == [3, -1]


def test_smith_divisors_survive_unimodular_changes(rng, trials, gaussian):
    for _ in range(trials):
        m = ExactMatrix([[random_integral(rng, gaussian, 3) for _ in range(3)] for _ in range(3)], gaussian)
        if det(m) == 0:
            continue
        left = random_unimodular(rng, gaussian, 3)
        right = random_unimodular(rng, gaussian, 3)
        assert snf(left * m * right).divisors == snf(m).divisors


def test_signature_survives_congruence(rng):
    ring = make_ring(-7)
    for _ in range(20):
        g = random_hermitian(rng, ring, 3)
        q = random_unimodular_free(rng, ring, 3)
        moved = q.transpose() * g * q.conj()
        assert inertia(congruence_diagonalize(moved)[0]) == inertia(congruence_diagonalize(g)[0])


def test_normal_forms_are_fixed_points(rng, eisenstein):
    for _ in range(10):
        m = ExactMatrix([[random_integral(rng, eisenstein) for _ in range(3)] for _ in range(3)], eisenstein)
        if det(m) == 0:
            continue
        h, _ = hnf(m)
        assert hnf(h)[0] == h
        result = snf(m)
        assert snf(result.diagonal).divisors == result.divisors
