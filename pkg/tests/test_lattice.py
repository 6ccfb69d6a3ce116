import pytest
from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_form

from errors import DimensionMismatch
from prevariety.lattice import (
    FgAbGroup,
    IntegerMatrix,
    Sublattice,
    cokernel_presentation,
    hnf,
    image_membership,
    kernel_basis,
    kernel_rows,
    primitive,
    saturate,
    snf,
    xgcd,
)


def _diagonal(diag, rows, cols):
    return IntegerMatrix.from_rows([[diag[i] if i == j and i < len(diag) else 0 for j in range(cols)] for i in range(rows)], cols)


def test_xgcd_and_primitive():
    g, s, t = xgcd(240, -46)
    assert g == 2
    assert s * 240 + t * -46 == 2
    assert primitive((4, -6, 0)) == (2, -3, 0)
    assert primitive((0, 0)) == (0, 0)


def test_snf_invariant_factors_match_sympy():
    rows = [[12, 6, 4, 8], [3, 9, 6, 12], [2, 16, 14, 28], [20, 10, 10, 20]]
    result = snf(IntegerMatrix.from_rows(rows))
    assert result.invariant_factors == (1, 10, 30)
    expected = smith_normal_form(Matrix(rows))
    assert [abs(expected[i, i]) for i in range(3)] == list(result.invariant_factors)


def test_snf_transforms_are_consistent():
    m = IntegerMatrix.from_rows([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    result = snf(m)
    assert result.left @ m @ result.right == _diagonal(result.diag, 3, 3)
    assert result.left @ result.left_inverse == IntegerMatrix.identity(3)
    assert result.left.is_unimodular()
    assert result.right.is_unimodular()
    assert result.invariant_factors == (2, 6, 12)


def test_snf_of_wide_matrix():
    result = snf(IntegerMatrix.from_rows([[2, 4]]))
    assert result.diag == (2,)


def test_hnf_is_row_equivalent():
    m = IntegerMatrix.from_rows([[2, 7, 17, 29, 41], [3, 11, 19, 31, 43], [5, 13, 23, 37, 47]])
    h, u = hnf(m)
    assert u @ m == h
    assert u.is_unimodular()
    pivots = [next(j for j, x in enumerate(row) if x) for row in h.entries if any(row)]
    assert pivots == sorted(pivots)
    assert all(h.entries[i][p] > 0 for i, p in enumerate(pivots))


def test_kernel_is_saturated():
    kernel = kernel_rows([(2, 4, 6)], 3)
    assert len(kernel) == 2
    assert all(2 * a + 4 * b + 6 * c == 0 for a, b, c in kernel)
    lattice = Sublattice.from_vectors(kernel, 3)
    assert lattice.is_saturated()
    assert lattice.contains((-2, 1, 0))


def test_kernel_basis_of_full_rank_matrix_is_zero():
    assert kernel_basis(IntegerMatrix.identity(3)).rank == 0


def test_cokernel_with_torsion():
    presentation = cokernel_presentation(IntegerMatrix.from_rows([[2], [0]]))
    assert presentation.group == FgAbGroup(1, (2,))
    assert presentation.project((2, 0)) == presentation.group.zero()
    assert presentation.project((1, 0)) != presentation.group.zero()
    for k in range(presentation.group.generator_count):
        assert presentation.project(presentation.lift(k)) == presentation.group.generator(k)


def test_image_membership():
    m = IntegerMatrix.from_rows([[2, 0], [0, 3]])
    assert image_membership(m, (4, 3)) == (2, 1)
    assert image_membership(m, (1, 0)) is None


def test_saturation():
    doubled = Sublattice.from_vectors([(2, 4)], 2)
    assert not doubled.is_saturated()
    assert saturate(doubled).same_lattice(Sublattice.from_vectors([(1, 2)], 2))


def test_same_lattice_ignores_basis():
    a = Sublattice.from_vectors([(1, 1, -1), (2, 0, -2)], 3)
    b = Sublattice.from_vectors([(1, 1, -1), (0, 2, 0)], 3)
    assert a.same_lattice(b)
    assert not a.same_lattice(Sublattice.from_vectors([(1, 0, -1), (0, 1, 0)], 3))


def test_dependent_basis_rejected():
    with pytest.raises(DimensionMismatch):
        Sublattice(2, IntegerMatrix.from_rows([(1, 2), (2, 4)]))


def test_group_canonical_form():
    group = FgAbGroup(1, (2,))
    assert group.element([1], [3]).torsion == (1,)
    assert str(group.element([1], [1])) == "(1, 1~)"
    assert str(group) == "Z + Z/2Z"
    with pytest.raises(DimensionMismatch):
        FgAbGroup(0, (4, 2))
    with pytest.raises(DimensionMismatch):
        FgAbGroup(0, (1,))


def test_big_integers_stay_exact():
    big = 2**70
    m = IntegerMatrix.from_rows([[big, 1], [0, 1]])
    assert (m @ m).entries[0][0] == big * big
    assert m.determinant() == big
