import pytest

from errors import DimensionMismatch, NotSimplicial
from prevariety.cones import (
    Cone,
    cone_dim,
    cone_equal,
    contains,
    dual_cone,
    face_lattice,
    faces,
    image_cone,
    in_relative_interior,
    intersect,
    is_face,
    is_pointed,
    is_simplicial,
    relint_meets_subspace,
    smallest_face_containing,
)
from prevariety.lattice import IntegerMatrix, Sublattice

E1, E2 = (1, 0), (0, 1)
PYRAMID = [(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)]


def test_canonical_generators_drop_redundant_rays():
    cone = Cone.of([(2, 0), (0, 3), (1, 1)])
    assert cone.generators == ((0, 1), (1, 0))
    assert cone_equal(cone, Cone.of([E1, E2]))


def test_dual_cone():
    assert dual_cone(Cone.of([(1, 0), (1, 2)])) == Cone.of([(0, 1), (2, -1)])
    assert dual_cone(Cone.zero(2)) == Cone.of([E1, (-1, 0), E2, (0, -1)])


def test_non_pointed_cone():
    half_plane = Cone.of([E1, (-1, 0), E2])
    assert not is_pointed(half_plane)
    assert cone_dim(half_plane) == 2
    assert dual_cone(half_plane) == Cone.of([E2])


def test_membership_and_interior():
    quadrant = Cone.of([E1, E2])
    assert contains(quadrant, (3, 0))
    assert not contains(quadrant, (-1, 1))
    assert in_relative_interior(quadrant, (1, 1))
    assert not in_relative_interior(quadrant, (3, 0))
    with pytest.raises(DimensionMismatch):
        contains(quadrant, (1, 1, 1))


def test_intersection_and_faces():
    meet = intersect(Cone.of([E1, E2]), Cone.of([E1, (0, -1)]))
    assert meet == Cone.of([E1])
    assert is_face(meet, Cone.of([E1, E2]))
    assert not is_face(Cone.of([(1, 1)]), Cone.of([E1, E2]))
    assert smallest_face_containing(Cone.of([E1, E2]), Cone.of([(2, 0)])) == Cone.of([E1])


def test_faces_of_simplicial_cone():
    found = faces(Cone.of([E1, E2]))
    assert len(found) == 4
    assert found[0] == Cone.zero(2)
    assert [cone_dim(f) for f in found] == [0, 1, 1, 2]


def test_face_lattice_of_square_pyramid():
    pyramid = Cone.of(PYRAMID)
    assert not is_simplicial(pyramid)
    with pytest.raises(NotSimplicial):
        faces(pyramid)
    lattice = face_lattice(pyramid)
    assert [cone_dim(f) for f in lattice].count(1) == 4
    assert [cone_dim(f) for f in lattice].count(2) == 4
    assert len(lattice) == 10


def test_image_cone():
    projected = image_cone(IntegerMatrix.from_rows([[1, -1]]), Cone.of([E1, E2]))
    assert projected == Cone.of([(1,), (-1,)])
    assert not is_pointed(projected)


def test_relative_interior_meets_subspace():
    diagonal = Sublattice.from_vectors([(1, 1)], 2)
    assert relint_meets_subspace(Cone.of([E1, E2]), diagonal)
    assert not relint_meets_subspace(Cone.of([E1]), diagonal)
    assert not relint_meets_subspace(Cone.of([(-1, 0), E2]), diagonal)
    assert relint_meets_subspace(Cone.zero(2), diagonal)
